#include "graftlab/json.hpp"

#include <gtest/gtest.h>

using namespace graftlab;
using io::Json;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidParams;  // sentinel: tests expect something else
}

}  // namespace

TEST(JsonTransform, RoundTrip) {
  Moebius g(Complex(1.0, 2.0), Complex(0.5, -1.0), Complex(3.0, 0.25), Complex(-1.0, 1.0));
  Moebius back = io::decode_moebius(io::encode(g));
  EXPECT_TRUE(approx_equal(g, back, 1e-15));
}

TEST(JsonTransform, MissingEntriesDefaultToIdentity) {
  EXPECT_TRUE(approx_equal(io::decode_moebius(Json::object()), Moebius::identity(), 1e-15));
  Moebius t = io::decode_moebius(Json{{"b", {2.0, 0.0}}});
  EXPECT_TRUE(approx_equal(t, Moebius(1.0, 2.0, 0.0, 1.0), 1e-15));
}

TEST(JsonTransform, SingularIsParseError) {
  Json j = {{"a", {1.0, 0.0}}, {"b", {1.0, 0.0}}, {"c", {1.0, 0.0}}, {"d", {1.0, 0.0}}};
  EXPECT_EQ(code_of([&] { io::decode_moebius(j); }), Errc::ParseError);
}

TEST(JsonPoints, InfinityAndGeodesics) {
  GeodesicH2 g(SpherePoint(-2.0), SpherePoint::infinity());
  Json j = io::encode(g);
  EXPECT_EQ(j[1], "inf");
  GeodesicH2 back = io::decode_geodesic(j);
  EXPECT_TRUE(same_geodesic(g, back, 1e-15));
  EXPECT_EQ(code_of([] { io::decode_point_h2(Json{0.0, -1.0}); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::decode_geodesic(Json{1.0, 1.0}); }), Errc::ParseError);
}

TEST(JsonWords, SignedListsAndText) {
  GroupWord w{1, -2, 3};
  EXPECT_EQ(io::decode_word(io::encode(w)), w);
  EXPECT_EQ(io::decode_word(Json("a1 b1^-1 a2")), w);
  EXPECT_EQ(code_of([] { io::decode_word(Json{1, 5}); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::decode_word(Json{0}); }), Errc::ParseError);
}

TEST(JsonWeights, ExactAndFloat) {
  Weight exact = Weight::pi_multiple(7, 3);
  EXPECT_TRUE(io::decode_weight(io::encode(exact)) == exact);
  EXPECT_EQ(io::encode(exact), (Json{{"pi", {7, 3}}}));
  EXPECT_EQ(io::decode_weight(Json(1.25)).value(), 1.25);
}

TEST(JsonWeights, VectorsAreTagged) {
  WeightVector exact{Weight::pi_multiple(1, 3), Weight::two_pi(2), Weight()};
  Json j = io::encode(exact);
  EXPECT_EQ(j["kind"], "rational-pi");
  auto back = io::decode_weight_vector(j);
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_TRUE(back[k] == exact[k]);

  WeightVector mixed{Weight::pi_multiple(1, 2), Weight(0.5)};
  Json m = io::encode(mixed);
  EXPECT_EQ(m["kind"], "float");
  EXPECT_DOUBLE_EQ(io::decode_weight_vector(m)[0].value(), kPi / 2.0);
  EXPECT_EQ(code_of([] { io::decode_weight_vector(Json{{"kind", "complex"}, {"values", Json::array({1})}}); }),
            Errc::ParseError);
}

TEST(JsonSurface, RebuildsFromParams) {
  OctagonParams p;
  p.twist = {0.3, -0.2, 0.1, 0.0, 0.4};
  FuchsianSurface s = build_octagon(p);
  FuchsianSurface back = io::decode_surface(io::encode(s));
  for (int k = 0; k < 4; ++k) EXPECT_TRUE(approx_equal(back.generators()[k], s.generators()[k], 1e-14));
}

TEST(JsonSurface, InconsistentGeneratorsRejected) {
  Json j = io::encode(build_octagon());
  j["params"][0] = 0.5;
  EXPECT_EQ(code_of([&] { io::decode_surface(j); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { io::decode_surface(Json{{"params", {9, 0, 0, 0, 0}}}); }), Errc::ParseError);
}

TEST(JsonLamination, RoundTripKeepsWeightsExact) {
  FiniteMeasuredLamination lam({{GeodesicH2(-1.0, 1.0), Weight::pi_multiple(1, 2)},
                                {GeodesicH2(2.0, 3.0), Weight(0.7)}});
  auto back = io::decode_lamination(io::encode(lam));
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_TRUE(same_geodesic(back.leaves()[k].geodesic, lam.leaves()[k].geodesic, 1e-15));
    EXPECT_TRUE(back.leaves()[k].weight == lam.leaves()[k].weight);
  }
}

TEST(JsonMultiloop, RoundTripAndGraftCounts) {
  Multiloop m{{{GroupWord{1}, Weight::pi_multiple(1, 3)}, {GroupWord{3}, Weight(2.5)}}};
  Multiloop back = io::decode_multiloop(io::encode(m));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.loops[1].word, GroupWord{3});
  EXPECT_TRUE(back.loops[0].weight == m.loops[0].weight);

  auto g = io::decode_graft_multiloop(Json::parse(R"([{"word": [1]}, {"word": "a2", "count": 3}])"));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].count, 1);
  EXPECT_EQ(g[1].count, 3);
}

TEST(JsonStructure, DocumentRoundTrip) {
  FuchsianSurface s = build_octagon();
  auto c = make_structure(s, {{{GroupWord{1}, Weight::pi_multiple(1, 3)}}}, 3);
  Json j = io::encode(c);
  EXPECT_EQ(j["schema"], "graftlab/1");
  EXPECT_EQ(j["kind"], "structure");
  auto back = io::decode_structure(j);
  EXPECT_TRUE(same_coordinates(c, back));
  EXPECT_LT(holonomy_gap(c.holonomy, back.holonomy, canonical_loops()), 1e-12);
}

TEST(JsonStructure, WrongSchemaOrKind) {
  Json j = io::encode(fuchsian_structure(build_octagon(), 2));
  j["schema"] = "graftlab/0";
  EXPECT_EQ(code_of([&] { io::decode_structure(j); }), Errc::ParseError);
  j["schema"] = "graftlab/1";
  j["kind"] = "track";
  EXPECT_EQ(code_of([&] { io::decode_structure(j); }), Errc::ParseError);
}

TEST(JsonTrack, RoundTripWithEmbedding) {
  TrainTrack t = single_geodesic_track(build_octagon());
  Json j = io::encode(t);
  EXPECT_EQ(j["kind"], "track");
  TrainTrack back = io::decode_track(j);
  EXPECT_EQ(back.branch_count(), t.branch_count());
  EXPECT_EQ(switch_matrix(back), switch_matrix(t));
  ASSERT_TRUE(back.embedding().has_value());
  auto a = geometry_audit(t, 0.1), b = geometry_audit(back, 0.1);
  EXPECT_NEAR(a.max_rail_curvature, b.max_rail_curvature, 1e-12);
  EXPECT_EQ(a.pass, b.pass);
}

TEST(JsonTrack, InvalidSwitchesRejected) {
  Json j = io::encode(theta_track());
  j["switches"]["triples"][0][0] = Json{7, 0};
  EXPECT_EQ(code_of([&] { io::decode_track(j); }), Errc::InvalidTrack);
}

TEST(JsonPolyline, CsvHasOneRowPerSample) {
  BendingMap b(FiniteMeasuredLamination({{GeodesicH2(-1.0, 1.0), Weight(0.5)}}), {0.0, 0.5});
  BentPolyline p = bend_geodesic(b, {SpherePoint(0.0), SpherePoint::infinity()}, 1.0, 20);
  std::string csv = io::polyline_csv(p);
  EXPECT_EQ(csv.rfind("x,y,t\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), p.points.size() + 1);
  Json j = io::encode(p);
  ASSERT_EQ(j["points"].size(), p.points.size());
  PointH3 q = io::decode_point_h3(j["points"][3]);
  EXPECT_EQ(q.t, p.points[3].t);
  EXPECT_EQ(j["crossings"].size(), 1u);
}
