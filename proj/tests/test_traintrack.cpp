#include "graftlab/traintrack.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace graftlab;

namespace {

WeightVector exact(std::initializer_list<std::int64_t> coeffs) {
  WeightVector w;
  for (auto c : coeffs) w.push_back(Weight::pi_multiple(c));
  return w;
}

// Rank over the rationals by fraction-exact elimination.
std::size_t rational_rank(const IntMatrix& m, std::size_t cols) {
  std::vector<std::vector<Rational>> a;
  for (const auto& row : m) a.emplace_back(row.begin(), row.end());
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c].numerator() == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c].numerator() == 0) continue;
      Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

const FuchsianSurface& surface() {
  static const FuchsianSurface s = build_octagon();
  return s;
}

}  // namespace

TEST(TrainTrack, ValidatesEnds) {
  EXPECT_THROW(TrainTrack("bad", 2, {{{0, 0}, {1, 0}, {0, 0}}}, {{{0, 1}, {1, 1}}}), Error);
  try {
    TrainTrack("missing", 2, {}, {{{0, 1}, {1, 0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidTrack);
  }
  EXPECT_NO_THROW(theta_track());
}

TEST(SwitchMatrix, TripleRows) {
  IntMatrix m = switch_matrix(theta_track());
  ASSERT_EQ(m.size(), 2u);
  for (const auto& row : m) EXPECT_EQ(row, (std::vector<std::int64_t>{1, -1, -1}));
}

TEST(SwitchMatrix, PairRowsOnly) {
  TrainTrack t = single_geodesic_track(surface(), {1}, 0.04, 3);
  IntMatrix m = switch_matrix(t);
  ASSERT_EQ(m.size(), 3u);
  for (const auto& row : m) {
    std::int64_t sum = 0, nonzero = 0;
    for (auto v : row) {
      sum += v;
      nonzero += v != 0;
    }
    EXPECT_EQ(sum, 0);
    EXPECT_EQ(nonzero, 2);
  }
  // A single branch closing on itself imposes nothing.
  EXPECT_TRUE(switch_matrix(single_geodesic_track(surface(), {1}, 0.04, 1)).empty());
}

TEST(SwitchMatrix, ShippedTracksCarrySomething) {
  for (const auto& t : {theta_track(), dumbbell_track(surface()), single_geodesic_track(surface())}) {
    EXPECT_GE(t.branch_count() - rational_rank(switch_matrix(t), t.branch_count()), 1u) << t.name();
  }
}

TEST(IsCarried, Definitions) {
  TrainTrack t = theta_track();
  EXPECT_TRUE(is_carried(t, exact({2, 1, 1})));
  EXPECT_FALSE(is_carried(t, exact({1, 1, 1})));
  WeightVector zero(3);
  EXPECT_TRUE(is_carried(t, zero));
  EXPECT_FALSE(is_fully_carried(t, zero));
  EXPECT_TRUE(is_fully_carried(t, exact({2, 1, 1})));
  EXPECT_FALSE(is_carried(t, exact({0, 1, -1})));
  EXPECT_TRUE(is_carried(t, {Weight(0.3), Weight(0.1), Weight(0.2)}));
  try {
    is_carried(t, exact({1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimensionMismatch);
  }
}

TEST(IsCarried, ConeProperty) {
  TrainTrack t = theta_track();
  std::mt19937_64 rng(70);
  std::uniform_int_distribution<std::int64_t> u(0, 20);
  for (int i = 0; i < 100; ++i) {
    auto carried = [&] {
      Rational a(u(rng), 1 + u(rng)), b(u(rng), 1 + u(rng));
      return WeightVector{Weight::pi_multiple(a + b), Weight::pi_multiple(a), Weight::pi_multiple(b)};
    };
    WeightVector w1 = carried(), w2 = carried(), sum;
    Rational a(u(rng), 1 + u(rng)), b(u(rng), 1 + u(rng));
    for (std::size_t j = 0; j < 3; ++j) sum.push_back(a * w1[j] + b * w2[j]);
    EXPECT_TRUE(is_carried(t, sum));
  }
}

TEST(WeightDifference, Definitions) {
  TrainTrack t = theta_track();
  WeightVector w = exact({2, 1, 1});
  for (const auto& x : weight_difference(t, w, w)) EXPECT_TRUE(x.is_zero());
  WeightVector big = exact({5, 2, 3});
  WeightVector d = weight_difference(t, big, w);
  EXPECT_TRUE(is_carried(t, d));
  for (const auto& r : switch_residuals(t, d)) EXPECT_TRUE(r.is_zero());
  try {
    weight_difference(t, exact({1, 1, 1}), w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotCarried);
  }
}

TEST(WeightDifference, TwoPiCounts) {
  WeightVector d{Weight::two_pi(1), Weight::two_pi(2), Weight::two_pi(3)};
  EXPECT_EQ(two_pi_counts(d), (std::vector<std::int64_t>{1, 2, 3}));
  EXPECT_EQ(two_pi_counts({Weight(kTwoPi * 2.0)}), (std::vector<std::int64_t>{2}));
  EXPECT_THROW(two_pi_counts({Weight::pi_multiple(1)}), Error);
}

TEST(BranchWeights, CatalogIsCarriedExactly) {
  const FuchsianSurface& s = surface();
  Multiloop m{{{GroupWord{1}, Weight::pi_multiple(1, 3)}, {GroupWord{3}, Weight::pi_multiple(1, 2)}}};
  auto lam = lift_multiloop(s, m, 3);
  TrainTrack t = dumbbell_track(s);
  WeightVector w = branch_weights(t, lam);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_TRUE(w[0].is_zero());
  EXPECT_EQ(w[1], Weight::pi_multiple(1, 3));
  EXPECT_EQ(w[2], Weight::pi_multiple(1, 2));
  EXPECT_TRUE(is_carried(t, w));

  // Grafting-style update: 2pi per arc on the loop branches.
  Multiloop grafted{{{GroupWord{1}, Weight::pi_multiple(1, 3) + Weight::two_pi(2)},
                     {GroupWord{3}, Weight::pi_multiple(1, 2) + Weight::two_pi(3)}}};
  WeightVector w2 = branch_weights(t, lift_multiloop(s, grafted, 3));
  EXPECT_EQ(two_pi_counts(weight_difference(t, w2, w)), (std::vector<std::int64_t>{0, 2, 3}));

  TrainTrack g = single_geodesic_track(s);
  WeightVector wg = branch_weights(g, lift_multiloop(s, {{{GroupWord{1}, Weight::pi_multiple(1, 3)}}}, 3));
  EXPECT_EQ(wg, WeightVector(2, Weight::pi_multiple(1, 3)));
  EXPECT_TRUE(is_fully_carried(g, wg));
}

TEST(GeometryAudit, SingleGeodesicTrack) {
  const double r = 0.04;
  TrainTrack t = single_geodesic_track(surface(), {1}, r);
  auto a = geometry_audit(t, 0.1);
  EXPECT_NEAR(a.max_rail_curvature, std::tanh(r), 1e-6);
  EXPECT_LT(a.max_tie_curvature, 1e-6);
  EXPECT_LT(a.max_angle_deviation, 1e-6);
  EXPECT_NEAR(a.max_tie_length, 2.0 * r, 1e-9);
  EXPECT_TRUE(a.pass);
  EXPECT_FALSE(geometry_audit(t, 1e-4).pass);
  // Rails are equidistant curves of length (period / 2) cosh r; the sampled
  // polyline is a chordal underestimate.
  double period = word_length(surface(), {1});
  EXPECT_NEAR(a.min_rail_length, 0.5 * period * std::cosh(r), 1e-4);
  EXPECT_GE(a.min_rail_length, period / 3.0);
}

TEST(GeometryAudit, HalvingRadiusHalvesTies) {
  auto a = geometry_audit(single_geodesic_track(surface(), {1}, 0.04), 0.1);
  auto b = geometry_audit(single_geodesic_track(surface(), {1}, 0.02), 0.1);
  EXPECT_NEAR(b.max_tie_length, 0.5 * a.max_tie_length, 1e-6);
}

TEST(GeometryAudit, MonotoneInEpsilon) {
  TrainTrack t = single_geodesic_track(surface());
  bool passed = false;
  for (double eps = 1e-5; eps < 1.0; eps *= 1.5) {
    bool p = geometry_audit(t, eps).pass;
    if (passed) EXPECT_TRUE(p);
    passed = passed || p;
  }
  EXPECT_TRUE(passed);
}

TEST(GeometryAudit, RequiresEmbedding) {
  try {
    geometry_audit(dumbbell_track(surface()), 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoEmbedding);
  }
}

TEST(GeometryAudit, CurvatureEstimatorOracle) {
  // Horocycle y = 1 and a geodesic circle about i of radius rho, whose
  // curvature is coth(rho).
  EXPECT_NEAR(detail::three_point_curvature({-1.0, 1.0}, {0.0, 1.0}, {2.0, 1.0}), 1.0, 1e-12);
  double rho = 0.7;
  std::vector<PointH2> c;
  for (int k = 0; k < 3; ++k) c.push_back(from_disk(std::polar(std::tanh(rho / 2.0), 0.4 * k)));
  EXPECT_NEAR(detail::three_point_curvature(c[0], c[1], c[2]), 1.0 / std::tanh(rho), 1e-9);
  EXPECT_NEAR(detail::three_point_curvature({0.0, 1.0}, {0.0, 2.0}, {0.0, 5.0}), 0.0, 1e-12);
}
