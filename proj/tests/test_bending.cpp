#include "graftlab/bending.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace graftlab;

namespace {

const PointH2 kI{0.0, 1.0};
const GeodesicH2 kVertical(0.0, SpherePoint::infinity());

double h3_gap(const PointH3& a, const PointH3& b) { return dist_h3(a, b); }

FiniteMeasuredLamination catalog_lift(int depth, Weight w1, Weight w2) {
  static const FuchsianSurface s = build_octagon();
  return lift_multiloop(s, {{{GroupWord{1}, w1}, {GroupWord{3}, w2}}}, depth);
}

// Four nested leaves crossing the imaginary axis at i e^{+-1}, i e^{+-3},
// each at angle theta, weight pi/2 (total mass 2pi).
FiniteMeasuredLamination sweep_lamination(double theta) {
  double cot = 1.0 / std::tan(theta), r = std::sqrt(1.0 + cot * cot);
  std::vector<Leaf> leaves;
  for (double k : {-3.0, -1.0, 1.0, 3.0}) {
    double s = std::exp(k);
    leaves.push_back({GeodesicH2(s * (cot - r), s * (cot + r)), Weight::pi_multiple(1, 2)});
  }
  return FiniteMeasuredLamination(leaves);
}

PointH2 random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return from_disk(std::polar(std::tanh(0.5 * radius * std::sqrt(u(rng))), kTwoPi * u(rng)));
}

}  // namespace

TEST(BendPoint, EmptyLaminationIsEmbedding) {
  BendingMap b(FiniteMeasuredLamination{}, kI);
  std::mt19937_64 rng(60);
  for (int i = 0; i < 50; ++i) {
    PointH2 x = random_point(rng, 3.0);
    PointH3 y = bend_point(b, x);
    EXPECT_EQ(y.z, Complex(x.x, 0.0));
    EXPECT_EQ(y.t, x.y);
  }
}

TEST(BendPoint, SingleLeafMatchesMatrixOracle) {
  FiniteMeasuredLamination lam({{kVertical, Weight::pi_multiple(1, 2)}});
  BendingMap b(lam, {-1.0, 1.0});
  // z -> e^{i pi/2} z fixing the vertical axis, written out directly.
  Complex u = std::polar(1.0, kPi / 4.0);
  Moebius oracle(u, 0.0, 0.0, 1.0 / u);
  PointH3 got = bend_point(b, {1.0, 1.0});
  PointH3 want = act(oracle, PointH3{Complex(1.0, 0.0), 1.0});
  EXPECT_LT(h3_gap(got, want), 1e-12);
  EXPECT_NEAR(want.z.imag(), 1.0, 1e-12);
  // The basepoint side is untouched.
  PointH3 same = bend_point(b, {-2.0, 0.5});
  EXPECT_LT(h3_gap(same, embed({-2.0, 0.5})), 1e-15);
}

TEST(BendPoint, FullTurnsAreInvisible) {
  auto lam = catalog_lift(2, Weight::two_pi(1), Weight::two_pi(2));
  BendingMap b(lam, kI);
  std::mt19937_64 rng(61);
  for (int i = 0; i < 200; ++i) {
    PointH2 x = random_point(rng, 3.0);
    EXPECT_LT(h3_gap(bend_point(b, x), embed(x)), 1e-12);
  }
}

TEST(BendPoint, AddingTwoPiChangesNothing) {
  std::mt19937_64 rng(62);
  for (bool exact : {true, false}) {
    Weight w1 = exact ? Weight::pi_multiple(1, 3) : Weight(1.1);
    Weight w2 = exact ? Weight::pi_multiple(3, 4) : Weight(0.7);
    BendingMap b(catalog_lift(2, w1, w2), kI);
    BendingMap b2(catalog_lift(2, w1 + Weight::two_pi(), w2 + Weight::two_pi()), kI);
    for (int i = 0; i < 200; ++i) {
      PointH2 x = random_point(rng, 3.0);
      EXPECT_LT(h3_gap(bend_point(b, x), bend_point(b2, x)), 1e-10);
    }
  }
}

TEST(BendPoint, PointOnLeafRejected) {
  FiniteMeasuredLamination lam({{kVertical, Weight(1.0)}});
  BendingMap b(lam, {-1.0, 1.0});
  try {
    bend_point(b, {0.0, 2.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PointOnLeaf);
  }
  EXPECT_THROW(BendingMap(lam, {0.0, 3.0}), Error);
}

TEST(BendPoint, OneLipschitz) {
  BendingMap b(catalog_lift(3, Weight(1.1), Weight(2.3)), kI);
  std::mt19937_64 rng(63);
  for (int i = 0; i < 500; ++i) {
    PointH2 x = random_point(rng, 2.5), y = random_point(rng, 2.5);
    EXPECT_LE(dist_h3(bend_point(b, x), bend_point(b, y)), dist_h2(x, y) + 1e-9);
  }
}

TEST(BendPoint, IsometricOnComponents) {
  auto lam = catalog_lift(3, Weight(1.1), Weight(2.3));
  BendingMap b(lam, kI);
  std::mt19937_64 rng(64);
  int same = 0;
  for (int i = 0; i < 500; ++i) {
    PointH2 x = random_point(rng, 2.0), y = random_point(rng, 2.0);
    if (!crossings(lam, SegmentH2(x, y)).empty()) continue;
    ++same;
    EXPECT_NEAR(dist_h3(bend_point(b, x), bend_point(b, y)), dist_h2(x, y), 1e-9);
  }
  EXPECT_GT(same, 20);
}

TEST(BendPoint, HandednessMirrors) {
  auto lam = catalog_lift(2, Weight(1.1), Weight(2.3));
  BendingMap plus(lam, kI, 1), minus(lam, kI, -1);
  std::mt19937_64 rng(65);
  for (int i = 0; i < 100; ++i) {
    PointH2 x = random_point(rng, 2.5);
    PointH3 p = bend_point(plus, x), m = bend_point(minus, x);
    EXPECT_LT(h3_gap(m, {std::conj(p.z), p.t}), 1e-10);
  }
}

TEST(BendGeodesic, AgreesWithPointwiseBending) {
  // The polyline reaches each sample by a different path than bend_point.
  auto lam = catalog_lift(3, Weight(1.1), Weight(2.3));
  BendingMap b(lam, {0.05, 1.1});
  GeodesicH2 l(-0.7, 2.9);
  BentPolyline p = bend_geodesic(b, l, 2.0, 100);
  EXPECT_GT(p.crossings.size(), 0u);
  std::vector<bool> vertex(p.points.size(), false);
  for (const auto& c : p.crossings) vertex[c.vertex] = true;
  for (std::size_t k = 0; k < p.points.size(); ++k) {
    if (vertex[k]) continue;
    PointH2 x = point_on_geodesic(l, b.basepoint(), p.params[k]);
    EXPECT_LT(h3_gap(p.points[k], bend_point(b, x)), 1e-9);
  }
  for (std::size_t k = 0; k + 1 < p.points.size(); ++k) {
    EXPECT_LE(p.params[k + 1] - p.params[k], p.step + 1e-12);
  }
}

TEST(BendGeodesic, StraightWithoutLeaves) {
  BendingMap b(FiniteMeasuredLamination{}, kI);
  auto r = bilipschitz_report(bend_geodesic(b, GeodesicH2(-2.0, 3.0), 5.0, 200));
  EXPECT_NEAR(r.max_ratio, 1.0, 1e-9);
  EXPECT_LT(r.max_tangent_angle, 1e-9);
  EXPECT_LT(r.max_dist_to_axis, 1e-9);
  EXPECT_NEAR(r.projected_ratio, 1.0, 1e-9);
}

TEST(BendGeodesic, FoldMatchesTwoSegmentOracle) {
  const double w = 3.0;
  FiniteMeasuredLamination lam({{GeodesicH2(-1.0, 1.0), Weight(w)}});
  BendingMap b(lam, {0.0, 0.5});
  BentPolyline p = bend_geodesic(b, kVertical, 2.0, 400);
  ASSERT_EQ(p.crossings.size(), 1u);
  // Rays of length a on either side of the vertex meet at angle pi - w:
  // cosh c = cosh^2 a - sinh^2 a cos(pi - w).
  for (double a : {0.1, 0.5, 1.0}) {
    PointH3 u = bend_point(b, {0.0, std::exp(a)}), v = bend_point(b, {0.0, std::exp(-a)});
    double c = std::acosh(std::cosh(a) * std::cosh(a) + std::sinh(a) * std::sinh(a) * std::cos(w));
    EXPECT_NEAR(dist_h3(u, v), c, 1e-9);
  }
  auto r = bilipschitz_report(p);
  EXPECT_GT(r.max_ratio, 10.0);
  // The two-segment ratio tends to 1 / sin(interior / 2) as the pair
  // closes in on the vertex; sampled pairs approach it from below.
  double sup = 1.0 / std::sin((kPi - w) / 2.0);
  EXPECT_LE(r.max_ratio, sup + 1e-9);
  EXPECT_GT(r.max_ratio, 0.97 * sup);
}

TEST(BendGeodesic, SmallAngleSweep) {
  double prev_ratio = 1e9, prev_angle = 1e9;
  for (double theta : {0.1, 0.05, 0.01}) {
    BendingMap b(sweep_lamination(theta), kI);
    auto r = bilipschitz_report(bend_geodesic(b, kVertical, 10.0, 400));
    EXPECT_LT(r.max_ratio, prev_ratio);
    EXPECT_LT(r.max_tangent_angle, prev_angle);
    prev_ratio = r.max_ratio;
    prev_angle = r.max_tangent_angle;
  }
  EXPECT_LE(prev_ratio, 1.05);
}

TEST(BendGeodesic, TooFewSamples) {
  BentPolyline p;
  p.points = {embed(kI), embed({0.0, 2.0})};
  p.params = {0.0, std::log(2.0)};
  try {
    bilipschitz_report(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooFewSamples);
  }
}

TEST(BentHolonomy, TrivialCases) {
  FuchsianSurface s = build_octagon();
  auto rho = fuchsian_representation(s);
  auto flat = bent_holonomy(BendingMap(FiniteMeasuredLamination{}, kI), s);
  auto full = bent_holonomy(BendingMap(catalog_lift(3, Weight::two_pi(), Weight::two_pi()), kI), s);
  for (int k = 0; k < 4; ++k) {
    EXPECT_TRUE(approx_equal(flat.generators[k], rho.generators[k], 1e-14));
    EXPECT_TRUE(approx_equal(full.generators[k], rho.generators[k], 1e-12));
  }
}

TEST(BentHolonomy, BendingFixesItsOwnAxis) {
  FuchsianSurface s = build_octagon();
  FiniteMeasuredLamination lam = lift_multiloop(s, {{{GroupWord{1}, Weight(0.9)}}}, 3);
  auto bent = bent_holonomy(BendingMap(lam, kI), s);
  EXPECT_NEAR(std::abs(bent.evaluate({1}).trace()), std::abs(s.evaluate({1}).trace()), 1e-9);
  // Loops crossing the lamination get a genuinely complex trace.
  EXPECT_GT(std::abs(bent.evaluate({2}).trace().imag()), 1e-3);
}

TEST(BentHolonomy, EquivariantAtDepthFour) {
  FuchsianSurface s = build_octagon();
  BendingMap b(catalog_lift(4, Weight(1.1), Weight(2.3)), kI);
  auto rho = bent_holonomy(b, s);
  std::vector<GroupWord> words;
  for (int l : {1, -1, 2, -2, 3, -3, 4, -4}) words.push_back(GroupWord{l});
  words.push_back(GroupWord{1, 2});
  words.push_back(GroupWord{-3, 4});
  std::mt19937_64 rng(66);
  std::vector<PointH2> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(random_point(rng, 0.8));
  EXPECT_LT(equivariance_defect(b, s, rho, words, pts), 1e-6);
}

TEST(BentHolonomy, ShallowLiftRejected) {
  FuchsianSurface s = build_octagon();
  BendingMap b(catalog_lift(0, Weight(1.1), Weight(2.3)), kI);
  try {
    bent_holonomy(b, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InsufficientDepth);
  }
}
