#include "graftlab/hyperbolic.hpp"

#include <boost/math/tools/minima.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace graftlab;

namespace {

PointH2 random_h2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-3.0, 3.0), ly(-2.0, 2.0);
  return {x(rng), std::exp(ly(rng))};
}

PointH3 random_h3(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-3.0, 3.0), lt(-2.0, 2.0);
  return {Complex(x(rng), x(rng)), std::exp(lt(rng))};
}

Moebius random_moebius(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Complex a(g(rng), g(rng)), b(g(rng), g(rng)), c(g(rng), g(rng)), d(g(rng), g(rng));
    if (std::abs(a * d - b * c) > 0.3) return Moebius(a, b, c, d);
  }
}

// Hyperboloid-model distance: cosh d = -<P, Q> with P the image of z.
double hyperboloid_distance(const PointH2& p, const PointH2& q) {
  auto lift = [](const PointH2& z) {
    double r2 = z.x * z.x + z.y * z.y;
    return std::array<double, 3>{(1.0 + r2) / (2.0 * z.y), z.x / z.y, (1.0 - r2) / (2.0 * z.y)};
  };
  auto a = lift(p), b = lift(q);
  double inner = a[0] * b[0] - a[1] * b[1] - a[2] * b[2];
  return std::acosh(std::max(inner, 1.0));
}

}  // namespace

TEST(DistH2, VerticalSegment) { EXPECT_NEAR(dist_h2({0, 1}, {0, 2}), std::log(2.0), 1e-14); }

TEST(DistH2, ZeroOnDiagonal) { EXPECT_EQ(dist_h2({0.3, 0.7}, {0.3, 0.7}), 0.0); }

TEST(DistH2, OffAxisMatchesHyperboloidOracle) {
  EXPECT_NEAR(dist_h2({0, 1}, {1, 2}), 0.9624236501192069, 1e-12);
  EXPECT_NEAR(hyperboloid_distance({0, 1}, {1, 2}), 0.9624236501192069, 1e-12);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    PointH2 p = random_h2(rng), q = random_h2(rng);
    EXPECT_NEAR(dist_h2(p, q), hyperboloid_distance(p, q), 1e-9);
  }
}

TEST(DistH2, TriangleInequality) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10000; ++i) {
    PointH2 a = random_h2(rng), b = random_h2(rng), c = random_h2(rng);
    EXPECT_GE(dist_h2(a, b) + dist_h2(b, c) - dist_h2(a, c), -1e-10);
  }
}

TEST(DistH3, MoebiusInvariant) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    Moebius g = random_moebius(rng);
    PointH3 p = random_h3(rng), q = random_h3(rng);
    double d0 = dist_h3(p, q), d1 = dist_h3(act(g, p), act(g, q));
    EXPECT_NEAR(d0, d1, 1e-9 * std::max(1.0, d0));
  }
}

TEST(DistH3, RestrictsToH2) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 100; ++i) {
    PointH2 p = random_h2(rng), q = random_h2(rng);
    EXPECT_NEAR(dist_h3(embed(p), embed(q)), dist_h2(p, q), 1e-10);
  }
}

TEST(Disk, RoundTrip) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 100; ++i) {
    PointH2 p = random_h2(rng);
    PointH2 q = from_disk(to_disk(p));
    EXPECT_NEAR(p.x, q.x, 1e-9);
    EXPECT_NEAR(p.y, q.y, 1e-9);
  }
}

TEST(Projection, PointOnGeodesicIsFixed) {
  GeodesicH3 m{SpherePoint(0.0), SpherePoint::infinity()};
  PointH3 p{Complex(0.0), 2.5};
  PointH3 q = project_to_geodesic(p, m);
  EXPECT_NEAR(std::abs(q.z), 0.0, 1e-12);
  EXPECT_NEAR(q.t, 2.5, 1e-12);
}

TEST(Projection, MatchesNumericMinimization) {
  GeodesicH3 m{SpherePoint(0.0), SpherePoint::infinity()};
  PointH3 p{Complex(1.0, 0.0), 1.0};
  PointH3 q = project_to_geodesic(p, m);
  EXPECT_NEAR(std::abs(q.z), 0.0, 1e-12);
  EXPECT_NEAR(q.t, std::sqrt(2.0), 1e-12);
  auto f = [&](double s) { return dist_h3(p, PointH3{Complex(0.0), std::exp(s)}); };
  auto [smin, fmin] = boost::math::tools::brent_find_minima(f, -5.0, 5.0, 50);
  EXPECT_NEAR(std::exp(smin), std::sqrt(2.0), 1e-7);
  EXPECT_NEAR(fmin, distance_to_geodesic(p, m), 1e-12);
}

TEST(Projection, GeneralGeodesicAgainstMinimization) {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 20; ++i) {
    Moebius g = random_moebius(rng);
    GeodesicH3 m{g(SpherePoint(0.0)), g(SpherePoint::infinity())};
    PointH3 p = random_h3(rng);
    PointH3 q = project_to_geodesic(p, m);
    auto f = [&](double s) { return dist_h3(p, act(g, PointH3{Complex(0.0), std::exp(s)})); };
    auto [smin, fmin] = boost::math::tools::brent_find_minima(f, -30.0, 30.0, 60);
    EXPECT_LT(dist_h3(q, act(g, PointH3{Complex(0.0), std::exp(smin)})), 1e-6);
    EXPECT_NEAR(dist_h3(p, q), fmin, 1e-9);
  }
}

TEST(Projection, Idempotent) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    Moebius g = random_moebius(rng);
    GeodesicH3 m{g(SpherePoint(0.0)), g(SpherePoint::infinity())};
    PointH3 q = project_to_geodesic(random_h3(rng), m);
    EXPECT_LT(dist_h3(project_to_geodesic(q, m), q), 1e-8);
  }
}

TEST(Projection, OneLipschitz) {
  std::mt19937_64 rng(18);
  for (int i = 0; i < 2000; ++i) {
    Moebius g = random_moebius(rng);
    GeodesicH3 m{g(SpherePoint(0.0)), g(SpherePoint::infinity())};
    PointH3 p = random_h3(rng), q = random_h3(rng);
    EXPECT_LE(dist_h3(project_to_geodesic(p, m), project_to_geodesic(q, m)), dist_h3(p, q) + 1e-9);
  }
}

TEST(Projection, DistanceShrinksTowardGeodesic) {
  GeodesicH3 m{SpherePoint(0.0), SpherePoint::infinity()};
  // The orthogonal geodesic from (0,0,1) through (1,0,~) is the unit circle.
  double prev = 1e300;
  for (double ang = 0.2; ang <= kPi / 2; ang += 0.1) {
    PointH3 p{Complex(std::cos(ang), 0.0), std::sin(ang)};
    double d = distance_to_geodesic(p, m);
    EXPECT_LT(d, prev);
    prev = d;
  }
}

TEST(AngleBetween, Orthogonal) {
  EXPECT_NEAR(angle_between({-1.0, 1.0}, {0.0, SpherePoint::infinity()}), kPi / 2, 1e-12);
}

TEST(AngleBetween, EqualAndDisjoint) {
  GeodesicH2 g{-1.0, 1.0};
  try {
    angle_between(g, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Equal);
  }
  try {
    angle_between(g, {-2.0, 2.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Disjoint);
  }
  EXPECT_THROW(angle_between(g, {1.0, 3.0}), Error);  // asymptotic
}

TEST(AngleBetween, MatchesEuclideanTangents) {
  // Semicircles (a, b) and (c, d) meet at a point where the angle equals
  // the angle between their radii.
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  int checked = 0;
  while (checked < 200) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    if (!((a < c && c < b && b < d) || (c < a && a < d && d < b))) continue;
    GeodesicH2 g1{a, b}, g2{c, d};
    PointH2 p = intersection_point(g1, g2);
    Complex r1 = p.z() - Complex(0.5 * (a + b), 0), r2 = p.z() - Complex(0.5 * (c + d), 0);
    EXPECT_NEAR(std::abs(std::abs(r1) - 0.5 * (b - a)), 0.0, 1e-9);
    double th = std::acos(std::abs((r1 * std::conj(r2)).real()) / (std::abs(r1) * std::abs(r2)));
    EXPECT_NEAR(angle_between(g1, g2), th, 1e-8);
    ++checked;
  }
}

TEST(Segment, FrameSendsEndpointsToImaginaryAxis) {
  std::mt19937_64 rng(20);
  for (int i = 0; i < 200; ++i) {
    PointH2 p = random_h2(rng), q = random_h2(rng);
    SegmentH2 s(p, q);
    PointH2 a = act(s.frame(), p), b = act(s.frame(), q);
    EXPECT_NEAR(a.x, 0.0, 1e-9);
    EXPECT_NEAR(a.y, 1.0, 1e-9);
    EXPECT_NEAR(b.x, 0.0, 1e-9 * b.y);
    EXPECT_NEAR(std::log(b.y), s.length(), 1e-9);
    PointH2 mid = s.point_at(0.5 * s.length());
    EXPECT_NEAR(dist_h2(p, mid), 0.5 * s.length(), 1e-9);
    EXPECT_NEAR(dist_h2(q, mid), 0.5 * s.length(), 1e-9);
  }
}

TEST(Segment, CarrierCrossingParameter) {
  SegmentH2 s({0.0, 0.5}, {0.0, 4.0});
  auto t = s.carrier_crossing({-1.0, 1.0});
  ASSERT_TRUE(t.has_value());
  EXPECT_NEAR(*t, std::log(2.0), 1e-12);
  EXPECT_NEAR(s.crossing_angle({-1.0, 1.0}), kPi / 2, 1e-12);
  EXPECT_FALSE(s.carrier_crossing({1.0, 2.0}).has_value());
}

TEST(SignedDistance, RightSideIsPositive) {
  GeodesicH2 l{0.0, SpherePoint::infinity()};
  EXPECT_GT(signed_distance(l, {1.0, 1.0}), 0.0);
  EXPECT_LT(signed_distance(l, {-1.0, 1.0}), 0.0);
  EXPECT_NEAR(signed_distance(l, {1.0, 1.0}), std::asinh(1.0), 1e-12);
}

TEST(RoundCircle, ThroughThreePointsAndImage) {
  RoundCircle c = circle_through(Complex(1, 0), Complex(0, 1), Complex(-1, 0));
  auto* cc = std::get_if<RoundCircle::Circle>(&c.shape);
  ASSERT_NE(cc, nullptr);
  EXPECT_NEAR(std::abs(cc->center), 0.0, 1e-12);
  EXPECT_NEAR(cc->radius, 1.0, 1e-12);
  // Cayley transform sends the real line onto the unit circle.
  Moebius cay(1.0, Complex(0, -1), 1.0, Complex(0, 1));
  RoundCircle img = apply(cay, RoundCircle::line(0.0, 1.0));
  EXPECT_TRUE(approx_equal(img, RoundCircle::circle(0.0, 1.0)));
}

namespace {

// Independent construction: B = i, A at distance len_ab in the direction at
// angle angle_b from the upward vertical, C the foot of the perpendicular
// from A onto the vertical geodesic through B.
struct TriangleOracle {
  double bc, ca, ab;
};

TriangleOracle build_triangle(double angle_b, double len_ab) {
  PointH2 b{0.0, 1.0};
  PointH2 a = from_disk(std::tanh(0.5 * len_ab) * std::polar(1.0, angle_b));
  PointH2 c{0.0, std::abs(a.z())};
  return {dist_h2(b, c), dist_h2(c, a), dist_h2(a, b)};
}

}  // namespace

TEST(RightTriangle, OracleSanity) {
  TriangleOracle t = build_triangle(0.3, 2.0);
  EXPECT_NEAR(t.ab, 2.0, 1e-12);
  // Pythagoras: cosh AB = cosh BC cosh CA.
  EXPECT_NEAR(std::cosh(t.ab), std::cosh(t.bc) * std::cosh(t.ca), 1e-10);
}

TEST(RightTriangle, LegsMatchCoordinateOracle) {
  for (double ang : {1e-4, 1e-3, 1e-2, 0.1, 0.7, 1.4}) {
    for (double len : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      auto r = right_triangle_gap(ang, len);
      TriangleOracle t = build_triangle(ang, len);
      EXPECT_NEAR(r.leg_adjacent, t.bc, 1e-8) << ang << " " << len;
      EXPECT_NEAR(r.leg_opposite, t.ca, 1e-8) << ang << " " << len;
    }
  }
}

TEST(RightTriangle, TinyAngleGapNearOne) {
  EXPECT_NEAR(right_triangle_gap(1e-6, 1.0).gap, 1.0, 1e-4);
}

TEST(RightTriangle, FrozenValues) {
  // Frozen from the coordinate oracle above.
  TriangleOracle t = build_triangle(0.005, 10.0);
  double oracle_gap = (t.bc - t.ca) / t.ab;
  EXPECT_NEAR(oracle_gap, 0.128953669799375, 1e-12);
  EXPECT_NEAR(right_triangle_gap(0.005, 10.0).gap, oracle_gap, 1e-9);
  // Small enough angle at the same hypotenuse clears 0.9.
  EXPECT_GT(right_triangle_gap(1e-5, 10.0).gap, 0.9);
}

TEST(RightTriangle, MonotoneInAngle) {
  EXPECT_GT(right_triangle_gap(0.001, 1.0).gap, right_triangle_gap(0.01, 1.0).gap);
}

TEST(RightTriangle, AngleBoundSampledMatchesClosedForm) {
  for (double ang : {1e-3, 1e-2, 0.1, 0.5}) {
    for (double len : {0.5, 2.0, 8.0}) {
      auto r = right_triangle_gap(ang, len);
      EXPECT_LE(r.angle_bound, r.angle_bound_exact + 1e-12);
      EXPECT_GT(r.angle_bound, 0.99 * r.angle_bound_exact);
      // A itself lies on the boundary circle, so the bound is at least B.
      EXPECT_GE(r.angle_bound_exact, ang - 1e-12);
      if (r.leg_opposite >= r.leg_adjacent) EXPECT_NEAR(r.angle_bound, kPi, 1e-5);
    }
  }
}

TEST(RightTriangle, Degenerate) {
  for (double ang : {0.0, kPi / 2, 2.0}) {
    try {
      right_triangle_gap(ang, 1.0);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::DegenerateTriangle);
    }
  }
}
