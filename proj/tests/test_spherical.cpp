#include "graftlab/spherical.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace graftlab;

TEST(FanArea, ExactValues) {
  EXPECT_DOUBLE_EQ(fan_area(kTwoPi), kTwoPi);
  EXPECT_DOUBLE_EQ(fan_area(kPi), kPi);
  EXPECT_THROW(fan_area(-1.0), Error);
}

TEST(FanArea, QuadratureOracle) {
  for (double a : {0.1, 1.0, kPi, kTwoPi}) EXPECT_NEAR(fan_area_quadrature(a), a, 1e-8);
}

TEST(FanArea, Additive) {
  std::mt19937_64 rng(30);
  std::uniform_real_distribution<double> u(0.0, kPi);
  for (int i = 0; i < 100; ++i) {
    double a = u(rng), b = u(rng);
    EXPECT_NEAR(fan_area(a) + fan_area(b), fan_area(a + b), 1e-9);
    EXPECT_NEAR(fan_area_quadrature(a) + fan_area_quadrature(b), fan_area_quadrature(a + b), 1e-8);
  }
}

TEST(GaussBonnet, OctantTriangle) {
  Vec3 x{1, 0, 0}, y{0, 1, 0}, z{0, 0, 1};
  SphericalRegion r({SphericalArc::geodesic(x, y), SphericalArc::geodesic(y, z), SphericalArc::geodesic(z, x)});
  auto t = gauss_bonnet(r);
  EXPECT_NEAR(t.area, kPi / 2, 1e-9);
  EXPECT_NEAR(t.exterior_angle_sum, 3 * kPi / 2, 1e-12);
  EXPECT_NEAR(t.curvature_integral, 0.0, 1e-12);
  EXPECT_LT(t.residual, 1e-8);
}

TEST(GaussBonnet, Hemisphere) {
  SphericalRegion r({SphericalArc{{1, 0, 0}, {0, 0, 1}, kTwoPi}});
  auto t = gauss_bonnet(r);
  EXPECT_NEAR(t.area, kTwoPi, 1e-9);
  EXPECT_NEAR(t.exterior_angle_sum, 0.0, 1e-12);
  EXPECT_LT(t.residual, 1e-8);
}

TEST(GaussBonnet, SmallCap) {
  // Cap of angular radius rho: area 2 pi (1 - cos rho).
  double rho = 0.6;
  SphericalRegion r({SphericalArc{{std::sin(rho), 0, std::cos(rho)}, {0, 0, 1}, kTwoPi}});
  auto t = gauss_bonnet(r);
  EXPECT_NEAR(t.area, kTwoPi * (1 - std::cos(rho)), 1e-9);
  EXPECT_LT(t.residual, 1e-8);
}

TEST(GaussBonnet, RandomGeodesicQuadrilateral) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    // Four vertices around the north pole, in counterclockwise order.
    std::vector<Vec3> v;
    for (int i = 0; i < 4; ++i) {
      double az = kPi / 2 * (i + 0.2 + 0.6 * u(rng));
      double colat = 0.2 + 1.2 * u(rng);
      v.push_back({std::sin(colat) * std::cos(az), std::sin(colat) * std::sin(az), std::cos(colat)});
    }
    std::vector<SphericalArc> arcs;
    for (int i = 0; i < 4; ++i) arcs.push_back(SphericalArc::geodesic(v[i], v[(i + 1) % 4]));
    EXPECT_LT(gauss_bonnet_residual(SphericalRegion(arcs)), 1e-6);
  }
}

TEST(GaussBonnet, RandomArcRegions) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> n(3, 8);
  for (int k = 0; k < 100; ++k) {
    int arcs = n(rng);
    SphericalRegion r = random_region(rng, arcs);
    EXPECT_LE(r.boundary.size(), 8u);
    EXPECT_LT(gauss_bonnet_residual(r), 1e-6);
  }
}

TEST(GaussBonnet, OpenBoundary) {
  try {
    SphericalRegion r({SphericalArc::geodesic({1, 0, 0}, {0, 1, 0}), SphericalArc::geodesic({0, 1, 0}, {0, 0, 1})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OpenBoundary);
  }
}
