#pragma once

#include "graftlab/error.hpp"
#include "graftlab/mobius.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace graftlab {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return (1.0 / norm(a)) * a; }

/// Rodrigues rotation of v about the unit axis k by angle theta.
inline Vec3 rotate(const Vec3& v, const Vec3& k, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  return c * v + s * cross(k, v) + (dot(k, v) * (1.0 - c)) * k;
}

/// Quadrature knobs. The integrator is adaptive Gauss-Kronrod (15 points);
/// `tolerance` is the absolute error target.
struct QuadratureOptions {
  double tolerance = 1e-8;
  unsigned max_depth = 18;
};

namespace detail {
template <class F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opt) {
  if (a == b) return 0.0;
  // Boost's tolerance is relative to the L1 norm; the absolute target is
  // reached by scaling it with the interval length.
  double rel = std::min(1e-6, opt.tolerance / std::max(1.0, std::abs(b - a)));
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, opt.max_depth, rel);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Fans

/// Spherical area of the fan with vertex at the north pole over an
/// equatorial arc of the given length. A full turn is the hemisphere.
inline double fan_area(double arc_length) {
  if (!(arc_length >= 0.0)) throw Error(Errc::InvalidParams, "arc length must be nonnegative");
  // Area(hemisphere) * arc / 2pi with Area(hemisphere) = 2pi.
  return arc_length;
}

/// The same area by 2D adaptive quadrature of sin(phi) dphi dtheta.
inline double fan_area_quadrature(double arc_length, QuadratureOptions opt = {}) {
  if (!(arc_length >= 0.0)) throw Error(Errc::InvalidParams, "arc length must be nonnegative");
  auto inner = [&](double) {
    return detail::integrate([](double phi) { return std::sin(phi); }, 0.0, kPi / 2.0, opt);
  };
  return detail::integrate(inner, 0.0, arc_length, opt);
}

// ---------------------------------------------------------------------------
// Regions bounded by circular arcs

/// Arc of a circle on the unit sphere: `start` rotated about the unit
/// `axis` by angles in [0, sweep]. The region bounded by a chain of such
/// arcs lies on their left, i.e. toward the axis.
struct SphericalArc {
  Vec3 start;
  Vec3 axis;
  double sweep;

  Vec3 point(double s) const { return rotate(start, axis, s); }
  Vec3 end() const { return point(sweep); }
  Vec3 tangent(double s) const { return normalized(cross(axis, point(s))); }
  /// Angular radius of the circle about its axis.
  double angular_radius() const { return std::acos(std::clamp(dot(axis, start), -1.0, 1.0)); }
  /// Geodesic curvature toward the left side (cot of the angular radius).
  double curvature() const {
    double rho = angular_radius();
    return std::cos(rho) / std::sin(rho);
  }
  double length() const { return std::sin(angular_radius()) * sweep; }

  /// Great-circle arc from a to b (shorter way).
  static SphericalArc geodesic(const Vec3& a, const Vec3& b) {
    Vec3 n = normalized(cross(a, b));
    return {normalized(a), n, std::acos(std::clamp(dot(normalized(a), normalized(b)), -1.0, 1.0))};
  }

  /// Circular arc from a to b whose axis is tilted by `bulge` radians away
  /// from the great-circle normal, toward the midpoint of a and b. Positive
  /// bulge bends the arc toward the left.
  static SphericalArc through(const Vec3& a, const Vec3& b, double bulge) {
    Vec3 an = normalized(a), bn = normalized(b);
    Vec3 n = normalized(cross(an, bn));
    Vec3 m = normalized(an + bn);
    Vec3 axis = normalized(std::cos(bulge) * n + std::sin(bulge) * m);
    auto project = [&](const Vec3& v) { return v - dot(v, axis) * axis; };
    Vec3 pa = project(an), pb = project(bn);
    double sweep = std::atan2(dot(cross(pa, pb), axis), dot(pa, pb));
    if (sweep < 0) sweep += kTwoPi;
    return {an, axis, sweep};
  }
};

struct SphericalRegion {
  std::vector<SphericalArc> boundary;
  /// Signed exterior angles (left turns positive), one per corner; corner i
  /// sits at the start of arc i.
  std::vector<double> exterior_angles;

  /// Validates chaining and fills the exterior angles.
  explicit SphericalRegion(std::vector<SphericalArc> arcs, double chain_tol = 1e-9)
      : boundary(std::move(arcs)) {
    if (boundary.empty()) throw Error(Errc::OpenBoundary, "no arcs");
    const std::size_t n = boundary.size();
    exterior_angles.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const SphericalArc& prev = boundary[(i + n - 1) % n];
      const SphericalArc& cur = boundary[i];
      Vec3 corner = cur.start;
      if (norm(prev.end() - corner) > chain_tol) {
        throw Error(Errc::OpenBoundary, "arc " + std::to_string(i) + " does not start where the previous ends");
      }
      Vec3 tin = prev.tangent(prev.sweep), tout = cur.tangent(0.0);
      exterior_angles[i] = std::atan2(dot(cross(tin, tout), corner), dot(tin, tout));
    }
  }
};

struct GaussBonnetTerms {
  double area = 0.0;
  double curvature_integral = 0.0;
  double exterior_angle_sum = 0.0;
  double residual = 0.0;
};

/// Area by the boundary integral of (1 - cos(colatitude)) d(longitude)
/// around a pole inside the region.
inline double region_area(const SphericalRegion& r, QuadratureOptions opt = {}) {
  // The form below is singular only at -pole, so any pole whose antipode
  // lies outside the region works; the boundary mean is one unless it
  // vanishes (a great-circle boundary), in which case the arc axis is.
  Vec3 pole{0, 0, 0};
  for (const auto& arc : r.boundary) {
    for (int k = 0; k < 8; ++k) pole = pole + arc.point(arc.sweep * (k + 0.5) / 8.0);
  }
  if (norm(pole) < 1e-6 * 8.0 * static_cast<double>(r.boundary.size())) {
    pole = Vec3{0, 0, 0};
    for (const auto& arc : r.boundary) pole = pole + arc.sweep * arc.axis;
  }
  pole = normalized(pole);
  Vec3 e1 = std::abs(pole[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  e1 = normalized(e1 - dot(e1, pole) * pole);
  Vec3 e2 = cross(pole, e1);
  double area = 0.0;
  for (const auto& arc : r.boundary) {
    auto integrand = [&](double s) {
      Vec3 p = arc.point(s);
      Vec3 dp = cross(arc.axis, p);
      double x = dot(p, e1), y = dot(p, e2), z = dot(p, pole);
      double dx = dot(dp, e1), dy = dot(dp, e2);
      return (x * dy - y * dx) / (1.0 + z);
    };
    area += detail::integrate(integrand, 0.0, arc.sweep, opt);
  }
  return area;
}

inline GaussBonnetTerms gauss_bonnet(const SphericalRegion& r, QuadratureOptions opt = {}) {
  GaussBonnetTerms t;
  t.area = region_area(r, opt);
  for (const auto& arc : r.boundary) t.curvature_integral += arc.curvature() * arc.length();
  for (double a : r.exterior_angles) t.exterior_angle_sum += a;
  t.residual = std::abs(t.area + t.curvature_integral + t.exterior_angle_sum - kTwoPi);
  return t;
}

/// |Area + integral of k ds + sum of exterior angles - 2 pi| for a disk region.
inline double gauss_bonnet_residual(const SphericalRegion& r, QuadratureOptions opt = {}) {
  return gauss_bonnet(r, opt).residual;
}

/// A random star-shaped disk region with n_arcs (3..8) circular arcs around
/// a random center; bulges are small enough to keep the boundary simple.
template <class Rng>
SphericalRegion random_region(Rng& rng, int n_arcs) {
  if (n_arcs < 3 || n_arcs > 8) throw Error(Errc::InvalidParams, "random regions use 3..8 arcs");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  Vec3 center = normalized(Vec3{g(rng), g(rng), g(rng)});
  Vec3 e1 = std::abs(center[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  e1 = normalized(e1 - dot(e1, center) * center);
  Vec3 e2 = cross(center, e1);
  // Jittered equal spacing keeps consecutive azimuth gaps below pi.
  std::vector<double> az(n_arcs);
  for (int i = 0; i < n_arcs; ++i) az[i] = kTwoPi * (i + 0.4 * (u(rng) - 0.5)) / n_arcs;
  std::vector<Vec3> verts;
  for (int i = 0; i < n_arcs; ++i) {
    double colat = 0.35 + 0.6 * u(rng);
    Vec3 dir = std::cos(az[i]) * e1 + std::sin(az[i]) * e2;
    verts.push_back(std::cos(colat) * center + std::sin(colat) * dir);
  }
  std::vector<SphericalArc> arcs;
  for (int i = 0; i < n_arcs; ++i) {
    const Vec3& a = verts[i];
    const Vec3& b = verts[(i + 1) % n_arcs];
    double bulge = (u(rng) < 0.3) ? 0.0 : 0.25 * (2.0 * u(rng) - 1.0);
    arcs.push_back(SphericalArc::through(a, b, bulge));
  }
  // Make every arc start exactly where the previous one ends.
  for (int i = 0; i < n_arcs; ++i) arcs[i].start = verts[i];
  return SphericalRegion(std::move(arcs));
}

}  // namespace graftlab
