#pragma once

#include "graftlab/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <utility>

namespace graftlab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

/// A point of the Riemann sphere. Infinity is an explicit state; finite
/// values beyond kInfinityThreshold collapse onto it.
class SpherePoint {
 public:
  static constexpr double kInfinityThreshold = 1e15;

  SpherePoint() = default;
  SpherePoint(Complex z) {  // NOLINT(google-explicit-constructor)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > kInfinityThreshold) {
      infinite_ = true;
    } else {
      z_ = z;
    }
  }
  SpherePoint(double x) : SpherePoint(Complex(x, 0.0)) {}  // NOLINT

  static SpherePoint infinity() {
    SpherePoint p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinity() const { return infinite_; }
  /// Finite value; zero when at infinity.
  Complex value() const { return z_; }

  /// Point on the unit sphere under inverse stereographic projection
  /// (infinity is the north pole).
  std::array<double, 3> to_unit_sphere() const;

  friend std::ostream& operator<<(std::ostream& os, const SpherePoint& p) {
    if (p.infinite_) return os << "inf";
    return os << p.z_;
  }

 private:
  Complex z_{0.0, 0.0};
  bool infinite_ = false;
};

/// Chordal distance on the unit sphere; bounded by 2.
inline double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  if (p.is_infinity() && q.is_infinity()) return 0.0;
  if (p.is_infinity() || q.is_infinity()) {
    Complex z = p.is_infinity() ? q.value() : p.value();
    return 2.0 / std::sqrt(1.0 + std::norm(z));
  }
  Complex a = p.value(), b = q.value();
  return 2.0 * std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

inline bool approx_equal(const SpherePoint& p, const SpherePoint& q, double tol = 1e-9) {
  return chordal_distance(p, q) < tol;
}

inline std::array<double, 3> SpherePoint::to_unit_sphere() const {
  if (infinite_) return {0.0, 0.0, 1.0};
  double n = std::norm(z_);
  return {2.0 * z_.real() / (1.0 + n), 2.0 * z_.imag() / (1.0 + n), (n - 1.0) / (n + 1.0)};
}

/// An oriented geodesic of H^3 given by its ideal endpoints. Orientation
/// matters only for rotations and translations about it.
struct GeodesicH3 {
  SpherePoint from;
  SpherePoint to;

  GeodesicH3 reversed() const { return {to, from}; }
};

/// Unordered comparison of geodesics by ideal endpoints.
inline bool same_geodesic(const GeodesicH3& g, const GeodesicH3& h, double tol = 1e-9) {
  return (approx_equal(g.from, h.from, tol) && approx_equal(g.to, h.to, tol)) ||
         (approx_equal(g.from, h.to, tol) && approx_equal(g.to, h.from, tol));
}

/// Element of PSL(2,C), stored as an SL(2,C) representative. The sign of
/// the lift is never significant.
class Moebius {
 public:
  Moebius() = default;

  /// Normalizes by 1/sqrt(det). Throws InvalidParams for singular input.
  Moebius(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
    normalize();
  }

  static Moebius identity() { return {}; }

  /// z -> lambda^2 z, i.e. diag(lambda, 1/lambda).
  static Moebius diagonal(Complex lambda) { return Moebius(lambda, 0.0, 0.0, 1.0 / lambda); }

  const Complex& a() const { return a_; }
  const Complex& b() const { return b_; }
  const Complex& c() const { return c_; }
  const Complex& d() const { return d_; }

  Complex det() const { return a_ * d_ - b_ * c_; }
  Complex trace() const { return a_ + d_; }

  Moebius inverse() const {
    Moebius r;
    r.a_ = d_;
    r.b_ = -b_;
    r.c_ = -c_;
    r.d_ = a_;
    return r;
  }

  friend Moebius operator*(const Moebius& g, const Moebius& h) {
    return Moebius(g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_,
                   g.c_ * h.a_ + g.d_ * h.c_, g.c_ * h.b_ + g.d_ * h.d_);
  }

  SpherePoint operator()(const SpherePoint& p) const {
    if (p.is_infinity()) {
      if (c_ == Complex(0.0)) return SpherePoint::infinity();
      return SpherePoint(a_ / c_);
    }
    Complex z = p.value();
    Complex den = c_ * z + d_;
    if (den == Complex(0.0)) return SpherePoint::infinity();
    return SpherePoint((a_ * z + b_) / den);
  }

  /// Largest deviation of any entry from the real axis.
  double max_imag() const {
    return std::max({std::abs(a_.imag()), std::abs(b_.imag()), std::abs(c_.imag()),
                     std::abs(d_.imag())});
  }

  /// Max-entry distance to h, minimized over the sign of the lift.
  double distance_to(const Moebius& h) const {
    auto dist = [&](double s) {
      return std::max({std::abs(a_ - s * h.a_), std::abs(b_ - s * h.b_), std::abs(c_ - s * h.c_),
                       std::abs(d_ - s * h.d_)});
    };
    return std::min(dist(1.0), dist(-1.0));
  }

  friend std::ostream& operator<<(std::ostream& os, const Moebius& g) {
    return os << "[[" << g.a_ << ", " << g.b_ << "], [" << g.c_ << ", " << g.d_ << "]]";
  }

 private:
  void normalize() {
    Complex det = a_ * d_ - b_ * c_;
    if (std::abs(det) < 1e-300 || !std::isfinite(std::abs(det))) {
      throw Error(Errc::InvalidParams, "singular matrix");
    }
    Complex s = std::sqrt(det);
    a_ /= s;
    b_ /= s;
    c_ /= s;
    d_ /= s;
  }

  Complex a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
};

inline Moebius compose(const Moebius& g, const Moebius& h) { return g * h; }

/// Equality in PSL(2,C): entries agree up to a global sign.
inline bool approx_equal(const Moebius& g, const Moebius& h, double tol = 1e-10) {
  return g.distance_to(h) < tol;
}

inline Moebius power(const Moebius& g, int n) {
  Moebius base = n < 0 ? g.inverse() : g;
  Moebius r;
  for (int i = 0; i < std::abs(n); ++i) r = r * base;
  return r;
}

// ---------------------------------------------------------------------------
// Classification

enum class IsometryKind { Identity, Parabolic, Elliptic, Loxodromic };

constexpr const char* to_string(IsometryKind k) {
  switch (k) {
    case IsometryKind::Identity: return "Identity";
    case IsometryKind::Parabolic: return "Parabolic";
    case IsometryKind::Elliptic: return "Elliptic";
    case IsometryKind::Loxodromic: return "Loxodromic";
  }
  return "?";
}

struct IsometryType {
  IsometryKind kind = IsometryKind::Identity;
  /// Loxodromic only: 2 ln|lambda| for the expanding eigenvalue lambda.
  double translation_length = 0.0;
  /// Loxodromic: 2 arg(lambda) wrapped to (-pi, pi]. Elliptic: the
  /// unoriented rotation angle in (0, pi].
  double rotation_angle = 0.0;
};

/// Band around the boundaries of the trace-squared trichotomy.
struct ClassifyTolerance {
  double trace_band = 1e-9;
  double identity_band = 1e-10;
};

/// Expanding eigenvalue (|lambda| >= 1) of the SL(2,C) lift.
inline Complex expanding_eigenvalue(const Moebius& g) {
  Complex tr = g.trace();
  Complex s = std::sqrt(tr * tr - 4.0);
  Complex l1 = 0.5 * (tr + s), l2 = 0.5 * (tr - s);
  return std::abs(l1) >= std::abs(l2) ? l1 : l2;
}

inline IsometryType classify(const Moebius& g, ClassifyTolerance tol = {}) {
  Complex tr = g.trace();
  Complex t2 = tr * tr;
  IsometryType out;
  if (std::abs(t2 - 4.0) < tol.trace_band) {
    out.kind = approx_equal(g, Moebius::identity(), tol.identity_band) ? IsometryKind::Identity
                                                                       : IsometryKind::Parabolic;
    return out;
  }
  if (std::abs(t2.imag()) < tol.trace_band && t2.real() > -tol.trace_band &&
      t2.real() < 4.0 + tol.trace_band) {
    out.kind = IsometryKind::Elliptic;
    double half = std::clamp(std::abs(tr.real()) / 2.0, 0.0, 1.0);
    out.rotation_angle = 2.0 * std::acos(half);
    return out;
  }
  Complex lambda = expanding_eigenvalue(g);
  out.kind = IsometryKind::Loxodromic;
  out.translation_length = 2.0 * std::log(std::abs(lambda));
  out.rotation_angle = wrap_angle(2.0 * std::arg(lambda));
  return out;
}

inline bool is_loxodromic(const Moebius& g) {
  return classify(g).kind == IsometryKind::Loxodromic;
}

// ---------------------------------------------------------------------------
// Normalizers, axes and rotations

/// A transform sending u -> 0 and v -> infinity. If both u and v are real
/// (or infinite), the result has real entries and preserves the upper
/// half-plane.
inline Moebius sending_to_zero_infinity(const SpherePoint& u, const SpherePoint& v) {
  if (approx_equal(u, v, 1e-14)) throw Error(Errc::DegenerateGeodesic, "coincident endpoints");
  Complex a, b, c, d;
  if (v.is_infinity()) {
    a = 1.0; b = -u.value(); c = 0.0; d = 1.0;
  } else if (u.is_infinity()) {
    a = 0.0; b = 1.0; c = 1.0; d = -v.value();
  } else {
    a = 1.0; b = -u.value(); c = 1.0; d = -v.value();
  }
  Complex det = a * d - b * c;
  // Flip orientation for real data so the normalizer lies in PSL(2,R).
  if (std::abs(det.imag()) < 1e-300 && det.real() < 0.0) {
    a = -a;
    b = -b;
  }
  return Moebius(a, b, c, d);
}

/// Translation along the oriented geodesic by complex length
/// (real part: distance toward g.to, imaginary part: rotation angle).
inline Moebius translation_along(const GeodesicH3& g, Complex complex_length) {
  Moebius n = sending_to_zero_infinity(g.from, g.to);
  return n.inverse() * Moebius::diagonal(std::exp(0.5 * complex_length)) * n;
}

/// Elliptic rotation by theta fixing g pointwise (counterclockwise looking
/// from g.to back toward g.from, i.e. z -> e^{i theta} z when g = (0, inf)).
inline Moebius elliptic_about(const GeodesicH3& g, double theta) {
  if (approx_equal(g.from, g.to, 1e-12)) {
    throw Error(Errc::DegenerateGeodesic, "geodesic endpoints coincide");
  }
  return translation_along(g, Complex(0.0, theta));
}

struct FixedPoints {
  SpherePoint first;
  SpherePoint second;
};

/// Fixed points on the sphere. For loxodromic input, first is repelling
/// and second attracting.
inline FixedPoints fixed_points(const Moebius& g) {
  const Complex a = g.a(), b = g.b(), c = g.c(), d = g.d();
  // c z^2 + (d - a) z - b = 0
  Complex disc = std::sqrt((a + d) * (a + d) - 4.0);
  Complex p = d - a;
  Complex q = std::abs(p + disc) >= std::abs(p - disc) ? -0.5 * (p + disc) : -0.5 * (p - disc);
  SpherePoint z1, z2;
  if (std::abs(c) < 1e-300) {
    z1 = SpherePoint::infinity();
    z2 = std::abs(p) < 1e-300 ? SpherePoint::infinity() : SpherePoint(b / p);
  } else {
    z1 = SpherePoint(q / c);
    z2 = std::abs(q) < 1e-300 ? SpherePoint::infinity() : SpherePoint(-b / q);
  }
  // Derivative at a finite fixed point z is (cz + d)^-2; attracting iff |cz+d| > 1.
  auto attracting = [&](const SpherePoint& z) {
    if (z.is_infinity()) return std::abs(a) > std::abs(d);  // derivative at inf is (d/a)^2
    return std::abs(c * z.value() + d) > 1.0;
  };
  if (attracting(z1) && !attracting(z2)) std::swap(z1, z2);
  return {z1, z2};
}

/// Axis of a loxodromic or elliptic element, oriented from the repelling to
/// the attracting fixed point.
inline GeodesicH3 axis(const Moebius& g) {
  auto t = classify(g);
  if (t.kind == IsometryKind::Identity || t.kind == IsometryKind::Parabolic) {
    throw Error(Errc::ParabolicOrIdentity, "no axis");
  }
  auto fp = fixed_points(g);
  return {fp.first, fp.second};
}

inline GeodesicH3 apply(const Moebius& h, const GeodesicH3& g) { return {h(g.from), h(g.to)}; }

}  // namespace graftlab
