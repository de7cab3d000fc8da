#pragma once

#include "graftlab/error.hpp"
#include "graftlab/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

namespace graftlab {

// ---------------------------------------------------------------------------
// Points

/// Upper half-plane point x + iy.
struct PointH2 {
  double x = 0.0;
  double y = 1.0;

  Complex z() const { return {x, y}; }
  static PointH2 from_complex(Complex z) { return {z.real(), z.imag()}; }
};

inline bool is_valid(const PointH2& p) { return p.y > 1e-12 && std::isfinite(p.x); }

/// Upper half-space point (z, t) with z = x + iy.
struct PointH3 {
  Complex z{0.0, 0.0};
  double t = 1.0;

  double x() const { return z.real(); }
  double y() const { return z.imag(); }
};

inline bool is_valid(const PointH3& p) { return p.t > 1e-12 && std::isfinite(std::abs(p.z)); }

/// H^2 sits in H^3 as the vertical half-plane over the real axis.
inline PointH3 embed(const PointH2& p) { return {Complex(p.x, 0.0), p.y}; }

inline PointH2 act(const Moebius& g, const PointH2& p) {
  Complex z = p.z();
  Complex w = (g.a() * z + g.b()) / (g.c() * z + g.d());
  return PointH2::from_complex(w);
}

/// Poincare extension of g to the upper half-space.
inline PointH3 act(const Moebius& g, const PointH3& p) {
  const Complex a = g.a(), b = g.b(), c = g.c(), d = g.d();
  Complex cz_d = c * p.z + d;
  double t2 = p.t * p.t;
  double den = std::norm(cz_d) + std::norm(c) * t2;
  Complex z = ((a * p.z + b) * std::conj(cz_d) + a * std::conj(c) * t2) / den;
  return {z, p.t / den};
}

inline double dist_h2(const PointH2& p, const PointH2& q) {
  double e = std::hypot(p.x - q.x, p.y - q.y);
  return 2.0 * std::asinh(e / (2.0 * std::sqrt(p.y * q.y)));
}

inline double dist_h3(const PointH3& p, const PointH3& q) {
  double e = std::sqrt(std::norm(p.z - q.z) + (p.t - q.t) * (p.t - q.t));
  return 2.0 * std::asinh(e / (2.0 * std::sqrt(p.t * q.t)));
}

/// Cayley map to the Poincare disk, i -> 0.
inline Complex to_disk(const PointH2& p) {
  Complex z = p.z();
  return (z - Complex(0, 1)) / (z + Complex(0, 1));
}

inline PointH2 from_disk(Complex w) {
  return PointH2::from_complex(Complex(0, 1) * (1.0 + w) / (1.0 - w));
}

// ---------------------------------------------------------------------------
// Geodesics

/// Geodesic of H^2 given by real (or infinite) ideal endpoints, oriented
/// from -> to.
struct GeodesicH2 {
  SpherePoint from;
  SpherePoint to;

  GeodesicH2() = default;
  GeodesicH2(SpherePoint f, SpherePoint t) : from(f), to(t) {
    auto real = [](const SpherePoint& p) {
      return p.is_infinity() || std::abs(p.value().imag()) < 1e-12;
    };
    if (!real(from) || !real(to)) throw Error(Errc::DegenerateGeodesic, "endpoint off the real line");
    if (approx_equal(from, to, 1e-14)) throw Error(Errc::DegenerateGeodesic, "coincident endpoints");
  }

  GeodesicH3 in_h3() const { return {from, to}; }
  GeodesicH2 reversed() const { return {to, from}; }
};

inline GeodesicH2 apply(const Moebius& g, const GeodesicH2& l) {
  auto real_part = [](const SpherePoint& p) {
    return p.is_infinity() ? p : SpherePoint(p.value().real());
  };
  return {real_part(g(l.from)), real_part(g(l.to))};
}

/// Position of a real boundary point on the circle at infinity, in (-pi, pi].
inline double boundary_angle(const SpherePoint& p) {
  if (p.is_infinity()) return kPi;
  return 2.0 * std::atan(p.value().real());
}

inline bool same_geodesic(const GeodesicH2& g, const GeodesicH2& h, double tol = 1e-9) {
  return same_geodesic(g.in_h3(), h.in_h3(), tol);
}

/// Real normalizer sending l to the imaginary axis, l.from -> 0.
inline Moebius normalizer(const GeodesicH2& l) { return sending_to_zero_infinity(l.from, l.to); }

/// Signed distance from p to l; positive on the right of l (for l = (0, inf)
/// the right side is Re z > 0).
inline double signed_distance(const GeodesicH2& l, const PointH2& p) {
  Complex w = act(normalizer(l), p).z();
  return std::asinh(w.real() / w.imag());
}

inline double distance_to_geodesic(const GeodesicH2& l, const PointH2& p) {
  return std::abs(signed_distance(l, p));
}

/// Relative position of two H^2 geodesics.
enum class GeodesicRelation { Crossing, Disjoint, Asymptotic, Equal };

namespace detail {
/// Endpoint images of h under the normalizer of g, as doubles in the
/// extended reals (infinity reported as +inf).
inline std::pair<double, double> normalized_endpoints(const GeodesicH2& g, const GeodesicH2& h) {
  Moebius n = normalizer(g);
  auto img = [&](const SpherePoint& p) {
    SpherePoint q = n(p);
    return q.is_infinity() ? std::numeric_limits<double>::infinity() : q.value().real();
  };
  return {img(h.from), img(h.to)};
}

inline bool near_zero_or_inf(double v, double tol) {
  SpherePoint p = std::isinf(v) ? SpherePoint::infinity() : SpherePoint(v);
  return chordal_distance(p, SpherePoint(0.0)) < tol ||
         chordal_distance(p, SpherePoint::infinity()) < tol;
}
}  // namespace detail

inline GeodesicRelation relation(const GeodesicH2& g, const GeodesicH2& h, double tol = 1e-9) {
  if (same_geodesic(g, h, tol)) return GeodesicRelation::Equal;
  if (approx_equal(g.from, h.from, tol) || approx_equal(g.from, h.to, tol) ||
      approx_equal(g.to, h.from, tol) || approx_equal(g.to, h.to, tol)) {
    return GeodesicRelation::Asymptotic;
  }
  auto [c, d] = detail::normalized_endpoints(g, h);
  if (detail::near_zero_or_inf(c, tol) || detail::near_zero_or_inf(d, tol)) {
    return GeodesicRelation::Asymptotic;
  }
  return (c < 0) != (d < 0) ? GeodesicRelation::Crossing : GeodesicRelation::Disjoint;
}

inline bool crosses(const GeodesicH2& g, const GeodesicH2& h, double tol = 1e-9) {
  return relation(g, h, tol) == GeodesicRelation::Crossing;
}

/// Unoriented intersection angle in [0, pi/2].
inline double angle_between(const GeodesicH2& g1, const GeodesicH2& g2) {
  switch (relation(g1, g2)) {
    case GeodesicRelation::Equal: throw Error(Errc::Equal, "same geodesic");
    case GeodesicRelation::Disjoint:
    case GeodesicRelation::Asymptotic: throw Error(Errc::Disjoint, "geodesics do not cross");
    case GeodesicRelation::Crossing: break;
  }
  auto [c, d] = detail::normalized_endpoints(g1, g2);
  double mid = 0.5 * (c + d), rad = 0.5 * std::abs(d - c);
  return std::acos(std::clamp(std::abs(mid) / rad, 0.0, 1.0));
}

/// The crossing point of two transversal geodesics.
inline PointH2 intersection_point(const GeodesicH2& g1, const GeodesicH2& g2) {
  if (!crosses(g1, g2)) throw Error(Errc::Disjoint, "geodesics do not cross");
  Moebius n = normalizer(g1);
  auto [c, d] = detail::normalized_endpoints(g1, g2);
  PointH2 p{0.0, std::sqrt(-c * d)};
  return act(n.inverse(), p);
}

// ---------------------------------------------------------------------------
// Geodesic segments

/// Rotation about i by angle 2*alpha on tangent vectors.
inline Moebius rotation_about_i(double alpha) {
  double c = std::cos(alpha), s = std::sin(alpha);
  return Moebius(c, s, -s, c);
}

/// A geodesic segment [p, q] of H^2 with its arclength frame: a real
/// transform A with A(p) = i and A(q) = i e^length.
class SegmentH2 {
 public:
  SegmentH2(const PointH2& p, const PointH2& q) : p_(p), q_(q) {
    if (!is_valid(p) || !is_valid(q)) throw Error(Errc::InvalidParams, "point outside H^2");
    length_ = dist_h2(p, q);
    if (!(length_ > 0.0)) throw Error(Errc::InvalidParams, "segment has zero length");
    Moebius t1(1.0, -p.x, 0.0, p.y);
    PointH2 q1 = act(t1, q);
    double phi = std::arg(to_disk(q1));
    frame_ = rotation_about_i(-0.5 * phi) * t1;
    inverse_ = frame_.inverse();
  }

  const PointH2& start() const { return p_; }
  const PointH2& end() const { return q_; }
  double length() const { return length_; }
  const Moebius& frame() const { return frame_; }

  PointH2 point_at(double s) const { return act(inverse_, PointH2{0.0, std::exp(s)}); }

  /// The full geodesic carrying the segment, oriented p -> q.
  GeodesicH2 carrier() const {
    auto real = [](const SpherePoint& p) { return p.is_infinity() ? p : SpherePoint(p.value().real()); };
    return {real(inverse_(SpherePoint(0.0))), real(inverse_(SpherePoint::infinity()))};
  }

  /// Arclength parameter (from p) where l crosses the carrier, if l crosses
  /// it transversally. The parameter may lie outside [0, length].
  std::optional<double> carrier_crossing(const GeodesicH2& l, double tol = 1e-12) const {
    auto img = [&](const SpherePoint& e) {
      SpherePoint q = frame_(e);
      return q.is_infinity() ? std::numeric_limits<double>::infinity() : q.value().real();
    };
    double c = img(l.from), d = img(l.to);
    if (detail::near_zero_or_inf(c, tol) || detail::near_zero_or_inf(d, tol)) return std::nullopt;
    if ((c < 0) == (d < 0)) return std::nullopt;
    return 0.5 * std::log(-c * d);
  }

  /// Crossing angle in [0, pi/2] between the carrier and l (l must cross).
  double crossing_angle(const GeodesicH2& l) const {
    SpherePoint c = frame_(l.from), d = frame_(l.to);
    double cr = c.value().real(), dr = d.value().real();
    double mid = 0.5 * (cr + dr), rad = 0.5 * std::abs(dr - cr);
    return std::acos(std::clamp(std::abs(mid) / rad, 0.0, 1.0));
  }

 private:
  PointH2 p_, q_;
  double length_ = 0.0;
  Moebius frame_, inverse_;
};

/// Geodesic through two distinct points, oriented p -> q.
inline GeodesicH2 geodesic_through(const PointH2& p, const PointH2& q) {
  return SegmentH2(p, q).carrier();
}

/// Point at signed arclength s along l, measured from the foot of the
/// perpendicular from `origin` onto l (positive toward l.to).
inline PointH2 point_on_geodesic(const GeodesicH2& l, const PointH2& origin, double s) {
  Moebius n = normalizer(l);
  Complex w = act(n, origin).z();
  double h = std::abs(w);
  return act(n.inverse(), PointH2{0.0, h * std::exp(s)});
}

// ---------------------------------------------------------------------------
// H^3 projections

/// Nearest-point projection onto a geodesic of H^3.
inline PointH3 project_to_geodesic(const PointH3& p, const GeodesicH3& m) {
  Moebius n = sending_to_zero_infinity(m.from, m.to);
  PointH3 q = act(n, p);
  double h = std::sqrt(std::norm(q.z) + q.t * q.t);
  return act(n.inverse(), PointH3{Complex(0.0, 0.0), h});
}

inline double distance_to_geodesic(const PointH3& p, const GeodesicH3& m) {
  Moebius n = sending_to_zero_infinity(m.from, m.to);
  PointH3 q = act(n, p);
  return std::asinh(std::abs(q.z) / q.t);
}

// ---------------------------------------------------------------------------
// Round circles on the Riemann sphere

/// A round circle of the Riemann sphere: either a Euclidean circle or a
/// line through infinity.
struct RoundCircle {
  struct Circle {
    Complex center;
    double radius;
  };
  struct Line {
    Complex point;
    Complex direction;  // unit
  };
  std::variant<Circle, Line> shape;

  static RoundCircle circle(Complex center, double radius) {
    if (!(radius > 1e-12)) throw Error(Errc::InvalidParams, "circle radius must be positive");
    return {Circle{center, radius}};
  }
  static RoundCircle line(Complex point, Complex direction) {
    return {Line{point, direction / std::abs(direction)}};
  }

  bool is_line() const { return std::holds_alternative<Line>(shape); }

  /// Point at parameter s: angle for circles, arclength for lines.
  SpherePoint point_at(double s) const {
    if (auto* c = std::get_if<Circle>(&shape)) return c->center + c->radius * std::polar(1.0, s);
    auto& l = std::get<Line>(shape);
    return l.point + s * l.direction;
  }

  /// Three distinct points on the circle.
  std::array<SpherePoint, 3> three_points() const {
    if (is_line()) return {point_at(-1.0), point_at(1.0), SpherePoint::infinity()};
    return {point_at(0.0), point_at(2.0 * kPi / 3.0), point_at(4.0 * kPi / 3.0)};
  }
};

/// Circle (or line) through three distinct points of the sphere.
inline RoundCircle circle_through(const SpherePoint& p, const SpherePoint& q, const SpherePoint& r) {
  std::array<SpherePoint, 3> pts{p, q, r};
  for (int i = 0; i < 3; ++i) {
    if (pts[i].is_infinity()) {
      Complex a = pts[(i + 1) % 3].value(), b = pts[(i + 2) % 3].value();
      return RoundCircle::line(a, b - a);
    }
  }
  Complex a = p.value(), b = q.value(), c = r.value();
  // Circumcenter via the perpendicular-bisector linear system.
  Complex ab = b - a, ac = c - a;
  double d = 2.0 * (ab.real() * ac.imag() - ab.imag() * ac.real());
  if (std::abs(d) < 1e-14 * std::max(1.0, std::norm(ab) + std::norm(ac))) {
    return RoundCircle::line(a, ab);
  }
  double ux = (ac.imag() * std::norm(ab) - ab.imag() * std::norm(ac)) / d;
  double uy = (ab.real() * std::norm(ac) - ac.real() * std::norm(ab)) / d;
  Complex center = a + Complex(ux, uy);
  double radius = std::abs(a - center);
  if (radius > SpherePoint::kInfinityThreshold * 1e-3) return RoundCircle::line(a, ab);
  return RoundCircle::circle(center, radius);
}

inline RoundCircle apply(const Moebius& g, const RoundCircle& c) {
  auto pts = c.three_points();
  return circle_through(g(pts[0]), g(pts[1]), g(pts[2]));
}

/// Largest chordal distance from sample points of a to the circle b.
inline double circle_mismatch(const RoundCircle& a, const RoundCircle& b, int samples = 16) {
  auto dist_to = [&](const SpherePoint& p) {
    if (p.is_infinity()) {
      auto* c = std::get_if<RoundCircle::Circle>(&b.shape);
      if (!c) return 0.0;
      Complex far = std::abs(c->center) > 0 ? c->center + c->radius * c->center / std::abs(c->center)
                                            : Complex(c->radius, 0.0);
      return chordal_distance(p, SpherePoint(far));
    }
    if (auto* c = std::get_if<RoundCircle::Circle>(&b.shape)) {
      Complex z = p.value();
      Complex dir = z - c->center;
      SpherePoint foot = std::abs(dir) > 0 ? SpherePoint(c->center + c->radius * dir / std::abs(dir))
                                           : SpherePoint(c->center + c->radius);
      return chordal_distance(p, foot);
    }
    auto& l = std::get<RoundCircle::Line>(b.shape);
    Complex z = p.value() - l.point;
    double along = (z * std::conj(l.direction)).real();
    return chordal_distance(p, SpherePoint(l.point + along * l.direction));
  };
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double s = a.is_line() ? std::tan(kPi * ((i + 0.5) / samples - 0.5)) : kTwoPi * i / samples;
    worst = std::max(worst, dist_to(a.point_at(s)));
  }
  return worst;
}

inline bool approx_equal(const RoundCircle& a, const RoundCircle& b, double tol = 1e-9) {
  return circle_mismatch(a, b) < tol && circle_mismatch(b, a) < tol;
}

// ---------------------------------------------------------------------------
// Right triangles

struct RightTriangleGap {
  /// (length(BC) - length(CA)) / length(AB): the leg adjacent to the small
  /// angle B minus the opposite leg, relative to the hypotenuse.
  double gap = 0.0;
  /// Max of angle A'BC over sampled A' with dist(C, A') < dist(C, A).
  double angle_bound = 0.0;
  /// Closed form of the same supremum: asin(sinh CA / sinh BC), or pi when
  /// CA >= BC.
  double angle_bound_exact = 0.0;
  double leg_adjacent = 0.0;  // BC
  double leg_opposite = 0.0;  // CA
};

struct RightTriangleSampling {
  int radial = 48;
  int angular = 2048;
};

/// Right triangle ABC with the right angle at C, angle B = angle_b and
/// hypotenuse AB = len_ab.
inline RightTriangleGap right_triangle_gap(double angle_b, double len_ab,
                                           RightTriangleSampling sampling = {}) {
  if (!(angle_b > 0.0) || angle_b >= kPi / 2.0) {
    throw Error(Errc::DegenerateTriangle, "angle at B must lie in (0, pi/2)");
  }
  if (!(len_ab > 0.0)) throw Error(Errc::DegenerateTriangle, "hypotenuse must be positive");
  RightTriangleGap out;
  // tanh(BC) = tanh(AB) cos B, sinh(CA) = sinh(AB) sin B.
  out.leg_adjacent = std::atanh(std::tanh(len_ab) * std::cos(angle_b));
  out.leg_opposite = std::asinh(std::sinh(len_ab) * std::sin(angle_b));
  out.gap = (out.leg_adjacent - out.leg_opposite) / len_ab;

  const double a = out.leg_adjacent, b = out.leg_opposite;
  // Once CA >= BC the disk about C swallows B and every direction occurs.
  out.angle_bound_exact = b >= a ? kPi : std::asin(std::sinh(b) / std::sinh(a));
  const double ca = std::cosh(a), sa = std::sinh(a);
  double best = 0.0;
  for (int i = 1; i <= sampling.radial; ++i) {
    double r = b * (static_cast<double>(i) / sampling.radial) * (1.0 - 1e-12);
    double cr = std::cosh(r), sr = std::sinh(r);
    for (int j = 0; j < sampling.angular; ++j) {
      double psi = kPi * j / sampling.angular;  // symmetric in psi
      double cosh_d = ca * cr - sa * sr * std::cos(psi);
      double sd = std::sqrt(std::max(cosh_d * cosh_d - 1.0, 0.0));
      if (sd == 0.0) continue;
      double cos_beta = (ca * cosh_d - cr) / (sa * sd);
      best = std::max(best, std::acos(std::clamp(cos_beta, -1.0, 1.0)));
    }
  }
  out.angle_bound = best;
  return out;
}

}  // namespace graftlab
