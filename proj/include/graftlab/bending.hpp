#pragma once

#include "graftlab/error.hpp"
#include "graftlab/hyperbolic.hpp"
#include "graftlab/lamination.hpp"
#include "graftlab/surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

namespace graftlab {

namespace detail {

/// Weight reduced into [0, 2pi); exact weights reduce exactly, so whole
/// turns leave no floating-point residue in the rotation.
inline double bending_angle(const Weight& w) {
  if (w.is_exact()) {
    Rational c = w.pi_coeff();
    std::int64_t n = c.numerator(), d = c.denominator();
    std::int64_t q = n / (2 * d);
    if (n - q * 2 * d < 0) --q;
    return Weight::pi_multiple(c - Rational(2 * q)).value();
  }
  double r = std::fmod(w.value(), kTwoPi);
  return r < 0.0 ? r + kTwoPi : r;
}

}  // namespace detail

/// Bending of the plane H^2 (the vertical half-plane over the real axis)
/// along a finite measured lamination, normalized to fix the component of
/// the basepoint.
///
/// Handedness: every leaf is oriented with the basepoint on its left, and a
/// crossing away from the basepoint applies elliptic_about(leaf, h * w) with
/// h = handedness (+1 or -1). Weights enter modulo 2pi.
class BendingMap {
 public:
  BendingMap(FiniteMeasuredLamination lam, PointH2 basepoint, int handedness = 1)
      : lam_(std::move(lam)), basepoint_(basepoint), handedness_(handedness >= 0 ? 1 : -1) {
    if (!is_valid(basepoint)) throw Error(Errc::InvalidParams, "basepoint outside H^2");
    rotations_.reserve(lam_.size());
    inverses_.reserve(lam_.size());
    for (const auto& leaf : lam_.leaves()) {
      double sd = signed_distance(leaf.geodesic, basepoint_);
      if (std::abs(sd) < 1e-9) throw Error(Errc::PointOnLeaf, "basepoint lies on a leaf");
      GeodesicH2 oriented = sd > 0.0 ? leaf.geodesic.reversed() : leaf.geodesic;
      Moebius e = elliptic_about(oriented.in_h3(), handedness_ * detail::bending_angle(leaf.weight));
      rotations_.push_back(e);
      inverses_.push_back(e.inverse());
      oriented_.push_back(oriented);
    }
  }

  const FiniteMeasuredLamination& lamination() const { return lam_; }
  const PointH2& basepoint() const { return basepoint_; }
  int handedness() const { return handedness_; }

  /// Rotation applied when crossing leaf i away from the basepoint.
  const Moebius& rotation(std::size_t i) const { return rotations_[i]; }
  const Moebius& inverse_rotation(std::size_t i) const { return inverses_[i]; }
  /// Leaf i oriented with the basepoint on its left.
  const GeodesicH2& oriented_leaf(std::size_t i) const { return oriented_[i]; }

  /// Composite rotation E_1 ... E_k for the leaves crossed by
  /// [basepoint, x], nearest the basepoint first. Throws PointOnLeaf when x
  /// is within 1e-9 of a leaf and ConcurrentLeaves on tied crossings.
  Moebius matrix_at(const PointH2& x) const {
    if (dist_h2(basepoint_, x) < 1e-15) return Moebius::identity();
    std::vector<LeafCrossing> cs;
    try {
      cs = crossings(lam_, SegmentH2(basepoint_, x));
    } catch (const Error& e) {
      if (e.code() == Errc::EndpointOnLeaf) throw Error(Errc::PointOnLeaf, "point lies on a leaf");
      throw;
    }
    Moebius m;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (k > 0 && cs[k].s - cs[k - 1].s < 1e-13) {
        throw Error(Errc::ConcurrentLeaves, "two leaves cross the path at the same point");
      }
      m = m * rotations_[cs[k].leaf];
    }
    return m;
  }

 private:
  FiniteMeasuredLamination lam_;
  PointH2 basepoint_;
  int handedness_;
  std::vector<Moebius> rotations_, inverses_;
  std::vector<GeodesicH2> oriented_;
};

inline PointH3 bend_point(const BendingMap& b, const PointH2& x) { return act(b.matrix_at(x), embed(x)); }

// ---------------------------------------------------------------------------
// Holonomy

/// A representation of the surface group given on the generators.
struct Representation {
  std::array<Moebius, 4> generators;

  Moebius letter(int l) const {
    const Moebius& g = generators[static_cast<std::size_t>(std::abs(l) - 1)];
    return l > 0 ? g : g.inverse();
  }
  Moebius evaluate(const GroupWord& w) const {
    Moebius r;
    for (int l : w.letters()) r = r * letter(l);
    return r;
  }
};

inline Representation fuchsian_representation(const FuchsianSurface& s) { return {s.generators()}; }

/// rho_bent(g) = Bend(basepoint -> g basepoint) rho(g) on each generator,
/// without the equivariance check.
inline Representation bent_holonomy_unchecked(const BendingMap& b, const FuchsianSurface& s) {
  Representation r;
  for (int k = 0; k < 4; ++k) {
    const Moebius& g = s.generators()[static_cast<std::size_t>(k)];
    r.generators[static_cast<std::size_t>(k)] = b.matrix_at(act(g, b.basepoint())) * g;
  }
  return r;
}

/// Max of dist_h3(beta(g x), rho(g) beta(x)) over the given elements and
/// points. Points that land on a leaf are skipped.
inline double equivariance_defect(const BendingMap& b, const FuchsianSurface& s, const Representation& rho,
                                  const std::vector<GroupWord>& elements, const std::vector<PointH2>& points) {
  double worst = 0.0;
  for (const auto& x : points) {
    std::optional<PointH3> bx;
    try {
      bx = bend_point(b, x);
    } catch (const Error& e) {
      if (e.code() != Errc::PointOnLeaf) throw;
      continue;
    }
    for (const auto& w : elements) {
      try {
        PointH3 lhs = bend_point(b, act(s.evaluate(w), x));
        worst = std::max(worst, dist_h3(lhs, act(rho.evaluate(w), *bx)));
      } catch (const Error& e) {
        if (e.code() != Errc::PointOnLeaf) throw;
      }
    }
  }
  return worst;
}

/// Points at hyperbolic distance `radius` around p, evenly spaced in angle.
inline std::vector<PointH2> points_around(const PointH2& p, double radius, int count) {
  Moebius to_p(p.y, p.x, 0.0, 1.0);  // i -> p
  std::vector<PointH2> out;
  double r = std::tanh(0.5 * radius);
  for (int k = 0; k < count; ++k) {
    out.push_back(act(to_p, from_disk(std::polar(r, kTwoPi * (k + 0.5) / count))));
  }
  return out;
}

/// Bent holonomy, checked on the generators and their inverses at 16
/// points near the basepoint. Throws InsufficientDepth above `tol`.
inline Representation bent_holonomy(const BendingMap& b, const FuchsianSurface& s, double tol = 1e-6) {
  Representation rho = bent_holonomy_unchecked(b, s);
  std::vector<GroupWord> gens;
  for (int l : {1, -1, 2, -2, 3, -3, 4, -4}) gens.push_back(GroupWord{l});
  std::vector<PointH2> pts = points_around(b.basepoint(), 0.3, 8);
  for (const auto& q : points_around(b.basepoint(), 0.7, 8)) pts.push_back(q);
  double defect = equivariance_defect(b, s, rho, gens, pts);
  if (!(defect < tol)) {
    throw Error(Errc::InsufficientDepth, "bent holonomy equivariance defect " + std::to_string(defect) +
                                             " exceeds tolerance; lift the lamination deeper");
  }
  return rho;
}

// ---------------------------------------------------------------------------
// Bent geodesics

struct PolylineCrossing {
  std::size_t vertex;  // index into the polyline samples
  std::size_t leaf;
  double angle;
};

/// The beta-image of a geodesic segment. Between consecutive samples the
/// image is a geodesic arc; every leaf crossing is a sample.
struct BentPolyline {
  std::vector<PointH3> points;
  /// Signed arclength along the H^2 geodesic, from the foot of the
  /// perpendicular dropped from the basepoint.
  std::vector<double> params;
  std::vector<PolylineCrossing> crossings;
  /// Upper bound for the parameter gap between consecutive samples.
  double step = 0.0;
};

/// Samples beta along l over [-span, span], `steps` uniform intervals plus
/// one vertex per crossing. The image is built by marching rotations out
/// from the foot point, so vertices use the rotation in force before the
/// crossing (the leaf is fixed by its own rotation, so either side agrees).
inline BentPolyline bend_geodesic(const BendingMap& b, const GeodesicH2& l, double span, int steps) {
  if (!(span > 0.0) || steps < 2) throw Error(Errc::InvalidParams, "span must be positive and steps >= 2");
  const auto& lam = b.lamination();
  for (const auto& leaf : lam.leaves()) {
    if (same_geodesic(leaf.geodesic, l)) throw Error(Errc::InvalidParams, "geodesic equals a leaf");
  }
  auto at = [&](double t) { return point_on_geodesic(l, b.basepoint(), t); };
  SegmentH2 whole(at(-span), at(span));

  // Crossings of the whole segment, as parameters in [-span, span]; forward
  // crossings into the basepoint side undo a rotation.
  struct Hit {
    double t;
    std::size_t leaf;
    double angle;
    bool toward_basepoint;
  };
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const GeodesicH2& g = b.oriented_leaf(i);
    auto s = whole.carrier_crossing(g, 1e-14);
    if (!s || *s <= 0.0 || *s >= 2.0 * span) continue;
    // In the segment frame the carrier runs up the imaginary axis. A leaf
    // whose start lands on the negative axis arcs over it left to right,
    // so after crossing we are outside, on its left: the basepoint side.
    double c = whole.frame()(g.from).value().real();
    hits.push_back({*s - span, i, whole.crossing_angle(g), c < 0.0});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& c) { return a.t < c.t; });

  // Anchor: the foot point, or a nearby point off the leaves.
  double t0 = 0.0;
  Moebius m0;
  for (double nudge : {0.0, 1e-7, -1e-7, 1e-5, -1e-5, 1e-3}) {
    try {
      m0 = b.matrix_at(at(nudge));
      t0 = nudge;
      break;
    } catch (const Error& e) {
      if (e.code() != Errc::PointOnLeaf) throw;
    }
  }

  struct Event {
    double t;
    int hit = -1;  // index into hits, or -1 for a plain sample
  };
  std::vector<Event> events;
  for (int j = 0; j <= steps; ++j) events.push_back({-span + 2.0 * span * j / steps});
  for (std::size_t k = 0; k < hits.size(); ++k) events.push_back({hits[k].t, static_cast<int>(k)});
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& c) { return a.t < c.t; });

  std::vector<PointH3> pts(events.size());
  std::vector<Moebius> mats(events.size());
  auto first_after = std::find_if(events.begin(), events.end(), [&](const Event& e) { return e.t > t0; });
  const std::size_t pivot = static_cast<std::size_t>(first_after - events.begin());
  // Forward from the anchor: the matrix at an event is the one before its
  // own crossing; the crossing updates the running matrix afterwards.
  Moebius m = m0;
  for (std::size_t k = pivot; k < events.size(); ++k) {
    mats[k] = m;
    if (events[k].hit >= 0) {
      const Hit& h = hits[static_cast<std::size_t>(events[k].hit)];
      m = m * (h.toward_basepoint ? b.inverse_rotation(h.leaf) : b.rotation(h.leaf));
    }
  }
  m = m0;
  for (std::size_t k = pivot; k-- > 0;) {
    mats[k] = m;
    if (events[k].hit >= 0) {
      const Hit& h = hits[static_cast<std::size_t>(events[k].hit)];
      m = m * (h.toward_basepoint ? b.rotation(h.leaf) : b.inverse_rotation(h.leaf));
    }
  }

  BentPolyline out;
  out.step = 2.0 * span / steps;
  for (std::size_t k = 0; k < events.size(); ++k) {
    out.points.push_back(act(mats[k], embed(at(events[k].t))));
    out.params.push_back(events[k].t);
    if (events[k].hit >= 0) {
      const Hit& h = hits[static_cast<std::size_t>(events[k].hit)];
      out.crossings.push_back({k, h.leaf, h.angle});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bilipschitz and parallelism report

namespace detail {

/// Ideal endpoint of the H^3 geodesic from p through q, beyond q.
inline SpherePoint ray_endpoint(const PointH3& p, const PointH3& q) {
  double horizontal = std::abs(q.z - p.z);
  double scale = std::max(p.t, q.t);
  if (horizontal < 1e-14 * scale) {
    if (q.t > p.t) return SpherePoint::infinity();
    return SpherePoint(p.z);
  }
  Complex e = (q.z - p.z) / horizontal;
  // Circle in the vertical plane through p and q: center at offset c from
  // p along e, radius R; moving from p to q increases the offset.
  double c = (horizontal * horizontal + q.t * q.t - p.t * p.t) / (2.0 * horizontal);
  double r = std::hypot(c, p.t);
  double far = c >= 0.0 ? c + r : p.t * p.t / (r - c);
  return SpherePoint(p.z + far * e);
}

/// Euclidean unit tangents at both ends of the H^3 geodesic arc p -> q, as
/// (Re, Im, t) triples.
inline std::array<std::array<double, 3>, 2> arc_tangents(const PointH3& p, const PointH3& q) {
  double horizontal = std::abs(q.z - p.z);
  auto unit = [](double x, double y, double t) {
    double n = std::sqrt(x * x + y * y + t * t);
    return std::array<double, 3>{x / n, y / n, t / n};
  };
  if (horizontal < 1e-14 * std::max(p.t, q.t)) {
    double up = q.t >= p.t ? 1.0 : -1.0;
    return {std::array<double, 3>{0.0, 0.0, up}, std::array<double, 3>{0.0, 0.0, up}};
  }
  Complex e = (q.z - p.z) / horizontal;
  double u0 = (horizontal * horizontal + q.t * q.t - p.t * p.t) / (2.0 * horizontal);
  return {unit(p.t * e.real(), p.t * e.imag(), u0), unit(q.t * e.real(), q.t * e.imag(), u0 - horizontal)};
}

}  // namespace detail

struct BilipschitzReport {
  double max_ratio = 1.0;
  double max_tangent_angle = 0.0;
  double max_dist_to_axis = 0.0;
  /// Bilipschitz constant of the nearest-point projection to m composed
  /// with beta, against arclength (max of both directions).
  double projected_ratio = 1.0;
  GeodesicH3 axis;
};

/// Ratios use pairs with parameter gap above `min_gap`; closer pairs only
/// measure rounding.
inline BilipschitzReport bilipschitz_report(const BentPolyline& p, double min_gap = 1e-9) {
  const std::size_t n = p.points.size();
  if (n < 3) throw Error(Errc::TooFewSamples, "need at least 3 samples");
  BilipschitzReport r;
  r.axis = {detail::ray_endpoint(p.points[1], p.points[0]), detail::ray_endpoint(p.points[n - 2], p.points[n - 1])};
  Moebius norm = sending_to_zero_infinity(r.axis.from, r.axis.to);
  std::vector<PointH3> q(n);
  std::vector<double> pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = act(norm, p.points[i]);
    pos[i] = 0.5 * std::log(std::norm(q[i].z) + q[i].t * q[i].t);
    r.max_dist_to_axis = std::max(r.max_dist_to_axis, std::asinh(std::abs(q[i].z) / q[i].t));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dt = std::abs(p.params[j] - p.params[i]);
      if (dt < min_gap) continue;
      r.max_ratio = std::max(r.max_ratio, dt / dist_h3(p.points[i], p.points[j]));
      double dp = std::abs(pos[j] - pos[i]);
      r.projected_ratio = std::max({r.projected_ratio, dt / dp, dp / dt});
    }
  }
  // Angle between the arc tangent and the radial field, which is normal to
  // the hyperplanes orthogonal to m (the upper half-space is conformal).
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (p.params[i + 1] - p.params[i] < min_gap) continue;
    auto tangents = detail::arc_tangents(q[i], q[i + 1]);
    for (int end = 0; end < 2; ++end) {
      const PointH3& x = end == 0 ? q[i] : q[i + 1];
      double len = std::sqrt(std::norm(x.z) + x.t * x.t);
      const auto& t = tangents[static_cast<std::size_t>(end)];
      std::array<double, 3> radial{x.z.real() / len, x.z.imag() / len, x.t / len};
      double c = std::abs(t[0] * radial[0] + t[1] * radial[1] + t[2] * radial[2]);
      double sx = t[1] * radial[2] - t[2] * radial[1], sy = t[2] * radial[0] - t[0] * radial[2],
             sz = t[0] * radial[1] - t[1] * radial[0];
      r.max_tangent_angle = std::max(r.max_tangent_angle, std::atan2(std::sqrt(sx * sx + sy * sy + sz * sz), c));
    }
  }
  return r;
}

}  // namespace graftlab
