#pragma once

#include "graftlab/bending.hpp"
#include "graftlab/error.hpp"
#include "graftlab/hyperbolic.hpp"
#include "graftlab/lamination.hpp"
#include "graftlab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graftlab {

// ---------------------------------------------------------------------------
// Projective structures in Thurston coordinates

/// C = (tau, L): a hyperbolic surface plus a weighted multiloop, with the
/// holonomy of the bent plane. Holonomy is computed at `depth` from
/// `basepoint`; orientation is the bending handedness.
/// Default holonomy basepoint. The octagon center i lies on lifts of
/// symmetric loops such as [a1,b1], so a nearby generic point is used.
inline constexpr PointH2 kStructureBasepoint{0.0137, 1.0291};

struct ProjectiveStructureDesc {
  FuchsianSurface surface;
  Multiloop lamination;
  Representation holonomy;
  int orientation = 1;
  int depth = 4;
  PointH2 basepoint = kStructureBasepoint;
};

/// Builds the descriptor and its holonomy. Throws InvalidParams on bad
/// entries or an elementary holonomy, InsufficientDepth from bent_holonomy.
inline ProjectiveStructureDesc make_structure(const FuchsianSurface& s, Multiloop m, int depth = 4,
                                              int orientation = 1, PointH2 basepoint = kStructureBasepoint) {
  check_multiloop_entries(m);
  BendingMap b(lift_multiloop(s, m, depth), basepoint, orientation);
  Representation rho = bent_holonomy(b, s);
  // Nonelementary: two loxodromic generators with distinct axes.
  const Moebius &g1 = rho.generators[0], &g2 = rho.generators[1];
  if (!is_loxodromic(g1) || !is_loxodromic(g2) || same_geodesic(axis(g1), axis(g2), 1e-9)) {
    throw Error(Errc::InvalidParams, "holonomy is elementary");
  }
  return {s, std::move(m), rho, orientation >= 0 ? 1 : -1, depth, basepoint};
}

/// The fuchsian structure (tau, empty).
inline ProjectiveStructureDesc fuchsian_structure(const FuchsianSurface& s, int depth = 4) {
  return make_structure(s, {}, depth);
}

enum class AdmissibilityReason { Admissible, NotLoxodromic, NonPrimitive, NotSimple };

inline std::string_view to_string(AdmissibilityReason r) {
  switch (r) {
    case AdmissibilityReason::Admissible: return "Admissible";
    case AdmissibilityReason::NotLoxodromic: return "NotLoxodromic";
    case AdmissibilityReason::NonPrimitive: return "NonPrimitive";
    case AdmissibilityReason::NotSimple: return "NotSimple";
  }
  return "Unknown";
}

struct Admissibility {
  bool admissible = false;
  AdmissibilityReason reason = AdmissibilityReason::NotLoxodromic;
  explicit operator bool() const { return admissible; }
};

/// Loxodromic holonomy and an embedded lift. Simpleness of the geodesic
/// representative is certified by pairwise-disjoint depth-3 lifts.
inline Admissibility is_admissible(const ProjectiveStructureDesc& c, const GroupWord& w) {
  if (w.empty() || !is_loxodromic(c.holonomy.evaluate(w))) return {false, AdmissibilityReason::NotLoxodromic};
  if (w.is_proper_power()) return {false, AdmissibilityReason::NonPrimitive};
  if (!certify_simple(c.surface, w, 3)) return {false, AdmissibilityReason::NotSimple};
  return {true, AdmissibilityReason::Admissible};
}

/// A multiloop with multiplicities: each loop is grafted `count` times.
struct GraftLoop {
  GroupWord word;
  std::int64_t count = 1;
};
using GraftMultiloop = std::vector<GraftLoop>;

/// (tau, L) -> (tau, L + 2pi M). New loops must be admissible, pairwise
/// disjoint, and disjoint from or equal to loops of L.
inline ProjectiveStructureDesc graft(const ProjectiveStructureDesc& c, const GraftMultiloop& m) {
  Multiloop added;
  for (const auto& g : m) {
    if (g.count < 1) throw Error(Errc::InvalidParams, "graft counts must be positive");
    auto a = is_admissible(c, g.word);
    if (!a) {
      throw Error(Errc::NotAdmissible, "loop " + g.word.to_string() + " is not admissible (" +
                                           std::string(to_string(a.reason)) + ")");
    }
    added.loops.push_back({g.word, Weight::two_pi(g.count)});
  }
  try {
    validate_multiloop(c.surface, added);
  } catch (const Error& e) {
    throw Error(Errc::NotAdmissible, std::string("grafting loci intersect: ") + e.what());
  }

  Multiloop next = c.lamination;
  for (const auto& e : added.loops) {
    auto key = e.word.canonical_cyclic();
    auto it = std::find_if(next.loops.begin(), next.loops.end(),
                           [&](const MultiloopEntry& x) { return x.word.canonical_cyclic() == key; });
    if (it != next.loops.end()) {
      it->weight += e.weight;
    } else {
      next.loops.push_back(e);
    }
  }
  try {
    validate_multiloop(c.surface, next);
  } catch (const Error& e) {
    if (e.code() != Errc::CrossingDetected) throw;
    throw Error(Errc::UnsupportedConfiguration,
                "grafting loci cross the existing lamination transversally; only disjoint or parallel loci are supported");
  }
  return make_structure(c.surface, std::move(next), c.depth, c.orientation, c.basepoint);
}

/// min(|tr a - tr b|, |tr a + tr b|): trace agreement up to the sign ambiguity.
inline double trace_gap(const Moebius& a, const Moebius& b) {
  Complex ta = a.trace(), tb = b.trace();
  return std::min(std::abs(ta - tb), std::abs(ta + tb));
}

/// Max trace gap over the probe words.
inline double holonomy_gap(const Representation& a, const Representation& b, const std::vector<GroupWord>& probes) {
  double worst = 0.0;
  for (const auto& w : probes) worst = std::max(worst, trace_gap(a.evaluate(w), b.evaluate(w)));
  return worst;
}

/// Exact equality of Thurston coordinates: same surface parameters and the
/// same weight on each loop class.
inline bool same_coordinates(const ProjectiveStructureDesc& a, const ProjectiveStructureDesc& b) {
  if (a.surface.params().twist != b.surface.params().twist) return false;
  auto table = [](const Multiloop& m) {
    std::map<GroupWord, Weight> t;
    for (const auto& e : m.loops) {
      auto [it, fresh] = t.emplace(e.word.canonical_cyclic(), e.weight);
      if (!fresh) it->second += e.weight;
    }
    return t;
  };
  auto ta = table(a.lamination), tb = table(b.lamination);
  if (ta.size() != tb.size()) return false;
  for (const auto& [w, x] : ta) {
    auto it = tb.find(w);
    if (it == tb.end() || !(it->second == x)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hopf tori

struct HopfTorusDesc {
  Moebius generator;
  /// Translation length + i rotation angle.
  Complex modulus;
};

inline HopfTorusDesc hopf_torus(const Moebius& g) {
  auto t = classify(g);
  if (t.kind != IsometryKind::Loxodromic) throw Error(Errc::NotLoxodromic, "Hopf torus needs a loxodromic generator");
  return {g, Complex(t.translation_length, t.rotation_angle)};
}

// ---------------------------------------------------------------------------
// Round cylinders

/// Annulus of the sphere between two disjoint round circles, with the
/// geodesic g orthogonal to both and the foliation by circles c_t,
/// t in [-1, 1], orthogonal to g (c_{-1} = c_minus, c_{+1} = c_plus).
class RoundCylinder {
 public:
  RoundCylinder(RoundCircle c_minus, RoundCircle c_plus) : c_minus_(c_minus), c_plus_(c_plus) {
    auto [p, q] = limit_points(c_minus, c_plus);
    frame_ = sending_to_zero_infinity(p, q);
    r_minus_ = frame_radius(c_minus);
    r_plus_ = frame_radius(c_plus);
    if (r_minus_ > r_plus_) {
      // Orient so c_minus is the inner circle in the frame.
      frame_ = sending_to_zero_infinity(q, p);
      std::swap(p, q);
      r_minus_ = frame_radius(c_minus);
      r_plus_ = frame_radius(c_plus);
    }
    g_ = {p, q};
    inverse_ = frame_.inverse();
    if (!(r_plus_ / r_minus_ > 1.0 + 1e-12)) throw Error(Errc::InvalidParams, "circles coincide");
  }

  const RoundCircle& c_minus() const { return c_minus_; }
  const RoundCircle& c_plus() const { return c_plus_; }
  /// Oriented from the limit point inside c_minus to the one beyond c_plus.
  const GeodesicH3& orthogonal_geodesic() const { return g_; }
  /// Sends g to (0, inf); leaves become circles |z| = radius(t).
  const Moebius& frame() const { return frame_; }
  const Moebius& frame_inverse() const { return inverse_; }

  double log_radius(double t) const {
    return 0.5 * (1.0 - t) * std::log(r_minus_) + 0.5 * (1.0 + t) * std::log(r_plus_);
  }
  /// Foliation parameter of a frame-coordinate radius.
  double parameter(double log_r) const {
    return -1.0 + 2.0 * (log_r - std::log(r_minus_)) / (std::log(r_plus_) - std::log(r_minus_));
  }

  /// Leaf c_t on the sphere.
  RoundCircle leaf(double t) const {
    double r = std::exp(log_radius(t));
    return apply(inverse_, RoundCircle::circle(0.0, r));
  }

  /// Point of c_t at frame angle theta.
  SpherePoint point(double t, double theta) const {
    return inverse_(SpherePoint(std::polar(std::exp(log_radius(t)), theta)));
  }

  /// Largest deviation of c_minus, c_plus from circles about 0 in the frame,
  /// relative to their radii (orthogonality to g).
  double orthogonality_defect() const {
    double worst = 0.0;
    for (const RoundCircle* c : {&c_minus_, &c_plus_}) {
      RoundCircle f = apply(frame_, *c);
      if (f.is_line()) return std::numeric_limits<double>::infinity();
      const auto& fc = std::get<RoundCircle::Circle>(f.shape);
      worst = std::max(worst, std::abs(fc.center) / fc.radius);
    }
    return worst;
  }

 private:
  /// Points inverse to each other with respect to both circles.
  static std::pair<SpherePoint, SpherePoint> limit_points(const RoundCircle& a, const RoundCircle& b) {
    if (a.is_line() || b.is_line()) {
      // Move a point off both circles to infinity first.
      Complex z0 = off_both(a, b);
      Moebius inv(0.0, 1.0, 1.0, -z0);
      auto [p, q] = limit_points(apply(inv, a), apply(inv, b));
      Moebius back = inv.inverse();
      return {back(p), back(q)};
    }
    auto ca = std::get<RoundCircle::Circle>(a.shape), cb = std::get<RoundCircle::Circle>(b.shape);
    double d = std::abs(cb.center - ca.center);
    double r1 = ca.radius, r2 = cb.radius;
    if (d < 1e-14 * std::max(r1, r2)) return {SpherePoint(ca.center), SpherePoint::infinity()};
    if (std::abs(r1 - r2) < d && d < r1 + r2) throw Error(Errc::InvalidParams, "cylinder circles intersect");
    if (std::abs(std::abs(r1 - r2) - d) < 1e-12 * std::max(r1, r2) || std::abs(d - r1 - r2) < 1e-12 * (r1 + r2)) {
      throw Error(Errc::InvalidParams, "cylinder circles are tangent");
    }
    Complex e = (cb.center - ca.center) / d;
    // d s^2 - (d^2 + r1^2 - r2^2) s + d r1^2 = 0, along e from a's center.
    double bq = d * d + r1 * r1 - r2 * r2;
    double disc = std::sqrt(bq * bq - 4.0 * d * d * r1 * r1);
    double s1 = (bq + std::copysign(disc, bq)) / (2.0 * d);
    double s2 = r1 * r1 / s1;
    return {SpherePoint(ca.center + s1 * e), SpherePoint(ca.center + s2 * e)};
  }

  static double euclidean_gap(const RoundCircle& c, Complex z) {
    if (auto* k = std::get_if<RoundCircle::Circle>(&c.shape)) return std::abs(std::abs(z - k->center) - k->radius);
    const auto& l = std::get<RoundCircle::Line>(c.shape);
    return std::abs(((z - l.point) * std::conj(l.direction)).imag());
  }

  static Complex off_both(const RoundCircle& a, const RoundCircle& b) {
    for (Complex z : {Complex(0.123, 0.456), Complex(-1.7, 0.9), Complex(2.3, -3.1), Complex(0.0, 5.0)}) {
      if (euclidean_gap(a, z) > 1e-3 && euclidean_gap(b, z) > 1e-3) return z;
    }
    return Complex(7.7, 7.9);
  }

  double frame_radius(const RoundCircle& c) const {
    RoundCircle f = apply(frame_, c);
    if (f.is_line()) throw Error(Errc::InvalidParams, "cylinder circle passes through a limit point");
    return std::get<RoundCircle::Circle>(f.shape).radius;
  }

  RoundCircle c_minus_, c_plus_;
  GeodesicH3 g_;
  Moebius frame_, inverse_;
  double r_minus_ = 1.0, r_plus_ = 1.0;
};

// ---------------------------------------------------------------------------
// Supported quadrangles

/// A quadrangle developed onto a round cylinder: edges e2 and e4 run from
/// c_minus to c_plus crossing each leaf once; e1 and e3 lie on c_minus and
/// c_plus. winding_lift is the angle swept by e1 from e4 to e2 in the
/// cylinder's universal cover.
struct SupportedQuadrangle {
  RoundCylinder support;
  std::vector<Complex> e2, e4;
  double winding_lift = 0.0;
};

namespace detail {

struct EdgeLift {
  std::vector<double> param;  // foliation parameter, increasing
  std::vector<double> angle;  // unwrapped frame angle
};

/// Frame coordinates of an edge, validated to cross every leaf once.
inline EdgeLift lift_edge(const RoundCylinder& c, const std::vector<Complex>& edge, double tol) {
  if (edge.size() < 64) throw Error(Errc::InvalidParams, "edge curves need at least 64 samples");
  EdgeLift out;
  for (const auto& z : edge) {
    Complex w = c.frame()(SpherePoint(z)).value();
    double t = c.parameter(std::log(std::abs(w)));
    double a = std::arg(w);
    if (!out.angle.empty()) {
      if (!(t > out.param.back())) throw Error(Errc::InvalidParams, "edge is not transverse to the foliation");
      a = out.angle.back() + wrap_angle(a - out.angle.back());
    }
    out.param.push_back(t);
    out.angle.push_back(a);
  }
  if (std::abs(out.param.front() + 1.0) > tol || std::abs(out.param.back() - 1.0) > tol) {
    throw Error(Errc::InvalidParams, "edge must run from c_minus to c_plus");
  }
  return out;
}

inline double angle_at(const EdgeLift& e, double t) {
  auto it = std::lower_bound(e.param.begin(), e.param.end(), t);
  if (it == e.param.begin()) return e.angle.front();
  if (it == e.param.end()) return e.angle.back();
  std::size_t k = static_cast<std::size_t>(it - e.param.begin());
  double u = (t - e.param[k - 1]) / (e.param[k] - e.param[k - 1]);
  return e.angle[k - 1] + u * (e.angle[k] - e.angle[k - 1]);
}

}  // namespace detail

/// Validates the edges and that winding_lift matches the edge endpoints on
/// c_minus modulo 2pi.
inline SupportedQuadrangle make_quadrangle(RoundCylinder support, std::vector<Complex> e2, std::vector<Complex> e4,
                                           double winding_lift, double tol = 1e-9) {
  auto l2 = detail::lift_edge(support, e2, tol);
  auto l4 = detail::lift_edge(support, e4, tol);
  if (std::abs(wrap_angle(winding_lift - (l2.angle.front() - l4.angle.front()))) > 1e-9) {
    throw Error(Errc::InvalidParams, "winding lift disagrees with the edge positions");
  }
  return {std::move(support), std::move(e2), std::move(e4), winding_lift};
}

/// Develops e1 along a sampled path on c_minus from e4's start to e2's start
/// and reads the winding lift off the unwrapped frame angle.
inline SupportedQuadrangle develop_quadrangle(RoundCylinder support, std::vector<Complex> e2, std::vector<Complex> e4,
                                             const std::vector<Complex>& e1_path, double tol = 1e-9) {
  if (e1_path.size() < 2) throw Error(Errc::InvalidParams, "e1 path needs samples");
  if (std::abs(e1_path.front() - e4.front()) > tol || std::abs(e1_path.back() - e2.front()) > tol) {
    throw Error(Errc::InvalidParams, "e1 path must join e4 to e2 on c_minus");
  }
  double lift = 0.0, prev = 0.0;
  for (std::size_t k = 0; k < e1_path.size(); ++k) {
    Complex w = support.frame()(SpherePoint(e1_path[k])).value();
    if (std::abs(support.parameter(std::log(std::abs(w))) + 1.0) > tol) {
      throw Error(Errc::InvalidParams, "e1 path leaves c_minus");
    }
    double a = std::arg(w);
    if (k > 0) {
      double step = wrap_angle(a - prev);
      if (std::abs(step) > kPi / 2.0) throw Error(Errc::InvalidParams, "e1 path is sampled too coarsely");
      lift += step;
    }
    prev = a;
  }
  return make_quadrangle(std::move(support), std::move(e2), std::move(e4), lift, tol);
}

/// Quadrangle whose e4 starts at frame angle `start` on c_minus and drifts
/// by `drift4` up to c_plus, e2 likewise from start + width by `drift2`;
/// e1 is developed along c_minus through width + 2pi extra_turns.
inline SupportedQuadrangle standard_quadrangle(const RoundCylinder& c, double start, double width,
                                               double drift4 = 0.0, double drift2 = 0.0,
                                               std::int64_t extra_turns = 0, int samples = 64) {
  std::vector<Complex> e2, e4;
  for (int k = 0; k < samples; ++k) {
    double t = -1.0 + 2.0 * k / (samples - 1);
    double u = 0.5 * (t + 1.0);
    e4.push_back(c.point(t, start + drift4 * u).value());
    e2.push_back(c.point(t, start + width + drift2 * u).value());
  }
  double sweep = width + kTwoPi * static_cast<double>(extra_turns);
  int n = 2 + static_cast<int>(std::ceil(std::abs(sweep) / (kPi / 8.0)));
  std::vector<Complex> e1;
  for (int k = 0; k <= n; ++k) e1.push_back(c.point(-1.0, start + sweep * k / n).value());
  e1.front() = e4.front();
  e1.back() = e2.front();
  return develop_quadrangle(c, std::move(e2), std::move(e4), e1);
}

/// Length of the tie arc on c_t between e4 and e2 after normalizing c_t to
/// the equator. Throws ParameterOutOfRange outside [-1, 1].
inline double equator_arc_length(const SupportedQuadrangle& q, double t) {
  if (!(t >= -1.0 && t <= 1.0)) throw Error(Errc::ParameterOutOfRange, "foliation parameter outside [-1, 1]");
  auto l2 = detail::lift_edge(q.support, q.e2, 1e-6);
  auto l4 = detail::lift_edge(q.support, q.e4, 1e-6);
  return q.winding_lift + (detail::angle_at(l2, t) - l2.angle.front()) - (detail::angle_at(l4, t) - l4.angle.front());
}

/// The same quadrangle with d full cylinder turns inserted along e1.
inline SupportedQuadrangle insert_turns(const SupportedQuadrangle& q, std::int64_t d) {
  SupportedQuadrangle out = q;
  out.winding_lift += kTwoPi * static_cast<double>(d);
  return out;
}

struct QuadrangleComparison {
  std::int64_t turns = 0;  // signed multiarc count
  double residual = 0.0;   // distance of the winding difference from 2pi * turns, in turns
};

/// d = round((Q2.winding - Q1.winding) / 2pi): Q2 = Gr_d(Q1) for d > 0 and
/// Q1 = Gr_{-d}(Q2) for d < 0. Throws SupportMismatch unless the supports
/// and e4 agree, NonIntegralResidual above 1e-3.
inline QuadrangleComparison compare_quadrangles(const SupportedQuadrangle& a, const SupportedQuadrangle& b,
                                                double tol = 1e-9) {
  if (!approx_equal(a.support.c_minus(), b.support.c_minus(), tol) ||
      !approx_equal(a.support.c_plus(), b.support.c_plus(), tol)) {
    throw Error(Errc::SupportMismatch, "quadrangles lie on different cylinders");
  }
  if (a.e4.size() != b.e4.size()) throw Error(Errc::SupportMismatch, "supporting arcs differ");
  for (std::size_t k = 0; k < a.e4.size(); ++k) {
    if (std::abs(a.e4[k] - b.e4[k]) > tol) throw Error(Errc::SupportMismatch, "supporting arcs differ");
  }
  double x = (b.winding_lift - a.winding_lift) / kTwoPi;
  double d = std::round(x);
  QuadrangleComparison r{static_cast<std::int64_t>(d), std::abs(x - d)};
  if (r.residual > 1e-3) throw Error(Errc::NonIntegralResidual, "winding difference is not a 2pi multiple");
  return r;
}

// ---------------------------------------------------------------------------
// Thurston metric cylinders

struct ThurstonCylinder {
  GroupWord loop;
  double circumference = 0.0;
  double height = 0.0;
};

/// One Euclidean cylinder per loop: circumference the hyperbolic length of
/// the loop, height its weight.
inline std::vector<ThurstonCylinder> thurston_cylinders(const ProjectiveStructureDesc& c) {
  std::vector<ThurstonCylinder> out;
  for (const auto& e : c.lamination.loops) {
    out.push_back({e.word, word_length(c.surface, e.word), e.weight.value()});
  }
  return out;
}

/// Angle at the vertices of the crescent swept by a weight span.
inline double crescent_angle(double weight_span) {
  if (!(weight_span >= 0.0)) throw Error(Errc::InvalidParams, "weight span must be nonnegative");
  return std::fmod(weight_span, kTwoPi);
}

}  // namespace graftlab
