#pragma once

#include "graftlab/error.hpp"
#include "graftlab/hyperbolic.hpp"
#include "graftlab/lamination.hpp"
#include "graftlab/surface.hpp"
#include "graftlab/weight.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace graftlab {

using WeightVector = std::vector<Weight>;

/// One of the two outermost ties of a branch: side 0 at the start, 1 at the end.
struct BranchEnd {
  std::size_t branch = 0;
  int side = 0;

  friend bool operator<(const BranchEnd& a, const BranchEnd& b) {
    return a.branch != b.branch ? a.branch < b.branch : a.side < b.side;
  }
};

/// Switch where the big end's weight splits into the two small ends.
struct TripleSwitch {
  BranchEnd big, small1, small2;
};

/// Two branch ends sharing a whole tie, with no switch point on it.
struct PairSwitch {
  BranchEnd first, second;
};

/// A branch drawn in H^2: two rails sampled in parallel and the ties
/// joining rails[0][k] to rails[1][k] for k in tie_index. The first and last
/// entries of tie_index are the outermost ties.
struct BranchQuadrangle {
  std::array<std::vector<PointH2>, 2> rails;
  std::vector<std::vector<PointH2>> ties;
  std::vector<std::size_t> tie_index;
};

class TrainTrack {
 public:
  /// Throws InvalidTrack unless every branch end is used exactly once.
  TrainTrack(std::string name, std::size_t branches, std::vector<TripleSwitch> triples,
             std::vector<PairSwitch> pairs)
      : name_(std::move(name)), branches_(branches), triples_(std::move(triples)), pairs_(std::move(pairs)) {
    std::set<BranchEnd> seen;
    auto use = [&](const BranchEnd& e) {
      if (e.branch >= branches_ || (e.side != 0 && e.side != 1)) {
        throw Error(Errc::InvalidTrack, "switch refers to a missing branch end");
      }
      if (!seen.insert(e).second) throw Error(Errc::InvalidTrack, "branch end used twice");
    };
    for (const auto& t : triples_) {
      use(t.big);
      use(t.small1);
      use(t.small2);
    }
    for (const auto& p : pairs_) {
      use(p.first);
      use(p.second);
    }
    if (seen.size() != 2 * branches_) throw Error(Errc::InvalidTrack, "some branch end is in no switch");
  }

  const std::string& name() const { return name_; }
  std::size_t branch_count() const { return branches_; }
  const std::vector<TripleSwitch>& triples() const { return triples_; }
  const std::vector<PairSwitch>& pairs() const { return pairs_; }

  const std::optional<std::vector<BranchQuadrangle>>& embedding() const { return embedding_; }
  void set_embedding(std::vector<BranchQuadrangle> e) {
    if (e.size() != branches_) throw Error(Errc::DimensionMismatch, "one quadrangle per branch");
    embedding_ = std::move(e);
  }

  /// One tie segment per branch, used to read lamination weights.
  const std::vector<SegmentH2>& transversals() const { return transversals_; }
  void set_transversals(std::vector<SegmentH2> t) {
    if (t.size() != branches_) throw Error(Errc::DimensionMismatch, "one transversal per branch");
    transversals_ = std::move(t);
  }

 private:
  std::string name_;
  std::size_t branches_;
  std::vector<TripleSwitch> triples_;
  std::vector<PairSwitch> pairs_;
  std::optional<std::vector<BranchQuadrangle>> embedding_;
  std::vector<SegmentH2> transversals_;
};

// ---------------------------------------------------------------------------
// Switch arithmetic

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// One row per triple (+1 big, -1 per small end, accumulated per branch),
/// then one equality row per pair joining different branches.
inline IntMatrix switch_matrix(const TrainTrack& t, bool include_pairs = true) {
  IntMatrix rows;
  for (const auto& s : t.triples()) {
    std::vector<std::int64_t> row(t.branch_count(), 0);
    row[s.big.branch] += 1;
    row[s.small1.branch] -= 1;
    row[s.small2.branch] -= 1;
    rows.push_back(std::move(row));
  }
  if (include_pairs) {
    for (const auto& p : t.pairs()) {
      if (p.first.branch == p.second.branch) continue;
      std::vector<std::int64_t> row(t.branch_count(), 0);
      row[p.first.branch] = 1;
      row[p.second.branch] = -1;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// Row residuals M w; exact when every weight is exact.
inline WeightVector switch_residuals(const TrainTrack& t, const WeightVector& w) {
  if (w.size() != t.branch_count()) throw Error(Errc::DimensionMismatch, "weight vector length != branch count");
  WeightVector out;
  for (const auto& row : switch_matrix(t)) {
    Weight r;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) r += row[j] * w[j];
    }
    out.push_back(r);
  }
  return out;
}

/// Switch conditions hold and w >= 0. Exact weights are tested exactly;
/// float residuals must be below float_tol times the largest weight.
inline bool is_carried(const TrainTrack& t, const WeightVector& w, double float_tol = 1e-12) {
  auto res = switch_residuals(t, w);
  double scale = 1.0;
  for (const auto& x : w) {
    if (x.sign() < 0) return false;
    scale = std::max(scale, std::abs(x.value()));
  }
  for (const auto& r : res) {
    if (r.is_exact() ? !r.is_zero() : std::abs(r.value()) > float_tol * scale) return false;
  }
  return true;
}

inline bool is_fully_carried(const TrainTrack& t, const WeightVector& w, double float_tol = 1e-12) {
  if (!is_carried(t, w, float_tol)) return false;
  return std::all_of(w.begin(), w.end(), [](const Weight& x) { return x.sign() > 0; });
}

/// wPrime - w for two carried vectors. Throws NotCarried otherwise.
inline WeightVector weight_difference(const TrainTrack& t, const WeightVector& w_prime, const WeightVector& w) {
  if (w_prime.size() != t.branch_count() || w.size() != t.branch_count()) {
    throw Error(Errc::DimensionMismatch, "weight vector length != branch count");
  }
  if (!is_carried(t, w_prime) || !is_carried(t, w)) throw Error(Errc::NotCarried, "weights not carried by track");
  WeightVector d;
  for (std::size_t j = 0; j < w.size(); ++j) d.push_back(w_prime[j] - w[j]);
  return d;
}

/// Divides each entry by 2pi. Throws NonIntegralResidual when an entry is
/// not an integer multiple (exactly, or within tol for float weights).
inline std::vector<std::int64_t> two_pi_counts(const WeightVector& d, double tol = 1e-9) {
  std::vector<std::int64_t> out;
  for (const auto& x : d) {
    if (x.is_exact()) {
      Rational half = x.pi_coeff() / Rational(2);
      if (half.denominator() != 1) throw Error(Errc::NonIntegralResidual, "entry is not a multiple of 2pi");
      out.push_back(half.numerator());
    } else {
      double k = x.value() / kTwoPi;
      if (std::abs(k - std::round(k)) > tol) throw Error(Errc::NonIntegralResidual, "entry is not a multiple of 2pi");
      out.push_back(static_cast<std::int64_t>(std::llround(k)));
    }
  }
  return out;
}

/// Lamination weight on each branch, read off its transversal tie.
inline WeightVector branch_weights(const TrainTrack& t, const FiniteMeasuredLamination& lam) {
  if (t.transversals().empty()) throw Error(Errc::NoEmbedding, "track has no transversals");
  WeightVector w;
  for (const auto& tie : t.transversals()) w.push_back(transversal_measure(lam, tie));
  return w;
}

// ---------------------------------------------------------------------------
// Geometry audit

namespace detail {

struct CircleFit {
  bool line = false;
  Complex center;  // circle center, or the line direction when line
  double radius = 0.0;
};

/// Circle (or line) through three points of the plane.
inline CircleFit fit_circle(Complex a, Complex b, Complex c) {
  Complex ab = b - a, ac = c - a;
  double cross = ab.real() * ac.imag() - ab.imag() * ac.real();
  double scale = std::abs(ab) * std::abs(ac);
  if (std::abs(cross) <= 1e-13 * scale) return {true, (c - a) / std::abs(c - a), 0.0};
  double d = 2.0 * cross;
  double ab2 = std::norm(ab), ac2 = std::norm(ac);
  Complex off((ac.imag() * ab2 - ab.imag() * ac2) / d, (ab.real() * ac2 - ac.real() * ab2) / d);
  return {false, a + off, std::abs(off)};
}

/// Geodesic curvature of the constant-curvature curve through three points
/// of the upper half-plane: |center height| / radius for a circle, |cos| of
/// the slope angle for a line. Exact on geodesics, horocycles, hypercycles.
inline double three_point_curvature(const PointH2& a, const PointH2& b, const PointH2& c) {
  CircleFit f = fit_circle(a.z(), b.z(), c.z());
  if (f.line) return std::abs(f.center.real());
  return std::abs(f.center.imag()) / f.radius;
}

/// Unit tangent at p of the circle or line through three points.
inline Complex tangent_at(const CircleFit& f, Complex p) {
  if (f.line) return f.center;
  Complex r = p - f.center;
  return Complex(-r.imag(), r.real()) / std::abs(r);
}

/// Max curvature over consecutive sample triples.
inline double max_curvature(const std::vector<PointH2>& pts) {
  double k = 0.0;
  for (std::size_t i = 0; i + 2 < pts.size(); ++i) k = std::max(k, three_point_curvature(pts[i], pts[i + 1], pts[i + 2]));
  return k;
}

inline double polyline_length(const std::vector<PointH2>& pts) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) len += dist_h2(pts[i], pts[i + 1]);
  return len;
}

/// Tangent of a sampled curve at sample k, from the local circle fit.
inline Complex sampled_tangent(const std::vector<PointH2>& pts, std::size_t k) {
  std::size_t i = std::min(k == 0 ? 0 : k - 1, pts.size() - 3);
  return tangent_at(fit_circle(pts[i].z(), pts[i + 1].z(), pts[i + 2].z()), pts[k].z());
}

}  // namespace detail

struct BranchAudit {
  double tie_length = 0.0;
  double tie_curvature = 0.0;
  double rail_curvature = 0.0;
  double angle_deviation = 0.0;  // |tie-rail angle - pi/2|
  double min_rail_length = 0.0;
};

struct GeometryAudit {
  std::vector<BranchAudit> branches;
  double max_tie_length = 0.0;
  double max_tie_curvature = 0.0;
  double max_rail_curvature = 0.0;
  double max_angle_deviation = 0.0;
  double min_rail_length = 0.0;
  bool slim = false;      // ties shorter than epsilon
  bool straight = false;  // ties and rails with curvature below epsilon
  bool pass = false;      // slim, straight, and near-orthogonal corners
};

/// Per-branch maxima over the sampled embedding. Throws NoEmbedding.
inline GeometryAudit geometry_audit(const TrainTrack& t, double epsilon) {
  if (!t.embedding()) throw Error(Errc::NoEmbedding, "track has no embedding");
  GeometryAudit a;
  a.min_rail_length = std::numeric_limits<double>::infinity();
  for (const auto& q : *t.embedding()) {
    BranchAudit b;
    b.min_rail_length = std::numeric_limits<double>::infinity();
    for (const auto& rail : q.rails) {
      b.rail_curvature = std::max(b.rail_curvature, detail::max_curvature(rail));
      b.min_rail_length = std::min(b.min_rail_length, detail::polyline_length(rail));
    }
    for (std::size_t k = 0; k < q.ties.size(); ++k) {
      const auto& tie = q.ties[k];
      b.tie_length = std::max(b.tie_length, detail::polyline_length(tie));
      b.tie_curvature = std::max(b.tie_curvature, detail::max_curvature(tie));
      for (int end = 0; end < 2; ++end) {
        std::size_t at = end == 0 ? 0 : tie.size() - 1;
        Complex tt = detail::sampled_tangent(tie, at);
        Complex rt = detail::sampled_tangent(q.rails[static_cast<std::size_t>(end)], q.tie_index[k]);
        double c = std::abs(tt.real() * rt.real() + tt.imag() * rt.imag());
        b.angle_deviation = std::max(b.angle_deviation, std::asin(std::min(1.0, c)));
      }
    }
    a.max_tie_length = std::max(a.max_tie_length, b.tie_length);
    a.max_tie_curvature = std::max(a.max_tie_curvature, b.tie_curvature);
    a.max_rail_curvature = std::max(a.max_rail_curvature, b.rail_curvature);
    a.max_angle_deviation = std::max(a.max_angle_deviation, b.angle_deviation);
    a.min_rail_length = std::min(a.min_rail_length, b.min_rail_length);
    a.branches.push_back(b);
  }
  a.slim = a.max_tie_length < epsilon;
  a.straight = a.max_tie_curvature < epsilon && a.max_rail_curvature < epsilon;
  a.pass = a.slim && a.straight && a.max_angle_deviation < epsilon;
  return a;
}

// ---------------------------------------------------------------------------
// Shipped tracks

/// Point at arclength s along l from the foot of the perpendicular from
/// origin, pushed a signed distance r off l (positive to the right).
inline PointH2 offset_point(const GeodesicH2& l, const PointH2& origin, double s, double r) {
  Moebius n = normalizer(l);
  double h = std::abs(act(n, origin).z()) * std::exp(s);
  return act(n.inverse(), PointH2{h * std::tanh(r), h / std::cosh(r)});
}

struct EmbeddingSampling {
  int rail_samples = 32;
  int tie_samples = 9;
  int ties_per_branch = 5;
};

/// Track around one closed geodesic: its r-neighborhood cut into `pieces`
/// branches of equal length along one period of the axis, glued end to end
/// by pair switches (the last end meets the first through the deck
/// transformation). Rails are equidistant curves, ties orthogonal geodesics.
inline TrainTrack single_geodesic_track(const FuchsianSurface& s, const GroupWord& loop = {1}, double radius = 0.04,
                                        int pieces = 2, PointH2 basepoint = {0.0, 1.0},
                                        EmbeddingSampling sampling = {}) {
  if (!(radius > 0.0) || pieces < 1) throw Error(Errc::InvalidParams, "radius must be positive, pieces >= 1");
  GeodesicH2 ax = loop_axis(s, loop);
  double period = word_length(s, loop);
  const auto np = static_cast<std::size_t>(pieces);
  std::vector<PairSwitch> pairs;
  for (std::size_t j = 0; j < np; ++j) pairs.push_back({{j, 1}, {(j + 1) % np, 0}});
  TrainTrack t("single-geodesic:" + loop.to_string(), np, {}, std::move(pairs));

  std::vector<BranchQuadrangle> quads;
  std::vector<SegmentH2> transversals;
  const double piece = period / pieces;
  for (int j = 0; j < pieces; ++j) {
    BranchQuadrangle q;
    auto at = [&](int k) { return j * piece + piece * k / (sampling.rail_samples - 1); };
    for (int side = 0; side < 2; ++side) {
      double r = side == 0 ? -radius : radius;
      for (int k = 0; k < sampling.rail_samples; ++k) q.rails[side].push_back(offset_point(ax, basepoint, at(k), r));
    }
    for (int m = 0; m < sampling.ties_per_branch; ++m) {
      int k = static_cast<int>(std::lround(double(m) * (sampling.rail_samples - 1) / (sampling.ties_per_branch - 1)));
      std::vector<PointH2> tie;
      for (int u = 0; u < sampling.tie_samples; ++u) {
        double r = -radius + 2.0 * radius * u / (sampling.tie_samples - 1);
        tie.push_back(offset_point(ax, basepoint, at(k), r));
      }
      q.ties.push_back(std::move(tie));
      q.tie_index.push_back(static_cast<std::size_t>(k));
    }
    double mid = (j + 0.5) * piece;
    transversals.emplace_back(offset_point(ax, basepoint, mid, -radius), offset_point(ax, basepoint, mid, radius));
    quads.push_back(std::move(q));
  }
  t.set_embedding(std::move(quads));
  t.set_transversals(std::move(transversals));
  return t;
}

namespace detail {

/// Feet of the common perpendicular of two disjoint, non-asymptotic
/// geodesics, on g and on h respectively.
inline std::pair<PointH2, PointH2> common_perpendicular(const GeodesicH2& g, const GeodesicH2& h) {
  if (relation(g, h) != GeodesicRelation::Disjoint) throw Error(Errc::InvalidParams, "geodesics are not disjoint");
  Moebius n = normalizer(g);
  double c = n(h.from).value().real(), d = n(h.to).value().real();
  // Inversion in |z| = sqrt(cd) swaps c and d, so that circle is orthogonal
  // to both geodesics.
  double rho = std::sqrt(c * d);
  double x = 2.0 * c * d / (c + d);
  PointH2 on_g{0.0, rho}, on_h{x, std::sqrt(rho * rho - x * x)};
  Moebius back = n.inverse();
  return {act(back, on_g), act(back, on_h)};
}

}  // namespace detail

/// Dumbbell: loop branches around the axes of a1 (branch 1) and a2
/// (branch 2) joined by a bar (branch 0) along their common perpendicular.
/// At each switch the loop's end is big and splits into the loop's start
/// and the bar, so carried weights put nothing on the bar. Transversals
/// cross each axis once near the foot from the basepoint; the bar's tie is
/// the middle half of the common perpendicular.
inline TrainTrack dumbbell_track(const FuchsianSurface& s, PointH2 basepoint = {0.0, 1.0}, double half_tie = 0.1) {
  TrainTrack t("dumbbell:a1|a2", 3, {{{1, 1}, {1, 0}, {0, 0}}, {{2, 1}, {2, 0}, {0, 1}}}, {});
  GeodesicH2 ax1 = loop_axis(s, {1}), ax2 = loop_axis(s, {3});
  auto [f1, f2] = detail::common_perpendicular(ax1, ax2);
  SegmentH2 bar(f1, f2);
  std::vector<SegmentH2> ties{
      SegmentH2(bar.point_at(0.25 * bar.length()), bar.point_at(0.75 * bar.length())),
      SegmentH2(offset_point(ax1, basepoint, 0.0, -half_tie), offset_point(ax1, basepoint, 0.0, half_tie)),
      SegmentH2(offset_point(ax2, basepoint, 0.0, -half_tie), offset_point(ax2, basepoint, 0.0, half_tie)),
  };
  t.set_transversals(std::move(ties));
  return t;
}

/// Theta graph: three branches between two triple switches, branch 0 big
/// at both. Purely combinatorial.
inline TrainTrack theta_track() {
  return TrainTrack("theta", 3, {{{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 1}, {2, 1}}}, {});
}

}  // namespace graftlab
