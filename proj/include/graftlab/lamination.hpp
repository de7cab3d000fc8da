#pragma once

#include "graftlab/error.hpp"
#include "graftlab/hyperbolic.hpp"
#include "graftlab/surface.hpp"
#include "graftlab/weight.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

namespace graftlab {

struct Leaf {
  GeodesicH2 geodesic;
  Weight weight;
  /// Index of the multiloop entry the leaf was lifted from; -1 if none.
  int source = -1;
};

struct MultiloopEntry {
  GroupWord word;
  Weight weight;
};

/// Weighted multiloop on the surface. Words are pairwise non-conjugate
/// (also up to inversion).
struct Multiloop {
  std::vector<MultiloopEntry> loops;

  bool empty() const { return loops.empty(); }
  std::size_t size() const { return loops.size(); }
};

/// Throws InvalidParams on nonpositive weights or repeated conjugacy classes.
inline void check_multiloop_entries(const Multiloop& m) {
  std::set<GroupWord> seen;
  for (const auto& e : m.loops) {
    if (e.word.empty()) throw Error(Errc::InvalidParams, "empty word in multiloop");
    if (e.weight.sign() <= 0) throw Error(Errc::InvalidParams, "multiloop weights must be positive");
    if (!seen.insert(e.word.canonical_cyclic()).second) {
      throw Error(Errc::InvalidParams, "conjugate words in multiloop: " + e.word.to_string());
    }
  }
}

/// Full validity per the catalog rules: entry checks, each word certified
/// simple and pairwise disjoint by depth-3 lifts.
inline void validate_multiloop(const FuchsianSurface& s, const Multiloop& m, int depth = 3) {
  check_multiloop_entries(m);
  std::vector<std::vector<GeodesicH2>> lifts;
  for (const auto& e : m.loops) {
    if (!certify_simple(s, e.word, depth)) {
      throw Error(Errc::CrossingDetected, "loop " + e.word.to_string() + " is not certified simple");
    }
    lifts.push_back(lift_loop(s, e.word, depth));
  }
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    for (std::size_t j = i + 1; j < lifts.size(); ++j) {
      if (!lifts_pairwise_disjoint(lifts[i], lifts[j])) {
        throw Error(Errc::CrossingDetected, "loops " + m.loops[i].word.to_string() + " and " +
                                                m.loops[j].word.to_string() + " intersect");
      }
    }
  }
}

struct LaminationProvenance {
  OctagonParams params;
  Multiloop multiloop;
  int depth = 0;
};

/// Finitely many pairwise disjoint weighted geodesics of H^2.
class FiniteMeasuredLamination {
 public:
  FiniteMeasuredLamination() = default;

  /// Merges equal leaves (weights add) and rejects transversal crossings.
  explicit FiniteMeasuredLamination(std::vector<Leaf> leaves, double tol = 1e-9) {
    std::vector<std::pair<std::pair<double, double>, Leaf>> keyed;
    for (auto& l : leaves) keyed.emplace_back(detail::endpoint_key(l.geodesic), std::move(l));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      if (a.first.first != b.first.first) return a.first.first < b.first.first;
      return a.first.second > b.first.second;
    });
    std::vector<std::pair<double, double>> keys;
    for (auto& [key, leaf] : keyed) {
      bool merged = false;
      for (std::size_t j = keys.size(); j-- > 0;) {
        if (key.first - keys[j].first > tol) break;
        if (std::abs(key.second - keys[j].second) <= tol) {
          leaves_[j].weight += leaf.weight;
          merged = true;
          break;
        }
      }
      if (!merged) {
        keys.push_back(key);
        leaves_.push_back(std::move(leaf));
      }
    }
    check_laminar(keys, tol);
  }

  const std::vector<Leaf>& leaves() const { return leaves_; }
  std::size_t size() const { return leaves_.size(); }
  bool empty() const { return leaves_.empty(); }

  const std::optional<LaminationProvenance>& provenance() const { return provenance_; }
  void set_provenance(LaminationProvenance p) { provenance_ = std::move(p); }

 private:
  /// Boundary-angle intervals must be nested or disjoint; a stack scan over
  /// intervals sorted by (lo asc, hi desc) finds any interleaving pair. The
  /// stack holds a nested chain, so comparing with its top suffices.
  void check_laminar(const std::vector<std::pair<double, double>>& keys, double tol) const {
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto& [lo, hi] = keys[i];
      while (!stack.empty() && keys[stack.back()].second <= lo + tol) stack.pop_back();
      if (!stack.empty() && hi > keys[stack.back()].second + tol) {
        // Interleaved endpoints; confirm with the exact relation test.
        if (crosses(leaves_[stack.back()].geodesic, leaves_[i].geodesic, tol)) {
          throw Error(Errc::CrossingDetected, "lamination leaves cross");
        }
      }
      stack.push_back(i);
    }
  }

  std::vector<Leaf> leaves_;
  std::optional<LaminationProvenance> provenance_;
};

/// Union of the depth-limited lifts of every loop, with inherited weights.
inline FiniteMeasuredLamination lift_multiloop(const FuchsianSurface& s, const Multiloop& m, int depth) {
  if (depth > kMaxDepth) throw Error(Errc::DepthTooLarge, "depth above 6");
  check_multiloop_entries(m);
  std::vector<Leaf> leaves;
  for (std::size_t i = 0; i < m.loops.size(); ++i) {
    for (auto& g : lift_loop(s, m.loops[i].word, depth)) {
      leaves.push_back({g, m.loops[i].weight, static_cast<int>(i)});
    }
  }
  FiniteMeasuredLamination lam(std::move(leaves));
  lam.set_provenance({s.params(), m, depth});
  return lam;
}

inline FiniteMeasuredLamination apply(const Moebius& g, const FiniteMeasuredLamination& lam) {
  std::vector<Leaf> leaves;
  for (const auto& l : lam.leaves()) leaves.push_back({apply(g, l.geodesic), l.weight, l.source});
  return FiniteMeasuredLamination(std::move(leaves));
}

/// Leaves meeting the closed segment X (crossing it or containing it).
inline FiniteMeasuredLamination intersect(const FiniteMeasuredLamination& lam, const SegmentH2& x,
                                          double tol = 1e-12) {
  std::vector<Leaf> out;
  GeodesicH2 carrier = x.carrier();
  for (const auto& l : lam.leaves()) {
    if (same_geodesic(l.geodesic, carrier)) {
      out.push_back(l);
      continue;
    }
    auto s = x.carrier_crossing(l.geodesic);
    if (s && *s >= -tol && *s <= x.length() + tol) out.push_back(l);
  }
  return FiniteMeasuredLamination(std::move(out));
}

/// One transversal crossing of a segment by a leaf.
struct LeafCrossing {
  double s;           // arclength from the segment start
  std::size_t leaf;   // index into the lamination
  double angle;       // crossing angle in [0, pi/2]
};

/// Leaves crossing the open segment, sorted by arclength. Throws
/// EndpointOnLeaf when a leaf passes within tol of an endpoint or contains
/// the segment.
inline std::vector<LeafCrossing> crossings(const FiniteMeasuredLamination& lam, const SegmentH2& x,
                                           double tol = 1e-9) {
  std::vector<LeafCrossing> out;
  GeodesicH2 carrier = x.carrier();
  const double len = x.length();
  auto on_leaf = [] { throw Error(Errc::EndpointOnLeaf, "segment endpoint lies on a leaf; perturb and retry"); };
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const GeodesicH2& g = lam.leaves()[i].geodesic;
    auto s = x.carrier_crossing(g, 1e-14);
    if (!s) {
      // A leaf through a point of the carrier crosses it or is the carrier.
      if (same_geodesic(g, carrier, 1e-12)) on_leaf();
      continue;
    }
    double angle = x.crossing_angle(g);
    // Distance from an endpoint at carrier offset h: sinh d = sinh|h| sin(angle).
    auto dist = [&](double h) { return std::asinh(std::sinh(std::abs(h)) * std::sin(angle)); };
    if (dist(*s) < tol || dist(*s - len) < tol) on_leaf();
    if (*s <= 0.0 || *s >= len) continue;
    out.push_back({*s, i, angle});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.s < b.s; });
  return out;
}

/// Sum of the weights of leaves crossed by the arc.
inline Weight transversal_measure(const FiniteMeasuredLamination& lam, const SegmentH2& arc) {
  Weight total;
  for (const auto& c : crossings(lam, arc)) total += lam.leaves()[c.leaf].weight;
  return total;
}

/// Largest crossing angle between l and a leaf; 0 when nothing crosses.
inline double angle_to(const FiniteMeasuredLamination& lam, const GeodesicH2& l) {
  double best = 0.0;
  for (const auto& leaf : lam.leaves()) {
    if (relation(leaf.geodesic, l) == GeodesicRelation::Crossing) {
      best = std::max(best, angle_between(leaf.geodesic, l));
    }
  }
  return best;
}

/// Total weight as a double.
inline double total_mass(const FiniteMeasuredLamination& lam) {
  double m = 0.0;
  for (const auto& l : lam.leaves()) m += l.weight.value();
  return m;
}

}  // namespace graftlab
