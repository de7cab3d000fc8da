#pragma once

#include "graftlab/grafting.hpp"
#include "graftlab/traintrack.hpp"

#include <string>
#include <vector>

namespace graftlab::catalog {

// ---------------------------------------------------------------------------
// Bending configurations

/// Four nested leaves crossing the imaginary axis at i e^{+-1}, i e^{+-3},
/// each at angle theta to it, weight pi/2 apiece (total mass 2pi).
inline FiniteMeasuredLamination sweep_lamination(double theta) {
  if (!(theta > 0.0 && theta <= kPi / 2.0)) throw Error(Errc::InvalidParams, "sweep angle must lie in (0, pi/2]");
  double cot = 1.0 / std::tan(theta), r = std::sqrt(1.0 + cot * cot);
  std::vector<Leaf> leaves;
  for (double k : {-3.0, -1.0, 1.0, 3.0}) {
    double s = std::exp(k);
    leaves.push_back({GeodesicH2(s * (cot - r), s * (cot + r)), Weight::pi_multiple(1, 2)});
  }
  return FiniteMeasuredLamination(leaves);
}

inline const std::vector<double>& sweep_angles() {
  static const std::vector<double> a{0.1, 0.05, 0.01, 0.005};
  return a;
}

/// The bent line and basepoint shared by the sweep and fold: the imaginary
/// axis, bent from i.
inline GeodesicH2 vertical_axis() { return {SpherePoint(0.0), SpherePoint::infinity()}; }

/// One leaf crossing the imaginary axis orthogonally at i.
inline FiniteMeasuredLamination fold_lamination(double weight = 3.0) {
  return FiniteMeasuredLamination({{GeodesicH2(-1.0, 1.0), Weight(weight)}});
}

inline constexpr PointH2 kFoldBasepoint{0.0, 0.5};

// ---------------------------------------------------------------------------
// Multiloops and grafts

/// Bending multiloop used by the holonomy and equivariance batteries.
inline Multiloop bending_multiloop() {
  return {{{GroupWord{1}, Weight(1.1)}, {GroupWord{3}, Weight(2.3)}}};
}

struct NamedGraft {
  std::string name;
  GraftMultiloop loops;
};

/// Grafts on the fuchsian base, one to three loops of weight 2pi each.
inline std::vector<NamedGraft> holonomy_grafts() {
  return {
      {"a1", {{GroupWord{1}, 1}}},
      {"b2", {{GroupWord{4}, 1}}},
      {"a1+a2", {{GroupWord{1}, 1}, {GroupWord{3}, 1}}},
      {"a1+[a1,b1]", {{GroupWord{1}, 1}, {commutator(GroupWord{1}, GroupWord{2}), 1}}},
      {"a1+a2+[a1,b1]", {{GroupWord{1}, 1}, {GroupWord{3}, 1}, {commutator(GroupWord{1}, GroupWord{2}), 1}}},
  };
}

/// A pair (C, graft(C, M)) whose laminations are carried by a shipped track.
struct SwitchCase {
  std::string name;
  std::string track;  // "dumbbell" or "single-geodesic"
  Multiloop base;
  GraftMultiloop graft;
};

inline std::vector<SwitchCase> switch_cases() {
  Multiloop both{{{GroupWord{1}, Weight::pi_multiple(1, 3)}, {GroupWord{3}, Weight::pi_multiple(1, 2)}}};
  Multiloop one{{{GroupWord{1}, Weight::pi_multiple(1, 3)}}};
  return {
      {"dumbbell/a1", "dumbbell", both, {{GroupWord{1}, 1}}},
      {"dumbbell/a2", "dumbbell", both, {{GroupWord{3}, 1}}},
      {"dumbbell/a1+a2", "dumbbell", both, {{GroupWord{1}, 1}, {GroupWord{3}, 1}}},
      {"dumbbell/2a1+a2", "dumbbell", both, {{GroupWord{1}, 2}, {GroupWord{3}, 1}}},
      {"dumbbell/a1+3a2", "dumbbell", both, {{GroupWord{1}, 1}, {GroupWord{3}, 3}}},
      {"single/a1", "single-geodesic", one, {{GroupWord{1}, 1}}},
      {"single/2a1", "single-geodesic", one, {{GroupWord{1}, 2}}},
  };
}

inline TrainTrack shipped_track(const std::string& name, const FuchsianSurface& s) {
  if (name == "dumbbell") return dumbbell_track(s);
  if (name == "single-geodesic") return single_geodesic_track(s);
  if (name == "theta") return theta_track();
  throw Error(Errc::ConfigError, "unknown track " + name);
}

}  // namespace graftlab::catalog
