#pragma once

#include "graftlab/catalog.hpp"
#include "graftlab/json.hpp"
#include "graftlab/spherical.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace graftlab::verify {

enum class Relation { Less, LessEq, Greater, GreaterEq, Equal };

inline std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::LessEq: return "<=";
    case Relation::Greater: return ">";
    case Relation::GreaterEq: return ">=";
    case Relation::Equal: return "==";
  }
  return "?";
}

struct Check {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  Relation relation = Relation::Less;
  bool pass = false;
};

/// NaN measurements fail every relation.
inline Check make_check(std::string name, double measured, Relation rel, double bound) {
  bool pass = false;
  switch (rel) {
    case Relation::Less: pass = measured < bound; break;
    case Relation::LessEq: pass = measured <= bound; break;
    case Relation::Greater: pass = measured > bound; break;
    case Relation::GreaterEq: pass = measured >= bound; break;
    case Relation::Equal: pass = measured == bound; break;
  }
  return {std::move(name), measured, bound, rel, pass};
}

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  /// Set when the suite aborted; the suite then fails.
  std::string error;
  double wall_seconds = 0.0;

  bool pass() const {
    return error.empty() && !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
};

struct VerificationReport {
  std::vector<SuiteReport> suites;  // sorted by name
  bool pass() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.pass(); });
  }
};

/// Bounds that may be overridden by name; defaults are the acceptance values.
inline const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"trace", 1e-9},          {"bilipschitz", 1.02},     {"fold-ratio", 5.0},
      {"triangle-oracle", 1e-8}, {"fan-analytic", 1e-8},   {"fan-quadrature", 1e-6},
      {"gauss-bonnet", 1e-6},   {"winding", 1e-6},         {"equivariance", 1e-6},
      {"roundoff-floor", 1e-8}, {"invisibility", 1e-10},   {"triangle-slack", 1e-9},
      {"asymmetry", 1e-3},      {"audit-pass", 0.1},       {"audit-fail", 1e-4},
  };
  return t;
}

inline const std::map<std::string, int>& default_samples() {
  static const std::map<std::string, int> s{
      {"equivariance", 1000}, {"invisibility", 1000}, {"gauss-bonnet", 50},
      {"k-triples", 10},      {"quadrangle-pairs", 10},
  };
  return s;
}

struct VerifyConfig {
  std::uint64_t seed = 1;
  int depth = 4;
  std::map<std::string, double> tolerances;  // overrides
  std::map<std::string, int> samples;        // overrides

  /// Throws ConfigError on unknown names, negative bounds, bad depth.
  void validate() const {
    if (depth < 1 || depth > kMaxDepth) throw Error(Errc::ConfigError, "depth must lie in 1..6");
    for (const auto& [k, v] : tolerances) {
      if (!default_tolerances().count(k)) throw Error(Errc::ConfigError, "unknown tolerance " + k);
      if (!(v >= 0.0)) throw Error(Errc::ConfigError, "tolerance " + k + " must be nonnegative");
    }
    for (const auto& [k, v] : samples) {
      if (!default_samples().count(k)) throw Error(Errc::ConfigError, "unknown sample count " + k);
      if (v < 1) throw Error(Errc::ConfigError, "sample count " + k + " must be positive");
    }
  }

  double tol(const std::string& name) const {
    auto it = tolerances.find(name);
    return it != tolerances.end() ? it->second : default_tolerances().at(name);
  }
  int count(const std::string& name) const {
    auto it = samples.find(name);
    return it != samples.end() ? it->second : default_samples().at(name);
  }
};

namespace detail {

using Rng = std::mt19937_64;

/// Point uniform in hyperbolic-disk area scale up to `radius` around i.
inline PointH2 random_point(Rng& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return from_disk(std::polar(std::tanh(0.5 * radius * std::sqrt(u(rng))), kTwoPi * u(rng)));
}

/// Nonempty reduced word of length 1..max_len before reduction.
inline GroupWord random_word(Rng& rng, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len), letter(0, 7);
  static constexpr int kLetters[8] = {1, -1, 2, -2, 3, -3, 4, -4};
  for (;;) {
    std::vector<int> l;
    for (int n = len(rng); n > 0; --n) l.push_back(kLetters[letter(rng)]);
    GroupWord w(l);
    if (!w.empty()) return w;
  }
}

inline Moebius random_moebius(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Complex a(g(rng), g(rng)), b(g(rng), g(rng)), c(g(rng), g(rng)), d(g(rng), g(rng));
    if (std::abs(a * d - b * c) > 0.2) return Moebius(a, b, c, d);
  }
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace detail

/// The explicit slack in the right-triangle gap on lengths up to K:
/// BC >= AB - CA gives gap >= 1 - 2 CA / AB, and CA / AB is largest at
/// AB = K. Tends to 0 with the angle; exceeds 1 once sinh K sin B is large.
inline double triangle_slack(double angle_b, double max_len) {
  return 2.0 * std::asinh(std::sinh(max_len) * std::sin(angle_b)) / max_len;
}

// ---------------------------------------------------------------------------
// Suites

using SuiteFn = std::function<std::vector<Check>(const VerifyConfig&, detail::Rng&)>;

inline std::vector<Check> holonomy_invariance(const VerifyConfig& cfg, detail::Rng&) {
  std::vector<Check> out;
  FuchsianSurface s = build_octagon();
  const auto& probes = canonical_loops();
  ProjectiveStructureDesc base = fuchsian_structure(s, cfg.depth);
  ProjectiveStructureDesc bent = make_structure(s, catalog::bending_multiloop(), cfg.depth);
  for (const auto& g : catalog::holonomy_grafts()) {
    ProjectiveStructureDesc after = graft(base, g.loops);
    out.push_back(make_check("fuchsian+" + g.name, holonomy_gap(base.holonomy, after.holonomy, probes),
                             Relation::Less, cfg.tol("trace")));
    // The bent base carries a1 and a2; grafts crossing a2 are out of scope.
    if (g.name == "b2") continue;
    ProjectiveStructureDesc bent_after = graft(bent, g.loops);
    out.push_back(make_check("bent+" + g.name, holonomy_gap(bent.holonomy, bent_after.holonomy, probes),
                             Relation::Less, cfg.tol("trace")));
  }
  return out;
}

inline std::vector<Check> bilipschitz_bending(const VerifyConfig& cfg, detail::Rng&) {
  std::vector<Check> out;
  const GeodesicH2 line = catalog::vertical_axis();
  std::vector<BilipschitzReport> reports;
  for (double theta : catalog::sweep_angles()) {
    auto lam = catalog::sweep_lamination(theta);
    const std::string tag = "angle " + detail::fmt(theta);
    out.push_back(make_check(tag + " mass", total_mass(lam), Relation::LessEq, kTwoPi + 1e-12));
    out.push_back(make_check(tag + " crossing angle error", std::abs(angle_to(lam, line) - theta), Relation::Less, 1e-9));
    BendingMap b(lam, {0.0, 1.0});
    reports.push_back(bilipschitz_report(bend_geodesic(b, line, 10.0, 400)));
  }
  const auto& a = catalog::sweep_angles();
  for (std::size_t k = 1; k < reports.size(); ++k) {
    std::string step = detail::fmt(a[k - 1]) + "->" + detail::fmt(a[k]);
    out.push_back(make_check("ratio decrease " + step, reports[k].max_ratio - reports[k - 1].max_ratio,
                             Relation::Less, 0.0));
    out.push_back(make_check("tangent angle decrease " + step,
                             reports[k].max_tangent_angle - reports[k - 1].max_tangent_angle, Relation::Less, 0.0));
  }
  out.push_back(make_check("ratio at smallest angle", reports.back().max_ratio, Relation::Less, cfg.tol("bilipschitz")));
  out.push_back(make_check("projected ratio at smallest angle", reports.back().projected_ratio, Relation::Less,
                           cfg.tol("bilipschitz")));
  return out;
}

inline std::vector<Check> fold_counterexample(const VerifyConfig& cfg, detail::Rng&) {
  const double w = 3.0;
  BendingMap b(catalog::fold_lamination(w), catalog::kFoldBasepoint);
  auto r = bilipschitz_report(bend_geodesic(b, catalog::vertical_axis(), 2.0, 400));
  // Two geodesic rays meeting at interior angle pi - w: pairs at equal
  // distance from the vertex have ratio 1 / sin((pi - w) / 2), the supremum.
  double sup = 1.0 / std::sin((kPi - w) / 2.0);
  return {make_check("ratio", r.max_ratio, Relation::Greater, cfg.tol("fold-ratio")),
          make_check("ratio below two-ray supremum", r.max_ratio, Relation::LessEq, sup + 1e-9)};
}

inline std::vector<Check> right_triangle(const VerifyConfig& cfg, detail::Rng&) {
  std::vector<Check> out;
  const std::vector<double> angles{1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
  const std::vector<double> lengths{0.5, 1.0, 2.0, 5.0, 10.0};
  const double k_max = lengths.back();
  double oracle_residual = 0.0;
  for (double ang : angles) {
    double slack = triangle_slack(ang, k_max);
    double margin = std::numeric_limits<double>::infinity();
    for (double len : lengths) {
      auto r = right_triangle_gap(ang, len);
      // Coordinates: B = i, A at distance len along the ray at angle ang, C
      // the foot of A on the imaginary axis.
      PointH2 b{0.0, 1.0};
      PointH2 a = from_disk(std::tanh(0.5 * len) * std::polar(1.0, ang));
      PointH2 c{0.0, std::abs(a.z())};
      double bc = dist_h2(b, c), ca = dist_h2(c, a), ab = dist_h2(a, b);
      oracle_residual = std::max({oracle_residual, std::abs(r.leg_adjacent - bc), std::abs(r.leg_opposite - ca),
                                  std::abs(r.gap - (bc - ca) / ab)});
      margin = std::min(margin, r.gap - (1.0 - slack));
    }
    out.push_back(make_check("gap above 1 - slack at angle " + detail::fmt(ang), margin, Relation::Greater, 0.0));
  }
  out.push_back(make_check("oracle residual", oracle_residual, Relation::Less, cfg.tol("triangle-oracle")));
  for (std::size_t k = 1; k < angles.size(); ++k) {
    out.push_back(make_check("slack decreases " + detail::fmt(angles[k]) + "->" + detail::fmt(angles[k - 1]),
                             triangle_slack(angles[k - 1], k_max) - triangle_slack(angles[k], k_max), Relation::Less,
                             0.0));
  }
  out.push_back(make_check("slack at angle 1e-8", triangle_slack(1e-8, k_max), Relation::Less, 1e-3));
  return out;
}

inline std::vector<Check> fan_area_suite(const VerifyConfig& cfg, detail::Rng&) {
  std::vector<Check> out;
  for (double a : {0.1, 1.0, kPi, kTwoPi}) {
    out.push_back(make_check("analytic " + detail::fmt(a), std::abs(fan_area(a) - a), Relation::Less,
                             cfg.tol("fan-analytic")));
    out.push_back(make_check("quadrature " + detail::fmt(a), std::abs(fan_area_quadrature(a) - a), Relation::Less,
                             cfg.tol("fan-quadrature")));
  }
  return out;
}

inline std::vector<Check> gauss_bonnet_suite(const VerifyConfig& cfg, detail::Rng& rng) {
  double worst = 0.0;
  int n = cfg.count("gauss-bonnet");
  for (int i = 0; i < n; ++i) worst = std::max(worst, gauss_bonnet_residual(random_region(rng, 3 + i % 6)));
  return {make_check("max residual over " + std::to_string(n) + " regions", worst, Relation::Less,
                     cfg.tol("gauss-bonnet"))};
}

inline std::vector<Check> multiarc_integrality(const VerifyConfig& cfg, detail::Rng& rng) {
  std::vector<Check> out;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int n = cfg.count("quadrangle-pairs");
  double worst = 0.0;
  int wrong = 0, asym = 0;
  for (int i = 0; i < n; ++i) {
    const std::int64_t d = i % 6;
    // A random Moebius image of the annulus 1 < |z| < R.
    Moebius g = detail::random_moebius(rng);
    double big = 1.5 + 3.0 * u(rng);
    RoundCylinder c(apply(g, RoundCircle::circle(0.0, 1.0)), apply(g, RoundCircle::circle(0.0, big)));
    double start = kTwoPi * u(rng), width = 0.2 + 2.5 * u(rng);
    double drift4 = 2.0 * u(rng) - 1.0, drift2 = 2.0 * u(rng) - 1.0;
    auto q1 = standard_quadrangle(c, start, width, drift4, drift2, 0);
    auto q2 = standard_quadrangle(c, start, width, drift4, drift2, d);
    auto fwd = compare_quadrangles(q1, q2), back = compare_quadrangles(q2, q1);
    if (fwd.turns != d) ++wrong;
    if (back.turns != -fwd.turns) ++asym;
    worst = std::max(worst, std::abs(q2.winding_lift - q1.winding_lift - kTwoPi * static_cast<double>(d)));
  }
  out.push_back(make_check("pairs with wrong turn count", wrong, Relation::Equal, 0.0));
  out.push_back(make_check("pairs failing antisymmetry", asym, Relation::Equal, 0.0));
  out.push_back(make_check("max winding residual", worst, Relation::Less, cfg.tol("winding")));
  return out;
}

inline std::vector<Check> switch_assembly(const VerifyConfig& cfg, detail::Rng&) {
  std::vector<Check> out;
  FuchsianSurface s = build_octagon();
  const int lift_depth = 3;
  for (const auto& sc : catalog::switch_cases()) {
    TrainTrack t = catalog::shipped_track(sc.track, s);
    ProjectiveStructureDesc c = make_structure(s, sc.base, cfg.depth);
    ProjectiveStructureDesc g = graft(c, sc.graft);
    WeightVector w = branch_weights(t, lift_multiloop(s, c.lamination, lift_depth));
    WeightVector w2 = branch_weights(t, lift_multiloop(s, g.lamination, lift_depth));
    WeightVector diff = weight_difference(t, w2, w);
    // Arc counts of M: crossings of each branch tie by the lifts of M.
    int mismatched = 0;
    for (std::size_t j = 0; j < t.branch_count(); ++j) {
      std::int64_t arcs = 0;
      for (const auto& loop : sc.graft) {
        std::vector<Leaf> leaves;
        for (auto& l : lift_loop(s, loop.word, lift_depth)) leaves.push_back({l, Weight::two_pi(), -1});
        arcs += loop.count * static_cast<std::int64_t>(
                                 crossings(FiniteMeasuredLamination(std::move(leaves)), t.transversals()[j]).size());
      }
      if (!diff[j].is_exact() || !(diff[j] == Weight::two_pi(arcs))) ++mismatched;
    }
    int violated = 0;
    for (const auto& r : switch_residuals(t, diff)) violated += r.is_zero() ? 0 : 1;
    out.push_back(make_check(sc.name + " branches off 2pi arc counts", mismatched, Relation::Equal, 0.0));
    out.push_back(make_check(sc.name + " switch conditions violated", violated, Relation::Equal, 0.0));
  }
  return out;
}

inline std::vector<Check> bending_equivariance(const VerifyConfig& cfg, detail::Rng& rng) {
  FuchsianSurface s = build_octagon();
  const int n = cfg.count("equivariance");
  std::vector<GroupWord> words;
  std::vector<PointH2> points;
  for (int i = 0; i < n; ++i) {
    words.push_back(detail::random_word(rng, 3));
    points.push_back(detail::random_point(rng, 0.5));
  }
  std::vector<int> depths{2, 3, 4};
  if (std::find(depths.begin(), depths.end(), cfg.depth) == depths.end()) depths.push_back(cfg.depth);
  std::sort(depths.begin(), depths.end());
  std::map<int, double> defect;
  for (int d : depths) {
    BendingMap b(lift_multiloop(s, catalog::bending_multiloop(), d), {0.0, 1.0});
    Representation rho = bent_holonomy_unchecked(b, s);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, equivariance_defect(b, s, rho, {words[static_cast<std::size_t>(i)]},
                                                  {points[static_cast<std::size_t>(i)]}));
    }
    defect[d] = worst;
  }
  std::vector<Check> out;
  out.push_back(make_check("defect at depth " + std::to_string(cfg.depth), defect[cfg.depth], Relation::Less,
                           cfg.tol("equivariance")));
  // Once both depths sit at the rounding floor their order is noise.
  const double floor = cfg.tol("roundoff-floor");
  for (int d : {3, 4}) {
    out.push_back(make_check("defect at depth " + std::to_string(d) + " vs " + std::to_string(d - 1), defect[d],
                             Relation::LessEq, std::max(defect[d - 1], floor)));
  }
  return out;
}

inline std::vector<Check> two_pi_invisibility(const VerifyConfig& cfg, detail::Rng& rng) {
  FuchsianSurface s = build_octagon();
  Multiloop m{{{GroupWord{1}, Weight(1.1)}, {GroupWord{3}, Weight::pi_multiple(1, 3)}}};
  FiniteMeasuredLamination lam = lift_multiloop(s, m, 3);
  const PointH2 base{0.0, 1.0};
  BendingMap b(lam, base);
  const int n = cfg.count("invisibility");
  std::uniform_int_distribution<std::size_t> any_leaf(0, lam.size() - 1);
  double single = 0.0;
  int sampled = 0;
  std::vector<PointH2> pts;
  while (sampled < n) {
    PointH2 x = detail::random_point(rng, 2.0);
    std::vector<LeafCrossing> cr;
    try {
      cr = crossings(lam, SegmentH2(base, x));
    } catch (const Error& e) {
      if (e.code() != Errc::EndpointOnLeaf) throw;
      continue;
    }
    // Prefer a leaf separating x from the basepoint so the shift matters.
    std::size_t k = cr.empty() ? any_leaf(rng) : cr[std::uniform_int_distribution<std::size_t>(0, cr.size() - 1)(rng)].leaf;
    std::vector<Leaf> leaves = lam.leaves();
    leaves[k].weight += Weight::two_pi();
    BendingMap shifted(FiniteMeasuredLamination(std::move(leaves)), base);
    single = std::max(single, dist_h3(bend_point(b, x), bend_point(shifted, x)));
    pts.push_back(x);
    ++sampled;
  }
  std::vector<Leaf> all = lam.leaves();
  for (auto& l : all) l.weight += Weight::two_pi();
  BendingMap shifted_all(FiniteMeasuredLamination(std::move(all)), base);
  double every = 0.0;
  for (const auto& x : pts) every = std::max(every, dist_h3(bend_point(b, x), bend_point(shifted_all, x)));
  return {make_check("one leaf shifted", single, Relation::Less, cfg.tol("invisibility")),
          make_check("every leaf shifted", every, Relation::Less, cfg.tol("invisibility"))};
}

inline std::vector<Check> thurston_k(const VerifyConfig& cfg, detail::Rng& rng) {
  const auto& loops = canonical_loops();
  FuchsianSurface tau = build_octagon();
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  auto random_surface = [&] {
    OctagonParams p;
    for (auto& t : p.twist) t = u(rng);
    return build_octagon(p);
  };
  double min_slack = std::numeric_limits<double>::infinity(), asym = 0.0;
  int n = cfg.count("k-triples");
  for (int i = 0; i < n; ++i) {
    FuchsianSurface a = random_surface(), b = random_surface(), c = random_surface();
    double ab = thurston_K(a, b, loops), bc = thurston_K(b, c, loops), ac = thurston_K(a, c, loops);
    min_slack = std::min(min_slack, ab + bc - ac);
    asym = std::max(asym, std::abs(ab - thurston_K(b, a, loops)));
  }
  return {make_check("K(tau, tau)", std::abs(thurston_K(tau, tau, loops)), Relation::Equal, 0.0),
          make_check("min triangle slack", min_slack, Relation::GreaterEq, -cfg.tol("triangle-slack")),
          make_check("max asymmetry", asym, Relation::Greater, cfg.tol("asymmetry"))};
}

inline std::vector<Check> traintrack_geometry(const VerifyConfig& cfg, detail::Rng&) {
  FuchsianSurface s = build_octagon();
  TrainTrack t = single_geodesic_track(s);
  auto loose = geometry_audit(t, cfg.tol("audit-pass"));
  auto tight = geometry_audit(t, cfg.tol("audit-fail"));
  double shortest = word_length(s, {1});
  return {make_check("passes at loose epsilon", loose.pass ? 1.0 : 0.0, Relation::Equal, 1.0),
          make_check("fails at tight epsilon", tight.pass ? 1.0 : 0.0, Relation::Equal, 0.0),
          make_check("min rail length", loose.min_rail_length, Relation::GreaterEq, shortest / 3.0)};
}

struct Suite {
  std::string name;
  SuiteFn run;
};

/// All suites, sorted by name.
inline const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = [] {
    std::vector<Suite> v{
        {"holonomy-invariance", holonomy_invariance},
        {"bilipschitz-bending", bilipschitz_bending},
        {"fold-counterexample", fold_counterexample},
        {"right-triangle", right_triangle},
        {"fan-area", fan_area_suite},
        {"gauss-bonnet", gauss_bonnet_suite},
        {"multiarc-integrality", multiarc_integrality},
        {"switch-assembly", switch_assembly},
        {"bending-equivariance", bending_equivariance},
        {"2pi-invisibility", two_pi_invisibility},
        {"thurston-K", thurston_k},
        {"traintrack-geometry", traintrack_geometry},
    };
    std::sort(v.begin(), v.end(), [](const Suite& a, const Suite& b) { return a.name < b.name; });
    return v;
  }();
  return all;
}

/// Per-suite stream: the config seed mixed with the suite name, so adding or
/// selecting suites leaves the others' samples unchanged.
inline std::uint64_t suite_seed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : name) h = (h ^ c) * 1099511628211ull;
  return seed ^ h;
}

inline SuiteReport run_suite(const Suite& s, const VerifyConfig& cfg) {
  SuiteReport r;
  r.suite = s.name;
  r.seed = cfg.seed;
  detail::Rng rng(suite_seed(cfg.seed, s.name));
  auto t0 = std::chrono::steady_clock::now();
  try {
    r.checks = s.run(cfg, rng);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Runs the named suites (all when empty) in parallel. Throws ConfigError
/// on unknown names or an invalid config.
inline VerificationReport run_verify(const VerifyConfig& cfg, std::vector<std::string> names = {}) {
  cfg.validate();
  std::vector<const Suite*> chosen;
  for (const auto& s : suites()) {
    if (names.empty() || std::find(names.begin(), names.end(), s.name) != names.end()) chosen.push_back(&s);
  }
  for (const auto& n : names) {
    if (std::none_of(suites().begin(), suites().end(), [&](const Suite& s) { return s.name == n; })) {
      throw Error(Errc::ConfigError, "unknown suite " + n);
    }
  }
  std::vector<std::future<SuiteReport>> jobs;
  for (const Suite* s : chosen) jobs.push_back(std::async(std::launch::async, run_suite, std::cref(*s), std::cref(cfg)));
  VerificationReport out;
  for (auto& j : jobs) out.suites.push_back(j.get());
  return out;
}

// ---------------------------------------------------------------------------
// Serialization; wall times stay out of the report so equal configs give
// byte-identical files.

inline io::Json to_json(const VerificationReport& r, const VerifyConfig& cfg) {
  io::Json suites = io::Json::array();
  for (const auto& s : r.suites) {
    io::Json checks = io::Json::array();
    for (const auto& c : s.checks) {
      checks.push_back({{"name", c.name},
                        {"measured", c.measured},
                        {"bound", c.bound},
                        {"relation", to_string(c.relation)},
                        {"pass", c.pass}});
    }
    io::Json js = {{"suite", s.suite}, {"seed", s.seed}, {"pass", s.pass()}, {"checks", checks}};
    if (!s.error.empty()) js["error"] = s.error;
    suites.push_back(js);
  }
  return io::document("verification", {{"seed", cfg.seed},
                                       {"depth", cfg.depth},
                                       {"tolerance_overrides", cfg.tolerances},
                                       {"sample_overrides", cfg.samples},
                                       {"pass", r.pass()},
                                       {"suites", suites}});
}

inline io::Json timing_json(const VerificationReport& r) {
  io::Json t = io::Json::object();
  for (const auto& s : r.suites) t[s.suite] = s.wall_seconds;
  return io::document("timing", {{"wall_seconds", t}});
}

}  // namespace graftlab::verify
