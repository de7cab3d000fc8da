#pragma once

#include "graftlab/catalog.hpp"
#include "graftlab/figure.hpp"
#include "graftlab/json.hpp"

namespace graftlab::recipes {

using figure::Figure;
using figure::Pt;
using figure::Rgb;

inline constexpr Rgb kInk{20, 20, 30};
inline constexpr Rgb kGrey{170, 170, 180};
inline constexpr Rgb kBlue{40, 90, 200};
inline constexpr Rgb kRed{200, 50, 40};
inline constexpr Rgb kGreen{30, 140, 80};
inline constexpr Rgb kShade{250, 200, 90};

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"bent-geodesic", "cylinder-foliation", "hopf-development",
                                          "traintrack-embedding"};
  return n;
}

namespace detail {

inline Pt pt(Complex z) { return {z.real(), z.imag()}; }

inline std::vector<Pt> circle_points(int n = 256) {
  std::vector<Pt> out;
  for (int k = 0; k <= n; ++k) out.push_back({std::cos(kTwoPi * k / n), std::sin(kTwoPi * k / n)});
  return out;
}

/// Poincare-disk samples of an H^2 geodesic.
inline std::vector<Pt> disk_geodesic(const GeodesicH2& l, int n = 96) {
  Moebius back = normalizer(l).inverse();
  std::vector<Pt> out;
  for (int k = 0; k <= n; ++k) {
    double s = -12.0 + 24.0 * k / n;
    out.push_back(pt(to_disk(act(back, PointH2{0.0, std::exp(s)}))));
  }
  return out;
}

inline std::vector<Pt> disk_points(const std::vector<PointH2>& pts) {
  std::vector<Pt> out;
  for (const auto& p : pts) out.push_back(pt(to_disk(p)));
  return out;
}

/// Upper half-space to the unit ball, i.e. (0, 0, 1) to the center.
inline std::array<double, 3> to_ball(const PointH3& p) {
  double x = p.x(), y = p.y(), t = p.t;
  double den = x * x + y * y + (t + 1.0) * (t + 1.0);
  return {2.0 * x / den, 2.0 * y / den, (x * x + y * y + t * t - 1.0) / den};
}

inline double num(const io::Json& o, const char* key, double dflt) {
  if (!o.contains(key)) return dflt;
  if (!o[key].is_number()) throw Error(Errc::ConfigError, std::string("figure option ") + key + " must be a number");
  return o[key].get<double>();
}

inline std::string str(const io::Json& o, const char* key, const std::string& dflt) {
  if (!o.contains(key)) return dflt;
  if (!o[key].is_string()) throw Error(Errc::ConfigError, std::string("figure option ") + key + " must be a string");
  return o[key].get<std::string>();
}

}  // namespace detail

/// Side view of a bent geodesic in the ball model, projected orthogonally
/// onto the plane through the center spanned by the chord and the point of
/// largest departure from it; the unbent line is drawn in grey.
inline Figure bent_side_view(const BentPolyline& p, const GeodesicH2& line, const PointH2& base, std::string title) {
  using V = std::array<double, 3>;
  std::vector<V> ball;
  for (const auto& q : p.points) ball.push_back(detail::to_ball(q));
  auto sub = [](V a, V c) { return V{a[0] - c[0], a[1] - c[1], a[2] - c[2]}; };
  auto dotp = [](V a, V c) { return a[0] * c[0] + a[1] * c[1] + a[2] * c[2]; };
  auto unit = [&](V a) {
    double n = std::sqrt(dotp(a, a));
    return n > 1e-12 ? V{a[0] / n, a[1] / n, a[2] / n} : V{0, 0, 0};
  };
  V u = unit(sub(ball.back(), ball.front()));
  if (dotp(u, u) == 0.0) u = {0, 0, 1};
  V v{0, 0, 0};
  double best = -1.0;
  for (const auto& q : ball) {
    V off = sub(q, ball.front());
    double along = dotp(off, u);
    V perp{off[0] - along * u[0], off[1] - along * u[1], off[2] - along * u[2]};
    if (dotp(perp, perp) > best) {
      best = dotp(perp, perp);
      v = perp;
    }
  }
  v = unit(v);
  // A straight image: any direction orthogonal to the chord will do.
  if (dotp(v, v) < 1e-24) {
    V e = std::abs(u[0]) < 0.9 ? V{1, 0, 0} : V{0, 1, 0};
    v = unit(sub(e, V{dotp(e, u) * u[0], dotp(e, u) * u[1], dotp(e, u) * u[2]}));
  }
  auto project = [&](const V& q) { return Pt{dotp(q, u), dotp(q, v)}; };

  Figure f;
  f.title = std::move(title);
  f.xmin = f.ymin = -1.05;
  f.xmax = f.ymax = 1.05;
  f.polyline(detail::circle_points(), kGrey, 1.0);
  std::vector<Pt> flat, bent;
  for (double t : p.params) flat.push_back(project(detail::to_ball(embed(point_on_geodesic(line, base, t)))));
  for (const auto& q : ball) bent.push_back(project(q));
  f.polyline(flat, kGrey, 1.5);
  f.polyline(bent, kBlue, 2.0);
  for (const auto& c : p.crossings) f.dot(bent[c.vertex], 3.0, kRed);
  return f;
}

/// Options: lamination ("fold" | "sweep"), weight (fold), angle (sweep),
/// span, steps.
inline Figure bent_geodesic(const io::Json& opts) {
  const std::string kind = detail::str(opts, "lamination", "fold");
  FiniteMeasuredLamination lam;
  PointH2 base{0.0, 1.0};
  if (kind == "fold") {
    lam = catalog::fold_lamination(detail::num(opts, "weight", 3.0));
    base = catalog::kFoldBasepoint;
  } else if (kind == "sweep") {
    lam = catalog::sweep_lamination(detail::num(opts, "angle", 0.1));
  } else {
    throw Error(Errc::ConfigError, "bent-geodesic lamination must be fold or sweep");
  }
  BendingMap b(lam, base);
  const GeodesicH2 line = catalog::vertical_axis();
  double span = detail::num(opts, "span", kind == "fold" ? 2.0 : 10.0);
  BentPolyline p = bend_geodesic(b, line, span, static_cast<int>(detail::num(opts, "steps", 400)));
  return bent_side_view(p, line, base, "bent geodesic, " + kind);
}

/// The Hopf torus of a loxodromic generator: leaves |w| = |k|^s of the
/// normalized picture mapped back, radial arcs, the fundamental annulus
/// shaded and the fixed points marked. Option: generator (transform JSON).
inline Figure hopf_development(const io::Json& opts) {
  Moebius g = opts.contains("generator") ? io::decode_moebius(opts["generator"]) : Moebius::diagonal(2.0);
  HopfTorusDesc h = hopf_torus(g);
  FixedPoints fp = fixed_points(g);
  // Frame with the repelling point at 0: g acts as w -> k w, |k| > 1.
  Moebius frame = sending_to_zero_infinity(fp.first, fp.second);
  Moebius back = frame.inverse();
  const Complex k = std::exp(h.modulus);
  const double lk = std::log(std::abs(k));
  auto develop = [&](Complex w) {
    SpherePoint z = back(SpherePoint(w));
    return z.is_infinity() ? Pt{NAN, NAN} : detail::pt(z.value());
  };
  // View: the images of the fundamental annulus' boundary circles.
  std::vector<Pt> inner, outer;
  for (int j = 0; j <= 256; ++j) {
    double a = kTwoPi * j / 256;
    inner.push_back(develop(std::polar(1.0, a)));
    outer.push_back(develop(std::polar(std::abs(k), a)));
  }
  Figure f;
  f.title = "Hopf torus development";
  double extent = 0.0;
  for (const auto& ring : {inner, outer}) {
    for (const auto& p : ring) {
      if (std::isfinite(p[0])) extent = std::max({extent, std::abs(p[0]), std::abs(p[1])});
    }
  }
  extent = std::min(std::max(extent, 1.0), 50.0) * 1.25;
  f.xmin = f.ymin = -extent;
  f.xmax = f.ymax = extent;
  bool finite_rings = std::all_of(inner.begin(), inner.end(), [](const Pt& p) { return std::isfinite(p[0]); }) &&
                      std::all_of(outer.begin(), outer.end(), [](const Pt& p) { return std::isfinite(p[0]); });
  if (finite_rings) f.polygon({outer, inner}, kShade, 0.55);
  for (int j = -8; j <= 12; ++j) {
    double r = std::exp(lk * j / 4.0);
    std::vector<Pt> leaf;
    for (int s = 0; s <= 256; ++s) leaf.push_back(develop(std::polar(r, kTwoPi * s / 256)));
    for (auto& piece : figure::clip_pieces(f, leaf)) f.polyline(std::move(piece), j % 4 == 0 ? kInk : kGrey, j % 4 == 0 ? 1.6 : 0.8);
  }
  for (int j = 0; j < 16; ++j) {
    double a = kTwoPi * j / 16;
    std::vector<Pt> ray;
    for (int s = 0; s <= 240; ++s) {
      double lr = lk * (-3.0 + 6.0 * s / 240);
      // Rotation along the axis turns the rays into spirals.
      ray.push_back(develop(std::exp(Complex(lr, a + std::arg(k) * lr / lk))));
    }
    for (auto& piece : figure::clip_pieces(f, ray)) f.polyline(std::move(piece), kBlue, 0.8);
  }
  for (const auto& p : {fp.first, fp.second}) {
    if (!p.is_infinity()) f.dot(detail::pt(p.value()), 4.0, kRed);
  }
  return f;
}

/// A round cylinder between two circles with leaves c_t, the orthogonal
/// arcs, the whole cylinder shaded as the inserted annulus and one
/// supported quadrangle on top. Options: minus/plus as [cx, cy, r], start,
/// width, turns.
inline Figure cylinder_foliation(const io::Json& opts) {
  auto circle = [&](const char* key, std::array<double, 3> dflt) {
    std::array<double, 3> c = dflt;
    if (opts.contains(key)) {
      if (!opts[key].is_array() || opts[key].size() != 3) throw Error(Errc::ConfigError, "circles are [cx, cy, r]");
      for (std::size_t i = 0; i < 3; ++i) c[i] = opts[key][i].get<double>();
    }
    return RoundCircle::circle(Complex(c[0], c[1]), c[2]);
  };
  RoundCylinder cyl(circle("minus", {0.35, 0.2, 0.55}), circle("plus", {0.0, 0.0, 2.0}));
  const auto turns = static_cast<std::int64_t>(detail::num(opts, "turns", 1));
  SupportedQuadrangle q = standard_quadrangle(cyl, detail::num(opts, "start", 0.3), detail::num(opts, "width", 1.2),
                                              0.4, -0.3, turns);
  Figure f;
  f.title = "round cylinder foliation";
  f.xmin = f.ymin = -2.3;
  f.xmax = f.ymax = 2.3;
  auto leaf = [&](double t) {
    std::vector<Pt> out;
    for (int s = 0; s <= 256; ++s) out.push_back(detail::pt(cyl.point(t, kTwoPi * s / 256).value()));
    return out;
  };
  f.polygon({leaf(1.0), leaf(-1.0)}, kShade, 0.35);
  for (int j = -10; j <= 10; ++j) f.polyline(leaf(j / 10.0), j % 5 == 0 ? kInk : kGrey, j % 5 == 0 ? 1.6 : 0.8);
  for (int j = 0; j < 24; ++j) {
    std::vector<Pt> arc;
    for (int s = 0; s <= 64; ++s) arc.push_back(detail::pt(cyl.point(-1.0 + 2.0 * s / 64, kTwoPi * j / 24).value()));
    f.polyline(arc, kGrey, 0.6);
  }
  // The quadrangle region: e4 up, across c_plus, e2 down, back along c_minus.
  std::vector<Pt> region;
  for (const auto& z : q.e4) region.push_back(detail::pt(z));
  auto frame_angle = [&](Complex z) { return std::arg(cyl.frame()(SpherePoint(z)).value()); };
  double a4 = frame_angle(q.e4.back()), a2 = frame_angle(q.e2.back());
  double top = wrap_angle(a2 - a4);
  if (top < 0) top += kTwoPi;
  for (int s = 1; s < 64; ++s) region.push_back(detail::pt(cyl.point(1.0, a4 + top * s / 64).value()));
  for (auto it = q.e2.rbegin(); it != q.e2.rend(); ++it) region.push_back(detail::pt(*it));
  double b4 = frame_angle(q.e4.front()), b2 = frame_angle(q.e2.front());
  double bottom = wrap_angle(b2 - b4);
  if (bottom < 0) bottom += kTwoPi;
  for (int s = 63; s > 0; --s) region.push_back(detail::pt(cyl.point(-1.0, b4 + bottom * s / 64).value()));
  f.polygon({region}, kGreen, 0.45, kGreen, 1.2);
  std::vector<Pt> e2, e4;
  for (const auto& z : q.e2) e2.push_back(detail::pt(z));
  for (const auto& z : q.e4) e4.push_back(detail::pt(z));
  f.polyline(e2, kRed, 2.0);
  f.polyline(e4, kRed, 2.0);
  return f;
}

/// A shipped track's rails and ties in the Poincare disk over lifts of the
/// loops it carries. Options: track ("single-geodesic" | "dumbbell").
inline Figure traintrack_embedding(const io::Json& opts) {
  FuchsianSurface s = build_octagon();
  const std::string name = detail::str(opts, "track", "single-geodesic");
  if (name != "single-geodesic" && name != "dumbbell") {
    throw Error(Errc::ConfigError, "traintrack-embedding track must be single-geodesic or dumbbell");
  }
  TrainTrack t = catalog::shipped_track(name, s);
  Figure f;
  f.title = "train track " + name;
  f.xmin = f.ymin = -1.02;
  f.xmax = f.ymax = 1.02;
  f.polyline(detail::circle_points(), kInk, 1.2);
  std::vector<GroupWord> loops{{1}};
  if (name == "dumbbell") loops.push_back({3});
  for (const auto& w : loops) {
    for (const auto& l : lift_loop(s, w, 2)) f.polyline(detail::disk_geodesic(l), kGrey, 0.7);
  }
  for (const auto& q : *t.embedding()) {
    for (const auto& rail : q.rails) f.polyline(detail::disk_points(rail), kBlue, 1.4);
    for (const auto& tie : q.ties) f.polyline(detail::disk_points(tie), kRed, 1.0);
  }
  for (const auto& tr : t.transversals()) {
    f.polyline(detail::disk_points({tr.start(), tr.end()}), kGreen, 1.6);
  }
  return f;
}

/// Throws UnknownRecipe for names outside names().
inline Figure make_figure(const std::string& recipe, const io::Json& opts = io::Json::object()) {
  if (recipe == "bent-geodesic") return bent_geodesic(opts);
  if (recipe == "hopf-development") return hopf_development(opts);
  if (recipe == "cylinder-foliation") return cylinder_foliation(opts);
  if (recipe == "traintrack-embedding") return traintrack_embedding(opts);
  throw Error(Errc::UnknownRecipe, "unknown figure recipe '" + recipe + "'");
}

}  // namespace graftlab::recipes
