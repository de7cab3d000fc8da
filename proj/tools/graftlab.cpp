// graftlab: verification batteries, bending, grafting, developed figures,
// train tracks and the Thurston K metric from the command line.
//
// Exit status: 0 success, 1 a verification or comparison failed, 2 bad
// configuration or input, 3 I/O failure, 4 any other library error.
#include "graftlab/png.hpp"
#include "graftlab/recipes.hpp"
#include "graftlab/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace graftlab;
using io::Json;

namespace {

/// Everything a subcommand reads; filled from the config file, then flags.
struct RunConfig {
  std::string command;
  std::string out = "graftlab-out";
  std::uint64_t seed = 1;
  int depth = 4;
  std::map<std::string, double> tolerances;
  std::map<std::string, int> samples;
  std::vector<std::string> suites;
  std::string recipe = "hopf-development";
  Json figure = Json::object();
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IOError, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

/// Creates the directory; IOError when it cannot exist as a directory.
fs::path output_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(Errc::IOError, "cannot use output directory " + cfg.out);
  return dir;
}

std::string write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw Error(Errc::IOError, "cannot write " + path.string());
  return path.string();
}

std::string write_json(const fs::path& path, const Json& j) { return write_text(path, j.dump(2) + "\n"); }

/// SVG plus its PNG raster; returns both paths.
std::vector<std::string> write_figure(const fs::path& dir, const std::string& stem, const figure::Figure& f) {
  std::vector<std::string> paths;
  paths.push_back(write_text(dir / (stem + ".svg"), figure::to_svg(f)));
  fs::path png = dir / (stem + ".png");
  figure::write_png(figure::rasterize(f, figure::raster_scale(f)), png.string());
  paths.push_back(png.string());
  return paths;
}

/// Moves --tol.<name>[=v] and --samples.<name>[=v] out of argv; CLI11 has no
/// pattern options.
std::vector<std::string> take_dotted(std::vector<std::string> args, RunConfig& cfg) {
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    bool tol = a.rfind("--tol.", 0) == 0, smp = a.rfind("--samples.", 0) == 0;
    if (!tol && !smp) {
      rest.push_back(a);
      continue;
    }
    std::string body = a.substr(tol ? 6 : 10), value;
    auto eq = body.find('=');
    if (eq != std::string::npos) {
      value = body.substr(eq + 1);
      body = body.substr(0, eq);
    } else if (i + 1 < args.size()) {
      value = args[++i];
    } else {
      throw Error(Errc::ConfigError, a + " needs a value");
    }
    try {
      std::size_t used = 0;
      if (tol) {
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        cfg.tolerances[body] = v;
      } else {
        int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        cfg.samples[body] = v;
      }
    } catch (const std::logic_error&) {
      throw Error(Errc::ConfigError, "bad value '" + value + "' for " + a);
    }
  }
  return rest;
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  Json j = read_json(path);
  if (!j.is_object()) throw Error(Errc::ConfigError, "config file must hold an object");
  try {
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("depth")) cfg.depth = j["depth"].get<int>();
    if (j.contains("suites")) cfg.suites = j["suites"].get<std::vector<std::string>>();
    if (j.contains("recipe")) cfg.recipe = j["recipe"].get<std::string>();
    if (j.contains("figure")) cfg.figure = j["figure"];
    if (j.contains("tolerances")) {
      for (auto& [k, v] : j["tolerances"].items()) cfg.tolerances[k] = v.get<double>();
    }
    if (j.contains("samples")) {
      for (auto& [k, v] : j["samples"].items()) cfg.samples[k] = v.get<int>();
    }
  } catch (const Json::exception& e) {
    throw Error(Errc::ConfigError, path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Subcommands

int run_verify_command(const RunConfig& cfg) {
  verify::VerifyConfig vc;
  vc.seed = cfg.seed;
  vc.depth = cfg.depth;
  vc.tolerances = cfg.tolerances;
  vc.samples = cfg.samples;
  auto report = verify::run_verify(vc, cfg.suites);
  fs::path dir = output_dir(cfg);
  write_json(dir / "verify_report.json", verify::to_json(report, vc));
  write_json(dir / "verify_timing.json", verify::timing_json(report));
  for (const auto& s : report.suites) {
    std::cout << (s.pass() ? "PASS " : "FAIL ") << s.suite;
    if (!s.error.empty()) std::cout << " (error: " << s.error << ')';
    std::cout << '\n';
    for (const auto& c : s.checks) {
      if (!c.pass) std::cout << "  " << c.name << ": " << c.measured << ' ' << to_string(c.relation) << ' ' << c.bound << " fails\n";
    }
  }
  std::cout << "report: " << (dir / "verify_report.json").string() << '\n';
  return report.pass() ? 0 : 1;
}

/// The written file paths.
std::vector<std::string> run_figure(const RunConfig& cfg) {
  auto f = recipes::make_figure(cfg.recipe, cfg.figure);
  return write_figure(output_dir(cfg), cfg.recipe, f);
}

struct BendOptions {
  std::string lamination_file;
  std::string preset = "fold";
  double weight = 3.0, angle = 0.1, span = 0.0;
  int steps = 400;
};

int run_bend(const RunConfig& cfg, const BendOptions& o) {
  FiniteMeasuredLamination lam;
  PointH2 base{0.0, 1.0};
  GeodesicH2 line = catalog::vertical_axis();
  std::string title;
  if (!o.lamination_file.empty()) {
    Json j = read_json(o.lamination_file);
    io::check_document(j, "lamination");
    lam = io::decode_lamination(j.is_object() ? j.at("leaves") : j);
    if (j.is_object() && j.contains("basepoint")) base = io::decode_point_h2(j["basepoint"]);
    if (j.is_object() && j.contains("line")) line = io::decode_geodesic(j["line"]);
    title = "bent geodesic, " + o.lamination_file;
  } else if (o.preset == "fold") {
    lam = catalog::fold_lamination(o.weight);
    base = catalog::kFoldBasepoint;
    title = "bent geodesic, fold";
  } else if (o.preset == "sweep") {
    lam = catalog::sweep_lamination(o.angle);
    title = "bent geodesic, sweep";
  } else {
    throw Error(Errc::ConfigError, "unknown bend preset " + o.preset);
  }
  double span = o.span > 0.0 ? o.span : (o.preset == "fold" && o.lamination_file.empty() ? 2.0 : 10.0);
  BendingMap b(lam, base);
  BentPolyline p = bend_geodesic(b, line, span, o.steps);
  auto report = bilipschitz_report(p);
  fs::path dir = output_dir(cfg);
  std::vector<std::string> paths{write_json(dir / "bend_polyline.json", io::encode(p)),
                                 write_text(dir / "bend_polyline.csv", io::polyline_csv(p))};
  for (auto& f : write_figure(dir, "bend_side", recipes::bent_side_view(p, line, base, title))) paths.push_back(f);
  Json rep = io::encode(report);
  rep["angle_to_lamination"] = angle_to(lam, line);
  rep["mass"] = total_mass(lam);
  paths.push_back(write_json(dir / "bend_report.json", io::document("bend-report", rep)));
  std::cout << "max bilipschitz ratio " << report.max_ratio << ", projected " << report.projected_ratio
            << ", max tangent angle " << report.max_tangent_angle << '\n';
  for (const auto& s : paths) std::cout << s << '\n';
  return 0;
}

struct GraftOptions {
  std::string structure_file, multiloop_file;
  std::vector<std::string> loops;  // "word[:count]"
};

int run_graft(const RunConfig& cfg, const GraftOptions& o) {
  FuchsianSurface s = build_octagon();
  ProjectiveStructureDesc before = o.structure_file.empty() ? fuchsian_structure(s, cfg.depth)
                                                            : io::decode_structure(read_json(o.structure_file));
  GraftMultiloop m;
  if (!o.multiloop_file.empty()) m = io::decode_graft_multiloop(read_json(o.multiloop_file));
  for (const auto& arg : o.loops) {
    auto colon = arg.rfind(':');
    std::int64_t count = 1;
    std::string word = arg;
    if (colon != std::string::npos) {
      word = arg.substr(0, colon);
      try {
        count = std::stoll(arg.substr(colon + 1));
      } catch (const std::logic_error&) {
        throw Error(Errc::ConfigError, "bad loop count in '" + arg + "'");
      }
    }
    m.push_back({GroupWord::parse(word), count});
  }
  if (m.empty()) throw Error(Errc::ConfigError, "graft needs --multiloop or --loop");
  ProjectiveStructureDesc after = graft(before, m);
  Json probes = Json::array();
  double worst = 0.0;
  for (const auto& w : canonical_loops()) {
    Moebius a = before.holonomy.evaluate(w), b = after.holonomy.evaluate(w);
    double gap = trace_gap(a, b);
    worst = std::max(worst, gap);
    probes.push_back({{"word", w.to_string()},
                      {"trace_before", io::encode(a.trace())},
                      {"trace_after", io::encode(b.trace())},
                      {"gap", gap}});
  }
  const double tol = cfg.tolerances.count("trace") ? cfg.tolerances.at("trace") : 1e-9;
  Json rep = io::document("graft-report", {{"probes", probes}, {"max_gap", worst}, {"bound", tol}, {"pass", worst < tol}});
  fs::path dir = output_dir(cfg);
  std::cout << write_json(dir / "graft_structure.json", io::encode(after)) << '\n'
            << write_json(dir / "graft_report.json", rep) << '\n'
            << "max trace gap " << worst << (worst < tol ? " (holonomy preserved)" : " (holonomy CHANGED)") << '\n';
  return worst < tol ? 0 : 1;
}

struct TrackOptions {
  std::string track = "dumbbell";
  std::string multiloop_file;
  double epsilon = 0.1;
};

int run_traintrack(const RunConfig& cfg, const TrackOptions& o) {
  FuchsianSurface s = build_octagon();
  TrainTrack t = catalog::shipped_track(o.track, s);
  Json rep = Json::object();
  if (t.embedding()) rep["audit"] = io::encode(geometry_audit(t, o.epsilon), o.epsilon);
  if (!t.transversals().empty()) {
    Multiloop m;
    if (!o.multiloop_file.empty()) {
      m = io::decode_multiloop(read_json(o.multiloop_file));
    } else {
      m.loops.push_back({GroupWord{1}, Weight::pi_multiple(1, 3)});
      if (o.track == "dumbbell") m.loops.push_back({GroupWord{3}, Weight::pi_multiple(1, 2)});
    }
    validate_multiloop(s, m);
    WeightVector w = branch_weights(t, lift_multiloop(s, m, 3));
    Json residuals = io::encode(switch_residuals(t, w));
    rep["multiloop"] = io::encode(m);
    rep["weights"] = io::encode(w);
    rep["switch_residuals"] = residuals;
    rep["carried"] = is_carried(t, w);
  }
  fs::path dir = output_dir(cfg);
  std::cout << write_json(dir / "traintrack.json", io::encode(t)) << '\n'
            << write_json(dir / "traintrack_report.json", io::document("traintrack-report", rep)) << '\n';
  if (rep.contains("audit")) std::cout << "geometry audit at " << o.epsilon << ": " << (rep["audit"]["pass"].get<bool>() ? "pass" : "fail") << '\n';
  if (rep.contains("carried")) std::cout << "carried: " << (rep["carried"].get<bool>() ? "yes" : "no") << '\n';
  return 0;
}

OctagonParams parse_params(const std::string& text) {
  OctagonParams p;
  if (text.empty()) return p;
  std::stringstream ss(text);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= 5) throw Error(Errc::ConfigError, "surfaces take five twist parameters");
    try {
      p.twist[k++] = std::stod(item);
    } catch (const std::logic_error&) {
      throw Error(Errc::ConfigError, "bad twist parameter '" + item + "'");
    }
  }
  if (k != 5) throw Error(Errc::ConfigError, "surfaces take five twist parameters");
  return p;
}

int run_k_metric(const RunConfig& cfg, const std::string& from, const std::string& to) {
  FuchsianSurface a = build_octagon(parse_params(from)), b = build_octagon(parse_params(to));
  const auto& loops = canonical_loops();
  Json per = Json::array();
  for (const auto& w : loops) {
    per.push_back({{"word", w.to_string()}, {"length_from", word_length(a, w)}, {"length_to", word_length(b, w)}});
  }
  double kab = thurston_K(a, b, loops), kba = thurston_K(b, a, loops);
  Json rep = io::document("k-metric", {{"from", a.params().twist},
                                       {"to", b.params().twist},
                                       {"K_from_to", kab},
                                       {"K_to_from", kba},
                                       {"loops", per}});
  std::cout << write_json(output_dir(cfg) / "k_metric.json", rep) << '\n'
            << "K(from, to) = " << kab << "\nK(to, from) = " << kba << '\n';
  return 0;
}

int exit_code(Errc e) {
  switch (e) {
    case Errc::ConfigError:
    case Errc::UnknownRecipe:
    case Errc::ParseError: return 2;
    case Errc::IOError: return 3;
    default: return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    args = take_dotted(args, cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  auto flag_tolerances = cfg.tolerances;
  auto flag_samples = cfg.samples;

  CLI::App app{"graftlab: grafting, bending and train tracks on a genus-2 surface"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_file;
  app.add_option("--config", config_file, "JSON config file; flags win over it");
  auto* out_opt = app.add_option("--out", cfg.out, "output directory (GRAFTLAB_OUT overrides)");
  auto* seed_opt = app.add_option("--seed", cfg.seed, "random seed");
  auto* depth_opt = app.add_option("--depth", cfg.depth, "lift depth for holonomy (1..6)");

  auto* verify_cmd = app.add_subcommand("verify", "run acceptance suites; --tol.<name> and --samples.<name> override");
  auto* suite_opt = verify_cmd->add_option("--suite", cfg.suites, "suite name, repeatable; default all");
  bool list = false;
  verify_cmd->add_flag("--list", list, "list suite and tolerance names");

  BendOptions bend;
  auto* bend_cmd = app.add_subcommand("bend", "bend a geodesic; polyline JSON/CSV and side-view figure");
  bend_cmd->add_option("--lamination", bend.lamination_file, "lamination JSON (leaves, optional basepoint and line)");
  bend_cmd->add_option("--preset", bend.preset, "fold or sweep when no file is given");
  bend_cmd->add_option("--weight", bend.weight, "fold leaf weight");
  bend_cmd->add_option("--angle", bend.angle, "sweep crossing angle");
  bend_cmd->add_option("--span", bend.span, "half-length of the bent segment");
  bend_cmd->add_option("--steps", bend.steps, "uniform samples");

  GraftOptions gopt;
  auto* graft_cmd = app.add_subcommand("graft", "2pi-graft a structure; structure JSON and trace report");
  graft_cmd->add_option("--structure", gopt.structure_file, "input structure JSON; default the fuchsian structure");
  graft_cmd->add_option("--multiloop", gopt.multiloop_file, "graft multiloop JSON: [{word, count}]");
  graft_cmd->add_option("--loop", gopt.loops, "word[:count], repeatable, e.g. a1:2");

  auto* develop_cmd = app.add_subcommand("develop", "developed figure as SVG and PNG");
  auto* recipe_opt = develop_cmd->add_option("--recipe", cfg.recipe, "bent-geodesic, hopf-development, cylinder-foliation or traintrack-embedding");
  std::string figure_opts;
  auto* figure_opt = develop_cmd->add_option("--options", figure_opts, "recipe options as a JSON object");

  TrackOptions topt;
  auto* track_cmd = app.add_subcommand("traintrack", "track JSON, branch weights, switch residuals and audit");
  track_cmd->add_option("--track", topt.track, "dumbbell, single-geodesic or theta");
  track_cmd->add_option("--multiloop", topt.multiloop_file, "multiloop JSON to read weights from");
  track_cmd->add_option("--epsilon", topt.epsilon, "geometry audit threshold");

  std::string k_from, k_to;
  auto* k_cmd = app.add_subcommand("k-metric", "Thurston's asymmetric K between two octagon surfaces");
  k_cmd->add_option("--from", k_from, "five comma-separated twists");
  k_cmd->add_option("--to", k_to, "five comma-separated twists");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (!config_file.empty()) {
      RunConfig file_cfg = cfg;
      apply_config_file(config_file, file_cfg);
      if (!out_opt->count()) cfg.out = file_cfg.out;
      if (!seed_opt->count()) cfg.seed = file_cfg.seed;
      if (!depth_opt->count()) cfg.depth = file_cfg.depth;
      if (!suite_opt->count()) cfg.suites = file_cfg.suites;
      if (!recipe_opt->count()) cfg.recipe = file_cfg.recipe;
      cfg.figure = file_cfg.figure;
      cfg.tolerances = file_cfg.tolerances;
      cfg.samples = file_cfg.samples;
      for (const auto& [k, v] : flag_tolerances) cfg.tolerances[k] = v;
      for (const auto& [k, v] : flag_samples) cfg.samples[k] = v;
    }
    if (const char* env = std::getenv("GRAFTLAB_OUT"); env && *env) cfg.out = env;
    if (figure_opt->count()) {
      try {
        cfg.figure = Json::parse(figure_opts);
      } catch (const Json::parse_error& e) {
        throw Error(Errc::ConfigError, std::string("--options: ") + e.what());
      }
    }
    if (cfg.depth < 1 || cfg.depth > kMaxDepth) throw Error(Errc::ConfigError, "depth must lie in 1..6");

    if (verify_cmd->parsed()) {
      cfg.command = "verify";
      if (list) {
        for (const auto& s : verify::suites()) std::cout << "suite " << s.name << '\n';
        for (const auto& [k, v] : verify::default_tolerances()) std::cout << "tol." << k << " = " << v << '\n';
        for (const auto& [k, v] : verify::default_samples()) std::cout << "samples." << k << " = " << v << '\n';
        return 0;
      }
      return run_verify_command(cfg);
    }
    if (bend_cmd->parsed()) return run_bend(cfg, bend);
    if (graft_cmd->parsed()) return run_graft(cfg, gopt);
    if (develop_cmd->parsed()) {
      for (const auto& p : run_figure(cfg)) std::cout << p << '\n';
      return 0;
    }
    if (track_cmd->parsed()) return run_traintrack(cfg, topt);
    if (k_cmd->parsed()) return run_k_metric(cfg, k_from, k_to);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
  return 0;
}
