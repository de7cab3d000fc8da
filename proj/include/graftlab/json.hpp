#pragma once

#include "graftlab/bending.hpp"
#include "graftlab/grafting.hpp"
#include "graftlab/lamination.hpp"
#include "graftlab/traintrack.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace graftlab::io {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "graftlab/1";

[[noreturn]] inline void parse_error(const std::string& what) { throw Error(Errc::ParseError, what); }

/// Wraps a payload with the schema tag and a kind.
inline Json document(const std::string& kind, Json body) {
  Json j = Json::object();
  j["schema"] = kSchema;
  j["kind"] = kind;
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

/// Accepts a bare payload or a document of the given kind.
inline void check_document(const Json& j, const std::string& kind) {
  if (!j.is_object() || !j.contains("schema")) return;
  if (j["schema"] != kSchema) parse_error("unsupported schema " + j["schema"].dump());
  if (j.contains("kind") && j["kind"] != kind) parse_error("expected a " + kind + " document");
}

// ---------------------------------------------------------------------------
// Numbers and points

inline Json encode(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex decode_complex(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_error("complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

/// Infinity is the string "inf".
inline Json encode(const SpherePoint& p) { return p.is_infinity() ? Json("inf") : encode(p.value()); }

inline SpherePoint decode_sphere_point(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") parse_error("the only named point is \"inf\"");
    return SpherePoint::infinity();
  }
  return decode_complex(j);
}

/// Missing entries default to the identity's.
inline Json encode(const Moebius& g) {
  return {{"a", encode(g.a())}, {"b", encode(g.b())}, {"c", encode(g.c())}, {"d", encode(g.d())}};
}

inline Moebius decode_moebius(const Json& j) {
  if (!j.is_object()) parse_error("a transform is an object with entries a, b, c, d");
  auto entry = [&](const char* k, Complex dflt) { return j.contains(k) ? decode_complex(j[k]) : dflt; };
  try {
    return Moebius(entry("a", 1.0), entry("b", 0.0), entry("c", 0.0), entry("d", 1.0));
  } catch (const Error& e) {
    parse_error(std::string("bad transform: ") + e.what());
  }
}

inline Json encode(const PointH2& p) { return Json::array({p.x, p.y}); }

inline PointH2 decode_point_h2(const Json& j) {
  Complex z = decode_complex(j);
  PointH2 p{z.real(), z.imag()};
  if (!is_valid(p)) parse_error("points of H^2 need positive imaginary part");
  return p;
}

inline Json encode(const PointH3& p) { return {{"z", encode(p.z)}, {"t", p.t}}; }

inline PointH3 decode_point_h3(const Json& j) {
  if (!j.is_object() || !j.contains("z") || !j.contains("t")) parse_error("H^3 points are {z, t}");
  PointH3 p{decode_complex(j["z"]), j["t"].get<double>()};
  if (!is_valid(p)) parse_error("H^3 points need positive height");
  return p;
}

inline Json encode(const GeodesicH2& g) { return Json::array({encode(g.from), encode(g.to)}); }

inline GeodesicH2 decode_geodesic(const Json& j) {
  if (!j.is_array() || j.size() != 2) parse_error("geodesics are [e1, e2]");
  try {
    return {decode_sphere_point(j[0]), decode_sphere_point(j[1])};
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    parse_error(std::string("bad geodesic: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Words, weights

inline Json encode(const GroupWord& w) { return w.letters(); }

/// Signed letter list, or the text form ("a1 b1^-1").
inline GroupWord decode_word(const Json& j) {
  if (j.is_string()) {
    try {
      return GroupWord::parse(j.get<std::string>());
    } catch (const Error& e) {
      parse_error(e.what());
    }
  }
  if (!j.is_array()) parse_error("words are signed letter lists");
  std::vector<int> letters;
  for (const auto& l : j) {
    if (!l.is_number_integer()) parse_error("word letters are integers");
    int v = l.get<int>();
    if (v == 0 || std::abs(v) > 4) parse_error("word letters lie in +-1..+-4");
    letters.push_back(v);
  }
  return GroupWord(letters);
}

/// Exact weights as {"pi": [num, den]}, floats as plain numbers.
inline Json encode(const Weight& w) {
  if (!w.is_exact()) return w.value();
  auto r = w.pi_coeff();
  return {{"pi", Json::array({r.numerator(), r.denominator()})}};
}

inline Weight decode_weight(const Json& j) {
  if (j.is_number()) return Weight(j.get<double>());
  if (j.is_object() && j.contains("pi") && j["pi"].is_array() && j["pi"].size() == 2) {
    auto den = j["pi"][1].get<std::int64_t>();
    if (den == 0) parse_error("zero denominator");
    return Weight::pi_multiple(j["pi"][0].get<std::int64_t>(), den);
  }
  parse_error("weights are numbers or {\"pi\": [num, den]}");
}

/// Tagged "rational-pi" when every entry is exact, else "float".
inline Json encode(const WeightVector& w) {
  bool exact = std::all_of(w.begin(), w.end(), [](const Weight& x) { return x.is_exact(); });
  Json values = Json::array();
  for (const auto& x : w) {
    if (exact) {
      values.push_back(Json::array({x.pi_coeff().numerator(), x.pi_coeff().denominator()}));
    } else {
      values.push_back(x.value());
    }
  }
  return {{"kind", exact ? "rational-pi" : "float"}, {"values", values}};
}

inline WeightVector decode_weight_vector(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("values")) parse_error("weight vectors are {kind, values}");
  WeightVector out;
  const std::string kind = j["kind"].get<std::string>();
  for (const auto& v : j["values"]) {
    if (kind == "rational-pi") {
      if (!v.is_array() || v.size() != 2 || v[1].get<std::int64_t>() == 0) parse_error("rational entries are [num, den]");
      out.push_back(Weight::pi_multiple(v[0].get<std::int64_t>(), v[1].get<std::int64_t>()));
    } else if (kind == "float") {
      out.push_back(Weight(v.get<double>()));
    } else {
      parse_error("weight vector kind must be rational-pi or float");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Surfaces, laminations, multiloops

inline Json encode(const FuchsianSurface& s) {
  Json gens = Json::array();
  for (const auto& g : s.generators()) gens.push_back(encode(g));
  return {{"params", s.params().twist}, {"generators", gens}};
}

/// Rebuilds from the parameters; listed generators must agree with them.
inline FuchsianSurface decode_surface(const Json& j) {
  OctagonParams p;
  if (j.contains("params")) {
    const auto& a = j["params"];
    if (!a.is_array() || a.size() != 5) parse_error("surface params are five twists");
    for (std::size_t k = 0; k < 5; ++k) p.twist[k] = a[k].get<double>();
  }
  FuchsianSurface s = [&] {
    try {
      return build_octagon(p);
    } catch (const Error& e) {
      parse_error(std::string("bad surface: ") + e.what());
    }
  }();
  if (j.contains("generators")) {
    const auto& g = j["generators"];
    if (!g.is_array() || g.size() != 4) parse_error("surfaces list four generators");
    for (std::size_t k = 0; k < 4; ++k) {
      if (!approx_equal(decode_moebius(g[k]), s.generators()[k], 1e-8)) {
        parse_error("listed generators disagree with the params");
      }
    }
  }
  return s;
}

inline Json encode(const FiniteMeasuredLamination& lam) {
  Json out = Json::array();
  for (const auto& l : lam.leaves()) out.push_back({{"endpoints", encode(l.geodesic)}, {"weight", encode(l.weight)}});
  return out;
}

inline FiniteMeasuredLamination decode_lamination(const Json& j) {
  if (!j.is_array()) parse_error("laminations are lists of {endpoints, weight}");
  std::vector<Leaf> leaves;
  for (const auto& e : j) leaves.push_back({decode_geodesic(e.at("endpoints")), decode_weight(e.at("weight")), -1});
  return FiniteMeasuredLamination(std::move(leaves));
}

inline Json encode(const Multiloop& m) {
  Json out = Json::array();
  for (const auto& e : m.loops) out.push_back({{"word", encode(e.word)}, {"weight", encode(e.weight)}});
  return out;
}

inline Multiloop decode_multiloop(const Json& j) {
  const Json& list = j.is_object() && j.contains("multiloop") ? j["multiloop"] : j;
  if (!list.is_array()) parse_error("multiloops are lists of {word, weight}");
  Multiloop m;
  for (const auto& e : list) {
    if (!e.contains("word") || !e.contains("weight")) parse_error("multiloop entries need word and weight");
    m.loops.push_back({decode_word(e["word"]), decode_weight(e["weight"])});
  }
  return m;
}

/// Graft input: list of {word, count}; count defaults to 1.
inline GraftMultiloop decode_graft_multiloop(const Json& j) {
  const Json& list = j.is_object() && j.contains("multiloop") ? j["multiloop"] : j;
  if (!list.is_array()) parse_error("graft multiloops are lists of {word, count}");
  GraftMultiloop m;
  for (const auto& e : list) {
    if (!e.contains("word")) parse_error("graft entries need a word");
    m.push_back({decode_word(e["word"]), e.value("count", std::int64_t{1})});
  }
  return m;
}

inline Json encode(const Representation& rho) {
  Json out = Json::array();
  for (const auto& g : rho.generators) out.push_back(encode(g));
  return out;
}

// ---------------------------------------------------------------------------
// Projective structures

inline Json encode(const ProjectiveStructureDesc& c) {
  return document("structure", {{"surface", encode(c.surface)},
                                {"multiloop", encode(c.lamination)},
                                {"orientation", c.orientation},
                                {"depth", c.depth},
                                {"basepoint", encode(c.basepoint)},
                                {"holonomy", encode(c.holonomy)}});
}

/// Recomputes the holonomy from the coordinates; a listed holonomy is
/// informational.
inline ProjectiveStructureDesc decode_structure(const Json& j) {
  check_document(j, "structure");
  FuchsianSurface s = decode_surface(j.value("surface", Json::object()));
  Multiloop m = j.contains("multiloop") ? decode_multiloop(j["multiloop"]) : Multiloop{};
  int depth = j.value("depth", 4);
  int orientation = j.value("orientation", 1);
  PointH2 base = j.contains("basepoint") ? decode_point_h2(j["basepoint"]) : PointH2{0.0, 1.0};
  return make_structure(s, std::move(m), depth, orientation, base);
}

// ---------------------------------------------------------------------------
// Train tracks

inline Json encode(const BranchEnd& e) { return Json::array({e.branch, e.side}); }

inline BranchEnd decode_branch_end(const Json& j) {
  if (!j.is_array() || j.size() != 2) parse_error("branch ends are [branch, side]");
  return {j[0].get<std::size_t>(), j[1].get<int>()};
}

inline Json encode_points(const std::vector<PointH2>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(encode(p));
  return out;
}

inline std::vector<PointH2> decode_points(const Json& j) {
  std::vector<PointH2> out;
  for (const auto& p : j) out.push_back(decode_point_h2(p));
  return out;
}

inline Json encode(const TrainTrack& t) {
  Json triples = Json::array(), pairs = Json::array();
  for (const auto& s : t.triples()) triples.push_back({encode(s.big), encode(s.small1), encode(s.small2)});
  for (const auto& p : t.pairs()) pairs.push_back({encode(p.first), encode(p.second)});
  Json body = {{"name", t.name()},
               {"branches", t.branch_count()},
               {"switches", {{"triples", triples}, {"pairs", pairs}}}};
  if (t.embedding()) {
    Json emb = Json::array();
    for (const auto& q : *t.embedding()) {
      Json ties = Json::array();
      for (const auto& tie : q.ties) ties.push_back(encode_points(tie));
      emb.push_back({{"rails", {encode_points(q.rails[0]), encode_points(q.rails[1])}},
                     {"ties", ties},
                     {"tie_index", q.tie_index}});
    }
    body["embedding"] = emb;
  }
  return document("track", body);
}

inline TrainTrack decode_track(const Json& j) {
  check_document(j, "track");
  if (!j.contains("branches") || !j.contains("switches")) parse_error("tracks need branches and switches");
  std::vector<TripleSwitch> triples;
  std::vector<PairSwitch> pairs;
  for (const auto& s : j["switches"].value("triples", Json::array())) {
    if (s.size() != 3) parse_error("triple switches list three ends");
    triples.push_back({decode_branch_end(s[0]), decode_branch_end(s[1]), decode_branch_end(s[2])});
  }
  for (const auto& s : j["switches"].value("pairs", Json::array())) {
    if (s.size() != 2) parse_error("pair switches list two ends");
    pairs.push_back({decode_branch_end(s[0]), decode_branch_end(s[1])});
  }
  TrainTrack t(j.value("name", std::string("track")), j["branches"].get<std::size_t>(), triples, pairs);
  if (j.contains("embedding")) {
    std::vector<BranchQuadrangle> emb;
    for (const auto& q : j["embedding"]) {
      BranchQuadrangle b;
      b.rails = {decode_points(q.at("rails").at(0)), decode_points(q.at("rails").at(1))};
      for (const auto& tie : q.at("ties")) b.ties.push_back(decode_points(tie));
      b.tie_index = q.at("tie_index").get<std::vector<std::size_t>>();
      emb.push_back(std::move(b));
    }
    t.set_embedding(std::move(emb));
  }
  return t;
}

inline Json encode(const GeometryAudit& a, double epsilon) {
  return {{"epsilon", epsilon},
          {"max_tie_length", a.max_tie_length},
          {"max_tie_curvature", a.max_tie_curvature},
          {"max_rail_curvature", a.max_rail_curvature},
          {"max_angle_deviation", a.max_angle_deviation},
          {"min_rail_length", a.min_rail_length},
          {"slim", a.slim},
          {"straight", a.straight},
          {"pass", a.pass}};
}

// ---------------------------------------------------------------------------
// Bent polylines

inline Json encode(const BentPolyline& p) {
  Json pts = Json::array(), cr = Json::array();
  for (const auto& x : p.points) pts.push_back(encode(x));
  for (const auto& c : p.crossings) cr.push_back({{"vertex", c.vertex}, {"leaf", c.leaf}, {"angle", c.angle}});
  return document("polyline", {{"points", pts}, {"params", p.params}, {"crossings", cr}, {"step", p.step}});
}

inline Json encode(const BilipschitzReport& r) {
  return {{"max_ratio", r.max_ratio},
          {"max_tangent_angle", r.max_tangent_angle},
          {"max_dist_to_axis", r.max_dist_to_axis},
          {"projected_ratio", r.projected_ratio},
          {"axis", Json::array({encode(r.axis.from), encode(r.axis.to)})}};
}

/// Header x,y,t then one sample per row, round-trip precision.
inline std::string polyline_csv(const BentPolyline& p) {
  std::ostringstream os;
  os.precision(17);
  os << "x,y,t\n";
  for (const auto& x : p.points) os << x.z.real() << ',' << x.z.imag() << ',' << x.t << '\n';
  return os.str();
}

}  // namespace graftlab::io
