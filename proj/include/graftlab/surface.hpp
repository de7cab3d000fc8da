#pragma once

#include "graftlab/error.hpp"
#include "graftlab/hyperbolic.hpp"
#include "graftlab/mobius.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace graftlab {

// ---------------------------------------------------------------------------
// Words in the generators a1, b1, a2, b2

/// Freely reduced word; letters are +-1..+-4 for a1, b1, a2, b2 and their
/// inverses.
class GroupWord {
 public:
  GroupWord() = default;
  GroupWord(std::initializer_list<int> letters) : GroupWord(std::vector<int>(letters)) {}
  explicit GroupWord(const std::vector<int>& letters) {
    for (int l : letters) push(l);
  }

  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  GroupWord inverse() const {
    GroupWord r;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(-*it);
    return r;
  }

  friend GroupWord operator*(const GroupWord& u, const GroupWord& v) {
    GroupWord r = u;
    for (int l : v.letters_) r.push(l);
    return r;
  }

  GroupWord power(int n) const {
    GroupWord base = n < 0 ? inverse() : *this, r;
    for (int i = 0; i < std::abs(n); ++i) r = r * base;
    return r;
  }

  /// Conjugate so that the first and last letters are not inverse.
  GroupWord cyclically_reduced() const {
    std::size_t lo = 0, hi = letters_.size();
    while (hi - lo >= 2 && letters_[lo] == -letters_[hi - 1]) {
      ++lo;
      --hi;
    }
    GroupWord r;
    r.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                      letters_.begin() + static_cast<std::ptrdiff_t>(hi));
    return r;
  }

  /// Lexicographically least rotation of the cyclic reduction of w or
  /// w^-1; equal for words that are conjugate or inverse-conjugate in the
  /// free group.
  GroupWord canonical_cyclic() const {
    GroupWord best;
    bool have = false;
    for (const GroupWord& base : {cyclically_reduced(), cyclically_reduced().inverse()}) {
      const auto& l = base.letters_;
      for (std::size_t k = 0; k < std::max<std::size_t>(l.size(), 1); ++k) {
        GroupWord rot;
        rot.letters_.reserve(l.size());
        for (std::size_t i = 0; i < l.size(); ++i) rot.letters_.push_back(l[(k + i) % l.size()]);
        if (!have || rot.letters_ < best.letters_) {
          best = rot;
          have = true;
        }
      }
    }
    return best;
  }

  /// True when the cyclic reduction is u^k for some k >= 2.
  bool is_proper_power() const {
    const auto& l = cyclically_reduced().letters_;
    const std::size_t n = l.size();
    for (std::size_t p = 1; p < n; ++p) {
      if (n % p) continue;
      bool periodic = true;
      for (std::size_t i = p; i < n && periodic; ++i) periodic = l[i] == l[i - p];
      if (periodic) return true;
    }
    return false;
  }

  friend bool operator==(const GroupWord& u, const GroupWord& v) { return u.letters_ == v.letters_; }
  friend bool operator<(const GroupWord& u, const GroupWord& v) { return u.letters_ < v.letters_; }

  /// "a1 b1^-1" style; the empty word prints as "1".
  std::string to_string() const {
    static const char* names[] = {"", "a1", "b1", "a2", "b2"};
    if (letters_.empty()) return "1";
    std::string s;
    for (int l : letters_) {
      if (!s.empty()) s += ' ';
      s += names[std::abs(l)];
      if (l < 0) s += "^-1";
    }
    return s;
  }

  /// Accepts "a1 b1^-1", "a1b1^-1", "a1 B1" (capital = inverse) and "1".
  static GroupWord parse(const std::string& text) {
    GroupWord w;
    std::size_t i = 0;
    auto fail = [&] { throw Error(Errc::ParseError, "bad group word '" + text + "'"); };
    while (i < text.size()) {
      char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '.' || c == '*') {
        ++i;
        continue;
      }
      if (c == '1' && text.find_first_not_of(" 1") == std::string::npos) return w;
      char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if ((lower != 'a' && lower != 'b') || i + 1 >= text.size()) fail();
      char digit = text[i + 1];
      if (digit != '1' && digit != '2') fail();
      int letter = (digit == '1' ? 0 : 2) + (lower == 'a' ? 1 : 2);
      bool inv = std::isupper(static_cast<unsigned char>(c));
      i += 2;
      if (text.compare(i, 3, "^-1") == 0) {
        inv = !inv;
        i += 3;
      } else if (i < text.size() && text[i] == '\'') {
        inv = !inv;
        ++i;
      }
      w.push(inv ? -letter : letter);
    }
    return w;
  }

 private:
  void push(int l) {
    if (l == 0 || std::abs(l) > 4) throw Error(Errc::ParseError, "generator index out of range");
    if (!letters_.empty() && letters_.back() == -l) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  std::vector<int> letters_;
};

inline GroupWord commutator(const GroupWord& u, const GroupWord& v) {
  return u * v * u.inverse() * v.inverse();
}

inline const GroupWord& relator_word() {
  static const GroupWord r = commutator({1}, {2}) * commutator({3}, {4});
  return r;
}

/// The 12 loops used for finite-set Thurston metric estimates and for
/// holonomy probes.
inline const std::vector<GroupWord>& canonical_loops() {
  static const std::vector<GroupWord> loops = {
      {1},     {2},     {3},      {4},     {1, 2},  {1, -2},
      {3, 4},  {3, -4}, commutator({1}, {2}), {1, 3}, {2, 4}, {1, 4},
  };
  return loops;
}

// ---------------------------------------------------------------------------
// Fuchsian genus-2 surfaces

/// Twist parameters applied to the regular octagon group, in order: along
/// a1 (b1 <- b1 T), along b1 (a1 <- a1 T), along a2, along b2, and along
/// the separating curve [a1,b1] (a2, b2 conjugated by T). Each twist fixes
/// the relator exactly, so the family stays Fuchsian.
struct OctagonParams {
  std::array<double, 5> twist{};
  /// Validity region: every |twist| at most this. Beyond it matrix growth
  /// pushes the relator defect toward the 1e-8 check.
  static constexpr double kMaxTwist = 3.0;
};

class FuchsianSurface {
 public:
  FuchsianSurface(OctagonParams params, std::array<Moebius, 4> generators)
      : params_(params), generators_(generators) {}

  const OctagonParams& params() const { return params_; }
  const std::array<Moebius, 4>& generators() const { return generators_; }

  Moebius letter(int l) const {
    const Moebius& g = generators_[static_cast<std::size_t>(std::abs(l) - 1)];
    return l > 0 ? g : g.inverse();
  }

  Moebius evaluate(const GroupWord& w) const {
    Moebius r;
    for (int l : w.letters()) r = r * letter(l);
    return r;
  }

  /// Distance of the relator image from the identity in PSL(2,C).
  double relator_defect() const { return evaluate(relator_word()).distance_to(Moebius::identity()); }

 private:
  OctagonParams params_;
  std::array<Moebius, 4> generators_;
};

namespace detail {

/// Side pairings of the regular octagon with angles pi/4 centered at i.
/// Pairing k sends side k+2 onto side k reversed; the generators are
/// a1 = P0, b1 = P1^-1, a2 = P4, b2 = P5^-1.
inline std::array<Moebius, 4> regular_octagon_generators() {
  const double cot = 1.0 / std::tan(kPi / 8.0);
  const double radius = std::acosh(cot * cot);
  const double disk_radius = std::tanh(0.5 * radius);
  std::array<PointH2, 8> v;
  for (int k = 0; k < 8; ++k) v[k] = from_disk(std::polar(disk_radius, kPi / 8.0 + k * kPi / 4.0));
  auto pairing = [&](int k) {
    SegmentH2 src(v[(k + 3) % 8], v[(k + 2) % 8]), dst(v[k], v[(k + 1) % 8]);
    return dst.frame().inverse() * src.frame();
  };
  auto positive_trace = [](Moebius g) {
    return g.trace().real() < 0 ? Moebius(-g.a(), -g.b(), -g.c(), -g.d()) : g;
  };
  return {positive_trace(pairing(0)), positive_trace(pairing(1).inverse()),
          positive_trace(pairing(4)), positive_trace(pairing(5).inverse())};
}

/// Real translation by s along the axis of g, commuting with g.
inline Moebius twist_along(const Moebius& g, double s) {
  return translation_along(axis(g), Complex(s, 0.0));
}

}  // namespace detail

inline FuchsianSurface build_octagon(OctagonParams params = {}) {
  for (double t : params.twist) {
    if (!std::isfinite(t) || std::abs(t) > OctagonParams::kMaxTwist) {
      throw Error(Errc::InvalidParams, "twist parameter outside [-3, 3]");
    }
  }
  auto g = detail::regular_octagon_generators();
  Moebius &a1 = g[0], &b1 = g[1], &a2 = g[2], &b2 = g[3];
  const auto& t = params.twist;
  if (t[0] != 0.0) b1 = b1 * detail::twist_along(a1, t[0]);
  if (t[1] != 0.0) a1 = a1 * detail::twist_along(b1, t[1]);
  if (t[2] != 0.0) b2 = b2 * detail::twist_along(a2, t[2]);
  if (t[3] != 0.0) a2 = a2 * detail::twist_along(b2, t[3]);
  if (t[4] != 0.0) {
    Moebius c = a1 * b1 * a1.inverse() * b1.inverse();
    Moebius s = detail::twist_along(c, t[4]);
    a2 = s * a2 * s.inverse();
    b2 = s * b2 * s.inverse();
  }
  FuchsianSurface surface(params, g);
  for (const Moebius& m : g) {
    if (m.max_imag() > 1e-10 || classify(m).kind != IsometryKind::Loxodromic) {
      throw Error(Errc::InvalidParams, "generator is not a real loxodromic");
    }
  }
  if (surface.relator_defect() > 1e-8) throw Error(Errc::InvalidParams, "relator check failed");
  return surface;
}

/// Hyperbolic length of the closed geodesic in the class of w. The word
/// is cyclically reduced first: same conjugacy class, shorter product.
inline double word_length(const FuchsianSurface& s, const GroupWord& w) {
  Moebius g = s.evaluate(w.cyclically_reduced());
  if (classify(g).kind != IsometryKind::Loxodromic) {
    throw Error(Errc::NotLoxodromic, "word " + w.to_string() + " is not loxodromic");
  }
  return 2.0 * std::acosh(std::abs(g.trace()) / 2.0);
}

/// max over loops of ln(length_tau / length_tau'): a finite-set lower
/// bound for Thurston's asymmetric metric.
inline double thurston_K(const FuchsianSurface& tau, const FuchsianSurface& tau_prime,
                         const std::vector<GroupWord>& loops) {
  if (loops.empty()) throw Error(Errc::EmptyLoopSet, "no loops");
  double k = -std::numeric_limits<double>::infinity();
  for (const auto& w : loops) k = std::max(k, std::log(word_length(tau, w) / word_length(tau_prime, w)));
  return k;
}

// ---------------------------------------------------------------------------
// Group elements and lifts

inline constexpr int kMaxDepth = 6;

struct GroupElement {
  GroupWord word;
  Moebius matrix;
};

/// All freely reduced words of length <= depth with their images, in
/// breadth-first order (shorter words first, then lexicographic by letter
/// order -1, 1, -2, 2, ...).
inline std::vector<GroupElement> enumerate_elements(const FuchsianSurface& s, int depth) {
  if (depth < 0) throw Error(Errc::InvalidParams, "negative depth");
  if (depth > kMaxDepth) throw Error(Errc::DepthTooLarge, "depth above 6");
  static constexpr int kLetters[] = {1, -1, 2, -2, 3, -3, 4, -4};
  std::vector<GroupElement> out{{GroupWord{}, Moebius::identity()}};
  std::size_t begin = 0;
  for (int d = 1; d <= depth; ++d) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int l : kLetters) {
        const auto& letters = out[i].word.letters();
        if (!letters.empty() && letters.back() == -l) continue;
        GroupElement e{out[i].word * GroupWord{l}, out[i].matrix * s.letter(l)};
        out.push_back(std::move(e));
      }
    }
    begin = end;
  }
  return out;
}

namespace detail {

/// Boundary angles of a geodesic as an ordered pair (lo, hi); infinity and
/// the far negative axis both map near pi.
inline std::pair<double, double> endpoint_key(const GeodesicH2& g) {
  auto ang = [](const SpherePoint& p) {
    double a = boundary_angle(p);
    return a < -kPi + 1e-12 ? kPi : a;
  };
  double a = ang(g.from), b = ang(g.to);
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

inline double circular_gap(double a, double b) { return std::abs(wrap_angle(a - b)); }

}  // namespace detail

/// Removes duplicates (unordered endpoints within tol in boundary angle)
/// and sorts by endpoint key.
inline std::vector<GeodesicH2> dedupe_geodesics(std::vector<GeodesicH2> geos, double tol = 1e-9) {
  std::vector<std::pair<std::pair<double, double>, GeodesicH2>> keyed;
  keyed.reserve(geos.size());
  for (auto& g : geos) keyed.emplace_back(detail::endpoint_key(g), g);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<GeodesicH2> out;
  std::vector<std::pair<double, double>> kept;
  for (const auto& [key, g] : keyed) {
    bool dup = false;
    for (std::size_t j = kept.size(); j-- > 0;) {
      if (key.first - kept[j].first > tol) break;
      if (detail::circular_gap(key.second, kept[j].second) <= tol) {
        dup = true;
        break;
      }
    }
    // Keys near the pi seam can also collide with the first kept entries.
    if (!dup && key.second > kPi - tol) {
      for (std::size_t j = 0; j < kept.size() && kept[j].first < -kPi + tol; ++j) {
        if (detail::circular_gap(key.first, kept[j].first) <= tol &&
            detail::circular_gap(key.second, kept[j].second) <= tol) {
          dup = true;
        }
      }
    }
    if (!dup) {
      kept.push_back(key);
      out.push_back(g);
    }
  }
  return out;
}

/// Axis of rho(w) as an H^2 geodesic oriented repelling -> attracting.
inline GeodesicH2 loop_axis(const FuchsianSurface& s, const GroupWord& w) {
  Moebius g = s.evaluate(w);
  if (classify(g).kind != IsometryKind::Loxodromic) {
    throw Error(Errc::NotLoxodromic, "word " + w.to_string() + " is not loxodromic");
  }
  GeodesicH3 a = axis(g);
  auto real = [](const SpherePoint& p) { return p.is_infinity() ? p : SpherePoint(p.value().real()); };
  return {real(a.from), real(a.to)};
}

/// Axes g . axis(rho(w)) over group elements g of word length <= depth,
/// deduplicated and sorted by endpoint pair.
inline std::vector<GeodesicH2> lift_loop(const FuchsianSurface& s, const GroupWord& w, int depth) {
  if (depth > kMaxDepth) throw Error(Errc::DepthTooLarge, "depth above 6");
  GeodesicH2 base = loop_axis(s, w);
  std::vector<GeodesicH2> all;
  for (const auto& e : enumerate_elements(s, depth)) all.push_back(apply(e.matrix, base));
  return dedupe_geodesics(std::move(all));
}

/// Simpleness certificate: the depth-d lifts of w pairwise do not cross.
inline bool lifts_pairwise_disjoint(const std::vector<GeodesicH2>& a, const std::vector<GeodesicH2>& b) {
  for (const auto& g : a) {
    for (const auto& h : b) {
      if (crosses(g, h)) return false;
    }
  }
  return true;
}

inline bool certify_simple(const FuchsianSurface& s, const GroupWord& w, int depth = 3) {
  if (w.is_proper_power()) return false;
  auto lifts = lift_loop(s, w, depth);
  return lifts_pairwise_disjoint(lifts, lifts);
}

}  // namespace graftlab
