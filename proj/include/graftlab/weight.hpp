#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <variant>

namespace graftlab {

using Rational = boost::rational<std::int64_t>;

/// A transverse-measure value. Either an exact rational multiple of pi
/// (kept symbolically so 2pi-integrality tests are exact) or a plain double.
/// Arithmetic between two exact weights stays exact; anything touching a
/// float weight degrades to float.
class Weight {
 public:
  Weight() : rep_(Rational(0)) {}
  explicit Weight(double value) : rep_(value) {}

  static Weight pi_multiple(Rational coeff) { return Weight(Rep(coeff)); }
  static Weight pi_multiple(std::int64_t num, std::int64_t den = 1) {
    return pi_multiple(Rational(num, den));
  }
  static Weight two_pi(std::int64_t k = 1) { return pi_multiple(Rational(2 * k)); }

  bool is_exact() const { return std::holds_alternative<Rational>(rep_); }
  /// Coefficient of pi; only meaningful when is_exact().
  Rational pi_coeff() const { return std::get<Rational>(rep_); }

  double value() const {
    if (auto* r = std::get_if<Rational>(&rep_)) {
      return std::numbers::pi * static_cast<double>(r->numerator()) /
             static_cast<double>(r->denominator());
    }
    return std::get<double>(rep_);
  }

  bool is_zero() const {
    if (is_exact()) return pi_coeff().numerator() == 0;
    return value() == 0.0;
  }

  friend Weight operator+(const Weight& a, const Weight& b) {
    if (a.is_exact() && b.is_exact()) return Weight(Rep(a.pi_coeff() + b.pi_coeff()));
    return Weight(a.value() + b.value());
  }
  friend Weight operator-(const Weight& a, const Weight& b) {
    if (a.is_exact() && b.is_exact()) return Weight(Rep(a.pi_coeff() - b.pi_coeff()));
    return Weight(a.value() - b.value());
  }
  friend Weight operator*(std::int64_t k, const Weight& w) {
    if (w.is_exact()) return Weight(Rep(w.pi_coeff() * Rational(k)));
    return Weight(static_cast<double>(k) * w.value());
  }
  friend Weight operator*(const Rational& k, const Weight& w) {
    if (w.is_exact()) return Weight(Rep(w.pi_coeff() * k));
    return Weight(static_cast<double>(k.numerator()) / static_cast<double>(k.denominator()) *
                  w.value());
  }
  Weight& operator+=(const Weight& o) { return *this = *this + o; }
  Weight& operator-=(const Weight& o) { return *this = *this - o; }

  /// Exact comparison for exact pairs, bitwise double comparison otherwise.
  friend bool operator==(const Weight& a, const Weight& b) {
    if (a.is_exact() && b.is_exact()) return a.pi_coeff() == b.pi_coeff();
    return a.value() == b.value();
  }

  /// Sign: -1, 0, +1 (exact when possible).
  int sign() const {
    if (is_exact()) {
      // Denominators are positive; comparing a rational with an int literal
      // recurses inside Boost for mixed integer types.
      auto n = pi_coeff().numerator();
      return n > 0 ? 1 : (n < 0 ? -1 : 0);
    }
    double v = value();
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }

  friend std::ostream& operator<<(std::ostream& os, const Weight& w) {
    if (w.is_exact()) return os << w.pi_coeff() << "*pi";
    return os << w.value();
  }

 private:
  using Rep = std::variant<Rational, double>;
  explicit Weight(Rep rep) : rep_(rep) {}
  Rep rep_;
};

}  // namespace graftlab
