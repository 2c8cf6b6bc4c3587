#ifndef ERGOPT_REAL_HPP
#define ERGOPT_REAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <string>
#include <variant>

namespace ergopt {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Default numeric tolerances. Root-finding stops at `root_tol`;
/// floating-point equality / closure checks use `eq_tol`.
inline constexpr double kRootTol = 1e-10;
inline constexpr double kEqTol = 1e-9;

enum class Space { Interval, Circle };

/// Scalar that is either an exact rational or a double. Arithmetic stays
/// exact when both operands are exact and degrades to double otherwise.
/// Comparisons between mixed operands are exact (a double is a rational).
class Real {
 public:
  Real() : v_(0.0) {}
  Real(double d) : v_(d) {}          // NOLINT: implicit by design
  Real(int n) : v_(Rational(n)) {}   // NOLINT
  Real(const Rational& r) : v_(r) {} // NOLINT
  Real(Rational&& r) : v_(std::move(r)) {}

  static Real ratio(long num, long den) { return Real(Rational(num, den)); }

  bool exact() const { return std::holds_alternative<Rational>(v_); }

  const Rational& rat() const { return std::get<Rational>(v_); }

  /// Exact value as a rational; converts the double exactly if needed.
  Rational to_rational() const {
    if (exact()) return rat();
    return Rational(std::get<double>(v_));
  }

  double to_double() const {
    if (exact()) return rat().convert_to<double>();
    return std::get<double>(v_);
  }

  Real operator-() const {
    if (exact()) return Real(Rational(-rat()));
    return Real(-std::get<double>(v_));
  }

  friend Real operator+(const Real& a, const Real& b) {
    if (a.exact() && b.exact()) return Real(Rational(a.rat() + b.rat()));
    return Real(a.to_double() + b.to_double());
  }
  friend Real operator-(const Real& a, const Real& b) {
    if (a.exact() && b.exact()) return Real(Rational(a.rat() - b.rat()));
    return Real(a.to_double() - b.to_double());
  }
  friend Real operator*(const Real& a, const Real& b) {
    if (a.exact() && b.exact()) return Real(Rational(a.rat() * b.rat()));
    return Real(a.to_double() * b.to_double());
  }
  friend Real operator/(const Real& a, const Real& b) {
    if (a.exact() && b.exact()) return Real(Rational(a.rat() / b.rat()));
    return Real(a.to_double() / b.to_double());
  }

  Real& operator+=(const Real& o) { *this = *this + o; return *this; }
  Real& operator-=(const Real& o) { *this = *this - o; return *this; }
  Real& operator*=(const Real& o) { *this = *this * o; return *this; }

  /// Three-way compare, exact even between mixed representations.
  friend int cmp(const Real& a, const Real& b) {
    if (a.exact() && b.exact())
      return a.rat() < b.rat() ? -1 : (a.rat() == b.rat() ? 0 : 1);
    if (!a.exact() && !b.exact()) {
      double x = a.to_double(), y = b.to_double();
      return x < y ? -1 : (x == y ? 0 : 1);
    }
    Rational x = a.to_rational(), y = b.to_rational();
    return x < y ? -1 : (x == y ? 0 : 1);
  }

  friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Real& a, const Real& b) { return cmp(a, b) != 0; }

  friend Real abs(const Real& a) { return a < Real(0) ? -a : a; }
  friend const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }
  friend const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }

  /// Largest integer <= value.
  BigInt floor_int() const {
    if (exact()) {
      BigInt num = boost::multiprecision::numerator(rat());
      BigInt den = boost::multiprecision::denominator(rat());
      BigInt q = num / den;
      if (num < 0 && q * den != num) --q;
      return q;
    }
    return BigInt(std::floor(std::get<double>(v_)));
  }

  /// Reduce into [0,1), exactly for rationals.
  Real mod1() const {
    if (exact()) {
      Rational r = rat() - Rational(floor_int());
      return Real(std::move(r));
    }
    double d = std::get<double>(v_);
    double m = d - std::floor(d);
    if (m >= 1.0) m = 0.0;  // guard against floor rounding at the boundary
    return Real(m);
  }

  std::string str() const {
    if (exact()) return rat().str();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(v_));
    return buf;
  }

 private:
  std::variant<double, Rational> v_;
};

/// Metric of the declared space; the circle uses min(|x-y|, 1-|x-y|).
inline double space_dist(Space s, double x, double y) {
  double d = std::fabs(x - y);
  if (s == Space::Circle) {
    d = d - std::floor(d);
    return std::min(d, 1.0 - d);
  }
  return d;
}

/// Parse a decimal literal ("2", "1.6", "3e-2") into an exact rational.
Rational rational_from_decimal(const std::string& text);

}  // namespace ergopt

#endif
