#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bellfac {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown when rational text fails to parse or a zero denominator appears.
class RationalError : public std::runtime_error {
 public:
  explicit RationalError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact rational number, always in lowest terms with a positive denominator.
/// Probabilities and weights throughout the library are Rationals; no
/// floating point enters any decision path. Doubles appear only through
/// approx(), for display.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(long long n) : value_(n) {}  // NOLINT: implicit by intent
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}
  Rational(BigInt num, BigInt den) {
    if (den == 0) throw RationalError("division by zero: denominator 0");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    value_ = boost::multiprecision::cpp_rational(std::move(num), std::move(den));
  }

  /// Parses "p" or "p/q" with optional leading minus on p.
  static Rational parse(std::string_view text);

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  /// Canonical text form: "p/q", or just "p" when q = 1.
  std::string str() const {
    if (denominator() == 1) return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

  /// Display-only decimal approximation.
  double approx() const { return value_.convert_to<double>(); }

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  Rational operator-() const { return Rational(-value_); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.value_ == 0) throw RationalError("division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

  static Rational abs(const Rational& a) { return a < Rational(0) ? -a : a; }

 private:
  explicit Rational(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}
  boost::multiprecision::cpp_rational value_;
};

inline Rational Rational::parse(std::string_view text) {
  auto is_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  bool negative = false;
  if (!num.empty() && num.front() == '-') {
    negative = true;
    num.remove_prefix(1);
  }
  if (!is_digits(num))
    throw RationalError("malformed rational: bad numerator '" + std::string(num) +
                        "' in '" + std::string(text) + "'");
  if (!is_digits(den))
    throw RationalError("malformed rational: bad denominator '" + std::string(den) +
                        "' in '" + std::string(text) + "'");
  BigInt n{std::string(num)};
  BigInt d{std::string(den)};
  if (d == 0) throw RationalError("division by zero: denominator 0 in '" + std::string(text) + "'");
  if (negative) n = -n;
  return Rational(std::move(n), std::move(d));
}

}  // namespace bellfac
