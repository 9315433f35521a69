#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "traprix/error.hpp"

namespace traprix {

/// Exact rational number in canonical form (gcd(num, den) = 1, den > 0).
///
/// Thin value wrapper over GMP's mpq_class. Every arithmetic result is
/// canonicalized, so equality is structural and ordering matches the reals.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : value_(static_cast<long>(value)) {}  // NOLINT: implicit by design of numeric types
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw error(errc::parse_error, "zero denominator");
    value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    value_.canonicalize();
  }
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Parses `p/q` or a bare integer `p`. The sign may only precede the
  /// numerator and the denominator must be positive.
  static Rational parse(std::string_view text) {
    auto digits_ok = [](std::string_view s, bool allow_sign) {
      if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
      throw error(errc::parse_error, "malformed rational '" + std::string(text) + "'");
    std::string num_str(num);
    if (num_str.front() == '+') num_str.erase(0, 1);
    mpz_class n(num_str, 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw error(errc::parse_error, "zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(n, d));
  }

  /// Always `p/q`, even for integers.
  std::string str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }
  const mpq_class& raw() const { return value_; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ + b.value_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ - b.value_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ * b.value_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.sign() == 0) throw error(errc::parse_error, "division by zero");
    return Rational(mpq_class(a.value_ / b.value_));
  }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_;
};

}  // namespace traprix
