#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "noether/error.hpp"

namespace noether {

using Integer = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
///
/// A thin value type over GMP's mpq_class. Every result of arithmetic is
/// canonical, so structural equality is numeric equality and str() is a
/// canonical rendering ("p/q", or "n" for integers).
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(const Integer& value) : value_(value) {}

  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error(Errc::ParseError, "zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }

  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

  /// Parses "n", "-n", "p/q" or "-p/q". Whitespace is not accepted.
  static Rational parse(std::string_view text) {
    auto bad = [&] { return Error(Errc::ParseError, "invalid rational '" + std::string(text) + "'"); };
    auto integer = [&](std::string_view s, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) throw bad();
      for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') throw bad();
      std::string digits(s);
      if (digits[0] == '+') digits.erase(0, 1);
      return Integer(digits, 10);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(integer(text, true));
    Integer num = integer(text.substr(0, slash), true);
    Integer den = integer(text.substr(slash + 1), false);
    if (den == 0) throw bad();
    return Rational(num, den);
  }

  const mpq_class& raw() const { return value_; }
  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  std::string str() const { return value_.get_str(10); }

  Rational operator-() const { return from(-value_); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(Errc::SingularSystem, "division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Rational from(mpq_class v) {
    Rational r;
    r.value_ = std::move(v);
    return r;
  }

  mpq_class value_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace noether
