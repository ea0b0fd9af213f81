#pragma once

// Exact rational numbers backed by GMP.
//
// Values are always kept in canonical form: gcd(|num|, den) = 1 and den >= 1,
// with zero represented as 0/1. Serialization uses the "p/q" text form
// ("p" alone when the denominator is 1).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qfin {

class Rational {
 public:
  Rational() = default;
  Rational(long n) : value_(n) {}                      // NOLINT(implicit)
  Rational(int n) : value_(static_cast<long>(n)) {}    // NOLINT(implicit)
  Rational(long num, long den);
  explicit Rational(const mpz_class& n) : value_(n) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  /// Parses "p/q", "p" or a finite decimal such as "0.999" or "-1.25".
  /// Throws std::invalid_argument on malformed input or a zero denominator.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  double to_double() const { return value_.get_d(); }
  std::string str() const;

  /// Integer power; negative exponents invert (throws std::domain_error on 0^-n).
  Rational pow(long exponent) const;
  Rational abs() const { return Rational(mpq_class(::abs(value_))); }
  Rational reciprocal() const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// 2^e as a rational (e may be negative).
Rational pow2(long e);

}  // namespace qfin
