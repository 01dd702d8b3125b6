#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>

namespace fbl {

/// Exact rational with arbitrary-precision numerator and denominator.
/// Always kept in lowest terms with a positive denominator, so equality is structural.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t n) : q_(static_cast<long>(n)) {} // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den);
  /// Parses "a", "a/b", or "1e-12" style decimal powers of ten ("1e-d").
  static Rational parse(const std::string& text);
  /// 1 / n for a positive integer n.
  static Rational reciprocal(const mpz_class& n);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }

  Rational operator+(const Rational& b) const { return Rational(q_ + b.q_); }
  Rational operator-(const Rational& b) const { return Rational(q_ - b.q_); }
  Rational operator*(const Rational& b) const { return Rational(q_ * b.q_); }
  Rational operator/(const Rational& b) const;
  Rational operator-() const { return Rational(-q_); }
  Rational& operator+=(const Rational& b) {
    q_ += b.q_;
    return *this;
  }

  bool operator==(const Rational& b) const { return q_ == b.q_; }
  std::strong_ordering operator<=>(const Rational& b) const {
    const int c = cmp(q_, b.q_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  /// "n/d", or "n" when the denominator is 1.
  std::string str() const { return q_.get_str(); }
  /// Decimal rendering rounded half-up to `digits` fractional digits. Approximate by nature.
  std::string decimal(unsigned digits) const;

private:
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Exact reduced sum of the terms; the empty sum is 0.
Rational rational_sum(std::span<const Rational> terms);

} // namespace fbl
