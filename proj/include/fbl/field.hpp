#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <vector>

namespace fbl {

bool is_prime(std::uint32_t n);

/// Element of the prime field F_p. The value is always reduced into [0, p).
class FieldElem {
public:
  /// Throws fbl::Error when p is not prime.
  FieldElem(std::int64_t value, std::uint32_t p);

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElem operator+(FieldElem rhs) const;
  FieldElem operator-(FieldElem rhs) const;
  FieldElem operator*(FieldElem rhs) const;
  FieldElem operator-() const;
  /// Multiplicative inverse; throws on zero.
  FieldElem inverse() const;

  bool operator==(const FieldElem&) const = default;

private:
  struct Unchecked {};
  FieldElem(std::uint32_t value, std::uint32_t p, Unchecked) : value_(value), p_(p) {}
  void require_same_field(FieldElem rhs) const;

  std::uint32_t value_;
  std::uint32_t p_;
};

std::ostream& operator<<(std::ostream& os, FieldElem a);

/// All elements of F_p in increasing order.
std::vector<FieldElem> field_elements(std::uint32_t p);

} // namespace fbl
