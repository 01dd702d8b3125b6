#include "fbl/field.hpp"

#include "fbl/error.hpp"

#include <string>

namespace fbl {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldElem::FieldElem(std::int64_t value, std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw Error("field modulus " + std::to_string(p) + " is not prime");
  std::int64_t r = value % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  value_ = static_cast<std::uint32_t>(r);
}

void FieldElem::require_same_field(FieldElem rhs) const {
  if (rhs.p_ != p_)
    throw Error("mixed moduli: F_" + std::to_string(p_) + " and F_" + std::to_string(rhs.p_));
}

FieldElem FieldElem::operator+(FieldElem rhs) const {
  require_same_field(rhs);
  return {static_cast<std::uint32_t>((std::uint64_t{value_} + rhs.value_) % p_), p_, Unchecked{}};
}

FieldElem FieldElem::operator-(FieldElem rhs) const { return *this + (-rhs); }

FieldElem FieldElem::operator*(FieldElem rhs) const {
  require_same_field(rhs);
  return {static_cast<std::uint32_t>((std::uint64_t{value_} * rhs.value_) % p_), p_, Unchecked{}};
}

FieldElem FieldElem::operator-() const {
  return {value_ == 0 ? 0u : p_ - value_, p_, Unchecked{}};
}

FieldElem FieldElem::inverse() const {
  if (value_ == 0) throw Error("inversion of zero in F_" + std::to_string(p_));
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = value_, e = p_ - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return {static_cast<std::uint32_t>(result), p_, Unchecked{}};
}

std::ostream& operator<<(std::ostream& os, FieldElem a) { return os << a.value(); }

std::vector<FieldElem> field_elements(std::uint32_t p) {
  std::vector<FieldElem> out;
  out.reserve(p);
  for (std::uint32_t v = 0; v < p; ++v) out.emplace_back(v, p);
  return out;
}

} // namespace fbl
