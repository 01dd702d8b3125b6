#pragma once

#include "fbl/field.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace fbl {

/// Square matrix of size 1..4 over a prime field F_p.
class Matrix {
public:
  static constexpr std::size_t kMaxDim = 4;

  Matrix(std::size_t dim, std::uint32_t p);
  /// Row-major entries; they are reduced mod p.
  Matrix(std::size_t dim, std::uint32_t p, std::span<const std::int64_t> entries);

  static Matrix identity(std::size_t dim, std::uint32_t p);
  /// I + E_{row,col}, the elementary transvection.
  static Matrix elementary(std::size_t dim, std::uint32_t p, std::size_t row, std::size_t col);

  std::size_t dim() const noexcept { return dim_; }
  std::uint32_t modulus() const noexcept { return p_; }

  FieldElem at(std::size_t r, std::size_t c) const { return {entry(r, c), p_}; }
  std::uint32_t entry(std::size_t r, std::size_t c) const { return a_[r * kMaxDim + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v);

  Matrix operator*(const Matrix& rhs) const;
  Matrix transpose() const;
  FieldElem det() const;
  /// Throws fbl::Error when singular.
  Matrix inverse() const;

  /// M * v for a column vector v.
  std::vector<std::uint32_t> apply(std::span<const std::uint32_t> v) const;

  bool operator==(const Matrix&) const = default;

private:
  void require_compatible(const Matrix& rhs) const;

  std::size_t dim_;
  std::uint32_t p_;
  std::array<std::uint32_t, kMaxDim * kMaxDim> a_{};
};

} // namespace fbl
