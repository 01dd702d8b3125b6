#include "fbl/matrix.hpp"

#include "fbl/error.hpp"

#include <string>
#include <utility>

namespace fbl {

namespace {

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) { return FieldElem(a, p).inverse().value(); }

} // namespace

Matrix::Matrix(std::size_t dim, std::uint32_t p) : dim_(dim), p_(p) {
  if (dim == 0 || dim > kMaxDim) throw Error("matrix dimension " + std::to_string(dim) + " unsupported");
  if (!is_prime(p)) throw Error("field modulus " + std::to_string(p) + " is not prime");
}

Matrix::Matrix(std::size_t dim, std::uint32_t p, std::span<const std::int64_t> entries) : Matrix(dim, p) {
  if (entries.size() != dim * dim) throw Error("matrix entry count does not match dimension");
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) set(r, c, entries[r * dim + c]);
}

Matrix Matrix::identity(std::size_t dim, std::uint32_t p) {
  Matrix m(dim, p);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::elementary(std::size_t dim, std::uint32_t p, std::size_t row, std::size_t col) {
  Matrix m = identity(dim, p);
  m.set(row, col, m.entry(row, col) + 1);
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, std::int64_t v) { a_[r * kMaxDim + c] = reduce(v, p_); }

void Matrix::require_compatible(const Matrix& rhs) const {
  if (rhs.dim_ != dim_ || rhs.p_ != p_) throw Error("matrix dimension or modulus mismatch");
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require_compatible(rhs);
  Matrix out(dim_, p_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < dim_; ++i) s += std::uint64_t{entry(r, i)} * rhs.entry(i, c);
      out.a_[r * kMaxDim + c] = static_cast<std::uint32_t>(s % p_);
    }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(dim_, p_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out.a_[c * kMaxDim + r] = entry(r, c);
  return out;
}

FieldElem Matrix::det() const {
  // Gaussian elimination, tracking row swaps.
  Matrix w = *this;
  std::uint64_t d = 1;
  for (std::size_t col = 0; col < dim_; ++col) {
    std::size_t piv = col;
    while (piv < dim_ && w.entry(piv, col) == 0) ++piv;
    if (piv == dim_) return {0, p_};
    if (piv != col) {
      for (std::size_t c = 0; c < dim_; ++c) std::swap(w.a_[piv * kMaxDim + c], w.a_[col * kMaxDim + c]);
      d = (p_ - d) % p_;
    }
    const std::uint32_t pv = w.entry(col, col);
    d = d * pv % p_;
    const std::uint32_t pinv = inv_mod(pv, p_);
    for (std::size_t r = col + 1; r < dim_; ++r) {
      const std::uint64_t f = std::uint64_t{w.entry(r, col)} * pinv % p_;
      if (f == 0) continue;
      for (std::size_t c = col; c < dim_; ++c)
        w.set(r, c, static_cast<std::int64_t>(w.entry(r, c)) - static_cast<std::int64_t>(f * w.entry(col, c) % p_));
    }
  }
  return {static_cast<std::int64_t>(d), p_};
}

Matrix Matrix::inverse() const {
  Matrix w = *this;
  Matrix inv = identity(dim_, p_);
  for (std::size_t col = 0; col < dim_; ++col) {
    std::size_t piv = col;
    while (piv < dim_ && w.entry(piv, col) == 0) ++piv;
    if (piv == dim_) throw Error("singular matrix has no inverse");
    for (std::size_t c = 0; c < dim_; ++c) {
      std::swap(w.a_[piv * kMaxDim + c], w.a_[col * kMaxDim + c]);
      std::swap(inv.a_[piv * kMaxDim + c], inv.a_[col * kMaxDim + c]);
    }
    const std::uint64_t pinv = inv_mod(w.entry(col, col), p_);
    for (std::size_t c = 0; c < dim_; ++c) {
      w.a_[col * kMaxDim + c] = static_cast<std::uint32_t>(w.entry(col, c) * pinv % p_);
      inv.a_[col * kMaxDim + c] = static_cast<std::uint32_t>(inv.entry(col, c) * pinv % p_);
    }
    for (std::size_t r = 0; r < dim_; ++r) {
      if (r == col) continue;
      const std::uint64_t f = w.entry(r, col);
      if (f == 0) continue;
      for (std::size_t c = 0; c < dim_; ++c) {
        w.set(r, c, static_cast<std::int64_t>(w.entry(r, c)) - static_cast<std::int64_t>(f * w.entry(col, c) % p_));
        inv.set(r, c,
                static_cast<std::int64_t>(inv.entry(r, c)) - static_cast<std::int64_t>(f * inv.entry(col, c) % p_));
      }
    }
  }
  return inv;
}

std::vector<std::uint32_t> Matrix::apply(std::span<const std::uint32_t> v) const {
  if (v.size() != dim_) throw Error("vector length does not match matrix dimension");
  std::vector<std::uint32_t> out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < dim_; ++c) s += std::uint64_t{entry(r, c)} * v[c];
    out[r] = static_cast<std::uint32_t>(s % p_);
  }
  return out;
}

} // namespace fbl
