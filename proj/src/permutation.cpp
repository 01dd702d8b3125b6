#include "fbl/permutation.hpp"

#include "fbl/error.hpp"

#include <numeric>
#include <string>

namespace fbl {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const Point x = images_[i];
    if (x >= images_.size() || seen[x])
      throw Error("image array is not a bijection (position " + std::to_string(i) + ")");
    seen[x] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Point> im(n);
  std::iota(im.begin(), im.end(), Point{0});
  Permutation g;
  g.images_ = std::move(im);
  return g;
}

Permutation Permutation::cycle(std::size_t n, std::span<const Point> points) {
  Permutation g = identity(n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] >= n) throw Error("cycle point out of range");
    g.images_[points[i]] = points[(i + 1) % points.size()];
  }
  return Permutation(g.images_);
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation g;
  g.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) g.images_[images_[i]] = static_cast<Point>(i);
  return g;
}

std::uint64_t Permutation::order() const {
  // lcm of cycle lengths
  std::vector<char> seen(images_.size(), 0);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (Point x = static_cast<Point>(i); !seen[x]; x = images_[x]) {
      seen[x] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

Permutation compose(const Permutation& g, const Permutation& h) {
  if (g.degree() != h.degree())
    throw Error("permutation size mismatch: " + std::to_string(g.degree()) + " vs " + std::to_string(h.degree()));
  Permutation out;
  out.images_.resize(g.degree());
  for (std::size_t i = 0; i < out.images_.size(); ++i) out.images_[i] = g.images_[h.images_[i]];
  return out;
}

std::ostream& operator<<(std::ostream& os, const Permutation& g) {
  os << '[';
  for (std::size_t i = 0; i < g.degree(); ++i) os << (i ? "," : "") << g(static_cast<Point>(i));
  return os << ']';
}

std::size_t PermutationHash::operator()(const Permutation& g) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : g.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

} // namespace fbl
