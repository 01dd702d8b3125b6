#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

namespace fbl {

using Point = std::uint32_t;

/// Bijection of {0, ..., N-1}.
///
/// Composition is right-to-left everywhere in the toolkit: compose(g, h) applies h first,
/// then g, so (g * h)(x) == g(h(x)).
class Permutation {
public:
  Permutation() = default;
  /// Throws fbl::Error if `images` is not a bijection of {0..N-1}.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t n);
  /// Single cycle (c0 c1 ... ck) on n points.
  static Permutation cycle(std::size_t n, std::span<const Point> points);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  /// Least n >= 1 with g^n = id.
  std::uint64_t order() const;

  auto operator<=>(const Permutation&) const = default;

private:
  friend Permutation compose(const Permutation& g, const Permutation& h);
  std::vector<Point> images_;
};

/// g * h applies h then g. Throws on size mismatch.
Permutation compose(const Permutation& g, const Permutation& h);
inline Permutation operator*(const Permutation& g, const Permutation& h) { return compose(g, h); }

std::ostream& operator<<(std::ostream& os, const Permutation& g);

struct PermutationHash {
  std::size_t operator()(const Permutation& g) const noexcept;
};

} // namespace fbl
