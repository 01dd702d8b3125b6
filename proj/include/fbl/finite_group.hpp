#pragma once

#include "fbl/permutation.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace fbl {

using ElemIndex = std::uint32_t;

/// Default closure cap for generate_group.
inline constexpr std::size_t kDefaultGroupCap = 10'000'000;

/// A finite permutation group with every element enumerated.
///
/// Element 0 is always the identity. Elements are stored in breadth-first order from the
/// generators, so enumeration is deterministic for a fixed generator list.
class FiniteGroup {
public:
  /// Breadth-first closure of `gens`. Throws CapExceeded when more than `cap` elements appear.
  static std::shared_ptr<const FiniteGroup> generate(std::vector<Permutation> gens, std::size_t degree,
                                                     std::size_t cap = kDefaultGroupCap,
                                                     std::optional<std::uint32_t> char_p = std::nullopt);

  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t degree() const noexcept { return degree_; }
  std::optional<std::uint32_t> char_p() const noexcept { return char_p_; }

  const Permutation& element(ElemIndex i) const { return elements_[i]; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  std::optional<ElemIndex> index_of(const Permutation& g) const;

  static constexpr ElemIndex identity() noexcept { return 0; }
  ElemIndex multiply(ElemIndex a, ElemIndex b) const;
  ElemIndex inverse(ElemIndex a) const { return inverse_[a]; }
  /// a * b * a^-1
  ElemIndex conjugate(ElemIndex a, ElemIndex b) const { return multiply(multiply(a, b), inverse(a)); }

  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<ElemIndex>& generator_indices() const noexcept { return generator_indices_; }

private:
  FiniteGroup() = default;

  std::size_t degree_ = 0;
  std::optional<std::uint32_t> char_p_;
  std::vector<Permutation> generators_;
  std::vector<ElemIndex> generator_indices_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, ElemIndex, PermutationHash> index_;
  std::vector<ElemIndex> inverse_;
  std::vector<ElemIndex> table_; // order^2 entries when small enough
};

using GroupHandle = std::shared_ptr<const FiniteGroup>;

/// Free-function form of FiniteGroup::generate.
GroupHandle generate_group(const std::vector<Permutation>& gens, std::size_t degree,
                           std::size_t cap = kDefaultGroupCap,
                           std::optional<std::uint32_t> char_p = std::nullopt);

/// A subgroup of a FiniteGroup, as a sorted set of element indices.
class Subgroup {
public:
  /// Empty placeholder with no parent; assign before use.
  Subgroup() = default;
  /// The whole parent group.
  static Subgroup whole(GroupHandle parent);
  static Subgroup trivial(GroupHandle parent);
  /// Closure of `gens` inside the parent.
  static Subgroup generated(GroupHandle parent, const std::vector<ElemIndex>& gens);
  /// Validates closure; throws fbl::Error if `elements` is not a subgroup.
  static Subgroup from_elements(GroupHandle parent, std::vector<ElemIndex> elements);

  const GroupHandle& parent() const noexcept { return parent_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<ElemIndex>& elements() const noexcept { return elements_; }
  bool contains(ElemIndex g) const { return mask_[g] != 0; }
  bool is_subgroup_of(const Subgroup& other) const;
  /// A small generating set, found greedily in element order.
  const std::vector<ElemIndex>& generators() const;

  bool operator==(const Subgroup& other) const { return parent_ == other.parent_ && elements_ == other.elements_; }

  /// g H g^-1
  Subgroup conjugate_by(ElemIndex g) const;
  Subgroup intersect(const Subgroup& other) const;

private:
  Subgroup(GroupHandle parent, std::vector<ElemIndex> sorted_elements);

  GroupHandle parent_;
  std::vector<ElemIndex> elements_;
  std::vector<char> mask_;
  mutable std::optional<std::vector<ElemIndex>> generators_;
};

/// G-orbit of x, sorted.
std::vector<Point> orbit(const Subgroup& g, Point x);
/// All orbits of G on {0..degree-1}, each sorted, ordered by least element.
std::vector<std::vector<Point>> orbits(const Subgroup& g);
/// Pointwise stabilizer of x.
Subgroup stabilizer(const Subgroup& g, Point x);
/// Setwise stabilizer of the unordered pair {a, b} (an edge).
Subgroup stabilizer(const Subgroup& g, Point a, Point b);

bool is_normal(const Subgroup& g, const Subgroup& n);
bool is_p_group(std::size_t order, std::uint32_t p);

/// One Sylow p-subgroup of G, grown one factor of p at a time inside normalizers.
Subgroup sylow_subgroup(const Subgroup& g, std::uint32_t p);
/// O_p(G): the largest normal p-subgroup, computed as the intersection of all Sylow p-subgroups.
Subgroup p_core(const Subgroup& g, std::uint32_t p);

struct SemidirectWitness {
  bool n_in_g = false;
  bool h_in_g = false;
  bool n_normal = false;
  bool trivial_intersection = false;
  bool order_product = false;
  std::size_t g_order = 0, n_order = 0, h_order = 0;

  bool holds() const { return n_in_g && h_in_g && n_normal && trivial_intersection && order_product; }
  /// Empty when the decomposition holds.
  std::string failed_clause() const;
};

/// G = N ⋊ H: N normal in G, N ∩ H = 1 and |N||H| = |G|.
SemidirectWitness is_semidirect(const Subgroup& g, const Subgroup& n, const Subgroup& h);

/// Left cosets xH partitioning G, in order of their least element. Throws if H is not in G.
std::vector<std::vector<ElemIndex>> cosets(const Subgroup& g, const Subgroup& h);

/// Elementwise product set {a b : a in A, b in B}, sorted.
std::vector<ElemIndex> product_set(const Subgroup& a, const Subgroup& b);

/// Re-enumerates a subgroup as a standalone FiniteGroup generated by its generators.
GroupHandle as_group(const Subgroup& s);

} // namespace fbl
