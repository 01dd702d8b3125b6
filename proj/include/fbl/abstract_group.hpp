#pragma once

#include "fbl/finite_group.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

namespace fbl {

/// Structured element label: a short tuple of component indices.
///
/// Product groups concatenate the labels of their factors, so canonical injections and
/// projections are plain tuple operations.
struct Label {
  static constexpr std::size_t kMaxWidth = 12;

  std::array<std::uint32_t, kMaxWidth> c{};
  std::uint8_t width = 0;

  Label() = default;
  Label(std::initializer_list<std::uint32_t> parts);

  std::uint32_t operator[](std::size_t i) const { return c[i]; }
  std::uint32_t& operator[](std::size_t i) { return c[i]; }
  void push_back(std::uint32_t v);
  /// Concatenation a ++ b.
  static Label concat(const Label& a, const Label& b);
  /// Components [first, first + count).
  Label slice(std::size_t first, std::size_t count) const;

  bool operator==(const Label&) const = default;
  auto operator<=>(const Label&) const = default;

  nlohmann::json to_json() const;
};

struct LabelHash {
  std::size_t operator()(const Label& l) const noexcept;
};

using LabelSet = std::unordered_set<Label, LabelHash>;

/// A finite group whose elements are structured labels.
class AbstractGroup {
public:
  virtual ~AbstractGroup() = default;

  /// Number of label components.
  virtual std::size_t width() const = 0;
  virtual std::uint64_t order() const = 0;
  virtual Label identity() const = 0;
  virtual Label multiply(const Label& a, const Label& b) const = 0;
  virtual Label inverse(const Label& a) const = 0;
  /// True iff `a` is a well-formed label of an element of this group.
  virtual bool contains(const Label& a) const = 0;
  virtual std::vector<Label> generators() const = 0;
  /// All elements, in a deterministic structured order.
  virtual std::vector<Label> elements() const = 0;
  /// Human-readable structure, e.g. "(U_P^2 ⋊ K_P) x D_8".
  virtual std::string name() const = 0;
  /// Structured description for certificates.
  virtual nlohmann::json describe() const = 0;

  std::uint64_t element_order(const Label& a) const;
  bool commutes(const Label& a, const Label& b) const { return multiply(a, b) == multiply(b, a); }
};

using GroupPtr = std::shared_ptr<const AbstractGroup>;

/// Closure of `gens` inside `g`.
LabelSet generated_subgroup(const AbstractGroup& g, const std::vector<Label>& gens);

struct AxiomReport {
  bool closed = true, associative = true, identity = true, inverses = true;
  bool ok() const { return closed && associative && identity && inverses; }
};
/// Exhaustive group-axiom check; associativity is cubic so keep this to small orders.
AxiomReport verify_group_axioms(const AbstractGroup& g);

/// A subgroup of a FiniteGroup viewed as an abstract group; labels are parent element indices.
class PermSubgroupGroup final : public AbstractGroup {
public:
  PermSubgroupGroup(Subgroup s, std::string name);

  const Subgroup& subgroup() const noexcept { return s_; }

  std::size_t width() const override { return 1; }
  std::uint64_t order() const override { return s_.order(); }
  Label identity() const override { return {FiniteGroup::identity()}; }
  Label multiply(const Label& a, const Label& b) const override;
  Label inverse(const Label& a) const override;
  bool contains(const Label& a) const override;
  std::vector<Label> generators() const override;
  std::vector<Label> elements() const override;
  std::string name() const override { return name_; }
  nlohmann::json describe() const override;

private:
  Subgroup s_;
  std::string name_;
};

/// U^n ⋊ Q: tuples (u_1, ..., u_n, q) with q acting on every copy of U by conjugation in the
/// common parent group. n may be 0, giving a copy of Q.
class SemidirectPower final : public AbstractGroup {
public:
  /// Throws fbl::Error if Q does not normalize U or the parents differ.
  SemidirectPower(Subgroup u, Subgroup q, std::size_t copies, std::string u_name, std::string q_name);

  const Subgroup& normal_factor() const noexcept { return u_; }
  const Subgroup& top() const noexcept { return q_; }
  std::size_t copies() const noexcept { return n_; }

  /// Canonical injection of U as copy i (0-based).
  Label inject_copy(std::size_t i, ElemIndex u) const;
  /// Canonical injection of Q.
  Label inject_top(ElemIndex q) const;
  /// Projection onto Q.
  ElemIndex project(const Label& a) const { return a[n_]; }

  std::size_t width() const override { return n_ + 1; }
  std::uint64_t order() const override;
  Label identity() const override;
  Label multiply(const Label& a, const Label& b) const override;
  Label inverse(const Label& a) const override;
  bool contains(const Label& a) const override;
  std::vector<Label> generators() const override;
  std::vector<Label> elements() const override;
  std::string name() const override;
  nlohmann::json describe() const override;

private:
  Subgroup u_, q_;
  std::size_t n_;
  std::string u_name_, q_name_;
};

/// G x H with concatenated labels.
class DirectProduct final : public AbstractGroup {
public:
  DirectProduct(GroupPtr left, GroupPtr right);

  const GroupPtr& left() const noexcept { return left_; }
  const GroupPtr& right() const noexcept { return right_; }
  Label inject_left(const Label& g) const;
  Label inject_right(const Label& h) const;
  Label project_left(const Label& a) const { return a.slice(0, left_->width()); }
  Label project_right(const Label& a) const { return a.slice(left_->width(), right_->width()); }

  std::size_t width() const override { return left_->width() + right_->width(); }
  std::uint64_t order() const override { return left_->order() * right_->order(); }
  Label identity() const override;
  Label multiply(const Label& a, const Label& b) const override;
  Label inverse(const Label& a) const override;
  bool contains(const Label& a) const override;
  std::vector<Label> generators() const override;
  std::vector<Label> elements() const override;
  std::string name() const override;
  nlohmann::json describe() const override;

private:
  GroupPtr left_, right_;
};

/// Dihedral group of order k (k even), generated by two distinguished reflections r1, r2
/// whose product has order k/2. For k = 2 this is Z2 with r1 = r2.
///
/// Label [i + (k/2) j] encodes rot^i s^j, with r1 = s and r2 = rot s.
class Dihedral final : public AbstractGroup {
public:
  explicit Dihedral(std::uint32_t k);

  std::uint32_t k() const noexcept { return k_; }
  Label r1() const;
  Label r2() const;
  bool is_reflection(const Label& a) const;

  std::size_t width() const override { return 1; }
  std::uint64_t order() const override { return k_; }
  Label identity() const override { return {0}; }
  Label multiply(const Label& a, const Label& b) const override;
  Label inverse(const Label& a) const override;
  bool contains(const Label& a) const override { return a.width == 1 && a[0] < k_; }
  std::vector<Label> generators() const override { return {r1(), r2()}; }
  std::vector<Label> elements() const override;
  std::string name() const override;
  nlohmann::json describe() const override;

private:
  std::uint32_t k_, half_;
};

std::shared_ptr<const SemidirectPower> semidirect_power(const Subgroup& u, const Subgroup& q, std::size_t n,
                                                        std::string u_name = "U", std::string q_name = "Q");
std::shared_ptr<const DirectProduct> direct_product(GroupPtr g, GroupPtr h);
/// Throws fbl::Error for odd k or k < 2.
std::shared_ptr<const Dihedral> dihedral(std::uint32_t k);
/// Z2, as dihedral(2).
std::shared_ptr<const Dihedral> cyclic2();

} // namespace fbl
