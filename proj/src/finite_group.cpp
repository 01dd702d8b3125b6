#include "fbl/finite_group.hpp"

#include "fbl/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace fbl {

namespace {

constexpr std::size_t kTableLimit = 2048;

} // namespace

std::shared_ptr<const FiniteGroup> FiniteGroup::generate(std::vector<Permutation> gens, std::size_t degree,
                                                         std::size_t cap, std::optional<std::uint32_t> char_p) {
  for (const auto& g : gens)
    if (g.degree() != degree)
      throw Error("generator acts on " + std::to_string(g.degree()) + " points, expected " + std::to_string(degree));

  std::shared_ptr<FiniteGroup> grp(new FiniteGroup());
  grp->degree_ = degree;
  grp->char_p_ = char_p;
  grp->generators_ = std::move(gens);

  grp->elements_.push_back(Permutation::identity(degree));
  grp->index_.emplace(grp->elements_.front(), 0);
  for (std::size_t i = 0; i < grp->elements_.size(); ++i) {
    for (const auto& g : grp->generators_) {
      Permutation y = compose(g, grp->elements_[i]);
      if (grp->index_.contains(y)) continue;
      if (grp->elements_.size() >= cap) throw CapExceeded("group closure exceeded the element cap", cap);
      grp->index_.emplace(y, static_cast<ElemIndex>(grp->elements_.size()));
      grp->elements_.push_back(std::move(y));
    }
  }

  for (const auto& g : grp->generators_) grp->generator_indices_.push_back(grp->index_.at(g));

  const std::size_t n = grp->elements_.size();
  grp->inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) grp->inverse_[i] = grp->index_.at(grp->elements_[i].inverse());

  if (n <= kTableLimit) {
    grp->table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        grp->table_[a * n + b] = grp->index_.at(compose(grp->elements_[a], grp->elements_[b]));
  }
  return grp;
}

GroupHandle generate_group(const std::vector<Permutation>& gens, std::size_t degree, std::size_t cap,
                           std::optional<std::uint32_t> char_p) {
  return FiniteGroup::generate(gens, degree, cap, char_p);
}

std::optional<ElemIndex> FiniteGroup::index_of(const Permutation& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElemIndex FiniteGroup::multiply(ElemIndex a, ElemIndex b) const {
  if (!table_.empty()) return table_[std::size_t{a} * elements_.size() + b];
  return index_.at(compose(elements_[a], elements_[b]));
}

// ---------------------------------------------------------------------------------------------

Subgroup::Subgroup(GroupHandle parent, std::vector<ElemIndex> sorted_elements)
    : parent_(std::move(parent)), elements_(std::move(sorted_elements)), mask_(parent_->order(), 0) {
  for (ElemIndex e : elements_) mask_[e] = 1;
}

Subgroup Subgroup::whole(GroupHandle parent) {
  std::vector<ElemIndex> all(parent->order());
  std::iota(all.begin(), all.end(), ElemIndex{0});
  return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::trivial(GroupHandle parent) { return Subgroup(std::move(parent), {FiniteGroup::identity()}); }

Subgroup Subgroup::generated(GroupHandle parent, const std::vector<ElemIndex>& gens) {
  std::vector<char> seen(parent->order(), 0);
  std::vector<ElemIndex> elems{FiniteGroup::identity()};
  seen[FiniteGroup::identity()] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (ElemIndex g : gens) {
      const ElemIndex y = parent->multiply(g, elems[i]);
      if (!seen[y]) {
        seen[y] = 1;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  Subgroup s(std::move(parent), std::move(elems));
  return s;
}

Subgroup Subgroup::from_elements(GroupHandle parent, std::vector<ElemIndex> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Subgroup s(parent, elements);
  if (elements.empty() || !s.contains(FiniteGroup::identity())) throw Error("element set lacks the identity");
  // A finite subset containing 1 is a subgroup iff it equals the closure of its generators.
  Subgroup closure = generated(parent, s.generators());
  if (closure.elements_ != s.elements_) throw Error("element set is not closed under multiplication");
  return s;
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  if (parent_ != other.parent_) return false;
  return std::all_of(elements_.begin(), elements_.end(), [&](ElemIndex e) { return other.contains(e); });
}

const std::vector<ElemIndex>& Subgroup::generators() const {
  if (generators_) return *generators_;
  std::vector<ElemIndex> gens;
  std::vector<char> inside(parent_->order(), 0);
  std::vector<ElemIndex> closure{FiniteGroup::identity()};
  inside[FiniteGroup::identity()] = 1;
  for (ElemIndex x : elements_) {
    if (inside[x]) continue;
    gens.push_back(x);
    // Extend the closure by the new generator.
    for (std::size_t i = 0; i < closure.size(); ++i)
      for (ElemIndex g : gens) {
        const ElemIndex y = parent_->multiply(g, closure[i]);
        if (!inside[y]) {
          inside[y] = 1;
          closure.push_back(y);
        }
      }
  }
  generators_ = std::move(gens);
  return *generators_;
}

Subgroup Subgroup::conjugate_by(ElemIndex g) const {
  std::vector<ElemIndex> out;
  out.reserve(elements_.size());
  for (ElemIndex h : elements_) out.push_back(parent_->conjugate(g, h));
  std::sort(out.begin(), out.end());
  return Subgroup(parent_, std::move(out));
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  if (parent_ != other.parent_) throw Error("intersection of subgroups of different groups");
  std::vector<ElemIndex> out;
  std::set_intersection(elements_.begin(), elements_.end(), other.elements_.begin(), other.elements_.end(),
                        std::back_inserter(out));
  return Subgroup(parent_, std::move(out));
}

// ---------------------------------------------------------------------------------------------

std::vector<Point> orbit(const Subgroup& g, Point x) {
  const auto& grp = *g.parent();
  if (x >= grp.degree()) throw Error("point " + std::to_string(x) + " outside the acted-on set");
  std::vector<char> seen(grp.degree(), 0);
  std::vector<Point> orb{x};
  seen[x] = 1;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (ElemIndex s : g.generators()) {
      const Point y = grp.element(s)(orb[i]);
      if (!seen[y]) {
        seen[y] = 1;
        orb.push_back(y);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

std::vector<std::vector<Point>> orbits(const Subgroup& g) {
  const std::size_t n = g.parent()->degree();
  std::vector<char> done(n, 0);
  std::vector<std::vector<Point>> out;
  for (Point x = 0; x < n; ++x) {
    if (done[x]) continue;
    auto orb = orbit(g, x);
    for (Point y : orb) done[y] = 1;
    out.push_back(std::move(orb));
  }
  return out;
}

Subgroup stabilizer(const Subgroup& g, Point x) {
  const auto& grp = *g.parent();
  if (x >= grp.degree()) throw Error("point " + std::to_string(x) + " outside the acted-on set");
  std::vector<ElemIndex> out;
  for (ElemIndex e : g.elements())
    if (grp.element(e)(x) == x) out.push_back(e);
  return Subgroup::from_elements(g.parent(), std::move(out));
}

Subgroup stabilizer(const Subgroup& g, Point a, Point b) {
  const auto& grp = *g.parent();
  std::vector<ElemIndex> out;
  for (ElemIndex e : g.elements()) {
    const Point ia = grp.element(e)(a), ib = grp.element(e)(b);
    if ((ia == a && ib == b) || (ia == b && ib == a)) out.push_back(e);
  }
  return Subgroup::from_elements(g.parent(), std::move(out));
}

bool is_normal(const Subgroup& g, const Subgroup& n) {
  if (!n.is_subgroup_of(g)) return false;
  const auto& grp = *g.parent();
  // Conjugation by generators of G preserving generators of N suffices.
  for (ElemIndex x : g.generators())
    for (ElemIndex y : n.generators())
      if (!n.contains(grp.conjugate(x, y))) return false;
  return true;
}

bool is_p_group(std::size_t order, std::uint32_t p) {
  if (order == 0) return false;
  while (order % p == 0) order /= p;
  return order == 1;
}

Subgroup sylow_subgroup(const Subgroup& g, std::uint32_t p) {
  const auto& grp = *g.parent();
  std::size_t target = 1;
  for (std::size_t r = g.order(); r % p == 0; r /= p) target *= p;

  Subgroup s = Subgroup::trivial(g.parent());
  while (s.order() < target) {
    // Some x in N_G(S) \ S with x^p in S exists whenever S is not Sylow.
    std::optional<ElemIndex> found;
    for (ElemIndex x : g.elements()) {
      if (s.contains(x)) continue;
      ElemIndex xp = FiniteGroup::identity();
      for (std::uint32_t i = 0; i < p; ++i) xp = grp.multiply(xp, x);
      if (!s.contains(xp)) continue;
      bool normalizes = true;
      for (ElemIndex y : s.generators())
        if (!s.contains(grp.conjugate(x, y))) {
          normalizes = false;
          break;
        }
      if (normalizes) {
        found = x;
        break;
      }
    }
    if (!found) throw Error("Sylow growth stalled; group data is inconsistent");
    std::vector<ElemIndex> gens = s.generators();
    gens.push_back(*found);
    s = Subgroup::generated(g.parent(), gens);
  }
  return s;
}

Subgroup p_core(const Subgroup& g, std::uint32_t p) {
  const auto& grp = *g.parent();
  if (g.order() % p != 0) return Subgroup::trivial(g.parent());
  const Subgroup s = sylow_subgroup(g, p);
  std::vector<ElemIndex> core = s.elements();
  for (ElemIndex x : g.elements()) {
    if (core.size() == 1) break;
    // keep c with x^-1 c x in S, i.e. c in x S x^-1
    const ElemIndex xi = grp.inverse(x);
    std::erase_if(core, [&](ElemIndex c) { return !s.contains(grp.conjugate(xi, c)); });
  }
  return Subgroup::from_elements(g.parent(), std::move(core));
}

std::string SemidirectWitness::failed_clause() const {
  if (!n_in_g) return "N is not contained in G";
  if (!h_in_g) return "H is not contained in G";
  if (!n_normal) return "N is not normal in G";
  if (!trivial_intersection) return "N and H intersect nontrivially";
  if (!order_product) return "|N|*|H| != |G|";
  return {};
}

SemidirectWitness is_semidirect(const Subgroup& g, const Subgroup& n, const Subgroup& h) {
  SemidirectWitness w;
  w.g_order = g.order();
  w.n_order = n.order();
  w.h_order = h.order();
  w.n_in_g = n.is_subgroup_of(g);
  w.h_in_g = h.is_subgroup_of(g);
  w.n_normal = w.n_in_g && is_normal(g, n);
  w.trivial_intersection = n.parent() == h.parent() && n.intersect(h).order() == 1;
  w.order_product = n.order() * h.order() == g.order();
  return w;
}

std::vector<std::vector<ElemIndex>> cosets(const Subgroup& g, const Subgroup& h) {
  if (!h.is_subgroup_of(g)) throw Error("coset decomposition requires H to be a subgroup of G");
  const auto& grp = *g.parent();
  std::vector<char> covered(grp.order(), 0);
  std::vector<std::vector<ElemIndex>> out;
  for (ElemIndex x : g.elements()) {
    if (covered[x]) continue;
    std::vector<ElemIndex> c;
    c.reserve(h.order());
    for (ElemIndex y : h.elements()) {
      const ElemIndex xy = grp.multiply(x, y);
      covered[xy] = 1;
      c.push_back(xy);
    }
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ElemIndex> product_set(const Subgroup& a, const Subgroup& b) {
  const auto& grp = *a.parent();
  std::vector<char> seen(grp.order(), 0);
  std::vector<ElemIndex> out;
  for (ElemIndex x : a.elements())
    for (ElemIndex y : b.elements()) {
      const ElemIndex xy = grp.multiply(x, y);
      if (!seen[xy]) {
        seen[xy] = 1;
        out.push_back(xy);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

GroupHandle as_group(const Subgroup& s) {
  std::vector<Permutation> gens;
  for (ElemIndex e : s.generators()) gens.push_back(s.parent()->element(e));
  return FiniteGroup::generate(std::move(gens), s.parent()->degree(), kDefaultGroupCap, s.parent()->char_p());
}

} // namespace fbl
