#include "fbl/abstract_group.hpp"

#include "fbl/error.hpp"

#include <algorithm>

namespace fbl {

Label::Label(std::initializer_list<std::uint32_t> parts) {
  for (auto v : parts) push_back(v);
}

void Label::push_back(std::uint32_t v) {
  if (width >= kMaxWidth) throw Error("element label too wide");
  c[width++] = v;
}

Label Label::concat(const Label& a, const Label& b) {
  Label out = a;
  for (std::size_t i = 0; i < b.width; ++i) out.push_back(b[i]);
  return out;
}

Label Label::slice(std::size_t first, std::size_t count) const {
  Label out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(c[first + i]);
  return out;
}

nlohmann::json Label::to_json() const {
  auto arr = nlohmann::json::array();
  for (std::size_t i = 0; i < width; ++i) arr.push_back(c[i]);
  return arr;
}

std::size_t LabelHash::operator()(const Label& l) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ l.width;
  for (std::size_t i = 0; i < l.width; ++i) {
    h ^= l.c[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t AbstractGroup::element_order(const Label& a) const {
  const Label e = identity();
  Label x = a;
  std::uint64_t n = 1;
  while (x != e) {
    x = multiply(x, a);
    ++n;
    if (n > order()) throw Error("element order exceeds group order in " + name());
  }
  return n;
}

LabelSet generated_subgroup(const AbstractGroup& g, const std::vector<Label>& gens) {
  LabelSet seen{g.identity()};
  std::vector<Label> queue{g.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& s : gens) {
      Label y = g.multiply(s, queue[i]);
      if (seen.insert(y).second) queue.push_back(y);
    }
  return seen;
}

AxiomReport verify_group_axioms(const AbstractGroup& g) {
  AxiomReport r;
  const auto elems = g.elements();
  const Label e = g.identity();
  r.closed = elems.size() == g.order();
  for (const auto& a : elems) {
    if (g.multiply(a, e) != a || g.multiply(e, a) != a) r.identity = false;
    if (g.multiply(a, g.inverse(a)) != e) r.inverses = false;
    for (const auto& b : elems) {
      const Label ab = g.multiply(a, b);
      if (!g.contains(ab)) r.closed = false;
      for (const auto& c : elems)
        if (g.multiply(ab, c) != g.multiply(a, g.multiply(b, c))) {
          r.associative = false;
          break;
        }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------------------------

PermSubgroupGroup::PermSubgroupGroup(Subgroup s, std::string name) : s_(std::move(s)), name_(std::move(name)) {}

Label PermSubgroupGroup::multiply(const Label& a, const Label& b) const {
  return {s_.parent()->multiply(a[0], b[0])};
}

Label PermSubgroupGroup::inverse(const Label& a) const { return {s_.parent()->inverse(a[0])}; }

bool PermSubgroupGroup::contains(const Label& a) const {
  return a.width == 1 && a[0] < s_.parent()->order() && s_.contains(a[0]);
}

std::vector<Label> PermSubgroupGroup::generators() const {
  std::vector<Label> out;
  for (ElemIndex g : s_.generators()) out.push_back({g});
  return out;
}

std::vector<Label> PermSubgroupGroup::elements() const {
  std::vector<Label> out;
  out.reserve(s_.order());
  for (ElemIndex g : s_.elements()) out.push_back({g});
  return out;
}

nlohmann::json PermSubgroupGroup::describe() const {
  return {{"kind", "permutation_subgroup"}, {"name", name_}, {"order", s_.order()}};
}

// ---------------------------------------------------------------------------------------------

SemidirectPower::SemidirectPower(Subgroup u, Subgroup q, std::size_t copies, std::string u_name, std::string q_name)
    : u_(std::move(u)), q_(std::move(q)), n_(copies), u_name_(std::move(u_name)), q_name_(std::move(q_name)) {
  if (u_.parent() != q_.parent()) throw Error("semidirect power factors live in different groups");
  if (n_ + 1 > Label::kMaxWidth) throw Error("semidirect power has too many copies");
  const auto& grp = *u_.parent();
  for (ElemIndex x : q_.generators())
    for (ElemIndex y : u_.generators())
      if (!u_.contains(grp.conjugate(x, y))) throw Error(q_name_ + " does not normalize " + u_name_);
}

std::uint64_t SemidirectPower::order() const {
  std::uint64_t o = q_.order();
  for (std::size_t i = 0; i < n_; ++i) o *= u_.order();
  return o;
}

Label SemidirectPower::identity() const {
  Label out;
  for (std::size_t i = 0; i <= n_; ++i) out.push_back(FiniteGroup::identity());
  return out;
}

Label SemidirectPower::inject_copy(std::size_t i, ElemIndex u) const {
  Label out = identity();
  out[i] = u;
  return out;
}

Label SemidirectPower::inject_top(ElemIndex q) const {
  Label out = identity();
  out[n_] = q;
  return out;
}

Label SemidirectPower::multiply(const Label& a, const Label& b) const {
  // (a, q)(a', q') = (a_i * q a'_i q^-1, q q')
  const auto& grp = *u_.parent();
  const ElemIndex q = a[n_];
  Label out;
  for (std::size_t i = 0; i < n_; ++i) out.push_back(grp.multiply(a[i], grp.conjugate(q, b[i])));
  out.push_back(grp.multiply(q, b[n_]));
  return out;
}

Label SemidirectPower::inverse(const Label& a) const {
  // (a, q)^-1 = (q^-1 a_i^-1 q, q^-1)
  const auto& grp = *u_.parent();
  const ElemIndex qi = grp.inverse(a[n_]);
  Label out;
  for (std::size_t i = 0; i < n_; ++i) out.push_back(grp.conjugate(qi, grp.inverse(a[i])));
  out.push_back(qi);
  return out;
}

bool SemidirectPower::contains(const Label& a) const {
  if (a.width != n_ + 1) return false;
  const std::size_t ord = u_.parent()->order();
  for (std::size_t i = 0; i < n_; ++i)
    if (a[i] >= ord || !u_.contains(a[i])) return false;
  return a[n_] < ord && q_.contains(a[n_]);
}

std::vector<Label> SemidirectPower::generators() const {
  std::vector<Label> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (ElemIndex u : u_.generators()) out.push_back(inject_copy(i, u));
  for (ElemIndex q : q_.generators()) out.push_back(inject_top(q));
  return out;
}

std::vector<Label> SemidirectPower::elements() const {
  std::vector<Label> out;
  out.reserve(order());
  Label cur = identity();
  const auto& us = u_.elements();
  const auto& qs = q_.elements();
  std::vector<std::size_t> idx(n_ + 1, 0);
  while (true) {
    for (std::size_t i = 0; i < n_; ++i) cur[i] = us[idx[i]];
    cur[n_] = qs[idx[n_]];
    out.push_back(cur);
    // odometer, last component fastest
    std::size_t pos = n_ + 1;
    while (pos > 0) {
      --pos;
      const std::size_t lim = pos == n_ ? qs.size() : us.size();
      if (++idx[pos] < lim) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

std::string SemidirectPower::name() const {
  if (n_ == 0) return q_name_;
  const std::string u = n_ == 1 ? u_name_ : u_name_ + "^" + std::to_string(n_);
  return u + " ⋊ " + q_name_;
}

nlohmann::json SemidirectPower::describe() const {
  return {{"kind", "semidirect_power"},       {"normal_factor", u_name_}, {"normal_order", u_.order()},
          {"copies", n_},                     {"top", q_name_},           {"top_order", q_.order()},
          {"order", order()},                 {"name", name()}};
}

// ---------------------------------------------------------------------------------------------

DirectProduct::DirectProduct(GroupPtr left, GroupPtr right) : left_(std::move(left)), right_(std::move(right)) {
  if (left_->width() + right_->width() > Label::kMaxWidth) throw Error("direct product labels too wide");
}

Label DirectProduct::inject_left(const Label& g) const { return Label::concat(g, right_->identity()); }
Label DirectProduct::inject_right(const Label& h) const { return Label::concat(left_->identity(), h); }
Label DirectProduct::identity() const { return Label::concat(left_->identity(), right_->identity()); }

Label DirectProduct::multiply(const Label& a, const Label& b) const {
  return Label::concat(left_->multiply(project_left(a), project_left(b)),
                       right_->multiply(project_right(a), project_right(b)));
}

Label DirectProduct::inverse(const Label& a) const {
  return Label::concat(left_->inverse(project_left(a)), right_->inverse(project_right(a)));
}

bool DirectProduct::contains(const Label& a) const {
  return a.width == width() && left_->contains(project_left(a)) && right_->contains(project_right(a));
}

std::vector<Label> DirectProduct::generators() const {
  std::vector<Label> out;
  for (const auto& g : left_->generators()) out.push_back(inject_left(g));
  for (const auto& h : right_->generators()) {
    Label x = inject_right(h);
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

std::vector<Label> DirectProduct::elements() const {
  const auto ls = left_->elements();
  const auto rs = right_->elements();
  std::vector<Label> out;
  out.reserve(ls.size() * rs.size());
  for (const auto& a : ls)
    for (const auto& b : rs) out.push_back(Label::concat(a, b));
  return out;
}

std::string DirectProduct::name() const {
  auto wrap = [](const std::string& s) { return s.find(' ') == std::string::npos ? s : "(" + s + ")"; };
  return wrap(left_->name()) + " x " + wrap(right_->name());
}

nlohmann::json DirectProduct::describe() const {
  return {{"kind", "direct_product"},
          {"left", left_->describe()},
          {"right", right_->describe()},
          {"order", order()},
          {"name", name()}};
}

// ---------------------------------------------------------------------------------------------

Dihedral::Dihedral(std::uint32_t k) : k_(k), half_(k / 2) {
  if (k < 2 || k % 2 != 0) throw Error("dihedral group order must be even and at least 2, got " + std::to_string(k));
}

Label Dihedral::r1() const { return {half_}; }
Label Dihedral::r2() const { return {(1 % half_) + half_}; }

bool Dihedral::is_reflection(const Label& a) const { return contains(a) && a[0] >= half_; }

Label Dihedral::multiply(const Label& a, const Label& b) const {
  // rot^i s^j * rot^i' s^j' = rot^(i + (-1)^j i') s^(j + j')
  const std::uint32_t i = a[0] % half_, j = a[0] / half_;
  const std::uint32_t i2 = b[0] % half_, j2 = b[0] / half_;
  const std::uint32_t rot = j == 0 ? (i + i2) % half_ : (i + half_ - i2) % half_;
  return {rot + half_ * ((j + j2) % 2)};
}

Label Dihedral::inverse(const Label& a) const {
  const std::uint32_t i = a[0] % half_, j = a[0] / half_;
  if (j == 1) return a;
  return {(half_ - i) % half_};
}

std::vector<Label> Dihedral::elements() const {
  std::vector<Label> out;
  for (std::uint32_t x = 0; x < k_; ++x) out.push_back({x});
  return out;
}

std::string Dihedral::name() const { return k_ == 2 ? "Z2" : "D_" + std::to_string(k_); }

nlohmann::json Dihedral::describe() const {
  return {{"kind", "dihedral"}, {"order", k_}, {"name", name()}, {"r1", r1().to_json()}, {"r2", r2().to_json()}};
}

// ---------------------------------------------------------------------------------------------

std::shared_ptr<const SemidirectPower> semidirect_power(const Subgroup& u, const Subgroup& q, std::size_t n,
                                                        std::string u_name, std::string q_name) {
  return std::make_shared<const SemidirectPower>(u, q, n, std::move(u_name), std::move(q_name));
}

std::shared_ptr<const DirectProduct> direct_product(GroupPtr g, GroupPtr h) {
  return std::make_shared<const DirectProduct>(std::move(g), std::move(h));
}

std::shared_ptr<const Dihedral> dihedral(std::uint32_t k) { return std::make_shared<const Dihedral>(k); }

std::shared_ptr<const Dihedral> cyclic2() { return dihedral(2); }

} // namespace fbl
