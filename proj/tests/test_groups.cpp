#include "fbl/abstract_group.hpp"
#include "fbl/building.hpp"
#include "fbl/error.hpp"
#include "fbl/finite_group.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

using namespace fbl;

namespace {

GroupHandle chevalley(bool symplectic, std::uint32_t q) {
  const auto b = symplectic ? build_symplectic_quadrangle(q) : build_projective_plane(q);
  return generate_group(b.generators, b.graph.vertex_count(), kDefaultGroupCap, q);
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Orbits by repeated generator application until nothing changes.
std::vector<std::set<Point>> brute_orbits(const FiniteGroup& g) {
  std::vector<int> label(g.degree());
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& s : g.generators())
      for (Point x = 0; x < g.degree(); ++x) {
        const int a = label[x], b = label[s(x)];
        if (a != b) {
          const int lo = std::min(a, b), hi = std::max(a, b);
          for (auto& l : label)
            if (l == hi) l = lo;
          changed = true;
        }
      }
  }
  std::map<int, std::set<Point>> by;
  for (Point x = 0; x < g.degree(); ++x) by[label[x]].insert(x);
  std::vector<std::set<Point>> out;
  for (auto& [l, s] : by) out.push_back(s);
  return out;
}

// O_p(G) as the subgroup generated by the p-elements whose normal closure is a p-group.
Subgroup p_core_oracle(const Subgroup& g, std::uint32_t p) {
  const auto& grp = *g.parent();
  std::vector<ElemIndex> gens;
  for (ElemIndex x : g.elements()) {
    const auto& perm = grp.element(x);
    if (!is_p_group(perm.order(), p) || perm.is_identity()) continue;
    std::vector<ElemIndex> conj;
    for (ElemIndex y : g.elements()) conj.push_back(grp.conjugate(y, x));
    if (is_p_group(Subgroup::generated(g.parent(), conj).order(), p)) gens.push_back(x);
  }
  return Subgroup::generated(g.parent(), gens);
}

bool normal_exhaustive(const Subgroup& g, const Subgroup& n) {
  const auto& grp = *g.parent();
  for (ElemIndex x : g.elements())
    for (ElemIndex y : n.elements())
      if (!n.contains(grp.conjugate(x, y))) return false;
  return true;
}

} // namespace

TEST_CASE("generate: trivial group") {
  const auto g = generate_group({Permutation::identity(7)}, 7);
  CHECK(g->order() == 1);
  CHECK(g->identity() == 0);
}

TEST_CASE("generate: Chevalley group orders match the order formulas") {
  // |SL_3(q)| = q^3 (q^2 - 1)(q^3 - 1), centre of order gcd(3, q - 1)
  // |Sp_4(q)| = q^4 (q^2 - 1)(q^4 - 1), centre of order gcd(2, q - 1)
  for (std::uint32_t q : {2u, 3u}) {
    const std::uint64_t sl3 = ipow(q, 3) * (ipow(q, 2) - 1) * (ipow(q, 3) - 1) / std::gcd<std::uint64_t>(3, q - 1);
    const std::uint64_t sp4 = ipow(q, 4) * (ipow(q, 2) - 1) * (ipow(q, 4) - 1) / std::gcd<std::uint64_t>(2, q - 1);
    CHECK(chevalley(false, q)->order() == sl3);
    CHECK(chevalley(true, q)->order() == sp4);
  }
  CHECK(chevalley(false, 2)->order() == 168);
  CHECK(chevalley(true, 2)->order() == 720);
}

TEST_CASE("generate: cap is enforced") {
  const auto b = build_projective_plane(2);
  CHECK_THROWS_WITH_AS(generate_group(b.generators, 14, 100), doctest::Contains("100"), CapExceeded);
}

TEST_CASE("orbits agree with a brute-force partition") {
  for (bool sym : {false, true})
    for (std::uint32_t q : {2u, 3u}) {
      const auto g = chevalley(sym, q);
      const auto w = Subgroup::whole(g);
      const auto ours = orbits(w);
      const auto brute = brute_orbits(*g);
      REQUIRE(ours.size() == brute.size());
      for (std::size_t i = 0; i < ours.size(); ++i) CHECK(std::set<Point>(ours[i].begin(), ours[i].end()) == brute[i]);
      const auto P = stabilizer(w, 0);
      const auto pg = as_group(P);
      const auto po = orbits(Subgroup::whole(pg));
      const auto pb = brute_orbits(*pg);
      CHECK(po.size() == pb.size());
    }
}

TEST_CASE("orbit and stabilizer examples in SL_3(2)") {
  const auto g = chevalley(false, 2);
  const auto w = Subgroup::whole(g);
  CHECK(orbit(Subgroup::trivial(g), 5) == std::vector<Point>{5});
  const auto P = stabilizer(w, 0);
  CHECK(P.order() == 24);
  CHECK(orbit(P, 0) == std::vector<Point>{0});
  std::multiset<std::size_t> sizes;
  for (const auto& o : orbits(P)) sizes.insert(o.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 3, 4, 6});
  const auto b = build_projective_plane(2);
  const auto [a, c] = b.graph.edges.front();
  CHECK(stabilizer(w, a, c).order() == 168 / 21);
  CHECK(stabilizer(Subgroup::trivial(g), 3).order() == 1);
}

TEST_CASE("orbit-stabilizer identity on every built group") {
  for (bool sym : {false, true})
    for (std::uint32_t q : {2u, 3u}) {
      const auto g = chevalley(sym, q);
      const auto w = Subgroup::whole(g);
      for (Point x = 0; x < g->degree(); ++x) CHECK(orbit(w, x).size() * stabilizer(w, x).order() == g->order());
      const auto P = stabilizer(w, 0);
      for (Point x = 0; x < g->degree(); ++x) CHECK(orbit(P, x).size() * stabilizer(P, x).order() == P.order());
    }
}

TEST_CASE("p-core against the normal-closure oracle") {
  CHECK(p_core(Subgroup::whole(generate_group({Permutation::identity(3)}, 3)), 2).order() == 1);
  struct Case {
    bool sym;
    std::uint32_t q;
    std::size_t P, U;
  };
  for (const auto c : {Case{false, 2, 24, 4}, Case{true, 2, 48, 8}, Case{false, 3, 432, 9}, Case{true, 3, 648, 27}}) {
    const auto g = chevalley(c.sym, c.q);
    const auto P = stabilizer(Subgroup::whole(g), 0);
    CHECK(P.order() == c.P);
    const auto U = p_core(P, c.q);
    CHECK(U.order() == c.U);
    CHECK(U == p_core_oracle(P, c.q));
    CHECK(normal_exhaustive(P, U));
    CHECK(is_p_group(U.order(), c.q));
  }
  const auto g = chevalley(false, 2);
  CHECK(normal_exhaustive(Subgroup::whole(g), p_core(Subgroup::whole(g), 2)));
  CHECK(p_core(Subgroup::whole(g), 2).order() == 1); // simple group
}

TEST_CASE("semidirect witness") {
  // Z2 x Z2 on four points
  const Permutation a(std::vector<Point>{1, 0, 2, 3}), b(std::vector<Point>{0, 1, 3, 2});
  const auto g = generate_group({a, b}, 4);
  const auto w = Subgroup::whole(g);
  const auto n = Subgroup::generated(g, {*g->index_of(a)});
  const auto h = Subgroup::generated(g, {*g->index_of(b)});
  CHECK(is_semidirect(w, n, h).holds());
  const auto bad = is_semidirect(w, n, n);
  CHECK_FALSE(bad.holds());
  CHECK_FALSE(bad.failed_clause().empty());
}

TEST_CASE("cosets") {
  const auto g = chevalley(false, 2);
  const auto w = Subgroup::whole(g);
  CHECK(cosets(w, w).size() == 1);
  const auto P = stabilizer(w, 0);
  CHECK(cosets(w, P).size() == 7);
  const auto b = build_projective_plane(2);
  const auto line = b.graph.graph().neighbors(0).front();
  const auto B = stabilizer(w, 0, line);
  CHECK(cosets(P, B).size() == 3);
  const auto U = p_core(P, 2);
  CHECK(cosets(B, U).size() == 2);
  const auto other = stabilizer(w, 1);
  CHECK_THROWS_AS(cosets(P, other), Error);
  for (const auto& c : cosets(w, P)) CHECK(c.size() == P.order());
}

TEST_CASE("semidirect power orders and copies") {
  const auto g = chevalley(false, 2);
  const auto w = Subgroup::whole(g);
  const auto P = stabilizer(w, 0);
  const auto U = p_core(P, 2);
  std::vector<ElemIndex> u_elems = U.elements();
  // A complement to U in P: stabilizer of a vertex at distance 3.
  const auto dist = build_projective_plane(2).graph.graph().distances(0);
  Point far = 0;
  while (dist[far] != 3) ++far;
  const auto L = stabilizer(P, far);
  CHECK(L.order() == 6);
  CHECK(semidirect_power(U, L, 1)->order() == 24);
  const auto K = stabilizer(P, far, build_projective_plane(2).graph.graph().neighbors(far).front());
  CHECK(semidirect_power(U, K, 2)->order() == 16 * K.order());
  CHECK(semidirect_power(Subgroup::trivial(g), L, 5)->order() == L.order());

  const auto s2 = semidirect_power(U, L, 2);
  CHECK(verify_group_axioms(*semidirect_power(U, K, 1)).ok());
  // two copies of U commute, are normal and meet trivially
  for (ElemIndex x : u_elems)
    for (ElemIndex y : u_elems) {
      const Label a = s2->inject_copy(0, x), b = s2->inject_copy(1, y);
      CHECK(s2->commutes(a, b));
      if (x != FiniteGroup::identity() || y != FiniteGroup::identity()) CHECK(a != b);
    }
  for (const auto& gen : s2->generators())
    for (ElemIndex x : u_elems) {
      const Label c = s2->multiply(s2->multiply(gen, s2->inject_copy(0, x)), s2->inverse(gen));
      CHECK(c.slice(1, 2) == s2->identity().slice(1, 2));
    }
  CHECK_THROWS_AS(semidirect_power(L, P, 1), Error);
}

TEST_CASE("direct products") {
  const auto z = cyclic2();
  CHECK(direct_product(z, z)->order() == 4);
  const auto zz = direct_product(z, z);
  for (const auto& x : zz->elements()) CHECK(zz->element_order(x) <= 2);
  const auto g = generate_group({Permutation::identity(2)}, 2);
  const auto triv = std::make_shared<PermSubgroupGroup>(Subgroup::whole(g), "1");
  CHECK(direct_product(dihedral(8), triv)->order() == 8);
  CHECK(direct_product(dihedral(8), z)->order() == 16);
  CHECK(verify_group_axioms(*direct_product(dihedral(6), z)).ok());
}

TEST_CASE("dihedral groups of order k") {
  const auto d2 = dihedral(2);
  CHECK(d2->order() == 2);
  CHECK(d2->r1() == d2->r2());
  const auto d8 = dihedral(8);
  CHECK(d8->order() == 8);
  CHECK(d8->element_order(d8->multiply(d8->r1(), d8->r2())) == 4);
  const auto d4 = dihedral(4);
  for (const auto& a : d4->elements())
    for (const auto& b : d4->elements()) CHECK(d4->commutes(a, b));
  for (std::uint32_t k : {2u, 4u, 6u, 8u, 12u}) {
    const Dihedral d(k);
    CHECK(verify_group_axioms(d).ok());
    std::size_t refl = 0;
    for (const auto& x : d.elements()) refl += d.is_reflection(x) && d.element_order(x) == 2;
    CHECK(refl == k / 2);
    CHECK(generated_subgroup(d, {d.r1(), d.r2()}).size() == k);
    CHECK(d.element_order(d.multiply(d.r1(), d.r2())) == (k == 2 ? 1 : k / 2));
  }
  CHECK_THROWS_AS(dihedral(5), Error);
  CHECK_THROWS_AS(dihedral(0), Error);
}
