#include "fbl/error.hpp"
#include "fbl/graph_of_groups.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace fbl;
using fixtures::Family;

namespace {

std::vector<std::size_t> orders(const std::vector<Subgroup>& v) {
  std::vector<std::size_t> out;
  for (const auto& s : v) out.push_back(s.order());
  return out;
}

} // namespace

TEST_CASE("ray for the projective plane over F_2") {
  const auto& c = fixtures::get(Family::A2, 2);
  const auto& ray = c.levi->ray;
  CHECK(ray.m == 3);
  CHECK(orders(ray.vertex_groups) == std::vector<std::size_t>{24, 8, 4, 6});
  CHECK(orders(ray.edge_groups) == std::vector<std::size_t>{8, 4, 2});
  CHECK(ray.vertex_orbit_sizes == std::vector<std::size_t>{1, 3, 6, 4});
  CHECK(ray.edge_orbit_sizes == std::vector<std::size_t>{3, 6, 12});
  CHECK(ray.parabolic->order() == 24);
}

TEST_CASE("ray for the symplectic quadrangle has m edges") {
  for (std::uint32_t q : {2u, 3u}) {
    const auto& ray = fixtures::get(Family::C2, q).levi->ray;
    CHECK(ray.m == 4);
    CHECK(ray.edge_groups.size() == 4);
    CHECK(ray.vertex_groups.size() == 5);
  }
  CHECK(fixtures::get(Family::A2, 3).levi->ray.edge_groups.size() == 3);
}

TEST_CASE("ray invariants on every built case") {
  for (auto f : {Family::A2, Family::C2})
    for (std::uint32_t q : {2u, 3u}) {
      const auto& c = fixtures::get(f, q);
      const auto& ray = c.levi->ray;
      const std::size_t P = ray.parabolic->order();
      CHECK(ray.vertex_groups.front().order() == P);
      const auto dist = c.building.graph.graph().distances(ray.base_vertex);
      for (int j = 0; j <= ray.m; ++j) {
        const auto count = static_cast<std::size_t>(std::count(dist.begin(), dist.end(), j));
        CHECK(ray.vertex_orbit_sizes[j] == count);
        CHECK(P / ray.vertex_groups[j].order() == count);
        CHECK(ray.conjugators[j](ray.orbit_reps[j]) == ray.path[j]);
        CHECK(dist[ray.orbit_reps[j]] == j);
        CHECK(ray.orbit_reps[j] == static_cast<Point>(std::find(dist.begin(), dist.end(), j) - dist.begin()));
      }
      for (int j = 0; j < ray.m; ++j) {
        CHECK(ray.edge_groups[j].is_subgroup_of(ray.vertex_groups[j]));
        CHECK(ray.edge_groups[j].is_subgroup_of(ray.vertex_groups[j + 1]));
        if (j > 0) CHECK(ray.edge_groups[j].is_subgroup_of(ray.edge_groups[j - 1]));
      }
    }
}

TEST_CASE("Levi data at desk scale") {
  struct Want {
    Family f;
    std::uint32_t q;
    std::size_t P, U, L, K;
    std::vector<std::size_t> H;
  };
  for (const auto& w : {Want{Family::A2, 2, 24, 4, 6, 2, {4}}, Want{Family::C2, 2, 48, 8, 6, 2, {4, 8}},
                        Want{Family::A2, 3, 432, 9, 48, 12, {36}}, Want{Family::C2, 3, 648, 27, 24, 6, {18, 54}}}) {
    const auto& d = *fixtures::get(w.f, w.q).levi;
    CHECK(d.P.order() == w.P);
    CHECK(d.u_order() == w.U);
    CHECK(d.l_order() == w.L);
    CHECK(d.K.order() == w.K);
    CHECK(orders(d.H) == w.H);
    CHECK(d.p_decomposition.holds());
    CHECK(d.b_decomposition.holds());
    CHECK(d.b_is_product);
    CHECK(d.U.order() * d.L.order() == d.P.order());
    CHECK(d.U.intersect(d.L).order() == 1);
    const auto idx = verify_index_identity(d);
    CHECK(idx.holds);
    CHECK(idx.index_L_K == d.L.order() / d.K.order());
    CHECK(idx.index_P_B == d.P.order() / d.B.order());
    CHECK(d.name_of(d.B) == "B");
    CHECK(d.name_of(d.K) == "K_P");
  }
  const auto& d = *fixtures::get(Family::A2, 2).levi;
  CHECK(d.index_L_K == 3);
  CHECK(d.index_P_B == 3);
}

TEST_CASE("Levi projection is a retraction onto L_P") {
  for (auto f : {Family::A2, Family::C2}) {
    const auto& d = *fixtures::get(f, 2).levi;
    const auto& grp = *d.ray.parabolic;
    for (ElemIndex x : d.P.elements()) {
      CHECK(d.L.contains(d.levi_projection[x]));
      CHECK(d.U.contains(grp.multiply(x, grp.inverse(d.levi_projection[x]))));
      for (ElemIndex y : d.P.generators())
        CHECK(d.levi_projection[grp.multiply(x, y)] == grp.multiply(d.levi_projection[x], d.levi_projection[y]));
    }
    for (ElemIndex l : d.L.elements()) CHECK(d.levi_projection[l] == l);
  }
}

TEST_CASE("lemma certificate rechecks from orders alone") {
  const auto j = fixtures::get(Family::A2, 2).levi->to_json();
  CHECK(recheck_lemma_certificate(j));
  auto bad = j;
  bad["orders"]["L_P"] = 5;
  CHECK_FALSE(recheck_lemma_certificate(bad));
  auto bad2 = j;
  bad2["ray"]["vertex_orbit_sizes"][1] = 4;
  CHECK_FALSE(recheck_lemma_certificate(bad2));
  CHECK_FALSE(recheck_lemma_certificate(nlohmann::json::object()));
}

TEST_CASE("hypothesis violations are structured") {
  const auto& c = fixtures::get(Family::A2, 2);
  SUBCASE("group not transitive on distance classes") {
    const auto triv = generate_group({Permutation::identity(14)}, 14);
    try {
      quotient_graph_of_groups(c.building.graph, triv, 0);
      FAIL("expected a violation");
    } catch (const LemmaViolation& e) {
      CHECK(std::string(e.what()).find("Lemma hypothesis violated") != std::string::npos);
      CHECK(e.report().contains("vertex_orbits"));
    }
  }
  SUBCASE("thin polygon") {
    IncidenceGraph hex;
    hex.char_p = 2;
    for (int i = 0; i < 6; ++i) hex.types.push_back(i % 2 ? VertexType::Line : VertexType::Point);
    for (Point i = 0; i < 6; ++i) hex.edges.emplace_back(std::min(i, (i + 1) % 6), std::max(i, (i + 1) % 6));
    std::sort(hex.edges.begin(), hex.edges.end());
    const auto g = generate_group({Permutation(std::vector<Point>{2, 3, 4, 5, 0, 1})}, 6);
    CHECK_THROWS_AS(quotient_graph_of_groups(hex, g, 0), LemmaViolation);
  }
  SUBCASE("wrong characteristic leaves U_P trivial") {
    CHECK_THROWS_WITH_AS(levi_data(c.levi->ray, 5), doctest::Contains("U_P"), LemmaViolation);
  }
}
