#include "fbl/graph_of_groups.hpp"

#include "fbl/error.hpp"

#include <algorithm>
#include <map>

namespace fbl {

namespace {

nlohmann::json perm_json(const Permutation& g) { return std::vector<Point>(g.images().begin(), g.images().end()); }

nlohmann::json witness_json(const SemidirectWitness& w) {
  return {{"holds", w.holds()},
          {"normal", w.n_normal},
          {"trivial_intersection", w.trivial_intersection},
          {"order_product", w.order_product},
          {"orders", {{"G", w.g_order}, {"N", w.n_order}, {"H", w.h_order}}},
          {"failed_clause", w.failed_clause()}};
}

bool preserves_edges(const IncidenceGraph& delta, const Permutation& g) {
  for (const auto& [a, b] : delta.edges)
    if (!delta.edge_index(g(a), g(b))) return false;
  return true;
}

} // namespace

nlohmann::json RayOfGroups::to_json() const {
  nlohmann::json j;
  j["base_vertex"] = base_vertex;
  j["m"] = m;
  j["ambient_order"] = ambient->order();
  j["parabolic_order"] = parabolic->order();
  std::vector<std::size_t> vo, eo;
  for (const auto& s : vertex_groups) vo.push_back(s.order());
  for (const auto& s : edge_groups) eo.push_back(s.order());
  j["vertex_group_orders"] = vo;
  j["edge_group_orders"] = eo;
  j["vertex_orbit_sizes"] = vertex_orbit_sizes;
  j["edge_orbit_sizes"] = edge_orbit_sizes;
  j["orbit_reps"] = orbit_reps;
  j["path"] = path;
  auto conj = nlohmann::json::array();
  for (const auto& c : conjugators) conj.push_back(perm_json(c));
  j["conjugators"] = std::move(conj);
  std::vector<std::string> types;
  for (auto t : path_types) types.push_back(to_string(t));
  j["path_types"] = types;
  j["path_valences"] = path_valences;
  j["quotient_is_ray"] = true;
  return j;
}

RayOfGroups quotient_graph_of_groups(const IncidenceGraph& delta, const GroupHandle& group, Point base_vertex) {
  if (base_vertex >= delta.vertex_count()) throw Error("base vertex out of range");
  if (group->degree() != delta.vertex_count()) throw Error("group does not act on the building's vertices");
  const PolygonCertificate cert = verify_generalized_polygon(delta);
  if (!cert.valid) throw LemmaViolation("the building is not a generalized polygon", cert.to_json());
  if (!cert.thick) throw LemmaViolation("the generalized polygon is not thick", cert.to_json());
  for (const auto& g : group->generators())
    if (!preserves_edges(delta, g)) throw Error("a generator is not an automorphism of the building");

  RayOfGroups ray;
  ray.base_vertex = base_vertex;
  ray.m = cert.m;
  ray.ambient = group;
  const Subgroup p_in_g = stabilizer(Subgroup::whole(group), base_vertex);
  ray.parabolic = as_group(p_in_g);
  const Subgroup P = Subgroup::whole(ray.parabolic);
  const auto& pgrp = *ray.parabolic;

  const Graph graph = delta.graph();
  const std::vector<int> dist = graph.distances(base_vertex);
  const int m = ray.m;

  // Vertex orbits must be exactly the distance classes.
  nlohmann::json structure;
  const auto vorbits = orbits(P);
  std::vector<std::size_t> vsizes(m + 1, 0);
  std::vector<int> orbits_per_distance(m + 1, 0);
  bool vertex_ok = true;
  auto vjson = nlohmann::json::array();
  for (const auto& orb : vorbits) {
    const int d = dist[orb.front()];
    const bool uniform = std::all_of(orb.begin(), orb.end(), [&](Point x) { return dist[x] == d; });
    vjson.push_back({{"distance", d}, {"size", orb.size()}, {"uniform_distance", uniform}});
    if (!uniform) vertex_ok = false;
    ++orbits_per_distance[d];
    vsizes[d] = orb.size();
  }
  for (int d = 0; d <= m; ++d)
    if (orbits_per_distance[d] != 1) vertex_ok = false;
  structure["vertex_orbits"] = std::move(vjson);

  // Edge orbits: one per consecutive distance pair.
  const std::size_t ne = delta.edge_count();
  std::vector<int> edge_orbit(ne, -1);
  std::vector<std::size_t> esizes;
  std::vector<int> edge_level;
  for (std::size_t e0 = 0; e0 < ne; ++e0) {
    if (edge_orbit[e0] >= 0) continue;
    const int id = static_cast<int>(esizes.size());
    std::vector<std::size_t> queue{e0};
    edge_orbit[e0] = id;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (ElemIndex s : P.generators()) {
        const auto& g = pgrp.element(s);
        const auto [a, b] = delta.edges[queue[i]];
        const std::size_t f = *delta.edge_index(g(a), g(b));
        if (edge_orbit[f] < 0) {
          edge_orbit[f] = id;
          queue.push_back(f);
        }
      }
    esizes.push_back(queue.size());
    const auto [a, b] = delta.edges[e0];
    edge_level.push_back(std::max(dist[a], dist[b]));
  }
  bool edge_ok = static_cast<int>(esizes.size()) == m;
  auto ejson = nlohmann::json::array();
  std::vector<std::size_t> esizes_by_level(m, 0);
  for (std::size_t i = 0; i < esizes.size(); ++i) {
    ejson.push_back({{"level", edge_level[i]}, {"size", esizes[i]}});
    if (edge_level[i] < 1 || edge_level[i] > m || esizes_by_level[edge_level[i] - 1] != 0) edge_ok = false;
    else esizes_by_level[edge_level[i] - 1] = esizes[i];
  }
  structure["edge_orbits"] = std::move(ejson);
  structure["m"] = m;
  if (!vertex_ok || !edge_ok) throw LemmaViolation("quotient P\\Δ is not a ray of m edges", structure);
  ray.vertex_orbit_sizes = vsizes;
  ray.edge_orbit_sizes = esizes_by_level;

  // Representatives and the geodesic path.
  ray.orbit_reps.assign(m + 1, 0);
  for (int d = m; d >= 0; --d)
    for (Point x = static_cast<Point>(delta.vertex_count()); x-- > 0;)
      if (dist[x] == d) ray.orbit_reps[d] = x;
  ray.path = {base_vertex};
  for (int d = 1; d <= m; ++d) {
    Point best = 0;
    bool found = false;
    for (Point w : graph.neighbors(ray.path.back()))
      if (dist[w] == d && (!found || w < best)) {
        best = w;
        found = true;
      }
    ray.path.push_back(best);
  }

  for (int d = 0; d <= m; ++d) {
    const Point rep = ray.orbit_reps[d], target = ray.path[d];
    std::optional<ElemIndex> c;
    for (ElemIndex x : P.elements())
      if (pgrp.element(x)(rep) == target) {
        c = x;
        break;
      }
    if (!c) throw LemmaViolation("no conjugator in P between representatives", structure);
    ray.conjugators.push_back(pgrp.element(*c));
    ray.vertex_groups.push_back(stabilizer(P, target));
    if (stabilizer(P, rep).conjugate_by(*c) != ray.vertex_groups.back())
      throw LemmaViolation("conjugated stabilizer mismatch", structure);
  }
  for (int d = 0; d < m; ++d) ray.edge_groups.push_back(stabilizer(P, ray.path[d], ray.path[d + 1]));

  for (Point x : ray.path) {
    ray.path_types.push_back(delta.types[x]);
    ray.path_valences.push_back(graph.degree(x));
  }
  return ray;
}

// ---------------------------------------------------------------------------------------------

std::string LeviData::name_of(const Subgroup& s) const {
  if (s == P) return "P";
  if (s == K) return "K_P";
  if (s == B) return "B";
  if (s == L) return "L_P";
  if (s == U) return "U_P";
  for (std::size_t i = 0; i < H.size(); ++i)
    if (s == H[i]) return "H_" + std::to_string(i + 1);
  return "S" + std::to_string(s.order());
}

nlohmann::json LeviData::to_json() const {
  nlohmann::json j;
  j["p"] = p;
  j["m"] = ray.m;
  j["ray"] = ray.to_json();
  j["orders"] = {{"P", P.order()}, {"B", B.order()}, {"U_P", U.order()}, {"L_P", L.order()}, {"K_P", K.order()}};
  std::vector<std::size_t> h;
  for (const auto& s : H) h.push_back(s.order());
  j["orders"]["H"] = h;
  j["P_eq_U_semidirect_L"] = witness_json(p_decomposition);
  j["B_eq_U_semidirect_K"] = witness_json(b_decomposition);
  j["B_eq_U_times_K_as_sets"] = b_is_product;
  j["index_identity"] = {{"L_P:K_P", index_L_K}, {"P:B", index_P_B}, {"holds", index_L_K == index_P_B}};
  j["u_is_p_group"] = is_p_group(U.order(), p);
  return j;
}

LeviData levi_data(const RayOfGroups& ray, std::uint32_t p) {
  if (ray.m < 2) throw Error("ray too short for Levi data");
  LeviData d;
  d.ray = ray;
  d.p = p;
  d.P = Subgroup::whole(ray.parabolic);
  d.B = ray.edge_groups.front();
  d.L = ray.vertex_groups.back();
  d.K = ray.edge_groups.back();
  for (int i = 1; i <= ray.m - 2; ++i) d.H.push_back(ray.edge_groups[ray.m - 1 - i]);
  d.U = p_core(d.P, p);

  auto fail = [&](const std::string& clause) { throw LemmaViolation(clause, d.to_json()); };

  if (d.U.order() == 1) fail("U_P = O_p(P) is trivial");
  if (!is_p_group(d.U.order(), p)) fail("U_P is not a p-group");

  d.p_decomposition = is_semidirect(d.P, d.U, d.L);
  d.b_decomposition = is_semidirect(d.B, d.U, d.K);
  d.b_is_product = product_set(d.U, d.K) == d.B.elements();
  const auto idx = verify_index_identity(d);
  d.index_L_K = idx.index_L_K;
  d.index_P_B = idx.index_P_B;

  if (!d.p_decomposition.holds()) fail("P = U_P ⋊ L_P: " + d.p_decomposition.failed_clause());
  if (!d.K.is_subgroup_of(d.L)) fail("K_P is not contained in L_P");
  if (!d.U.is_subgroup_of(d.B)) fail("U_P is not contained in B");

  std::vector<Subgroup> chain{d.K};
  chain.insert(chain.end(), d.H.begin(), d.H.end());
  chain.push_back(d.B);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!chain[i].is_subgroup_of(chain[i + 1]) || chain[i].order() == chain[i + 1].order())
      fail("chain K_P < H_1 < ... < B is not strictly increasing at step " + std::to_string(i));

  if (!idx.holds) fail("[L_P:K_P] != [P:B]");
  if (!d.b_decomposition.holds()) fail("B = U_P ⋊ K_P: " + d.b_decomposition.failed_clause());
  if (!d.b_is_product) fail("B != U_P K_P as sets");

  const auto& grp = *ray.parabolic;
  d.levi_projection.assign(grp.order(), 0);
  std::vector<char> hit(grp.order(), 0);
  for (ElemIndex u : d.U.elements())
    for (ElemIndex l : d.L.elements()) {
      const ElemIndex x = grp.multiply(u, l);
      hit[x] = 1;
      d.levi_projection[x] = l;
    }
  if (std::count(hit.begin(), hit.end(), 1) != static_cast<std::ptrdiff_t>(grp.order())) fail("P != U_P L_P");
  return d;
}

IndexIdentity verify_index_identity(const LeviData& d) {
  IndexIdentity r;
  r.index_L_K = cosets(d.L, d.K).size();
  r.index_P_B = cosets(d.P, d.B).size();
  r.holds = r.index_L_K == r.index_P_B;
  return r;
}

bool recheck_lemma_certificate(const nlohmann::json& cert) {
  try {
    const auto& o = cert.at("orders");
    const std::size_t P = o.at("P"), B = o.at("B"), U = o.at("U_P"), L = o.at("L_P"), K = o.at("K_P");
    const std::uint32_t p = cert.at("p");
    if (!is_p_group(U, p) || U < 2) return false;
    if (U * L != P || U * K != B) return false;
    if (P % B != 0 || L % K != 0 || P / B != L / K) return false;
    const auto& ray = cert.at("ray");
    const auto vo = ray.at("vertex_group_orders").get<std::vector<std::size_t>>();
    const auto vs = ray.at("vertex_orbit_sizes").get<std::vector<std::size_t>>();
    const auto eo = ray.at("edge_group_orders").get<std::vector<std::size_t>>();
    const auto es = ray.at("edge_orbit_sizes").get<std::vector<std::size_t>>();
    const int m = cert.at("m");
    if (static_cast<int>(vo.size()) != m + 1 || static_cast<int>(eo.size()) != m) return false;
    for (std::size_t i = 0; i < vo.size(); ++i)
      if (vo[i] * vs[i] != P) return false;
    for (std::size_t i = 0; i < eo.size(); ++i)
      if (eo[i] * es[i] != P) return false;
    if (vo.front() != P || eo.front() != B || vo.back() != L || eo.back() != K) return false;
    return cert.at("P_eq_U_semidirect_L").at("holds").get<bool>() &&
           cert.at("B_eq_U_semidirect_K").at("holds").get<bool>() && cert.at("B_eq_U_times_K_as_sets").get<bool>();
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

} // namespace fbl
