#pragma once

#include "fbl/building.hpp"
#include "fbl/error.hpp"
#include "fbl/finite_group.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <string>
#include <vector>

namespace fbl {

/// A hypothesis of the parabolic-action analysis failed. Carries a structured report.
class LemmaViolation : public Error {
public:
  LemmaViolation(const std::string& clause, nlohmann::json report)
      : Error("Lemma hypothesis violated: " + clause), clause_(clause), report_(std::move(report)) {}
  const std::string& clause() const noexcept { return clause_; }
  const nlohmann::json& report() const noexcept { return report_; }

private:
  std::string clause_;
  nlohmann::json report_;
};

/// Quotient graph of groups for a vertex stabilizer P acting on a generalized m-gon.
///
/// The quotient is a path v_0 - v_1 - ... - v_m where v_j is the class of vertices at distance j
/// from the base vertex. Groups are stabilizers in P of a geodesic path_0 .. path_m starting at
/// the base vertex, so edge groups form a nested chain inside B = edge_groups[0].
struct RayOfGroups {
  Point base_vertex = 0;
  int m = 0;
  /// The whole group acting on the building, and P re-enumerated as its own group.
  GroupHandle ambient;
  GroupHandle parabolic;
  /// Stabilizers in P of path[j] (j = 0..m) and of the edge {path[j], path[j+1]} (j = 0..m-1).
  std::vector<Subgroup> vertex_groups;
  std::vector<Subgroup> edge_groups;
  /// Lexicographically least vertex of each distance class.
  std::vector<Point> orbit_reps;
  /// The geodesic whose stabilizers are reported.
  std::vector<Point> path;
  /// conjugators[j] lies in P and maps orbit_reps[j] to path[j].
  std::vector<Permutation> conjugators;
  std::vector<std::size_t> vertex_orbit_sizes;
  std::vector<std::size_t> edge_orbit_sizes;
  /// Types of the path vertices and the polygon valence of each.
  std::vector<VertexType> path_types;
  std::vector<std::size_t> path_valences;

  nlohmann::json to_json() const;
};

/// Computes the ray. Requires a valid, thick generalized polygon on which `group` acts.
/// Throws LemmaViolation when the quotient is not a path of m edges.
RayOfGroups quotient_graph_of_groups(const IncidenceGraph& delta, const GroupHandle& group, Point base_vertex);

/// Levi data of P: P = U_P ⋊ L_P, B = U_P ⋊ K_P, K_P < H_1 < ... < H_{m-2} < B.
struct LeviData {
  RayOfGroups ray;
  std::uint32_t p = 0;
  Subgroup P, B, U, L, K;
  /// H_1 .. H_{m-2}, increasing.
  std::vector<Subgroup> H;
  /// λ(x): the L_P-component of x in P = U_P L_P, indexed by P element.
  std::vector<ElemIndex> levi_projection;
  SemidirectWitness p_decomposition, b_decomposition;
  std::size_t index_L_K = 0, index_P_B = 0;
  /// B equals U_P K_P as element sets.
  bool b_is_product = false;

  std::size_t u_order() const { return U.order(); }
  std::size_t l_order() const { return L.order(); }
  /// Name of a ray subgroup in Levi terms ("B", "H_i", "K_P", "L_P", "P").
  std::string name_of(const Subgroup& s) const;

  nlohmann::json to_json() const;
};

/// Computes U_P = O_p(P) and verifies every Levi identity. Throws LemmaViolation naming the
/// failed clause.
LeviData levi_data(const RayOfGroups& ray, std::uint32_t p);

struct IndexIdentity {
  std::size_t index_L_K = 0;
  std::size_t index_P_B = 0;
  bool holds = false;
};

/// [L_P : K_P] = [P : B], both sides from explicit coset enumeration.
IndexIdentity verify_index_identity(const LeviData& d);

/// Orders-only recheck of a lemma certificate produced by LeviData::to_json.
bool recheck_lemma_certificate(const nlohmann::json& cert);

} // namespace fbl
