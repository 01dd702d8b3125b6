#pragma once

#include "fbl/graph.hpp"
#include "fbl/permutation.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fbl {

enum class VertexType { Point, Line };

std::string to_string(VertexType t);

/// Bipartite typed incidence graph of a rank-2 geometry. Vertex ids are 0..n-1.
struct IncidenceGraph {
  std::uint32_t char_p = 0;
  std::vector<VertexType> types;
  /// Sorted, each as (a, b) with a < b.
  std::vector<std::pair<Point, Point>> edges;

  std::size_t vertex_count() const noexcept { return types.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }
  Graph graph() const;
  std::size_t valence(Point v) const;
  std::optional<std::size_t> edge_index(Point a, Point b) const;

  bool operator==(const IncidenceGraph&) const = default;
};

/// Incidence graph plus generators of a group acting on its vertices.
struct BuildingData {
  IncidenceGraph graph;
  std::vector<Permutation> generators;
  /// Basis rows of the subspace behind each vertex (coordinatised constructions only; not serialised).
  std::vector<std::vector<std::vector<std::uint32_t>>> subspaces;
};

/// Largest field size accepted by the coordinatised constructions.
inline constexpr std::uint32_t kMaxBuildingPrime = 13;

/// PG(2, q): points and lines of F_q^3 with SL_3(F_q) generated by elementary transvections.
BuildingData build_projective_plane(std::uint32_t q);

/// W(q): isotropic points and totally isotropic lines of F_q^4 under the antidiagonal
/// alternating form, with Sp_4(F_q) generated by its root elements.
BuildingData build_symplectic_quadrangle(std::uint32_t q);

/// Parse failure naming the offending record.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string record, const std::string& message)
      : std::runtime_error(record + ": " + message), record_(std::move(record)) {}
  const std::string& record() const noexcept { return record_; }

private:
  std::string record_;
};

nlohmann::json building_to_json(const BuildingData& b);
/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string export_building(const BuildingData& b);
BuildingData building_from_json(const nlohmann::json& j);
BuildingData import_building(const std::string& text);
BuildingData import_building_file(const std::string& path);

struct PolygonCertificate {
  std::size_t vertex_count = 0, edge_count = 0;
  int diameter = 0;
  int girth = 0; ///< 0 when acyclic
  int m = 0;     ///< candidate gonality (the diameter)
  std::optional<std::size_t> point_valence, line_valence; ///< nullopt when not constant on the type
  std::size_t min_valence = 0;
  bool bipartite = false;
  bool thick = false;
  /// Vertices at distance m have equal valence.
  bool opposite_valences_equal = false;
  bool valid = false;
  std::vector<std::string> violations;

  nlohmann::json to_json() const;
};

/// Breadth-first search from every vertex; valid iff bipartite by type with diameter m,
/// girth 2m and m in {3, 4, 6, 8}. Throws fbl::Error for a disconnected graph.
PolygonCertificate verify_generalized_polygon(const IncidenceGraph& g);

/// One new vertex per edge; old vertices are 0..n-1, edge e becomes vertex n + e.
Graph barycentric_subdivision(const IncidenceGraph& g);
Graph barycentric_subdivision(const Graph& g);

} // namespace fbl
