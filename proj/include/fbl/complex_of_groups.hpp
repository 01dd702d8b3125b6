#pragma once

#include "fbl/abstract_group.hpp"
#include "fbl/building.hpp"
#include "fbl/graph_of_groups.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fbl {

enum class Factor { None, Z2, Dihedral };
enum class Reflection { R1, R2 };

/// Local group (U^c ⋊ S) x F with F one of {1, Z2, D_k}. Labels are the U^c ⋊ S label
/// followed by one component for F when present.
struct LocalGroup {
  std::size_t copies = 0;
  Subgroup top;
  std::string top_name;
  Factor factor = Factor::None;
  std::uint32_t k = 0; ///< order of the dihedral factor
  std::shared_ptr<const SemidirectPower> plain;
  GroupPtr group;

  std::uint64_t order() const { return group->order(); }
  std::string name() const { return group->name(); }
  nlohmann::json describe() const;
};

struct CVertex {
  int color = 0;
  std::string name;
  int piece = 0;
  bool open = false;
  bool glued = false;
  LocalGroup group;
  /// 1-vertices: the Δ-vertex type covered and its valence.
  std::optional<VertexType> covers;
  std::optional<std::size_t> expected_s;
};

struct CEdge {
  std::uint32_t a = 0, b = 0;
  std::string name;
  LocalGroup group;
  /// For an edge with a Z2 factor ending at a 2-vertex: which reflection the Z2 maps to there.
  std::optional<Reflection> reflection;
  bool open = false;
};

/// Vertices ordered by colour 0, 1, 2; e[i] is the edge opposite v[i].
struct CTriangle {
  std::array<std::uint32_t, 3> v{};
  std::array<std::uint32_t, 3> e{};
  std::string name;
  LocalGroup group;
};

struct Mono {
  std::function<Label(const Label&)> map;
  std::string source, target;
  std::string kind;
};

/// Simple (twist-free) complex of groups over a {0,1,2}-coloured 2-complex.
class ComplexOfGroups {
public:
  explicit ComplexOfGroups(std::shared_ptr<const LeviData> levi, std::uint32_t k);

  const LeviData& levi() const { return *levi_; }
  std::uint32_t k() const noexcept { return k_; }
  std::string kind;

  std::vector<CVertex> vertices;
  std::vector<CEdge> edges;
  std::vector<CTriangle> triangles;

  /// (U^copies ⋊ top) x factor, with caching of the plain part.
  LocalGroup make_group(std::size_t copies, const Subgroup& top, Factor factor, std::uint32_t k = 0) const;

  std::uint32_t add_vertex(CVertex v);
  std::uint32_t add_edge(CEdge e);
  std::uint32_t add_triangle(std::uint32_t v0, std::uint32_t v1, std::uint32_t v2, LocalGroup g, std::string name);
  std::optional<std::uint32_t> find_edge(std::uint32_t a, std::uint32_t b) const;

  Mono edge_mono(std::uint32_t edge, std::uint32_t vertex) const;
  Mono triangle_edge_mono(std::uint32_t tri, std::uint32_t edge) const;
  Mono triangle_vertex_mono(std::uint32_t tri, std::uint32_t vertex) const;

  /// Replaces one triangle-to-vertex monomorphism (used for negative controls).
  void override_triangle_vertex_mono(std::uint32_t tri, std::uint32_t vertex, Mono m);

  std::vector<std::uint32_t> edges_at(std::uint32_t v) const;
  std::vector<std::uint32_t> triangles_at(std::uint32_t v) const;
  std::vector<std::uint64_t> zero_vertex_orders() const;

  /// Cells, colours, orders, group structure, monomorphisms as generator images, marks.
  nlohmann::json to_json() const;

private:
  Mono derive(const LocalGroup& src, const LocalGroup& dst, std::optional<Reflection> refl, std::string source,
              std::string target) const;

  std::shared_ptr<const LeviData> levi_;
  std::uint32_t k_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Mono> tv_overrides_;
  mutable std::map<std::pair<std::size_t, std::vector<ElemIndex>>, std::shared_ptr<const SemidirectPower>> cache_;
};

/// Upper bound on the pieces of a glued complex (labels hold at most 12 components).
inline constexpr std::size_t kMaxPieces = Label::kMaxWidth - 2;

/// G(Y_n): cone over the subdivided ray. Throws for odd k, k < 4 or n = 0.
ComplexOfGroups build_GYn(std::shared_ptr<const LeviData> d, std::uint32_t k, std::size_t n);
ComplexOfGroups build_GY1(std::shared_ptr<const LeviData> d, std::uint32_t k);

/// G(Y_1), ..., G(Y_N) glued in sequence; the far ray end of piece n+1 is identified with the
/// near end of piece n. Throws unless 4 | k and 1 <= N <= kMaxPieces.
ComplexOfGroups glue_complexes(std::shared_ptr<const LeviData> d, std::uint32_t k, std::size_t N);

/// Link of v in its local development, with each link vertex tagged by the incident edge it comes
/// from. Throws fbl::Error("inconsistent monomorphisms ...") when a triangle image escapes an edge image.
struct LocalLink {
  Graph graph;
  std::vector<std::uint32_t> source_edge;
  std::size_t duplicate_edges = 0;
};
LocalLink local_development_link(const ComplexOfGroups& c, std::uint32_t v);

struct LinkEntry {
  std::uint32_t vertex = 0;
  std::string name;
  int color = 0;
  bool open = false;
  std::string expected;
  std::string shape;
  std::size_t link_vertices = 0, link_edges = 0, duplicate_edges = 0;
  bool isomorphic = false;
  std::string error;
  Graph link;
};

struct LinkReport {
  std::vector<LinkEntry> entries;
  std::size_t delta_vertices = 0;
  std::vector<std::pair<Point, Point>> delta_edges;
  std::uint32_t k = 0;

  bool passed() const;
  std::vector<std::string> failing_cells() const;
  /// Colour -> sorted multiset of observed link shapes.
  std::map<int, std::vector<std::string>> shapes_by_color() const;
  nlohmann::json to_json() const;
};

/// Compares every vertex link with Δ′ (colour 0), K_{2,s} (colour 1) or the 2k-cycle (colour 2).
LinkReport verify_theorem_local(const ComplexOfGroups& c, const IncidenceGraph& delta, std::uint32_t k);

/// Re-derives every verdict in a LinkReport JSON from its stored link graphs.
bool recheck_link_report(const nlohmann::json& report);

/// "K_{a,b}", "C_n" or "graph(V,E)".
std::string describe_shape(const Graph& g);

struct MonoReport {
  std::size_t checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  nlohmann::json to_json() const;
};

/// Injectivity, homomorphism (on generators x all elements), and coherence
/// mono(t->v) = mono(e->v) o mono(t->e) on every element of every triangle group.
MonoReport check_monomorphisms(const ComplexOfGroups& c);

struct ReflectionReport {
  std::vector<std::string> violations;
  /// 2-vertices whose two adjacent reflection images coincide.
  std::vector<std::string> coincident;
  /// 1-vertices whose mark was removed by gluing.
  std::vector<std::string> unmarked;
  bool ok() const { return violations.empty(); }
  nlohmann::json to_json() const;
};

/// Each marked Z2 is a central direct factor of its 1-vertex group; each dihedral factor is
/// generated by the images of its adjacent marks.
ReflectionReport check_reflections(const ComplexOfGroups& c);

/// Negative controls.
void drop_reflection_factor(ComplexOfGroups& c, std::uint32_t vertex);
void corrupt_triangle_mono(ComplexOfGroups& c, std::uint32_t tri, std::uint32_t vertex);

} // namespace fbl
