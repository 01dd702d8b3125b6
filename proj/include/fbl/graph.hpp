#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fbl {

/// Simple undirected graph on vertices 0..n-1.
class Graph {
public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  std::uint32_t add_vertex();
  /// Ignores duplicate edges; throws on loops or out-of-range ends.
  void add_edge(std::uint32_t a, std::uint32_t b);
  bool has_edge(std::uint32_t a, std::uint32_t b) const;
  const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return adj_[v]; }
  std::size_t degree(std::uint32_t v) const { return adj_[v].size(); }
  /// Each edge once, as (a, b) with a < b, sorted.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

  /// Breadth-first distances from `source`; unreachable vertices get -1.
  std::vector<int> distances(std::uint32_t source) const;
  bool is_connected() const;
  /// Two-colouring if bipartite.
  std::optional<std::vector<int>> bipartition() const;
  std::vector<std::size_t> degree_sequence() const;

private:
  std::vector<std::vector<std::uint32_t>> adj_;
  std::size_t edges_ = 0;
};

Graph cycle_graph(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);

/// Default size cap for graph_isomorphic.
inline constexpr std::size_t kIsomorphismCap = 5000;

/// Exact isomorphism test by colour refinement plus individualisation and backtracking.
/// Returns a mapping v -> mapping[v] from `a` onto `b` when isomorphic.
/// Throws CapExceeded when either graph has more than `cap` vertices.
std::optional<std::vector<std::uint32_t>> graph_isomorphic(const Graph& a, const Graph& b,
                                                           std::size_t cap = kIsomorphismCap);

/// True iff `mapping` is a bijection carrying edges of `a` exactly onto edges of `b`.
bool is_isomorphism(const Graph& a, const Graph& b, const std::vector<std::uint32_t>& mapping);

} // namespace fbl
