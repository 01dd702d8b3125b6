#include "fbl/graph.hpp"

#include "fbl/error.hpp"

#include <algorithm>
#include <map>

namespace fbl {

std::uint32_t Graph::add_vertex() {
  adj_.emplace_back();
  return static_cast<std::uint32_t>(adj_.size() - 1);
}

void Graph::add_edge(std::uint32_t a, std::uint32_t b) {
  if (a >= adj_.size() || b >= adj_.size()) throw Error("edge endpoint out of range");
  if (a == b) throw Error("loop at vertex " + std::to_string(a));
  if (has_edge(a, b)) return;
  adj_[a].push_back(b);
  adj_[b].push_back(a);
  ++edges_;
}

bool Graph::has_edge(std::uint32_t a, std::uint32_t b) const {
  const auto& n = adj_[a];
  return std::find(n.begin(), n.end(), b) != n.end();
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(edges_);
  for (std::uint32_t a = 0; a < adj_.size(); ++a)
    for (std::uint32_t b : adj_[a])
      if (a < b) out.emplace_back(a, b);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Graph::distances(std::uint32_t source) const {
  std::vector<int> dist(adj_.size(), -1);
  std::vector<std::uint32_t> queue{source};
  dist[source] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::uint32_t w : adj_[queue[i]])
      if (dist[w] < 0) {
        dist[w] = dist[queue[i]] + 1;
        queue.push_back(w);
      }
  return dist;
}

bool Graph::is_connected() const {
  if (adj_.empty()) return true;
  const auto d = distances(0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

std::optional<std::vector<int>> Graph::bipartition() const {
  std::vector<int> side(adj_.size(), -1);
  for (std::uint32_t s = 0; s < adj_.size(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<std::uint32_t> queue{s};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::uint32_t w : adj_[queue[i]]) {
        if (side[w] < 0) {
          side[w] = 1 - side[queue[i]];
          queue.push_back(w);
        } else if (side[w] == side[queue[i]]) {
          return std::nullopt;
        }
      }
  }
  return side;
}

std::vector<std::size_t> Graph::degree_sequence() const {
  std::vector<std::size_t> d;
  for (const auto& n : adj_) d.push_back(n.size());
  std::sort(d.begin(), d.end());
  return d;
}

Graph cycle_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>((i + 1) % n));
  return g;
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) g.add_edge(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(a + j));
  return g;
}

bool is_isomorphism(const Graph& a, const Graph& b, const std::vector<std::uint32_t>& mapping) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  if (mapping.size() != a.vertex_count()) return false;
  std::vector<char> hit(b.vertex_count(), 0);
  for (std::uint32_t x : mapping) {
    if (x >= b.vertex_count() || hit[x]) return false;
    hit[x] = 1;
  }
  for (const auto& [u, v] : a.edges())
    if (!b.has_edge(mapping[u], mapping[v])) return false;
  return true;
}

namespace {

using Colouring = std::vector<std::uint32_t>;

/// Refines both colourings jointly to the coarsest common equitable partition.
/// Colour names are shared across the two graphs. Returns false if the class sizes diverge.
bool refine(const Graph& a, const Graph& b, Colouring& ca, Colouring& cb) {
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> names;
    auto signature = [](const Graph& g, const Colouring& c, std::uint32_t v) {
      std::vector<std::uint32_t> sig;
      sig.reserve(g.degree(v) + 1);
      for (std::uint32_t w : g.neighbors(v)) sig.push_back(c[w]);
      std::sort(sig.begin(), sig.end());
      sig.insert(sig.begin(), c[v]);
      return sig;
    };
    std::vector<std::vector<std::uint32_t>> sa(a.vertex_count()), sb(b.vertex_count());
    for (std::uint32_t v = 0; v < a.vertex_count(); ++v) names[sa[v] = signature(a, ca, v)] = 0;
    for (std::uint32_t v = 0; v < b.vertex_count(); ++v) names[sb[v] = signature(b, cb, v)] = 0;
    std::uint32_t next = 0;
    for (auto& [sig, id] : names) id = next++;

    std::vector<std::size_t> count_a(next, 0), count_b(next, 0);
    for (std::uint32_t v = 0; v < a.vertex_count(); ++v) ++count_a[ca[v] = names[sa[v]]];
    for (std::uint32_t v = 0; v < b.vertex_count(); ++v) ++count_b[cb[v] = names[sb[v]]];
    if (count_a != count_b) return false;
    if (names.size() == classes) return true;
    classes = names.size();
  }
}

bool search(const Graph& a, const Graph& b, Colouring ca, Colouring cb, std::vector<std::uint32_t>& out) {
  if (!refine(a, b, ca, cb)) return false;

  const std::uint32_t colours = *std::max_element(ca.begin(), ca.end()) + 1;
  std::vector<std::size_t> size(colours, 0);
  for (auto c : ca) ++size[c];

  // Smallest non-singleton class is the branching cell.
  std::optional<std::uint32_t> cell;
  for (std::uint32_t c = 0; c < colours; ++c)
    if (size[c] > 1 && (!cell || size[c] < size[*cell])) cell = c;

  if (!cell) {
    std::vector<std::uint32_t> by_colour(colours);
    for (std::uint32_t v = 0; v < b.vertex_count(); ++v) by_colour[cb[v]] = v;
    out.assign(a.vertex_count(), 0);
    for (std::uint32_t v = 0; v < a.vertex_count(); ++v) out[v] = by_colour[ca[v]];
    return is_isomorphism(a, b, out);
  }

  std::uint32_t x = 0;
  while (ca[x] != *cell) ++x;
  for (std::uint32_t y = 0; y < b.vertex_count(); ++y) {
    if (cb[y] != *cell) continue;
    Colouring na = ca, nb = cb;
    na[x] = colours;
    nb[y] = colours;
    if (search(a, b, std::move(na), std::move(nb), out)) return true;
  }
  return false;
}

} // namespace

std::optional<std::vector<std::uint32_t>> graph_isomorphic(const Graph& a, const Graph& b, std::size_t cap) {
  if (a.vertex_count() > cap || b.vertex_count() > cap)
    throw CapExceeded("graph too large for the isomorphism checker", cap);
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return std::nullopt;
  if (a.degree_sequence() != b.degree_sequence()) return std::nullopt;
  if (a.vertex_count() == 0) return std::vector<std::uint32_t>{};

  std::vector<std::uint32_t> mapping;
  if (!search(a, b, Colouring(a.vertex_count(), 0), Colouring(b.vertex_count(), 0), mapping)) return std::nullopt;
  return mapping;
}

} // namespace fbl
