#include "fbl/building.hpp"

#include "fbl/error.hpp"
#include "fbl/field.hpp"
#include "fbl/matrix.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fbl {

std::string to_string(VertexType t) { return t == VertexType::Point ? "point" : "line"; }

Graph IncidenceGraph::graph() const {
  Graph g(types.size());
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

std::size_t IncidenceGraph::valence(Point v) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const auto& e) { return e.first == v || e.second == v; }));
}

std::optional<std::size_t> IncidenceGraph::edge_index(Point a, Point b) const {
  const std::pair<Point, Point> key = a < b ? std::pair{a, b} : std::pair{b, a};
  auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - edges.begin());
}

namespace {

using Vec = std::vector<std::uint32_t>;
using Basis = std::vector<Vec>;

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) { return FieldElem(a, p).inverse().value(); }

/// Reduced row echelon form with zero rows dropped.
Basis rref(Basis rows, std::uint32_t p) {
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < n && lead < rows.size(); ++col) {
    std::size_t piv = lead;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[lead]);
    const std::uint64_t s = inv_mod(rows[lead][col], p);
    for (auto& x : rows[lead]) x = static_cast<std::uint32_t>(x * s % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][col] == 0) continue;
      const std::uint64_t f = rows[r][col];
      for (std::size_t c = 0; c < n; ++c)
        rows[r][c] = static_cast<std::uint32_t>((rows[r][c] + p * p - f * rows[lead][c] % p) % p);
    }
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

/// Nonzero vectors of F_p^n with first nonzero coordinate 1, lexicographically ordered.
std::vector<Vec> projective_points(std::size_t n, std::uint32_t p) {
  std::vector<Vec> out;
  Vec v(n, 0);
  while (true) {
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++v[pos] < p) break;
      v[pos] = 0;
      if (pos == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
    const auto first = std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
    if (first != v.end() && *first == 1) out.push_back(v);
  }
}

/// Bilinear form x^T J y for the antidiagonal alternating form on F_p^4.
std::uint32_t symplectic_form(const Vec& x, const Vec& y, std::uint32_t p) {
  const std::int64_t v = std::int64_t{x[0]} * y[3] + std::int64_t{x[1]} * y[2] - std::int64_t{x[2]} * y[1] -
                         std::int64_t{x[3]} * y[0];
  return FieldElem(v, p).value();
}

Matrix symplectic_gram(std::uint32_t p) {
  const std::int64_t e[16] = {0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0};
  return Matrix(4, p, e);
}

struct Geometry {
  std::vector<Vec> points;
  std::vector<Basis> lines;
};

BuildingData assemble(const Geometry& geo, const std::vector<Matrix>& gens, std::uint32_t p) {
  const std::size_t np = geo.points.size();
  std::map<Vec, Point> point_index;
  for (std::size_t i = 0; i < np; ++i) point_index.emplace(geo.points[i], static_cast<Point>(i));
  std::map<Basis, Point> line_index;
  for (std::size_t i = 0; i < geo.lines.size(); ++i) line_index.emplace(geo.lines[i], static_cast<Point>(np + i));

  BuildingData out;
  out.graph.char_p = p;
  out.graph.types.assign(np, VertexType::Point);
  out.graph.types.resize(np + geo.lines.size(), VertexType::Line);
  for (const auto& v : geo.points) out.subspaces.push_back({v});
  for (const auto& l : geo.lines) out.subspaces.push_back(l);

  const std::size_t n = geo.points.front().size();
  for (std::size_t li = 0; li < geo.lines.size(); ++li) {
    const auto& l = geo.lines[li];
    for (const auto& pt : projective_points(2, p)) {
      Vec v(n);
      for (std::size_t c = 0; c < n; ++c) v[c] = (pt[0] * l[0][c] + pt[1] * l[1][c]) % p;
      const Point a = point_index.at(rref({v}, p).front());
      out.graph.edges.emplace_back(a, static_cast<Point>(np + li));
    }
  }
  std::sort(out.graph.edges.begin(), out.graph.edges.end());

  std::set<Permutation> seen;
  for (const auto& g : gens) {
    std::vector<Point> im(out.graph.vertex_count());
    for (std::size_t i = 0; i < np; ++i) im[i] = point_index.at(rref({g.apply(geo.points[i])}, p).front());
    for (std::size_t i = 0; i < geo.lines.size(); ++i)
      im[np + i] = line_index.at(rref({g.apply(geo.lines[i][0]), g.apply(geo.lines[i][1])}, p));
    Permutation perm(std::move(im));
    if (perm.is_identity() || !seen.insert(perm).second) continue;
    out.generators.push_back(std::move(perm));
  }
  return out;
}

void check_prime(std::uint32_t q) {
  if (!is_prime(q)) throw Error("q = " + std::to_string(q) + " is not prime");
  if (q > kMaxBuildingPrime) throw CapExceeded("q = " + std::to_string(q) + " exceeds the building cap", kMaxBuildingPrime);
}

} // namespace

BuildingData build_projective_plane(std::uint32_t q) {
  check_prime(q);
  Geometry geo;
  geo.points = projective_points(3, q);
  std::set<Basis> lines;
  for (std::size_t i = 0; i < geo.points.size(); ++i)
    for (std::size_t j = i + 1; j < geo.points.size(); ++j) lines.insert(rref({geo.points[i], geo.points[j]}, q));
  geo.lines.assign(lines.begin(), lines.end());

  std::vector<Matrix> gens;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      if (r != c) gens.push_back(Matrix::elementary(3, q, r, c));
  return assemble(geo, gens, q);
}

BuildingData build_symplectic_quadrangle(std::uint32_t q) {
  check_prime(q);
  Geometry geo;
  geo.points = projective_points(4, q);
  std::set<Basis> lines;
  for (std::size_t i = 0; i < geo.points.size(); ++i)
    for (std::size_t j = i + 1; j < geo.points.size(); ++j)
      if (symplectic_form(geo.points[i], geo.points[j], q) == 0) lines.insert(rref({geo.points[i], geo.points[j]}, q));
  geo.lines.assign(lines.begin(), lines.end());

  // Root elements: unipotent matrices I + E_ij or I + E_ij + c E_kl preserving the form.
  const Matrix gram = symplectic_gram(q);
  std::vector<Matrix> gens;
  auto consider = [&](const Matrix& m) {
    if (m.transpose() * gram * m == gram && std::find(gens.begin(), gens.end(), m) == gens.end()) gens.push_back(m);
  };
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      consider(Matrix::elementary(4, q, i, j));
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l) {
          if (k == l || (k == i && l == j)) continue;
          for (std::uint32_t c = 1; c < q; ++c) {
            Matrix m = Matrix::elementary(4, q, i, j);
            m.set(k, l, m.entry(k, l) + c);
            consider(m);
          }
        }
    }
  return assemble(geo, gens, q);
}

// ---------------------------------------------------------------------------------------------

nlohmann::json building_to_json(const BuildingData& b) {
  nlohmann::json j;
  j["char_p"] = b.graph.char_p;
  auto verts = nlohmann::json::array();
  for (std::size_t i = 0; i < b.graph.vertex_count(); ++i)
    verts.push_back({{"id", i}, {"type", to_string(b.graph.types[i])}});
  j["vertices"] = std::move(verts);
  auto edges = nlohmann::json::array();
  for (const auto& [a, c] : b.graph.edges) edges.push_back({a, c});
  j["edges"] = std::move(edges);
  auto gens = nlohmann::json::array();
  for (const auto& g : b.generators) gens.push_back(std::vector<Point>(g.images().begin(), g.images().end()));
  j["generators"] = std::move(gens);
  return j;
}

std::string export_building(const BuildingData& b) { return building_to_json(b).dump(2) + "\n"; }

BuildingData building_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("document", "expected a JSON object");
  for (const char* key : {"char_p", "vertices", "edges", "generators"})
    if (!j.contains(key)) throw ParseError(key, "missing required key");

  BuildingData out;
  if (!j["char_p"].is_number_unsigned()) throw ParseError("char_p", "expected a non-negative integer");
  out.graph.char_p = j["char_p"].get<std::uint32_t>();
  if (!is_prime(out.graph.char_p)) throw ParseError("char_p", "characteristic must be prime");

  const auto& verts = j["vertices"];
  if (!verts.is_array() || verts.empty()) throw ParseError("vertices", "expected a non-empty array");
  const std::size_t n = verts.size();
  std::vector<std::optional<VertexType>> types(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rec = "vertices[" + std::to_string(i) + "]";
    const auto& v = verts[i];
    if (!v.is_object() || !v.contains("id") || !v.contains("type")) throw ParseError(rec, "expected {id, type}");
    if (!v["id"].is_number_unsigned()) throw ParseError(rec, "id must be a non-negative integer");
    const auto id = v["id"].get<std::size_t>();
    if (id >= n) throw ParseError(rec, "id " + std::to_string(id) + " out of range (ids must be 0..n-1)");
    if (types[id]) throw ParseError(rec, "duplicate id " + std::to_string(id));
    if (!v["type"].is_string()) throw ParseError(rec, "type must be a string");
    const auto t = v["type"].get<std::string>();
    if (t == "point") types[id] = VertexType::Point;
    else if (t == "line") types[id] = VertexType::Line;
    else throw ParseError(rec, "unknown vertex type '" + t + "'");
  }
  for (const auto& t : types) out.graph.types.push_back(*t);

  const auto& edges = j["edges"];
  if (!edges.is_array()) throw ParseError("edges", "expected an array");
  std::set<std::pair<Point, Point>> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string rec = "edges[" + std::to_string(i) + "]";
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
      throw ParseError(rec, "expected a pair of vertex ids");
    Point a = e[0].get<Point>(), b = e[1].get<Point>();
    if (a >= n || b >= n) throw ParseError(rec, "vertex id out of range");
    if (a == b) throw ParseError(rec, "loop edge");
    if (out.graph.types[a] == out.graph.types[b])
      throw ParseError(rec, "edge within one part (both ends are " + to_string(out.graph.types[a]) + "s)");
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) throw ParseError(rec, "duplicate edge");
  }
  out.graph.edges.assign(seen.begin(), seen.end());

  const auto& gens = j["generators"];
  if (!gens.is_array()) throw ParseError("generators", "expected an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string rec = "generators[" + std::to_string(i) + "]";
    if (!gens[i].is_array()) throw ParseError(rec, "expected an image array");
    if (gens[i].size() != n)
      throw ParseError(rec, "permutation length mismatch (" + std::to_string(gens[i].size()) + " images for " +
                                std::to_string(n) + " vertices)");
    std::vector<Point> im;
    for (const auto& x : gens[i]) {
      if (!x.is_number_unsigned()) throw ParseError(rec, "images must be vertex ids");
      im.push_back(x.get<Point>());
    }
    try {
      out.generators.emplace_back(std::move(im));
    } catch (const Error& err) {
      throw ParseError(rec, std::string("not a bijection: ") + err.what());
    }
  }
  return out;
}

BuildingData import_building(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("document", std::string("malformed JSON: ") + e.what());
  }
  return building_from_json(j);
}

BuildingData import_building_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return import_building(ss.str());
}

// ---------------------------------------------------------------------------------------------

nlohmann::json PolygonCertificate::to_json() const {
  nlohmann::json j = {{"vertex_count", vertex_count},
                      {"edge_count", edge_count},
                      {"diameter", diameter},
                      {"girth", girth},
                      {"m", m},
                      {"min_valence", min_valence},
                      {"bipartite", bipartite},
                      {"thick", thick},
                      {"opposite_valences_equal", opposite_valences_equal},
                      {"valid", valid},
                      {"violations", violations}};
  j["valences"] = {{"point", point_valence ? nlohmann::json(*point_valence) : nlohmann::json(nullptr)},
                   {"line", line_valence ? nlohmann::json(*line_valence) : nlohmann::json(nullptr)}};
  return j;
}

PolygonCertificate verify_generalized_polygon(const IncidenceGraph& g) {
  const Graph graph = g.graph();
  if (graph.vertex_count() == 0 || !graph.is_connected()) throw Error("incidence graph is disconnected");

  PolygonCertificate cert;
  cert.vertex_count = g.vertex_count();
  cert.edge_count = g.edge_count();

  cert.bipartite = true;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto [a, b] = g.edges[i];
    if (g.types[a] == g.types[b]) {
      cert.bipartite = false;
      cert.violations.push_back("edges[" + std::to_string(i) + "] = (" + std::to_string(a) + "," +
                                std::to_string(b) + ") joins two " + to_string(g.types[a]) + "s");
    }
  }

  // Diameter and girth by BFS from every vertex.
  const std::size_t n = graph.vertex_count();
  int girth = 0;
  std::vector<std::vector<int>> dist(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    dist[s] = graph.distances(s);
    cert.diameter = std::max(cert.diameter, *std::max_element(dist[s].begin(), dist[s].end()));
    std::vector<std::uint32_t> parent(n, s);
    std::vector<std::uint32_t> queue{s};
    std::vector<char> seen(n, 0);
    seen[s] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const std::uint32_t u = queue[i];
      for (std::uint32_t w : graph.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != w) {
          const int len = dist[s][u] + dist[s][w] + 1;
          if (girth == 0 || len < girth) girth = len;
        }
      }
    }
  }
  cert.girth = girth;
  cert.m = cert.diameter;

  std::vector<std::size_t> val(n);
  for (std::uint32_t v = 0; v < n; ++v) val[v] = graph.degree(v);
  cert.min_valence = *std::min_element(val.begin(), val.end());
  auto constant_on = [&](VertexType t) -> std::optional<std::size_t> {
    std::optional<std::size_t> s;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (g.types[v] != t) continue;
      if (s && *s != val[v]) return std::nullopt;
      s = val[v];
    }
    return s;
  };
  cert.point_valence = constant_on(VertexType::Point);
  cert.line_valence = constant_on(VertexType::Line);
  cert.thick = cert.min_valence >= 3;

  cert.opposite_valences_equal = true;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if (dist[a][b] == cert.m && val[a] != val[b]) cert.opposite_valences_equal = false;

  const bool allowed_m = cert.m == 3 || cert.m == 4 || cert.m == 6 || cert.m == 8;
  if (!allowed_m) cert.violations.push_back("diameter " + std::to_string(cert.m) + " is not in {3,4,6,8}");
  if (girth != 2 * cert.m)
    cert.violations.push_back("girth " + std::to_string(girth) + " != 2 * diameter " + std::to_string(2 * cert.m));
  cert.valid = cert.bipartite && allowed_m && girth == 2 * cert.m;
  return cert;
}

Graph barycentric_subdivision(const Graph& g) {
  const auto edges = g.edges();
  Graph out(g.vertex_count() + edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto mid = static_cast<std::uint32_t>(g.vertex_count() + i);
    out.add_edge(edges[i].first, mid);
    out.add_edge(edges[i].second, mid);
  }
  return out;
}

Graph barycentric_subdivision(const IncidenceGraph& g) {
  Graph out(g.vertex_count() + g.edge_count());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto mid = static_cast<std::uint32_t>(g.vertex_count() + i);
    out.add_edge(g.edges[i].first, mid);
    out.add_edge(g.edges[i].second, mid);
  }
  return out;
}

} // namespace fbl
