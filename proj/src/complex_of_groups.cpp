#include "fbl/complex_of_groups.hpp"

#include "fbl/error.hpp"

#include <algorithm>
#include <set>

namespace fbl {

namespace {

std::string factor_name(Factor f) {
  switch (f) {
  case Factor::None: return "none";
  case Factor::Z2: return "Z2";
  case Factor::Dihedral: return "dihedral";
  }
  return "?";
}

std::string top_label(const LeviData& d, const Subgroup& s, const std::string& fallback) {
  const std::string n = d.name_of(s);
  return n[0] == 'S' ? fallback : n;
}

Label reflection_label(std::uint32_t k, Reflection r) {
  const Dihedral d(k);
  return r == Reflection::R1 ? d.r1() : d.r2();
}

LabelSet image_of(const AbstractGroup& src, const Mono& f) {
  LabelSet out;
  out.reserve(src.order());
  for (const auto& x : src.elements()) out.insert(f.map(x));
  return out;
}

} // namespace

nlohmann::json LocalGroup::describe() const {
  nlohmann::json j{{"copies_of_U", copies}, {"top", top_name},    {"top_order", top.order()},
                   {"factor", factor_name(factor)}, {"order", order()}, {"name", name()}};
  if (factor == Factor::Dihedral) j["dihedral_order"] = k;
  return j;
}

ComplexOfGroups::ComplexOfGroups(std::shared_ptr<const LeviData> levi, std::uint32_t k) : levi_(std::move(levi)), k_(k) {}

LocalGroup ComplexOfGroups::make_group(std::size_t copies, const Subgroup& top, Factor factor, std::uint32_t k) const {
  LocalGroup g;
  g.copies = copies;
  g.top = top;
  g.top_name = top_label(*levi_, top, "S" + std::to_string(top.order()));
  g.factor = factor;
  auto key = std::make_pair(copies, top.elements());
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, semidirect_power(levi_->U, top, copies, "U_P", g.top_name)).first;
  g.plain = it->second;
  switch (factor) {
  case Factor::None: g.group = g.plain; break;
  case Factor::Z2: g.group = direct_product(g.plain, cyclic2()); break;
  case Factor::Dihedral:
    g.k = k;
    g.group = direct_product(g.plain, dihedral(k));
    break;
  }
  return g;
}

std::uint32_t ComplexOfGroups::add_vertex(CVertex v) {
  vertices.push_back(std::move(v));
  return static_cast<std::uint32_t>(vertices.size() - 1);
}

std::uint32_t ComplexOfGroups::add_edge(CEdge e) {
  if (e.a >= vertices.size() || e.b >= vertices.size()) throw Error("edge endpoint out of range");
  if (vertices[e.a].color == vertices[e.b].color) throw Error("edge joins two vertices of one colour");
  if (e.name.empty()) e.name = "[" + vertices[e.a].name + "," + vertices[e.b].name + "]";
  edges.push_back(std::move(e));
  return static_cast<std::uint32_t>(edges.size() - 1);
}

std::optional<std::uint32_t> ComplexOfGroups::find_edge(std::uint32_t a, std::uint32_t b) const {
  for (std::uint32_t i = 0; i < edges.size(); ++i)
    if ((edges[i].a == a && edges[i].b == b) || (edges[i].a == b && edges[i].b == a)) return i;
  return std::nullopt;
}

std::uint32_t ComplexOfGroups::add_triangle(std::uint32_t v0, std::uint32_t v1, std::uint32_t v2, LocalGroup g,
                                            std::string name) {
  CTriangle t;
  t.v = {v0, v1, v2};
  for (int i = 0; i < 3; ++i)
    if (vertices[t.v[i]].color != i) throw Error("triangle " + name + " is not coloured 0, 1, 2");
  for (int i = 0; i < 3; ++i) {
    const auto e = find_edge(t.v[(i + 1) % 3], t.v[(i + 2) % 3]);
    if (!e) throw Error("triangle " + name + " has a missing edge");
    t.e[i] = *e;
  }
  t.name = std::move(name);
  t.group = std::move(g);
  triangles.push_back(std::move(t));
  return static_cast<std::uint32_t>(triangles.size() - 1);
}

Mono ComplexOfGroups::derive(const LocalGroup& src, const LocalGroup& dst, std::optional<Reflection> refl,
                             std::string source, std::string target) const {
  const std::string where = source + " -> " + target;
  const std::size_t c = src.copies;
  const bool lift = dst.copies == c + 1;
  if (dst.copies != c && !lift) throw Error("no canonical map " + where);
  if (!lift && !src.top.is_subgroup_of(dst.top)) throw Error("top group does not embed in " + where);
  if (lift)
    for (ElemIndex s : src.top.generators())
      if (!dst.top.contains(levi_->levi_projection[s])) throw Error("Levi image does not embed in " + where);

  std::optional<std::uint32_t> factor_value; // fixed factor label for src none / reflection
  bool copy_factor = false;
  std::uint32_t refl_label = 0;
  switch (dst.factor) {
  case Factor::None:
    if (src.factor != Factor::None) throw Error("factor cannot be dropped in " + where);
    break;
  case Factor::Z2:
    if (src.factor == Factor::None) factor_value = 0;
    else if (src.factor == Factor::Z2) copy_factor = true;
    else throw Error("dihedral factor cannot map to Z2 in " + where);
    break;
  case Factor::Dihedral:
    if (src.factor == Factor::None) factor_value = 0;
    else if (src.factor == Factor::Dihedral) {
      if (src.k != dst.k) throw Error("dihedral orders differ in " + where);
      copy_factor = true;
    } else {
      if (!refl) throw Error("no reflection specified for " + where);
      refl_label = reflection_label(dst.k, *refl)[0];
    }
    break;
  }

  Mono m;
  m.source = std::move(source);
  m.target = std::move(target);
  m.kind = std::string(lift ? "diagonal" : "inclusion") + ", factor " + factor_name(src.factor) + "->" +
           factor_name(dst.factor);
  const auto grp = levi_->ray.parabolic;
  const auto* lambda = &levi_->levi_projection;
  const bool z2_to_dihedral = src.factor == Factor::Z2 && dst.factor == Factor::Dihedral;
  m.map = [=](const Label& x) {
    Label out;
    if (!lift) {
      out = x.slice(0, c + 1);
    } else {
      const ElemIndex s = x[c];
      const ElemIndex l = (*lambda)[s];
      const ElemIndex us = grp->multiply(s, grp->inverse(l));
      for (std::size_t i = 0; i < c; ++i) out.push_back(grp->multiply(x[i], us));
      out.push_back(us);
      out.push_back(l);
    }
    if (factor_value) out.push_back(*factor_value);
    else if (copy_factor) out.push_back(x[c + 1]);
    else if (z2_to_dihedral) out.push_back(x[c + 1] ? refl_label : 0);
    return out;
  };
  return m;
}

Mono ComplexOfGroups::edge_mono(std::uint32_t edge, std::uint32_t vertex) const {
  const auto& e = edges.at(edge);
  if (e.a != vertex && e.b != vertex) throw Error("vertex is not an end of " + e.name);
  const auto& v = vertices[vertex];
  return derive(e.group, v.group, v.color == 2 ? e.reflection : std::nullopt, e.name, v.name);
}

Mono ComplexOfGroups::triangle_edge_mono(std::uint32_t tri, std::uint32_t edge) const {
  const auto& t = triangles.at(tri);
  if (std::find(t.e.begin(), t.e.end(), edge) == t.e.end()) throw Error("edge is not a face of " + t.name);
  return derive(t.group, edges[edge].group, std::nullopt, t.name, edges[edge].name);
}

Mono ComplexOfGroups::triangle_vertex_mono(std::uint32_t tri, std::uint32_t vertex) const {
  if (auto it = tv_overrides_.find({tri, vertex}); it != tv_overrides_.end()) return it->second;
  const auto& t = triangles.at(tri);
  if (std::find(t.v.begin(), t.v.end(), vertex) == t.v.end()) throw Error("vertex is not a face of " + t.name);
  return derive(t.group, vertices[vertex].group, std::nullopt, t.name, vertices[vertex].name);
}

void ComplexOfGroups::override_triangle_vertex_mono(std::uint32_t tri, std::uint32_t vertex, Mono m) {
  tv_overrides_[{tri, vertex}] = std::move(m);
}

std::vector<std::uint32_t> ComplexOfGroups::edges_at(std::uint32_t v) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < edges.size(); ++i)
    if (edges[i].a == v || edges[i].b == v) out.push_back(i);
  return out;
}

std::vector<std::uint32_t> ComplexOfGroups::triangles_at(std::uint32_t v) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < triangles.size(); ++i)
    if (std::find(triangles[i].v.begin(), triangles[i].v.end(), v) != triangles[i].v.end()) out.push_back(i);
  return out;
}

std::vector<std::uint64_t> ComplexOfGroups::zero_vertex_orders() const {
  std::vector<std::uint64_t> out;
  for (const auto& v : vertices)
    if (v.color == 0) out.push_back(v.group.order());
  return out;
}

namespace {

nlohmann::json mono_json(const Mono& m, const AbstractGroup& src) {
  auto images = nlohmann::json::array();
  for (const auto& g : src.generators()) images.push_back({g.to_json(), m.map(g).to_json()});
  return {{"source", m.source}, {"target", m.target}, {"kind", m.kind}, {"generator_images", images}};
}

} // namespace

nlohmann::json ComplexOfGroups::to_json() const {
  nlohmann::json j;
  j["kind"] = kind;
  j["k"] = k_;
  j["U_P_order"] = levi_->u_order();
  j["L_P_order"] = levi_->l_order();
  auto vs = nlohmann::json::array();
  for (std::uint32_t i = 0; i < vertices.size(); ++i) {
    const auto& v = vertices[i];
    nlohmann::json o{{"id", i},       {"name", v.name},   {"color", v.color},          {"piece", v.piece},
                     {"open", v.open}, {"glued", v.glued}, {"group", v.group.describe()}};
    if (v.covers) o["covers"] = to_string(*v.covers);
    if (v.expected_s) o["expected_s"] = *v.expected_s;
    if (v.color == 1) {
      if (v.group.factor == Factor::Z2) {
        Label mark = v.group.plain->identity();
        mark.push_back(1);
        o["reflection_mark"] = mark.to_json();
      } else {
        o["reflection_mark"] = nullptr;
      }
    }
    vs.push_back(std::move(o));
  }
  j["vertices"] = std::move(vs);
  auto es = nlohmann::json::array();
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    nlohmann::json o{{"id", i}, {"name", e.name}, {"ends", {e.a, e.b}}, {"open", e.open}, {"group", e.group.describe()}};
    if (e.reflection) o["reflection"] = *e.reflection == Reflection::R1 ? "r1" : "r2";
    o["monomorphisms"] = {mono_json(edge_mono(i, e.a), *e.group.group), mono_json(edge_mono(i, e.b), *e.group.group)};
    es.push_back(std::move(o));
  }
  j["edges"] = std::move(es);
  auto ts = nlohmann::json::array();
  for (std::uint32_t i = 0; i < triangles.size(); ++i) {
    const auto& t = triangles[i];
    nlohmann::json o{{"id", i}, {"name", t.name}, {"vertices", t.v}, {"edges", t.e}, {"group", t.group.describe()}};
    auto monos = nlohmann::json::array();
    for (auto e : t.e) monos.push_back(mono_json(triangle_edge_mono(i, e), *t.group.group));
    for (auto v : t.v) monos.push_back(mono_json(triangle_vertex_mono(i, v), *t.group.group));
    o["monomorphisms"] = std::move(monos);
    ts.push_back(std::move(o));
  }
  j["triangles"] = std::move(ts);
  j["zero_vertex_orders"] = zero_vertex_orders();
  j["reflections_on_00_edges"] = "not constructed";
  return j;
}

// ---------------------------------------------------------------------------------------------
// Construction

namespace {

struct PieceEnds {
  std::uint32_t v0 = 0, e1 = 0, edge = 0;
};

std::string cell(std::size_t n, const std::string& s) { return "Y" + std::to_string(n) + "." + s; }

/// Adds piece n. When `far` is set, the far ray end (v_m, e_m and their edge) reuses those cells.
PieceEnds add_piece(ComplexOfGroups& c, std::size_t n, std::uint32_t k, std::optional<PieceEnds> far) {
  const LeviData& d = c.levi();
  const RayOfGroups& ray = d.ray;
  const int m = ray.m;
  const int piece = static_cast<int>(n);

  auto vertex_plain = [&](int j) {
    if (j == 0) return c.make_group(n, d.L, Factor::None);
    if (j == 1) return c.make_group(n, d.K, Factor::None);
    if (j == m) return c.make_group(n - 1, d.L, Factor::None);
    return c.make_group(n - 1, ray.vertex_groups[j], Factor::None);
  };
  auto edge_plain = [&](int j) { // edge e_j joins v_{j-1} and v_j
    if (j == 1) return c.make_group(n, d.K, Factor::None);
    return c.make_group(n - 1, ray.edge_groups[j - 1], Factor::None);
  };
  auto with = [&](const LocalGroup& g, Factor f, std::uint32_t kk = 0) { return c.make_group(g.copies, g.top, f, kk); };

  CVertex cone;
  cone.color = 0;
  cone.name = cell(n, "c");
  cone.piece = piece;
  cone.group = c.make_group(n, d.L, Factor::None);
  const std::uint32_t cid = c.add_vertex(std::move(cone));

  std::vector<std::uint32_t> vid(m + 1), eid(m + 1);
  for (int j = 0; j <= m; ++j) {
    if (far && j == m) {
      vid[j] = far->v0;
      continue;
    }
    CVertex v;
    v.color = 1;
    v.name = cell(n, "v" + std::to_string(j));
    v.piece = piece;
    v.group = with(vertex_plain(j), Factor::Z2);
    v.covers = ray.path_types[j];
    v.expected_s = ray.path_valences[j];
    vid[j] = c.add_vertex(std::move(v));
  }
  for (int j = 1; j <= m; ++j) {
    if (far && j == m) {
      eid[j] = far->e1;
      continue;
    }
    CVertex e;
    e.color = 2;
    e.name = cell(n, "e" + std::to_string(j));
    e.piece = piece;
    e.group = with(edge_plain(j), Factor::Dihedral, k);
    eid[j] = c.add_vertex(std::move(e));
  }

  for (int j = 0; j <= m; ++j) {
    CEdge e;
    e.a = cid;
    e.b = vid[j];
    e.group = vertex_plain(j);
    c.add_edge(std::move(e));
  }
  for (int j = 1; j <= m; ++j) {
    CEdge e;
    e.a = cid;
    e.b = eid[j];
    e.group = edge_plain(j);
    c.add_edge(std::move(e));
    for (int side = 0; side < 2; ++side) {
      if (far && j == m && side == 1) continue; // reuses the glued edge
      CEdge f;
      f.a = vid[j - 1 + side];
      f.b = eid[j];
      f.group = with(edge_plain(j), Factor::Z2);
      f.reflection = side == 0 ? Reflection::R1 : Reflection::R2;
      c.add_edge(std::move(f));
    }
  }
  for (int j = 1; j <= m; ++j)
    for (int side = 0; side < 2; ++side)
      c.add_triangle(cid, vid[j - 1 + side], eid[j], edge_plain(j),
                     cell(n, "(c,v" + std::to_string(j - 1 + side) + ",e" + std::to_string(j) + ")"));

  PieceEnds ends;
  ends.v0 = vid[0];
  ends.e1 = eid[1];
  ends.edge = *c.find_edge(vid[0], eid[1]);
  return ends;
}

void check_k(std::uint32_t k) {
  if (k < 4 || k % 2 != 0) throw Error("k must be even and at least 4");
}

} // namespace

ComplexOfGroups build_GYn(std::shared_ptr<const LeviData> d, std::uint32_t k, std::size_t n) {
  check_k(k);
  if (n == 0) throw Error("n must be at least 1");
  if (n > kMaxPieces) throw Error("n exceeds the supported maximum " + std::to_string(kMaxPieces));
  ComplexOfGroups c(std::move(d), k);
  c.kind = "G(Y_" + std::to_string(n) + ")";
  add_piece(c, n, k, std::nullopt);
  return c;
}

ComplexOfGroups build_GY1(std::shared_ptr<const LeviData> d, std::uint32_t k) { return build_GYn(std::move(d), k, 1); }

ComplexOfGroups glue_complexes(std::shared_ptr<const LeviData> d, std::uint32_t k, std::size_t N) {
  check_k(k);
  if (k % 4 != 0) throw Error("k must be divisible by 4");
  if (N == 0) throw Error("N must be at least 1");
  if (N > kMaxPieces) throw Error("N exceeds the supported maximum " + std::to_string(kMaxPieces));
  ComplexOfGroups c(std::move(d), k);
  c.kind = N == 1 ? "G(Y_1)" : "glued G(Y_1..Y_" + std::to_string(N) + ")";
  const LeviData& lv = c.levi();
  PieceEnds ends = add_piece(c, 1, k, std::nullopt);
  for (std::size_t n = 1; n < N; ++n) {
    const PieceEnds prev = ends;
    ends = add_piece(c, n + 1, k, prev);
    const std::string tag = "=" + cell(n + 1, "");
    auto& w = c.vertices[prev.v0];
    w.group = c.make_group(n, lv.L, Factor::None);
    w.glued = true;
    w.name += tag + "v" + std::to_string(lv.ray.m);
    auto& g = c.vertices[prev.e1];
    g.group = c.make_group(n, lv.K, Factor::Dihedral, k / 2);
    g.glued = true;
    g.name += tag + "e" + std::to_string(lv.ray.m);
    auto& f = c.edges[prev.edge];
    f.group = c.make_group(n, lv.K, Factor::None);
    f.reflection.reset();
  }
  if (N > 1) {
    c.vertices[ends.v0].open = true;
    c.vertices[ends.e1].open = true;
    c.edges[ends.edge].open = true;
  }
  for (auto& e : c.edges) e.name = "[" + c.vertices[e.a].name + "," + c.vertices[e.b].name + "]";
  return c;
}

// ---------------------------------------------------------------------------------------------
// Local developments

namespace {

/// Left cosets x·I of an image I inside G, enumerated by left multiplication with generators.
struct CosetSpace {
  const AbstractGroup* group = nullptr;
  const LabelSet* image = nullptr;
  std::vector<Label> reps, inverse_reps;

  std::optional<std::size_t> locate(const Label& x) const {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (image->count(group->multiply(inverse_reps[i], x))) return i;
    return std::nullopt;
  }

  void enumerate(const std::vector<Label>& gens) {
    reps = {group->identity()};
    inverse_reps = {group->identity()};
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (const auto& g : gens) {
        Label y = group->multiply(g, reps[i]);
        if (!locate(y)) {
          inverse_reps.push_back(group->inverse(y));
          reps.push_back(std::move(y));
        }
      }
  }
};

} // namespace

LocalLink local_development_link(const ComplexOfGroups& c, std::uint32_t v) {
  const auto& vert = c.vertices.at(v);
  const AbstractGroup& G = *vert.group.group;
  const auto gens = G.generators();

  const auto inc = c.edges_at(v);
  std::map<std::uint32_t, LabelSet> images;
  std::map<std::uint32_t, CosetSpace> spaces;
  std::map<std::uint32_t, std::uint32_t> offset;
  LocalLink out;
  for (auto e : inc) {
    const auto& src = *c.edges[e].group.group;
    images[e] = image_of(src, c.edge_mono(e, v));
    if (images[e].size() != src.order()) throw Error("monomorphism " + c.edges[e].name + " -> " + vert.name + " is not injective");
  }
  for (auto e : inc) {
    auto& sp = spaces[e];
    sp.group = &G;
    sp.image = &images[e];
    sp.enumerate(gens);
    if (sp.reps.size() * images[e].size() != G.order())
      throw Error("coset count mismatch for " + c.edges[e].name + " in " + vert.name);
    offset[e] = static_cast<std::uint32_t>(out.source_edge.size());
    for (std::size_t i = 0; i < sp.reps.size(); ++i) out.source_edge.push_back(e);
  }
  out.graph = Graph(out.source_edge.size());

  for (auto t : c.triangles_at(v)) {
    const auto& tri = c.triangles[t];
    const auto& src = *tri.group.group;
    const LabelSet img = image_of(src, c.triangle_vertex_mono(t, v));
    std::vector<std::uint32_t> sides;
    for (int i = 0; i < 3; ++i)
      if (tri.v[i] != v) sides.push_back(tri.e[i]);
    for (auto e : sides)
      for (const auto& x : img)
        if (!images[e].count(x))
          throw Error("inconsistent monomorphisms: image of " + tri.name + " in " + vert.name + " is not inside the image of " +
                      c.edges[e].name);
    CosetSpace sp;
    sp.group = &G;
    sp.image = &img;
    sp.enumerate(gens);
    for (const auto& x : sp.reps) {
      const auto a = offset[sides[0]] + static_cast<std::uint32_t>(*spaces[sides[0]].locate(x));
      const auto b = offset[sides[1]] + static_cast<std::uint32_t>(*spaces[sides[1]].locate(x));
      if (out.graph.has_edge(a, b)) ++out.duplicate_edges;
      else out.graph.add_edge(a, b);
    }
  }
  return out;
}

std::string describe_shape(const Graph& g) {
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  const auto degrees = g.degree_sequence();
  if (n >= 3 && m == n && g.is_connected() && std::all_of(degrees.begin(), degrees.end(), [](std::size_t d) { return d == 2; }))
    return "C_" + std::to_string(n);
  if (n > 0 && g.is_connected()) {
    if (const auto side = g.bipartition()) {
      const std::size_t a = static_cast<std::size_t>(std::count(side->begin(), side->end(), 0));
      const std::size_t lo = std::min(a, n - a), hi = std::max(a, n - a);
      if (lo * hi == m) return "K_{" + std::to_string(lo) + "," + std::to_string(hi) + "}";
    }
  }
  return "graph(" + std::to_string(n) + "," + std::to_string(m) + ")";
}

namespace {

Graph delta_graph(std::size_t n, const std::vector<std::pair<Point, Point>>& edges) {
  Graph g(n);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

struct ExpectedModel {
  std::string text;
  Graph graph;
};

ExpectedModel expected_model(int color, std::size_t s, std::uint32_t k, const Graph& delta_subdivided) {
  switch (color) {
  case 0: return {"barycentric subdivision of the building", delta_subdivided};
  case 1: return {"K_{2," + std::to_string(s) + "}", complete_bipartite(2, s)};
  default: return {"C_" + std::to_string(2 * k), cycle_graph(2 * k)};
  }
}

} // namespace

bool LinkReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const LinkEntry& e) { return e.isomorphic; });
}

std::vector<std::string> LinkReport::failing_cells() const {
  std::vector<std::string> out;
  for (const auto& e : entries)
    if (!e.isomorphic) out.push_back(e.name);
  return out;
}

std::map<int, std::vector<std::string>> LinkReport::shapes_by_color() const {
  std::map<int, std::vector<std::string>> out;
  for (const auto& e : entries) out[e.color].push_back(e.shape);
  for (auto& [c, v] : out) std::sort(v.begin(), v.end());
  return out;
}

nlohmann::json LinkReport::to_json() const {
  nlohmann::json j;
  j["passed"] = passed();
  j["k"] = k;
  j["building"] = {{"vertex_count", delta_vertices}, {"edges", delta_edges}};
  auto es = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json o{{"vertex", e.vertex},
                     {"name", e.name},
                     {"color", e.color},
                     {"open", e.open},
                     {"expected", e.expected},
                     {"shape", e.shape},
                     {"link_vertex_count", e.link_vertices},
                     {"link_edge_count", e.link_edges},
                     {"duplicate_edges", e.duplicate_edges},
                     {"isomorphic", e.isomorphic},
                     {"link_edges", e.link.edges()}};
    if (!e.error.empty()) o["error"] = e.error;
    es.push_back(std::move(o));
  }
  j["vertices"] = std::move(es);
  j["failing_cells"] = failing_cells();
  return j;
}

LinkReport verify_theorem_local(const ComplexOfGroups& c, const IncidenceGraph& delta, std::uint32_t k) {
  LinkReport r;
  r.k = k;
  r.delta_vertices = delta.vertex_count();
  r.delta_edges = delta.edges;
  const Graph sub = barycentric_subdivision(delta);
  for (std::uint32_t v = 0; v < c.vertices.size(); ++v) {
    const auto& vert = c.vertices[v];
    LinkEntry e;
    e.vertex = v;
    e.name = vert.name;
    e.color = vert.color;
    e.open = vert.open;
    const auto model = expected_model(vert.color, vert.expected_s.value_or(0), k, sub);
    e.expected = model.text;
    try {
      auto link = local_development_link(c, v);
      e.link = std::move(link.graph);
      e.duplicate_edges = link.duplicate_edges;
      e.link_vertices = e.link.vertex_count();
      e.link_edges = e.link.edge_count();
      e.isomorphic = e.duplicate_edges == 0 && graph_isomorphic(e.link, model.graph).has_value();
      e.shape = vert.color == 0 && e.isomorphic ? "subdivided building" : describe_shape(e.link);
    } catch (const Error& err) {
      e.error = err.what();
      e.shape = "error";
      e.isomorphic = false;
    }
    r.entries.push_back(std::move(e));
  }
  return r;
}

bool recheck_link_report(const nlohmann::json& report) {
  try {
    const std::uint32_t k = report.at("k");
    const auto& b = report.at("building");
    const Graph sub =
        barycentric_subdivision(delta_graph(b.at("vertex_count"), b.at("edges").get<std::vector<std::pair<Point, Point>>>()));
    bool all = true;
    for (const auto& e : report.at("vertices")) {
      const int color = e.at("color");
      const std::size_t n = e.at("link_vertex_count");
      std::size_t s = 0;
      if (color == 1) {
        const std::string exp = e.at("expected");
        s = std::stoul(exp.substr(exp.find(',') + 1));
      }
      Graph link(n);
      for (const auto& [x, y] : e.at("link_edges").get<std::vector<std::pair<std::uint32_t, std::uint32_t>>>()) link.add_edge(x, y);
      const bool iso = e.at("duplicate_edges").get<std::size_t>() == 0 && !e.contains("error") &&
                       graph_isomorphic(link, expected_model(color, s, k, sub).graph).has_value();
      if (iso != e.at("isomorphic").get<bool>()) return false;
      all = all && iso;
    }
    return all == report.at("passed").get<bool>();
  } catch (const nlohmann::json::exception&) {
    return false;
  } catch (const std::logic_error&) {
    return false;
  }
}

// ---------------------------------------------------------------------------------------------
// Monomorphism and reflection checks

nlohmann::json MonoReport::to_json() const { return {{"ok", ok()}, {"checked", checked}, {"violations", violations}}; }

namespace {

void check_one(const Mono& f, const AbstractGroup& src, const AbstractGroup& dst, MonoReport& r) {
  ++r.checked;
  const auto elems = src.elements();
  LabelSet seen;
  seen.reserve(elems.size());
  std::vector<Label> img;
  img.reserve(elems.size());
  for (const auto& x : elems) {
    img.push_back(f.map(x));
    if (!dst.contains(img.back())) {
      r.violations.push_back(f.source + " -> " + f.target + ": image outside the target group");
      return;
    }
    seen.insert(img.back());
  }
  if (seen.size() != elems.size()) {
    r.violations.push_back(f.source + " -> " + f.target + ": not injective");
    return;
  }
  for (const auto& g : src.generators()) {
    const Label fg = f.map(g);
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (f.map(src.multiply(g, elems[i])) != dst.multiply(fg, img[i])) {
        r.violations.push_back(f.source + " -> " + f.target + ": not a homomorphism");
        return;
      }
  }
}

} // namespace

MonoReport check_monomorphisms(const ComplexOfGroups& c) {
  MonoReport r;
  for (std::uint32_t e = 0; e < c.edges.size(); ++e)
    for (auto v : {c.edges[e].a, c.edges[e].b})
      check_one(c.edge_mono(e, v), *c.edges[e].group.group, *c.vertices[v].group.group, r);
  for (std::uint32_t t = 0; t < c.triangles.size(); ++t) {
    const auto& tri = c.triangles[t];
    const auto& src = *tri.group.group;
    for (auto e : tri.e) check_one(c.triangle_edge_mono(t, e), src, *c.edges[e].group.group, r);
    for (auto v : tri.v) check_one(c.triangle_vertex_mono(t, v), src, *c.vertices[v].group.group, r);
    const auto elems = src.elements();
    for (int i = 0; i < 3; ++i) {
      const auto v = tri.v[i];
      const Mono tv = c.triangle_vertex_mono(t, v);
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        const auto e = tri.e[j];
        const Mono te = c.triangle_edge_mono(t, e), ev = c.edge_mono(e, v);
        ++r.checked;
        for (const auto& x : elems)
          if (tv.map(x) != ev.map(te.map(x))) {
            r.violations.push_back("triangle " + tri.name + " -> " + c.vertices[v].name + " is incoherent through edge " +
                                   c.edges[e].name);
            break;
          }
      }
    }
  }
  return r;
}

nlohmann::json ReflectionReport::to_json() const {
  return {{"ok", ok()},
          {"violations", violations},
          {"coincident_reflections", coincident},
          {"marks_removed_by_gluing", unmarked},
          {"reflections_on_00_edges", "not constructed (unverified)"}};
}

ReflectionReport check_reflections(const ComplexOfGroups& c) {
  ReflectionReport r;
  auto mark_of = [](const LocalGroup& g) {
    Label m = g.plain->identity();
    m.push_back(1);
    return m;
  };
  for (std::uint32_t v = 0; v < c.vertices.size(); ++v) {
    const auto& vert = c.vertices[v];
    const AbstractGroup& G = *vert.group.group;
    if (vert.color == 1) {
      if (vert.group.factor != Factor::Z2) {
        if (vert.glued) r.unmarked.push_back(vert.name);
        else r.violations.push_back(vert.name + ": 1-vertex without a reflection mark");
        continue;
      }
      const Label mark = mark_of(vert.group);
      if (G.element_order(mark) != 2) r.violations.push_back(vert.name + ": mark does not have order 2");
      for (const auto& g : G.generators())
        if (!G.commutes(g, mark)) {
          r.violations.push_back(vert.name + ": mark is not central");
          break;
        }
      bool complemented = false;
      for (auto e : c.edges_at(v)) {
        if (c.edges[e].group.factor != Factor::None) continue;
        const LabelSet img = image_of(*c.edges[e].group.group, c.edge_mono(e, v));
        if (!img.count(mark) && img.size() * 2 == G.order()) complemented = true;
      }
      if (!complemented) r.violations.push_back(vert.name + ": mark is not a direct factor");
    } else if (vert.color == 2) {
      if (vert.group.factor != Factor::Dihedral) {
        r.violations.push_back(vert.name + ": 2-vertex without a dihedral factor");
        continue;
      }
      const Dihedral D(vert.group.k);
      std::vector<Label> refl;
      for (auto e : c.edges_at(v)) {
        const auto& edge = c.edges[e];
        if (edge.group.factor != Factor::Z2) continue;
        const std::uint32_t u = edge.a == v ? edge.b : edge.a;
        const Label z = mark_of(edge.group);
        if (c.vertices[u].group.factor != Factor::Z2 || c.edge_mono(e, u).map(z) != mark_of(c.vertices[u].group))
          r.violations.push_back(edge.name + ": edge mark does not map to the mark of " + c.vertices[u].name);
        const Label img = c.edge_mono(e, v).map(z);
        const Label d{img[img.width - 1]};
        if (img.slice(0, img.width - 1) != vert.group.plain->identity() || !D.is_reflection(d))
          r.violations.push_back(edge.name + ": mark image in " + vert.name + " is not a reflection");
        refl.push_back(d);
      }
      if (refl.size() != 2) {
        r.violations.push_back(vert.name + ": expected two adjacent reflection marks, found " + std::to_string(refl.size()));
        continue;
      }
      if (generated_subgroup(D, refl).size() != D.order())
        r.violations.push_back(vert.name + ": adjacent marks do not generate " + D.name());
      if (refl[0] == refl[1]) {
        if (D.order() == 2) r.coincident.push_back(vert.name);
        else r.violations.push_back(vert.name + ": adjacent marks coincide in " + D.name());
      }
    }
  }
  return r;
}

void drop_reflection_factor(ComplexOfGroups& c, std::uint32_t vertex) {
  auto& v = c.vertices.at(vertex);
  if (v.color != 1 || v.group.factor != Factor::Z2) throw Error(v.name + " has no reflection factor to drop");
  v.group = c.make_group(v.group.copies, v.group.top, Factor::None);
  for (auto e : c.edges_at(vertex)) {
    auto& edge = c.edges[e];
    if (edge.group.factor != Factor::Z2) continue;
    edge.group = c.make_group(edge.group.copies, edge.group.top, Factor::None);
    edge.reflection.reset();
  }
}

void corrupt_triangle_mono(ComplexOfGroups& c, std::uint32_t tri, std::uint32_t vertex) {
  const Mono base = c.triangle_vertex_mono(tri, vertex);
  const auto G = c.vertices.at(vertex).group.group;
  const auto src_gens = c.triangles.at(tri).group.group->generators();
  for (const auto& g : G->generators())
    for (const auto& x : src_gens) {
      const Label fx = base.map(x);
      if (G->multiply(G->multiply(g, fx), G->inverse(g)) == fx) continue;
      Mono m = base;
      m.kind = "corrupted: " + base.kind;
      m.map = [base, G, g](const Label& y) { return G->multiply(G->multiply(g, base.map(y)), G->inverse(g)); };
      c.override_triangle_vertex_mono(tri, vertex, std::move(m));
      return;
    }
  throw Error("no non-central conjugator available to corrupt " + base.source + " -> " + base.target);
}

} // namespace fbl
