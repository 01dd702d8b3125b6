// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "fbl/building.hpp"
#include "fbl/complex_of_groups.hpp"
#include "fbl/covolume.hpp"
#include "fbl/error.hpp"
#include "fbl/finite_group.hpp"
#include "fbl/graph_of_groups.hpp"
#include "fbl/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace fbl;

namespace {

struct Case {
  BuildingData building;
  GroupHandle group;
  std::shared_ptr<const LeviData> levi;
};

Case make_case(bool symplectic, std::uint32_t q) {
  Case c;
  c.building = symplectic ? build_symplectic_quadrangle(q) : build_projective_plane(q);
  c.group = generate_group(c.building.generators, c.building.graph.vertex_count(), kDefaultGroupCap, q);
  c.levi = std::make_shared<const LeviData>(levi_data(quotient_graph_of_groups(c.building.graph, c.group, 0), q));
  return c;
}

/// Records failures with a short reason; the first few are printed.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <class A, class B>
  void equal(const A& a, const B& b, const std::string& what) {
    if (!(a == b)) {
      std::ostringstream os;
      os << what << " (got " << a << ", want " << b << ")";
      failures.push_back(os.str());
    }
  }
};

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::vector<std::uint64_t> sizes(const std::vector<Subgroup>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& s : v) out.push_back(s.order());
  return out;
}

int failed = 0;

void run(int id, double limit_s, const std::function<std::string(Check&)>& body) {
  Check chk;
  std::string detail;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    detail = body(chk);
  } catch (const std::exception& e) {
    chk.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) chk.failures.push_back("took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s));
  const bool ok = chk.failures.empty();
  if (!ok) ++failed;
  std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL");
  std::ostringstream t;
  t.precision(3);
  t << std::fixed << secs;
  std::cout << " [" << t.str() << " s]";
  if (!detail.empty()) std::cout << " " << detail;
  std::cout << "\n";
  for (std::size_t i = 0; i < chk.failures.size() && i < 10; ++i) std::cout << "    " << chk.failures[i] << "\n";
  std::cout.flush();
}

std::uint32_t find_vertex(const ComplexOfGroups& c, const std::string& name) {
  for (std::uint32_t i = 0; i < c.vertices.size(); ++i)
    if (c.vertices[i].name == name) return i;
  throw Error("no vertex " + name);
}

} // namespace

int main() {
  std::map<std::pair<bool, std::uint32_t>, Case> cases;
  auto get = [&](bool symplectic, std::uint32_t q) -> const Case& {
    auto it = cases.find({symplectic, q});
    if (it == cases.end()) it = cases.emplace(std::make_pair(symplectic, q), make_case(symplectic, q)).first;
    return it->second;
  };

  run(1, 1.0, [](Check& c) {
    const auto a = verify_generalized_polygon(build_projective_plane(2).graph);
    const auto b = verify_generalized_polygon(build_symplectic_quadrangle(2).graph);
    c.expect(a.valid && b.valid, "polygon certificate invalid");
    c.equal(a.vertex_count, 14u, "A2 |V|");
    c.equal(a.edge_count, 21u, "A2 |E|");
    c.equal(a.diameter, 3, "A2 diameter");
    c.equal(a.girth, 6, "A2 girth");
    c.equal(b.vertex_count, 30u, "C2 |V|");
    c.equal(b.edge_count, 45u, "C2 |E|");
    c.equal(b.diameter, 4, "C2 diameter");
    c.equal(b.girth, 8, "C2 girth");
    return "A2 q=2 (14,21,3,6), C2 q=2 (30,45,4,8)";
  });

  run(2, 5.0, [&](Check& c) {
    const auto& d = *get(false, 2).levi;
    c.equal(d.ray.m, 3, "ray edges");
    c.equal(d.ray.edge_groups.size(), 3u, "edge count of quotient");
    c.equal(join(sizes(d.ray.vertex_groups)), std::string("24,8,4,6"), "vertex groups");
    c.equal(join(sizes(d.ray.edge_groups)), std::string("8,4,2"), "edge groups");
    c.expect(d.p_decomposition.holds(), "P = U_P x| L_P");
    c.expect(d.b_decomposition.holds(), "B = U_P x| K_P");
    const auto idx = verify_index_identity(d);
    c.equal(idx.index_L_K, 3u, "[L_P:K_P]");
    c.equal(idx.index_P_B, 3u, "[P:B]");
    return "vertex (24,8,4,6), edge (8,4,2), index 3";
  });

  run(3, 60.0, [&](Check& c) {
    const auto& d = *get(false, 3).levi;
    c.equal(d.P.order(), 432u, "|P|");
    c.equal(d.u_order(), 9u, "|U_P|");
    c.equal(d.l_order(), 48u, "|L_P|");
    c.expect(d.p_decomposition.holds() && d.b_decomposition.holds(), "semidirect checks");
    return "|P|=432 |U_P|=9 |L_P|=48";
  });

  run(4, 60.0, [&](Check& c) {
    const auto& cs = get(false, 2);
    std::optional<std::map<int, std::vector<std::string>>> first;
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto cx = build_GYn(cs.levi, 8, n);
      const auto r = verify_theorem_local(cx, cs.building.graph, 8);
      const std::string tag = "G(Y_" + std::to_string(n) + ") ";
      c.expect(r.passed(), tag + "link check failed");
      for (const auto& e : r.entries) {
        if (e.color == 0) c.equal(e.link_vertices, 35u, tag + e.name + " link vertices");
        if (e.color == 1) c.equal(e.shape, std::string("K_{2,3}"), tag + e.name);
        if (e.color == 2) c.equal(e.shape, std::string("C_16"), tag + e.name);
      }
      const auto shapes = r.shapes_by_color();
      if (!first) first = shapes;
      c.expect(shapes == *first, tag + "link types differ from G(Y_1)");
    }
    return "n=1..3: Δ' (35), K_{2,3}, C_16";
  });

  run(5, 60.0, [&](Check& c) {
    const auto& cs = get(false, 2);
    const auto g = glue_complexes(cs.levi, 8, 3);
    c.equal(join(g.zero_vertex_orders()), std::string("24,96,384"), "0-vertex orders");
    const auto r = verify_theorem_local(g, cs.building.graph, 8);
    for (const auto& e : r.entries)
      if (!e.open) c.expect(e.isomorphic, "interior link " + e.name);
    std::size_t glued2 = 0;
    for (const auto& v : g.vertices)
      if (v.color == 2 && v.glued) {
        ++glued2;
        c.expect(v.group.factor == Factor::Dihedral && v.group.k == 4, v.name + " does not carry D_4");
      }
    c.equal(glued2, 2u, "glued 2-vertices");
    c.expect(check_monomorphisms(g).ok(), "glued monomorphisms");
    const auto g4 = glue_complexes(cs.levi, 4, 3);
    const auto refl = check_reflections(g4);
    c.expect(refl.ok(), "k=4 reflections");
    c.equal(refl.coincident.size(), 2u, "k=4 coincident reflection images");
    return "orders 24,96,384; glued cells D_4; k=4 coincidence at " + std::to_string(refl.coincident.size()) + " cells";
  });

  run(6, 0, [&](Check& c) {
    auto series = [](const std::vector<std::uint64_t>& orders) {
      std::vector<mpz_class> z;
      for (auto o : orders) z.emplace_back(static_cast<unsigned long>(o));
      return covolume_series(z);
    };
    const auto& a = get(false, 2);
    const auto s = series(glue_complexes(a.levi, 8, 3).zero_vertex_orders());
    c.equal(s[0].str() + " " + s[1].str() + " " + s[2].str(), std::string("1/24 5/96 7/128"), "partial sums");
    c.equal(nonuniform_covolume(*a.levi).str(), std::string("1/18"), "limit q=2 m=3");
    c.equal(nonuniform_covolume(*get(true, 2).levi).str(), std::string("1/42"), "limit q=2 m=4");
    c.equal(nonuniform_covolume(*get(false, 3).levi).str(), std::string("1/384"), "limit q=3 m=3");
    for (auto key : {std::pair{false, 2u}, std::pair{true, 2u}, std::pair{false, 3u}, std::pair{true, 3u}}) {
      const auto& cs = get(key.first, key.second);
      const auto from_complex = series(glue_complexes(cs.levi, 8, 10).zero_vertex_orders());
      const auto closed = uniform_covolumes(*cs.levi, 10);
      c.expect(from_complex == closed, "series from complex differs from closed form");
    }
    return "1/24, 5/96, 7/128 -> 1/18; 1/42; 1/384; N<=10 term-by-term";
  });

  run(7, 1.0, [&](Check& c) {
    std::size_t worst = 0;
    for (auto key : {std::pair{false, 2u}, std::pair{true, 2u}, std::pair{false, 3u}, std::pair{true, 3u}}) {
      const auto& d = *get(key.first, key.second).levi;
      const Rational limit = nonuniform_covolume(d);
      for (int e = 1; e <= 12; ++e) {
        const auto eps = Rational::parse("1e-" + std::to_string(e));
        const auto N = nondiscreteness_certificate(d, eps);
        const auto vols = uniform_covolumes(d, N);
        const Rational gap = limit - vols.back();
        c.expect(gap.sign() > 0 && gap < eps, "gap at d=" + std::to_string(e));
        std::set<Rational> distinct(vols.begin(), vols.end());
        c.equal(distinct.size(), vols.size(), "distinct covolumes at d=" + std::to_string(e));
        worst = std::max(worst, N);
      }
    }
    return "d<=12 on four cases, largest N " + std::to_string(worst);
  });

  run(8, 0, [&](Check& c) {
    const auto& cs = get(false, 2);
    std::vector<std::string> named;
    {
      auto cx = build_GY1(cs.levi, 8);
      drop_reflection_factor(cx, find_vertex(cx, "Y1.v2"));
      const auto r = verify_theorem_local(cx, cs.building.graph, 8);
      const auto f = r.failing_cells();
      c.expect(!r.passed(), "dropped Z2 still passes");
      c.expect(std::find(f.begin(), f.end(), "Y1.v2") != f.end(), "dropped Z2 cell not named");
      if (!f.empty()) named.push_back(f.front());
    }
    {
      auto cx = build_GY1(cs.levi, 8);
      const auto v = find_vertex(cx, "Y1.v0");
      std::uint32_t t = 0;
      while (cx.triangles[t].v[1] != v) ++t;
      corrupt_triangle_mono(cx, t, v);
      const auto m = check_monomorphisms(cx);
      c.expect(!m.ok(), "corrupted monomorphism still coherent");
      const bool found = std::any_of(m.violations.begin(), m.violations.end(), [&](const std::string& s) {
        return s.find(cx.triangles[t].name) != std::string::npos && s.find("Y1.v0") != std::string::npos;
      });
      c.expect(found, "corrupted triangle not named");
      named.push_back(cx.triangles[t].name);
    }
    {
      auto g = cs.building.graph;
      Point p2 = 1;
      while (g.types[p2] != VertexType::Point) ++p2;
      g.edges.emplace_back(0, p2);
      const auto cert = verify_generalized_polygon(g);
      c.expect(!cert.valid && !cert.bipartite, "point-point edge still valid");
      const std::string want = "edges[" + std::to_string(g.edges.size() - 1) + "]";
      c.expect(!cert.violations.empty() && cert.violations.front().rfind(want, 0) == 0, "corrupted edge not named");
      named.push_back(want);
    }
    std::string s;
    for (const auto& n : named) s += (s.empty() ? "" : ", ") + n;
    return "failing cells: " + s;
  });

  run(9, 0, [&](Check& c) {
    std::size_t groups = 0, complexes = 0, monos = 0;
    for (bool symplectic : {false, true})
      for (std::uint32_t q : {2u, 3u}) {
        const auto& cs = get(symplectic, q);
        const std::string tag = std::string(symplectic ? "C2" : "A2") + " q=" + std::to_string(q) + " ";
        const auto& ray = cs.levi->ray;
        std::vector<Subgroup> all{Subgroup::whole(cs.group), Subgroup::whole(ray.parabolic)};
        all.insert(all.end(), ray.vertex_groups.begin(), ray.vertex_groups.end());
        all.insert(all.end(), ray.edge_groups.begin(), ray.edge_groups.end());
        for (const auto& g : all) {
          ++groups;
          for (const auto& orb : orbits(g))
            c.equal(orb.size() * stabilizer(g, orb.front()).order(), g.order(), tag + "orbit-stabilizer");
        }
        const auto U = p_core(Subgroup::whole(ray.parabolic), q);
        c.expect(is_normal(Subgroup::whole(ray.parabolic), U), tag + "O_p(P) not normal");
        c.expect(U == cs.levi->U, tag + "U_P mismatch");
        for (std::uint32_t k : {4u, 8u, 12u}) {
          std::vector<ComplexOfGroups> built;
          for (std::size_t n = 1; n <= 3; ++n) built.push_back(build_GYn(cs.levi, k, n));
          built.push_back(glue_complexes(cs.levi, k, 3));
          for (const auto& cx : built) {
            ++complexes;
            const auto m = check_monomorphisms(cx);
            monos += m.checked;
            for (const auto& v : m.violations) c.expect(false, tag + cx.kind + " k=" + std::to_string(k) + ": " + v);
            c.expect(check_reflections(cx).ok(), tag + cx.kind + " reflections");
          }
        }
      }
    // rational arithmetic against boost rationals
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    std::mt19937_64 rng(20240101);
    std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
    for (int i = 0; i < 2000; ++i) {
      const long a = num(rng), b = den(rng), x = num(rng), y = den(rng);
      const Rational r1{mpz_class(a), mpz_class(b)}, r2{mpz_class(x), mpz_class(y)};
      const cpp_rational o1{cpp_int(a), cpp_int(b)}, o2{cpp_int(x), cpp_int(y)};
      c.equal((r1 + r2).str(), cpp_rational(o1 + o2).str(), "rational +");
      c.equal((r1 * r2).str(), cpp_rational(o1 * o2).str(), "rational *");
      c.equal((r1 - r2).str(), cpp_rational(o1 - o2).str(), "rational -");
      if (x != 0) c.equal((r1 / r2).str(), cpp_rational(o1 / o2).str(), "rational /");
      c.equal(r1 < r2, o1 < o2, "rational <");
    }
    return std::to_string(groups) + " groups, " + std::to_string(complexes) + " complexes, " + std::to_string(monos) +
           " monomorphism checks, 2000 rational pairs";
  });

  return failed == 0 ? 0 : 1;
}
