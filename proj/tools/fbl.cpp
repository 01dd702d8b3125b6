// fbl: builds rank-2 buildings, their parabolic ray of groups, the cone complexes of groups
// and their gluings, and reports exact covolumes.

#include "fbl/complex_of_groups.hpp"
#include "fbl/covolume.hpp"
#include "fbl/error.hpp"
#include "fbl/field.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

namespace {

using fbl::Rational;
using nlohmann::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string family = "A2";
  std::uint32_t q = 2;
  std::string file;
  std::string out;
  std::string format = "json";
  std::uint32_t k = 8;
  std::size_t n = 1;
  std::size_t N = 3;
  std::string epsilon = "1/1000";
  bool require_thick = false;
  std::uint32_t base = 0;
};

struct Context {
  fbl::BuildingData building;
  fbl::GroupHandle group;
  std::uint32_t p = 0;
  int m = 0;
};

std::size_t group_cap() {
  if (const char* env = std::getenv("FBL_GROUP_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("FBL_GROUP_CAP must be a positive integer");
    }
  }
  return fbl::kDefaultGroupCap;
}

fbl::BuildingData load_building(const Config& cfg) {
  if (cfg.family == "A2") return fbl::build_projective_plane(cfg.q);
  if (cfg.family == "C2") return fbl::build_symplectic_quadrangle(cfg.q);
  return fbl::import_building_file(cfg.file);
}

Context prepare(const Config& cfg) {
  Context ctx;
  ctx.building = load_building(cfg);
  ctx.p = ctx.building.graph.char_p;
  ctx.group = fbl::generate_group(ctx.building.generators, ctx.building.graph.vertex_count(), group_cap(), ctx.p);
  return ctx;
}

std::shared_ptr<const fbl::LeviData> levi_of(const Context& ctx, const Config& cfg) {
  auto ray = fbl::quotient_graph_of_groups(ctx.building.graph, ctx.group, cfg.base);
  return std::make_shared<const fbl::LeviData>(fbl::levi_data(ray, ctx.p));
}

void check_complex_k(const Config& cfg, bool glue) {
  if (cfg.k < 4 || cfg.k % 2 != 0) throw UsageError("k must be even and at least 4");
  if (glue && cfg.k % 4 != 0) throw UsageError("k must be divisible by 4");
}

struct Outcome {
  json doc;
  bool passed = true;
  std::string text;
  std::string tsv;
};

json complex_section(const fbl::ComplexOfGroups& c, const fbl::IncidenceGraph& delta, std::uint32_t k, bool& passed,
                     std::ostringstream& text, std::map<int, std::vector<std::string>>* shapes = nullptr) {
  const auto links = fbl::verify_theorem_local(c, delta, k);
  if (shapes) *shapes = links.shapes_by_color();
  const auto monos = fbl::check_monomorphisms(c);
  const auto refl = fbl::check_reflections(c);
  const bool ok = links.passed() && monos.ok() && refl.ok();
  passed = passed && ok;
  text << c.kind << ": links " << (links.passed() ? "pass" : "FAIL") << ", monomorphisms " << (monos.ok() ? "pass" : "FAIL")
       << ", reflections " << (refl.ok() ? "pass" : "FAIL") << ", 0-vertex orders";
  for (auto o : c.zero_vertex_orders()) text << ' ' << o;
  text << '\n';
  for (const auto& f : links.failing_cells()) text << "  failing link: " << f << '\n';
  for (const auto& v : monos.violations) text << "  " << v << '\n';
  for (const auto& v : refl.violations) text << "  " << v << '\n';
  return {{"complex", c.to_json()},
          {"links", links.to_json()},
          {"monomorphisms", monos.to_json()},
          {"reflections", refl.to_json()},
          {"passed", ok}};
}

fbl::CovolumeReport covolume_from_glued(const std::shared_ptr<const fbl::LeviData>& d, const Config& cfg) {
  const auto glued = fbl::glue_complexes(d, cfg.k, cfg.N);
  std::vector<mpz_class> orders;
  for (auto o : glued.zero_vertex_orders()) orders.emplace_back(static_cast<unsigned long>(o));
  return fbl::covolume_report(static_cast<unsigned long>(d->u_order()), static_cast<unsigned long>(d->l_order()), orders,
                              Rational::parse(cfg.epsilon));
}

Rational parse_epsilon(const std::string& s) {
  try {
    const Rational e = Rational::parse(s);
    if (e.sign() <= 0) throw UsageError("epsilon must be positive");
    return e;
  } catch (const fbl::Error&) {
    throw UsageError("epsilon must be a rational such as 1/1000 or 1e-6");
  }
}

Outcome run(const std::string& cmd, const Config& cfg) {
  Outcome o;
  std::ostringstream text;
  if (cmd == "recheck") {
    std::ifstream in(cfg.file);
    if (!in) throw UsageError("cannot open " + cfg.file);
    json cert;
    try {
      cert = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError(std::string("not a JSON document: ") + e.what());
    }
    json res;
    bool any = false;
    auto apply = [&](const std::string& name, const json& part, bool (*fn)(const json&)) {
      res[name] = fn(part);
      o.passed = o.passed && res[name].get<bool>();
      any = true;
      text << name << ": " << (res[name].get<bool>() ? "pass" : "FAIL") << '\n';
    };
    if (cert.contains("lemma")) apply("lemma", cert["lemma"], fbl::recheck_lemma_certificate);
    else if (cert.contains("orders") && cert.contains("ray")) apply("lemma", cert, fbl::recheck_lemma_certificate);
    if (cert.contains("links")) apply("links", cert["links"], fbl::recheck_link_report);
    if (cert.contains("complexes"))
      for (std::size_t i = 0; i < cert["complexes"].size(); ++i)
        apply("links_G(Y_" + std::to_string(i + 1) + ")", cert["complexes"][i].at("links"), fbl::recheck_link_report);
    if (cert.contains("glued")) apply("links_glued", cert["glued"].at("links"), fbl::recheck_link_report);
    if (cert.contains("covolume")) apply("covolume", cert["covolume"], fbl::recheck_covolume_report);
    else if (cert.contains("partial_sums")) apply("covolume", cert, fbl::recheck_covolume_report);
    if (!any) throw UsageError("no recognised certificate in " + cfg.file);
    o.doc = {{"recheck", res}, {"passed", o.passed}};
    o.text = text.str();
    return o;
  }

  const Context ctx = prepare(cfg);
  const auto cert = fbl::verify_generalized_polygon(ctx.building.graph);

  if (cmd == "build") {
    o.doc = fbl::building_to_json(ctx.building);
    text << "vertices " << ctx.building.graph.vertex_count() << ", edges " << ctx.building.graph.edge_count() << ", group order "
         << ctx.group->order() << '\n';
  } else if (cmd == "verify-polygon") {
    o.doc = cert.to_json();
    o.passed = cert.valid && (!cfg.require_thick || cert.thick);
    text << "vertices " << cert.vertex_count << ", edges " << cert.edge_count << ", diameter " << cert.diameter << ", girth "
         << cert.girth << ", m " << cert.m << ", thick " << (cert.thick ? "yes" : "no") << ", valid "
         << (cert.valid ? "yes" : "no") << '\n';
    for (const auto& v : cert.violations) text << "  " << v << '\n';
  } else if (cmd == "quotient") {
    const auto ray = fbl::quotient_graph_of_groups(ctx.building.graph, ctx.group, cfg.base);
    o.doc = ray.to_json();
    text << "ray of " << ray.m << " edges; vertex group orders";
    for (const auto& s : ray.vertex_groups) text << ' ' << s.order();
    text << "; edge group orders";
    for (const auto& s : ray.edge_groups) text << ' ' << s.order();
    text << '\n';
  } else if (cmd == "levi") {
    const auto d = levi_of(ctx, cfg);
    o.doc = d->to_json();
    text << "|P| " << d->P.order() << ", |B| " << d->B.order() << ", |U_P| " << d->u_order() << ", |L_P| " << d->l_order()
         << ", |K_P| " << d->K.order() << ", [L_P:K_P] " << d->index_L_K << ", [P:B] " << d->index_P_B << '\n';
  } else if (cmd == "complex") {
    check_complex_k(cfg, false);
    const auto d = levi_of(ctx, cfg);
    const auto c = fbl::build_GYn(d, cfg.k, cfg.n);
    o.doc = complex_section(c, ctx.building.graph, cfg.k, o.passed, text);
  } else if (cmd == "glue") {
    check_complex_k(cfg, true);
    const auto d = levi_of(ctx, cfg);
    const auto c = fbl::glue_complexes(d, cfg.k, cfg.N);
    o.doc = complex_section(c, ctx.building.graph, cfg.k, o.passed, text);
  } else if (cmd == "covolume") {
    check_complex_k(cfg, true);
    const auto d = levi_of(ctx, cfg);
    const auto r = covolume_from_glued(d, cfg);
    o.doc = r.to_json();
    o.passed = r.ok();
    o.tsv = r.to_tsv(ctx.p, d->ray.m, cfg.k);
    text << o.tsv << "nondiscreteness: N = " << *r.certificate_n << " for epsilon " << r.epsilon->str() << '\n';
  } else if (cmd == "pipeline") {
    check_complex_k(cfg, true);
    json doc;
    doc["polygon"] = cert.to_json();
    text << "polygon: " << (cert.valid && cert.thick ? "pass" : "FAIL") << '\n';
    if (!cert.valid || !cert.thick) {
      o.passed = false;
    } else {
      const auto d = levi_of(ctx, cfg);
      doc["lemma"] = d->to_json();
      text << "lemma: pass (|P| " << d->P.order() << ", |U_P| " << d->u_order() << ", |L_P| " << d->l_order() << ")\n";
      json cx = json::array();
      std::map<int, std::vector<std::string>> first_shapes;
      bool n_independent = true;
      for (std::size_t n = 1; n <= cfg.N && o.passed; ++n) {
        const auto c = fbl::build_GYn(d, cfg.k, n);
        std::map<int, std::vector<std::string>> shapes;
        cx.push_back(complex_section(c, ctx.building.graph, cfg.k, o.passed, text, &shapes));
        if (n == 1) first_shapes = shapes;
        else if (shapes != first_shapes) n_independent = false;
      }
      doc["complexes"] = std::move(cx);
      doc["links_independent_of_n"] = n_independent;
      o.passed = o.passed && n_independent;
      if (o.passed) {
        const auto g = fbl::glue_complexes(d, cfg.k, cfg.N);
        doc["glued"] = complex_section(g, ctx.building.graph, cfg.k, o.passed, text);
      }
      if (o.passed) {
        const auto r = covolume_from_glued(d, cfg);
        doc["covolume"] = r.to_json();
        o.passed = r.ok();
        o.tsv = r.to_tsv(ctx.p, d->ray.m, cfg.k);
        text << o.tsv << "nondiscreteness: N = " << *r.certificate_n << " for epsilon " << r.epsilon->str() << '\n';
      }
    }
    doc["passed"] = o.passed;
    o.doc = std::move(doc);
  } else {
    throw UsageError("unknown subcommand " + cmd);
  }
  o.text = text.str();
  return o;
}

void emit(const Config& cfg, const std::string& body) {
  if (cfg.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(cfg.out);
  if (!out) throw std::runtime_error("cannot write " + cfg.out);
  out << body;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-2 buildings, complexes of groups and exact lattice covolumes"};
  app.require_subcommand(1, 1);
  Config cfg;

  auto add_common = [&](CLI::App* sub, bool building = true) {
    if (building) {
      sub->add_option("--family", cfg.family, "A2 (projective plane), C2 (symplectic quadrangle) or file")
          ->check(CLI::IsMember({"A2", "C2", "file"}));
      sub->add_option("--q", cfg.q, "field size (prime)");
      sub->add_option("--file", cfg.file, "building JSON when --family file");
      sub->add_option("--base", cfg.base, "base vertex of the ray");
    }
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "json, tsv or text")->check(CLI::IsMember({"json", "tsv", "text"}));
  };

  auto* build = app.add_subcommand("build", "emit the building as JSON");
  auto* poly = app.add_subcommand("verify-polygon", "generalized polygon certificate");
  poly->add_flag("--require-thick", cfg.require_thick, "fail unless every vertex has valence at least 3");
  auto* quot = app.add_subcommand("quotient", "ray of groups for the parabolic of the base vertex");
  auto* levi = app.add_subcommand("levi", "Levi data certificate");
  auto* cpx = app.add_subcommand("complex", "G(Y_n) with its link report");
  cpx->add_option("--n", cfg.n, "copies of U_P")->check(CLI::Range(std::size_t{1}, fbl::kMaxPieces));
  cpx->add_option("--k", cfg.k, "even polygon size, at least 4");
  auto* glue = app.add_subcommand("glue", "glued truncation G(Y_1..Y_N) with its link report");
  glue->add_option("--N", cfg.N, "number of pieces")->check(CLI::Range(std::size_t{1}, fbl::kMaxPieces));
  glue->add_option("--k", cfg.k, "polygon size, divisible by 4");
  auto* cov = app.add_subcommand("covolume", "exact covolume table and nondiscreteness certificate");
  cov->add_option("--N", cfg.N, "number of partial sums")->check(CLI::Range(std::size_t{1}, fbl::kMaxPieces));
  cov->add_option("--k", cfg.k, "polygon size, divisible by 4");
  cov->add_option("--epsilon", cfg.epsilon, "gap bound, e.g. 1/1000 or 1e-12");
  auto* pipe = app.add_subcommand("pipeline", "every stage in order, stopping at the first failure");
  pipe->add_option("--N", cfg.N, "pieces and complexes")->check(CLI::Range(std::size_t{1}, fbl::kMaxPieces));
  pipe->add_option("--k", cfg.k, "polygon size, divisible by 4");
  pipe->add_option("--epsilon", cfg.epsilon, "gap bound for the nondiscreteness certificate");
  auto* recheck = app.add_subcommand("recheck", "re-verify a certificate without recomputing groups");
  recheck->add_option("--file", cfg.file, "certificate JSON")->required();
  for (auto* s : {build, poly, quot, levi, cpx, glue, cov, pipe}) add_common(s);
  add_common(recheck, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cfg.family == "file" && cfg.file.empty() && cmd != "recheck") throw UsageError("--family file needs --file");
    if (cfg.family != "file" && !fbl::is_prime(cfg.q)) throw UsageError("q must be prime");
    if (cfg.format == "tsv" && cmd != "covolume" && cmd != "pipeline") throw UsageError("tsv output is only for covolume tables");
    parse_epsilon(cfg.epsilon);

    Outcome o;
    try {
      o = run(cmd, cfg);
    } catch (const fbl::LemmaViolation& e) {
      o.passed = false;
      o.doc = {{"error", e.what()}, {"clause", e.clause()}, {"report", e.report()}, {"passed", false}};
      o.text = std::string(e.what()) + '\n';
    } catch (const fbl::ParseError& e) {
      o.passed = false;
      o.doc = {{"error", e.what()}, {"record", e.record()}, {"passed", false}};
      o.text = std::string(e.what()) + '\n';
    } catch (const fbl::Error& e) {
      o.passed = false;
      o.doc = {{"error", e.what()}, {"passed", false}};
      o.text = std::string(e.what()) + '\n';
    }
    if (cfg.format == "json") emit(cfg, o.doc.dump(2) + "\n");
    else if (cfg.format == "tsv") emit(cfg, o.tsv.empty() ? o.text : o.tsv);
    else emit(cfg, o.text);
    if (!o.passed) std::cerr << "verification failed\n";
    return o.passed ? kPass : kFail;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
}
