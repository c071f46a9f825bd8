#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pea/pea.hpp"

using namespace pea;
using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t default_seed = 42;

enum ExitCode { exit_ok = 0, exit_fails = 1, exit_parse = 2, exit_axioms = 3, exit_audit = 4 };

struct Report {
  std::vector<std::string> lines;
  json doc = json::object();
  int code = exit_ok;

  void line(std::string s) { lines.push_back(std::move(s)); }
  void fail(int c) { code = std::max(code, c); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::vector<std::string> names(const FinitePEA& e, const std::vector<Id>& ids) {
  std::vector<std::string> out;
  for (Id x : ids) out.push_back(e.name(x));
  return out;
}

std::vector<std::string> formatted(const PoGroup& g, const std::vector<Element>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(g.format(x));
  return out;
}

std::string report_line(const FinitePEA& e, const PropertyReport& r) {
  return r.property + ": " + (r.holds ? "HOLDS" : "FAILS witness=" + join(names(e, r.witness)));
}

json property_json(const FinitePEA& e, const PropertyReport& r) {
  json j = {{"property", r.property}, {"holds", r.holds}, {"instances", r.instances}};
  if (!r.holds) {
    j["witness"] = names(e, r.witness);
    j["reason"] = r.reason;
  }
  return j;
}

json pea_json(const FinitePEA& e) {
  json add = json::array();
  for (Id a = 0; a < e.size(); ++a)
    for (Id b = 0; b < e.size(); ++b)
      if (auto c = e.sum(a, b)) add.push_back({e.name(a), e.name(b), e.name(*c)});
  return {{"elements", e.names()}, {"zero", e.name(e.zero())}, {"unit", e.name(e.unit())}, {"add", add}};
}

/// Parses and axiom-checks a file; on violation the report is finished.
std::optional<FinitePEA> load_checked(const std::string& file, Report& r) {
  auto e = parse_pea(read_file(file));
  r.doc["file"] = file;
  r.doc["elements"] = e.size();
  r.line("algebra: " + std::to_string(e.size()) + " elements");
  auto ax = check_axioms(e);
  if (!ax.valid) {
    r.doc["axioms"] = {{"valid", false}, {"axiom", ax.axiom}, {"witness", names(e, ax.witness)}, {"detail", ax.detail}};
    r.line("axioms: VIOLATION " + ax.axiom + " witness=" + join(names(e, ax.witness)) + " (" + ax.detail + ")");
    r.fail(exit_axioms);
    return std::nullopt;
  }
  r.doc["axioms"] = {{"valid", true}};
  r.line("axioms: VALID");
  return e;
}

Report cmd_check(const std::string& file, const std::vector<std::string>& props) {
  for (const auto& p : props)
    if (std::find(property_names().begin(), property_names().end(), p) == property_names().end())
      throw parse_error("unknown property '" + p + "' (expected rip, rdp0, rdp, rdp1, rdp2)");
  Report r;
  r.doc["command"] = "check";
  auto e = load_checked(file, r);
  if (!e) return r;
  auto cw = commutativity_witness(*e);
  r.doc["commutative"] = !cw;
  r.line(cw ? "commutative: no witness=" + e->name(cw->first) + "," + e->name(cw->second) : "commutative: yes");
  RieszAnalyzer an(*e);
  json arr = json::array();
  for (const auto& p : props) {
    auto pr = check_property(an, p);
    r.line(report_line(*e, pr));
    arr.push_back(property_json(*e, pr));
    if (!pr.holds) r.fail(exit_fails);
  }
  r.doc["properties"] = arr;
  return r;
}

Report cmd_construct(const std::string& desc, const std::string& unit, std::optional<std::size_t> budget) {
  Report r;
  auto g = parse_group(desc);
  auto u = g->parse(unit);
  auto e = gamma(g, u);
  auto su = is_strong_unit_bounded(*g, u, 3);
  r.doc = {{"command", "construct"}, {"group", g->descriptor()}, {"unit", g->format(u)},
           {"strong_unit", {{"verdict", to_string(su.verdict)}, {"reason", su.reason}}}};
  r.line("# group: " + g->descriptor());
  r.line("# unit: " + g->format(u));
  r.line(std::string("# strong unit: ") + to_string(su.verdict) + " (" + su.reason + ")");
  if (budget) {
    auto m = materialize(e, *budget);
    auto ax = check_axioms(m.table);
    r.doc["axioms"] = {{"valid", ax.valid}};
    r.doc["pea"] = pea_json(m.table);
    r.line("# elements: " + std::to_string(m.table.size()));
    if (!ax.valid) {
      r.line("# axioms: VIOLATION " + ax.axiom + " (" + ax.detail + ")");
      r.fail(exit_axioms);
    }
    std::istringstream text(write_pea(m.table));
    for (std::string l; std::getline(text, l);) r.line(l);
  }
  return r;
}

struct Item {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<Item> paper_items(std::uint64_t seed, std::size_t count) {
  std::vector<Item> items;
  auto run = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& f) {
    try {
      auto [ok, detail] = f();
      items.push_back({name, ok, detail});
    } catch (const std::exception& ex) {
      items.push_back({name, false, std::string("error: ") + ex.what()});
    }
  };
  struct Cone {
    const char* label;
    GroupPtr g;
    const char* witness[4];
  };
  for (const auto& c : {Cone{"ex2.9", ConeGroup::ex29(), {"(1,0)", "(0,1)", "(0,3)", "(3,0)"}},
                        Cone{"ex2.10", ConeGroup::ex210(), {"(1,0)", "(0,1)", "(0,2)", "(2,0)"}}}) {
    const auto& g = *c.g;
    auto m = materialize(gamma(c.g, g.parse("(1,0)")), 100);
    run(std::string(c.label) + " interval", [&] {
      auto ok = m.table.names() == std::vector<std::string>{"(0,0)", "(1,0)"};
      return std::pair{ok, "E = {" + join(m.table.names()) + "}"};
    });
    run(std::string(c.label) + " rip refutation", [&] {
      auto p = rip_refutation(g, g.parse(c.witness[0]), g.parse(c.witness[1]), g.parse(c.witness[2]),
                              g.parse(c.witness[3]));
      return std::pair{p.verdict == Verdict::refuted, "witness " + join(formatted(g, {p.witness[0], p.witness[1]})) +
                                                          " <= " + join(formatted(g, {p.witness[2], p.witness[3]})) +
                                                          ": " + p.reason};
    });
    run(std::string(c.label) + " algebra decompositions", [&] {
      RieszAnalyzer an(m.table);
      std::vector<std::string> parts;
      bool ok = true;
      for (const char* p : {"rdp", "rdp1", "rdp2"}) {
        auto pr = check_property(an, p);
        ok = ok && pr.holds;
        parts.push_back(report_line(m.table, pr));
      }
      return std::pair{ok, join(parts, ", ")};
    });
  }
  auto s3 = materialize(gamma(parse_group("lex(Z,finite:S3)"), parse_group("lex(Z,finite:S3)")->parse("(3,0)")), 100);
  run("lex(Z,finite:S3) rdp failure", [&] {
    auto pr = check_rdp(s3.table);
    const auto& w = pr.witness;
    bool ok = !pr.holds && w.size() == 4 && no_table_exists(s3.table, {w[0], w[1], w[2], w[3]});
    return std::pair{ok, report_line(s3.table, pr) + ", re-verified by a direct table scan"};
  });
  for (const char* d : {"Z", "Z^2:product", "heis"}) {
    run(std::string("lift batch lex(Z,") + d + ")", [&] {
      auto g = parse_group(d);
      auto zg = lex(integers(), g);
      auto o = builtin_oracle(g);
      std::mt19937_64 rng(seed);
      std::size_t ok = 0;
      for (std::size_t i = 0; i < count; ++i) {
        auto q = random_lex_quadruple(g, rng, 3, 5);
        auto t = lift_group_refine(o, g, q);
        if (!validate_table(ConeAlgebra{zg.get()}, q, t)) ++ok;
      }
      return std::pair{ok == count, std::to_string(ok) + "/" + std::to_string(count) + " validated"};
    });
  }
  run("lift batch lex(Z,heis) with com", [&] {
    auto h = heisenberg();
    auto zh = lex(integers(), h);
    auto o = builtin_oracle(h);
    auto box = zh->box(1);
    std::mt19937_64 rng(seed);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < count; ++i) {
      auto q = random_lex_quadruple(h, rng, 3, 5);
      auto t = lift_group_refine_rdp1(o, h, q);
      if (!validate_table(ConeAlgebra{zh.get()}, q, t) && !com_violation_near(*zh, t.c12, t.c21, box)) ++ok;
    }
    return std::pair{ok == count, std::to_string(ok) + "/" + std::to_string(count) + " validated with com"};
  });
  run("n-perfect lex(Z,finite:S3) n=3", [&] {
    auto d = find_n_decomposition(s3.table, 3);
    if (!d) return std::pair{false, std::string("NotFound")};
    std::vector<std::string> sz;
    for (auto k : d->sizes()) sz.push_back(std::to_string(k));
    bool ok = join(sz, "/") == "1/6/6/1" && names(s3.table, d->slices[0]) == std::vector<std::string>{"(0,0)"};
    return std::pair{ok, "slices " + join(sz, "/") + ", E0 = {" + join(names(s3.table, d->slices[0])) + "}"};
  });
  run("n-perfect diamond n=1", [&] {
    auto dm = materialize(gamma(product(2), product(2)->parse("(1,1)")), 100);
    auto d = find_n_decomposition(dm.table, 1);
    return std::pair{!d, std::string(d ? "found" : "NotFound") + ", " +
                             std::to_string(maximal_ideals(dm.table).size()) + " maximal ideals"};
  });
  run("strong 3-perfect lex(Z,Z)", [&] {
    auto s = build_strong_nperfect(integers(), 3);
    bool ok = s.hypotheses_ok() && s.unit_is_nc && s.central.verdict == Verdict::certified;
    return std::pair{ok, std::string("3c = 1: ") + (s.unit_is_nc ? "yes" : "no") + ", c central: " +
                             to_string(s.central.verdict)};
  });
  run("functor laws n=2", [&] {
    auto h1 = parse_morphism("matrix:[[1],[1]]"), h2 = parse_morphism("matrix:[[1,1]]");
    auto f1 = functor_on_morphism(h1, 2), f2 = functor_on_morphism(h2, 2);
    auto f21 = functor_on_morphism(compose(h2, h1), 2), fid = functor_on_morphism(identity(integers()), 2);
    auto pts = sample_points(f1.src, *integers(), 20, 50, seed);
    bool ok = !check_pea_homomorphism(f21, pts);
    for (const auto& x : pts) ok = ok && fid(x) == x && f21(x) == f2(f1(x));
    return std::pair{ok, std::to_string(pts.size()) + " sampled points, identity and composition preserved"};
  });
  return items;
}

Report cmd_verify_paper(std::uint64_t seed, std::size_t count) {
  Report r;
  r.doc = {{"command", "verify-paper"}, {"seed", seed}, {"count", count}};
  r.line("# seed: " + std::to_string(seed));
  json arr = json::array();
  std::size_t passed = 0;
  for (const auto& it : paper_items(seed, count)) {
    r.line(it.name + ": " + (it.pass ? "PASS" : "FAIL") + " (" + it.detail + ")");
    arr.push_back({{"item", it.name}, {"pass", it.pass}, {"detail", it.detail}});
    if (it.pass) {
      ++passed;
    } else {
      r.fail(exit_fails);
    }
  }
  r.doc["items"] = arr;
  r.line("summary: " + std::to_string(passed) + "/" + std::to_string(arr.size()) + " PASS");
  return r;
}

Report cmd_enumerate(Id max_size, bool tables) {
  Report r;
  r.doc = {{"command", "enumerate"}, {"max_size", max_size}};
  auto all = enumerate_peas(max_size);
  std::map<Id, std::size_t> counts;
  std::size_t bad = 0;
  json arr = json::array();
  for (std::size_t k = 0; k < all.size(); ++k) {
    const auto& e = all[k];
    ++counts[e.size()];
    auto a = implication_audit(e);
    std::string l = "#" + std::to_string(k + 1) + " size=" + std::to_string(e.size()) +
                    " commutative=" + (is_commutative(e) ? "yes" : "no");
    json profile = json::object();
    for (const auto& p : a.properties) {
      l += " " + p.property + "=" + (p.holds ? "HOLDS" : "FAILS");
      profile[p.property] = p.holds;
    }
    if (!a.consistent()) {
      ++bad;
      l += " violations=" + join(a.violations, ";");
    }
    r.line(l);
    json j = {{"index", k + 1}, {"size", e.size()}, {"commutative", is_commutative(e)}, {"profile", profile},
              {"violations", a.violations}};
    if (tables) {
      j["pea"] = pea_json(e);
      std::istringstream text(write_pea(e));
      for (std::string t; std::getline(text, t);) r.line("  " + t);
    }
    arr.push_back(j);
  }
  r.doc["algebras"] = arr;
  std::vector<std::string> cs;
  json jc = json::object();
  for (auto [n, c] : counts) {
    cs.push_back(std::to_string(n) + ":" + std::to_string(c));
    jc[std::to_string(n)] = c;
  }
  r.doc["counts"] = jc;
  r.doc["audit_violations"] = bad;
  r.line("counts: " + join(cs, " "));
  r.line("audit: " + std::to_string(bad) + " algebras violate the implication chain");
  if (bad) r.fail(exit_audit);
  return r;
}

std::string table_text(const PoGroup& g, const RefinementTable<Element>& t) {
  return "c11=" + g.format(t.c11) + " c12=" + g.format(t.c12) + " c21=" + g.format(t.c21) + " c22=" + g.format(t.c22);
}

json table_json(const PoGroup& g, const RefinementTable<Element>& t) {
  return {{"c11", g.format(t.c11)}, {"c12", g.format(t.c12)}, {"c21", g.format(t.c21)}, {"c22", g.format(t.c22)}};
}

struct LiftOptions {
  std::string desc;
  std::string quadruple;
  bool batch = false;
  std::uint64_t seed = default_seed;
  std::size_t count = 200;
  std::string route = "rdp";
  std::int64_t max_level = 3;
  std::int64_t radius = 5;
  bool show = false;
};

Report cmd_lift(const LiftOptions& opt) {
  auto zg = parse_group(opt.desc);
  auto lg = dynamic_cast<const LexGroup*>(zg.get());
  if (!lg || lg->left().descriptor() != "Z") throw precondition_error("lift expects a group lex(Z,G), got " + opt.desc);
  if (opt.batch == !opt.quadruple.empty()) throw parse_error("give either a quadruple or --batch");
  auto g = lg->right_ptr();
  auto o = builtin_oracle(g);
  const bool rdp1 = opt.route == "rdp1";
  auto box = zg->box(1);
  Report r;
  r.doc = {{"command", "lift"}, {"group", zg->descriptor()}, {"route", opt.route}};
  auto lift = [&](const Quadruple<Element>& q, std::string& label) {
    if (rdp1) {
      label = "extension of the interval refinements";
      return lift_group_refine_rdp1(o, g, q);
    }
    return lift_group_refine(o, g, q, &label);
  };
  auto check = [&](const Quadruple<Element>& q, const RefinementTable<Element>& t) -> std::optional<std::string> {
    if (auto v = validate_table(ConeAlgebra{zg.get()}, q, t)) return v;
    if (rdp1)
      if (auto c = com_violation_near(*zg, t.c12, t.c21, box))
        return "com fails for " + zg->format(c->first) + "," + zg->format(c->second);
    return std::nullopt;
  };
  if (!opt.batch) {
    auto q = parse_quadruple(*zg, opt.quadruple);
    std::string label;
    auto t = lift(q, label);
    auto bad = check(q, t);
    r.doc["quadruple"] = format_quadruple(*zg, q);
    r.doc["case"] = label;
    r.doc["table"] = table_json(*zg, t);
    r.doc["validated"] = !bad;
    r.line("quadruple: " + format_quadruple(*zg, q));
    r.line("case: " + label);
    r.line("table: " + table_text(*zg, t));
    r.line("validated: " + (bad ? "no (" + *bad + ")" : std::string("yes")));
    if (bad) r.fail(exit_fails);
    return r;
  }
  r.line("# seed: " + std::to_string(opt.seed));
  r.doc["seed"] = opt.seed;
  r.doc["count"] = opt.count;
  std::mt19937_64 rng(opt.seed);
  std::map<std::string, std::size_t> cases;
  std::size_t ok = 0;
  json fails = json::array();
  for (std::size_t i = 0; i < opt.count; ++i) {
    auto q = random_lex_quadruple(g, rng, opt.max_level, opt.radius);
    std::string label;
    std::optional<std::string> bad;
    RefinementTable<Element> t;
    try {
      t = lift(q, label);
      bad = check(q, t);
    } catch (const error& ex) {
      bad = ex.what();
    }
    ++cases[label];
    if (opt.show) r.line(format_quadruple(*zg, q) + " -> " + (bad ? "FAIL " + *bad : table_text(*zg, t)));
    if (bad) {
      fails.push_back({{"quadruple", format_quadruple(*zg, q)}, {"reason", *bad}});
    } else {
      ++ok;
    }
  }
  json jc = json::object();
  for (const auto& [label, c] : cases) {
    r.line("case " + label + ": " + std::to_string(c));
    jc[label] = c;
  }
  r.doc["cases"] = jc;
  r.doc["validated"] = ok;
  r.doc["failures"] = fails;
  r.line("validated: " + std::to_string(ok) + "/" + std::to_string(opt.count));
  if (ok != opt.count) r.fail(exit_fails);
  return r;
}

void report_decomposition(const FinitePEA& e, int n, bool brute, Report& r) {
  auto maxi = maximal_ideals(e);
  r.line("maximal ideals: " + std::to_string(maxi.size()));
  r.doc["maximal_ideals"] = maxi.size();
  auto d = find_n_decomposition(e, n, brute);
  if (!d) {
    r.line("decomposition: NotFound");
    r.doc["decomposition"] = nullptr;
    r.fail(exit_fails);
  } else {
    std::vector<std::string> sz;
    json slices = json::array();
    for (auto k : d->sizes()) sz.push_back(std::to_string(k));
    r.line("slices: " + join(sz, "/"));
    for (std::size_t i = 0; i < d->slices.size(); ++i) {
      r.line("E" + std::to_string(i) + ": " + join(names(e, d->slices[i]), " "));
      slices.push_back(names(e, d->slices[i]));
    }
    r.doc["decomposition"] = {{"sizes", d->sizes()}, {"slices", slices}};
  }
  std::vector<std::string> cyc;
  json jc = json::array();
  for (const auto& w : find_cyclic(e, n)) {
    cyc.push_back(e.name(w.c));
    jc.push_back({{"element", e.name(w.c)}, {"complements_agree", w.complements_agree}});
  }
  r.line("cyclic elements (" + std::to_string(n) + "c = 1): " + (cyc.empty() ? "none" : join(cyc, " ")));
  r.doc["cyclic"] = jc;
}

struct NPerfectOptions {
  std::string target;
  int n = 1;
  std::string morphism;
  bool brute = false;
  std::int64_t radius = 2;
  std::uint64_t seed = default_seed;
};

Report cmd_nperfect(const NPerfectOptions& opt) {
  Report r;
  r.doc = {{"command", "nperfect"}, {"n", opt.n}};
  if (std::filesystem::is_regular_file(opt.target)) {
    if (!opt.morphism.empty()) throw parse_error("--morphism needs a group descriptor, not a file");
    auto e = load_checked(opt.target, r);
    if (e) report_decomposition(*e, opt.n, opt.brute, r);
    return r;
  }
  GroupPtr g;
  try {
    g = parse_group(opt.target);
  } catch (const parse_error& ex) {
    throw parse_error("'" + opt.target + "' is neither a file nor a group descriptor: " + ex.what());
  }
  auto s = build_strong_nperfect(g, opt.n, opt.radius);
  const auto& zg = *s.group;
  r.doc["group"] = zg.descriptor();
  r.doc["unit"] = zg.format(s.algebra.unit());
  r.doc["c"] = zg.format(s.c);
  r.doc["unit_is_nc"] = s.unit_is_nc;
  r.doc["central"] = {{"verdict", to_string(s.central.verdict)}, {"reason", s.central.reason}};
  r.doc["warnings"] = s.warnings;
  r.line("construction: Gamma(" + zg.descriptor() + "," + zg.format(s.algebra.unit()) + ") with c = " + zg.format(s.c));
  r.line(std::to_string(opt.n) + "c = 1: " + (s.unit_is_nc ? "yes" : "no"));
  r.line(std::string("c central: ") + to_string(s.central.verdict) + " (" + s.central.reason + ")");
  for (const auto& w : s.warnings) r.line("warning: " + w);
  r.line(std::string("hypotheses: ") + (s.hypotheses_ok() ? "met" : "not met"));
  if (!s.hypotheses_ok() || !s.unit_is_nc || s.central.verdict != Verdict::certified) r.fail(exit_fails);
  if (g->all_elements()) {
    auto m = materialize(s.algebra, 5000);
    r.line("materialized: " + std::to_string(m.table.size()) + " elements");
    report_decomposition(m.table, opt.n, opt.brute, r);
  }
  if (!opt.morphism.empty()) {
    auto h = parse_morphism(opt.morphism);
    if (h.dom->descriptor() != g->descriptor())
      throw precondition_error("morphism domain " + h.dom->descriptor() + " does not match " + g->descriptor());
    auto f = functor_on_morphism(h, opt.n, opt.radius);
    auto pts = sample_points(f.src, *h.dom, 3 * opt.radius, 50, opt.seed);
    auto bad = check_pea_homomorphism(f, pts);
    const auto& cod = f.dst.group();
    r.line("morphism: " + h.name + " : " + h.dom->descriptor() + " -> " + h.cod->descriptor());
    r.line("image of c: " + cod.format(f(s.c)));
    r.line("homomorphism on " + std::to_string(pts.size()) + " sampled points: " + (bad ? "no (" + *bad + ")" : "yes"));
    r.doc["morphism"] = {{"name", h.name}, {"image_of_c", cod.format(f(s.c))}, {"points", pts.size()},
                         {"homomorphism", !bad}};
    if (bad) r.fail(exit_fails);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo effect algebra toolkit"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "print the report as JSON");
  std::function<Report()> run;

  auto check = app.add_subcommand("check", "check axioms and Riesz-type properties of a pea v1 file");
  std::string file;
  std::vector<std::string> props = property_names();
  check->add_option("file", file, "pea v1 file")->required();
  check->add_option("--props", props, "properties to check")->delimiter(',');
  check->callback([&] { run = [&] { return cmd_check(file, props); }; });

  auto construct = app.add_subcommand("construct", "build Gamma(G,u) from a group descriptor");
  std::string desc, unit;
  std::optional<std::size_t> budget;
  construct->add_option("group", desc, "group descriptor")->required();
  construct->add_option("--unit", unit, "unit element")->required();
  construct->add_option("--materialize", budget, "print the finite table, enumerating at most this many elements");
  construct->callback([&] { run = [&] { return cmd_construct(desc, unit, budget); }; });

  auto verify = app.add_subcommand("verify-paper", "run the fixed reproduction suite");
  std::uint64_t seed = default_seed;
  std::size_t count = 200;
  verify->add_option("--seed", seed, "seed for the lift batches");
  verify->add_option("--count", count, "quadruples per lift batch");
  verify->callback([&] { run = [&] { return cmd_verify_paper(seed, count); }; });

  auto enumerate = app.add_subcommand("enumerate", "catalog all PEAs up to a size with their property profiles");
  Id max_size = 0;
  bool tables = false;
  enumerate->add_option("max_size", max_size, "largest size (at most 6)")->required();
  enumerate->add_flag("--tables", tables, "print each table in pea v1 format");
  enumerate->callback([&] { run = [&] { return cmd_enumerate(max_size, tables); }; });

  auto lift = app.add_subcommand("lift", "refine a quadruple in lex(Z,G) by lifting refinements of G");
  LiftOptions lo;
  lift->add_option("group", lo.desc, "descriptor lex(Z,G)")->required();
  lift->add_option("quadruple", lo.quadruple, "a1;a2=b1;b2");
  lift->add_flag("--batch", lo.batch, "lift seeded random quadruples");
  lift->add_option("--seed", lo.seed, "batch seed");
  lift->add_option("--count", lo.count, "batch size");
  lift->add_option("--route", lo.route, "rdp (group tables) or rdp1 (tables satisfying com)")
      ->check(CLI::IsMember({"rdp", "rdp1"}));
  lift->add_option("--max-level", lo.max_level, "largest first coordinate in batch quadruples");
  lift->add_option("--radius", lo.radius, "norm bound of G-coordinates in batch quadruples");
  lift->add_flag("--show", lo.show, "print every batch quadruple and table");
  lift->callback([&] { run = [&] { return cmd_lift(lo); }; });

  auto nperfect = app.add_subcommand("nperfect", "n-decompositions of a file, or the strong n-perfect construction over G");
  NPerfectOptions no;
  nperfect->add_option("target", no.target, "pea v1 file or group descriptor G")->required();
  nperfect->add_option("n", no.n, "n >= 1")->required()->check(CLI::PositiveNumber);
  nperfect->add_option("--morphism", no.morphism, "matrix:[[...],...] applied through the functor");
  nperfect->add_flag("--brute-force", no.brute, "search every slice assignment (at most 10 elements)");
  nperfect->add_option("--radius", no.radius, "probe radius");
  nperfect->add_option("--seed", no.seed, "seed for sampled points");
  nperfect->callback([&] { run = [&] { return cmd_nperfect(no); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int c = app.exit(e);
    return c == 0 ? exit_ok : exit_parse;
  }
  Report r;
  try {
    r = run();
  } catch (const std::exception& ex) {
    if (as_json) {
      std::cout << json{{"error", ex.what()}}.dump(2) << "\n";
    } else {
      std::cerr << "error: " << ex.what() << "\n";
    }
    return exit_parse;
  }
  if (as_json) {
    r.doc["exit_code"] = r.code;
    std::cout << r.doc.dump(2) << "\n";
  } else {
    for (const auto& l : r.lines) std::cout << l << "\n";
  }
  return r.code;
}
