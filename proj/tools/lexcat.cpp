#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lexcat/instances.hpp"
#include "lexcat/io/bundle.hpp"
#include "lexcat/io/report.hpp"
#include "lexcat/presheaves/embed.hpp"
#include "lexcat/pretopos/closure.hpp"
#include "lexcat/pretopos/giraud.hpp"
#include "lexcat/sums/extensivity.hpp"

using namespace lexcat;
using io::Json;

namespace {

struct Options {
  std::string path;
  std::string out;
  std::string groupoid, relation, f, g, category, grid;
  std::vector<std::string> objects;
  std::size_t max_size = 0;
  std::size_t samples = 20;
};

void print_lines(const std::vector<std::string>& lines) {
  for (const auto& l : lines) std::cout << l << "\n";
}

// ---- check ----

int cmd_check(const Options& o) {
  const auto b = io::load_bundle(o.path);
  const auto rep = io::check_bundle(b);
  for (const auto& l : rep.lines) std::cout << "ok " << l << "\n";
  for (const auto& v : rep.violations) std::cout << "violation " << v << "\n";
  std::cout << "check: " << (rep.ok() ? "clean" : std::to_string(rep.violations.size()) + " violation(s)") << "\n";
  return rep.ok() ? 0 : 1;
}

// ---- construct ----

const io::GroupoidEntry& groupoid_arg(const io::Bundle& b, const Options& o) {
  if (o.groupoid.empty()) throw Error(ErrorCode::precondition, "--groupoid is required");
  return io::detail::lookup(b.groupoids, o.groupoid, "groupoid", "--groupoid");
}

void write_output(const Options& o, const Json& doc, std::vector<std::string>& lines) {
  if (o.out.empty()) return;
  std::ofstream out(o.out);
  if (!out) throw Error(ErrorCode::malformed, "cannot write " + o.out);
  out << doc.dump(2) << "\n";
  lines.push_back("written: " + o.out);
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::size_t level_size(const FinSet::Object& x) { return x.size; }
std::size_t level_size(const SumsTab::Object& x) { return x.size(); }

int construct_sums(const io::Bundle& b, const Options& o, Json& doc, std::vector<std::string>& lines) {
  if (o.objects.empty()) throw Error(ErrorCode::precondition, "--objects lists the summands");
  std::string cat;
  std::vector<SumsTab::Object> xs;
  for (const auto& name : o.objects) {
    const auto& [c, x] = io::detail::lookup(b.sum_objects, name, "sum-object", "--objects");
    if (!cat.empty() && c != cat) throw Error(ErrorCode::precondition, "summands live over different categories");
    cat = c;
    xs.push_back(x);
  }
  const SumsTab s(b.category(cat));
  const auto cp = s.coproduct(xs);
  const auto name = "sum(" + join(o.objects, ",") + ")";
  io::put_sum_object(doc, s.base(), cat, name, cp.object);
  for (std::size_t k = 0; k < xs.size(); ++k)
    io::put_sum_morphism(doc, s.base(), name + ".in" + std::to_string(k), o.objects[k], name, cp.injections[k]);
  lines.push_back("sum: " + name);
  lines.push_back("size: " + std::to_string(cp.object.size()));
  lines.push_back("family: " + s.describe(cp.object));
  return 0;
}

template <class C>
int construct_e2_on(const C& c, const TruncatedSimplicial<C>& a, const std::function<void(const KanWitness<C>&)>& store,
                    std::vector<std::string>& lines) {
  lines.push_back("levels: " + std::to_string(level_size(a.a0)) + "," + std::to_string(level_size(a.a1)));
  if (!simplicial_identities_hold(c, a)) {
    lines.push_back("simplicial-identities: no");
    return 1;
  }
  const auto k = check_kan(c, a);
  if (!k.ok()) {
    lines.push_back("kan: no (" + k.failure + ")");
    return 1;
  }
  lines.push_back("kan: yes, witness stored");
  lines.push_back("equivalence-relation: " + yes(is_equivalence_groupoid(c, a)));
  store(*k.witness);
  return 0;
}

int construct_e2(const io::Bundle& b, const Options& o, Json& doc, std::vector<std::string>& lines) {
  const auto& g = groupoid_arg(b, o);
  lines.push_back("groupoid: " + o.groupoid);
  if (g.over_sets) {
    const FinSet s;
    return construct_e2_on<FinSet>(
        s, *g.over_sets, [&](const auto& w) { doc["groupoids"][o.groupoid]["kan"] = io::kan_to_json(s, w); }, lines);
  }
  const SumsTab s(b.category(g.carrier));
  return construct_e2_on<SumsTab>(
      s, *g.over_sums, [&](const auto& w) { doc["groupoids"][o.groupoid]["kan"] = io::kan_to_json(s, w); }, lines);
}

int construct_quotient(const io::Bundle& b, const Options& o, Json& doc, std::vector<std::string>& lines) {
  const auto& g = groupoid_arg(b, o);
  if (!g.over_sets) throw Error(ErrorCode::precondition, "quotients are computed for groupoids in finite sets");
  const FinSet s;
  const auto& a = *g.over_sets;
  if (!check_kan(s, a).ok()) throw Error(ErrorCode::not_groupoid, o.groupoid + " is not Kan");
  const auto q = s.quotient(a.d0, a.d1, a.s);
  const auto set = io::put_set(doc, o.groupoid + ".quotient", q.object.size);
  io::put_function(doc, o.groupoid + ".projection", doc["groupoids"][o.groupoid]["A0"].get<std::string>(), set,
                   q.projection);
  const auto probes = s.objects_up_to(3);
  const auto cert = certify_coequalizer(s, a.d0, a.d1, q.object, q.projection, std::span<const FinSet::Object>(probes));
  const auto& gj = doc["groupoids"][o.groupoid];
  doc["certificates"][o.groupoid + ".quotient"] = Json{{"kind", "coequalizer"}, {"carrier", "finset"}, {"f", gj["d0"]},
                                                      {"g", gj["d1"]}, {"object", set}, {"projection", o.groupoid + ".projection"}};
  lines.push_back("groupoid: " + o.groupoid);
  lines.push_back("blocks: " + std::to_string(q.object.size));
  lines.push_back("certificate: " + std::string(cert.valid ? "valid" : "invalid " + cert.witness) + " (probes of size <= 3)");
  return cert.valid ? 0 : 1;
}

int construct_closure(const io::Bundle& b, const Options& o, Json& doc, std::vector<std::string>& lines) {
  if (o.relation.empty()) throw Error(ErrorCode::precondition, "--relation is required");
  const auto& r = io::detail::lookup(b.relations, o.relation, "relation", "--relation");
  const FinSet s;
  const auto n = b.sets.at(r.set).labels.size();
  std::vector<std::uint32_t> l, rr;
  for (auto [x, y] : r.pairs) {
    l.push_back(x);
    rr.push_back(y);
  }
  const auto cl = equivalence_closure(s, relation_over(s, FinSet::set(n), FinSet::function(n, l), FinSet::function(n, rr)));
  const auto k = check_kan(s, cl.groupoid);
  io::put_groupoid(doc, o.relation + ".closure", cl.groupoid, k.witness);
  lines.push_back("relation: " + o.relation);
  lines.push_back("pairs: " + std::to_string(cl.groupoid.a1.size));
  lines.push_back("rounds: " + std::to_string(cl.rounds));
  lines.push_back("kan: " + yes(k.ok()));
  return k.ok() ? 0 : 1;
}

template <class C>
void describe_pullback(const C& c, const Pullback<C>& pb, std::span<const Obj<C>> probes, std::vector<std::string>& lines,
                       bool& valid) {
  const auto cert = certify_pullback(c, pb, probes);
  valid = cert.valid;
  lines.push_back("apex: " + c.describe(pb.apex));
  lines.push_back("iso-to-source: " + std::string(is_iso(c, pb.left) ? "yes" : "no"));
  lines.push_back("certificate: " + std::string(cert.valid ? "valid" : "invalid " + cert.witness) + " (" +
                  std::to_string(probes.size()) + " probes)");
}

int construct_pullback(const io::Bundle& b, const Options& o, Json& doc, std::vector<std::string>& lines) {
  if (o.f.empty() || o.g.empty()) throw Error(ErrorCode::precondition, "--f and --g are required");
  bool valid = false;
  const auto name = "pullback(" + o.f + "," + o.g + ")";
  if (b.functions.count(o.f)) {
    const FinSet s;
    const auto& f = b.functions.at(o.f);
    const auto& g = io::detail::lookup(b.functions, o.g, "function", "--g");
    if (f.tgt != g.tgt) throw Error(ErrorCode::precondition, "not a cospan");
    const auto pb = s.pullback(f, g);
    auto probes = s.objects_up_to(3);
    probes.push_back(pb.apex);
    describe_pullback(s, pb, std::span<const FinSet::Object>(probes), lines, valid);
    const auto apex = io::put_set(doc, name, pb.apex.size);
    io::put_function(doc, name + ".left", apex, doc["functions"][o.f]["src"], pb.left);
    io::put_function(doc, name + ".right", apex, doc["functions"][o.g]["src"], pb.right);
    doc["certificates"][name] = Json{{"kind", "pullback"}, {"carrier", "finset"}, {"f", o.f}, {"g", o.g},
                                     {"apex", apex}, {"left", name + ".left"}, {"right", name + ".right"}};
  } else {
    const auto& [cf, f] = io::detail::lookup(b.sum_morphisms, o.f, "function or sum-morphism", "--f");
    const auto& [cg, g] = io::detail::lookup(b.sum_morphisms, o.g, "sum-morphism", "--g");
    if (cf != cg || !(f.tgt == g.tgt)) throw Error(ErrorCode::precondition, "not a cospan");
    const SumsTab s(b.category(cf));
    const auto pb = s.pullback(f, g);
    std::vector<SumsTab::Object> probes = {s.initial(), pb.apex};
    for (const auto& x : s.base().objects()) probes.push_back(s.singleton(x));
    for (const auto& [n, e] : b.sum_objects)
      if (e.first == cf) probes.push_back(e.second);
    describe_pullback(s, pb, std::span<const SumsTab::Object>(probes), lines, valid);
    io::put_sum_object(doc, s.base(), cf, name, pb.apex);
    io::put_sum_morphism(doc, s.base(), name + ".left", name, doc["sum-morphisms"][o.f]["src"], pb.left);
    io::put_sum_morphism(doc, s.base(), name + ".right", name, doc["sum-morphisms"][o.g]["src"], pb.right);
    doc["certificates"][name] = Json{{"kind", "pullback"}, {"carrier", cf}, {"f", o.f}, {"g", o.g},
                                     {"apex", name}, {"left", name + ".left"}, {"right", name + ".right"}};
  }
  return valid ? 0 : 1;
}

int construct_coequalize(const io::Bundle& b, const Options& o, Json& doc, std::vector<std::string>& lines) {
  if (o.f.empty() || o.g.empty()) throw Error(ErrorCode::precondition, "--f and --g are required");
  const auto& f = io::detail::lookup(b.functions, o.f, "function", "--f");
  const auto& g = io::detail::lookup(b.functions, o.g, "function", "--g");
  const FinSet s;
  const auto c = coequalizer_pair(s, f, g);
  const auto probes = s.objects_up_to(3);
  const auto cert =
      certify_coequalizer(s, f, g, c.quotient.object, c.quotient.projection, std::span<const FinSet::Object>(probes));
  const auto name = "coequalizer(" + o.f + "," + o.g + ")";
  const auto q = io::put_set(doc, name, c.quotient.object.size);
  io::put_function(doc, name + ".projection", doc["functions"][o.f]["tgt"], q, c.quotient.projection);
  doc["certificates"][name] = Json{{"kind", "coequalizer"}, {"carrier", "finset"}, {"f", o.f}, {"g", o.g},
                                   {"object", q}, {"projection", name + ".projection"}};
  lines.push_back("size: " + std::to_string(c.quotient.object.size));
  lines.push_back("closure-pairs: " + std::to_string(c.closure.groupoid.a1.size));
  lines.push_back("certificate: " + std::string(cert.valid ? "valid" : "invalid " + cert.witness) + " (probes of size <= 3)");
  return cert.valid ? 0 : 1;
}

int construct_embed(const io::Bundle& b, const Options& o, Json& doc, std::vector<std::string>& lines) {
  const auto& g = groupoid_arg(b, o);
  if (!g.over_sums) throw Error(ErrorCode::precondition, "embed-psh needs a groupoid of sums over a tabulated category");
  const SumsTab s(b.category(g.carrier));
  const auto e = embed_to_psh(s, *g.over_sums);
  const Psh psh(s.base());
  io::put_presheaf(doc, s.base(), g.carrier, o.groupoid + ".psh", e.presheaf);
  lines.push_back("groupoid: " + o.groupoid);
  lines.push_back("presheaf: " + psh.describe(e.presheaf));
  return psh.check(e.presheaf).empty() ? 0 : 1;
}

int cmd_construct(const std::string& op, const Options& o) {
  const auto b = io::load_bundle(o.path);
  Json doc = b.document;
  std::vector<std::string> lines = {"op: " + op};
  int code = 0;
  if (op == "sums")
    code = construct_sums(b, o, doc, lines);
  else if (op == "e2")
    code = construct_e2(b, o, doc, lines);
  else if (op == "quotient")
    code = construct_quotient(b, o, doc, lines);
  else if (op == "closure")
    code = construct_closure(b, o, doc, lines);
  else if (op == "pullback")
    code = construct_pullback(b, o, doc, lines);
  else if (op == "coequalize")
    code = construct_coequalize(b, o, doc, lines);
  else if (op == "embed-psh")
    code = construct_embed(b, o, doc, lines);
  else
    throw Error(ErrorCode::malformed, "unknown op '" + op + "'");
  write_output(o, doc, lines);
  print_lines(lines);
  return code;
}

// ---- audit ----

AuditReport skipped(const std::string& suite, const std::string& instance, const std::string& reason) {
  AuditReport rep;
  ClauseTally t(suite, instance, "precondition", "");
  t.skip(reason);
  rep.add(t.record());
  return rep;
}

AuditReport psh_compare(const Tabulated& base, const std::string& instance, std::size_t samples) {
  const SumsTab s(base);
  const E2Tab e(s);
  const Psh psh(base);
  const auto grid = instances::labelled_two_groupoids(s, 3, 200);
  AuditReport rep;
  if (grid.empty()) return skipped("psh-compare", instance, "no Kan groupoids with levels <= 3");
  const auto n = grid.size();
  const auto total = n * n;
  const auto width = std::to_string(samples).size();
  for (std::size_t k = 0; k < samples; ++k) {
    const auto pair = (k * total) / samples;  // spread over the pair list
    const auto& w = grid[pair / n];
    const auto& v = grid[pair % n];
    auto label = std::to_string(k);
    label.insert(0, width - label.size(), '0');
    ClauseTally t("psh-compare", instance, "hom-count-" + label,
                  "pair=" + std::to_string(pair / n) + "," + std::to_string(pair % n));
    const auto r = check_fully_faithful(e, psh, w, v);
    t.check(r.ok(), r.witness);
    auto rec = t.record();
    rec.grid += " e2=" + std::to_string(r.e2_count) + " psh=" + std::to_string(r.psh_count);
    rep.add(rec);
  }
  return rep;
}

AuditReport audit_tabulated(const std::string& suite, const Tabulated& t, const std::vector<Tabulated::Object>& objects,
                            const std::string& instance, const Options& o) {
  if (suite == "psh-compare") return psh_compare(t, instance, o.samples);
  if (suite == "extensivity") return check_extensivity(t, objects, instance);
  const auto grid = instances::tabulated_giraud_grid(t, objects);
  if (suite == "giraud") return audit_giraud(t, grid, instance);
  return audit_pretopos(t, grid, objects, instance);
}

AuditReport audit_builtin(const std::string& suite, const std::string& instance, const Options& o) {
  if (instance == "finset") {
    const FinSet s;
    const auto n = o.max_size ? o.max_size : 3;
    const auto grid = instances::finset_giraud_grid(n);
    if (suite == "giraud") return audit_giraud(s, grid, instance);
    if (suite == "pretopos") return audit_pretopos(s, grid, grid.objects, instance);
    if (suite == "extensivity") return check_extensivity(s, grid.objects, instance);
    return skipped(suite, instance, "psh-compare needs a tabulated base category");
  }
  if (instance == "finposet") {
    const auto p = FinPoset::chain(3);
    const GiraudGrid<FinPoset> grid{p.objects(), {}, {}, "chain3"};
    if (suite == "giraud") return audit_giraud(p, grid, instance);
    if (suite == "pretopos") return audit_pretopos(p, grid, grid.objects, instance);
    if (suite == "extensivity") return skipped(suite, instance, "instance has no chosen coproducts");
    return psh_compare(tabulate::poset(p, "chain3"), instance, o.samples);
  }
  if (instance == "pointed-sets") {
    const auto t = tabulate::pointed_sets(o.max_size ? o.max_size : 4);
    return audit_tabulated(suite, t, {t.object("p1"), t.object("p2")}, instance, o);
  }
  if (instance == "terminal" || instance == "chain3") {
    const auto t = instance == "terminal" ? tabulate::terminal_category() : tabulate::poset(FinPoset::chain(3), "chain3");
    if (suite == "psh-compare") return psh_compare(t, instance, o.samples);
    return audit_tabulated(suite, t, t.objects(), instance, o);
  }
  if (instance == "e2-point") {
    auto s = instances::sums_of_point();
    const instances::E2OfSums e(s);
    const auto grid = instances::e2_point_giraud_grid(e, o.max_size ? o.max_size : 2);
    if (suite == "giraud") return audit_giraud(e, grid, instance);
    if (suite == "pretopos") return audit_pretopos(e, grid, grid.objects, instance);
    if (suite == "extensivity") return check_extensivity(e, grid.objects, instance);
    return skipped(suite, instance, "psh-compare takes the base category: use terminal");
  }
  throw Error(ErrorCode::malformed, "unknown instance '" + instance + "' and no such bundle file");
}

int cmd_audit(const std::string& suite, const std::string& instance, const Options& o) {
  static const std::vector<std::string> suites = {"giraud", "pretopos", "extensivity", "psh-compare"};
  if (std::find(suites.begin(), suites.end(), suite) == suites.end())
    throw Error(ErrorCode::malformed, "unknown suite '" + suite + "'");
  AuditReport rep;
  if (std::filesystem::is_regular_file(instance)) {
    const auto b = io::load_bundle(instance);
    std::string cat = o.category;
    std::vector<Tabulated::Object> objects;
    if (!o.grid.empty()) {
      const auto& g = io::detail::lookup(b.grids, o.grid, "grid", "--grid");
      if (!cat.empty() && cat != g.category) throw Error(ErrorCode::malformed, "--grid lives over another category");
      cat = g.category;
      for (const auto& id : g.objects) objects.push_back(b.category(cat).object(id));
    }
    if (cat.empty()) {
      if (b.categories.size() != 1) throw Error(ErrorCode::malformed, "bundle has several categories: pass --category");
      cat = b.categories.begin()->first;
    }
    const auto& t = b.category(cat);
    if (const auto ax = check_category_axioms(t); !ax.ok())
      throw Error(ErrorCode::precondition, "category " + cat + " violates its axioms: " + ax.violations.front());
    if (objects.empty()) objects = t.objects();
    rep = audit_tabulated(suite, t, objects, cat, o);
  } else {
    rep = audit_builtin(suite, instance, o);
  }
  std::cout << io::format_report(rep);
  return io::exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lexcat: finite pretopos-completion constructions and audits"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "validate a bundle");
  check->add_option("bundle", o.path, "bundle file")->required();

  std::string op;
  auto* construct = app.add_subcommand("construct", "run a construction on a bundle");
  construct->add_option("op", op, "sums|e2|quotient|closure|pullback|coequalize|embed-psh")->required();
  construct->add_option("bundle", o.path, "bundle file")->required();
  construct->add_option("--out", o.out, "output bundle");
  construct->add_option("--groupoid", o.groupoid);
  construct->add_option("--relation", o.relation);
  construct->add_option("--f", o.f);
  construct->add_option("--g", o.g);
  construct->add_option("--objects", o.objects)->delimiter(',');

  std::string suite, instance;
  auto* audit = app.add_subcommand("audit", "run an audit suite");
  audit->add_option("suite", suite, "giraud|pretopos|extensivity|psh-compare")->required();
  audit->add_option("instance", instance, "builtin instance or bundle file")->required();
  audit->add_option("--grid", o.grid, "named grid of the bundle");
  audit->add_option("--category", o.category, "category of the bundle");
  audit->add_option("--max-size", o.max_size, "size bound of builtin grids");
  audit->add_option("--samples", o.samples, "sample pairs for psh-compare");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(o);
    if (*construct) return cmd_construct(op, o);
    return cmd_audit(suite, instance, o);
  } catch (const Error& e) {
    std::cerr << "error " << e.what() << "\n";
    return io::exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error E_MALFORMED: " << e.what() << "\n";
    return 2;
  }
}
