#include <catch_amalgamated.hpp>

#include "lexcat/kernel/finposet.hpp"
#include "lexcat/kernel/finset.hpp"
#include "lexcat/kernel/functor.hpp"
#include "lexcat/kernel/limits.hpp"
#include "lexcat/kernel/tabulated.hpp"

using namespace lexcat;

namespace {

FinSet::Morphism fn(std::size_t tgt, std::vector<std::uint32_t> t) { return FinSet::function(tgt, std::move(t)); }

ErrorCode code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::malformed;
}

}  // namespace

TEST_CASE("axiom checker on small tables", "[kernel]") {
  CHECK(check_category_axioms(tabulate::terminal_category()).ok());
  CHECK(check_category_axioms(tabulate::z2_monoid()).ok());
  CHECK(check_category_axioms(tabulate::discrete(3)).ok());

  TableSpec t;
  t.objects = {"a", "b"};
  t.morphisms = {{"ia", "a", "a"}, {"ib", "b", "b"}, {"f", "a", "b"}};
  t.identities = {{"a", "ia"}, {"b", "ib"}};
  t.compose = {{"ia", "ia", "ia"}, {"ib", "ib", "ib"}, {"f", "ia", "f"}};  // ib∘f missing
  auto rep = check_category_axioms(Tabulated(t));
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0] == "missing composite at pair (ib, f)");

  // wrong associativity: a non-associative "monoid"
  TableSpec bad;
  bad.objects = {"*"};
  bad.morphisms = {{"e", "*", "*"}, {"x", "*", "*"}, {"y", "*", "*"}};
  bad.identities = {{"*", "e"}};
  for (auto m : {"e", "x", "y"}) {
    bad.compose.push_back({"e", m, m});
    if (std::string(m) != "e") bad.compose.push_back({m, "e", m});
  }
  bad.compose.push_back({"x", "x", "y"});  // (x x) x = y x = x but x (x x) = x y = y
  bad.compose.push_back({"x", "y", "y"});
  bad.compose.push_back({"y", "x", "x"});
  bad.compose.push_back({"y", "y", "y"});
  auto r2 = check_category_axioms(Tabulated(bad));
  CHECK_FALSE(r2.ok());
}

TEST_CASE("dangling references are malformed", "[kernel]") {
  TableSpec t;
  t.objects = {"a"};
  t.morphisms = {{"f", "a", "zz"}};
  CHECK(code_of([&] { Tabulated c(t); }) == ErrorCode::malformed);
  TableSpec u;
  u.objects = {"a"};
  u.morphisms = {{"f", "a", "a"}};
  u.compose = {{"f", "g", "f"}};
  CHECK(code_of([&] { Tabulated c(u); }) == ErrorCode::malformed);
}

TEST_CASE("hom-set enumeration", "[kernel]") {
  FinSet s;
  auto h = s.hom(FinSet::set(2), FinSet::set(3));
  CHECK(h.size() == 9);
  CHECK(std::is_sorted(h.begin(), h.end()));
  CHECK(std::adjacent_find(h.begin(), h.end()) == h.end());

  auto p = FinPoset::chain(3);
  CHECK(p.hom({0}, {2}).size() == 1);
  CHECK(p.hom({2}, {0}).empty());

  auto z2 = tabulate::z2_monoid();
  auto endo = z2.hom(z2.object("*"), z2.object("*"));
  CHECK(std::find(endo.begin(), endo.end(), z2.identity(z2.object("*"))) != endo.end());
}

TEST_CASE("cap guard on FinSet hom", "[kernel]") {
  FinSet s;
  CHECK(code_of([&] { (void)s.hom(FinSet::set(30), FinSet::set(3)); }) == ErrorCode::cap_exceeded);
}

TEST_CASE("morphism classification", "[kernel]") {
  FinSet s;
  auto probes = s.objects_up_to(3);
  auto inc = morphism_class(s, fn(2, {0}), probes);
  CHECK(inc.mono);
  CHECK_FALSE(inc.epi);
  CHECK_FALSE(inc.iso);
  auto sur = morphism_class(s, fn(1, {0, 0}), probes);
  CHECK(sur.epi);
  CHECK_FALSE(sur.mono);
  auto id = morphism_class(s, s.identity(FinSet::set(3)), probes);
  CHECK((id.mono && id.epi && id.iso));

  auto swap = fn(2, {1, 0});
  auto c = morphism_class(s, swap, probes);
  CHECK((c.iso && c.mono && c.epi));
}

TEST_CASE("chosen terminal objects", "[kernel]") {
  FinSet s;
  auto probes = s.objects_up_to(3);
  CHECK(s.terminal().size == 1);
  CHECK(certify_terminal(s, s.terminal(), std::span<const FinSet::Object>(probes)).valid);
  auto p = FinPoset::chain(3);
  CHECK(p.terminal().element == 2);
  auto d2 = tabulate::discrete(2);
  try {
    (void)d2.terminal();
    FAIL("expected no terminal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_terminal);
    CHECK(std::string(e.what()).find("near-misses") != std::string::npos);
  }
  auto t = tabulate::terminal_category();
  CHECK(t.id(t.terminal()) == "*");
}

TEST_CASE("chosen pullbacks", "[kernel]") {
  FinSet s;
  auto probes = s.objects_up_to(3);
  auto f = fn(1, {0, 0});
  auto pb = s.pullback(f, f);
  CHECK(pb.apex.size == 4);
  CHECK(certify_pullback(s, pb, std::span<const FinSet::Object>(probes)).valid);

  auto id = s.identity(FinSet::set(3));
  auto pid = s.pullback(id, id);
  CHECK(pid.apex.size == 3);
  CHECK(pid.left == pid.right);

  // cardinality oracle over a sweep of cospans
  for (const auto& g : s.hom(FinSet::set(3), FinSet::set(2)))
    for (const auto& h : s.hom(FinSet::set(2), FinSet::set(2))) {
      std::size_t oracle = 0;
      for (std::uint32_t x = 0; x < 3; ++x)
        for (std::uint32_t y = 0; y < 2; ++y) oracle += g(x) == h(y);
      auto q = s.pullback(g, h);
      CHECK(q.apex.size == oracle);
    }

  // meets in a poset: diamond 0 < 1,2 < 3
  FinPoset diamond({"bot", "l", "r", "top"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  auto pm = diamond.pullback({1, 3}, {2, 3});
  CHECK(pm.apex.element == 0);
  auto po = diamond.objects();
  CHECK(certify_pullback(diamond, pm, std::span<const FinPoset::Object>(po)).valid);

  // tabulated search agrees with the poset meet
  auto tab = tabulate::poset(diamond);
  auto lr = tab.pullback(tab.hom(tab.object("l"), tab.object("top")).front(),
                         tab.hom(tab.object("r"), tab.object("top")).front());
  CHECK(tab.id(lr.apex) == "bot");

  // deterministic
  auto again = tab.pullback(tab.hom(tab.object("l"), tab.object("top")).front(),
                            tab.hom(tab.object("r"), tab.object("top")).front());
  CHECK(again.apex == lr.apex);
}

TEST_CASE("tabulated pullback failure names a witness", "[kernel]") {
  // two parallel arrows a ⇉ b and nothing else: no pullback of (f, g)
  TableSpec t;
  t.objects = {"a", "b"};
  t.morphisms = {{"ia", "a", "a"}, {"ib", "b", "b"}, {"f", "a", "b"}, {"g", "a", "b"}};
  t.identities = {{"a", "ia"}, {"b", "ib"}};
  t.compose = {{"ia", "ia", "ia"}, {"ib", "ib", "ib"}, {"f", "ia", "f"}, {"g", "ia", "g"}, {"ib", "f", "f"}, {"ib", "g", "g"}};
  Tabulated c(t);
  REQUIRE(check_category_axioms(c).ok());
  try {
    (void)c.pullback(c.morphism("f"), c.morphism("g"));
    FAIL("expected no pullback");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_pullback);
  }
}

TEST_CASE("derived limits", "[kernel]") {
  FinSet s;
  auto probes = s.objects_up_to(3);
  std::span<const FinSet::Object> ps(probes);
  auto prod = product(s, FinSet::set(2), FinSet::set(2));
  CHECK(prod.apex.size == 4);

  auto f = fn(3, {0, 2, 1});
  auto eq = equalizer(s, f, f);
  CHECK(eq.object.size == 3);
  CHECK(certify_equalizer(s, f, f, eq, ps).valid);
  CHECK(is_mono_on(s, eq.leg, ps));

  auto c0 = fn(2, {0, 0}), c1 = fn(2, {1, 1});
  auto e2 = equalizer(s, c0, c1);
  CHECK(e2.object.size == 0);
  CHECK(certify_equalizer(s, c0, c1, e2, ps).valid);

  auto g = fn(2, {0, 1, 1}), h = fn(2, {0, 0, 1});
  auto e3 = equalizer(s, g, h);
  CHECK(e3.object.size == 2);
  CHECK(certify_equalizer(s, g, h, e3, ps).valid);
}

TEST_CASE("factor through a mono", "[kernel]") {
  FinSet s;
  auto probes = s.objects_up_to(2);
  std::span<const FinSet::Object> ps(probes);
  auto m = fn(3, {0, 2});
  auto hit = factor_through(s, fn(3, {2, 2, 0}), m, ps);
  REQUIRE(hit);
  CHECK(hit->table == std::vector<std::uint32_t>{1, 1, 0});
  CHECK(factor_through(s, fn(3, {1}), m, ps) == std::nullopt);
  auto id = s.identity(FinSet::set(3));
  CHECK(factor_through(s, fn(3, {1, 0}), id, ps)->table == std::vector<std::uint32_t>{1, 0});
  CHECK(code_of([&] { (void)factor_through(s, fn(1, {0}), fn(1, {0, 0}), ps); }) == ErrorCode::not_monic);
}

TEST_CASE("iso implies mono and epi", "[kernel]") {
  FinSet s;
  auto probes = s.objects_up_to(2);
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b)
      for (const auto& f : s.hom(FinSet::set(a), FinSet::set(b))) {
        auto c = morphism_class(s, f, probes);
        if (c.iso) CHECK((c.mono && c.epi));
      }
}

TEST_CASE("graph-shaped limits", "[kernel]") {
  FinSet s;
  // a path x - e - y - e' - z as a diagram of sets
  GraphDiagram<FinSet> d;
  d.vertices = {FinSet::set(2), FinSet::set(2), FinSet::set(2)};
  d.edges.push_back({FinSet::set(3), 0, 1, fn(2, {0, 0, 1}), fn(2, {0, 1, 1})});
  d.edges.push_back({FinSet::set(2), 1, 2, fn(2, {0, 1}), fn(2, {1, 0})});
  auto lim = limit(s, d);
  // pairs (e, e') with e.to == e'.from: e∈{0,1,2} to {0,1,1}; e' from {0,1}
  CHECK(lim.apex.size == 3);
  auto m = limit_mediator(s, lim, lim.apex, lim.vertex_legs, lim.edge_legs);
  CHECK(m == s.identity(lim.apex));
  auto single = limit(s, GraphDiagram<FinSet>{{FinSet::set(4)}, {}});
  CHECK(single.apex.size == 4);
}

TEST_CASE("functor checks", "[kernel]") {
  auto c = tabulate::poset(FinPoset::chain(3), "chain3");
  auto objs = c.objects();
  auto id = identity_functor<Tabulated>();
  CHECK(check_functor(c, c, id, std::span<const Tabulated::Object>(objs)).empty());
  CHECK(check_lex(c, c, id, std::span<const Tabulated::Object>(objs), std::span<const Tabulated::Object>(objs)).empty());

  // hom(X, -) : C -> FinSet
  auto x = c.object("0");
  Functor<Tabulated, FinSet> hx{
      [&](const Tabulated::Object& y) { return FinSet::set(c.hom(x, y).size()); },
      [&](const Tabulated::Morphism& f) {
        auto from = c.hom(x, c.src(f)), to = c.hom(x, c.tgt(f));
        std::vector<std::uint32_t> t;
        for (const auto& u : from)
          t.push_back(static_cast<std::uint32_t>(std::find(to.begin(), to.end(), c.compose(f, u)) - to.begin()));
        return FinSet::function(to.size(), t);
      },
      true};
  FinSet s;
  auto probes = s.objects_up_to(2);
  CHECK(check_functor(c, s, hx, std::span<const Tabulated::Object>(objs)).empty());
  CHECK(check_lex(c, s, hx, std::span<const Tabulated::Object>(objs), std::span<const FinSet::Object>(probes)).empty());
}

TEST_CASE("pointed sets tabulate to a category", "[kernel]") {
  auto p = tabulate::pointed_sets(3);
  CHECK(p.object_count() == 3);
  CHECK(p.morphism_count() == 1 + 1 + 1 + 1 + 2 + 3 + 1 + 4 + 9);
  CHECK(check_category_axioms(p).ok());
  CHECK(p.id(p.terminal()) == "p1");
  CHECK(p.id(p.initial()) == "p1");
}
