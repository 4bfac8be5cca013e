#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "lexcat/groupoids/ox.hpp"
#include "lexcat/instances.hpp"
#include "lexcat/kernel/limits.hpp"
#include "lexcat/presheaves/embed.hpp"
#include "lexcat/presheaves/psh.hpp"

using namespace lexcat;

namespace {

Tabulated chain3() { return tabulate::poset(FinPoset::chain(3), "chain3"); }

std::size_t power(std::size_t b, std::size_t e) { return static_cast<std::size_t>(std::pow(b, e)); }

}  // namespace

TEST_CASE("presheaf enumeration counts functors", "[presheaves]") {
  const Psh point(tabulate::terminal_category());
  CHECK(point.enumerate(2).size() == 3);
  const Psh psh(chain3());
  // a presheaf on a 3-chain is a composable pair of functions
  std::size_t expected = 0;
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = 0; b <= 2; ++b)
      for (std::size_t c = 0; c <= 2; ++c) expected += power(b, a) * power(c, b);
  const auto all = psh.enumerate(2);
  CHECK(all.size() == expected);
  for (const auto& f : all) CHECK(psh.check(f).empty());
  CHECK(std::set<Presheaf>(all.begin(), all.end()).size() == all.size());
}

TEST_CASE("malformed presheaves are reported", "[presheaves]") {
  const Psh psh(chain3());
  auto f = psh.constant(2);
  CHECK(psh.check(f).empty());
  const auto id0 = psh.base().identity(psh.base().objects()[0]);
  f.actions[id0.index] = {1, 0};
  CHECK_FALSE(psh.check(f).empty());
  f.actions[id0.index] = {0};
  CHECK(psh.check(f).front().find("wrong domain") != std::string::npos);
}

TEST_CASE("Yoneda lemma by counting", "[presheaves]") {
  const Psh psh(chain3());
  for (const auto& f : psh.enumerate(2))
    for (const auto& x : psh.base().objects()) {
      const auto nats = psh.hom(psh.yoneda(x), f);
      REQUIRE(nats.size() == f.values[x.index]);
      std::set<Psh::Morphism> classified;
      for (std::uint32_t z = 0; z < f.values[x.index]; ++z) {
        const auto m = psh.yoneda_map(x, f, z);
        CHECK(psh.is_natural(m));
        classified.insert(m);
      }
      CHECK(classified == std::set<Psh::Morphism>(nats.begin(), nats.end()));
    }
}

TEST_CASE("natural transformations compose and respect identities", "[presheaves]") {
  const Psh psh(chain3());
  const auto all = psh.enumerate(1);
  for (const auto& f : all)
    for (const auto& g : all)
      for (const auto& n : psh.hom(f, g)) {
        CHECK(psh.is_natural(n));
        CHECK(psh.compose(n, psh.identity(f)) == n);
        CHECK(psh.compose(psh.identity(g), n) == n);
      }
}

TEST_CASE("pointwise limits and colimits are universal", "[presheaves]") {
  const Psh psh(chain3());
  const auto objs = psh.base().objects();
  const std::vector<Presheaf> probes = {psh.initial(), psh.terminal(), psh.yoneda(objs[0]), psh.yoneda(objs[1]),
                                        psh.constant(2)};
  const std::span<const Presheaf> span(probes);
  const auto y1 = psh.yoneda(objs[1]), y2 = psh.yoneda(objs[2]);
  const auto pb = psh.pullback(psh.to_terminal(y1), psh.to_terminal(y2));
  CHECK(pb.apex == y1);
  CHECK(certify_pullback(psh, pb, span).valid);

  const auto cp = psh.coproduct({y1, y2});
  CHECK(cp.object.values == std::vector<std::uint32_t>{2, 2, 1});
  const auto u = psh.copair(cp, {psh.to_terminal(y1), psh.to_terminal(y2)});
  CHECK(psh.compose(u, cp.injections[1]) == psh.to_terminal(y2));

  // both injections of y2 + y2 identified
  const auto two = psh.coproduct({y2, y2});
  const auto q = psh.quotient(two.injections[0], two.injections[1], two.injections[0]);
  CHECK(q.object == y2);
  CHECK(certify_coequalizer(psh, two.injections[0], two.injections[1], q.object, q.projection, span).valid);
}

TEST_CASE("hom search honours the cap", "[presheaves]") {
  const Psh psh(chain3());
  CHECK_THROWS_AS(psh.hom(psh.constant(40), psh.constant(40)), Error);
}

TEST_CASE("the embedding sends points to representables", "[presheaves]") {
  const auto t = chain3();
  const SumsTab s(t);
  const Psh psh(t);
  for (const auto& c : t.objects())
    CHECK(embed_to_psh(s, discrete_simplicial(s, s.singleton(c))).presheaf == psh.yoneda(c));
  // a sum embeds as the coproduct
  const auto o = t.objects();
  const SumsTab::Object x{{o[0], o[2]}};
  CHECK(embed_to_psh(s, discrete_simplicial(s, x)).presheaf == psh.coproduct({psh.yoneda(o[0]), psh.yoneda(o[2])}).object);
}

TEST_CASE("embedding a groupoid takes components", "[presheaves]") {
  auto s = instances::sums_of_point();
  const Psh psh(s.base());
  for (const auto& w : instances::e2_point_grid(s, 3)) {
    const auto e = embed_to_psh(s, w);
    const FinSet fs;
    const auto q = fs.quotient(FinSet::function(w.a0.size(), w.d0.index), FinSet::function(w.a0.size(), w.d1.index), {});
    CHECK(e.presheaf.values == std::vector<std::uint32_t>{static_cast<std::uint32_t>(q.object.size)});
  }
}

TEST_CASE("full faithfulness on small grids", "[presheaves]") {
  SECTION("over the point") {
    auto s = instances::sums_of_point();
    const instances::E2OfSums e(s);
    const Psh psh(s.base());
    const auto grid = instances::e2_point_grid(s, 2);
    for (const auto& w : grid)
      for (const auto& v : grid) {
        const auto r = check_fully_faithful(e, psh, w, v);
        INFO(r.witness);
        CHECK(r.ok());
        CHECK(r.e2_count == r.psh_count);
      }
  }
  SECTION("over a chain") {
    const SumsTab s(chain3());
    const E2Tab e(s);
    const Psh psh(s.base());
    const auto grid = instances::labelled_two_groupoids(s, 2, 8);
    REQUIRE(grid.size() == 8);
    for (const auto& w : grid)
      for (const auto& v : grid) {
        const auto r = check_fully_faithful(e, psh, w, v);
        INFO(r.witness);
        CHECK(r.ok());
      }
  }
}

TEST_CASE("representable decomposition", "[presheaves]") {
  const Psh psh(chain3());
  const auto o = psh.base().objects();
  const auto d = decompose_representables(psh, psh.yoneda(o[1]));
  REQUIRE(d.has_value());
  REQUIRE(d->generators.size() == 1);
  CHECK(d->generators[0].first == o[1]);
  CHECK(decompose_representables(psh, psh.initial())->generators.empty());
  // two elements over o[1] restricting to one element over o[0]
  Presheaf glued = psh.yoneda(o[1]);
  glued.values = {1, 2, 0};
  for (const auto& m : psh.base().morphisms()) {
    const auto src = psh.base().src(m).index, tgt = psh.base().tgt(m).index;
    glued.actions[m.index].assign(glued.values[tgt], 0);
    if (src == tgt)
      for (std::uint32_t k = 0; k < glued.values[tgt]; ++k) glued.actions[m.index][k] = k;
  }
  REQUIRE(psh.check(glued).empty());
  CHECK_FALSE(decompose_representables(psh, glued).has_value());
}

TEST_CASE("presheaf covers are equivalences onto their targets", "[presheaves]") {
  SECTION("over the point") {
    auto s = instances::sums_of_point();
    const Psh psh(s.base());
    for (const auto& z : psh.enumerate(3)) {
      const auto c = presheaf_cover(s, psh, z);
      INFO(psh.describe(z) << " " << c.witness);
      CHECK(c.ok());
    }
  }
  SECTION("over a chain") {
    const SumsTab s(chain3());
    const Psh psh(s.base());
    for (const auto& z : psh.enumerate(1)) {
      const auto c = presheaf_cover(s, psh, z);
      INFO(psh.describe(z) << " " << c.witness);
      CHECK(c.ok());
      // R is a fibre product inside Y × Y
      CHECK(is_equivalence_groupoid(s, c.groupoid));
    }
  }
}

TEST_CASE("(O, X) presentations round-trip", "[presheaves]") {
  const SumsTab s(chain3());
  const auto grid = instances::labelled_two_groupoids(s, 3, 40);
  REQUIRE_FALSE(grid.empty());
  for (const auto& w : grid) {
    const auto p = to_ox(s, w);
    CHECK(check_kan(FinSet{}, p.o).ok());
    CHECK(from_ox(s, p) == w);
    CHECK(to_ox(s, from_ox(s, p)) == p);
  }
  auto bad = to_ox(s, grid.front());
  bad.face0.pop_back();
  CHECK_THROWS_AS(from_ox(s, bad), Error);
}
