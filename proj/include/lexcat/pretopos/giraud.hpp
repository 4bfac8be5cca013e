#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexcat/audit.hpp"
#include "lexcat/core.hpp"
#include "lexcat/groupoids/simplicial.hpp"
#include "lexcat/kernel/limits.hpp"
#include "lexcat/pretopos/closure.hpp"
#include "lexcat/pretopos/effective.hpp"
#include "lexcat/sums/extensivity.hpp"

namespace lexcat {

/// d0, d1 : R -> X jointly monic, reflexive via s, symmetric and transitive.
template <class C>
struct EquivalenceRelation {
  Obj<C> x;
  Obj<C> r;
  Mor<C> d0;
  Mor<C> d1;
  Mor<C> s;
};

template <class C>
EquivalenceRelation<C> as_relation(const TruncatedSimplicial<C>& a) {
  return {a.a0, a.a1, a.d0, a.d1, a.s};
}

/// Objects to quantify over, equivalence relations to test, and probes for
/// effective epis (empty: decide through the chosen quotient instead).
template <class C>
struct GiraudGrid {
  std::vector<Obj<C>> objects;
  std::vector<EquivalenceRelation<C>> relations;
  std::vector<Obj<C>> probes;
  std::string description;
};

/// Equivalence relations on each x in `xs` carried by objects in `carriers`,
/// one per subobject of x × x.  Cells whose limits the instance lacks are skipped.
template <LexCategory C>
std::vector<EquivalenceRelation<C>> enumerate_equivalence_relations(const C& c, const std::vector<Obj<C>>& xs,
                                                                   const std::vector<Obj<C>>& carriers) {
  std::vector<EquivalenceRelation<C>> out;
  for (const auto& x : xs) {
    std::optional<Pullback<C>> sq;
    try {
      sq = product(c, x, x);
    } catch (const Error& e) {
      if (!is_missing_universal(e)) throw;
      continue;
    }
    const auto id = c.identity(x);
    const auto diag = pairing(c, *sq, id, id);
    const auto swap = pairing(c, *sq, sq->right, sq->left);
    std::vector<Mor<C>> kept;
    for (const auto& r : carriers)
      for (const auto& d0 : c.hom(r, x))
        for (const auto& d1 : c.hom(r, x)) {
          try {
            const auto an = pairing(c, *sq, d0, d1);
            if (!is_mono(c, an)) continue;
            const auto s = first_lift(c, diag, an);
            if (!s || !first_lift(c, c.compose(swap, an), an)) continue;
            const auto comp = c.pullback(d1, d0);
            if (!first_lift(c, pairing(c, *sq, c.compose(d0, comp.left), c.compose(d1, comp.right)), an)) continue;
            bool fresh = true;
            for (const auto& k : kept)
              if (first_lift(c, k, an) && first_lift(c, an, k)) {
                fresh = false;
                break;
              }
            if (!fresh) continue;
            kept.push_back(an);
            out.push_back({x, r, d0, d1, *s});
          } catch (const Error& e) {
            if (!is_missing_universal(e)) throw;
          }
        }
  }
  return out;
}

/// Kernel pairs of every grid map; each is an equivalence relation.
template <LexCategory C>
std::vector<EquivalenceRelation<C>> kernel_pair_relations(const C& c, const std::vector<Obj<C>>& objects) {
  std::vector<EquivalenceRelation<C>> out;
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (const auto& p : c.hom(x, y)) {
        const auto k = kernel_pair(c, p);
        out.push_back({x, k.pair.apex, k.pair.left, k.pair.right, k.diagonal});
      }
  return out;
}

namespace detail {

inline const char* const giraud_clauses[] = {"a-equivalence-relations-effective", "b-effective-epis-stable",
                                             "c-quotients-universal", "cross-check"};

template <class C>
AuditReport skipped_giraud(const std::string& instance, const std::string& grid, const std::string& reason) {
  AuditReport rep;
  for (const auto* clause : giraud_clauses) {
    ClauseTally t("giraud", instance, clause, grid);
    t.skip(reason);
    rep.add(t.record());
  }
  return rep;
}

}  // namespace detail

/// (a) every grid equivalence relation is effective; (b) effective epis among
/// grid maps pull back to effective epis along grid maps; (c) quotients of
/// grid relations are universal.  The cross-check compares (a)∧(b) with (a)∧(c).
template <Category C>
AuditReport audit_giraud(const C& c, const GiraudGrid<C>& grid, const std::string& instance) {
  if constexpr (!(LexCategory<C> && HasQuotients<C>)) {
    return detail::skipped_giraud<C>(instance, grid.description, "quotients unavailable");
  } else {
    ClauseTally a("giraud", instance, detail::giraud_clauses[0], grid.description);
    ClauseTally b("giraud", instance, detail::giraud_clauses[1], grid.description);
    ClauseTally u("giraud", instance, detail::giraud_clauses[2], grid.description);
    ClauseTally x("giraud", instance, detail::giraud_clauses[3], grid.description);

    auto guarded = [](ClauseTally& t, auto&& body) {
      try {
        body();
      } catch (const Error& e) {
        if (!is_missing_universal(e)) throw;
        t.unavailable();
      }
    };
    auto effective = [&](const Mor<C>& p) {
      if (grid.probes.empty()) return is_effective_epi_by_quotient(c, p);
      return is_effective_epi(c, p, std::span<const Obj<C>>(grid.probes));
    };
    auto rel_name = [&](const EquivalenceRelation<C>& r) {
      return "X=" + c.describe(r.x) + " d0=" + c.describe(r.d0) + " d1=" + c.describe(r.d1);
    };

    for (const auto& r : grid.relations)
      guarded(a, [&] {
        const auto q = c.quotient(r.d0, r.d1, r.s);
        const auto k = c.pullback(q.projection, q.projection);
        const auto cmp = c.pullback_mediator(k, r.d0, r.d1);
        a.check(is_iso(c, cmp), rel_name(r) + " comparison " + c.describe(cmp) + " into the kernel pair is not iso");
      });

    for (const auto& xo : grid.objects)
      for (const auto& yo : grid.objects)
        for (const auto& p : c.hom(xo, yo))
          guarded(b, [&] {
            if (!effective(p)) return;
            for (const auto& zo : grid.objects)
              for (const auto& g : c.hom(zo, yo))
                guarded(b, [&] {
                  const auto pb = c.pullback(p, g);
                  b.check(effective(pb.right), "effective epi " + c.describe(p) + " pulled back along " + c.describe(g) +
                                                   " gives " + c.describe(pb.right));
                });
          });

    for (const auto& r : grid.relations)
      guarded(u, [&] {
        const auto q = c.quotient(r.d0, r.d1, r.s);
        const auto qd = c.compose(q.projection, r.d0);
        for (const auto& zo : grid.objects)
          for (const auto& g : c.hom(zo, q.object))
            guarded(u, [&] {
              const auto px = c.pullback(q.projection, g);
              const auto pr = c.pullback(qd, g);
              const auto d0 = c.pullback_mediator(px, c.compose(r.d0, pr.left), pr.right);
              const auto d1 = c.pullback_mediator(px, c.compose(r.d1, pr.left), pr.right);
              const auto s = c.pullback_mediator(pr, c.compose(r.s, px.left), px.right);
              const auto q2 = c.quotient(d0, d1, s);
              const auto cmp = c.quotient_mediator(q2, px.right);
              u.check(is_iso(c, cmp), rel_name(r) + " pulled back along " + c.describe(g) + ": quotient comparison " +
                                          c.describe(cmp) + " is not iso");
            });
      });

    const bool ok_a = !a.failed(), ok_b = !b.failed(), ok_c = !u.failed();
    x.check((ok_a && ok_b) == (ok_a && ok_c), std::string("(a)+(b) is ") + (ok_a && ok_b ? "true" : "false") +
                                                  " but (a)+(c) is " + (ok_a && ok_c ? "true" : "false"));
    AuditReport rep;
    for (auto* t : {&a, &b, &u, &x}) rep.add(t->record());
    return rep;
  }
}

/// The four clauses of an (infinitary, here finite-scope) pretopos: disjoint
/// and universal coproducts, effective equivalence relations, and
/// pullback-stable effective epis.
template <Category C>
AuditReport audit_pretopos(const C& c, const GiraudGrid<C>& grid, const std::vector<Obj<C>>& extensivity_grid,
                           const std::string& instance) {
  AuditReport rep;
  if constexpr (LexCategory<C> && HasCoproducts<C>) {
    rep.merge(check_extensivity(c, extensivity_grid, instance, "pretopos"));
  } else {
    for (const auto* clause : {"coproducts-disjoint", "coproducts-universal"}) {
      ClauseTally t("pretopos", instance, clause, "objects=" + std::to_string(extensivity_grid.size()));
      t.fail("instance has no chosen coproducts");
      rep.add(t.record());
    }
  }
  const auto g = audit_giraud(c, grid, instance);
  const std::pair<const char*, const char*> renames[] = {{detail::giraud_clauses[0], "equivalence-relations-effective"},
                                                         {detail::giraud_clauses[1], "effective-epis-stable"}};
  for (const auto& [from, to] : renames) {
    auto r = *g.find(from);
    r.suite = "pretopos";
    r.clause = to;
    rep.add(std::move(r));
  }
  rep.sort();
  return rep;
}

}  // namespace lexcat
