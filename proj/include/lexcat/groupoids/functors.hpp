#pragma once

#include <optional>
#include <string>

#include "lexcat/core.hpp"
#include "lexcat/groupoids/e2.hpp"
#include "lexcat/groupoids/simplicial.hpp"
#include "lexcat/kernel/functor.hpp"

namespace lexcat {

/// A0/A1 in C with its projection.
template <class C>
  requires LexCategory<C> && HasQuotients<C>
Quotient<C> quotient(const C& c, const TruncatedSimplicial<C>& a) {
  return c.quotient(a.d0, a.d1, a.s);
}

/// The internal presentation dA: dA0 = i(A0), dA1 = (A1, A1 ×_{A0²} A1).
template <LexCategory C>
struct DPresentation {
  TruncatedSimplicial<C> d_a0;
  TruncatedSimplicial<C> d_a1;
  typename E2<C>::Morphism d0;
  typename E2<C>::Morphism d1;
  typename E2<C>::Morphism s;
  Pullback<C> kernel;  // A1 ×_{A0²} A1
};

template <LexCategory C>
DPresentation<C> d_functor(const E2<C>& e, const TruncatedSimplicial<C>& a) {
  const auto& c = e.base();
  const auto an = anchor(c, a);
  auto k = c.pullback(an.map, an.map);
  const auto diag = c.pullback_mediator(k, c.identity(a.a1), c.identity(a.a1));
  TruncatedSimplicial<C> d1{a.a1, k.apex, k.left, k.right, diag};
  const auto d0 = e.embed(a.a0);
  typename E2<C>::Morphism f0{d1, d0, a.d0, c.compose(a.d0, k.left)};
  typename E2<C>::Morphism f1{d1, d0, a.d1, c.compose(a.d1, k.left)};
  typename E2<C>::Morphism sv{d0, d1, a.s, c.pullback_mediator(k, a.s, a.s)};
  return {d0, d1, f0, f1, sv, std::move(k)};
}

/// eA: eA0 = A0, eA1 = A1 / (A1 ×_{A0²} A1), with the unit A -> eA.
template <class C>
struct EResult {
  TruncatedSimplicial<C> object;
  Mor<C> unit0;
  Mor<C> unit1;
};

template <class C>
  requires LexCategory<C> && HasQuotients<C>
EResult<C> e_functor(const C& c, const TruncatedSimplicial<C>& a) {
  const auto an = anchor(c, a);
  const auto k = c.pullback(an.map, an.map);
  const auto diag = c.pullback_mediator(k, c.identity(a.a1), c.identity(a.a1));
  const auto q = c.quotient(k.left, k.right, diag);
  TruncatedSimplicial<C> ea{a.a0, q.object, c.quotient_mediator(q, a.d0), c.quotient_mediator(q, a.d1),
                            c.compose(q.projection, a.s)};
  return {ea, c.identity(a.a0), q.projection};
}

/// F applied levelwise.
template <LexCategory C, LexCategory D>
TruncatedSimplicial<D> apply_lex_functor(const Functor<C, D>& f, const TruncatedSimplicial<C>& a) {
  if (!f.lex) throw Error(ErrorCode::precondition, "apply_lex_functor: functor is not flagged lex");
  return {f(a.a0), f(a.a1), f(a.d0), f(a.d1), f(a.s)};
}

/// Moves Kan sections along F through the comparison isos F(A(G)) ≅ FA(G).
template <LexCategory C, LexCategory D>
std::optional<KanWitness<D>> transport_kan(const C& c, const D& d, const Functor<C, D>& f,
                                           const TruncatedSimplicial<C>& a, const KanWitness<C>& w) {
  const auto fa = apply_lex_functor(f, a);
  const auto src = horn_data(c, a);
  const auto tgt = horn_data(d, fa);
  auto comparison = [&](const Evaluation<C>& from, const Evaluation<D>& to) {
    std::vector<Mor<D>> vs, es;
    for (const auto& l : from.limit.vertex_legs) vs.push_back(f(l));
    for (const auto& l : from.limit.edge_legs) es.push_back(f(l));
    return limit_mediator(d, to.limit, f(from.object()), vs, es);
  };
  const auto tri = comparison(src.triangle, tgt.triangle);
  KanWitness<D> out{{tri, tri, tri}};
  for (int i = 0; i < 3; ++i) {
    const auto horn = comparison(*src.horns[i], *tgt.horns[i]);
    const auto back = inverse(d, horn);
    if (!back) return std::nullopt;
    out.sections[i] = d.compose(tri, d.compose(f(w.sections[i]), *back));
  }
  if (revalidate_kan(d, fa, out)) return std::nullopt;
  return out;
}

}  // namespace lexcat
