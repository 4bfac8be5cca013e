#pragma once

#include <string>

#include "lexcat/core.hpp"
#include "lexcat/groupoids/simplicial.hpp"
#include "lexcat/kernel/limits.hpp"
#include "lexcat/pretopos/effective.hpp"

namespace lexcat {

/// A ∈ C/(X × X).
template <class C>
struct RelationOver {
  Obj<C> x;
  Obj<C> a;
  Pullback<C> square;  // the chosen X × X
  Mor<C> anchor;
};

template <LexCategory C>
RelationOver<C> relation_over(const C& c, const Obj<C>& x, const Mor<C>& left, const Mor<C>& right) {
  auto sq = product(c, x, x);
  auto anchor = pairing(c, sq, left, right);
  return {x, c.src(left), std::move(sq), std::move(anchor)};
}

template <LexCategory C>
Mor<C> swap_map(const C& c, const Pullback<C>& square) {
  return pairing(c, square, square.right, square.left);
}

/// R^op: the anchor followed by the swap.
template <LexCategory C>
RelationOver<C> op(const C& c, const RelationOver<C>& r) {
  return {r.x, r.a, r.square, c.compose(swap_map(c, r.square), r.anchor)};
}

template <class C>
struct EquivalenceClosure {
  TruncatedSimplicial<C> groupoid;
  Mor<C> mono;  // groupoid.a1 -> X × X
  std::size_t rounds = 0;
};

/// Height of the subobject lattice of X × X, where the carrier can say.
template <Category C>
std::size_t subobject_height_bound(const C&, const Obj<C>& xx) {
  if constexpr (requires { xx.size + 1; })
    return static_cast<std::size_t>(xx.size) + 1;
  else
    return enumeration_cap();
}

/// The image of G_X(A) in X × X: iterate S ↦ image(Δ ⊔ S ⊔ S^op ⊔ S ⊗_X S)
/// until it stops growing.  S ⊗_X S pulls d1 back against d0.
template <class C>
  requires LexCategory<C> && HasCoproducts<C> && HasQuotients<C>
EquivalenceClosure<C> equivalence_closure(const C& c, const RelationOver<C>& r, std::size_t bound = 0) {
  const auto& sq = r.square;
  if (bound == 0) bound = subobject_height_bound(c, sq.apex);
  const auto swap = swap_map(c, sq);
  const auto id = c.identity(r.x);
  const auto diag = pairing(c, sq, id, id);
  auto m = image_factorization(c, r.anchor).mono;
  for (std::size_t round = 1; round <= bound; ++round) {
    const auto s = c.src(m);
    const auto l = c.compose(sq.left, m);
    const auto rr = c.compose(sq.right, m);
    const auto comp = c.pullback(rr, l);
    const auto comp_anchor = pairing(c, sq, c.compose(l, comp.left), c.compose(rr, comp.right));
    const auto cp = c.coproduct({r.x, s, s, comp.apex});
    const auto u = c.copair(cp, {diag, m, c.compose(swap, m), comp_anchor});
    auto next = image_factorization(c, u).mono;
    if (first_lift(c, next, m)) {
      const auto s_lift = first_lift(c, diag, m);
      if (!s_lift) throw Error(ErrorCode::precondition, "equivalence_closure: saturated relation is not reflexive");
      return {{r.x, s, l, rr, *s_lift}, m, round};
    }
    m = std::move(next);
  }
  throw Error(ErrorCode::saturation_bound,
              "saturation did not terminate within bound " + std::to_string(bound));
}

template <class C>
struct PairCoequalizer {
  EquivalenceClosure<C> closure;
  Quotient<C> quotient;
};

/// Coequalizer of f, g : A -> X as the quotient of the closure of (f, g).
template <class C>
  requires LexCategory<C> && HasCoproducts<C> && HasQuotients<C>
PairCoequalizer<C> coequalizer_pair(const C& c, const Mor<C>& f, const Mor<C>& g) {
  if (!(c.src(f) == c.src(g)) || !(c.tgt(f) == c.tgt(g)))
    throw Error(ErrorCode::precondition, "coequalizer_pair: maps are not parallel");
  auto cl = equivalence_closure(c, relation_over(c, c.tgt(f), f, g));
  auto q = c.quotient(cl.groupoid.d0, cl.groupoid.d1, cl.groupoid.s);
  return {std::move(cl), std::move(q)};
}

}  // namespace lexcat
