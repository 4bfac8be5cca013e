#pragma once

#include <optional>
#include <span>
#include <string>

#include "lexcat/core.hpp"
#include "lexcat/kernel/limits.hpp"

namespace lexcat {

/// The kernel pair X ×_Y X of p with its diagonal X -> X ×_Y X.
template <class C>
struct KernelPair {
  Pullback<C> pair;
  Mor<C> diagonal;
};

template <LexCategory C>
KernelPair<C> kernel_pair(const C& c, const Mor<C>& p) {
  auto k = c.pullback(p, p);
  const auto id = c.identity(c.src(p));
  auto diag = c.pullback_mediator(k, id, id);
  return {std::move(k), std::move(diag)};
}

/// p exhibits Y as the coequalizer of its kernel pair: every probe map
/// coequalizing the pair factors through p exactly once.
template <LexCategory C>
bool is_effective_epi(const C& c, const Mor<C>& p, std::span<const Obj<C>> probes) {
  const auto k = c.pullback(p, p);
  return certify_coequalizer(c, k.left, k.right, c.tgt(p), p, probes).valid;
}

/// The same property decided through the chosen quotient of the kernel pair:
/// p is effective iff the induced map Q -> Y is iso.
template <class C>
  requires LexCategory<C> && HasQuotients<C>
bool is_effective_epi_by_quotient(const C& c, const Mor<C>& p) {
  const auto k = kernel_pair(c, p);
  const auto q = c.quotient(k.pair.left, k.pair.right, k.diagonal);
  return is_iso(c, c.quotient_mediator(q, p));
}

/// f = m ∘ e with e the quotient by the kernel pair.
template <class C>
struct ImageFactorization {
  Obj<C> image;
  Mor<C> epi;
  Mor<C> mono;
};

template <class C>
  requires LexCategory<C> && HasQuotients<C>
ImageFactorization<C> image_factorization(const C& c, const Mor<C>& f) {
  const auto k = kernel_pair(c, f);
  auto q = c.quotient(k.pair.left, k.pair.right, k.diagonal);
  auto m = c.quotient_mediator(q, f);
  return {std::move(q.object), std::move(q.projection), std::move(m)};
}

/// Checks both halves: e effective on probes, m mono via its kernel pair.
template <class C>
  requires LexCategory<C> && HasQuotients<C>
std::optional<std::string> certify_image(const C& c, const Mor<C>& f, const ImageFactorization<C>& im,
                                         std::span<const Obj<C>> probes) {
  if (!c.equal(c.compose(im.mono, im.epi), f)) return "m ∘ e differs from f";
  if (!is_effective_epi(c, im.epi, probes)) return "e is not an effective epimorphism";
  const auto k = c.pullback(im.mono, im.mono);
  if (!c.equal(k.left, k.right)) return "m is not a monomorphism";
  return std::nullopt;
}

/// The comparison u : I1 -> I2 between two image factorizations of one map,
/// with m2 u = m1 and u e1 = e2; present only if it is a unique iso.
template <LexCategory C>
std::optional<Mor<C>> image_comparison(const C& c, const ImageFactorization<C>& a, const ImageFactorization<C>& b) {
  const auto us = all_lifts(c, a.mono, b.mono);
  if (us.size() != 1) return std::nullopt;
  const auto& u = us.front();
  if (!c.equal(c.compose(u, a.epi), b.epi) || !is_iso(c, u)) return std::nullopt;
  return u;
}

}  // namespace lexcat
