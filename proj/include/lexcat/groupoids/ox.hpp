#pragma once

#include <string>
#include <vector>

#include "lexcat/groupoids/simplicial.hpp"
#include "lexcat/kernel/finset.hpp"
#include "lexcat/sums/sums.hpp"

namespace lexcat {

/// An internal groupoid in S_f(C) split into its index groupoid O in finite
/// sets and the components X(o) with their face and degeneracy maps.
template <Category C>
struct OXPresentation {
  TruncatedSimplicial<FinSet> o;
  std::vector<Obj<C>> x0;          // X(o), o ∈ O0
  std::vector<Obj<C>> x1;          // X(o), o ∈ O1
  std::vector<Mor<C>> face0;       // X(o) -> X(d0 o), o ∈ O1
  std::vector<Mor<C>> face1;       // X(o) -> X(d1 o), o ∈ O1
  std::vector<Mor<C>> degeneracy;  // X(o) -> X(s o), o ∈ O0
  auto operator<=>(const OXPresentation&) const = default;
  bool operator==(const OXPresentation&) const = default;
};

template <Category C>
OXPresentation<C> to_ox(const Sums<C>&, const TruncatedSimplicial<Sums<C>>& w) {
  auto index = [](const typename Sums<C>::Morphism& f) { return FinSet::function(f.tgt.size(), f.index); };
  return {{FinSet::set(w.a0.size()), FinSet::set(w.a1.size()), index(w.d0), index(w.d1), index(w.s)},
          w.a0.family,
          w.a1.family,
          w.d0.components,
          w.d1.components,
          w.s.components};
}

template <Category C>
TruncatedSimplicial<Sums<C>> from_ox(const Sums<C>& s, const OXPresentation<C>& p) {
  using SO = typename Sums<C>::Object;
  using SM = typename Sums<C>::Morphism;
  const auto& b = s.base();
  auto check = [&](const std::vector<Mor<C>>& maps, const std::vector<Obj<C>>& from, const std::vector<Obj<C>>& to,
                   const FinSet::Morphism& idx, const char* what) {
    if (maps.size() != from.size() || idx.src != from.size() || idx.tgt != to.size())
      throw Error(ErrorCode::malformed, std::string("ox: ") + what + " has the wrong shape");
    for (std::size_t k = 0; k < maps.size(); ++k)
      if (!(b.src(maps[k]) == from[k]) || !(b.tgt(maps[k]) == to[idx(k)]))
        throw Error(ErrorCode::malformed, std::string("ox: ") + what + " component " + std::to_string(k) + " is mistyped");
  };
  check(p.face0, p.x1, p.x0, p.o.d0, "face0");
  check(p.face1, p.x1, p.x0, p.o.d1, "face1");
  check(p.degeneracy, p.x0, p.x1, p.o.s, "degeneracy");
  const SO a0{p.x0}, a1{p.x1};
  return {a0, a1, SM{p.o.d0.table, p.face0, a1, a0}, SM{p.o.d1.table, p.face1, a1, a0},
          SM{p.o.s.table, p.degeneracy, a0, a1}};
}

}  // namespace lexcat
