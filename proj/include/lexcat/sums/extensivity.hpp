#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lexcat/audit.hpp"
#include "lexcat/core.hpp"
#include "lexcat/kernel/limits.hpp"

namespace lexcat {

/// Canonical comparison ∐(X_i ×_Z Y) -> (∐X_i) ×_Z Y for legs x_i: X_i -> Z, y: Y -> Z.
template <class D>
struct UniversalityCell {
  Mor<D> comparison;
  Obj<D> lhs;
  Obj<D> rhs;
};

template <class D>
  requires LexCategory<D> && HasCoproducts<D>
UniversalityCell<D> coproduct_universality_map(const D& d, const std::vector<Mor<D>>& legs, const Mor<D>& y) {
  std::vector<Obj<D>> xs, pieces;
  std::vector<Pullback<D>> pbs;
  for (const auto& x : legs) {
    xs.push_back(d.src(x));
    pbs.push_back(d.pullback(x, y));
    pieces.push_back(pbs.back().apex);
  }
  const auto sum = d.coproduct(xs);
  const auto lhs = d.coproduct(pieces);
  if (legs.empty()) {
    // ∐ of nothing is initial: compare ∅ with ∅ ×_Z Y.
    const auto z = d.tgt(y);
    const auto rhs = d.pullback(d.from_initial(z), y);
    return {d.from_initial(rhs.apex), lhs.object, rhs.apex};
  }
  const auto rhs = d.pullback(d.copair(sum, legs), y);
  std::vector<Mor<D>> parts;
  for (std::size_t i = 0; i < legs.size(); ++i)
    parts.push_back(d.pullback_mediator(rhs, d.compose(sum.injections[i], pbs[i].left), pbs[i].right));
  return {d.copair(lhs, parts), lhs.object, rhs.apex};
}

/// The map ∅ -> X ×_{X⊔Y} Y.
template <class D>
  requires LexCategory<D> && HasCoproducts<D>
Mor<D> coproduct_disjointness_map(const D& d, const Obj<D>& x, const Obj<D>& y) {
  const auto cp = d.coproduct({x, y});
  const auto pb = d.pullback(cp.injections[0], cp.injections[1]);
  return d.from_initial(pb.apex);
}

/// Extensivity over a grid of objects: universality for every cospan with a
/// family of at most two summands, disjointness for every pair.
template <class D>
  requires LexCategory<D> && HasCoproducts<D>
AuditReport check_extensivity(const D& d, const std::vector<Obj<D>>& grid, const std::string& instance,
                              const std::string& suite = "extensivity") {
  const std::string grid_desc = "objects=" + std::to_string(grid.size());
  ClauseTally universal(suite, instance, "coproducts-universal", grid_desc);
  ClauseTally disjoint(suite, instance, "coproducts-disjoint", grid_desc);

  auto check_cell = [&](const std::vector<Mor<D>>& legs, const Mor<D>& y) {
    std::optional<UniversalityCell<D>> found;
    try {
      found = coproduct_universality_map(d, legs, y);
    } catch (const Error& e) {
      if (!is_missing_universal(e)) throw;
      return universal.unavailable();
    }
    const auto& cell = *found;
    if (is_iso(d, cell.comparison)) return universal.pass();
    std::vector<std::string> names;
    for (const auto& x : legs) names.push_back(d.describe(x));
    universal.fail("legs=[" + join(names, ";") + "] y=" + d.describe(y) + " comparison=" + d.describe(cell.comparison) +
                   " not iso");
  };

  for (const auto& z : grid)
    for (const auto& yo : grid)
      for (const auto& y : d.hom(yo, z)) {
        check_cell({}, y);
        for (const auto& x1o : grid)
          for (const auto& x1 : d.hom(x1o, z)) {
            check_cell({x1}, y);
            for (const auto& x2o : grid)
              for (const auto& x2 : d.hom(x2o, z)) check_cell({x1, x2}, y);
          }
      }
  for (const auto& x : grid)
    for (const auto& y : grid) {
      std::optional<Mor<D>> found;
      try {
        found = coproduct_disjointness_map(d, x, y);
      } catch (const Error& e) {
        if (!is_missing_universal(e)) throw;
        disjoint.unavailable();
        continue;
      }
      const auto& m = *found;
      disjoint.check(is_iso(d, m), "X=" + d.describe(x) + " Y=" + d.describe(y) + " pullback " +
                                       d.describe(d.tgt(m)) + " is not initial");
    }
  AuditReport rep;
  rep.add(universal.record());
  rep.add(disjoint.record());
  return rep;
}

}  // namespace lexcat
