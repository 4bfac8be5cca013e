#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "lexcat/groupoids/e2.hpp"
#include "lexcat/groupoids/finset_builders.hpp"
#include "lexcat/groupoids/ox.hpp"
#include "lexcat/kernel/finposet.hpp"
#include "lexcat/kernel/finset.hpp"
#include "lexcat/kernel/tabulated.hpp"
#include "lexcat/pretopos/giraud.hpp"
#include "lexcat/sums/sums.hpp"

namespace lexcat::instances {

using SumsOfPoint = Sums<Tabulated>;
using E2OfSums = E2<SumsOfPoint>;

inline SumsOfPoint sums_of_point() { return SumsOfPoint(tabulate::terminal_category()); }

/// n copies of the point of S_f(1).
inline SumsOfPoint::Object points(const SumsOfPoint& s, std::size_t n) {
  return {std::vector<Tabulated::Object>(n, s.base().terminal())};
}

/// A function of finite sets read as a morphism of S_f(1).
inline SumsOfPoint::Morphism index_map(const SumsOfPoint& s, const FinSet::Morphism& f) {
  const auto star = s.base().identity(s.base().terminal());
  return {f.table, std::vector<Tabulated::Morphism>(f.src, star), points(s, f.src), points(s, f.tgt)};
}

inline TruncatedSimplicial<SumsOfPoint> over_point(const SumsOfPoint& s, const TruncatedSimplicial<FinSet>& a) {
  return {points(s, a.a0.size), points(s, a.a1.size), index_map(s, a.d0), index_map(s, a.d1), index_map(s, a.s)};
}

/// 2-groupoids over FinSet with both levels of size ≤ max_level, one per
/// shape: π0 blocks of sizes as listed, extra loops on the first point.
inline std::vector<TruncatedSimplicial<FinSet>> small_two_groupoids(std::size_t max_level) {
  std::vector<TruncatedSimplicial<FinSet>> out;
  for (const auto& part : finset::equivalence_relations_up_to(max_level)) {
    const auto pairs = finset::pairs_of(part);
    for (std::size_t extra = 0; pairs.size() + extra <= max_level; ++extra) {
      if (part.a0.size == 0 && extra > 0) break;
      auto with = pairs;
      for (std::size_t k = 0; k < extra; ++k) with.emplace_back(0, 0);
      out.push_back(finset::relation(part.a0.size, with));
    }
  }
  return out;
}

/// The same family read in E_h^(2)(S_f(1)).
inline std::vector<TruncatedSimplicial<SumsOfPoint>> e2_point_grid(const SumsOfPoint& s, std::size_t max_level) {
  std::vector<TruncatedSimplicial<SumsOfPoint>> out;
  for (const auto& a : small_two_groupoids(max_level)) out.push_back(over_point(s, a));
  return out;
}

inline GiraudGrid<FinSet> finset_giraud_grid(std::size_t max_size) {
  const FinSet s;
  GiraudGrid<FinSet> g;
  g.objects = s.objects_up_to(max_size);
  for (const auto& r : finset::equivalence_relations_up_to(max_size)) g.relations.push_back(as_relation(r));
  g.probes = g.objects;
  g.description = "sets<=" + std::to_string(max_size);
  return g;
}

inline GiraudGrid<E2OfSums> e2_point_giraud_grid(const E2OfSums& e, std::size_t max_level) {
  GiraudGrid<E2OfSums> g;
  g.objects = e2_point_grid(e.base(), max_level);
  g.relations = kernel_pair_relations(e, g.objects);
  g.description = "two-groupoids levels<=" + std::to_string(max_level);
  return g;
}

inline GiraudGrid<Tabulated> tabulated_giraud_grid(const Tabulated& t, const std::vector<Tabulated::Object>& objects) {
  GiraudGrid<Tabulated> g;
  g.objects = objects;
  g.relations = enumerate_equivalence_relations(t, objects, t.objects());
  g.probes = t.objects();
  g.description = "objects=" + std::to_string(objects.size());
  return g;
}

/// Kan groupoids in S_f(t) whose index groupoid is one of
/// small_two_groupoids(max_level).  Degenerate loops carry identities; every
/// other level-1 index gets an object with a span into its endpoints.  At
/// most `limit` results, in enumeration order.
inline std::vector<TruncatedSimplicial<Sums<Tabulated>>> labelled_two_groupoids(const Sums<Tabulated>& s,
                                                                                std::size_t max_level,
                                                                                std::size_t limit) {
  const auto& t = s.base();
  const auto objs = t.objects();
  std::vector<TruncatedSimplicial<Sums<Tabulated>>> out;
  for (const auto& o : small_two_groupoids(max_level)) {
    const auto n0 = o.a0.size, n1 = o.a1.size;
    std::vector<int> degenerate(n1, -1);
    for (std::uint32_t x = 0; x < n0; ++x) degenerate[o.s(x)] = static_cast<int>(x);
    for (Odometer labels(std::vector<std::size_t>(n0, objs.size())); !labels.done(); labels.next()) {
      OXPresentation<Tabulated> p{o, {}, std::vector<Tabulated::Object>(n1), {}, {}, {}};
      for (auto l : labels.digits()) p.x0.push_back(objs[l]);
      p.face0.resize(n1, Tabulated::Morphism{0});
      p.face1.resize(n1, Tabulated::Morphism{0});
      for (std::uint32_t x = 0; x < n0; ++x) p.degeneracy.push_back(t.identity(p.x0[x]));
      // spans per free level-1 index
      std::vector<std::vector<std::tuple<Tabulated::Object, Tabulated::Morphism, Tabulated::Morphism>>> spans(n1);
      for (std::uint32_t r = 0; r < n1; ++r) {
        if (degenerate[r] >= 0) {
          const auto x = p.x0[static_cast<std::size_t>(degenerate[r])];
          spans[r].emplace_back(x, t.identity(x), t.identity(x));
          continue;
        }
        for (const auto& l : objs)
          for (const auto& f : t.hom(l, p.x0[o.d0(r)]))
            for (const auto& g : t.hom(l, p.x0[o.d1(r)])) spans[r].emplace_back(l, f, g);
      }
      std::vector<std::size_t> radices;
      for (const auto& sp : spans) radices.push_back(sp.size());
      for (Odometer pick(radices); !pick.done(); pick.next()) {
        for (std::uint32_t r = 0; r < n1; ++r) {
          const auto& [l, f, g] = spans[r][pick.digits()[r]];
          p.x1[r] = l;
          p.face0[r] = f;
          p.face1[r] = g;
        }
        auto w = from_ox(s, p);
        if (!check_kan(s, w).ok()) continue;
        out.push_back(std::move(w));
        if (out.size() >= limit) return out;
      }
    }
  }
  return out;
}

}  // namespace lexcat::instances
