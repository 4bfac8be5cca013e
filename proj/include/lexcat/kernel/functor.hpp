#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lexcat/core.hpp"
#include "lexcat/kernel/finset.hpp"
#include "lexcat/kernel/limits.hpp"

namespace lexcat {

template <class C, class D>
struct Functor {
  std::function<Obj<D>(const Obj<C>&)> on_objects;
  std::function<Mor<D>(const Mor<C>&)> on_morphisms;
  bool lex = false;

  Obj<D> operator()(const Obj<C>& x) const { return on_objects(x); }
  Mor<D> operator()(const Mor<C>& f) const { return on_morphisms(f); }
};

template <Category C>
Functor<C, C> identity_functor() {
  return {[](const Obj<C>& x) { return x; }, [](const Mor<C>& f) { return f; }, true};
}

/// hom(x, -) : C -> FinSet, indexing hom-sets by their enumeration order.
template <Category C>
Functor<C, FinSet> hom_functor(const C& c, const Obj<C>& x) {
  return {[c, x](const Obj<C>& y) { return FinSet::set(c.hom(x, y).size()); },
          [c, x](const Mor<C>& f) {
            const auto from = c.hom(x, c.src(f));
            const auto to = c.hom(x, c.tgt(f));
            std::vector<std::uint32_t> t;
            for (const auto& u : from) {
              const auto v = c.compose(f, u);
              const auto it = std::find_if(to.begin(), to.end(), [&](const Mor<C>& w) { return c.equal(w, v); });
              t.push_back(static_cast<std::uint32_t>(it - to.begin()));
            }
            return FinSet::function(to.size(), std::move(t));
          },
          true};
}

/// Identity and composition laws on every pair of composable morphisms
/// drawn from `objects`.  Returns the violations found.
template <Category C, Category D>
std::vector<std::string> check_functor(const C& c, const D& d, const Functor<C, D>& F,
                                       std::span<const Obj<C>> objects) {
  std::vector<std::string> out;
  for (const auto& x : objects) {
    if (!d.equal(F(c.identity(x)), d.identity(F(x)))) out.push_back("identity not preserved at " + c.describe(x));
  }
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (const auto& f : c.hom(x, y)) {
        if (!(d.src(F(f)) == F(x)) || !(d.tgt(F(f)) == F(y)))
          out.push_back("typing not preserved at " + c.describe(f));
        for (const auto& z : objects)
          for (const auto& g : c.hom(y, z))
            if (!d.equal(F(c.compose(g, f)), d.compose(F(g), F(f))))
              out.push_back("composition not preserved at (" + c.describe(g) + ", " + c.describe(f) + ")");
      }
  return out;
}

/// Lexness on a finite family: the image of the chosen terminal is terminal
/// and images of chosen pullbacks of cospans among `objects` are pullbacks,
/// both certified against `probes` in the target.
template <LexCategory C, LexCategory D>
std::vector<std::string> check_lex(const C& c, const D& d, const Functor<C, D>& F, std::span<const Obj<C>> objects,
                                   std::span<const Obj<D>> probes) {
  std::vector<std::string> out;
  if (!certify_terminal(d, F(c.terminal()), probes).valid) out.push_back("terminal not preserved");
  for (const auto& z : objects)
    for (const auto& x : objects)
      for (const auto& f : c.hom(x, z))
        for (const auto& y : objects)
          for (const auto& g : c.hom(y, z)) {
            const auto pb = c.pullback(f, g);
            Pullback<D> image{F(pb.apex), F(pb.left), F(pb.right), F(f), F(g)};
            auto cert = certify_pullback(d, image, probes);
            if (!cert.valid)
              out.push_back("pullback of (" + c.describe(f) + ", " + c.describe(g) + ") not preserved: " + cert.witness);
          }
  return out;
}

}  // namespace lexcat
