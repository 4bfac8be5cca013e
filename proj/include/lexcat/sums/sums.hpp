#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "lexcat/core.hpp"
#include "lexcat/kernel/limits.hpp"

namespace lexcat {

/// S_f(C): finite families of C-objects.  The index set of a family of
/// length n is {0, .., n-1}; a morphism reindexes and maps componentwise.
template <Category C>
class Sums {
 public:
  static constexpr bool strict = is_strict<C>;

  struct Object {
    std::vector<Obj<C>> family;
    auto operator<=>(const Object&) const = default;
    bool operator==(const Object&) const = default;
    [[nodiscard]] std::size_t size() const { return family.size(); }
  };

  struct Morphism {
    std::vector<std::uint32_t> index;  // I_X -> I_Y
    std::vector<Mor<C>> components;    // X(i) -> Y(index[i])
    Object src;
    Object tgt;
    auto operator<=>(const Morphism&) const = default;
    bool operator==(const Morphism&) const = default;
  };

  explicit Sums(C base) : base_(std::move(base)) {}

  [[nodiscard]] const C& base() const { return base_; }
  [[nodiscard]] std::string name() const { return "sums-over(" + base_name() + ")"; }

  /// The embedding i_S: C -> S_f(C).
  [[nodiscard]] Object singleton(const Obj<C>& x) const { return Object{{x}}; }
  [[nodiscard]] Morphism singleton(const Mor<C>& f) const {
    return Morphism{{0}, {f}, singleton(base_.src(f)), singleton(base_.tgt(f))};
  }

  [[nodiscard]] Object src(const Morphism& f) const { return f.src; }
  [[nodiscard]] Object tgt(const Morphism& f) const { return f.tgt; }

  [[nodiscard]] Morphism identity(const Object& x) const {
    Morphism id{{}, {}, x, x};
    for (std::uint32_t i = 0; i < x.size(); ++i) {
      id.index.push_back(i);
      id.components.push_back(base_.identity(x.family[i]));
    }
    return id;
  }

  [[nodiscard]] Morphism compose(const Morphism& g, const Morphism& f) const {
    if (!(f.tgt == g.src)) throw Error(ErrorCode::precondition, "sums: composing non-composable morphisms");
    Morphism h{{}, {}, f.src, g.tgt};
    for (std::size_t i = 0; i < f.index.size(); ++i) {
      const auto j = f.index[i];
      h.index.push_back(g.index[j]);
      h.components.push_back(base_.compose(g.components[j], f.components[i]));
    }
    return h;
  }

  [[nodiscard]] bool equal(const Morphism& f, const Morphism& g) const {
    if (f.index != g.index || !(f.src == g.src) || !(f.tgt == g.tgt)) return false;
    for (std::size_t i = 0; i < f.index.size(); ++i)
      if (!base_.equal(f.components[i], g.components[i])) return false;
    return true;
  }

  /// Π_i ∐_j hom_C(X_i, Y_j), sorted by key.
  [[nodiscard]] std::vector<Morphism> hom(const Object& x, const Object& y) const {
    std::vector<std::vector<std::pair<std::uint32_t, Mor<C>>>> options(x.size());
    double count = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::uint32_t j = 0; j < y.size(); ++j)
        for (auto& f : base_.hom(x.family[i], y.family[j])) options[i].emplace_back(j, std::move(f));
      count *= static_cast<double>(options[i].size());
    }
    if (count > static_cast<double>(enumeration_cap()))
      throw Error(ErrorCode::cap_exceeded, "sums hom of size " + std::to_string(count));
    std::vector<Morphism> out;
    for_each_choice(x, y, options, [&](const Morphism& f) {
      out.push_back(f);
      return true;
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  // Pointwise over the source indices: pick j over u's index, then a C-lift.
  bool for_each_lift(const Morphism& u, const Morphism& m, const MorphismVisitor<Sums>& visit) const {
    if (!(u.tgt == m.tgt)) throw Error(ErrorCode::precondition, "sums: lift across different targets");
    std::vector<std::vector<std::pair<std::uint32_t, Mor<C>>>> options(u.index.size());
    for (std::size_t i = 0; i < u.index.size(); ++i)
      for (std::uint32_t j = 0; j < m.index.size(); ++j) {
        if (m.index[j] != u.index[i]) continue;
        base_.for_each_lift(u.components[i], m.components[j], [&](const Mor<C>& h) {
          options[i].emplace_back(j, h);
          return true;
        });
      }
    return for_each_choice(u.src, m.src, options, visit);
  }

  // ---- limits ----

  [[nodiscard]] Object terminal() const
    requires LexCategory<C>
  {
    return singleton(base_.terminal());
  }
  [[nodiscard]] Morphism to_terminal(const Object& x) const
    requires LexCategory<C>
  {
    Morphism t{std::vector<std::uint32_t>(x.size(), 0), {}, x, terminal()};
    for (const auto& xi : x.family) t.components.push_back(base_.to_terminal(xi));
    return t;
  }

  /// Index set I_X ×_{I_Z} I_Y in lexicographic order, components chosen in C.
  [[nodiscard]] Pullback<Sums> pullback(const Morphism& f, const Morphism& g) const
    requires LexCategory<C>
  {
    if (!(f.tgt == g.tgt)) throw Error(ErrorCode::precondition, "sums: pullback of a non-cospan");
    std::vector<std::vector<std::uint32_t>> over(f.tgt.size());
    for (std::uint32_t j = 0; j < g.index.size(); ++j) over[g.index[j]].push_back(j);
    Object apex;
    Morphism left{{}, {}, {}, f.src}, right{{}, {}, {}, g.src};
    for (std::uint32_t i = 0; i < f.index.size(); ++i)
      for (auto j : over[f.index[i]]) {
        auto pb = base_.pullback(f.components[i], g.components[j]);
        apex.family.push_back(pb.apex);
        left.index.push_back(i);
        left.components.push_back(pb.left);
        right.index.push_back(j);
        right.components.push_back(pb.right);
      }
    left.src = right.src = apex;
    return {apex, std::move(left), std::move(right), f, g};
  }

  [[nodiscard]] Morphism pullback_mediator(const Pullback<Sums>& pb, const Morphism& a, const Morphism& b) const
    requires LexCategory<C>
  {
    if (!(a.src == b.src)) throw Error(ErrorCode::cone_mismatch, "sums: cone legs with different sources");
    Morphism m{{}, {}, a.src, pb.apex};
    const auto& li = pb.left.index;
    const auto& ri = pb.right.index;
    for (std::size_t p = 0; p < a.index.size(); ++p) {
      const auto key = std::make_pair(a.index[p], b.index[p]);
      std::size_t lo = 0, hi = li.size();
      while (lo < hi) {
        auto mid = (lo + hi) / 2;
        if (std::make_pair(li[mid], ri[mid]) < key)
          lo = mid + 1;
        else
          hi = mid;
      }
      if (lo == li.size() || li[lo] != key.first || ri[lo] != key.second)
        throw Error(ErrorCode::cone_mismatch, "sums: cone does not commute on indices");
      auto component = base_.pullback(pb.f.components[key.first], pb.g.components[key.second]);
      m.index.push_back(static_cast<std::uint32_t>(lo));
      m.components.push_back(base_.pullback_mediator(component, a.components[p], b.components[p]));
    }
    return m;
  }

  // ---- coproducts ----

  [[nodiscard]] Object initial() const { return Object{}; }
  [[nodiscard]] Morphism from_initial(const Object& x) const { return Morphism{{}, {}, Object{}, x}; }

  /// Tagged disjoint union: indices of the k-th summand follow those of the earlier ones.
  [[nodiscard]] Coproduct<Sums> coproduct(const std::vector<Object>& xs) const {
    Coproduct<Sums> out{Object{}, {}};
    for (const auto& x : xs) out.object.family.insert(out.object.family.end(), x.family.begin(), x.family.end());
    std::uint32_t offset = 0;
    for (const auto& x : xs) {
      Morphism inj{{}, {}, x, out.object};
      for (std::uint32_t i = 0; i < x.size(); ++i) {
        inj.index.push_back(offset + i);
        inj.components.push_back(base_.identity(x.family[i]));
      }
      offset += static_cast<std::uint32_t>(x.size());
      out.injections.push_back(std::move(inj));
    }
    return out;
  }

  [[nodiscard]] Morphism copair(const Coproduct<Sums>& cp, const std::vector<Morphism>& fs) const {
    if (fs.size() != cp.injections.size()) throw Error(ErrorCode::cone_mismatch, "sums: copair arity");
    if (fs.empty()) throw Error(ErrorCode::precondition, "sums: empty copairing needs an explicit target");
    Morphism out{{}, {}, cp.object, fs.front().tgt};
    for (const auto& f : fs) {
      if (!(f.tgt == out.tgt)) throw Error(ErrorCode::cone_mismatch, "sums: copair targets differ");
      out.index.insert(out.index.end(), f.index.begin(), f.index.end());
      out.components.insert(out.components.end(), f.components.begin(), f.components.end());
    }
    return out;
  }

  [[nodiscard]] std::string describe(const Object& x) const {
    std::vector<std::string> parts;
    for (const auto& xi : x.family) parts.push_back(base_.describe(xi));
    return "{" + join(parts, ",") + "}";
  }
  [[nodiscard]] std::string describe(const Morphism& f) const {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < f.index.size(); ++i)
      parts.push_back(std::to_string(i) + ">" + std::to_string(f.index[i]) + ":" + base_.describe(f.components[i]));
    return "<" + join(parts, ",") + ">";
  }

 private:
  std::string base_name() const {
    if constexpr (requires { base_.name(); })
      return base_.name();
    else
      return "C";
  }

  bool for_each_choice(const Object& x, const Object& y,
                       const std::vector<std::vector<std::pair<std::uint32_t, Mor<C>>>>& options,
                       const MorphismVisitor<Sums>& visit) const {
    std::vector<std::size_t> radices;
    for (const auto& o : options) radices.push_back(o.size());
    for (Odometer odo(radices); !odo.done(); odo.next()) {
      Morphism f{{}, {}, x, y};
      for (std::size_t i = 0; i < options.size(); ++i) {
        const auto& [j, h] = options[i][odo.digits()[i]];
        f.index.push_back(j);
        f.components.push_back(h);
      }
      if (!visit(f)) return false;
    }
    return true;
  }

  C base_;
};

}  // namespace lexcat
