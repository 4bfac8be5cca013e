#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lexcat/core.hpp"
#include "lexcat/kernel/finset.hpp"
#include "lexcat/kernel/tabulated.hpp"

namespace lexcat {

/// A finite presheaf on a tabulated category: |F(c)| per object and, per
/// morphism f : c -> d, the function F(d) -> F(c).
struct Presheaf {
  std::vector<std::uint32_t> values;
  std::vector<std::vector<std::uint32_t>> actions;
  auto operator<=>(const Presheaf&) const = default;
  bool operator==(const Presheaf&) const = default;
};

/// Finite presheaves on a tabulated category and natural transformations.
/// Limits and colimits are pointwise.
class Psh {
 public:
  static constexpr bool strict = true;
  using Object = Presheaf;

  struct Morphism {
    Presheaf src;
    Presheaf tgt;
    std::vector<std::vector<std::uint32_t>> components;  // per object, F(c) -> G(c)
    auto operator<=>(const Morphism&) const = default;
    bool operator==(const Morphism&) const = default;
  };

  explicit Psh(Tabulated base) : base_(std::move(base)) {}

  [[nodiscard]] const Tabulated& base() const { return base_; }
  [[nodiscard]] std::string name() const { return "psh-over(" + base_.name() + ")"; }

  [[nodiscard]] FinSet::Object stalk(const Presheaf& f, const Tabulated::Object& c) const {
    return FinSet::set(f.values[c.index]);
  }
  [[nodiscard]] FinSet::Morphism action(const Presheaf& f, const Tabulated::Morphism& m) const {
    return {f.values[base_.tgt(m).index], f.values[base_.src(m).index], f.actions[m.index]};
  }
  [[nodiscard]] FinSet::Morphism component(const Morphism& n, const Tabulated::Object& c) const {
    return {n.src.values[c.index], n.tgt.values[c.index], n.components[c.index]};
  }

  /// Shape, identity and composition violations.
  [[nodiscard]] std::vector<std::string> check(const Presheaf& f) const {
    std::vector<std::string> out;
    const auto objs = base_.objects();
    const auto mors = base_.morphisms();
    if (f.values.size() != objs.size() || f.actions.size() != mors.size()) return {"presheaf shape mismatch"};
    for (const auto& m : mors) {
      const auto& t = f.actions[m.index];
      if (t.size() != f.values[base_.tgt(m).index]) {
        out.push_back("action of " + base_.id(m) + " has the wrong domain");
        continue;
      }
      for (auto v : t)
        if (v >= f.values[base_.src(m).index]) out.push_back("action of " + base_.id(m) + " leaves its codomain");
    }
    if (!out.empty()) return out;
    for (const auto& c : objs) {
      const auto& t = f.actions[base_.identity(c).index];
      for (std::uint32_t x = 0; x < t.size(); ++x)
        if (t[x] != x) {
          out.push_back("identity of " + base_.id(c) + " acts nontrivially");
          break;
        }
    }
    for (const auto& g : mors)
      for (const auto& h : mors) {
        if (!(base_.tgt(h) == base_.src(g))) continue;
        const auto gh = base_.compose(g, h);
        // F(g∘h) = F(h)∘F(g)
        const auto& tg = f.actions[g.index];
        const auto& th = f.actions[h.index];
        const auto& tgh = f.actions[gh.index];
        for (std::uint32_t x = 0; x < tgh.size(); ++x)
          if (tgh[x] != th[tg[x]]) {
            out.push_back("composition fails at (" + base_.id(g) + ", " + base_.id(h) + ")");
            break;
          }
      }
    return out;
  }

  [[nodiscard]] bool is_natural(const Morphism& n) const {
    for (const auto& m : base_.morphisms()) {
      const auto c = base_.src(m).index, d = base_.tgt(m).index;
      const auto& fa = n.src.actions[m.index];
      const auto& ga = n.tgt.actions[m.index];
      for (std::uint32_t x = 0; x < n.src.values[d]; ++x)
        if (ga[n.components[d][x]] != n.components[c][fa[x]]) return false;
    }
    return true;
  }

  [[nodiscard]] Object src(const Morphism& n) const { return n.src; }
  [[nodiscard]] Object tgt(const Morphism& n) const { return n.tgt; }
  [[nodiscard]] Morphism identity(const Presheaf& f) const {
    Morphism n{f, f, {}};
    for (auto v : f.values) {
      std::vector<std::uint32_t> t(v);
      for (std::uint32_t i = 0; i < v; ++i) t[i] = i;
      n.components.push_back(std::move(t));
    }
    return n;
  }
  [[nodiscard]] Morphism compose(const Morphism& g, const Morphism& f) const {
    if (!(f.tgt == g.src)) throw Error(ErrorCode::precondition, "psh: composing non-composable transformations");
    Morphism n{f.src, g.tgt, {}};
    for (std::size_t c = 0; c < f.components.size(); ++c) {
      std::vector<std::uint32_t> t;
      for (auto v : f.components[c]) t.push_back(g.components[c][v]);
      n.components.push_back(std::move(t));
    }
    return n;
  }
  [[nodiscard]] bool equal(const Morphism& a, const Morphism& b) const { return a == b; }

  /// Natural transformations by backtracking over objects in index order,
  /// pruning on every naturality square whose corners are both assigned.
  bool for_each_hom(const Presheaf& f, const Presheaf& g, const MorphismVisitor<Psh>& visit) const {
    const auto n = f.values.size();
    double space = 1;
    for (std::size_t c = 0; c < n; ++c) space *= std::pow(static_cast<double>(g.values[c]), f.values[c]);
    if (space > static_cast<double>(enumeration_cap()))
      throw Error(ErrorCode::cap_exceeded, "psh hom: " + std::to_string(space) + " candidate component tuples");
    std::vector<std::vector<Tabulated::Morphism>> squares(n);  // morphisms whose later endpoint is c
    for (const auto& m : base_.morphisms())
      squares[std::max(base_.src(m).index, base_.tgt(m).index)].push_back(m);
    Morphism cur{f, g, std::vector<std::vector<std::uint32_t>>(n)};
    bool keep = true;
    auto rec = [&](auto&& self, std::size_t c) -> void {
      if (!keep) return;
      if (c == n) {
        keep = visit(cur);
        return;
      }
      for (Odometer odo(std::vector<std::size_t>(f.values[c], g.values[c])); keep && !odo.done(); odo.next()) {
        cur.components[c].assign(odo.digits().begin(), odo.digits().end());
        bool ok = true;
        for (const auto& m : squares[c]) {
          const auto s = base_.src(m).index, t = base_.tgt(m).index;
          const auto& fa = f.actions[m.index];
          const auto& ga = g.actions[m.index];
          for (std::uint32_t x = 0; ok && x < f.values[t]; ++x)
            ok = ga[cur.components[t][x]] == cur.components[s][fa[x]];
          if (!ok) break;
        }
        if (ok) self(self, c + 1);
      }
    };
    rec(rec, 0);
    return keep;
  }
  [[nodiscard]] std::vector<Morphism> hom(const Presheaf& f, const Presheaf& g) const {
    std::vector<Morphism> out;
    for_each_hom(f, g, [&](const Morphism& m) {
      out.push_back(m);
      return true;
    });
    return out;
  }
  bool for_each_lift(const Morphism& u, const Morphism& m, const MorphismVisitor<Psh>& visit) const {
    return lifts_by_filter(*this, u, m, visit);
  }

  // ---- pointwise limits and colimits ----

  [[nodiscard]] Presheaf terminal() const {
    return constant(1);
  }
  [[nodiscard]] Morphism to_terminal(const Presheaf& f) const {
    Morphism n{f, terminal(), {}};
    for (auto v : f.values) n.components.emplace_back(v, 0u);
    return n;
  }

  [[nodiscard]] Pullback<Psh> pullback(const Morphism& f, const Morphism& g) const {
    if (!(f.tgt == g.tgt)) throw Error(ErrorCode::precondition, "psh: pullback of a non-cospan");
    std::vector<Pullback<FinSet>> pbs;
    for (const auto& c : base_.objects()) pbs.push_back(sets_.pullback(component(f, c), component(g, c)));
    Presheaf apex;
    for (const auto& pb : pbs) apex.values.push_back(static_cast<std::uint32_t>(pb.apex.size));
    for (const auto& m : base_.morphisms()) {
      const auto c = base_.src(m).index, d = base_.tgt(m).index;
      const auto l = sets_.compose(action(f.src, m), pbs[d].left);
      const auto r = sets_.compose(action(g.src, m), pbs[d].right);
      apex.actions.push_back(sets_.pullback_mediator(pbs[c], l, r).table);
    }
    Morphism left{apex, f.src, {}}, right{apex, g.src, {}};
    for (const auto& pb : pbs) {
      left.components.push_back(pb.left.table);
      right.components.push_back(pb.right.table);
    }
    return {apex, left, right, f, g};
  }
  [[nodiscard]] Morphism pullback_mediator(const Pullback<Psh>& pb, const Morphism& a, const Morphism& b) const {
    Morphism n{a.src, pb.apex, {}};
    for (const auto& c : base_.objects()) {
      const Pullback<FinSet> local{stalk(pb.apex, c), component(pb.left, c), component(pb.right, c),
                                   component(pb.f, c), component(pb.g, c)};
      n.components.push_back(sets_.pullback_mediator(local, component(a, c), component(b, c)).table);
    }
    return n;
  }

  [[nodiscard]] Presheaf initial() const { return constant(0); }
  [[nodiscard]] Morphism from_initial(const Presheaf& f) const {
    return {initial(), f, std::vector<std::vector<std::uint32_t>>(f.values.size())};
  }
  [[nodiscard]] Coproduct<Psh> coproduct(const std::vector<Presheaf>& fs) const {
    Presheaf sum = initial();
    std::vector<std::vector<std::uint32_t>> offsets(fs.size(), std::vector<std::uint32_t>(sum.values.size()));
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t c = 0; c < sum.values.size(); ++c) {
        offsets[i][c] = sum.values[c];
        sum.values[c] += fs[i].values[c];
      }
    for (const auto& m : base_.morphisms()) {
      const auto c = base_.src(m).index;
      for (std::size_t i = 0; i < fs.size(); ++i)
        for (auto v : fs[i].actions[m.index]) sum.actions[m.index].push_back(v + offsets[i][c]);
    }
    Coproduct<Psh> out{sum, {}};
    for (std::size_t i = 0; i < fs.size(); ++i) {
      Morphism inj{fs[i], sum, {}};
      for (std::size_t c = 0; c < sum.values.size(); ++c) {
        std::vector<std::uint32_t> t(fs[i].values[c]);
        for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = x + offsets[i][c];
        inj.components.push_back(std::move(t));
      }
      out.injections.push_back(std::move(inj));
    }
    return out;
  }
  [[nodiscard]] Morphism copair(const Coproduct<Psh>& cp, const std::vector<Morphism>& fs) const {
    if (fs.empty()) throw Error(ErrorCode::precondition, "psh: empty copairing needs an explicit target");
    Morphism n{cp.object, fs.front().tgt, std::vector<std::vector<std::uint32_t>>(cp.object.values.size())};
    for (const auto& f : fs)
      for (std::size_t c = 0; c < n.components.size(); ++c)
        n.components[c].insert(n.components[c].end(), f.components[c].begin(), f.components[c].end());
    return n;
  }

  /// Pointwise coequalizer of any parallel pair.
  [[nodiscard]] Quotient<Psh> quotient(const Morphism& d0, const Morphism& d1, const Morphism&) const {
    std::vector<Quotient<FinSet>> qs;
    for (const auto& c : base_.objects()) qs.push_back(sets_.quotient(component(d0, c), component(d1, c), {}));
    Presheaf q;
    for (const auto& x : qs) q.values.push_back(static_cast<std::uint32_t>(x.object.size));
    for (const auto& m : base_.morphisms()) {
      const auto c = base_.src(m).index, d = base_.tgt(m).index;
      q.actions.push_back(sets_.quotient_mediator(qs[d], sets_.compose(qs[c].projection, action(d0.tgt, m))).table);
    }
    Morphism proj{d0.tgt, q, {}};
    for (const auto& x : qs) proj.components.push_back(x.projection.table);
    return {q, proj};
  }
  [[nodiscard]] Morphism quotient_mediator(const Quotient<Psh>& q, const Morphism& f) const {
    Morphism n{q.object, f.tgt, {}};
    for (const auto& c : base_.objects()) {
      const Quotient<FinSet> local{stalk(q.object, c), component(q.projection, c)};
      n.components.push_back(sets_.quotient_mediator(local, component(f, c)).table);
    }
    return n;
  }

  /// y(x) = hom(-, x), elements in hom enumeration order.
  [[nodiscard]] Presheaf yoneda(const Tabulated::Object& x) const {
    Presheaf y;
    for (const auto& c : base_.objects()) y.values.push_back(static_cast<std::uint32_t>(base_.hom(c, x).size()));
    for (const auto& m : base_.morphisms()) {
      const auto from = base_.hom(base_.tgt(m), x);
      const auto to = base_.hom(base_.src(m), x);
      std::vector<std::uint32_t> t;
      for (const auto& u : from) t.push_back(index_in(to, base_.compose(u, m)));
      y.actions.push_back(std::move(t));
    }
    return y;
  }
  /// The element of y(x)(c) naming u : c -> x.
  [[nodiscard]] std::uint32_t yoneda_index(const Tabulated::Morphism& u) const {
    return index_in(base_.hom(base_.src(u), base_.tgt(u)), u);
  }
  /// The transformation y(x) -> F classifying z ∈ F(x).
  [[nodiscard]] Morphism yoneda_map(const Tabulated::Object& x, const Presheaf& f, std::uint32_t z) const {
    Morphism n{yoneda(x), f, {}};
    for (const auto& c : base_.objects()) {
      std::vector<std::uint32_t> t;
      for (const auto& u : base_.hom(c, x)) t.push_back(f.actions[u.index][z]);
      n.components.push_back(std::move(t));
    }
    return n;
  }

  [[nodiscard]] Presheaf constant(std::uint32_t n) const {
    Presheaf f;
    f.values.assign(base_.object_count(), n);
    for (std::size_t m = 0; m < base_.morphism_count(); ++m) {
      std::vector<std::uint32_t> t(n);
      for (std::uint32_t i = 0; i < n; ++i) t[i] = i;
      f.actions.push_back(std::move(t));
    }
    return f;
  }

  /// Every presheaf with all stalks of size ≤ max_stalk, in a fixed order.
  [[nodiscard]] std::vector<Presheaf> enumerate(std::uint32_t max_stalk) const {
    std::vector<Presheaf> out;
    const auto n = base_.object_count();
    const auto mors = base_.morphisms();
    for (Odometer sizes(std::vector<std::size_t>(n, max_stalk + 1)); !sizes.done(); sizes.next()) {
      Presheaf f;
      f.values.assign(sizes.digits().begin(), sizes.digits().end());
      f.actions.resize(mors.size());
      std::vector<std::size_t> free;
      bool possible = true;
      for (const auto& m : mors) {
        const auto src = f.values[base_.src(m).index], tgt = f.values[base_.tgt(m).index];
        if (base_.equal(m, base_.identity(base_.src(m)))) {
          for (std::uint32_t i = 0; i < tgt; ++i) f.actions[m.index].push_back(i);
        } else {
          f.actions[m.index].assign(tgt, 0);
          if (tgt > 0 && src == 0) {
            possible = false;
            break;
          }
          free.push_back(m.index);
        }
      }
      if (!possible) continue;
      auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == free.size()) {
          if (check(f).empty()) out.push_back(f);
          return;
        }
        const auto m = Tabulated::Morphism{static_cast<std::uint32_t>(free[k])};
        for (Odometer odo(std::vector<std::size_t>(f.values[base_.tgt(m).index], f.values[base_.src(m).index]));
             !odo.done(); odo.next()) {
          f.actions[m.index].assign(odo.digits().begin(), odo.digits().end());
          self(self, k + 1);
        }
      };
      rec(rec, 0);
    }
    return out;
  }

  [[nodiscard]] std::string describe(const Presheaf& f) const {
    std::vector<std::string> parts;
    for (const auto& c : base_.objects()) parts.push_back(base_.id(c) + ":" + std::to_string(f.values[c.index]));
    return "{" + join(parts, ",") + "}";
  }
  [[nodiscard]] std::string describe(const Morphism& n) const {
    std::vector<std::string> parts;
    for (const auto& c : base_.objects()) {
      std::vector<std::string> t;
      for (auto v : n.components[c.index]) t.push_back(std::to_string(v));
      parts.push_back(base_.id(c) + ":[" + join(t, ",") + "]");
    }
    return "<" + join(parts, ";") + ">";
  }

 private:
  [[nodiscard]] std::uint32_t index_in(const std::vector<Tabulated::Morphism>& v, const Tabulated::Morphism& u) const {
    const auto it = std::find(v.begin(), v.end(), u);
    if (it == v.end()) throw Error(ErrorCode::malformed, "psh: morphism missing from its hom-set");
    return static_cast<std::uint32_t>(it - v.begin());
  }

  Tabulated base_;
  FinSet sets_;
};

}  // namespace lexcat
