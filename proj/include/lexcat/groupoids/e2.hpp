#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexcat/core.hpp"
#include "lexcat/groupoids/simplicial.hpp"
#include "lexcat/kernel/limits.hpp"

namespace lexcat {

/// Triple fibre product X ×_{Z} Y ×_{Z'} W built as two chosen pullbacks.
template <class C>
struct Triple {
  Pullback<C> inner;  // X ×_Z Y
  Pullback<C> outer;  // (X ×_Z Y) ×_{Z'} W
  [[nodiscard]] const Obj<C>& apex() const { return outer.apex; }
};

/// X --f--> Z <--g-- Y --g'--> Z' <--h-- W
template <LexCategory C>
Triple<C> triple_pullback(const C& c, const Mor<C>& f, const Mor<C>& g, const Mor<C>& g2, const Mor<C>& h) {
  auto inner = c.pullback(f, g);
  auto outer = c.pullback(c.compose(g2, inner.right), h);
  return {std::move(inner), std::move(outer)};
}

template <LexCategory C>
Mor<C> triple_first(const C& c, const Triple<C>& t) {
  return c.compose(t.inner.left, t.outer.left);
}
template <LexCategory C>
Mor<C> triple_middle(const C& c, const Triple<C>& t) {
  return c.compose(t.inner.right, t.outer.left);
}
template <LexCategory C>
Mor<C> triple_last(const C&, const Triple<C>& t) {
  return t.outer.right;
}
template <LexCategory C>
Mor<C> triple_pair(const C& c, const Triple<C>& t, const Mor<C>& x, const Mor<C>& y, const Mor<C>& w) {
  return c.pullback_mediator(t.outer, c.pullback_mediator(t.inner, x, y), w);
}

/// E_h^(2)(C): Kan truncated simplicial objects, with morphisms (f0, f1)
/// respecting faces and compared up to homotopy.  A morphism value is any
/// representative of its class; `equal` is homotopy.
template <LexCategory C>
class E2 {
 public:
  using Object = TruncatedSimplicial<C>;

  struct Morphism {
    Object src;
    Object tgt;
    Mor<C> f0;
    Mor<C> f1;
    auto operator<=>(const Morphism&) const = default;
    bool operator==(const Morphism&) const = default;
  };

  explicit E2(C base) : base_(std::move(base)) {}

  [[nodiscard]] const C& base() const { return base_; }
  [[nodiscard]] std::string name() const {
    if constexpr (requires { base_.name(); })
      return "e2-over(" + base_.name() + ")";
    else
      return "e2-over(C)";
  }

  /// C -> E_h^(2)(C), x ↦ the discrete object on x.
  [[nodiscard]] Object embed(const Obj<C>& x) const { return discrete_simplicial(base_, x); }
  [[nodiscard]] Morphism embed(const Mor<C>& f) const { return {embed(base_.src(f)), embed(base_.tgt(f)), f, f}; }

  [[nodiscard]] Object src(const Morphism& f) const { return f.src; }
  [[nodiscard]] Object tgt(const Morphism& f) const { return f.tgt; }
  [[nodiscard]] Morphism identity(const Object& a) const {
    return {a, a, base_.identity(a.a0), base_.identity(a.a1)};
  }
  [[nodiscard]] Morphism compose(const Morphism& g, const Morphism& f) const {
    if (!(f.tgt == g.src)) throw Error(ErrorCode::precondition, "e2: composing non-composable morphisms");
    return {f.src, g.tgt, base_.compose(g.f0, f.f0), base_.compose(g.f1, f.f1)};
  }

  /// h : A0 -> B1 with d0 h = f0 and d1 h = g0, if any.
  [[nodiscard]] std::optional<Mor<C>> homotopy(const Mor<C>& f0, const Mor<C>& g0, const Object& b) const {
    const auto an = anchor(base_, b);
    return first_lift(base_, pairing(base_, an.square, f0, g0), an.map);
  }
  [[nodiscard]] bool equal(const Morphism& f, const Morphism& g) const {
    if (f.f0 == g.f0) return true;
    return homotopy(f.f0, g.f0, f.tgt).has_value();
  }

  /// The face square of a candidate level-0 map: a level-1 map making it commute, if any.
  [[nodiscard]] std::optional<Mor<C>> level_one(const Object& a, const Object& b, const Mor<C>& f0) const {
    const auto an = anchor(base_, b);
    return first_lift(base_, pairing(base_, an.square, base_.compose(f0, a.d0), base_.compose(f0, a.d1)), an.map);
  }

  [[nodiscard]] bool is_morphism(const Morphism& f) const {
    return base_.equal(base_.compose(f.tgt.d0, f.f1), base_.compose(f.f0, f.src.d0)) &&
           base_.equal(base_.compose(f.tgt.d1, f.f1), base_.compose(f.f0, f.src.d1));
  }

  /// Whether the degeneracy square commutes on the nose: f1 ∘ s = s ∘ f0.
  [[nodiscard]] bool strict_unit(const Morphism& f) const {
    return base_.equal(base_.compose(f.f1, f.src.s), base_.compose(f.tgt.s, f.f0));
  }

  /// One representative per homotopy class: least f0, then the first level-1 lift.
  [[nodiscard]] std::vector<Morphism> hom(const Object& a, const Object& b) const {
    std::vector<Morphism> reps;
    const auto an = anchor(base_, b);
    for (const auto& f0 : base_.hom(a.a0, b.a0)) {
      auto f1 = first_lift(base_, pairing(base_, an.square, base_.compose(f0, a.d0), base_.compose(f0, a.d1)), an.map);
      if (!f1) continue;
      bool fresh = true;
      for (const auto& r : reps)
        if (r.f0 == f0 || first_lift(base_, pairing(base_, an.square, r.f0, f0), an.map)) {
          fresh = false;
          break;
        }
      if (fresh) reps.push_back({a, b, f0, *f1});
      if (reps.size() > enumeration_cap()) throw Error(ErrorCode::cap_exceeded, "e2 hom");
    }
    return reps;
  }

  /// Classes h with m∘h ~ u.  Level 0 lifts u0 along P0 -> X0 ×_{Y0} Y1 -> Y0,
  /// i.e. pairs (h0, homotopy m0 h0 ~ u0); level 1 by the face square.
  bool for_each_lift(const Morphism& u, const Morphism& m, const MorphismVisitor<E2>& visit) const {
    const auto& x = m.src;
    const auto& y = m.tgt;
    const auto& p = u.src;
    const auto t = base_.pullback(m.f0, y.d0);
    const auto q = base_.compose(y.d1, t.right);
    const auto an = anchor(base_, x);
    std::vector<Mor<C>> seen;
    bool keep_going = true;
    base_.for_each_lift(u.f0, q, [&](const Mor<C>& lifted) {
      auto h0 = base_.compose(t.left, lifted);
      for (const auto& s : seen)
        if (s == h0 || first_lift(base_, pairing(base_, an.square, s, h0), an.map)) return true;
      auto h1 = first_lift(base_, pairing(base_, an.square, base_.compose(h0, p.d0), base_.compose(h0, p.d1)), an.map);
      if (!h1) return true;
      seen.push_back(h0);
      keep_going = visit(Morphism{p, x, h0, *h1});
      return keep_going;
    });
    return keep_going;
  }

  // ---- finite limits ----

  [[nodiscard]] Object terminal() const { return embed(base_.terminal()); }
  [[nodiscard]] Morphism to_terminal(const Object& a) const {
    return {a, terminal(), base_.to_terminal(a.a0), base_.to_terminal(a.a1)};
  }

  struct HomotopyPullback {
    Triple<C> level0;  // A0 ×_{D0} D1 ×_{D0} B0
    Triple<C> level1;  // A1 ×_{D0²} (D1 × D1) ×_{D0²} B1
    Pullback<C> d1_squared;
    Object apex;
  };

  /// A ×^h_D B for f : A -> D, g : B -> D.
  [[nodiscard]] HomotopyPullback homotopy_pullback(const Morphism& f, const Morphism& g) const {
    if (!(f.tgt == g.tgt)) throw Error(ErrorCode::precondition, "e2: pullback of a non-cospan");
    const auto& a = f.src;
    const auto& b = g.src;
    const auto& d = f.tgt;
    auto l0 = triple_pullback(base_, f.f0, d.d0, d.d1, g.f0);
    const auto dd = product(base_, d.a0, d.a0);
    auto d1sq = product(base_, d.a1, d.a1);
    const auto over_a = pairing(base_, dd, base_.compose(f.f0, a.d0), base_.compose(f.f0, a.d1));
    const auto d1sq_src = pairing(base_, dd, base_.compose(d.d0, d1sq.left), base_.compose(d.d0, d1sq.right));
    const auto d1sq_tgt = pairing(base_, dd, base_.compose(d.d1, d1sq.left), base_.compose(d.d1, d1sq.right));
    const auto over_b = pairing(base_, dd, base_.compose(g.f0, b.d0), base_.compose(g.f0, b.d1));
    auto l1 = triple_pullback(base_, over_a, d1sq_src, d1sq_tgt, over_b);

    const auto alpha = triple_first(base_, l1);
    const auto kk = triple_middle(base_, l1);
    const auto beta = triple_last(base_, l1);
    const auto face0 = triple_pair(base_, l0, base_.compose(a.d0, alpha), base_.compose(d1sq.left, kk),
                                   base_.compose(b.d0, beta));
    const auto face1 = triple_pair(base_, l0, base_.compose(a.d1, alpha), base_.compose(d1sq.right, kk),
                                   base_.compose(b.d1, beta));
    const auto k0 = triple_middle(base_, l0);
    const auto degen = triple_pair(base_, l1, base_.compose(a.s, triple_first(base_, l0)),
                                   pairing(base_, d1sq, k0, k0), base_.compose(b.s, triple_last(base_, l0)));
    Object apex{l0.apex(), l1.apex(), face0, face1, degen};
    return {std::move(l0), std::move(l1), std::move(d1sq), std::move(apex)};
  }

  [[nodiscard]] Pullback<E2> pullback(const Morphism& f, const Morphism& g) const {
    auto h = homotopy_pullback(f, g);
    Morphism left{h.apex, f.src, triple_first(base_, h.level0), triple_first(base_, h.level1)};
    Morphism right{h.apex, g.src, triple_last(base_, h.level0), triple_last(base_, h.level1)};
    return {h.apex, std::move(left), std::move(right), f, g};
  }

  /// The canonical mediator (a0, w, b0) where w : P0 -> D1 witnesses f a ~ g b.
  [[nodiscard]] Morphism pullback_mediator(const Pullback<E2>& pb, const Morphism& a, const Morphism& b) const {
    const auto w = homotopy(base_.compose(pb.f.f0, a.f0), base_.compose(pb.g.f0, b.f0), pb.f.tgt);
    if (!w) throw Error(ErrorCode::cone_mismatch, "e2: cone does not commute up to homotopy");
    return mediator_with_witness(pb, a, b, *w);
  }

  [[nodiscard]] Morphism mediator_with_witness(const Pullback<E2>& pb, const Morphism& a, const Morphism& b,
                                               const Mor<C>& w) const {
    auto h = homotopy_pullback(pb.f, pb.g);
    const auto& p = a.src;
    const auto d1sq = h.d1_squared;
    Morphism m{p, h.apex, triple_pair(base_, h.level0, a.f0, w, b.f0), {}};
    m.f1 = triple_pair(base_, h.level1, a.f1, pairing(base_, d1sq, base_.compose(w, p.d0), base_.compose(w, p.d1)), b.f1);
    return m;
  }

  // ---- coproducts, levelwise ----

  [[nodiscard]] Object initial() const
    requires HasCoproducts<C>
  {
    return embed(base_.initial());
  }
  [[nodiscard]] Morphism from_initial(const Object& a) const
    requires HasCoproducts<C>
  {
    return {initial(), a, base_.from_initial(a.a0), base_.from_initial(a.a1)};
  }

  [[nodiscard]] Coproduct<E2> coproduct(const std::vector<Object>& xs) const
    requires HasCoproducts<C>
  {
    if (xs.empty()) return {initial(), {}};
    std::vector<Obj<C>> l0, l1;
    for (const auto& x : xs) {
      l0.push_back(x.a0);
      l1.push_back(x.a1);
    }
    const auto c0 = base_.coproduct(l0);
    const auto c1 = base_.coproduct(l1);
    std::vector<Mor<C>> d0s, d1s, ss;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      d0s.push_back(base_.compose(c0.injections[i], xs[i].d0));
      d1s.push_back(base_.compose(c0.injections[i], xs[i].d1));
      ss.push_back(base_.compose(c1.injections[i], xs[i].s));
    }
    Object sum{c0.object, c1.object, base_.copair(c1, d0s), base_.copair(c1, d1s), base_.copair(c0, ss)};
    Coproduct<E2> out{sum, {}};
    for (std::size_t i = 0; i < xs.size(); ++i) out.injections.push_back({xs[i], sum, c0.injections[i], c1.injections[i]});
    return out;
  }

  [[nodiscard]] Morphism copair(const Coproduct<E2>& cp, const std::vector<Morphism>& fs) const
    requires HasCoproducts<C>
  {
    if (fs.empty()) throw Error(ErrorCode::precondition, "e2: empty copairing needs an explicit target");
    std::vector<Obj<C>> l0, l1;
    std::vector<Mor<C>> f0s, f1s;
    for (const auto& f : fs) {
      l0.push_back(f.src.a0);
      l1.push_back(f.src.a1);
      f0s.push_back(f.f0);
      f1s.push_back(f.f1);
    }
    return {cp.object, fs.front().tgt, base_.copair(base_.coproduct(l0), f0s), base_.copair(base_.coproduct(l1), f1s)};
  }

  // ---- quotients of internal groupoids (B ⇉ A) ----

  struct CoequalizerData {
    Object cd;
    Morphism projection;
    Triple<C> level1;  // A1 ×_{A0} B0 ×_{A0} A1
  };

  /// cD_0 = A0, cD_1 = A1 ×_{A0} B0 ×_{A0} A1 with faces (d0 α, d1 β); the
  /// projection A -> cD is the identity at level 0.
  [[nodiscard]] CoequalizerData coequalizer_c(const Morphism& d0, const Morphism& d1, const Morphism& s) const {
    const auto& a = d0.tgt;
    const auto& b = d0.src;
    if (!(d1.src == b) || !(d1.tgt == a) || !(s.src == a) || !(s.tgt == b))
      throw Error(ErrorCode::precondition, "coequalizer_c: ill-typed internal groupoid");
    auto t = triple_pullback(base_, a.d1, d0.f0, d1.f0, a.d0);
    const auto alpha = triple_first(base_, t);
    const auto beta = triple_last(base_, t);
    const auto an = anchor(base_, a);
    auto lift = [&](const Mor<C>& x, const Mor<C>& y, const char* what) {
      auto h = first_lift(base_, pairing(base_, an.square, x, y), an.map);
      if (!h) throw Error(ErrorCode::precondition, std::string("coequalizer_c: no ") + what + " in A");
      return *h;
    };
    const auto id0 = base_.identity(a.a0);
    const auto ds0 = base_.compose(d0.f0, s.f0);
    const auto ds1 = base_.compose(d1.f0, s.f0);
    const auto to_start = lift(id0, ds0, "path x -> d0 s x");
    const auto from_end = lift(ds1, id0, "path d1 s x -> x");
    Object cd{a.a0, t.apex(), base_.compose(a.d0, alpha), base_.compose(a.d1, beta),
              triple_pair(base_, t, to_start, s.f0, from_end)};
    const auto tail = lift(base_.compose(ds1, a.d0), a.d1, "composite d1 s x -> y");
    Morphism proj{a, cd, id0,
                  triple_pair(base_, t, base_.compose(to_start, a.d0), base_.compose(s.f0, a.d0), tail)};
    return {std::move(cd), std::move(proj), std::move(t)};
  }

  [[nodiscard]] Quotient<E2> quotient(const Morphism& d0, const Morphism& d1, const Morphism& s) const {
    auto q = coequalizer_c(d0, d1, s);
    return {std::move(q.cd), std::move(q.projection)};
  }

  /// u : cD -> U with u0 = f0, for f : A -> U coequalizing the pair up to homotopy.
  [[nodiscard]] Morphism quotient_mediator(const Quotient<E2>& q, const Morphism& f) const {
    const auto& cd = q.object;
    const auto& u = f.tgt;
    const auto an = anchor(base_, u);
    auto f1 = first_lift(base_, pairing(base_, an.square, base_.compose(f.f0, cd.d0), base_.compose(f.f0, cd.d1)), an.map);
    if (!f1) throw Error(ErrorCode::cone_mismatch, "e2: map does not coequalize the pair");
    return {cd, u, f.f0, *f1};
  }

  [[nodiscard]] std::string describe(const Object& a) const {
    return "(" + base_.describe(a.a0) + "<=" + base_.describe(a.a1) + ")";
  }
  [[nodiscard]] std::string describe(const Morphism& f) const {
    return "(" + base_.describe(f.f0) + "|" + base_.describe(f.f1) + ")";
  }

 private:
  C base_;
};

/// Universal property of A ×^h_D B in E_h^(2)(C) against probes.  For each
/// cone (a, b) with f a ~ g b, every mediator m is enumerated through its
/// level-0 components (α, w, β) with α ~ a0, β ~ b0 and w a homotopy
/// f0 α ~ g0 β; the resulting classes must number exactly one.
template <LexCategory C>
LimitCert certify_homotopy_pullback(const E2<C>& e, const Pullback<E2<C>>& pb,
                                    std::span<const TruncatedSimplicial<C>> probes) {
  const auto& c = e.base();
  const auto& a = pb.f.src;
  const auto& b = pb.g.src;
  const auto& d = pb.f.tgt;
  const auto h = e.homotopy_pullback(pb.f, pb.g);
  LimitCert cert{"homotopy-pullback", e.describe(pb.apex), {e.describe(pb.left), e.describe(pb.right)},
                 detail::describe_all(e, probes), 0, true, {}};
  const auto an_d = anchor(c, d);
  const auto an_apex = anchor(c, h.apex);
  for (const auto& p : probes) {
    const auto as = e.hom(p, a);
    const auto bs = e.hom(p, b);
    std::vector<std::vector<Mor<C>>> a_class(as.size()), b_class(bs.size());
    for (const auto& x : c.hom(p.a0, a.a0))
      for (std::size_t i = 0; i < as.size(); ++i)
        if (e.homotopy(x, as[i].f0, a)) a_class[i].push_back(x);
    for (const auto& y : c.hom(p.a0, b.a0))
      for (std::size_t j = 0; j < bs.size(); ++j)
        if (e.homotopy(y, bs[j].f0, b)) b_class[j].push_back(y);
    for (std::size_t i = 0; i < as.size(); ++i)
      for (std::size_t j = 0; j < bs.size(); ++j) {
        if (!e.equal(e.compose(pb.f, as[i]), e.compose(pb.g, bs[j]))) continue;
        ++cert.cones_checked;
        std::vector<Mor<C>> classes;
        for (const auto& x : a_class[i])
          for (const auto& y : b_class[j]) {
            const auto target = pairing(c, an_d.square, c.compose(pb.f.f0, x), c.compose(pb.g.f0, y));
            c.for_each_lift(target, an_d.map, [&](const Mor<C>& w) {
              auto m0 = triple_pair(c, h.level0, x, w, y);
              if (!e.level_one(p, h.apex, m0)) return true;
              for (const auto& k : classes)
                if (k == m0 || first_lift(c, pairing(c, an_apex.square, k, m0), an_apex.map)) return true;
              classes.push_back(std::move(m0));
              return classes.size() < 2;
            });
            if (classes.size() > 1) break;
          }
        if (classes.size() != 1) {
          cert.valid = false;
          cert.witness = "probe " + e.describe(p) + " cone (" + e.describe(as[i]) + ", " + e.describe(bs[j]) + ") has " +
                         std::to_string(classes.size()) + " mediating classes";
          return cert;
        }
        // the canonical mediator lands in that class
        const auto m = e.pullback_mediator(pb, as[i], bs[j]);
        if (!e.equal(e.compose(pb.left, m), as[i]) || !e.equal(e.compose(pb.right, m), bs[j])) {
          cert.valid = false;
          cert.witness = "canonical mediator does not restrict to the cone";
          return cert;
        }
      }
  }
  return cert;
}

// ---- groupoid-level operations ----

template <LexCategory C>
std::vector<typename E2<C>::Morphism> hom_e2(const E2<C>& e, const TruncatedSimplicial<C>& a,
                                             const TruncatedSimplicial<C>& b) {
  return e.hom(a, b);
}

/// f ~ g, with the witness h : A0 -> B1.
template <LexCategory C>
std::optional<Mor<C>> are_homotopic(const E2<C>& e, const typename E2<C>::Morphism& f,
                                    const typename E2<C>::Morphism& g) {
  if (!(f.src == g.src) || !(f.tgt == g.tgt)) throw Error(ErrorCode::precondition, "are_homotopic: different types");
  return e.homotopy(f.f0, g.f0, f.tgt);
}

struct ClassPredicates {
  bool monic = false;
  bool epic_sufficient = false;
};

/// monic: A1 -> A0 ×_{B0} B1 ×_{B0} A0 is iso (f between equivalence groupoids);
/// epic_sufficient: f0 is iso.
template <LexCategory C>
ClassPredicates class_predicates(const E2<C>& e, const typename E2<C>::Morphism& f) {
  const auto& c = e.base();
  const auto& a = f.src;
  const auto& b = f.tgt;
  auto t = triple_pullback(c, f.f0, b.d0, b.d1, f.f0);
  const auto comparison = triple_pair(c, t, a.d0, f.f1, a.d1);
  return {is_iso(c, comparison), is_iso(c, f.f0)};
}

/// Level 0 = B1, level 1 = B(∂□); faces pick the two horizontal edges.
template <LexCategory C>
TruncatedSimplicial<C> path_object(const C& c, const TruncatedSimplicial<C>& b) {
  const auto sq = evaluate(c, b, GraphShape::square_boundary());
  const auto& lim = sq.limit;
  const auto sd0 = c.compose(b.s, b.d0), sd1 = c.compose(b.s, b.d1);
  const auto degen =
      limit_mediator(c, lim, b.a1, {b.d0, b.d1, b.d0, b.d1}, {c.identity(b.a1), c.identity(b.a1), sd0, sd1});
  return {b.a1, lim.apex, lim.edge_legs[0], lim.edge_legs[1], degen};
}

/// The Kan condition for an internal groupoid B ⇉ A of E_h^(2)(C), as the
/// three horn factorizations of B ×^h_A B -> A × A through (d0, d1) plus the
/// degeneracy identities.  Returns the first missing factorization.
template <LexCategory C>
std::optional<std::string> internal_kan_failure(const E2<C>& e, const typename E2<C>::Morphism& d0,
                                                const typename E2<C>::Morphism& d1,
                                                const typename E2<C>::Morphism& s) {
  const auto& a = d0.tgt;
  const auto ida = e.identity(a);
  if (!e.equal(e.compose(d0, s), ida)) return "d0 s is not homotopic to the identity";
  if (!e.equal(e.compose(d1, s), ida)) return "d1 s is not homotopic to the identity";
  const auto aa = product(e, a, a);
  const auto rel = pairing(e, aa, d0, d1);
  struct Horn {
    const char* name;
    bool left_tail, right_tail;  // which faces are glued
    bool out_left_tail, out_right_tail;
  };
  // horn 0: x->y, x->z gives y->z; horn 1: x->y, y->z gives x->z; horn 2: x->z, y->z gives x->y
  const Horn horns[3] = {{"horn 0", false, false, true, true},
                         {"horn 1", true, false, false, true},
                         {"horn 2", true, true, false, false}};
  for (const auto& h : horns) {
    const auto& gl = h.left_tail ? d1 : d0;
    const auto& gr = h.right_tail ? d1 : d0;
    const auto pb = e.pullback(gl, gr);
    const auto out = pairing(e, aa, e.compose(h.out_left_tail ? d1 : d0, pb.left),
                             e.compose(h.out_right_tail ? d1 : d0, pb.right));
    if (!first_lift(e, out, rel)) return std::string(h.name) + ": B x^h_A B -> A x A does not factor through B";
  }
  return std::nullopt;
}

}  // namespace lexcat
