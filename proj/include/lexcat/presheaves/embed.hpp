#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexcat/groupoids/e2.hpp"
#include "lexcat/groupoids/simplicial.hpp"
#include "lexcat/presheaves/psh.hpp"
#include "lexcat/sums/sums.hpp"

namespace lexcat {

using SumsTab = Sums<Tabulated>;
using E2Tab = E2<SumsTab>;

/// The presheaf c ↦ π0 of hom(i c, W), with the data needed to act on it.
struct EmbeddedGroupoid {
  Presheaf presheaf;
  std::vector<std::vector<SumsTab::Morphism>> level0;  // per c: hom(i c, W0), sorted
  std::vector<std::vector<std::uint32_t>> classes;     // per c: level0 index -> element
  std::vector<std::vector<std::uint32_t>> reps;        // per c: element -> first level0 index
};

namespace detail {

inline std::uint32_t sorted_index(const std::vector<SumsTab::Morphism>& v, const SumsTab::Morphism& u) {
  const auto it = std::lower_bound(v.begin(), v.end(), u);
  if (it == v.end() || !(*it == u)) throw Error(ErrorCode::malformed, "embed: morphism missing from its hom-set");
  return static_cast<std::uint32_t>(it - v.begin());
}

}  // namespace detail

inline EmbeddedGroupoid embed_to_psh(const SumsTab& s, const TruncatedSimplicial<SumsTab>& w) {
  const FinSet sets;
  const auto& base = s.base();
  EmbeddedGroupoid out;
  for (const auto& c : base.objects()) {
    const auto ic = s.singleton(c);
    auto h0 = s.hom(ic, w.a0);
    const auto h1 = s.hom(ic, w.a1);
    std::vector<std::uint32_t> t0, t1;
    for (const auto& u : h1) {
      t0.push_back(detail::sorted_index(h0, s.compose(w.d0, u)));
      t1.push_back(detail::sorted_index(h0, s.compose(w.d1, u)));
    }
    const auto q = sets.quotient(FinSet::function(h0.size(), t0), FinSet::function(h0.size(), t1), {});
    std::vector<std::uint32_t> reps(q.object.size, ~0u);
    for (std::uint32_t k = 0; k < h0.size(); ++k)
      if (reps[q.projection(k)] == ~0u) reps[q.projection(k)] = k;
    out.presheaf.values.push_back(static_cast<std::uint32_t>(q.object.size));
    out.level0.push_back(std::move(h0));
    out.classes.push_back(q.projection.table);
    out.reps.push_back(std::move(reps));
  }
  for (const auto& m : base.morphisms()) {
    const auto c = base.src(m).index, d = base.tgt(m).index;
    const auto im = s.singleton(m);
    std::vector<std::uint32_t> t;
    for (auto r : out.reps[d]) {
      const auto u = s.compose(out.level0[d][r], im);
      t.push_back(out.classes[c][detail::sorted_index(out.level0[c], u)]);
    }
    out.presheaf.actions.push_back(std::move(t));
  }
  return out;
}

/// The transformation induced by φ : W -> V, [u] ↦ [φ0 ∘ u].
inline Psh::Morphism embed_morphism(const SumsTab& s, const EmbeddedGroupoid& w, const EmbeddedGroupoid& v,
                                    const E2Tab::Morphism& phi) {
  Psh::Morphism n{w.presheaf, v.presheaf, {}};
  for (std::size_t c = 0; c < w.reps.size(); ++c) {
    std::vector<std::uint32_t> t;
    for (auto r : w.reps[c])
      t.push_back(v.classes[c][detail::sorted_index(v.level0[c], s.compose(phi.f0, w.level0[c][r]))]);
    n.components.push_back(std::move(t));
  }
  return n;
}

struct FullyFaithfulResult {
  std::size_t e2_count = 0;
  std::size_t psh_count = 0;
  bool faithful = false;  // distinct classes go to distinct transformations
  bool full = false;      // every transformation is hit
  std::string witness;
  [[nodiscard]] bool ok() const { return faithful && full; }
};

/// Compares hom_E2(W, V) with Nat(embed W, embed V) through the induced map.
inline FullyFaithfulResult check_fully_faithful(const E2Tab& e, const Psh& psh, const TruncatedSimplicial<SumsTab>& w,
                                                const TruncatedSimplicial<SumsTab>& v) {
  const auto& s = e.base();
  const auto ew = embed_to_psh(s, w);
  const auto ev = embed_to_psh(s, v);
  const auto classes = hom_e2(e, w, v);
  const auto nats = psh.hom(ew.presheaf, ev.presheaf);
  FullyFaithfulResult r{classes.size(), nats.size(), true, true, {}};
  std::set<Psh::Morphism> image;
  for (const auto& phi : classes) {
    const auto n = embed_morphism(s, ew, ev, phi);
    if (!psh.is_natural(n)) {
      r.faithful = r.full = false;
      r.witness = "induced map of " + e.describe(phi) + " is not natural";
      return r;
    }
    if (!image.insert(n).second && r.faithful) {
      r.faithful = false;
      r.witness = "two classes induce " + psh.describe(n);
    }
  }
  for (const auto& n : nats)
    if (!image.count(n)) {
      r.full = false;
      if (r.witness.empty()) r.witness = "transformation " + psh.describe(n) + " is not induced";
      break;
    }
  return r;
}

/// Representable decomposition: generators (c_k, p_k) with ∐ y(c_k) -> P bijective.
struct Decomposition {
  std::vector<std::pair<Tabulated::Object, std::uint32_t>> generators;
  // per object c, per element x of P(c): (generator k, morphism c -> c_k) hitting x
  std::vector<std::vector<std::pair<std::uint32_t, Tabulated::Morphism>>> preimage;
};

/// Roots are elements not properly restricted from elsewhere; one root per
/// mutual-restriction class.  Fails unless the comparison is bijective.
inline std::optional<Decomposition> decompose_representables(const Psh& psh, const Presheaf& p) {
  const auto& b = psh.base();
  const auto objs = b.objects();
  auto restricts_to = [&](const Tabulated::Object& d, std::uint32_t q, const Tabulated::Object& c, std::uint32_t x) {
    for (const auto& f : b.hom(c, d))
      if (p.actions[f.index][q] == x) return true;
    return false;
  };
  Decomposition dec;
  for (const auto& c : objs)
    for (std::uint32_t x = 0; x < p.values[c.index]; ++x) {
      bool root = true;
      for (const auto& d : objs) {
        for (std::uint32_t q = 0; root && q < p.values[d.index]; ++q)
          if (restricts_to(d, q, c, x) && !restricts_to(c, x, d, q)) root = false;
        if (!root) break;
      }
      if (!root) continue;
      const bool seen = std::any_of(dec.generators.begin(), dec.generators.end(), [&](const auto& g) {
        return restricts_to(g.first, g.second, c, x) && restricts_to(c, x, g.first, g.second);
      });
      if (!seen) dec.generators.emplace_back(c, x);
    }
  dec.preimage.resize(objs.size());
  for (const auto& c : objs) {
    std::vector<std::optional<std::pair<std::uint32_t, Tabulated::Morphism>>> hit(p.values[c.index]);
    std::size_t count = 0;
    for (std::uint32_t k = 0; k < dec.generators.size(); ++k) {
      const auto& [ck, pk] = dec.generators[k];
      for (const auto& u : b.hom(c, ck)) {
        auto& slot = hit[p.actions[u.index][pk]];
        if (slot) return std::nullopt;  // not injective
        slot = std::make_pair(k, u);
        ++count;
      }
    }
    if (count != hit.size()) return std::nullopt;
    for (const auto& h : hit) dec.preimage[c.index].push_back(*h);
  }
  return dec;
}

struct PresheafCover {
  TruncatedSimplicial<SumsTab> groupoid;
  std::vector<std::pair<Tabulated::Object, std::uint32_t>> elements;  // summands of Y: (c, z ∈ Z(c))
  bool kan = false;
  bool simple = false;  // R decomposed into representables
  bool iso = false;     // embed(groupoid) -> Z is invertible
  std::optional<Psh::Morphism> comparison;
  std::string witness;
  [[nodiscard]] bool ok() const { return kan && simple && iso; }
};

/// Y = ∐_{(c, z)} y(c) with R = Y ×_Z Y split into representables; the
/// comparison embed(Y, R) -> Z is checked pointwise.
inline PresheafCover presheaf_cover(const SumsTab& s, const Psh& psh, const Presheaf& z) {
  const auto& b = psh.base();
  PresheafCover out;
  if (auto bad = psh.check(z); !bad.empty()) {
    out.witness = "not a presheaf: " + bad.front();
    return out;
  }
  for (const auto& c : b.objects())
    for (std::uint32_t x = 0; x < z.values[c.index]; ++x) out.elements.emplace_back(c, x);
  const auto n = out.elements.size();
  std::vector<Psh::Morphism> cls;
  SumsTab::Object y;
  for (const auto& [c, x] : out.elements) {
    cls.push_back(psh.yoneda_map(c, z, x));
    y.family.push_back(c);
  }

  SumsTab::Object r;
  SumsTab::Morphism d0{{}, {}, {}, y}, d1{{}, {}, {}, y}, sd{{}, {}, y, {}};
  std::vector<std::uint32_t> offset_diag(n);
  std::vector<std::optional<Decomposition>> diag(n);
  std::vector<Pullback<Psh>> diag_pb;
  out.simple = true;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      const auto pb = psh.pullback(cls[i], cls[j]);
      auto dec = decompose_representables(psh, pb.apex);
      if (!dec) {
        out.simple = false;
        out.witness = "fibre product over summands " + std::to_string(i) + "," + std::to_string(j) +
                      " is not a sum of representables";
        return out;
      }
      if (i == j) {
        offset_diag[i] = static_cast<std::uint32_t>(r.family.size());
        diag[i] = dec;
        diag_pb.push_back(pb);
      }
      const auto ci = out.elements[i].first, cj = out.elements[j].first;
      for (const auto& [ck, pk] : dec->generators) {
        r.family.push_back(ck);
        d0.index.push_back(i);
        d0.components.push_back(b.hom(ck, ci)[pb.left.components[ck.index][pk]]);
        d1.index.push_back(j);
        d1.components.push_back(b.hom(ck, cj)[pb.right.components[ck.index][pk]]);
      }
    }
  d0.src = d1.src = r;
  sd.tgt = r;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto ci = out.elements[i].first;
    const auto id = psh.yoneda_index(b.identity(ci));
    const auto& pb = diag_pb[i];
    std::optional<std::uint32_t> p;
    for (std::uint32_t x = 0; x < pb.apex.values[ci.index]; ++x)
      if (pb.left.components[ci.index][x] == id && pb.right.components[ci.index][x] == id) p = x;
    if (!p) throw Error(ErrorCode::malformed, "cover: diagonal element missing");
    const auto [k, u] = diag[i]->preimage[ci.index][*p];
    sd.index.push_back(offset_diag[i] + k);
    sd.components.push_back(u);
  }
  out.groupoid = {y, r, d0, d1, sd};

  out.kan = check_kan(s, out.groupoid).ok();
  if (!out.kan) {
    out.witness = "cover groupoid is not Kan";
    return out;
  }

  const auto emb = embed_to_psh(s, out.groupoid);
  Psh::Morphism cmp{emb.presheaf, z, {}};
  for (const auto& c : b.objects()) {
    const auto& h0 = emb.level0[c.index];
    std::vector<std::uint32_t> t(emb.presheaf.values[c.index], ~0u);
    for (std::uint32_t k = 0; k < h0.size(); ++k) {
      const auto& u = h0[k];
      const auto val = z.actions[u.components[0].index][out.elements[u.index[0]].second];
      auto& slot = t[emb.classes[c.index][k]];
      if (slot != ~0u && slot != val) {
        out.witness = "comparison is not constant on classes at " + b.id(c);
        return out;
      }
      slot = val;
    }
    cmp.components.push_back(std::move(t));
  }
  out.comparison = cmp;
  if (!psh.is_natural(cmp)) {
    out.witness = "comparison is not natural";
    return out;
  }
  for (const auto& c : b.objects()) {
    auto t = cmp.components[c.index];
    std::sort(t.begin(), t.end());
    bool bij = t.size() == z.values[c.index];
    for (std::uint32_t x = 0; bij && x < t.size(); ++x) bij = t[x] == x;
    if (!bij) {
      out.witness = "comparison is not bijective at " + b.id(c);
      return out;
    }
  }
  out.iso = true;
  return out;
}

}  // namespace lexcat
