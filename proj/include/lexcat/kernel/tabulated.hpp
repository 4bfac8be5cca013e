#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lexcat/core.hpp"
#include "lexcat/kernel/finposet.hpp"
#include "lexcat/kernel/limits.hpp"

namespace lexcat {

/// Plain description of a finite category, as read from a bundle.
struct TableSpec {
  struct Arrow {
    std::string id, src, tgt;
  };
  struct Entry {
    std::string g, f, result;  // result = g∘f
  };
  std::vector<std::string> objects;
  std::vector<Arrow> morphisms;
  std::map<std::string, std::string> identities;
  std::vector<Entry> compose;
};

struct AxiomReport {
  std::vector<std::string> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// A fully enumerated finite category.  Objects and morphisms are ordered by
/// their declared ids; limits and colimits are found by certified search
/// over all objects, first apex in key order winning.
class Tabulated {
 public:
  static constexpr bool strict = true;

  struct Object {
    std::uint32_t index = 0;
    auto operator<=>(const Object&) const = default;
  };
  struct Morphism {
    std::uint32_t index = 0;
    auto operator<=>(const Morphism&) const = default;
  };

  /// Resolves every reference; rejects dangling ids with E_MALFORMED.
  /// Composition may be partial here; see check_category_axioms.
  explicit Tabulated(const TableSpec& spec, std::string name = "tabulated") : name_(std::move(name)) {
    objects_ = spec.objects;
    std::sort(objects_.begin(), objects_.end());
    if (std::adjacent_find(objects_.begin(), objects_.end()) != objects_.end())
      throw Error(ErrorCode::malformed, "duplicate object id");
    std::vector<TableSpec::Arrow> arrows = spec.morphisms;
    std::sort(arrows.begin(), arrows.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < arrows.size(); ++i)
      if (arrows[i].id == arrows[i - 1].id) throw Error(ErrorCode::malformed, "duplicate morphism id " + arrows[i].id);
    for (const auto& a : arrows) {
      morphism_ids_.push_back(a.id);
      src_.push_back(object_index(a.src, "morphism " + a.id + " src"));
      tgt_.push_back(object_index(a.tgt, "morphism " + a.id + " tgt"));
    }
    const auto n = objects_.size();
    const auto m = morphism_ids_.size();
    identity_.assign(n, std::nullopt);
    for (const auto& [obj, mor] : spec.identities)
      identity_[object_index(obj, "identity key")] = morphism_index(mor, "identity of " + obj);
    table_.assign(m * m, std::nullopt);
    for (const auto& e : spec.compose) {
      auto g = morphism_index(e.g, "compose.g"), f = morphism_index(e.f, "compose.f");
      auto r = morphism_index(e.result, "compose.result");
      table_[g * m + f] = r;
    }
    homs_.assign(n * n, {});
    for (std::uint32_t k = 0; k < m; ++k) homs_[src_[k] * n + tgt_[k]].push_back(Morphism{k});
    cache_ = std::make_shared<Cache>();
  }

  [[nodiscard]] std::string name() const { return name_; }
  [[nodiscard]] std::size_t object_count() const { return objects_.size(); }
  [[nodiscard]] std::size_t morphism_count() const { return morphism_ids_.size(); }

  [[nodiscard]] std::vector<Object> objects() const {
    std::vector<Object> out;
    for (std::uint32_t i = 0; i < objects_.size(); ++i) out.push_back({i});
    return out;
  }
  [[nodiscard]] std::vector<Morphism> morphisms() const {
    std::vector<Morphism> out;
    for (std::uint32_t i = 0; i < morphism_ids_.size(); ++i) out.push_back({i});
    return out;
  }

  [[nodiscard]] Object object(const std::string& id) const { return {object_index(id, "object lookup")}; }
  [[nodiscard]] Morphism morphism(const std::string& id) const { return {morphism_index(id, "morphism lookup")}; }
  [[nodiscard]] const std::string& id(const Object& x) const { return objects_[x.index]; }
  [[nodiscard]] const std::string& id(const Morphism& f) const { return morphism_ids_[f.index]; }

  [[nodiscard]] Object src(const Morphism& f) const { return {src_[f.index]}; }
  [[nodiscard]] Object tgt(const Morphism& f) const { return {tgt_[f.index]}; }

  [[nodiscard]] std::optional<Morphism> declared_identity(const Object& x) const {
    if (auto i = identity_[x.index]) return Morphism{*i};
    return std::nullopt;
  }
  [[nodiscard]] std::optional<Morphism> declared_composite(const Morphism& g, const Morphism& f) const {
    if (auto r = table_[g.index * morphism_ids_.size() + f.index]) return Morphism{*r};
    return std::nullopt;
  }

  [[nodiscard]] Morphism identity(const Object& x) const {
    auto i = declared_identity(x);
    if (!i) throw Error(ErrorCode::malformed, "no identity for " + objects_[x.index]);
    return *i;
  }
  [[nodiscard]] Morphism compose(const Morphism& g, const Morphism& f) const {
    if (tgt_[f.index] != src_[g.index])
      throw Error(ErrorCode::precondition, "tabulated: composing non-composable " + id(g) + " after " + id(f));
    auto r = declared_composite(g, f);
    if (!r) throw Error(ErrorCode::malformed, "missing composite " + id(g) + " o " + id(f));
    return *r;
  }
  [[nodiscard]] bool equal(const Morphism& f, const Morphism& g) const { return f == g; }

  [[nodiscard]] std::vector<Morphism> hom(const Object& x, const Object& y) const {
    return homs_[x.index * objects_.size() + y.index];
  }

  bool for_each_lift(const Morphism& u, const Morphism& m, const MorphismVisitor<Tabulated>& visit) const {
    return lifts_by_filter(*this, u, m, visit);
  }

  // ---- limits by search ----

  [[nodiscard]] Object terminal() const {
    std::lock_guard lock(cache_->mutex);
    if (cache_->terminal) return *cache_->terminal;
    const auto all = objects();
    for (const auto& t : all)
      if (certify_terminal(*this, t, all).valid) return *(cache_->terminal = t);
    std::vector<std::string> near;
    for (const auto& t : all) {
      bool le_one = true;
      for (const auto& y : all) le_one = le_one && hom(y, t).size() <= 1;
      if (le_one) near.push_back(id(t));
    }
    throw Error(ErrorCode::no_terminal,
                name_ + " has no terminal object; near-misses: " + (near.empty() ? "none" : join(near, ",")));
  }
  [[nodiscard]] Morphism to_terminal(const Object& x) const { return hom(x, terminal()).front(); }

  [[nodiscard]] Pullback<Tabulated> pullback(const Morphism& f, const Morphism& g) const {
    if (tgt_[f.index] != tgt_[g.index]) throw Error(ErrorCode::precondition, "tabulated: pullback of a non-cospan");
    const auto key = std::make_pair(f.index, g.index);
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->pullbacks.find(key); it != cache_->pullbacks.end()) return it->second;
    }
    const auto all = objects();
    std::string witness;
    for (const auto& p : all)
      for (const auto& l : hom(p, src(f)))
        for (const auto& r : hom(p, src(g))) {
          if (compose(f, l) != compose(g, r)) continue;
          Pullback<Tabulated> pb{p, l, r, f, g};
          auto cert = certify_pullback(*this, pb, all);
          if (cert.valid) {
            std::lock_guard lock(cache_->mutex);
            cache_->pullbacks.emplace(key, pb);
            return pb;
          }
          if (witness.empty()) witness = "candidate " + id(p) + ": " + cert.witness;
        }
    throw Error(ErrorCode::no_pullback, "no pullback of " + id(f) + ", " + id(g) +
                                             (witness.empty() ? std::string("; no commuting square at all")
                                                              : "; first rejected " + witness));
  }

  [[nodiscard]] Morphism pullback_mediator(const Pullback<Tabulated>& pb, const Morphism& a, const Morphism& b) const {
    for (const auto& m : hom(src(a), pb.apex))
      if (compose(pb.left, m) == a && compose(pb.right, m) == b) return m;
    throw Error(ErrorCode::cone_mismatch, "tabulated: cone has no mediator");
  }

  // ---- colimits by search ----

  [[nodiscard]] Object initial() const {
    const auto all = objects();
    for (const auto& i : all) {
      bool ok = true;
      for (const auto& y : all) ok = ok && hom(i, y).size() == 1;
      if (ok) return i;
    }
    throw Error(ErrorCode::no_coproduct, name_ + " has no initial object");
  }
  [[nodiscard]] Morphism from_initial(const Object& x) const { return hom(initial(), x).front(); }

  [[nodiscard]] Coproduct<Tabulated> coproduct(const std::vector<Object>& xs) const {
    if (xs.empty()) return {initial(), {}};
    const auto all = objects();
    for (const auto& q : all) {
      std::vector<std::size_t> radices;
      std::vector<std::vector<Morphism>> choices;
      for (const auto& x : xs) {
        choices.push_back(hom(x, q));
        radices.push_back(choices.back().size());
      }
      for (Odometer odo(radices); !odo.done(); odo.next()) {
        Coproduct<Tabulated> cp{q, {}};
        for (std::size_t i = 0; i < xs.size(); ++i) cp.injections.push_back(choices[i][odo.digits()[i]]);
        if (is_coproduct(cp, xs, all)) return cp;
      }
    }
    std::vector<std::string> names;
    for (const auto& x : xs) names.push_back(id(x));
    throw Error(ErrorCode::no_coproduct, "no coproduct of " + join(names, ","));
  }

  [[nodiscard]] Morphism copair(const Coproduct<Tabulated>& cp, const std::vector<Morphism>& fs) const {
    if (fs.empty()) throw Error(ErrorCode::precondition, "tabulated: empty copairing needs an explicit target");
    for (const auto& m : hom(cp.object, tgt(fs.front()))) {
      bool ok = true;
      for (std::size_t i = 0; i < fs.size() && ok; ++i) ok = compose(m, cp.injections[i]) == fs[i];
      if (ok) return m;
    }
    throw Error(ErrorCode::cone_mismatch, "tabulated: cocone has no copairing");
  }

  /// Coequalizer of d0, d1 by search (s is not consulted).
  [[nodiscard]] Quotient<Tabulated> quotient(const Morphism& d0, const Morphism& d1, const Morphism&) const {
    const auto all = objects();
    const auto a0 = tgt(d0);
    for (const auto& q : all)
      for (const auto& p : hom(a0, q)) {
        if (compose(p, d0) != compose(p, d1)) continue;
        bool universal = true;
        for (const auto& t : all) {
          for (const auto& x : hom(a0, t)) {
            if (compose(x, d0) != compose(x, d1)) continue;
            std::size_t hits = 0;
            for (const auto& u : hom(q, t))
              if (compose(u, p) == x) ++hits;
            if (hits != 1) {
              universal = false;
              break;
            }
          }
          if (!universal) break;
        }
        if (universal) return {q, p};
      }
    throw Error(ErrorCode::no_coequalizer, "no coequalizer of " + id(d0) + ", " + id(d1));
  }

  [[nodiscard]] Morphism quotient_mediator(const Quotient<Tabulated>& q, const Morphism& f) const {
    for (const auto& u : hom(q.object, tgt(f)))
      if (compose(u, q.projection) == f) return u;
    throw Error(ErrorCode::cone_mismatch, "tabulated: map does not factor through the quotient");
  }

  [[nodiscard]] std::string describe(const Object& x) const { return objects_[x.index]; }
  [[nodiscard]] std::string describe(const Morphism& f) const { return morphism_ids_[f.index]; }

 private:
  struct Cache {
    std::mutex mutex;
    std::optional<Object> terminal;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Pullback<Tabulated>> pullbacks;
  };

  std::uint32_t object_index(const std::string& id, const std::string& where) const {
    auto it = std::lower_bound(objects_.begin(), objects_.end(), id);
    if (it == objects_.end() || *it != id) throw Error(ErrorCode::malformed, where + ": unknown object '" + id + "'");
    return static_cast<std::uint32_t>(it - objects_.begin());
  }
  std::uint32_t morphism_index(const std::string& id, const std::string& where) const {
    auto it = std::lower_bound(morphism_ids_.begin(), morphism_ids_.end(), id);
    if (it == morphism_ids_.end() || *it != id)
      throw Error(ErrorCode::malformed, where + ": unknown morphism '" + id + "'");
    return static_cast<std::uint32_t>(it - morphism_ids_.begin());
  }

  bool is_coproduct(const Coproduct<Tabulated>& cp, const std::vector<Object>& xs, const std::vector<Object>& all) const {
    for (const auto& t : all) {
      std::vector<std::vector<Morphism>> legs;
      std::vector<std::size_t> radices;
      for (const auto& x : xs) {
        legs.push_back(hom(x, t));
        radices.push_back(legs.back().size());
      }
      const auto outs = hom(cp.object, t);
      for (Odometer odo(radices); !odo.done(); odo.next()) {
        std::size_t hits = 0;
        for (const auto& u : outs) {
          bool ok = true;
          for (std::size_t i = 0; i < xs.size() && ok; ++i) ok = compose(u, cp.injections[i]) == legs[i][odo.digits()[i]];
          if (ok) ++hits;
        }
        if (hits != 1) return false;
      }
      if (std::any_of(radices.begin(), radices.end(), [](auto r) { return r == 0; }) && !outs.empty()) return false;
    }
    return true;
  }

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<std::string> morphism_ids_;
  std::vector<std::uint32_t> src_, tgt_;
  std::vector<std::optional<std::uint32_t>> identity_;
  std::vector<std::optional<std::uint32_t>> table_;
  std::vector<std::vector<Morphism>> homs_;
  std::shared_ptr<Cache> cache_;
};

/// Every identity/associativity/typing violation of a tabulated category.
inline AxiomReport check_category_axioms(const Tabulated& c) {
  AxiomReport rep;
  const auto mors = c.morphisms();
  for (const auto& x : c.objects()) {
    auto id = c.declared_identity(x);
    if (!id) {
      rep.violations.push_back("missing identity for object " + c.id(x));
      continue;
    }
    if (c.src(*id) != x || c.tgt(*id) != x) rep.violations.push_back("identity " + c.id(*id) + " is not an endomorphism of " + c.id(x));
  }
  for (const auto& g : mors)
    for (const auto& f : mors) {
      auto r = c.declared_composite(g, f);
      const bool composable = c.tgt(f) == c.src(g);
      if (!composable) {
        if (r) rep.violations.push_back("composite declared for non-composable pair (" + c.id(g) + ", " + c.id(f) + ")");
        continue;
      }
      if (!r) {
        rep.violations.push_back("missing composite at pair (" + c.id(g) + ", " + c.id(f) + ")");
        continue;
      }
      if (c.src(*r) != c.src(f) || c.tgt(*r) != c.tgt(g))
        rep.violations.push_back("composite " + c.id(g) + " o " + c.id(f) + " = " + c.id(*r) + " has wrong type");
    }
  if (!rep.ok()) return rep;
  for (const auto& f : mors) {
    if (c.compose(c.identity(c.tgt(f)), f) != f) rep.violations.push_back("left identity law fails at " + c.id(f));
    if (c.compose(f, c.identity(c.src(f))) != f) rep.violations.push_back("right identity law fails at " + c.id(f));
  }
  for (const auto& f : mors)
    for (const auto& g : mors) {
      if (c.tgt(f) != c.src(g)) continue;
      for (const auto& h : mors) {
        if (c.tgt(g) != c.src(h)) continue;
        if (c.compose(c.compose(h, g), f) != c.compose(h, c.compose(g, f)))
          rep.violations.push_back("associativity fails at triple (" + c.id(h) + ", " + c.id(g) + ", " + c.id(f) + ")");
      }
    }
  return rep;
}

// ---- builders ----

namespace tabulate {

/// One object, one morphism.
inline Tabulated terminal_category() {
  TableSpec t;
  t.objects = {"*"};
  t.morphisms = {{"id", "*", "*"}};
  t.identities = {{"*", "id"}};
  t.compose = {{"id", "id", "id"}};
  return Tabulated(t, "terminal");
}

/// n objects, identities only.
inline Tabulated discrete(std::size_t n) {
  TableSpec t;
  for (std::size_t i = 0; i < n; ++i) {
    auto o = "o" + std::to_string(i), m = "id" + std::to_string(i);
    t.objects.push_back(o);
    t.morphisms.push_back({m, o, o});
    t.identities[o] = m;
    t.compose.push_back({m, m, m});
  }
  return Tabulated(t, "discrete" + std::to_string(n));
}

/// The group Z/2 as a one-object category.
inline Tabulated z2_monoid() {
  TableSpec t;
  t.objects = {"*"};
  t.morphisms = {{"e", "*", "*"}, {"t", "*", "*"}};
  t.identities = {{"*", "e"}};
  t.compose = {{"e", "e", "e"}, {"e", "t", "t"}, {"t", "e", "t"}, {"t", "t", "e"}};
  return Tabulated(t, "z2");
}

/// Any finite category given by composable tables: objects, hom lists and
/// a composition function on concrete morphism values.
template <class Cat>
Tabulated from_category(const Cat& c, const std::vector<Obj<Cat>>& objects, const std::string& name) {
  TableSpec t;
  std::vector<std::string> obj_ids;
  for (std::size_t i = 0; i < objects.size(); ++i) obj_ids.push_back(c.describe(objects[i]));
  t.objects = obj_ids;
  std::vector<Mor<Cat>> all;
  std::vector<std::string> ids;
  auto key_of = [&](const Mor<Cat>& f) -> const std::string& {
    for (std::size_t k = 0; k < all.size(); ++k)
      if (all[k] == f) return ids[k];
    throw Error(ErrorCode::precondition, "tabulate: morphism outside the chosen objects");
  };
  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = 0; j < objects.size(); ++j)
      for (const auto& f : c.hom(objects[i], objects[j])) {
        all.push_back(f);
        ids.push_back(c.describe(f));
        t.morphisms.push_back({ids.back(), obj_ids[i], obj_ids[j]});
      }
  for (std::size_t i = 0; i < objects.size(); ++i) t.identities[obj_ids[i]] = key_of(c.identity(objects[i]));
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = 0; b < all.size(); ++b)
      if (c.tgt(all[b]) == c.src(all[a])) t.compose.push_back({ids[a], ids[b], key_of(c.compose(all[a], all[b]))});
  return Tabulated(t, name);
}

inline Tabulated poset(const FinPoset& p, const std::string& name = "finposet") { return from_category(p, p.objects(), name); }

/// Pointed finite sets of sizes 1..n (basepoint 0), basepoint-preserving maps.
/// Object "p<k>" has k elements; morphism ids list the images of 1..k-1.
inline Tabulated pointed_sets(std::size_t n) {
  TableSpec t;
  struct Map {
    std::size_t src, tgt;
    std::vector<std::uint32_t> table;
    std::string id;
  };
  std::vector<Map> maps;
  auto obj = [](std::size_t k) { return "p" + std::to_string(k); };
  for (std::size_t a = 1; a <= n; ++a) t.objects.push_back(obj(a));
  for (std::size_t a = 1; a <= n; ++a)
    for (std::size_t b = 1; b <= n; ++b) {
      Odometer odo(std::vector<std::size_t>(a - 1, b));
      for (; !odo.done(); odo.next()) {
        Map m{a, b, {0}, {}};
        std::string id = obj(a) + ">" + obj(b) + ":0";
        for (auto d : odo.digits()) {
          m.table.push_back(static_cast<std::uint32_t>(d));
          id += std::to_string(d);
        }
        m.id = id;
        t.morphisms.push_back({id, obj(a), obj(b)});
        maps.push_back(std::move(m));
      }
    }
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::uint32_t>>, std::string> by_table;
  for (const auto& m : maps) by_table[{m.src, m.tgt, m.table}] = m.id;
  for (std::size_t a = 1; a <= n; ++a) {
    std::vector<std::uint32_t> id(a);
    for (std::size_t i = 0; i < a; ++i) id[i] = static_cast<std::uint32_t>(i);
    t.identities[obj(a)] = by_table.at({a, a, id});
  }
  for (const auto& g : maps)
    for (const auto& f : maps) {
      if (f.tgt != g.src) continue;
      std::vector<std::uint32_t> h(f.src);
      for (std::size_t i = 0; i < f.src; ++i) h[i] = g.table[f.table[i]];
      t.compose.push_back({g.id, f.id, by_table.at({f.src, g.tgt, h})});
    }
  return Tabulated(t, "pointed-sets");
}

}  // namespace tabulate

}  // namespace lexcat
