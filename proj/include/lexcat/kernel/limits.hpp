#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexcat/core.hpp"

namespace lexcat {

/// Carriers whose morphism equality is structural (and therefore sortable)
/// declare `static constexpr bool strict = true`.
template <class C>
constexpr bool is_strict = requires { requires C::strict; };

/// Record of a universal-property verification.  `probes` is the finite
/// family of test objects the check quantified over.
struct LimitCert {
  std::string shape;
  std::string apex;
  std::vector<std::string> legs;
  std::vector<std::string> probes;
  std::size_t cones_checked = 0;
  bool valid = false;
  std::string witness;
};

namespace detail {

// Number of entries of `haystack` semantically equal to `needle`.
template <Category C>
std::size_t count_equal(const C& c, const std::vector<Mor<C>>& haystack, const Mor<C>& needle) {
  if constexpr (is_strict<C>) {
    auto [lo, hi] = std::equal_range(haystack.begin(), haystack.end(), needle);
    return static_cast<std::size_t>(hi - lo);
  } else {
    std::size_t n = 0;
    for (const auto& h : haystack)
      if (c.equal(h, needle)) ++n;
    return n;
  }
}

template <Category C>
void sort_if_strict(std::vector<Mor<C>>& v) {
  if constexpr (is_strict<C>) std::sort(v.begin(), v.end());
}

// True iff no two entries are semantically equal.
template <Category C>
bool pairwise_distinct(const C& c, std::vector<Mor<C>> v) {
  if constexpr (is_strict<C>) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  } else {
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        if (c.equal(v[i], v[j])) return false;
    return true;
  }
}

template <Category C>
std::vector<std::string> describe_all(const C& c, std::span<const Obj<C>> xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(c.describe(x));
  return out;
}

}  // namespace detail

/// Checks that every probe has exactly one morphism into `t`.
template <Category C>
LimitCert certify_terminal(const C& c, const Obj<C>& t, std::span<const Obj<C>> probes) {
  LimitCert cert{"terminal", c.describe(t), {}, detail::describe_all(c, probes), 0, true, {}};
  for (const auto& p : probes) {
    auto n = c.hom(p, t).size();
    ++cert.cones_checked;
    if (n != 1) {
      cert.valid = false;
      cert.witness = "probe " + c.describe(p) + " has " + std::to_string(n) + " maps to the apex";
      return cert;
    }
  }
  return cert;
}

/// For each probe P and each commuting pair (a, b) out of P, counts the
/// mediators P -> apex; the certificate is valid iff every count is one.
template <Category C>
LimitCert certify_pullback(const C& c, const Pullback<C>& pb, std::span<const Obj<C>> probes) {
  LimitCert cert{"pullback", c.describe(pb.apex), {c.describe(pb.left), c.describe(pb.right)},
                 detail::describe_all(c, probes), 0, true, {}};
  if (!c.equal(c.compose(pb.f, pb.left), c.compose(pb.g, pb.right))) {
    cert.valid = false;
    cert.witness = "legs do not commute";
    return cert;
  }
  const auto x = c.src(pb.f), y = c.src(pb.g);
  for (const auto& p : probes) {
    std::vector<Mor<C>> left_images, right_images;
    auto mediators = c.hom(p, pb.apex);
    for (const auto& m : mediators) {
      left_images.push_back(c.compose(pb.left, m));
      right_images.push_back(c.compose(pb.right, m));
    }
    std::vector<std::pair<Mor<C>, Mor<C>>> sorted_images;
    if constexpr (is_strict<C>) {
      for (std::size_t k = 0; k < mediators.size(); ++k) sorted_images.emplace_back(left_images[k], right_images[k]);
      std::sort(sorted_images.begin(), sorted_images.end());
    }
    const auto as = c.hom(p, x);
    const auto bs = c.hom(p, y);
    for (const auto& a : as) {
      const auto fa = c.compose(pb.f, a);
      for (const auto& b : bs) {
        if (!c.equal(fa, c.compose(pb.g, b))) continue;
        ++cert.cones_checked;
        std::size_t hits = 0;
        if constexpr (is_strict<C>) {
          auto key = std::make_pair(a, b);
          auto [lo, hi] = std::equal_range(sorted_images.begin(), sorted_images.end(), key);
          hits = static_cast<std::size_t>(hi - lo);
        } else {
          for (std::size_t k = 0; k < mediators.size(); ++k)
            if (c.equal(left_images[k], a) && c.equal(right_images[k], b)) ++hits;
        }
        if (hits != 1) {
          cert.valid = false;
          cert.witness = "probe " + c.describe(p) + " cone (" + c.describe(a) + ", " + c.describe(b) + ") has " +
                         std::to_string(hits) + " mediators";
          return cert;
        }
      }
    }
  }
  return cert;
}

/// Coequalizer of d0, d1 : R -> X: every probe map killing the pair factors
/// through the projection in exactly one way.
template <Category C>
LimitCert certify_coequalizer(const C& c, const Mor<C>& d0, const Mor<C>& d1, const Obj<C>& q, const Mor<C>& proj,
                              std::span<const Obj<C>> probes) {
  LimitCert cert{"coequalizer", c.describe(q), {c.describe(proj)}, detail::describe_all(c, probes), 0, true, {}};
  if (!c.equal(c.compose(proj, d0), c.compose(proj, d1))) {
    cert.valid = false;
    cert.witness = "projection does not coequalize the pair";
    return cert;
  }
  for (const auto& p : probes) {
    std::vector<Mor<C>> images;
    for (const auto& u : c.hom(q, p)) images.push_back(c.compose(u, proj));
    detail::sort_if_strict<C>(images);
    for (const auto& x : c.hom(c.tgt(d0), p)) {
      if (!c.equal(c.compose(x, d0), c.compose(x, d1))) continue;
      ++cert.cones_checked;
      const auto hits = detail::count_equal(c, images, x);
      if (hits != 1) {
        cert.valid = false;
        cert.witness = "probe " + c.describe(p) + " map " + c.describe(x) + " has " + std::to_string(hits) + " factorizations";
        return cert;
      }
    }
  }
  return cert;
}

// ---- derived limits ------------------------------------------------------

template <LexCategory C>
Pullback<C> product(const C& c, const Obj<C>& x, const Obj<C>& y) {
  return c.pullback(c.to_terminal(x), c.to_terminal(y));
}

/// The map (a, b) into a chosen product or pullback.
template <LexCategory C>
Mor<C> pairing(const C& c, const Pullback<C>& pb, const Mor<C>& a, const Mor<C>& b) {
  return c.pullback_mediator(pb, a, b);
}

template <LexCategory C>
struct Equalizer {
  Obj<C> object;
  Mor<C> leg;
  Pullback<C> construction;
};

/// Equalizer of f, g : X -> Y as the pullback of the diagonal of Y along (f, g).
template <LexCategory C>
Equalizer<C> equalizer(const C& c, const Mor<C>& f, const Mor<C>& g) {
  const auto y = c.tgt(f);
  const auto yy = product(c, y, y);
  const auto diag = pairing(c, yy, c.identity(y), c.identity(y));
  const auto fg = pairing(c, yy, f, g);
  auto pb = c.pullback(fg, diag);
  return {pb.apex, pb.left, pb};
}

template <LexCategory C>
LimitCert certify_equalizer(const C& c, const Mor<C>& f, const Mor<C>& g, const Equalizer<C>& eq,
                            std::span<const Obj<C>> probes) {
  LimitCert cert{"equalizer", c.describe(eq.object), {c.describe(eq.leg)}, detail::describe_all(c, probes), 0, true, {}};
  for (const auto& p : probes) {
    const auto meds = c.hom(p, eq.object);
    std::vector<Mor<C>> images;
    for (const auto& m : meds) images.push_back(c.compose(eq.leg, m));
    for (const auto& a : c.hom(p, c.src(f))) {
      if (!c.equal(c.compose(f, a), c.compose(g, a))) continue;
      ++cert.cones_checked;
      std::size_t hits = 0;
      for (const auto& im : images)
        if (c.equal(im, a)) ++hits;
      if (hits != 1) {
        cert.valid = false;
        cert.witness = "probe " + c.describe(p) + " map " + c.describe(a) + " has " + std::to_string(hits) + " mediators";
        return cert;
      }
    }
  }
  return cert;
}

// ---- classification ------------------------------------------------------

struct MorphismClass {
  bool mono = false;
  bool epi = false;
  bool iso = false;
};

/// Two-sided inverse, if any.  Any right inverse of an iso is its inverse,
/// so the first lift of the identity decides.
template <Category C>
std::optional<Mor<C>> inverse(const C& c, const Mor<C>& f) {
  auto g = first_lift(c, c.identity(c.tgt(f)), f);
  if (!g) return std::nullopt;
  if (!c.equal(c.compose(*g, f), c.identity(c.src(f)))) return std::nullopt;
  return g;
}

template <Category C>
bool is_iso(const C& c, const Mor<C>& f) {
  return inverse(c, f).has_value();
}

template <Category C>
bool is_mono_on(const C& c, const Mor<C>& f, std::span<const Obj<C>> probes) {
  for (const auto& p : probes) {
    auto hs = c.hom(p, c.src(f));
    std::vector<Mor<C>> images;
    for (const auto& h : hs) images.push_back(c.compose(f, h));
    if (!detail::pairwise_distinct(c, std::move(images))) return false;
  }
  return true;
}

template <Category C>
bool is_epi_on(const C& c, const Mor<C>& f, std::span<const Obj<C>> probes) {
  for (const auto& p : probes) {
    auto hs = c.hom(c.tgt(f), p);
    std::vector<Mor<C>> images;
    for (const auto& h : hs) images.push_back(c.compose(h, f));
    if (!detail::pairwise_distinct(c, std::move(images))) return false;
  }
  return true;
}

template <Category C>
MorphismClass morphism_class(const C& c, const Mor<C>& f, std::span<const Obj<C>> probes) {
  return {is_mono_on(c, f, probes), is_epi_on(c, f, probes), is_iso(c, f)};
}

/// The unique h with m∘h = f; m must be monic on the probe family.
template <Category C>
std::optional<Mor<C>> factor_through(const C& c, const Mor<C>& f, const Mor<C>& m, std::span<const Obj<C>> probes) {
  if (!is_mono_on(c, m, probes)) throw Error(ErrorCode::not_monic, "factor_through: " + c.describe(m) + " is not monic");
  return first_lift(c, f, m);
}

// ---- limits of graph-shaped diagrams ---------------------------------------

/// A diagram indexed by a finite graph: one object per vertex, one per edge,
/// each edge object mapping to its two endpoint objects.
template <class C>
struct GraphDiagram {
  struct Edge {
    Obj<C> object;
    std::size_t from;
    std::size_t to;
    Mor<C> to_from;
    Mor<C> to_to;
  };
  std::vector<Obj<C>> vertices;
  std::vector<Edge> edges;
};

template <class C>
struct DiagramLimit {
  enum class Step { start_edge, glue_one, glue_both, product_edge, product_vertex };
  struct Stage {
    Step step;
    std::size_t index;  // edge or vertex index
    bool glue_at_to = false;
    std::optional<Pullback<C>> pb;
  };
  Obj<C> apex;
  std::vector<Mor<C>> vertex_legs;
  std::vector<Mor<C>> edge_legs;
  std::vector<Stage> stages;
};

/// Iterated fibre products along the edges; disconnected parts by products.
template <LexCategory C>
DiagramLimit<C> limit(const C& c, const GraphDiagram<C>& d) {
  using Stage = typename DiagramLimit<C>::Stage;
  using Step = typename DiagramLimit<C>::Step;
  const auto nv = d.vertices.size();
  std::vector<std::optional<Mor<C>>> vleg(nv);
  std::vector<std::optional<Mor<C>>> eleg(d.edges.size());
  std::optional<Obj<C>> apex;
  std::vector<Stage> stages;

  auto pull_back_legs = [&](const Mor<C>& left) {
    for (auto& l : vleg)
      if (l) l = c.compose(*l, left);
    for (auto& l : eleg)
      if (l) l = c.compose(*l, left);
  };

  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const auto& edge = d.edges[e];
    const bool has_from = vleg[edge.from].has_value();
    const bool has_to = vleg[edge.to].has_value();
    if (edge.from == edge.to) throw Error(ErrorCode::precondition, "graph diagram: loop edges are not supported");
    if (!apex) {
      apex = edge.object;
      eleg[e] = c.identity(edge.object);
      vleg[edge.from] = edge.to_from;
      vleg[edge.to] = edge.to_to;
      stages.push_back(Stage{Step::start_edge, e, false, std::nullopt});
      continue;
    }
    if (has_from && has_to) {
      const auto vv = product(c, d.vertices[edge.from], d.vertices[edge.to]);
      const auto pair_p = pairing(c, vv, *vleg[edge.from], *vleg[edge.to]);
      const auto anchor = pairing(c, vv, edge.to_from, edge.to_to);
      auto pb = c.pullback(pair_p, anchor);
      pull_back_legs(pb.left);
      eleg[e] = pb.right;
      apex = pb.apex;
      stages.push_back(Stage{Step::glue_both, e, false, pb});
    } else if (has_from || has_to) {
      const bool at_to = has_to;
      const auto& leg = at_to ? *vleg[edge.to] : *vleg[edge.from];
      const auto& face = at_to ? edge.to_to : edge.to_from;
      auto pb = c.pullback(leg, face);
      pull_back_legs(pb.left);
      eleg[e] = pb.right;
      if (at_to)
        vleg[edge.from] = c.compose(edge.to_from, pb.right);
      else
        vleg[edge.to] = c.compose(edge.to_to, pb.right);
      apex = pb.apex;
      stages.push_back(Stage{Step::glue_one, e, at_to, pb});
    } else {
      auto pb = product(c, *apex, edge.object);
      pull_back_legs(pb.left);
      eleg[e] = pb.right;
      vleg[edge.from] = c.compose(edge.to_from, pb.right);
      vleg[edge.to] = c.compose(edge.to_to, pb.right);
      apex = pb.apex;
      stages.push_back(Stage{Step::product_edge, e, false, pb});
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (vleg[v]) continue;
    if (!apex) {
      apex = d.vertices[v];
      vleg[v] = c.identity(d.vertices[v]);
      stages.push_back(Stage{Step::product_vertex, v, false, std::nullopt});
      continue;
    }
    auto pb = product(c, *apex, d.vertices[v]);
    pull_back_legs(pb.left);
    vleg[v] = pb.right;
    apex = pb.apex;
    stages.push_back(Stage{Step::product_vertex, v, false, pb});
  }
  if (!apex) apex = c.terminal();

  DiagramLimit<C> out{*apex, {}, {}, std::move(stages)};
  for (auto& l : vleg) out.vertex_legs.push_back(*l);
  for (auto& l : eleg) out.edge_legs.push_back(*l);
  return out;
}

/// The unique map into the limit induced by a cone with the given legs.
template <LexCategory C>
Mor<C> limit_mediator(const C& c, const DiagramLimit<C>& lim, const Obj<C>& source,
                      const std::vector<Mor<C>>& vertex_maps, const std::vector<Mor<C>>& edge_maps) {
  using Step = typename DiagramLimit<C>::Step;
  std::optional<Mor<C>> m;
  for (const auto& st : lim.stages) {
    switch (st.step) {
      case Step::start_edge:
        m = edge_maps[st.index];
        break;
      case Step::glue_one:
      case Step::glue_both:
      case Step::product_edge:
        m = c.pullback_mediator(*st.pb, *m, edge_maps[st.index]);
        break;
      case Step::product_vertex:
        if (!st.pb)
          m = vertex_maps[st.index];
        else
          m = c.pullback_mediator(*st.pb, *m, vertex_maps[st.index]);
        break;
    }
  }
  if (!m) return c.to_terminal(source);
  return *m;
}

}  // namespace lexcat
