#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lexcat/core.hpp"
#include "lexcat/kernel/limits.hpp"

namespace lexcat {

/// Level ≤ 1 data of a 1-coskeletal simplicial object: d0, d1 : A1 -> A0 and s : A0 -> A1.
template <class C>
struct TruncatedSimplicial {
  Obj<C> a0;
  Obj<C> a1;
  Mor<C> d0;
  Mor<C> d1;
  Mor<C> s;
  auto operator<=>(const TruncatedSimplicial&) const = default;
  bool operator==(const TruncatedSimplicial&) const = default;
};

template <Category C>
bool simplicial_identities_hold(const C& c, const TruncatedSimplicial<C>& a) {
  const auto id = c.identity(a.a0);
  return c.equal(c.compose(a.d0, a.s), id) && c.equal(c.compose(a.d1, a.s), id);
}

/// The discrete object on x: both levels x, all structure maps identities.
template <Category C>
TruncatedSimplicial<C> discrete_simplicial(const C& c, const Obj<C>& x) {
  const auto id = c.identity(x);
  return {x, x, id, id, id};
}

/// A finite graph used as a diagram scheme: one A0 per vertex, one A1 per edge.
struct GraphShape {
  struct Edge {
    std::size_t from;
    std::size_t to;
  };
  std::string name;
  std::size_t vertices = 0;
  std::vector<Edge> edges;

  static GraphShape point() { return {"point", 1, {}}; }
  static GraphShape edge() { return {"edge", 1 + 1, {{0, 1}}}; }
  /// ∂Δ[2]: edges 01, 12, 02.
  static GraphShape boundary_triangle() { return {"boundary-triangle", 3, {{0, 1}, {1, 2}, {0, 2}}}; }
  /// Λ^i[2]: the two edges of ∂Δ[2] through vertex i.
  static GraphShape horn(int i) {
    switch (i) {
      case 0: return {"horn0", 3, {{0, 1}, {0, 2}}};
      case 1: return {"horn1", 3, {{0, 1}, {1, 2}}};
      default: return {"horn2", 3, {{1, 2}, {0, 2}}};
    }
  }
  /// ∂□ with vertices 00, 01, 10, 11 (indices 0..3): edges h0: 00-01, h1: 10-11, v0: 00-10, v1: 01-11.
  static GraphShape square_boundary() { return {"square-boundary", 4, {{0, 1}, {2, 3}, {0, 2}, {1, 3}}}; }
};

// Edges of ∂Δ[2] covered by each horn, in the horn's own edge order.
inline std::array<std::size_t, 2> horn_edges_in_triangle(int i) {
  switch (i) {
    case 0: return {0, 2};
    case 1: return {0, 1};
    default: return {1, 2};
  }
}

template <class C>
struct Evaluation {
  GraphShape shape;
  DiagramLimit<C> limit;
  [[nodiscard]] const Obj<C>& object() const { return limit.apex; }
};

/// A(G): the limit of the diagram with A0 at each vertex and A1 at each edge.
template <LexCategory C>
Evaluation<C> evaluate(const C& c, const TruncatedSimplicial<C>& a, const GraphShape& g) {
  GraphDiagram<C> d;
  d.vertices.assign(g.vertices, a.a0);
  for (const auto& e : g.edges) d.edges.push_back({a.a1, e.from, e.to, a.d0, a.d1});
  return {g, limit(c, d)};
}

/// Restriction A(G) -> A(H) along an inclusion of graphs given by vertex and edge maps H -> G.
template <LexCategory C>
Mor<C> restriction(const C& c, const Evaluation<C>& big, const Evaluation<C>& small, const std::vector<std::size_t>& vmap,
                   const std::vector<std::size_t>& emap) {
  std::vector<Mor<C>> vs, es;
  for (auto v : vmap) vs.push_back(big.limit.vertex_legs[v]);
  for (auto e : emap) es.push_back(big.limit.edge_legs[e]);
  return limit_mediator(c, small.limit, big.object(), vs, es);
}

template <class C>
struct KanWitness {
  std::array<Mor<C>, 3> sections;
};

template <class C>
struct KanResult {
  std::optional<KanWitness<C>> witness;
  std::string failure;  // names the first horn without a section
  [[nodiscard]] bool ok() const { return witness.has_value(); }
};

template <class C>
struct HornData {
  Evaluation<C> triangle;
  std::array<std::optional<Evaluation<C>>, 3> horns;
  std::array<std::optional<Mor<C>>, 3> restrictions;
};

template <LexCategory C>
HornData<C> horn_data(const C& c, const TruncatedSimplicial<C>& a) {
  HornData<C> out{evaluate(c, a, GraphShape::boundary_triangle()), {}, {}};
  for (int i = 0; i < 3; ++i) {
    out.horns[i] = evaluate(c, a, GraphShape::horn(i));
    auto e = horn_edges_in_triangle(i);
    out.restrictions[i] = restriction(c, out.triangle, *out.horns[i], {0, 1, 2}, {e[0], e[1]});
  }
  return out;
}

/// Searches, per horn, the first section of A(∂Δ[2]) -> A(Λ^i[2]).  On
/// failure every horn without a section is named.
template <LexCategory C>
KanResult<C> check_kan(const C& c, const TruncatedSimplicial<C>& a) {
  const auto data = horn_data(c, a);
  std::array<std::optional<Mor<C>>, 3> found;
  std::vector<std::string> missing;
  for (int i = 0; i < 3; ++i) {
    found[i] = first_lift(c, c.identity(data.horns[i]->object()), *data.restrictions[i]);
    if (!found[i]) missing.push_back(std::to_string(i));
  }
  if (!missing.empty()) return {std::nullopt, "no section for horn(s) " + join(missing, ",")};
  return {KanWitness<C>{{*found[0], *found[1], *found[2]}}, {}};
}

/// Re-checks stored sections: restriction ∘ σ_i = id for each horn.
template <LexCategory C>
std::optional<std::string> revalidate_kan(const C& c, const TruncatedSimplicial<C>& a, const KanWitness<C>& w) {
  const auto data = horn_data(c, a);
  for (int i = 0; i < 3; ++i) {
    const auto& sigma = w.sections[i];
    const auto& horn = data.horns[i]->object();
    if (!(c.src(sigma) == horn) || !(c.tgt(sigma) == data.triangle.object()))
      return "section " + std::to_string(i) + " has the wrong type";
    if (!c.equal(c.compose(*data.restrictions[i], sigma), c.identity(horn)))
      return "section " + std::to_string(i) + " is not a section of the horn restriction";
  }
  return std::nullopt;
}

/// (d0, d1) : A1 -> A0 × A0 together with the chosen product.
template <class C>
struct Anchor {
  Pullback<C> square;  // A0 × A0
  Mor<C> map;
};

template <LexCategory C>
Anchor<C> anchor(const C& c, const Obj<C>& a0, const Mor<C>& d0, const Mor<C>& d1) {
  auto sq = product(c, a0, a0);
  auto m = pairing(c, sq, d0, d1);
  return {std::move(sq), std::move(m)};
}

template <LexCategory C>
Anchor<C> anchor(const C& c, const TruncatedSimplicial<C>& a) {
  return anchor(c, a.a0, a.d0, a.d1);
}

/// A morphism is mono iff the two projections of its kernel pair agree.
template <LexCategory C>
bool is_mono(const C& c, const Mor<C>& f) {
  const auto k = c.pullback(f, f);
  return c.equal(k.left, k.right);
}

/// Kan and with (d0, d1) monic.
template <LexCategory C>
bool is_equivalence_groupoid(const C& c, const TruncatedSimplicial<C>& a) {
  return is_mono(c, anchor(c, a).map);
}

}  // namespace lexcat
