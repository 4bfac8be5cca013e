#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "lexcat/core.hpp"

namespace lexcat {

/// A finite poset viewed as a thin category.  Pullbacks are meets and the
/// terminal object is the top element; both are required to exist when asked.
class FinPoset {
 public:
  static constexpr bool strict = true;

  struct Object {
    std::uint32_t element = 0;
    auto operator<=>(const Object&) const = default;
  };
  struct Morphism {
    std::uint32_t src = 0;
    std::uint32_t tgt = 0;
    auto operator<=>(const Morphism&) const = default;
  };

  /// Builds the order as the reflexive-transitive closure of a Hasse relation.
  FinPoset(std::vector<std::string> labels, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& covers)
      : labels_(std::move(labels)), leq_(labels_.size(), std::vector<bool>(labels_.size(), false)) {
    const auto n = labels_.size();
    for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
    for (auto [a, b] : covers) {
      if (a >= n || b >= n) throw Error(ErrorCode::malformed, "finposet: Hasse pair out of range");
      leq_[a][b] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (leq_[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (leq_[k][j]) leq_[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && leq_[i][j] && leq_[j][i]) throw Error(ErrorCode::malformed, "finposet: Hasse relation has a cycle");
  }

  /// The chain 0 < 1 < ... < n-1.
  static FinPoset chain(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> covers;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(std::to_string(i));
      if (i) covers.emplace_back(static_cast<std::uint32_t>(i - 1), static_cast<std::uint32_t>(i));
    }
    return FinPoset(std::move(labels), covers);
  }

  [[nodiscard]] std::string name() const { return "finposet"; }
  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] bool leq(std::uint32_t a, std::uint32_t b) const { return leq_[a][b]; }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }

  [[nodiscard]] std::vector<Object> objects() const {
    std::vector<Object> out;
    for (std::uint32_t i = 0; i < labels_.size(); ++i) out.push_back({i});
    return out;
  }

  [[nodiscard]] Object src(const Morphism& f) const { return {f.src}; }
  [[nodiscard]] Object tgt(const Morphism& f) const { return {f.tgt}; }
  [[nodiscard]] Morphism identity(const Object& x) const { return {x.element, x.element}; }
  [[nodiscard]] Morphism compose(const Morphism& g, const Morphism& f) const {
    if (f.tgt != g.src) throw Error(ErrorCode::precondition, "finposet: composing non-composable arrows");
    return {f.src, g.tgt};
  }
  [[nodiscard]] bool equal(const Morphism& f, const Morphism& g) const { return f == g; }

  [[nodiscard]] std::vector<Morphism> hom(const Object& x, const Object& y) const {
    if (leq_[x.element][y.element]) return {Morphism{x.element, y.element}};
    return {};
  }

  bool for_each_lift(const Morphism& u, const Morphism& m, const MorphismVisitor<FinPoset>& visit) const {
    if (!leq_[u.src][m.src]) return true;
    return visit(Morphism{u.src, m.src});
  }

  /// Top element, or E_NO_TERMINAL listing the maximal elements as near-misses.
  [[nodiscard]] Object terminal() const {
    for (std::uint32_t t = 0; t < labels_.size(); ++t) {
      bool top = true;
      for (std::uint32_t x = 0; x < labels_.size() && top; ++x) top = leq_[x][t];
      if (top) return {t};
    }
    std::vector<std::string> near;
    for (std::uint32_t t = 0; t < labels_.size(); ++t) {
      bool maximal = true;
      for (std::uint32_t x = 0; x < labels_.size(); ++x)
        if (x != t && leq_[t][x]) maximal = false;
      if (maximal) near.push_back(labels_[t]);
    }
    throw Error(ErrorCode::no_terminal, "finposet has no top; maximal elements: " + join(near, ","));
  }
  [[nodiscard]] Morphism to_terminal(const Object& x) const { return {x.element, terminal().element}; }

  [[nodiscard]] std::optional<std::uint32_t> meet(std::uint32_t a, std::uint32_t b) const {
    for (std::uint32_t m = 0; m < labels_.size(); ++m) {
      if (!leq_[m][a] || !leq_[m][b]) continue;
      bool greatest = true;
      for (std::uint32_t x = 0; x < labels_.size() && greatest; ++x)
        if (leq_[x][a] && leq_[x][b] && !leq_[x][m]) greatest = false;
      if (greatest) return m;
    }
    return std::nullopt;
  }

  [[nodiscard]] Pullback<FinPoset> pullback(const Morphism& f, const Morphism& g) const {
    if (f.tgt != g.tgt) throw Error(ErrorCode::precondition, "finposet: pullback of a non-cospan");
    auto m = meet(f.src, g.src);
    if (!m) throw Error(ErrorCode::no_pullback, "finposet: no meet of " + labels_[f.src] + " and " + labels_[g.src]);
    return {Object{*m}, Morphism{*m, f.src}, Morphism{*m, g.src}, f, g};
  }
  [[nodiscard]] Morphism pullback_mediator(const Pullback<FinPoset>& pb, const Morphism& a, const Morphism& b) const {
    if (a.src != b.src || !leq_[a.src][pb.apex.element])
      throw Error(ErrorCode::cone_mismatch, "finposet: cone does not factor through the meet");
    return {a.src, pb.apex.element};
  }

  [[nodiscard]] std::string describe(const Object& x) const { return labels_[x.element]; }
  [[nodiscard]] std::string describe(const Morphism& f) const { return labels_[f.src] + "<=" + labels_[f.tgt]; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
};

}  // namespace lexcat
