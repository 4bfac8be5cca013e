#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <string>
#include <vector>

#include "lexcat/core.hpp"

namespace lexcat {

/// The skeleton of finite sets: the object of size n has elements 0..n-1.
class FinSet {
 public:
  static constexpr bool strict = true;

  struct Object {
    std::size_t size = 0;
    auto operator<=>(const Object&) const = default;
  };

  struct Morphism {
    std::size_t src = 0;
    std::size_t tgt = 0;
    std::vector<std::uint32_t> table;
    auto operator<=>(const Morphism&) const = default;
    std::uint32_t operator()(std::size_t x) const { return table[x]; }
  };

  static Object set(std::size_t n) { return Object{n}; }
  static Morphism function(std::size_t tgt, std::vector<std::uint32_t> table) {
    for (auto y : table)
      if (y >= tgt) throw Error(ErrorCode::malformed, "function value out of range");
    return Morphism{table.size(), tgt, std::move(table)};
  }

  [[nodiscard]] std::string name() const { return "finset"; }

  [[nodiscard]] Object src(const Morphism& f) const { return {f.src}; }
  [[nodiscard]] Object tgt(const Morphism& f) const { return {f.tgt}; }

  [[nodiscard]] Morphism identity(const Object& x) const {
    Morphism id{x.size, x.size, std::vector<std::uint32_t>(x.size)};
    std::iota(id.table.begin(), id.table.end(), 0u);
    return id;
  }

  [[nodiscard]] Morphism compose(const Morphism& g, const Morphism& f) const {
    if (f.tgt != g.src) throw Error(ErrorCode::precondition, "finset: composing non-composable maps");
    Morphism h{f.src, g.tgt, std::vector<std::uint32_t>(f.src)};
    for (std::size_t x = 0; x < f.src; ++x) h.table[x] = g.table[f.table[x]];
    return h;
  }

  [[nodiscard]] bool equal(const Morphism& f, const Morphism& g) const { return f == g; }

  bool for_each_hom(const Object& x, const Object& y, const MorphismVisitor<FinSet>& visit) const {
    Odometer odo(std::vector<std::size_t>(x.size, y.size));
    Morphism f{x.size, y.size, std::vector<std::uint32_t>(x.size)};
    for (; !odo.done(); odo.next()) {
      for (std::size_t i = 0; i < x.size; ++i) f.table[i] = static_cast<std::uint32_t>(odo.digits()[i]);
      if (!visit(f)) return false;
    }
    return true;
  }

  [[nodiscard]] std::vector<Morphism> hom(const Object& x, const Object& y) const {
    double count = 1;
    for (std::size_t i = 0; i < x.size; ++i) count *= static_cast<double>(y.size);
    if (count > static_cast<double>(enumeration_cap()))
      throw Error(ErrorCode::cap_exceeded, "finset hom(" + std::to_string(x.size) + "," + std::to_string(y.size) + ")");
    std::vector<Morphism> out;
    for_each_hom(x, y, [&](const Morphism& f) {
      out.push_back(f);
      return true;
    });
    return out;
  }

  // h with m∘h = u: pointwise choice in the fibres of m.
  bool for_each_lift(const Morphism& u, const Morphism& m, const MorphismVisitor<FinSet>& visit) const {
    if (u.tgt != m.tgt) throw Error(ErrorCode::precondition, "finset: lift across different targets");
    std::vector<std::vector<std::uint32_t>> fibre(m.tgt);
    for (std::uint32_t y = 0; y < m.src; ++y) fibre[m.table[y]].push_back(y);
    std::vector<std::size_t> radices(u.src);
    for (std::size_t x = 0; x < u.src; ++x) radices[x] = fibre[u.table[x]].size();
    Odometer odo(radices);
    Morphism h{u.src, m.src, std::vector<std::uint32_t>(u.src)};
    for (; !odo.done(); odo.next()) {
      for (std::size_t x = 0; x < u.src; ++x) h.table[x] = fibre[u.table[x]][odo.digits()[x]];
      if (!visit(h)) return false;
    }
    return true;
  }

  [[nodiscard]] Object terminal() const { return {1}; }
  [[nodiscard]] Morphism to_terminal(const Object& x) const {
    return Morphism{x.size, 1, std::vector<std::uint32_t>(x.size, 0)};
  }

  // Apex enumerates {(x, y) : f(x) = g(y)} in lexicographic order.
  [[nodiscard]] Pullback<FinSet> pullback(const Morphism& f, const Morphism& g) const {
    if (f.tgt != g.tgt) throw Error(ErrorCode::precondition, "finset: pullback of a non-cospan");
    Morphism left{0, f.src, {}}, right{0, g.src, {}};
    std::vector<std::vector<std::uint32_t>> over(f.tgt);
    for (std::uint32_t y = 0; y < g.src; ++y) over[g.table[y]].push_back(y);
    for (std::uint32_t x = 0; x < f.src; ++x)
      for (auto y : over[f.table[x]]) {
        left.table.push_back(x);
        right.table.push_back(y);
      }
    left.src = right.src = left.table.size();
    return {Object{left.src}, std::move(left), std::move(right), f, g};
  }

  [[nodiscard]] Morphism pullback_mediator(const Pullback<FinSet>& pb, const Morphism& a, const Morphism& b) const {
    if (a.src != b.src) throw Error(ErrorCode::cone_mismatch, "finset: cone legs with different sources");
    Morphism m{a.src, pb.apex.size, std::vector<std::uint32_t>(a.src)};
    // apex pairs are in lexicographic order
    for (std::size_t p = 0; p < a.src; ++p) {
      std::uint32_t lo = 0, hi = static_cast<std::uint32_t>(pb.apex.size);
      const auto key = std::make_pair(a.table[p], b.table[p]);
      while (lo < hi) {
        auto mid = (lo + hi) / 2;
        if (std::make_pair(pb.left.table[mid], pb.right.table[mid]) < key)
          lo = mid + 1;
        else
          hi = mid;
      }
      if (lo == pb.apex.size || pb.left.table[lo] != key.first || pb.right.table[lo] != key.second)
        throw Error(ErrorCode::cone_mismatch, "finset: cone does not commute");
      m.table[p] = lo;
    }
    return m;
  }

  [[nodiscard]] Object initial() const { return {0}; }
  [[nodiscard]] Morphism from_initial(const Object& x) const { return Morphism{0, x.size, {}}; }

  [[nodiscard]] Coproduct<FinSet> coproduct(const std::vector<Object>& xs) const {
    std::size_t total = 0;
    for (const auto& x : xs) total += x.size;
    Coproduct<FinSet> out{Object{total}, {}};
    std::uint32_t offset = 0;
    for (const auto& x : xs) {
      Morphism inj{x.size, total, std::vector<std::uint32_t>(x.size)};
      std::iota(inj.table.begin(), inj.table.end(), offset);
      offset += static_cast<std::uint32_t>(x.size);
      out.injections.push_back(std::move(inj));
    }
    return out;
  }

  [[nodiscard]] Morphism copair(const Coproduct<FinSet>& cp, const std::vector<Morphism>& fs) const {
    if (fs.size() != cp.injections.size()) throw Error(ErrorCode::cone_mismatch, "finset: copair arity");
    std::size_t tgt = fs.empty() ? 0 : fs.front().tgt;
    Morphism out{cp.object.size, tgt, {}};
    for (const auto& f : fs) {
      if (f.tgt != tgt) throw Error(ErrorCode::cone_mismatch, "finset: copair targets differ");
      out.table.insert(out.table.end(), f.table.begin(), f.table.end());
    }
    return out;
  }

  // Blocks of the generated partition, ordered by least element.
  [[nodiscard]] Quotient<FinSet> quotient(const Morphism& d0, const Morphism& d1, const Morphism&) const {
    if (d0.src != d1.src || d0.tgt != d1.tgt) throw Error(ErrorCode::precondition, "finset: quotient of a non-parallel pair");
    std::vector<std::uint32_t> parent(d0.tgt);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t r = 0; r < d0.src; ++r) {
      auto a = find(d0.table[r]), b = find(d1.table[r]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    Morphism proj{d0.tgt, 0, std::vector<std::uint32_t>(d0.tgt)};
    std::vector<std::uint32_t> block(d0.tgt, ~0u);
    std::uint32_t blocks = 0;
    for (std::uint32_t x = 0; x < d0.tgt; ++x) {
      auto root = find(x);
      if (block[root] == ~0u) block[root] = blocks++;
      proj.table[x] = block[root];
    }
    proj.tgt = blocks;
    return {Object{blocks}, std::move(proj)};
  }

  [[nodiscard]] Morphism quotient_mediator(const Quotient<FinSet>& q, const Morphism& f) const {
    if (f.src != q.projection.src) throw Error(ErrorCode::cone_mismatch, "finset: mediator source mismatch");
    Morphism out{q.object.size, f.tgt, std::vector<std::uint32_t>(q.object.size, ~0u)};
    for (std::size_t x = 0; x < f.src; ++x) {
      auto& slot = out.table[q.projection.table[x]];
      if (slot == ~0u)
        slot = f.table[x];
      else if (slot != f.table[x])
        throw Error(ErrorCode::cone_mismatch, "finset: map does not coequalize the pair");
    }
    return out;
  }

  [[nodiscard]] std::string describe(const Object& x) const { return "#" + std::to_string(x.size); }
  [[nodiscard]] std::string describe(const Morphism& f) const {
    std::string out = "[";
    for (std::size_t i = 0; i < f.table.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(f.table[i]);
    }
    return out + "]:" + std::to_string(f.src) + "->" + std::to_string(f.tgt);
  }

  /// Probe family: all sets of size at most `max_size`.
  [[nodiscard]] std::vector<Object> objects_up_to(std::size_t max_size) const {
    std::vector<Object> out;
    for (std::size_t n = 0; n <= max_size; ++n) out.push_back({n});
    return out;
  }
};

}  // namespace lexcat
