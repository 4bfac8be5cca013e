#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "lexcat/groupoids/simplicial.hpp"
#include "lexcat/kernel/finset.hpp"

namespace lexcat::finset {

using Pair = std::pair<std::uint32_t, std::uint32_t>;

/// The relation `pairs` on {0..n-1} as a truncated simplicial set; A1 lists
/// the pairs in the given order (repeats allowed) and s picks the first loop.
inline TruncatedSimplicial<FinSet> relation(std::size_t n, const std::vector<Pair>& pairs) {
  std::vector<std::uint32_t> d0, d1, s(n, ~0u);
  for (std::uint32_t k = 0; k < pairs.size(); ++k) {
    d0.push_back(pairs[k].first);
    d1.push_back(pairs[k].second);
    if (pairs[k].first == pairs[k].second && s[pairs[k].first] == ~0u) s[pairs[k].first] = k;
  }
  if (std::find(s.begin(), s.end(), ~0u) != s.end())
    throw Error(ErrorCode::precondition, "relation is not reflexive; no degeneracy");
  return {FinSet::set(n), FinSet::set(pairs.size()), FinSet::function(n, d0), FinSet::function(n, d1),
          FinSet::function(pairs.size(), s)};
}

inline std::vector<Pair> pairs_of(const TruncatedSimplicial<FinSet>& a) {
  std::vector<Pair> out;
  for (std::size_t k = 0; k < a.a1.size; ++k) out.emplace_back(a.d0(k), a.d1(k));
  return out;
}

/// The equivalence relation with the given block labels, pairs in lexicographic order.
inline TruncatedSimplicial<FinSet> partition(const std::vector<std::uint32_t>& block_of) {
  std::vector<Pair> pairs;
  for (std::uint32_t x = 0; x < block_of.size(); ++x)
    for (std::uint32_t y = 0; y < block_of.size(); ++y)
      if (block_of[x] == block_of[y]) pairs.emplace_back(x, y);
  return relation(block_of.size(), pairs);
}

inline TruncatedSimplicial<FinSet> diagonal(std::size_t n) { return partition([&] {
  std::vector<std::uint32_t> b(n);
  for (std::uint32_t i = 0; i < n; ++i) b[i] = i;
  return b;
}()); }

inline TruncatedSimplicial<FinSet> full(std::size_t n) { return partition(std::vector<std::uint32_t>(n, 0)); }

/// Restricted growth strings: every partition of {0..n-1} exactly once.
inline std::vector<std::vector<std::uint32_t>> all_partitions(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t next_label) -> void {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t b = 0; b <= next_label; ++b) {
      cur.push_back(b);
      self(self, b == next_label ? next_label + 1 : next_label);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// All equivalence relations on sets of size ≤ n.
inline std::vector<TruncatedSimplicial<FinSet>> equivalence_relations_up_to(std::size_t n) {
  std::vector<TruncatedSimplicial<FinSet>> out;
  for (std::size_t k = 0; k <= n; ++k)
    for (const auto& p : all_partitions(k)) out.push_back(partition(p));
  return out;
}

}  // namespace lexcat::finset
