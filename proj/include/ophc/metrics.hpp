#pragma once

// Comparing a tree or flat clustering with a planted truth.

#include <cmath>
#include <map>

#include "ophc/poset.hpp"
#include "ophc/tree.hpp"

namespace ophc {

/// Hubert-Arabie adjusted Rand index. When the expected and maximal index
/// coincide (e.g. both partitions trivial) the result is 1 for identical
/// partitions and 0 otherwise.
inline double adjusted_rand(const Clustering& a, const Clustering& b) {
  if (a.size() != b.size()) throw domain_error("adjusted_rand: clusterings have different sizes");
  const std::size_t n = a.size();
  auto c2 = [](double k) { return k * (k - 1.0) / 2.0; };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> table;
  for (ElementId x = 0; x < n; ++x) ++table[{a.block_of(x), b.block_of(x)}];
  double index = 0.0;
  for (const auto& [key, count] : table) index += c2(static_cast<double>(count));
  double sum_a = 0.0, sum_b = 0.0;
  for (const auto& blk : a.blocks()) sum_a += c2(static_cast<double>(blk.size()));
  for (const auto& blk : b.blocks()) sum_b += c2(static_cast<double>(blk.size()));
  const double total = c2(static_cast<double>(n));
  const double expected = total > 0.0 ? sum_a * sum_b / total : 0.0;
  const double max_index = (sum_a + sum_b) / 2.0;
  const double denom = max_index - expected;
  if (std::fabs(denom) < 1e-15) return a.same_partition(b) ? 1.0 : 0.0;
  return (index - expected) / denom;
}

enum class PairClass : std::uint8_t { SameBlock, Precedes, Follows, Cyclic, Incomparable };

/// Class of every ordered pair (x, y) under the clustering's induced relation.
inline SquareMatrix<PairClass> pair_classes(const CrispRelation& r, const Clustering& c) {
  const std::size_t n = c.size();
  auto induced = induced_relation(r, c);
  SquareMatrix<PairClass> out(n, PairClass::SameBlock);
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y) {
      const auto bx = c.block_of(x), by = c.block_of(y);
      if (bx == by) continue;
      const bool fwd = induced.blocks.contains(bx, by), back = induced.blocks.contains(by, bx);
      out(x, y) = fwd && back ? PairClass::Cyclic
                  : fwd       ? PairClass::Precedes
                  : back      ? PairClass::Follows
                              : PairClass::Incomparable;
    }
  return out;
}

/// Fraction of ordered pairs x != y classified alike (same block, x's block
/// first, y's block first, both, neither) under the truth and the candidate,
/// each using the relation it induces from the truth order.
inline double order_agreement(const Clustering& truth, const CrispRelation& order, const Clustering& candidate) {
  const std::size_t n = truth.size();
  if (candidate.size() != n || order.size() != n) throw domain_error("order_agreement: size mismatch");
  if (n < 2) return 1.0;
  auto t = pair_classes(order, truth);
  auto c = pair_classes(order, candidate);
  std::size_t agree = 0;
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y)
      if (x != y && t(x, y) == c(x, y)) ++agree;
  return static_cast<double>(agree) / static_cast<double>(n * (n - 1));
}

/// Strongly connected components (Kosaraju); returns the component of each vertex.
inline std::vector<std::size_t> strongly_connected_components(const CrispRelation& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> out(n), in(n);
  for (auto [x, y] : g.edges()) {
    out[x].push_back(y);
    in[y].push_back(x);
  }
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> finish;
  finish.reserve(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    seen[root] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < out[v].size()) {
        auto u = out[v][i++];
        if (!seen[u]) {
          seen[u] = 1;
          stack.emplace_back(u, 0);
        }
      } else {
        finish.push_back(v);
        stack.pop_back();
      }
    }
  }
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n, kUnset);
  std::size_t next = 0;
  for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
    if (comp[*it] != kUnset) continue;
    std::vector<std::size_t> stack{*it};
    comp[*it] = next;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto u : in[v])
        if (comp[u] == kUnset) {
          comp[u] = next;
          stack.push_back(u);
        }
    }
    ++next;
  }
  return comp;
}

/// 1 minus the fraction of elements whose block lies on a cycle of the block graph.
inline double loops_measure(const CrispRelation& r, const Clustering& c) {
  const std::size_t n = c.size();
  if (n == 0) return 1.0;
  auto blocks = block_relation(r, c);
  auto comp = strongly_connected_components(blocks);
  std::vector<std::size_t> comp_size(c.num_blocks(), 0);
  for (auto k : comp) ++comp_size[k];
  std::size_t looped = 0;
  for (std::size_t b = 0; b < c.num_blocks(); ++b)
    if (comp_size[comp[b]] >= 2) looped += c.blocks()[b].size();
  return 1.0 - static_cast<double>(looped) / static_cast<double>(n);
}

struct QualityReport {
  double ari = 0.0;
  double order_agreement = 0.0;
  double loops = 1.0;
  double delta_good = 0.0;  // 0 when the truth order has no comparable pairs
  double chosen_t = 0.0;
};

struct FlatChoice {
  Clustering clustering;
  double threshold = 0.0;
  QualityReport report;
};

/// Flat level of T with the highest ARI against the truth (lowest t on
/// ties), with all quality measures computed at that level.
inline FlatChoice best_flat_by_ari(const OrientedBinaryTree& t, const Clustering& truth, const CrispRelation& order) {
  if (truth.size() != t.universe() || order.size() != t.universe())
    throw domain_error("best_flat_by_ari: truth and tree sizes differ");
  auto levels = flat_levels(t);
  std::size_t best = 0;
  double best_ari = -2.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    double ari = adjusted_rand(levels[i].clustering, truth);
    if (ari > best_ari + 1e-12) {
      best_ari = ari;
      best = i;
    }
  }
  FlatChoice out{levels[best].clustering, levels[best].threshold, {}};
  out.report.ari = best_ari;
  out.report.order_agreement = order_agreement(truth, order, out.clustering);
  out.report.loops = loops_measure(order, out.clustering);
  out.report.delta_good = transitive_closure(order).edge_count() == 0 ? 0.0 : delta_goodness(t, order);
  out.report.chosen_t = out.threshold;
  return out;
}

}  // namespace ophc
