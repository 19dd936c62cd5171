#pragma once

// Fixtures and independent oracles shared by the unit and acceptance tests.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ophc/ophc.hpp"

namespace fixtures {

using namespace ophc;

// Tree drawn with leaves 1..5: ({1,5}, (3, (2,4))). Element k has index k - 1.
inline OrientedBinaryTree example_tree() { return parse_tree("((0 4) (2 (1 3)))", 5); }

inline std::vector<std::string> state_labels() { return {"Az", "Ca", "Id", "Nv", "Or", "Ut", "Wa"}; }

// Net migration shares, from row to column.
inline OrderedSimilaritySpace migration_space() {
  const double m[7][7] = {{0, .064, .006, .018, .014, .012, .022}, {.089, 0, .016, .072, .061, .033, .069},
                          {.004, .009, 0, .007, .011, .014, .020}, {.016, .065, .006, 0, .013, .008, .009},
                          {.008, .033, .013, .003, 0, .004, .052}, {.019, .016, .011, .006, .006, 0, .009},
                          {.025, .065, .016, .008, .039, .009, 0}};
  SquareMatrix<double> w(7, 0.0);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) w(i, j) = m[i][j];
  return OrderedSimilaritySpace(Similarity(7, 0.0), RelaxedOrder(std::move(w)), state_labels());
}

// Name dissimilarities in the family example (upper triangle, row by row),
// with omega(x, y) = 1 when x descends from y.
inline OrderedSimilaritySpace family_space() {
  const double upper[] = {.29, .31, .53, .53, .50, .63, .40, .50, .59, .62, .73,
                          .61, .53, .65, .70, .44, .50, .47, .65, .56, .28};
  SquareMatrix<double> s(7, 0.0), w(7, 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i + 1; j < 7; ++j) s(i, j) = s(j, i) = 1.0 - upper[k++];
  for (std::size_t j = 1; j < 7; ++j) w(0, j) = 1.0;
  w(1, 3) = w(1, 4) = 1.0;
  w(2, 5) = w(2, 6) = 1.0;
  return OrderedSimilaritySpace(Similarity(std::move(s)), RelaxedOrder(std::move(w)),
                                {"JFK", "Joseph", "Rose", "Patrick", "MaryA", "JohnF", "MaryJ"});
}

inline CrispRelation family_ancestry() {
  return CrispRelation::from_pairs(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
}

// Multiples of 1/256, so that sums of such values with small integer
// coefficients are exact in double precision.
inline double dyadic(SplitMix64& rng) { return static_cast<double>(rng.below(257)) / 256.0; }

inline OrderedSimilaritySpace random_space(std::size_t n, SplitMix64& rng, bool exact = true) {
  SquareMatrix<double> s(n, 0.0), w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (i < j) s(i, j) = s(j, i) = exact ? dyadic(rng) : rng.uniform();
      w(i, j) = exact ? dyadic(rng) : rng.uniform();
    }
  return OrderedSimilaritySpace(Similarity(std::move(s)), RelaxedOrder(std::move(w)));
}

// Random bracketing of the given leaf sequence, so the leaf order is kept.
inline OrientedBinaryTree random_tree_over(const std::vector<ElementId>& seq, std::size_t universe, SplitMix64& rng) {
  std::function<OrientedBinaryTree(std::size_t, std::size_t)> build = [&](std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return OrientedBinaryTree::leaf(universe, seq[lo]);
    const std::size_t cut = lo + 1 + rng.below(hi - lo - 1);
    return OrientedBinaryTree::join(build(lo, cut), build(cut, hi));
  };
  return build(0, seq.size());
}

inline OrientedBinaryTree random_tree(std::size_t n, SplitMix64& rng) {
  std::vector<ElementId> seq(n);
  std::iota(seq.begin(), seq.end(), ElementId{0});
  shuffle_in_place(seq, rng);
  return random_tree_over(seq, n, rng);
}

// Random strict partial order: a hidden linear order plus independent edges, closed.
inline CrispRelation random_partial_order(std::size_t n, double density, SplitMix64& rng) {
  std::vector<ElementId> ext(n);
  std::iota(ext.begin(), ext.end(), ElementId{0});
  shuffle_in_place(ext, rng);
  CrispRelation r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform() < density) r.add(ext[i], ext[j]);
  return transitive_closure(r);
}

// Linear extension by repeatedly taking a random minimal element.
inline std::vector<ElementId> random_linear_extension(const CrispRelation& r, SplitMix64& rng) {
  const std::size_t n = r.size();
  std::vector<std::size_t> indeg(n, 0);
  for (auto [x, y] : r.edges()) ++indeg[y];
  std::vector<ElementId> ready, out;
  for (ElementId x = 0; x < n; ++x)
    if (indeg[x] == 0) ready.push_back(x);
  while (!ready.empty()) {
    auto k = rng.below(ready.size());
    auto x = ready[k];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(k));
    out.push_back(x);
    for (auto y : r.successors(x))
      if (--indeg[y] == 0) ready.push_back(y);
  }
  return out;
}

inline OrderedSimilaritySpace indicator_space(const CrispRelation& r, double similarity = 0.0) {
  const std::size_t n = r.size();
  SquareMatrix<double> w(n, 0.0);
  for (auto [x, y] : r.edges()) w(x, y) = 1.0;
  return OrderedSimilaritySpace(Similarity(n, similarity), RelaxedOrder(std::move(w)));
}

// Every oriented binary tree whose leaves are the bits of `mask`.
inline std::vector<OrientedBinaryTree> all_trees(std::uint32_t mask, std::size_t universe) {
  std::map<std::uint32_t, std::vector<OrientedBinaryTree>> memo;
  std::function<const std::vector<OrientedBinaryTree>&(std::uint32_t)> rec =
      [&](std::uint32_t s) -> const std::vector<OrientedBinaryTree>& {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    std::vector<OrientedBinaryTree> out;
    if ((s & (s - 1)) == 0) {
      out.push_back(OrientedBinaryTree::leaf(universe, static_cast<ElementId>(std::countr_zero(s))));
    } else {
      for (std::uint32_t a = (s - 1) & s; a; a = (a - 1) & s) {
        const auto& left = rec(a);
        const auto& right = rec(s & ~a);
        for (const auto& l : left)
          for (const auto& r : right) out.push_back(OrientedBinaryTree::join(l, r));
      }
    }
    return memo.emplace(s, std::move(out)).first->second;
  };
  return rec(mask);
}

inline std::vector<OrientedBinaryTree> all_trees(std::size_t n) {
  return all_trees(static_cast<std::uint32_t>((1U << n) - 1), n);
}

// Value by the pair form, straight from the definition: pairs ordered by the
// leaf sequence, each weighted by its join size.
inline long double pair_form_value(const SquareMatrix<double>& w, const OrientedBinaryTree& t) {
  auto order = leaf_order(t);
  long double total = 0.0L;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      total += static_cast<long double>(join_size(t, order[i], order[j])) * w(order[i], order[j]);
  return total;
}

// Minimum density over all ordered splits by direct double loops.
inline double naive_min_density(const SquareMatrix<double>& w, const ElementSet& elements) {
  auto members = elements.elements();
  const std::size_t m = members.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
    long double cross = 0.0L;
    std::size_t na = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1U)) continue;
      ++na;
      for (std::size_t j = 0; j < m; ++j)
        if (!(mask >> j & 1U)) cross += w(members[i], members[j]);
    }
    best = std::min(best, static_cast<double>(cross / (static_cast<long double>(na) * (m - na))));
  }
  return best;
}

inline std::vector<std::vector<ElementId>> sorted_blocks(const Clustering& c) {
  auto b = c.blocks();
  for (auto& blk : b) std::sort(blk.begin(), blk.end());
  std::sort(b.begin(), b.end());
  return b;
}

}  // namespace fixtures
