#include <gtest/gtest.h>

#include "support.hpp"

using namespace ophc;

namespace {

// Rand-type pair counts by direct enumeration of element pairs.
double ari_by_pair_counting(const Clustering& a, const Clustering& b) {
  const std::size_t n = a.size();
  double both = 0, only_a = 0, only_b = 0, neither = 0;
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = x + 1; y < n; ++y) {
      const bool sa = a.block_of(x) == a.block_of(y), sb = b.block_of(x) == b.block_of(y);
      if (sa && sb) ++both;
      else if (sa) ++only_a;
      else if (sb) ++only_b;
      else ++neither;
    }
  const double total = both + only_a + only_b + neither;
  const double expected = (both + only_a) * (both + only_b) / total;
  const double max_index = ((both + only_a) + (both + only_b)) / 2.0;
  return (both - expected) / (max_index - expected);
}

Clustering random_clustering(std::size_t n, SplitMix64& rng) {
  std::vector<std::size_t> labels(n);
  const std::size_t k = 1 + rng.below(n);
  for (auto& l : labels) l = rng.below(k);
  return Clustering::from_labels(labels);
}

}  // namespace

TEST(AdjustedRand, Identical) {
  auto c = Clustering::from_blocks(5, {{0, 3}, {1, 2, 4}});
  EXPECT_EQ(adjusted_rand(c, c), 1.0);
}

TEST(AdjustedRand, SingletonsAgainstOneBlock) {
  EXPECT_EQ(adjusted_rand(Clustering::singletons(4), Clustering::one_block(4)), 0.0);
}

TEST(AdjustedRand, CrossedPairs) {
  auto a = Clustering::from_blocks(4, {{0, 1}, {2, 3}});
  auto b = Clustering::from_blocks(4, {{0, 2}, {1, 3}});
  EXPECT_DOUBLE_EQ(ari_by_pair_counting(a, b), -0.5);
  EXPECT_DOUBLE_EQ(adjusted_rand(a, b), -0.5);
}

TEST(AdjustedRand, MatchesPairCountingAndIsSymmetric) {
  SplitMix64 rng(61);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 3 + rng.below(15);
    auto a = random_clustering(n, rng), b = random_clustering(n, rng);
    EXPECT_DOUBLE_EQ(adjusted_rand(a, b), adjusted_rand(b, a));
    const bool degenerate = (a.num_blocks() == 1 || a.num_blocks() == n) && (b.num_blocks() == 1 || b.num_blocks() == n);
    if (!degenerate) {
      EXPECT_NEAR(adjusted_rand(a, b), ari_by_pair_counting(a, b), 1e-12);
    }
    EXPECT_EQ(adjusted_rand(a, b) == 1.0, a.same_partition(b));
  }
}

TEST(AdjustedRand, SizeMismatch) {
  EXPECT_THROW(adjusted_rand(Clustering::singletons(3), Clustering::singletons(4)), ophc::domain_error);
}

TEST(OrderAgreement, Examples) {
  auto r = CrispRelation::from_pairs(2, {{0, 1}});
  EXPECT_EQ(order_agreement(Clustering::singletons(2), r, Clustering::singletons(2)), 1.0);
  EXPECT_EQ(order_agreement(Clustering::singletons(2), r, Clustering::one_block(2)), 0.0);
  auto c = Clustering::from_blocks(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(order_agreement(c, CrispRelation(4), c), 1.0);
}

TEST(OrderAgreement, SelfAgreementOnRandomInputs) {
  SplitMix64 rng(62);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 2 + rng.below(10);
    auto r = fixtures::random_partial_order(n, 0.3, rng);
    auto c = random_clustering(n, rng);
    EXPECT_EQ(order_agreement(c, r, c), 1.0);
    auto d = random_clustering(n, rng);
    const double v = order_agreement(c, r, d);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Loops, Examples) {
  auto r = CrispRelation::from_pairs(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(loops_measure(r, Clustering::from_blocks(4, {{0, 3}, {1, 2}})), 0.0);
  EXPECT_EQ(loops_measure(r, Clustering::from_blocks(4, {{0, 2}, {1, 3}})), 1.0);
  EXPECT_EQ(loops_measure(r, Clustering::singletons(4)), 1.0);
}

TEST(Loops, PartialCycle) {
  // Blocks {0,3} and {1,2} form a 2-cycle; block {4} stays outside it.
  auto r = CrispRelation::from_pairs(5, {{0, 1}, {2, 3}, {3, 4}});
  EXPECT_DOUBLE_EQ(loops_measure(r, Clustering::from_blocks(5, {{0, 3}, {1, 2}, {4}})), 1.0 / 5.0);
}

TEST(Loops, OneIffInducedRelationIsPartialOrder) {
  SplitMix64 rng(63);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng.below(10);
    auto r = fixtures::random_partial_order(n, 0.3, rng);
    auto c = random_clustering(n, rng);
    EXPECT_EQ(loops_measure(r, c) == 1.0, induced_relation(r, c).is_partial_order);
  }
}

TEST(Scc, AgreesWithMutualReachability) {
  SplitMix64 rng(64);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 1 + rng.below(10);
    CrispRelation g(n);
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = 0; y < n; ++y)
        if (x != y && rng.uniform() < 0.2) g.add(x, y);
    auto comp = strongly_connected_components(g);
    auto c = transitive_closure(g);
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = 0; y < n; ++y)
        if (x != y) { EXPECT_EQ(comp[x] == comp[y], c.contains(x, y) && c.contains(y, x)); }
  }
}

TEST(BestFlat, FindsTruthLevel) {
  auto t = fixtures::example_tree();
  auto truth = Clustering::from_blocks(5, {{0, 4}, {1, 2, 3}});
  auto choice = best_flat_by_ari(t, truth, CrispRelation(5));
  EXPECT_EQ(choice.report.ari, 1.0);
  EXPECT_EQ(choice.threshold, 2.0);
  EXPECT_EQ(choice.report.delta_good, 0.0);
}

TEST(BestFlat, SingletonTruthPicksBottomLevel) {
  auto choice = best_flat_by_ari(fixtures::example_tree(), Clustering::singletons(5), CrispRelation(5));
  EXPECT_EQ(choice.threshold, 0.0);
  EXPECT_EQ(choice.report.ari, 1.0);
}

TEST(BestFlat, CopyPasteChainRecovered) {
  CopyPasteSpec spec;
  spec.base_n = 2;
  spec.m = 1;
  spec.mu = 0.0;
  spec.sigma2 = 1e-12;
  spec.base_kind = BaseKind::Chain;
  spec.seed = 4;
  auto inst = copy_paste_partition(spec);
  auto t = exact_optimal_tree(inst.space, 0.5).tree;
  auto choice = best_flat_by_ari(t, inst.truth.clustering, inst.truth.order);
  EXPECT_EQ(choice.report.ari, 1.0);
  EXPECT_EQ(choice.report.loops, 1.0);
  EXPECT_EQ(choice.report.order_agreement, 1.0);
}

TEST(BestFlat, DeltaGoodZeroIffOrderPreserving) {
  SplitMix64 rng(65);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 3 + rng.below(7);
    auto r = fixtures::random_partial_order(n, 0.4, rng);
    if (r.edge_count() == 0) continue;
    auto t = rep % 2 ? fixtures::random_tree_over(fixtures::random_linear_extension(r, rng), n, rng)
                     : fixtures::random_tree(n, rng);
    auto choice = best_flat_by_ari(t, Clustering::singletons(n), r);
    EXPECT_EQ(choice.report.delta_good == 0.0, is_order_preserving(t, r).preserving);
  }
}
