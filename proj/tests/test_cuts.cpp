#include <gtest/gtest.h>

#include "support.hpp"

using namespace ophc;

namespace {

SquareMatrix<double> random_weights(std::size_t n, SplitMix64& rng) {
  SquareMatrix<double> w(n, 0.0);
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y)
      if (x != y) w(x, y) = fixtures::dyadic(rng);
  return w;
}

}  // namespace

TEST(Density, Examples) {
  SquareMatrix<double> w(2, 0.0);
  w(0, 1) = 0.4;
  EXPECT_NEAR(directed_cut_density(w, OrderedSplit(ElementSet::of(2, {0}), ElementSet::of(2, {1}))), 0.4, 1e-15);
  SquareMatrix<double> u(5, 0.75);
  EXPECT_EQ(directed_cut_density(u, OrderedSplit(ElementSet::of(5, {0, 3}), ElementSet::of(5, {1, 2, 4}))), 0.75);
  SquareMatrix<double> d(2, 0.0);
  d(0, 1) = 1.0;
  EXPECT_EQ(directed_cut_density(d, OrderedSplit(ElementSet::of(2, {1}), ElementSet::of(2, {0}))), 0.0);
  EXPECT_EQ(directed_cut_density(d, OrderedSplit(ElementSet::of(2, {0}), ElementSet::of(2, {1}))), 1.0);
  EXPECT_THROW(OrderedSplit(ElementSet(2), ElementSet::of(2, {0})), ophc::domain_error);
}

TEST(ExactCut, TwoElementsPickLowerOrientation) {
  SquareMatrix<double> w(2, 0.0);
  w(0, 1) = 0.7;
  w(1, 0) = 0.2;
  auto c = exact_directed_sparsest_cut(w, ElementSet::all(2));
  EXPECT_EQ(c.split.a, ElementSet::of(2, {1}));
  EXPECT_NEAR(c.density, 0.2, 1e-15);
  EXPECT_EQ(c.evaluations, 2u);
}

TEST(ExactCut, PlantedOrderHasZeroDensitySplit) {
  PlantedBipartiteSpec spec;
  spec.n = 6;
  spec.p = 1.0;
  spec.q = 0.0;
  spec.seed = 3;
  auto inst = planted_bipartite(spec);
  auto w = pair_weights(inst.space, ObjectiveKind::cost_alpha_dual(0.0));  // 1 - g
  auto c = exact_directed_sparsest_cut(w, ElementSet::all(6));
  EXPECT_EQ(c.split, *inst.truth.blocks);
  EXPECT_EQ(c.density, 0.0);
}

TEST(ExactCut, MatchesNaiveEnumeration) {
  SplitMix64 rng(41);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 2 + rng.below(11);
    auto w = random_weights(n, rng);
    auto c = exact_directed_sparsest_cut(w, ElementSet::all(n));
    EXPECT_EQ(c.density, fixtures::naive_min_density(w, ElementSet::all(n)));
    EXPECT_EQ(c.density, directed_cut_density(w, c.split));
  }
}

TEST(ExactCut, WorksOnSubsets) {
  SplitMix64 rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    auto w = random_weights(12, rng);
    ElementSet s(12);
    for (ElementId x = 0; x < 12; ++x)
      if (rng.uniform() < 0.6) s.insert(x);
    if (s.size() < 2) continue;
    auto c = exact_directed_sparsest_cut(w, s);
    EXPECT_EQ(c.split.a | c.split.b, s);
    EXPECT_EQ(c.density, fixtures::naive_min_density(w, s));
  }
}

TEST(ExactCut, TieGoesToSmallestMask) {
  SquareMatrix<double> w(4, 0.5);
  auto c = exact_directed_sparsest_cut(w, ElementSet::all(4));
  EXPECT_EQ(c.split.a, ElementSet::of(4, {0}));
}

TEST(ExactCut, CapacityLimit) {
  SquareMatrix<double> w(10, 0.5);
  EXPECT_THROW(exact_directed_sparsest_cut(w, ElementSet::all(10), 8), ophc::capacity_error);
  EXPECT_THROW(exact_directed_sparsest_cut(w, ElementSet::of(10, {3})), ophc::domain_error);
}

TEST(Densest, ComplementsSparsestUnderDual) {
  SplitMix64 rng(43);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 6;
    auto sp = fixtures::random_space(n, rng);
    auto f = pair_weights(sp, ObjectiveKind::val_f());
    auto fd = pair_weights(sp, ObjectiveKind::cost_fd());
    double best_f = -1e9, best_fd = 1e9;
    std::uint32_t arg_f = 0, arg_fd = 0;
    for (std::uint32_t m = 1; m + 1 < (1U << n); ++m) {
      OrderedSplit s(ElementSet::from_mask(n, m), ElementSet::from_mask(n, ~m));
      const double df = densest_cut_density(f, s), dfd = directed_cut_density(fd, s);
      EXPECT_DOUBLE_EQ(df + dfd, 2.0);
      if (df > best_f) best_f = df, arg_f = m;
      if (dfd < best_fd) best_fd = dfd, arg_fd = m;
    }
    EXPECT_EQ(arg_f, arg_fd);
    auto c = exact_directed_sparsest_cut(fd, ElementSet::all(n));
    EXPECT_EQ(c.split.a, ElementSet::from_mask(n, arg_fd));
  }
  SquareMatrix<double> zero(3, 0.0), two(3, 2.0);
  OrderedSplit s(ElementSet::of(3, {0}), ElementSet::of(3, {1, 2}));
  EXPECT_EQ(densest_cut_density(zero, s), 0.0);
  EXPECT_EQ(directed_cut_density(two, s), 2.0);
}

TEST(LocalSearch, TwoElementsExact) {
  SquareMatrix<double> w(2, 0.0);
  w(0, 1) = 0.7;
  w(1, 0) = 0.2;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto c = local_search_cut(w, ElementSet::all(2), {seed, 2, 10});
    EXPECT_EQ(c.split.a, ElementSet::of(2, {1}));
  }
}

TEST(LocalSearch, NeverBeatsExact) {
  SplitMix64 rng(44);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 2 + rng.below(9);
    auto w = random_weights(n, rng);
    auto exact = exact_directed_sparsest_cut(w, ElementSet::all(n));
    auto local = local_search_cut(w, ElementSet::all(n), {static_cast<std::uint64_t>(rep), 4, 50});
    EXPECT_GE(local.density, exact.density);
  }
}

TEST(LocalSearch, CalibratedAgainstExactOnTenElements) {
  SplitMix64 rng(45);
  int close = 0;
  for (int rep = 0; rep < 100; ++rep) {
    auto w = random_weights(10, rng);
    auto exact = exact_directed_sparsest_cut(w, ElementSet::all(10));
    auto local = local_search_cut(w, ElementSet::all(10), {static_cast<std::uint64_t>(rep)});
    if (local.density <= exact.density * 1.05 + 1e-12) ++close;
  }
  EXPECT_GE(close, 90);
}

TEST(LocalSearch, Reproducible) {
  SplitMix64 rng(46);
  auto w = random_weights(12, rng);
  auto a = local_search_cut(w, ElementSet::all(12), {99, 8, 100});
  auto b = local_search_cut(w, ElementSet::all(12), {99, 8, 100});
  EXPECT_EQ(a.split, b.split);
  EXPECT_EQ(a.density, b.density);
  auto fa = local_cut({7, 4, 50})(w, ElementSet::all(12));
  auto fb = local_cut({7, 4, 50})(w, ElementSet::all(12));
  EXPECT_EQ(fa.split, fb.split);
}
