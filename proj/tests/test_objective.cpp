#include <gtest/gtest.h>

#include "support.hpp"

using namespace ophc;

TEST(Evaluate, SymmetricOmegaGivesZeroValG) {
  SplitMix64 rng(31);
  SquareMatrix<double> w(6, 0.4);
  OrderedSimilaritySpace sp(Similarity(6, 0.2), RelaxedOrder(w));
  for (int rep = 0; rep < 10; ++rep) EXPECT_EQ(evaluate(sp, fixtures::random_tree(6, rng), ObjectiveKind::val_g()), 0.0);
}

TEST(Evaluate, UnitWeightsOnThreeLeaves) {
  SquareMatrix<double> ones(3, 1.0);
  for (const auto& t : fixtures::all_trees(3)) EXPECT_EQ(evaluate_weights(ones, t), 8.0);
}

TEST(Evaluate, SinglePair) {
  SquareMatrix<double> s(2, 0.0), w(2, 0.0);
  s(0, 1) = s(1, 0) = 0.6;
  w(0, 1) = 0.9;
  w(1, 0) = 0.1;
  OrderedSimilaritySpace sp{Similarity(s), RelaxedOrder(w)};
  auto t = OrientedBinaryTree::join(OrientedBinaryTree::leaf(2, 0), OrientedBinaryTree::leaf(2, 1));
  EXPECT_NEAR(evaluate(sp, t, ObjectiveKind::val_f()), 2.4, 1e-14);
}

TEST(Evaluate, RejectsLeafMismatch) {
  auto sp = fixtures::migration_space();
  EXPECT_THROW(evaluate(sp, fixtures::example_tree(), ObjectiveKind::val_g()), ophc::domain_error);
  auto partial = OrientedBinaryTree::join(OrientedBinaryTree::leaf(7, 0), OrientedBinaryTree::leaf(7, 1));
  EXPECT_THROW(evaluate(sp, partial, ObjectiveKind::val_g()), ophc::domain_error);
}

TEST(Evaluate, SplitFormEqualsPairForm) {
  SplitMix64 rng(32);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rng.below(10);
    auto sp = fixtures::random_space(n, rng);
    auto t = fixtures::random_tree(n, rng);
    for (auto kind : {ObjectiveKind::val_f(), ObjectiveKind::val_g(), ObjectiveKind::cost_fd(), ObjectiveKind::val_alpha(0.25)}) {
      auto w = pair_weights(sp, kind);
      EXPECT_EQ(evaluate_weights(w, t), static_cast<double>(fixtures::pair_form_value(w, t)));
      EXPECT_EQ(evaluate_weights(w, t), evaluate_weights_pairwise(w, t));
    }
  }
}

TEST(Duality, JoinSizesSumToTotal) {
  SplitMix64 rng(33);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + rng.below(20);
    auto t = fixtures::random_tree(n, rng);
    EXPECT_EQ(join_size_sum(t), total_join_weight(n));
    std::uint64_t direct = 0;
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = x + 1; y < n; ++y) direct += join_size(t, x, y);
    EXPECT_EQ(direct, total_join_weight(n));
  }
}

TEST(Duality, CostsComplementValues) {
  SplitMix64 rng(34);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rng.below(10);
    auto sp = fixtures::random_space(n, rng);
    auto t = fixtures::random_tree(n, rng);
    const double m = static_cast<double>(total_join_weight(n));
    EXPECT_EQ(evaluate(sp, t, ObjectiveKind::cost_gd()), m - evaluate(sp, t, ObjectiveKind::val_g()));
    EXPECT_EQ(evaluate(sp, t, ObjectiveKind::cost_fd()), 2 * m - evaluate(sp, t, ObjectiveKind::val_f()));
    EXPECT_EQ(evaluate(sp, t, ObjectiveKind::cost_s()), m - evaluate(sp, t, ObjectiveKind::val_sd()));
    for (double a : {0.0, 0.25, 0.5, 1.0})
      EXPECT_EQ(evaluate(sp, t, ObjectiveKind::cost_alpha_dual(a)), m - evaluate(sp, t, ObjectiveKind::val_alpha(a)));
  }
}

TEST(Scaling, ValueIsLinearInWeights) {
  SplitMix64 rng(35);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 2 + rng.below(8);
    auto sp = fixtures::random_space(n, rng);
    auto t = fixtures::random_tree(n, rng);
    auto w = pair_weights(sp, ObjectiveKind::val_g());
    SquareMatrix<double> w4(n, 0.0);
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = 0; y < n; ++y) w4(x, y) = 4.0 * w(x, y);
    EXPECT_EQ(evaluate_weights(w4, t), 4.0 * evaluate_weights(w, t));
  }
}

TEST(Decomposition, Endpoints) {
  SplitMix64 rng(36);
  auto sp = fixtures::random_space(6, rng);
  auto t = fixtures::random_tree(6, rng);
  auto d0 = value_decomposition(sp, t, 0.0);
  EXPECT_EQ(d0.combine(0.0), evaluate(sp, t, ObjectiveKind::val_alpha(0.0)));
  EXPECT_EQ(d0.combine(0.0), d0.val_g);
  EXPECT_EQ(d0.combine(1.0), evaluate(sp, t, ObjectiveKind::val_alpha(1.0)));
  EXPECT_EQ(d0.combine(1.0), d0.val_sd);
}

TEST(Decomposition, RecombinationMatchesEvaluate) {
  SplitMix64 rng(37);
  for (int rep = 0; rep < 30; ++rep) {
    auto sp = fixtures::random_space(6, rng, false);
    auto t = fixtures::random_tree(6, rng);
    auto d = value_decomposition(sp, t, 0.3);
    EXPECT_NEAR(d.combine(0.3), evaluate(sp, t, ObjectiveKind::val_alpha(0.3)), 1e-12);
  }
}

TEST(Decomposition, ConvexCombinationOfWeights) {
  // (gamma + delta) val_alpha = gamma val_sd + delta val_g with alpha = gamma / (gamma + delta).
  SplitMix64 rng(38);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 2 + rng.below(8);
    auto sp = fixtures::random_space(n, rng);
    auto t = fixtures::random_tree(n, rng);
    const double gamma = 1.0 + static_cast<double>(rng.below(4));
    const double delta = 4.0 - gamma;
    auto d = value_decomposition(sp, t, gamma / 4.0);
    EXPECT_EQ(4.0 * evaluate(sp, t, ObjectiveKind::val_alpha(gamma / 4.0)), gamma * d.val_sd + delta * d.val_g);
  }
  auto sp = fixtures::random_space(5, rng);
  auto t = fixtures::random_tree(5, rng);
  EXPECT_EQ(evaluate(sp, t, ObjectiveKind::val_f()), 2.0 * evaluate(sp, t, ObjectiveKind::val_alpha(0.5)));
}

TEST(ObjectiveKind, Validation) {
  EXPECT_THROW(ObjectiveKind::val_alpha(1.5), ophc::domain_error);
  EXPECT_TRUE(ObjectiveKind::cost_fd().is_cost());
  EXPECT_FALSE(ObjectiveKind::val_f().is_cost());
}
