#pragma once

// Tree values and costs: sums over leaf pairs of join size times a pair weight.

#include <cstdint>
#include <string>

#include "ophc/poset.hpp"
#include "ophc/tree.hpp"

namespace ophc {

enum class ObjectiveTag { ValF, ValG, ValSd, ValAlpha, CostS, CostGd, CostFd, CostAlphaDual };

struct ObjectiveKind {
  ObjectiveTag tag = ObjectiveTag::ValF;
  double alpha = 0.0;  // used by ValAlpha and CostAlphaDual only

  static ObjectiveKind val_f() { return {ObjectiveTag::ValF}; }
  static ObjectiveKind val_g() { return {ObjectiveTag::ValG}; }
  static ObjectiveKind val_sd() { return {ObjectiveTag::ValSd}; }
  static ObjectiveKind val_alpha(double a) {
    require_alpha(a);
    return {ObjectiveTag::ValAlpha, a};
  }
  static ObjectiveKind cost_s() { return {ObjectiveTag::CostS}; }
  static ObjectiveKind cost_gd() { return {ObjectiveTag::CostGd}; }
  static ObjectiveKind cost_fd() { return {ObjectiveTag::CostFd}; }
  static ObjectiveKind cost_alpha_dual(double a) {
    require_alpha(a);
    return {ObjectiveTag::CostAlphaDual, a};
  }

  /// Costs are minimised, values maximised.
  bool is_cost() const noexcept {
    return tag == ObjectiveTag::CostS || tag == ObjectiveTag::CostGd || tag == ObjectiveTag::CostFd ||
           tag == ObjectiveTag::CostAlphaDual;
  }

  friend bool operator==(const ObjectiveKind&, const ObjectiveKind&) = default;
};

inline std::string to_string(const ObjectiveKind& k) {
  switch (k.tag) {
    case ObjectiveTag::ValF: return "val_f";
    case ObjectiveTag::ValG: return "val_g";
    case ObjectiveTag::ValSd: return "val_sd";
    case ObjectiveTag::ValAlpha: return "val_alpha";
    case ObjectiveTag::CostS: return "cost_s";
    case ObjectiveTag::CostGd: return "cost_gd";
    case ObjectiveTag::CostFd: return "cost_fd";
    case ObjectiveTag::CostAlphaDual: return "cost_alpha_dual";
  }
  return "unknown";
}

/// Weight of a single ordered pair under `kind`.
inline double pair_weight(const OrderedSimilaritySpace& space, const ObjectiveKind& kind, ElementId x, ElementId y) {
  switch (kind.tag) {
    case ObjectiveTag::ValF: return split_value_f(space, x, y);
    case ObjectiveTag::ValG: return antisymmetrisation(space.omega(), x, y);
    case ObjectiveTag::ValSd: return dual_similarity(space.similarity(), x, y);
    case ObjectiveTag::ValAlpha: return split_value_alpha(space, kind.alpha, x, y);
    case ObjectiveTag::CostS:
      detail::require_distinct(x, y, "pair_weight");
      return space.similarity()(x, y);
    case ObjectiveTag::CostGd: return dual_antisymmetrisation(space.omega(), x, y);
    case ObjectiveTag::CostFd: return dual_split_value_f(space, x, y);
    case ObjectiveTag::CostAlphaDual: return dual_split_weight(space, kind.alpha, x, y);
  }
  throw domain_error("pair_weight: unknown objective");
}

/// n x n matrix of ordered-pair weights, zero on the diagonal.
inline SquareMatrix<double> pair_weights(const OrderedSimilaritySpace& space, const ObjectiveKind& kind) {
  const std::size_t n = space.size();
  SquareMatrix<double> w(n, 0.0);
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y)
      if (x != y) w(x, y) = pair_weight(space, kind, x, y);
  return w;
}

/// Sum over x <_T y of |T[x v y]| * w(x, y), evaluated split by split.
inline double evaluate_weights(const SquareMatrix<double>& w, const OrientedBinaryTree& t) {
  if (t.empty()) throw domain_error("evaluate: empty tree");
  if (t.universe() != w.size()) throw domain_error("evaluate: tree universe differs from weight matrix size");
  long double total = 0.0L;
  for_each_split(t, [&](const OrientedBinaryTree::Node& n) {
    long double cross = 0.0L;
    t.node(n.left).members.for_each([&](ElementId a) {
      t.node(n.right).members.for_each([&](ElementId b) { cross += w(a, b); });
    });
    total += static_cast<long double>(n.size()) * cross;
  });
  return static_cast<double>(total);
}

/// Same value as evaluate_weights, computed pair by pair from the leaf order.
inline double evaluate_weights_pairwise(const SquareMatrix<double>& w, const OrientedBinaryTree& t) {
  if (t.universe() != w.size()) throw domain_error("evaluate: tree universe differs from weight matrix size");
  auto order = leaf_order(t);
  long double total = 0.0L;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      total += static_cast<long double>(join_size(t, order[i], order[j])) * w(order[i], order[j]);
  return static_cast<double>(total);
}

inline double evaluate(const OrderedSimilaritySpace& space, const OrientedBinaryTree& t, const ObjectiveKind& kind) {
  if (t.empty() || !t.covers_universe() || t.universe() != space.size())
    throw domain_error("evaluate: tree leaves must be exactly the elements of the space");
  return evaluate_weights(pair_weights(space, kind), t);
}

/// (n^3 - n) / 3: total of join sizes over all leaf pairs, for any tree on n leaves.
inline std::uint64_t total_join_weight(std::uint64_t n) { return (n * n * n - n) / 3; }

/// Sum of |T[x v y]| over unordered leaf pairs.
inline std::uint64_t join_size_sum(const OrientedBinaryTree& t) {
  std::uint64_t total = 0;
  for_each_split(t, [&](const OrientedBinaryTree::Node& n) {
    total += static_cast<std::uint64_t>(n.size()) * t.node(n.left).size() * t.node(n.right).size();
  });
  return total;
}

struct ValueDecomposition {
  double val_sd;
  double val_g;

  double combine(double alpha) const { return alpha * val_sd + (1.0 - alpha) * val_g; }
};

inline ValueDecomposition value_decomposition(const OrderedSimilaritySpace& space, const OrientedBinaryTree& t,
                                              double alpha) {
  require_alpha(alpha);
  return {evaluate(space, t, ObjectiveKind::val_sd()), evaluate(space, t, ObjectiveKind::val_g())};
}

}  // namespace ophc
