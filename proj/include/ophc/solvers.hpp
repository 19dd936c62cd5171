#pragma once

// Exact optimum by dynamic programming over subsets, and the recursive
// sparsest-cut approximation.

#include <chrono>
#include <cmath>
#include <functional>

#include "ophc/cuts.hpp"
#include "ophc/objective.hpp"

namespace ophc {

enum class SolverKind { Exact, Approx };
enum class CutKind { None, ExactCut, LocalSearch };

inline std::string to_string(SolverKind k) { return k == SolverKind::Exact ? "exact" : "approx"; }
inline std::string to_string(CutKind k) {
  switch (k) {
    case CutKind::None: return "none";
    case CutKind::ExactCut: return "exact";
    case CutKind::LocalSearch: return "local";
  }
  return "unknown";
}

struct SolveStats {
  std::size_t states = 0;  // DP subsets, or recursion nodes
  std::size_t splits = 0;  // candidate splits examined
  double seconds = 0.0;
};

struct SolveResult {
  OrientedBinaryTree tree;
  double value = 0.0;  // under the requested objective
  SolverKind solver = SolverKind::Exact;
  CutKind cut_kind = CutKind::None;
  SolveStats stats;
};

constexpr std::size_t kDefaultExactLimit = 14;

enum class Sense { Maximize, Minimize };

/// Optimal tree for the weights w over all 2^n subsets:
/// V(S) = best over ordered splits (A, S \ A) of |S| w(A, S \ A) + V(A) + V(S \ A).
/// Ties go to the smallest A mask.
inline SolveResult exact_optimal_tree(const SquareMatrix<double>& w, Sense sense,
                                      std::size_t limit = kDefaultExactLimit) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = w.size();
  if (n == 0) throw domain_error("exact_optimal_tree: empty space");
  if (n > limit || n > 30)
    throw capacity_error("exact_optimal_tree: " + std::to_string(n) + " elements exceeds the exact limit of " +
                         std::to_string(limit));

  using Mask = std::uint32_t;
  const Mask full = static_cast<Mask>((std::uint64_t{1} << n) - 1);
  const std::size_t states = std::size_t{1} << n;

  // inner[A] = sum of w(a, b) over ordered pairs inside A.
  std::vector<long double> inner(states, 0.0L);
  for (Mask a = 1; a <= full && a != 0; ++a) {
    const auto v = static_cast<std::size_t>(std::countr_zero(a));
    const Mask rest = a & (a - 1);
    long double add = 0.0L;
    for (Mask r = rest; r; r &= r - 1) {
      const auto u = static_cast<std::size_t>(std::countr_zero(r));
      add += static_cast<long double>(w(v, u)) + w(u, v);
    }
    inner[a] = inner[rest] + add;
    if (a == full) break;
  }

  std::vector<long double> value(states, 0.0L);
  std::vector<Mask> choice(states, 0);
  std::vector<long double> row_in_s(n, 0.0L);
  std::vector<long double> row_sum(states, 0.0L);  // R_S(A), reused per S
  const bool maximize = sense == Sense::Maximize;
  std::size_t splits = 0;

  for (Mask s = 1; s <= full && s != 0; ++s) {
    if ((s & (s - 1)) != 0) {
      for (Mask r = s; r; r &= r - 1) {
        const auto x = static_cast<std::size_t>(std::countr_zero(r));
        long double sum = 0.0L;
        for (Mask q = s; q; q &= q - 1) sum += w(x, static_cast<std::size_t>(std::countr_zero(q)));
        row_in_s[x] = sum;
      }
      const auto size = static_cast<long double>(std::popcount(s));
      bool have = false;
      long double best = 0.0L;
      Mask best_a = 0;
      row_sum[0] = 0.0L;
      for (Mask a = (0 - s) & s; a != s; a = (a - s) & s) {
        const Mask lower = a & (a - 1);
        row_sum[a] = row_sum[lower] + row_in_s[static_cast<std::size_t>(std::countr_zero(a))];
        const Mask b = s & ~a;
        const long double cand = size * (row_sum[a] - inner[a]) + value[a] + value[b];
        ++splits;
        const long double tol = 1e-10L * (1.0L + std::fabs(best));
        if (!have || (maximize ? cand > best + tol : cand < best - tol)) {
          best = cand;
          best_a = a;
          have = true;
        }
      }
      value[s] = best;
      choice[s] = best_a;
    }
    if (s == full) break;
  }

  std::function<OrientedBinaryTree(Mask)> build = [&](Mask s) {
    if ((s & (s - 1)) == 0) return OrientedBinaryTree::leaf(n, static_cast<ElementId>(std::countr_zero(s)));
    const Mask a = choice[s];
    return OrientedBinaryTree::join(build(a), build(s & ~a));
  };

  SolveResult out;
  out.tree = build(full);
  out.value = evaluate_weights(w, out.tree);
  out.solver = SolverKind::Exact;
  out.stats.states = states - 1;
  out.stats.splits = splits;
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

/// Tree maximising a value, or minimising a cost, of the given kind.
inline SolveResult exact_optimal_tree(const OrderedSimilaritySpace& space, const ObjectiveKind& kind,
                                      std::size_t limit = kDefaultExactLimit) {
  return exact_optimal_tree(pair_weights(space, kind), kind.is_cost() ? Sense::Minimize : Sense::Maximize, limit);
}

/// Tree maximising val_alpha.
inline SolveResult exact_optimal_tree(const OrderedSimilaritySpace& space, double alpha,
                                      std::size_t limit = kDefaultExactLimit) {
  return exact_optimal_tree(space, ObjectiveKind::val_alpha(alpha), limit);
}

/// Recursive directed sparsest cut on the dual weights 1 - f_alpha: the
/// first component becomes the left subtree.
inline SolveResult make_tree(const OrderedSimilaritySpace& space, double alpha, const CutFunction& cut,
                             CutKind cut_kind = CutKind::ExactCut) {
  const auto start = std::chrono::steady_clock::now();
  require_alpha(alpha);
  const std::size_t n = space.size();
  if (n == 0) throw domain_error("make_tree: empty space");
  const auto dual = pair_weights(space, ObjectiveKind::cost_alpha_dual(alpha));

  SolveStats stats;
  std::function<OrientedBinaryTree(const ElementSet&)> rec = [&](const ElementSet& x) {
    ++stats.states;
    if (x.size() == 1) return OrientedBinaryTree::leaf(n, x.first());
    auto c = cut(dual, x);
    stats.splits += c.evaluations;
    return OrientedBinaryTree::join(rec(c.split.a), rec(c.split.b));
  };

  SolveResult out;
  out.tree = rec(ElementSet::all(n));
  out.value = evaluate(space, out.tree, ObjectiveKind::val_alpha(alpha));
  out.solver = SolverKind::Approx;
  out.cut_kind = cut_kind;
  out.stats = stats;
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

/// 27 alpha_theta log(n) / 2, natural log unless another base is given.
inline double approximation_bound(double n, double alpha_theta, double log_base = std::exp(1.0)) {
  if (!(n >= 2.0)) throw domain_error("approximation_bound: n must be at least 2");
  if (!(alpha_theta >= 1.0)) throw domain_error("approximation_bound: alpha_theta must be at least 1");
  if (!(log_base > 1.0)) throw domain_error("approximation_bound: log base must exceed 1");
  return 27.0 * alpha_theta * (std::log(n) / std::log(log_base)) / 2.0;
}

}  // namespace ophc
