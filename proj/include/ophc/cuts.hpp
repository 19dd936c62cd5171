#pragma once

// Directed cut densities and two ways of finding a sparse ordered split:
// exhaustive Gray-code enumeration and a randomised local search.

#include <cmath>
#include <functional>

#include "ophc/core.hpp"
#include "ophc/tree.hpp"

namespace ophc {

struct CutResult {
  OrderedSplit split;
  double density = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

inline long double cross_weight(const SquareMatrix<double>& w, const ElementSet& a, const ElementSet& b) {
  long double sum = 0.0L;
  a.for_each([&](ElementId x) { b.for_each([&](ElementId y) { sum += w(x, y); }); });
  return sum;
}

// Equal within rounding noise of incremental updates.
inline bool nearly_equal(long double a, long double b) {
  return std::fabs(a - b) <= 1e-12L * (1.0L + std::fabs(a) + std::fabs(b));
}

}  // namespace detail

/// w(A, B) / (|A| |B|); depends on orientation.
inline double directed_cut_density(const SquareMatrix<double>& w, const OrderedSplit& split) {
  if (split.a.empty() || split.b.empty()) throw domain_error("directed_cut_density: empty component");
  if (split.a.universe() != w.size()) throw domain_error("directed_cut_density: universe differs from weights");
  return static_cast<double>(detail::cross_weight(w, split.a, split.b) /
                             (static_cast<long double>(split.a.size()) * split.b.size()));
}

/// f(A, B) / (|A| |B|). For any split this plus the sparse density under 2 - f equals 2.
inline double densest_cut_density(const SquareMatrix<double>& f, const OrderedSplit& split) {
  return directed_cut_density(f, split);
}

constexpr std::size_t kDefaultCutLimit = 22;

/// Minimum-density ordered split of `elements`, by enumerating all 2^m - 2
/// ordered splits. Ties go to the lexicographically smallest A.
inline CutResult exact_directed_sparsest_cut(const SquareMatrix<double>& w, const ElementSet& elements,
                                             std::size_t limit = kDefaultCutLimit) {
  const auto members = elements.elements();
  const std::size_t m = members.size();
  if (m < 2) throw domain_error("exact_directed_sparsest_cut: needs at least two elements");
  if (m > limit || m > 62)
    throw capacity_error("exact_directed_sparsest_cut: " + std::to_string(m) + " elements exceeds the enumeration limit of " +
                         std::to_string(limit) + "; use the local search cut instead");
  if (elements.universe() != w.size()) throw domain_error("exact_directed_sparsest_cut: universe differs from weights");

  SquareMatrix<long double> sub(m, 0.0L);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) sub(i, j) = w(members[i], members[j]);

  // col_a[v] = sum_{a in A} w(a, v); row_b[v] = sum_{b in B} w(v, b).
  std::vector<long double> col_a(m, 0.0L), row_b(m, 0.0L);
  for (std::size_t v = 0; v < m; ++v)
    for (std::size_t u = 0; u < m; ++u) row_b[v] += sub(v, u);

  using Mask = std::uint64_t;
  const Mask full = (Mask{1} << m) - 1;
  Mask mask = 0;
  long double cross = 0.0L;
  std::size_t size_a = 0;
  Mask best_mask = 0;
  long double best = 0.0L;
  bool have_best = false;
  std::size_t evaluations = 0;

  for (Mask i = 1; i <= full; ++i) {
    const auto v = static_cast<std::size_t>(std::countr_zero(i));
    const Mask bit = Mask{1} << v;
    if (mask & bit) {
      cross += col_a[v] - row_b[v];
      mask &= ~bit;
      --size_a;
      for (std::size_t u = 0; u < m; ++u) {
        col_a[u] -= sub(v, u);
        row_b[u] += sub(u, v);
      }
    } else {
      cross += row_b[v] - col_a[v];
      mask |= bit;
      ++size_a;
      for (std::size_t u = 0; u < m; ++u) {
        col_a[u] += sub(v, u);
        row_b[u] -= sub(u, v);
      }
    }
    if (mask == full) continue;
    ++evaluations;
    const long double d = cross / (static_cast<long double>(size_a) * static_cast<long double>(m - size_a));
    if (!have_best || (d < best && !detail::nearly_equal(d, best)) || (detail::nearly_equal(d, best) && mask < best_mask)) {
      best = d;
      best_mask = mask;
      have_best = true;
    }
  }

  ElementSet a(elements.universe());
  for (std::size_t i = 0; i < m; ++i)
    if (best_mask & (Mask{1} << i)) a.insert(members[i]);
  CutResult out;
  out.split = OrderedSplit(a, elements - a);
  out.density = directed_cut_density(w, out.split);
  out.evaluations = evaluations;
  return out;
}

struct LocalSearchOptions {
  std::uint64_t seed = 0;
  std::size_t restarts = 16;
  std::size_t max_passes = 100;
};

/// Best of several random starts, each improved by single-element moves and
/// cross swaps (first improvement) until no move helps.
inline CutResult local_search_cut(const SquareMatrix<double>& w, const ElementSet& elements,
                                  const LocalSearchOptions& opt = {}) {
  const auto members = elements.elements();
  const std::size_t m = members.size();
  if (m < 2) throw domain_error("local_search_cut: needs at least two elements");
  if (elements.universe() != w.size()) throw domain_error("local_search_cut: universe differs from weights");

  SquareMatrix<long double> sub(m, 0.0L);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) sub(i, j) = w(members[i], members[j]);

  std::vector<char> best_side;
  long double best = 0.0L;
  std::size_t evaluations = 0;

  auto lex_smaller = [&](const std::vector<char>& x, const std::vector<char>& y) {
    for (std::size_t i = m; i-- > 0;)
      if (x[i] != y[i]) return x[i] < y[i];
    return false;
  };

  for (std::size_t restart = 0; restart < std::max<std::size_t>(opt.restarts, 1); ++restart) {
    SplitMix64 rng(opt.seed, restart);
    std::vector<char> in_a(m);
    std::size_t size_a = 0;
    for (std::size_t i = 0; i < m; ++i) size_a += (in_a[i] = static_cast<char>(rng() & 1U));
    if (size_a == 0 || size_a == m) {
      auto k = rng.below(m);
      in_a[k] = static_cast<char>(!in_a[k]);
      size_a += in_a[k] ? 1 : static_cast<std::size_t>(-1);
    }

    std::vector<long double> col_a(m, 0.0L), row_b(m, 0.0L);
    long double cross = 0.0L;
    for (std::size_t u = 0; u < m; ++u)
      for (std::size_t v = 0; v < m; ++v) {
        if (in_a[u]) col_a[v] += sub(u, v);
        if (!in_a[v]) row_b[u] += sub(u, v);
        if (in_a[u] && !in_a[v]) cross += sub(u, v);
      }
    auto density = [&](long double c, std::size_t sa) {
      return c / (static_cast<long double>(sa) * static_cast<long double>(m - sa));
    };
    auto flip = [&](std::size_t v) {
      if (in_a[v]) {
        cross += col_a[v] - row_b[v];
        for (std::size_t u = 0; u < m; ++u) {
          col_a[u] -= sub(v, u);
          row_b[u] += sub(u, v);
        }
        --size_a;
      } else {
        cross += row_b[v] - col_a[v];
        for (std::size_t u = 0; u < m; ++u) {
          col_a[u] += sub(v, u);
          row_b[u] -= sub(u, v);
        }
        ++size_a;
      }
      in_a[v] = static_cast<char>(!in_a[v]);
    };

    long double current = density(cross, size_a);
    for (std::size_t pass = 0; pass < opt.max_passes; ++pass) {
      bool improved = false;
      for (std::size_t v = 0; v < m && !improved; ++v) {
        const bool from_a = in_a[v];
        if ((from_a ? size_a : m - size_a) < 2) continue;
        const long double c = from_a ? cross + col_a[v] - row_b[v] : cross + row_b[v] - col_a[v];
        const long double d = density(c, from_a ? size_a - 1 : size_a + 1);
        ++evaluations;
        if (d < current && !detail::nearly_equal(d, current)) {
          flip(v);
          current = density(cross, size_a);
          improved = true;
        }
      }
      for (std::size_t a = 0; a < m && !improved; ++a) {
        if (!in_a[a]) continue;
        for (std::size_t b = 0; b < m && !improved; ++b) {
          if (in_a[b]) continue;
          // a leaves A, then b joins it.
          const long double c1 = cross + col_a[a] - row_b[a];
          const long double col_b = col_a[b] - sub(a, b);
          const long double row_bb = row_b[b] + sub(b, a);
          const long double d = density(c1 + row_bb - col_b, size_a);
          ++evaluations;
          if (d < current && !detail::nearly_equal(d, current)) {
            flip(a);
            flip(b);
            current = density(cross, size_a);
            improved = true;
          }
        }
      }
      if (!improved) break;
    }

    if (best_side.empty() || (current < best && !detail::nearly_equal(current, best)) ||
        (detail::nearly_equal(current, best) && lex_smaller(in_a, best_side))) {
      best = current;
      best_side = in_a;
    }
  }

  ElementSet a(elements.universe());
  for (std::size_t i = 0; i < m; ++i)
    if (best_side[i]) a.insert(members[i]);
  CutResult out;
  out.split = OrderedSplit(a, elements - a);
  out.density = directed_cut_density(w, out.split);
  out.evaluations = evaluations;
  return out;
}

/// Any procedure returning an ordered split of `elements` under weights `w`.
using CutFunction = std::function<CutResult(const SquareMatrix<double>& w, const ElementSet& elements)>;

inline CutFunction exact_cut(std::size_t limit = kDefaultCutLimit) {
  return [limit](const SquareMatrix<double>& w, const ElementSet& elements) {
    return exact_directed_sparsest_cut(w, elements, limit);
  };
}

/// Local search whose seed is mixed with the element set, so that each
/// subproblem of a recursion gets its own reproducible stream.
inline CutFunction local_cut(LocalSearchOptions opt = {}) {
  return [opt](const SquareMatrix<double>& w, const ElementSet& elements) {
    LocalSearchOptions o = opt;
    std::uint64_t h = opt.seed;
    elements.for_each([&](ElementId x) { h = SplitMix64::mix(h ^ (x + 0x9e3779b97f4a7c15ULL)); });
    o.seed = h;
    return local_search_cut(w, elements, o);
  };
}

}  // namespace ophc
