#pragma once

// Ordered similarity spaces: relaxed orders, similarities, crisp relations and
// the pointwise split functions built from them.

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ophc/core.hpp"

namespace ophc {

namespace detail {

inline void require_distinct(ElementId x, ElementId y, const char* what) {
  if (x == y) throw domain_error(std::string(what) + ": arguments must be distinct elements");
}

inline void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw domain_error(std::string(what) + ": value " + std::to_string(v) +
                                                  " outside [0,1]");
}

}  // namespace detail

/// Weights omega(x, y) in [0,1] on ordered pairs; the diagonal is ignored.
class RelaxedOrder {
 public:
  RelaxedOrder() = default;
  explicit RelaxedOrder(std::size_t n) : w_(n, 0.0) {}
  explicit RelaxedOrder(SquareMatrix<double> w) : w_(std::move(w)) {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        if (i == j) {
          w_(i, j) = 0.0;
          continue;
        }
        detail::require_unit_interval(w_(i, j), "RelaxedOrder");
      }
  }

  std::size_t size() const noexcept { return w_.size(); }
  double operator()(ElementId x, ElementId y) const noexcept { return w_(x, y); }
  const SquareMatrix<double>& matrix() const noexcept { return w_; }

 private:
  SquareMatrix<double> w_;
};

/// Symmetric weights s(x, y) in [0,1]; the diagonal is ignored.
class Similarity {
 public:
  Similarity() = default;
  explicit Similarity(std::size_t n, double fill = 0.0) : s_(n, fill) {
    detail::require_unit_interval(fill, "Similarity");
    for (std::size_t i = 0; i < n; ++i) s_(i, i) = 0.0;
  }
  explicit Similarity(SquareMatrix<double> s) : s_(std::move(s)) {
    for (std::size_t i = 0; i < size(); ++i) {
      s_(i, i) = 0.0;
      for (std::size_t j = i + 1; j < size(); ++j) {
        detail::require_unit_interval(s_(i, j), "Similarity");
        if (s_(i, j) != s_(j, i))
          throw domain_error("Similarity: matrix is not symmetric at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
      }
    }
  }

  std::size_t size() const noexcept { return s_.size(); }
  double operator()(ElementId x, ElementId y) const noexcept { return s_(x, y); }
  const SquareMatrix<double>& matrix() const noexcept { return s_; }

 private:
  SquareMatrix<double> s_;
};

/// The triple (X, s, omega), with optional element labels.
class OrderedSimilaritySpace {
 public:
  OrderedSimilaritySpace() = default;
  OrderedSimilaritySpace(Similarity s, RelaxedOrder omega, std::vector<std::string> labels = {})
      : s_(std::move(s)), omega_(std::move(omega)), labels_(std::move(labels)) {
    if (s_.size() != omega_.size()) throw domain_error("OrderedSimilaritySpace: similarity and omega sizes differ");
    if (!labels_.empty() && labels_.size() != s_.size())
      throw domain_error("OrderedSimilaritySpace: label count does not match element count");
  }

  std::size_t size() const noexcept { return s_.size(); }
  const Similarity& similarity() const noexcept { return s_; }
  const RelaxedOrder& omega() const noexcept { return omega_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  std::string label(ElementId x) const { return labels_.empty() ? std::to_string(x) : labels_.at(x); }

 private:
  Similarity s_;
  RelaxedOrder omega_;
  std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// Pointwise functions.

/// g(x, y) = omega(x, y) - omega(y, x): signed net comparability.
inline double antisymmetrisation(const RelaxedOrder& omega, ElementId x, ElementId y) {
  detail::require_distinct(x, y, "antisymmetrisation");
  return omega(x, y) - omega(y, x);
}

/// g_d = 1 - g.
inline double dual_antisymmetrisation(const RelaxedOrder& omega, ElementId x, ElementId y) {
  return 1.0 - antisymmetrisation(omega, x, y);
}

/// s_d = 1 - s.
inline double dual_similarity(const Similarity& s, ElementId x, ElementId y) {
  detail::require_distinct(x, y, "dual_similarity");
  return 1.0 - s(x, y);
}

/// f = s_d + g, in [-1, 2].
inline double split_value_f(const OrderedSimilaritySpace& space, ElementId x, ElementId y) {
  return dual_similarity(space.similarity(), x, y) + antisymmetrisation(space.omega(), x, y);
}

/// f_d = 2 - f, in [0, 3]. Equals s + g_d.
inline double dual_split_value_f(const OrderedSimilaritySpace& space, ElementId x, ElementId y) {
  return 2.0 - split_value_f(space, x, y);
}

inline void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw domain_error("alpha " + std::to_string(alpha) + " outside [0,1]");
}

/// f_alpha = alpha * s_d + (1 - alpha) * g.
inline double split_value_alpha(const OrderedSimilaritySpace& space, double alpha, ElementId x, ElementId y) {
  require_alpha(alpha);
  return alpha * dual_similarity(space.similarity(), x, y) + (1.0 - alpha) * antisymmetrisation(space.omega(), x, y);
}

/// 1 - f_alpha = alpha * s + (1 - alpha) * g_d; nonnegative.
inline double dual_split_weight(const OrderedSimilaritySpace& space, double alpha, ElementId x, ElementId y) {
  return 1.0 - split_value_alpha(space, alpha, x, y);
}

// ---------------------------------------------------------------------------
// Crisp relations.

/// Strict (irreflexive) binary relation on [0, n), stored as an adjacency matrix.
class CrispRelation {
 public:
  CrispRelation() = default;
  explicit CrispRelation(std::size_t n) : adj_(n, 0) {}

  static CrispRelation from_pairs(std::size_t n, const std::vector<std::pair<ElementId, ElementId>>& pairs) {
    CrispRelation r(n);
    for (auto [x, y] : pairs) r.add(x, y);
    return r;
  }

  std::size_t size() const noexcept { return adj_.size(); }

  void add(ElementId x, ElementId y) {
    if (x >= size() || y >= size()) throw domain_error("CrispRelation::add: element out of range");
    detail::require_distinct(x, y, "CrispRelation::add");
    adj_(x, y) = 1;
  }
  bool contains(ElementId x, ElementId y) const noexcept { return x != y && adj_(x, y) != 0; }

  std::size_t edge_count() const noexcept {
    return static_cast<std::size_t>(std::count(adj_.data().begin(), adj_.data().end(), std::uint8_t{1}));
  }

  std::vector<std::pair<ElementId, ElementId>> edges() const {
    std::vector<std::pair<ElementId, ElementId>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (adj_(i, j)) out.emplace_back(i, j);
    return out;
  }

  std::vector<ElementId> successors(ElementId x) const {
    std::vector<ElementId> out;
    for (std::size_t j = 0; j < size(); ++j)
      if (adj_(x, j)) out.push_back(j);
    return out;
  }

  friend bool operator==(const CrispRelation&, const CrispRelation&) = default;

 private:
  SquareMatrix<std::uint8_t> adj_;
};

/// Reachability closure. Self-reachability through cycles is not stored.
inline CrispRelation transitive_closure(const CrispRelation& r) {
  const std::size_t n = r.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) reach[i][j] = r.contains(i, j) ? 1 : 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;
  CrispRelation out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && reach[i][j]) out.add(i, j);
  return out;
}

/// Kahn's algorithm; empty optional when the relation has a cycle. Ties are
/// resolved towards the smallest index.
inline std::optional<std::vector<ElementId>> topological_order(const CrispRelation& r) {
  const std::size_t n = r.size();
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r.contains(i, j)) ++indeg[j];
  std::vector<ElementId> order;
  std::vector<char> done(n, 0);
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && indeg[i] == 0) {
        pick = i;
        break;
      }
    if (pick == n) return std::nullopt;
    done[pick] = 1;
    order.push_back(pick);
    for (std::size_t j = 0; j < n; ++j)
      if (r.contains(pick, j)) --indeg[j];
  }
  return order;
}

inline bool is_acyclic(const CrispRelation& r) { return topological_order(r).has_value(); }

/// True iff r is irreflexive, acyclic and transitively closed.
inline bool is_strict_partial_order(const CrispRelation& r) {
  return is_acyclic(r) && transitive_closure(r) == r;
}

/// Number of pairs (a, b) in A x B with a r b.
inline std::size_t indicator_sum(const CrispRelation& r, const ElementSet& a, const ElementSet& b) {
  std::size_t count = 0;
  a.for_each([&](ElementId x) { b.for_each([&](ElementId y) { count += r.contains(x, y) ? 1 : 0; }); });
  return count;
}

/// Longest chain length (in edges) from x up to y; 0 when y is not above x.
/// Accepts any acyclic relation; the result is the same for r and its closure.
inline std::size_t jmp(const CrispRelation& r, ElementId x, ElementId y) {
  auto order = topological_order(r);
  if (!order) throw domain_error("jmp: relation is cyclic");
  if (x >= r.size() || y >= r.size()) throw domain_error("jmp: element out of range");
  if (x == y) return 0;
  constexpr long kUnreached = -1;
  std::vector<long> best(r.size(), kUnreached);
  best[x] = 0;
  for (ElementId u : *order) {
    if (best[u] == kUnreached) continue;
    for (ElementId v : r.successors(u)) best[v] = std::max(best[v], best[u] + 1);
  }
  return best[y] == kUnreached ? 0 : static_cast<std::size_t>(best[y]);
}

/// Ordered separation: max(jmp(x, y), jmp(y, x)).
inline std::size_t sep(const CrispRelation& r, ElementId x, ElementId y) {
  return std::max(jmp(r, x, y), jmp(r, y, x));
}

// ---------------------------------------------------------------------------
// Flat clusterings.

/// A partition of [0, n) into disjoint nonempty blocks.
class Clustering {
 public:
  Clustering() = default;

  static Clustering from_blocks(std::size_t n, std::vector<std::vector<ElementId>> blocks) {
    Clustering c;
    c.block_of_.assign(n, kNone);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) throw domain_error("Clustering: empty block");
      for (ElementId x : blocks[b]) {
        if (x >= n) throw domain_error("Clustering: element out of range");
        if (c.block_of_[x] != kNone) throw domain_error("Clustering: element in two blocks");
        c.block_of_[x] = b;
      }
    }
    for (auto b : c.block_of_)
      if (b == kNone) throw domain_error("Clustering: blocks do not cover all elements");
    c.blocks_ = std::move(blocks);
    return c;
  }

  /// Block labels may be arbitrary; blocks are numbered by first occurrence.
  static Clustering from_labels(const std::vector<std::size_t>& labels) {
    std::vector<std::vector<ElementId>> blocks;
    std::vector<std::pair<std::size_t, std::size_t>> seen;  // label -> block
    for (ElementId x = 0; x < labels.size(); ++x) {
      auto it = std::find_if(seen.begin(), seen.end(), [&](auto& p) { return p.first == labels[x]; });
      if (it == seen.end()) {
        seen.emplace_back(labels[x], blocks.size());
        blocks.push_back({x});
      } else {
        blocks[it->second].push_back(x);
      }
    }
    return from_blocks(labels.size(), std::move(blocks));
  }

  static Clustering singletons(std::size_t n) {
    std::vector<std::vector<ElementId>> blocks(n);
    for (ElementId x = 0; x < n; ++x) blocks[x] = {x};
    return from_blocks(n, std::move(blocks));
  }

  static Clustering one_block(std::size_t n) {
    std::vector<ElementId> all(n);
    std::iota(all.begin(), all.end(), ElementId{0});
    return n == 0 ? from_blocks(0, {}) : from_blocks(n, {all});
  }

  std::size_t size() const noexcept { return block_of_.size(); }
  std::size_t num_blocks() const noexcept { return blocks_.size(); }
  std::size_t block_of(ElementId x) const { return block_of_.at(x); }
  const std::vector<std::vector<ElementId>>& blocks() const noexcept { return blocks_; }

  /// Same partition, regardless of block numbering or member order.
  bool same_partition(const Clustering& o) const {
    if (size() != o.size() || num_blocks() != o.num_blocks()) return false;
    std::vector<std::size_t> map(num_blocks(), kNone);
    for (ElementId x = 0; x < size(); ++x) {
      auto& m = map[block_of_[x]];
      if (m == kNone) m = o.block_of_[x];
      else if (m != o.block_of_[x]) return false;
    }
    return true;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> block_of_;
  std::vector<std::vector<ElementId>> blocks_;
};

/// Block-level relation of a clustering, and whether it is a partial order.
struct InducedRelation {
  CrispRelation blocks;  // transitively closed; no diagonal entries
  bool is_partial_order = true;
};

/// Edges between distinct blocks wherever some member pair is related, before closure.
inline CrispRelation block_relation(const CrispRelation& r, const Clustering& c) {
  if (r.size() != c.size()) throw domain_error("block_relation: relation and clustering sizes differ");
  CrispRelation e(c.num_blocks());
  for (auto [x, y] : r.edges()) {
    auto bx = c.block_of(x), by = c.block_of(y);
    if (bx != by) e.add(bx, by);
  }
  return e;
}

inline InducedRelation induced_relation(const CrispRelation& r, const Clustering& c) {
  auto e = block_relation(r, c);
  InducedRelation out;
  out.is_partial_order = is_acyclic(e);
  out.blocks = transitive_closure(e);
  return out;
}

}  // namespace ophc
