#pragma once

// Oriented binary trees over element sets and the structures derived from
// them: leaf order, join sizes, ultrametrics, flat clusterings, order
// preservation, induced trees and balanced T-splits.

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ophc/core.hpp"
#include "ophc/poset.hpp"

namespace ophc {

/// Oriented split (A, B) of a set: A and B nonempty and disjoint.
struct OrderedSplit {
  ElementSet a;
  ElementSet b;

  OrderedSplit() = default;
  OrderedSplit(ElementSet left, ElementSet right) : a(std::move(left)), b(std::move(right)) {
    if (a.empty() || b.empty()) throw domain_error("OrderedSplit: empty component");
    if (a.intersects(b)) throw domain_error("OrderedSplit: components overlap");
  }

  friend bool operator==(const OrderedSplit&, const OrderedSplit&) = default;
};

/// Binary tree whose internal nodes are oriented splits of their member sets.
/// Nodes are stored in post-order; the root is the last node.
class OrientedBinaryTree {
 public:
  using NodeIndex = std::size_t;
  static constexpr NodeIndex kNoChild = static_cast<NodeIndex>(-1);

  struct Node {
    ElementSet members;
    NodeIndex left = kNoChild;
    NodeIndex right = kNoChild;
    ElementId element = 0;  // meaningful for leaves only

    bool is_leaf() const noexcept { return left == kNoChild; }
    std::size_t size() const noexcept { return members.size(); }
  };

  OrientedBinaryTree() = default;

  static OrientedBinaryTree leaf(std::size_t universe, ElementId x) {
    OrientedBinaryTree t;
    Node n;
    n.members = ElementSet(universe);
    n.members.insert(x);
    n.element = x;
    t.nodes_.push_back(std::move(n));
    return t;
  }

  static OrientedBinaryTree join(const OrientedBinaryTree& left, const OrientedBinaryTree& right) {
    if (left.empty() || right.empty()) throw domain_error("OrientedBinaryTree::join: empty subtree");
    if (left.universe() != right.universe()) throw domain_error("OrientedBinaryTree::join: universes differ");
    if (left.members().intersects(right.members()))
      throw domain_error("OrientedBinaryTree::join: subtrees share leaves");
    OrientedBinaryTree t;
    t.nodes_.reserve(left.nodes_.size() + right.nodes_.size() + 1);
    t.nodes_ = left.nodes_;
    const NodeIndex offset = left.nodes_.size();
    for (Node n : right.nodes_) {
      if (!n.is_leaf()) {
        n.left += offset;
        n.right += offset;
      }
      t.nodes_.push_back(std::move(n));
    }
    Node root;
    root.members = left.members() | right.members();
    root.left = left.root();
    root.right = offset + right.root();
    t.nodes_.push_back(std::move(root));
    return t;
  }

  bool empty() const noexcept { return nodes_.empty(); }
  NodeIndex root() const noexcept { return nodes_.size() - 1; }
  const Node& node(NodeIndex i) const { return nodes_.at(i); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const ElementSet& members() const { return nodes_.back().members; }
  std::size_t leaf_count() const { return empty() ? 0 : members().size(); }
  std::size_t universe() const { return empty() ? 0 : members().universe(); }
  /// True when the leaves are exactly [0, universe).
  bool covers_universe() const { return !empty() && leaf_count() == universe(); }

  friend bool operator==(const OrientedBinaryTree& a, const OrientedBinaryTree& b) {
    return a.structurally_equal(a.root(), b, b.root());
  }

 private:
  bool structurally_equal(NodeIndex i, const OrientedBinaryTree& o, NodeIndex j) const {
    const Node& p = nodes_[i];
    const Node& q = o.nodes_[j];
    if (p.is_leaf() != q.is_leaf()) return false;
    if (p.is_leaf()) return p.element == q.element && p.members.universe() == q.members.universe();
    return structurally_equal(p.left, o, q.left) && structurally_equal(p.right, o, q.right);
  }

  std::vector<Node> nodes_;
};

using TreeNodeIndex = OrientedBinaryTree::NodeIndex;

namespace detail {

inline void require_full_tree(const OrientedBinaryTree& t, const char* what) {
  if (!t.covers_universe()) throw domain_error(std::string(what) + ": tree does not cover its element universe");
}

inline void require_leaf(const OrientedBinaryTree& t, ElementId x, const char* what) {
  if (t.empty() || !t.members().contains(x))
    throw domain_error(std::string(what) + ": element " + std::to_string(x) + " is not a leaf of the tree");
}

}  // namespace detail

/// Left-to-right leaf sequence; defines the linear order <=_T.
inline std::vector<ElementId> leaf_order(const OrientedBinaryTree& t) {
  std::vector<ElementId> out;
  if (t.empty()) return out;
  out.reserve(t.leaf_count());
  std::vector<TreeNodeIndex> stack{t.root()};
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    const auto& n = t.node(i);
    if (n.is_leaf()) {
      out.push_back(n.element);
    } else {
      stack.push_back(n.right);
      stack.push_back(n.left);
    }
  }
  return out;
}

/// Position of each element in the leaf order; universe-sized, npos for non-leaves.
inline std::vector<std::size_t> leaf_positions(const OrientedBinaryTree& t) {
  std::vector<std::size_t> pos(t.universe(), static_cast<std::size_t>(-1));
  auto order = leaf_order(t);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  return pos;
}

/// |T[x v y]|: leaf count of the smallest subtree containing x and y.
inline std::size_t join_size(const OrientedBinaryTree& t, ElementId x, ElementId y) {
  detail::require_leaf(t, x, "join_size");
  detail::require_leaf(t, y, "join_size");
  TreeNodeIndex i = t.root();
  while (!t.node(i).is_leaf()) {
    const auto& n = t.node(i);
    const auto& l = t.node(n.left).members;
    bool xl = l.contains(x), yl = l.contains(y);
    if (xl && yl) i = n.left;
    else if (!xl && !yl) i = n.right;
    else return n.size();
  }
  return 1;
}

/// Calls f(node) for every internal node, i.e. every split S -> (A, B).
template <class F>
void for_each_split(const OrientedBinaryTree& t, F&& f) {
  for (const auto& n : t.nodes())
    if (!n.is_leaf()) f(n);
}

/// Pairwise tree distances u_T(x, y) = |T[x v y]| - 1.
struct UltraMetricMatrix {
  SquareMatrix<std::size_t> d;

  std::size_t size() const noexcept { return d.size(); }
  std::size_t operator()(ElementId x, ElementId y) const noexcept { return d(x, y); }
  friend bool operator==(const UltraMetricMatrix&, const UltraMetricMatrix&) = default;
};

inline UltraMetricMatrix ultrametric(const OrientedBinaryTree& t) {
  detail::require_full_tree(t, "ultrametric");
  UltraMetricMatrix u{SquareMatrix<std::size_t>(t.universe(), 0)};
  for_each_split(t, [&](const OrientedBinaryTree::Node& n) {
    const auto& a = t.node(n.left).members;
    const auto& b = t.node(n.right).members;
    a.for_each([&](ElementId x) {
      b.for_each([&](ElementId y) { u.d(x, y) = u.d(y, x) = n.size() - 1; });
    });
  });
  return u;
}

template <class Matrix>
bool satisfies_ultrametric_inequality(const Matrix& d) {
  const std::size_t n = d.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (d(x, z) > std::max(d(x, y), d(y, z))) return false;
  return true;
}

/// Ultrametric scaled into [0, 1] by the largest distance n - 1.
inline SquareMatrix<double> normalized_ultrametric(const OrientedBinaryTree& t) {
  detail::require_full_tree(t, "normalized_ultrametric");
  const std::size_t n = t.universe();
  if (n < 2) throw domain_error("normalized_ultrametric: needs at least two elements");
  auto u = ultrametric(t);
  SquareMatrix<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = static_cast<double>(u(i, j)) / static_cast<double>(n - 1);
  return out;
}

/// Classes of u_T(x, y) <= t. A node is a block iff size - 1 <= t and its
/// parent's size - 1 > t. Blocks are listed in leaf order.
inline Clustering flat_clustering_at(const OrientedBinaryTree& t, double threshold) {
  detail::require_full_tree(t, "flat_clustering_at");
  if (!(threshold >= 0.0)) throw domain_error("flat_clustering_at: threshold must be nonnegative");
  std::vector<std::vector<ElementId>> blocks;
  std::vector<TreeNodeIndex> stack{t.root()};
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    const auto& n = t.node(i);
    if (static_cast<double>(n.size() - 1) <= threshold) {
      std::vector<ElementId> block;
      // Leaf order inside the block.
      std::vector<TreeNodeIndex> inner{i};
      while (!inner.empty()) {
        auto k = inner.back();
        inner.pop_back();
        const auto& m = t.node(k);
        if (m.is_leaf()) {
          block.push_back(m.element);
        } else {
          inner.push_back(m.right);
          inner.push_back(m.left);
        }
      }
      blocks.push_back(std::move(block));
    } else {
      stack.push_back(n.right);
      stack.push_back(n.left);
    }
  }
  return Clustering::from_blocks(t.universe(), std::move(blocks));
}

struct FlatLevel {
  double threshold;  // smallest t producing this clustering
  Clustering clustering;
};

/// All distinct flat clusterings of T, ordered by increasing threshold.
inline std::vector<FlatLevel> flat_levels(const OrientedBinaryTree& t) {
  detail::require_full_tree(t, "flat_levels");
  std::vector<std::size_t> thresholds{0};
  for_each_split(t, [&](const OrientedBinaryTree::Node& n) { thresholds.push_back(n.size() - 1); });
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  std::vector<FlatLevel> out;
  for (auto th : thresholds) {
    auto tt = static_cast<double>(th);
    out.push_back({tt, flat_clustering_at(t, tt)});
  }
  return out;
}

/// Result of an order-preservation check; `witness` is a pair x r y placed
/// with y before x in the leaf order.
struct OrderPreservation {
  bool preserving = true;
  std::optional<std::pair<ElementId, ElementId>> witness;

  explicit operator bool() const noexcept { return preserving; }
};

/// Checks x r y => x <=_T y for all pairs of the partial order generated by r.
inline OrderPreservation is_order_preserving(const OrientedBinaryTree& t, const CrispRelation& r) {
  detail::require_full_tree(t, "is_order_preserving");
  if (r.size() != t.universe()) throw domain_error("is_order_preserving: relation size differs from tree");
  if (!is_acyclic(r)) throw domain_error("is_order_preserving: relation is cyclic");
  auto closed = transitive_closure(r);
  auto pos = leaf_positions(t);
  for (auto [x, y] : closed.edges())
    if (pos[x] > pos[y]) return {false, std::make_pair(x, y)};
  return {};
}

/// Tree isomorphic to T with every node's members mapped through phi.
inline OrientedBinaryTree induced_tree(const OrientedBinaryTree& t, const std::vector<ElementId>& phi) {
  const std::size_t n = t.universe();
  if (phi.size() != n) throw domain_error("induced_tree: permutation size differs from tree universe");
  std::vector<char> hit(n, 0);
  for (auto y : phi) {
    if (y >= n || hit[y]) throw domain_error("induced_tree: mapping is not a bijection");
    hit[y] = 1;
  }
  std::vector<OrientedBinaryTree> built(t.nodes().size());
  for (TreeNodeIndex i = 0; i < t.nodes().size(); ++i) {
    const auto& node = t.node(i);
    built[i] = node.is_leaf() ? OrientedBinaryTree::leaf(n, phi[node.element])
                              : OrientedBinaryTree::join(built[node.left], built[node.right]);
  }
  return built.back();
}

/// gamma_T(x, y): g evaluated in the orientation given by the leaf order.
inline double t_symmetrisation_value(const OrientedBinaryTree& t, const RelaxedOrder& omega, ElementId x,
                                     ElementId y) {
  detail::require_leaf(t, x, "t_symmetrisation_value");
  detail::require_leaf(t, y, "t_symmetrisation_value");
  auto pos = leaf_positions(t);
  return pos[x] < pos[y] ? antisymmetrisation(omega, x, y) : antisymmetrisation(omega, y, x);
}

/// Sum of cluster-graph edge weights |T[x v y]| * gamma_T(x, y) over unordered pairs.
inline double cluster_graph_total(const OrientedBinaryTree& t, const RelaxedOrder& omega) {
  detail::require_full_tree(t, "cluster_graph_total");
  if (omega.size() != t.universe()) throw domain_error("cluster_graph_total: size mismatch");
  auto pos = leaf_positions(t);
  auto u = ultrametric(t);
  long double total = 0.0L;
  for (ElementId x = 0; x < t.universe(); ++x)
    for (ElementId y = x + 1; y < t.universe(); ++y) {
      double gamma = pos[x] < pos[y] ? antisymmetrisation(omega, x, y) : antisymmetrisation(omega, y, x);
      total += static_cast<long double>(u(x, y) + 1) * gamma;
    }
  return static_cast<double>(total);
}

/// Largest fraction, over all splits (A, B) of T, of comparable pairs that
/// the split reverses (b in B, a in A, a < b).
inline double delta_goodness(const OrientedBinaryTree& t, const CrispRelation& r) {
  detail::require_full_tree(t, "delta_goodness");
  if (r.size() != t.universe()) throw domain_error("delta_goodness: relation size differs from tree");
  if (!is_acyclic(r)) throw domain_error("delta_goodness: relation is cyclic");
  auto closed = transitive_closure(r);
  const std::size_t pairs = closed.edge_count();
  if (pairs == 0) throw domain_error("delta_goodness: relation has no comparable pairs");
  std::size_t worst = 0;
  for_each_split(t, [&](const OrientedBinaryTree::Node& n) {
    worst = std::max(worst, indicator_sum(closed, t.node(n.right).members, t.node(n.left).members));
  });
  return static_cast<double>(worst) / static_cast<double>(pairs);
}

/// Balanced T-split together with its head sequence N_1..N_K.
struct BalancedTSplit {
  OrderedSplit split;
  std::vector<TreeNodeIndex> head;
};

/// Follows a maximum cardinality path from the root (ties go left),
/// accumulating the smaller-side split-offs until one side reaches n/3.
inline BalancedTSplit balanced_t_split(const OrientedBinaryTree& t) {
  const std::size_t n = t.leaf_count();
  if (n < 2) throw domain_error("balanced_t_split: needs at least two leaves");
  const std::size_t universe = t.universe();
  ElementSet acc_left(universe), acc_right(universe);
  BalancedTSplit out;
  TreeNodeIndex cur = t.root();
  for (;;) {
    const auto& node = t.node(cur);
    out.head.push_back(cur);
    const auto& l = t.node(node.left);
    const auto& r = t.node(node.right);
    if (l.size() < r.size()) {
      acc_left |= l.members;
      cur = node.right;
    } else {
      acc_right |= r.members;
      cur = node.left;
    }
    if (3 * acc_left.size() >= n) {
      out.split = OrderedSplit(acc_left, t.members() - acc_left);
      return out;
    }
    if (3 * acc_right.size() >= n) {
      out.split = OrderedSplit(t.members() - acc_right, acc_right);
      return out;
    }
    // Both accumulations stay below n/3 while the current node keeps more than n/3 leaves.
  }
}

// ---------------------------------------------------------------------------
// Text form: a leaf is its element index, an internal node is "(left right)".

inline std::string to_string(const OrientedBinaryTree& t) {
  if (t.empty()) return "";
  std::vector<std::string> text(t.nodes().size());
  for (TreeNodeIndex i = 0; i < t.nodes().size(); ++i) {
    const auto& n = t.node(i);
    text[i] = n.is_leaf() ? std::to_string(n.element) : "(" + text[n.left] + " " + text[n.right] + ")";
  }
  return text.back();
}

namespace detail {

class TreeParser {
 public:
  TreeParser(std::string_view s, std::size_t universe) : s_(s), universe_(universe) {}

  OrientedBinaryTree parse() {
    auto t = node();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return t;
  }

 private:
  OrientedBinaryTree node() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == '(') {
      ++pos_;
      auto l = node();
      auto r = node();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return OrientedBinaryTree::join(l, r);
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected element index");
    auto x = static_cast<ElementId>(std::stoull(std::string(s_.substr(start, pos_ - start))));
    if (x >= universe_) fail("element index out of range");
    return OrientedBinaryTree::leaf(universe_, x);
  }

  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == ',')) ++pos_;
  }
  [[noreturn]] void fail(const char* why) const {
    throw domain_error("parse_tree: " + std::string(why) + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t universe_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the text form produced by to_string(); commas are accepted as separators.
inline OrientedBinaryTree parse_tree(std::string_view text, std::size_t universe) {
  return detail::TreeParser(text, universe).parse();
}

}  // namespace ophc
