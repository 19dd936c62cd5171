#pragma once

// Random instances with a known answer: planted bipartite orders and
// copy-paste duplications of a base ordered space.

#include <cmath>
#include <optional>
#include <numeric>
#include <random>

#include "ophc/core.hpp"
#include "ophc/poset.hpp"
#include "ophc/tree.hpp"

namespace ophc {

struct PlantedTruth {
  Clustering clustering;
  CrispRelation order;                 // strict, transitively closed
  std::optional<OrderedSplit> blocks;  // (A*, B*) for bipartite instances
};

struct PlantedInstance {
  OrderedSimilaritySpace space;
  PlantedTruth truth;
};

struct PlantedBipartiteSpec {
  std::size_t n = 16;
  double p = 0.9;
  double q = 0.1;
  std::uint64_t seed = 0;
  double similarity = 0.0;  // constant similarity between all pairs
};

inline void validate(const PlantedBipartiteSpec& spec) {
  if (spec.n < 2 || spec.n % 2 != 0) throw domain_error("planted_bipartite: n must be even and at least 2");
  if (!(spec.p >= 0.0 && spec.p <= 1.0 && spec.q >= 0.0 && spec.q <= 1.0))
    throw domain_error("planted_bipartite: p and q must lie in [0,1]");
  if (!(spec.q < spec.p)) throw domain_error("planted_bipartite: q must be smaller than p");
  if (!(spec.similarity >= 0.0 && spec.similarity <= 1.0))
    throw domain_error("planted_bipartite: similarity must lie in [0,1]");
}

/// A* and B* are a uniformly random equal split; omega(x, y) ~ Bernoulli(p)
/// for x in A*, y in B*, and Bernoulli(q) for every other ordered pair.
inline PlantedInstance planted_bipartite(const PlantedBipartiteSpec& spec) {
  validate(spec);
  const std::size_t n = spec.n;
  std::vector<ElementId> perm(n);
  std::iota(perm.begin(), perm.end(), ElementId{0});
  SplitMix64 split_rng(spec.seed, 0);
  shuffle_in_place(perm, split_rng);
  ElementSet a(n);
  for (std::size_t i = 0; i < n / 2; ++i) a.insert(perm[i]);
  ElementSet b = ElementSet::all(n) - a;

  SplitMix64 rng(spec.seed, 1);
  SquareMatrix<double> w(n, 0.0);
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y) {
      if (x == y) continue;
      const double prob = a.contains(x) && b.contains(y) ? spec.p : spec.q;
      w(x, y) = rng.uniform() < prob ? 1.0 : 0.0;
    }

  CrispRelation order(n);
  a.for_each([&](ElementId x) { b.for_each([&](ElementId y) { order.add(x, y); }); });

  PlantedInstance out{OrderedSimilaritySpace(Similarity(n, spec.similarity), RelaxedOrder(std::move(w))),
                      PlantedTruth{Clustering::from_blocks(n, {a.elements(), b.elements()}), std::move(order),
                                   OrderedSplit(a, b)}};
  return out;
}

enum class BaseKind { Chain, RandomDag };

struct CopyPasteSpec {
  std::size_t base_n = 5;
  std::size_t m = 4;  // number of extra copies; the result has base_n * (m + 1) elements
  double mu = 0.075;
  double sigma2 = 0.15;
  std::uint64_t seed = 0;
  BaseKind base_kind = BaseKind::RandomDag;
  double edge_probability = 0.3;  // random DAG density before closure
  // Caller-supplied base space; its omega is read as a crisp order (entries > 0.5).
  std::optional<OrderedSimilaritySpace> base;
};

inline void validate(const CopyPasteSpec& spec) {
  if (!(spec.sigma2 > 0.0)) throw domain_error("copy_paste_partition: sigma2 must be positive");
  if (!(spec.mu >= 0.0) || !std::isfinite(spec.mu)) throw domain_error("copy_paste_partition: mu must be nonnegative");
  if (!(spec.edge_probability >= 0.0 && spec.edge_probability <= 1.0))
    throw domain_error("copy_paste_partition: edge probability must lie in [0,1]");
  if (!spec.base && spec.base_n == 0) throw domain_error("copy_paste_partition: base_n must be positive");
}

struct BaseSpace {
  Similarity similarity;
  CrispRelation order;  // strict, transitively closed
};

/// Stand-in for a sampled base space: a chain or a random DAG (random linear
/// extension plus independent edges, then closed), with similarities drawn
/// uniformly from [0,1].
inline BaseSpace synthesize_base(const CopyPasteSpec& spec) {
  const std::size_t n = spec.base_n;
  SplitMix64 rng(spec.seed, 2);
  CrispRelation r(n);
  if (spec.base_kind == BaseKind::Chain) {
    for (ElementId x = 0; x + 1 < n; ++x) r.add(x, x + 1);
  } else {
    std::vector<ElementId> ext(n);
    std::iota(ext.begin(), ext.end(), ElementId{0});
    shuffle_in_place(ext, rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng.uniform() < spec.edge_probability) r.add(ext[i], ext[j]);
  }
  SquareMatrix<double> s(n, 0.0);
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = x + 1; y < n; ++y) s(x, y) = s(y, x) = rng.uniform();
  return {Similarity(std::move(s)), transitive_closure(r)};
}

/// Duplicates the base m times. Element x_i^j has index j * base_n + i.
/// Similarity within a copy is the base similarity; across copies it is the
/// base similarity minus Y ~ N(mu, sigma2), redrawn until the result lies in
/// [0,1]. Copies of the same element start from similarity 1.
inline PlantedInstance copy_paste_partition(const CopyPasteSpec& spec) {
  validate(spec);
  BaseSpace base;
  if (spec.base) {
    const auto& b = *spec.base;
    CrispRelation r(b.size());
    for (ElementId x = 0; x < b.size(); ++x)
      for (ElementId y = 0; y < b.size(); ++y)
        if (x != y && b.omega()(x, y) > 0.5) r.add(x, y);
    if (!is_acyclic(r)) throw domain_error("copy_paste_partition: base order is cyclic");
    base = {b.similarity(), transitive_closure(r)};
  } else {
    base = synthesize_base(spec);
  }

  const std::size_t n0 = base.order.size();
  const std::size_t copies = spec.m + 1;
  const std::size_t n = n0 * copies;
  auto id = [n0](std::size_t copy, ElementId i) { return copy * n0 + i; };

  SplitMix64 rng(spec.seed, 3);
  std::normal_distribution<double> noise(spec.mu, std::sqrt(spec.sigma2));
  constexpr std::size_t kMaxRedraws = 1000000;

  SquareMatrix<double> s(n, 0.0);
  SquareMatrix<double> w(n, 0.0);
  CrispRelation order(n);
  for (std::size_t cx = 0; cx < copies; ++cx)
    for (ElementId p = 0; p < n0; ++p) {
      const ElementId x = id(cx, p);
      for (std::size_t cy = 0; cy < copies; ++cy)
        for (ElementId q = 0; q < n0; ++q) {
          const ElementId y = id(cy, q);
          if (y <= x) continue;
          const double s0 = p == q ? 1.0 : base.similarity(p, q);
          double v = s0;
          if (cx != cy) {
            std::size_t draws = 0;
            do {
              if (++draws > kMaxRedraws)
                throw domain_error("copy_paste_partition: rejection sampling did not land in [0,1]");
              v = s0 - noise(rng);
            } while (!(v >= 0.0 && v <= 1.0));
          }
          s(x, y) = s(y, x) = v;
        }
    }
  for (std::size_t c = 0; c < copies; ++c)
    for (auto [p, q] : base.order.edges()) {
      order.add(id(c, p), id(c, q));
      w(id(c, p), id(c, q)) = 1.0;
    }

  std::vector<std::vector<ElementId>> blocks(n0);
  for (ElementId i = 0; i < n0; ++i)
    for (std::size_t c = 0; c < copies; ++c) blocks[i].push_back(id(c, i));

  return PlantedInstance{OrderedSimilaritySpace(Similarity(std::move(s)), RelaxedOrder(std::move(w))),
                         PlantedTruth{Clustering::from_blocks(n, std::move(blocks)), std::move(order), std::nullopt}};
}

/// Fraction of reversed pairs guaranteed, with probability 1 - eps, for an
/// optimal tree on a planted bipartite order.
inline double delta_bound(std::size_t n, double p, double q, double eps) {
  if (n < 2) throw domain_error("delta_bound: n must be at least 2");
  if (!(eps > 0.0 && eps < 1.0)) throw domain_error("delta_bound: eps must lie in (0,1)");
  if (!(q < p)) throw domain_error("delta_bound: q must be smaller than p");
  const double nn = static_cast<double>(n);
  return (8.0 / (p - q)) * std::sqrt(2.0 * std::log(2.0 * nn) / nn + std::log(2.0 / eps) / (nn * nn));
}

/// Deviation of a tree value from its expectation allowed with probability
/// 1 - eps. eps up to 2 is accepted; at eps = 2 the confidence term vanishes.
inline double concentration_bound(std::size_t n, double eps) {
  if (n < 1) throw domain_error("concentration_bound: n must be positive");
  if (!(eps > 0.0 && eps <= 2.0)) throw domain_error("concentration_bound: eps must lie in (0,2]");
  const double nn = static_cast<double>(n);
  return nn * nn * std::sqrt(2.0 * nn * std::log(2.0 * nn) + std::log(2.0 / eps));
}

}  // namespace ophc
