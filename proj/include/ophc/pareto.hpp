#pragma once

// Sweeping alpha through [0,1] and extracting the (val_sd, val_g) Pareto front.

#include <charconv>
#include <cmath>
#include <ostream>

#include "ophc/metrics.hpp"
#include "ophc/solvers.hpp"
#include "ophc/synth.hpp"

namespace ophc {

struct SolverConfig {
  SolverKind solver = SolverKind::Exact;
  CutKind cut = CutKind::ExactCut;
  std::uint64_t seed = 0;
  std::size_t exact_limit = kDefaultExactLimit;
  std::size_t cut_limit = kDefaultCutLimit;
  std::size_t restarts = 16;
  std::size_t max_passes = 100;
};

inline SolveResult solve(const OrderedSimilaritySpace& space, double alpha, const SolverConfig& cfg) {
  if (cfg.solver == SolverKind::Exact) return exact_optimal_tree(space, alpha, cfg.exact_limit);
  if (cfg.cut == CutKind::LocalSearch)
    return make_tree(space, alpha, local_cut({cfg.seed, cfg.restarts, cfg.max_passes}), CutKind::LocalSearch);
  return make_tree(space, alpha, exact_cut(cfg.cut_limit), CutKind::ExactCut);
}

struct SweepPoint {
  double alpha = 0.0;
  OrientedBinaryTree tree;
  double val_sd = 0.0;
  double val_g = 0.0;
  double val_alpha = 0.0;
  std::optional<QualityReport> quality;
  std::string error;  // set when the solver failed at this alpha

  bool ok() const noexcept { return error.empty(); }
};

inline std::vector<double> default_alpha_grid(std::size_t points = 50) {
  if (points < 2) throw domain_error("default_alpha_grid: needs at least two points");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  return grid;
}

/// One point per alpha. Solver failures are recorded on the point rather than thrown.
inline std::vector<SweepPoint> sweep_alpha(const OrderedSimilaritySpace& space, const std::vector<double>& grid,
                                           const SolverConfig& cfg, const PlantedTruth* truth = nullptr) {
  if (grid.empty()) throw domain_error("sweep_alpha: empty alpha grid");
  for (double a : grid) require_alpha(a);
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (double a : grid) {
    SweepPoint p;
    p.alpha = a;
    try {
      auto res = solve(space, a, cfg);
      auto parts = value_decomposition(space, res.tree, a);
      p.tree = std::move(res.tree);
      p.val_sd = parts.val_sd;
      p.val_g = parts.val_g;
      p.val_alpha = evaluate(space, p.tree, ObjectiveKind::val_alpha(a));
      if (truth) p.quality = best_flat_by_ari(p.tree, truth->clustering, truth->order).report;
    } catch (const capacity_error& e) {
      p.error = e.what();
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// p dominates q when it is at least as good in both objectives and better in one.
inline bool dominates(const SweepPoint& p, const SweepPoint& q) {
  return p.val_sd >= q.val_sd && p.val_g >= q.val_g && (p.val_sd > q.val_sd || p.val_g > q.val_g);
}

/// Points not dominated by any other, sorted by val_sd ascending. Failed
/// points are ignored; duplicates of the same objective pair are kept once.
inline std::vector<SweepPoint> pareto_front(const std::vector<SweepPoint>& points) {
  std::vector<SweepPoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!p.ok()) continue;
    bool dominated = false;
    for (const auto& q : points)
      if (q.ok() && dominates(q, p)) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const SweepPoint& o) { return o.val_sd == p.val_sd && o.val_g == p.val_g; });
    if (!dup) out.push_back(p);
  }
  std::stable_sort(out.begin(), out.end(), [](const SweepPoint& a, const SweepPoint& b) {
    return a.val_sd < b.val_sd || (a.val_sd == b.val_sd && a.val_g < b.val_g);
  });
  return out;
}

/// Bisection over [lo, hi]: an interval is closed when both ends give the same
/// (val_sd, val_g); otherwise it is halved until shorter than tol, and its
/// midpoint is reported as a boundary between optimum regions.
inline std::vector<double> refine_alpha(const OrderedSimilaritySpace& space, double lo, double hi, double tol,
                                        const SolverConfig& cfg) {
  if (!(tol > 0.0)) throw domain_error("refine_alpha: tol must be positive");
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) throw domain_error("refine_alpha: need 0 <= lo < hi <= 1");
  auto probe = [&](double a) {
    auto t = solve(space, a, cfg).tree;
    return value_decomposition(space, t, a);
  };
  auto same = [](const ValueDecomposition& x, const ValueDecomposition& y) {
    auto close = [](double u, double v) { return std::fabs(u - v) <= 1e-9 * (1.0 + std::fabs(u) + std::fabs(v)); };
    return close(x.val_sd, y.val_sd) && close(x.val_g, y.val_g);
  };
  std::vector<double> out;
  std::function<void(double, ValueDecomposition, double, ValueDecomposition)> rec =
      [&](double a, ValueDecomposition va, double b, ValueDecomposition vb) {
        if (same(va, vb)) return;
        if (b - a <= tol) {
          out.push_back((a + b) / 2.0);
          return;
        }
        const double mid = (a + b) / 2.0;
        auto vm = probe(mid);
        rec(a, va, mid, vm);
        rec(mid, vm, b, vb);
      };
  rec(lo, probe(lo), hi, probe(hi));
  return out;
}

/// Plot-ready rows: one per (alpha, replicate).
struct SweepRow {
  double alpha;
  double val_sd;
  double val_g;
  double val_alpha;
  double ari;
  double order_agreement;
  double loops;
  std::string replicate;  // index, or "mean"
};

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "alpha,val_sd,val_g,val_alpha,ari,order_agreement,loops,replicate\n";
  // Shortest text that round-trips; NaN becomes an empty cell.
  auto num = [&](double v) {
    if (std::isnan(v)) return;
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    os.write(buf, res.ptr - buf);
  };
  for (const auto& r : rows) {
    num(r.alpha);
    os << ',';
    num(r.val_sd);
    os << ',';
    num(r.val_g);
    os << ',';
    num(r.val_alpha);
    os << ',';
    num(r.ari);
    os << ',';
    num(r.order_agreement);
    os << ',';
    num(r.loops);
    os << ',' << r.replicate << '\n';
  }
}

inline SweepRow to_row(const SweepPoint& p, std::string replicate) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {p.alpha,
          p.ok() ? p.val_sd : nan,
          p.ok() ? p.val_g : nan,
          p.ok() ? p.val_alpha : nan,
          p.quality ? p.quality->ari : nan,
          p.quality ? p.quality->order_agreement : nan,
          p.quality ? p.quality->loops : nan,
          std::move(replicate)};
}

/// Per-alpha means over replicate rows (NaN entries skipped).
inline std::vector<SweepRow> mean_rows(const std::vector<SweepRow>& rows) {
  std::vector<double> alphas;
  for (const auto& r : rows)
    if (std::find(alphas.begin(), alphas.end(), r.alpha) == alphas.end()) alphas.push_back(r.alpha);
  std::sort(alphas.begin(), alphas.end());
  std::vector<SweepRow> out;
  for (double a : alphas) {
    double sums[6] = {0, 0, 0, 0, 0, 0};
    std::size_t counts[6] = {0, 0, 0, 0, 0, 0};
    for (const auto& r : rows) {
      if (r.alpha != a) continue;
      const double vals[6] = {r.val_sd, r.val_g, r.val_alpha, r.ari, r.order_agreement, r.loops};
      for (int k = 0; k < 6; ++k)
        if (!std::isnan(vals[k])) {
          sums[k] += vals[k];
          ++counts[k];
        }
    }
    double m[6];
    for (int k = 0; k < 6; ++k)
      m[k] = counts[k] ? sums[k] / static_cast<double>(counts[k]) : std::numeric_limits<double>::quiet_NaN();
    out.push_back({a, m[0], m[1], m[2], m[3], m[4], m[5], "mean"});
  }
  return out;
}

/// Alpha whose mean ARI is highest (smallest alpha on ties).
inline double best_alpha_by_mean_ari(const std::vector<SweepRow>& means) {
  double best_a = 0.0, best = -2.0;
  for (const auto& r : means)
    if (!std::isnan(r.ari) && r.ari > best + 1e-12) {
      best = r.ari;
      best_a = r.alpha;
    }
  return best_a;
}

}  // namespace ophc
