// ophc: cluster, synthesize, evaluate and sweep from the command line.
// Exit codes: 0 ok, 2 usage or input error, 3 solver capacity exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ophc/io.hpp"
#include "ophc/ophc.hpp"

namespace {

using namespace ophc;
using io::json;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kCapacityError = 3;

struct SolverFlags {
  std::string solver = "exact";
  std::string cut = "exact";
  std::uint64_t seed = 0;
  std::size_t exact_limit = kDefaultExactLimit;
  std::size_t cut_limit = kDefaultCutLimit;
  std::size_t restarts = 16;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--solver", solver, "exact subset DP or approx recursive cuts")
        ->check(CLI::IsMember({"exact", "approx"}))
        ->capture_default_str();
    cmd->add_option("--cut", cut, "cut routine for the approx solver")
        ->check(CLI::IsMember({"exact", "local"}))
        ->capture_default_str();
    cmd->add_option("--seed", seed, "seed for local search")->capture_default_str();
    cmd->add_option("--exact-limit", exact_limit, "largest n for the exact solver")->capture_default_str();
    cmd->add_option("--cut-limit", cut_limit, "largest subset for the exact cut")->capture_default_str();
    cmd->add_option("--restarts", restarts, "local search restarts")->capture_default_str();
  }

  SolverConfig config() const {
    SolverConfig c;
    c.solver = solver == "exact" ? SolverKind::Exact : SolverKind::Approx;
    c.cut = cut == "exact" ? CutKind::ExactCut : CutKind::LocalSearch;
    c.seed = seed;
    c.exact_limit = exact_limit;
    c.cut_limit = cut_limit;
    c.restarts = restarts;
    return c;
  }
};

struct SynthFlags {
  std::size_t n = 16;
  double p = 0.9;
  double q = 0.1;
  double similarity = 0.0;
  std::size_t base_n = 5;
  std::size_t m = 4;
  double mu = 0.075;
  double sigma2 = 0.15;
  std::string base_kind = "dag";
  double edge_probability = 0.3;
  std::string base_path;

  void add_bpp(CLI::App* cmd) {
    cmd->add_option("--n", n, "number of elements (even)")->capture_default_str();
    cmd->add_option("--p", p, "edge probability along the planted order")->capture_default_str();
    cmd->add_option("--q", q, "noise edge probability")->capture_default_str();
    cmd->add_option("--similarity", similarity, "constant similarity")->capture_default_str();
  }

  void add_copypaste(CLI::App* cmd) {
    cmd->add_option("--base-n", base_n, "base poset size when synthesized")->capture_default_str();
    cmd->add_option("--m", m, "number of extra copies")->capture_default_str();
    cmd->add_option("--mu", mu, "noise location")->capture_default_str();
    cmd->add_option("--sigma2", sigma2, "noise variance")->capture_default_str();
    cmd->add_option("--base-kind", base_kind, "synthesized base order")
        ->check(CLI::IsMember({"dag", "chain"}))
        ->capture_default_str();
    cmd->add_option("--edge-probability", edge_probability, "random DAG edge probability")->capture_default_str();
    cmd->add_option("--base", base_path, "base space file instead of a synthesized base");
  }

  PlantedInstance make_bpp(std::uint64_t seed) const {
    PlantedBipartiteSpec s;
    s.n = n;
    s.p = p;
    s.q = q;
    s.similarity = similarity;
    s.seed = seed;
    return planted_bipartite(s);
  }

  PlantedInstance make_copypaste(std::uint64_t seed) const {
    CopyPasteSpec s;
    s.base_n = base_n;
    s.m = m;
    s.mu = mu;
    s.sigma2 = sigma2;
    s.seed = seed;
    s.base_kind = base_kind == "chain" ? BaseKind::Chain : BaseKind::RandomDag;
    s.edge_probability = edge_probability;
    if (!base_path.empty()) s.base = io::space_from_json(io::read_json_file(base_path));
    return copy_paste_partition(s);
  }
};

std::string joined_args(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) s += std::string(argv[i]) + '\x1f';
  return s;
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw domain_error(std::string(what) + ": element counts differ (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

int cmd_cluster(const std::string& space_path, double alpha, const SolverFlags& flags, const std::string& out,
                const std::string& truth_path) {
  require_alpha(alpha);
  auto space = io::space_from_json(io::read_json_file(space_path));
  auto result = solve(space, alpha, flags.config());
  io::TreeFile tf;
  tf.tree = result.tree;
  tf.objective = to_string(ObjectiveKind::val_alpha(alpha));
  tf.alpha = alpha;
  tf.value = result.value;
  tf.solver = to_string(result.solver);
  tf.cut = to_string(result.cut_kind);
  tf.seed = flags.seed;
  if (!out.empty()) io::write_json_file(out, io::tree_file_to_json(tf));
  std::cout.precision(17);
  std::cout << "tree " << to_string(result.tree) << "\nvalue " << result.value << '\n';
  if (!truth_path.empty()) {
    auto truth = io::truth_from_json(io::read_json_file(truth_path));
    require_same_size(truth.clustering.size(), space.size(), "truth");
    auto choice = best_flat_by_ari(result.tree, truth.clustering, truth.order);
    std::cout << "ari " << choice.report.ari << "\ndelta_good " << choice.report.delta_good << "\nloops "
              << choice.report.loops << '\n';
  }
  return kOk;
}

int cmd_synth(const std::string& kind, const SynthFlags& flags, std::uint64_t seed, const std::string& out,
              const std::string& truth_out) {
  auto inst = kind == "bpp" ? flags.make_bpp(seed) : flags.make_copypaste(seed);
  io::write_json_file(out, io::space_to_json(inst.space));
  io::write_json_file(truth_out.empty() ? out + ".truth.json" : truth_out, io::truth_to_json(inst.truth));
  return kOk;
}

int cmd_eval(const std::string& tree_path, const std::string& space_path, const std::string& truth_path,
             const std::string& out, const std::string& config_hash) {
  auto tf = io::tree_file_from_json(io::read_json_file(tree_path));
  auto space = io::space_from_json(io::read_json_file(space_path));
  auto truth = io::truth_from_json(io::read_json_file(truth_path));
  require_same_size(tf.tree.universe(), space.size(), "tree and space");
  require_same_size(truth.clustering.size(), space.size(), "truth and space");
  if (!tf.tree.covers_universe()) throw domain_error("tree does not cover every element");
  auto choice = best_flat_by_ari(tf.tree, truth.clustering, truth.order);
  io::ReportFile rf;
  rf.report = choice.report;
  rf.level_blocks = choice.clustering.blocks();
  rf.config_hash = config_hash;
  rf.seed = tf.seed;
  const auto doc = io::report_to_json(rf);
  if (out.empty()) std::cout << doc.dump(2) << '\n';
  else io::write_json_file(out, doc);
  return kOk;
}

struct SweepFlags {
  std::string space_path;
  std::string truth_path;
  std::string synth;
  std::vector<double> alphas;
  std::size_t grid = 50;
  double refine = 0.0;
  std::size_t replicates = 1;
  std::string out;
};

int cmd_sweep(const SweepFlags& sf, const SolverFlags& solver, const SynthFlags& synth) {
  if (sf.replicates == 0) throw domain_error("--replicates must be positive");
  if (sf.space_path.empty() == sf.synth.empty()) throw domain_error("give exactly one of a space file or --synth");
  const auto cfg = solver.config();

  std::optional<OrderedSimilaritySpace> fixed_space;
  std::optional<PlantedTruth> fixed_truth;
  if (!sf.space_path.empty()) {
    fixed_space = io::space_from_json(io::read_json_file(sf.space_path));
    if (!sf.truth_path.empty()) {
      fixed_truth = io::truth_from_json(io::read_json_file(sf.truth_path));
      require_same_size(fixed_truth->clustering.size(), fixed_space->size(), "truth and space");
    }
  }
  auto instance = [&](std::size_t r) -> PlantedInstance {
    if (fixed_space) return {*fixed_space, fixed_truth.value_or(PlantedTruth{})};
    const auto seed = solver.seed + r;
    return sf.synth == "bpp" ? synth.make_bpp(seed) : synth.make_copypaste(seed);
  };
  const bool with_truth = !fixed_space || fixed_truth.has_value();

  std::vector<double> grid = sf.alphas;
  if (sf.refine > 0.0) {
    // Region boundaries of the first replicate, plus both ends.
    auto first = instance(0);
    grid = {0.0};
    for (double b : refine_alpha(first.space, 0.0, 1.0, sf.refine, cfg)) grid.push_back(b);
    grid.push_back(1.0);
  } else if (grid.empty()) {
    grid = default_alpha_grid(sf.grid);
  }

  std::vector<SweepRow> rows;
  bool capacity_failed = false;
  for (std::size_t r = 0; r < sf.replicates; ++r) {
    auto inst = instance(r);
    auto rep_cfg = cfg;
    rep_cfg.seed = cfg.seed + r;
    auto points = sweep_alpha(inst.space, grid, rep_cfg, with_truth ? &inst.truth : nullptr);
    for (const auto& p : points) {
      if (!p.ok()) {
        capacity_failed = true;
        std::cerr << "alpha " << p.alpha << ": " << p.error << '\n';
      }
      rows.push_back(to_row(p, std::to_string(r)));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.alpha < b.alpha; });
  auto means = mean_rows(rows);
  rows.insert(rows.end(), means.begin(), means.end());

  if (sf.out.empty()) {
    write_sweep_csv(std::cout, rows);
  } else {
    std::ofstream os(sf.out);
    if (!os) throw domain_error("cannot write " + sf.out);
    write_sweep_csv(os, rows);
  }
  if (with_truth) std::cerr << "best alpha by mean ari: " << best_alpha_by_mean_ari(means) << '\n';
  return capacity_failed ? kCapacityError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-preserving hierarchical clustering"};
  app.set_version_flag("--version", std::string(io::kVersion));
  app.require_subcommand(1);

  SolverFlags solver_flags;
  SynthFlags synth_flags;

  auto* cluster = app.add_subcommand("cluster", "build a tree for a space file");
  std::string cluster_space, cluster_out, cluster_truth;
  double cluster_alpha = 0.5;
  cluster->add_option("space", cluster_space, "space JSON")->required();
  cluster->add_option("--alpha", cluster_alpha, "weight on the similarity part")->capture_default_str();
  cluster->add_option("--out", cluster_out, "tree JSON to write");
  cluster->add_option("--truth", cluster_truth, "truth JSON for quality figures");
  solver_flags.add_to(cluster);

  auto* synth = app.add_subcommand("synth", "generate a planted instance");
  synth->require_subcommand(1);
  std::uint64_t synth_seed = 0;
  std::string synth_out, synth_truth;
  auto* bpp = synth->add_subcommand("bpp", "planted bipartite order");
  auto* copypaste = synth->add_subcommand("copypaste", "copy-paste partition");
  synth_flags.add_bpp(bpp);
  synth_flags.add_copypaste(copypaste);
  for (auto* c : {bpp, copypaste}) {
    c->add_option("--seed", synth_seed, "generator seed")->capture_default_str();
    c->add_option("--out", synth_out, "space JSON to write")->required();
    c->add_option("--truth-out", synth_truth, "truth JSON to write (default: <out>.truth.json)");
  }

  auto* eval = app.add_subcommand("eval", "score a tree against a planted truth");
  std::string eval_tree, eval_space, eval_truth, eval_out;
  eval->add_option("tree", eval_tree, "tree JSON")->required();
  eval->add_option("space", eval_space, "space JSON")->required();
  eval->add_option("truth", eval_truth, "truth JSON")->required();
  eval->add_option("--out", eval_out, "report JSON to write (default: stdout)");

  auto* sweep = app.add_subcommand("sweep", "sweep alpha and write CSV");
  SweepFlags sweep_flags;
  SolverFlags sweep_solver;
  SynthFlags sweep_synth;
  sweep->add_option("space", sweep_flags.space_path, "space JSON");
  sweep->add_option("--truth", sweep_flags.truth_path, "truth JSON for quality columns");
  sweep->add_option("--synth", sweep_flags.synth, "generate a fresh instance per replicate")
      ->check(CLI::IsMember({"bpp", "copypaste"}));
  auto* alphas_opt = sweep->add_option("--alphas", sweep_flags.alphas, "explicit alpha values")->delimiter(',');
  sweep->add_option("--grid", sweep_flags.grid, "evenly spaced grid size")->capture_default_str()->excludes(alphas_opt);
  sweep->add_option("--refine", sweep_flags.refine, "locate region boundaries to this tolerance")->excludes(alphas_opt);
  sweep->add_option("--replicates", sweep_flags.replicates, "replicates per alpha")->capture_default_str();
  sweep->add_option("--out", sweep_flags.out, "CSV to write (default: stdout)");
  sweep_solver.add_to(sweep);
  sweep_synth.add_bpp(sweep);
  sweep_synth.add_copypaste(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*cluster) return cmd_cluster(cluster_space, cluster_alpha, solver_flags, cluster_out, cluster_truth);
    if (*bpp) return cmd_synth("bpp", synth_flags, synth_seed, synth_out, synth_truth);
    if (*copypaste) return cmd_synth("copypaste", synth_flags, synth_seed, synth_out, synth_truth);
    if (*eval) return cmd_eval(eval_tree, eval_space, eval_truth, eval_out, io::fnv1a_hex(joined_args(argc, argv)));
    if (*sweep) return cmd_sweep(sweep_flags, sweep_solver, sweep_synth);
  } catch (const capacity_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCapacityError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
