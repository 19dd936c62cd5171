#pragma once

// JSON documents for spaces, trees, truths and quality reports.

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ophc/metrics.hpp"
#include "ophc/objective.hpp"
#include "ophc/solvers.hpp"
#include "ophc/synth.hpp"

namespace ophc::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "1.0.0";

/// FNV-1a over a string, as 16 hex digits.
inline std::string fnv1a_hex(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw domain_error(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw domain_error("cannot write " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw domain_error("write failed for " + path);
}

namespace detail {

inline std::size_t index_at(const json& j, std::size_t n, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw domain_error(std::string(what) + ": index is not an integer");
  auto v = j.get<long long>();
  if (v < 0 || static_cast<std::size_t>(v) >= n) throw domain_error(std::string(what) + ": index out of range");
  return static_cast<std::size_t>(v);
}

inline double unit_value(const json& j, const char* what) {
  if (!j.is_number()) throw domain_error(std::string(what) + ": value is not a number");
  double v = j.get<double>();
  if (!(v >= 0.0 && v <= 1.0)) throw domain_error(std::string(what) + ": value outside [0,1]");
  return v;
}

// Reads {"dense": [...]} or {"triples": [[i, j, v], ...]} into m; returns
// whether triples were used.
inline bool read_matrix(const json& j, SquareMatrix<double>& m, const char* what) {
  const std::size_t n = m.size();
  if (!j.is_object()) throw domain_error(std::string(what) + ": expected an object");
  if (j.contains("dense")) {
    const auto& d = j.at("dense");
    if (!d.is_array() || d.size() != n * n) throw domain_error(std::string(what) + ": dense array must have n*n entries");
    for (std::size_t k = 0; k < n * n; ++k) m(k / n, k % n) = unit_value(d[k], what);
    return false;
  }
  if (j.contains("triples")) {
    for (const auto& t : j.at("triples")) {
      if (!t.is_array() || t.size() != 3) throw domain_error(std::string(what) + ": triple must be [i, j, v]");
      auto x = index_at(t[0], n, what), y = index_at(t[1], n, what);
      m(x, y) = unit_value(t[2], what);
    }
    return true;
  }
  throw domain_error(std::string(what) + ": expected \"dense\" or \"triples\"");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Space file.

inline json space_to_json(const OrderedSimilaritySpace& space) {
  const std::size_t n = space.size();
  json j;
  j["n"] = n;
  if (space.has_labels()) j["labels"] = space.labels();
  json dense = json::array();
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y) dense.push_back(space.similarity()(x, y));
  j["similarity"] = {{"dense", dense}};
  json triples = json::array();
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y)
      if (x != y && space.omega()(x, y) != 0.0) triples.push_back({x, y, space.omega()(x, y)});
  j["omega"] = {{"triples", triples}};
  return j;
}

/// Similarity triples are symmetrised: (i, j, v) also sets (j, i).
inline OrderedSimilaritySpace space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n")) throw domain_error("space: missing \"n\"");
  if (!j.at("n").is_number_unsigned() && !j.at("n").is_number_integer()) throw domain_error("space: \"n\" must be an integer");
  const auto n_signed = j.at("n").get<long long>();
  if (n_signed < 1) throw domain_error("space: \"n\" must be positive");
  const auto n = static_cast<std::size_t>(n_signed);
  SquareMatrix<double> s(n, 0.0), w(n, 0.0);
  if (j.contains("similarity")) {
    if (detail::read_matrix(j.at("similarity"), s, "similarity")) {
      SquareMatrix<double> sym = s;
      for (ElementId x = 0; x < n; ++x)
        for (ElementId y = 0; y < n; ++y)
          if (s(x, y) != 0.0) {
            if (s(y, x) != 0.0 && s(y, x) != s(x, y))
              throw domain_error("similarity: conflicting triples for (" + std::to_string(x) + "," + std::to_string(y) + ")");
            sym(y, x) = s(x, y);
          }
      s = std::move(sym);
    }
  }
  if (j.contains("omega")) detail::read_matrix(j.at("omega"), w, "omega");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j.at("labels").get<std::vector<std::string>>();
    if (labels.size() != n) throw domain_error("space: label count does not match n");
  }
  return OrderedSimilaritySpace(Similarity(std::move(s)), RelaxedOrder(std::move(w)), std::move(labels));
}

// ---------------------------------------------------------------------------
// Tree file.

inline json tree_node_to_json(const OrientedBinaryTree& t, TreeNodeIndex i) {
  const auto& n = t.node(i);
  if (n.is_leaf()) return {{"leaf", n.element}};
  return {{"left", tree_node_to_json(t, n.left)}, {"right", tree_node_to_json(t, n.right)}};
}

inline OrientedBinaryTree tree_node_from_json(const json& j, std::size_t n) {
  if (!j.is_object()) throw domain_error("tree: node must be an object");
  if (j.contains("leaf")) return OrientedBinaryTree::leaf(n, detail::index_at(j.at("leaf"), n, "tree"));
  if (!j.contains("left") || !j.contains("right")) throw domain_error("tree: node needs \"leaf\" or \"left\"/\"right\"");
  return OrientedBinaryTree::join(tree_node_from_json(j.at("left"), n), tree_node_from_json(j.at("right"), n));
}

struct TreeFile {
  OrientedBinaryTree tree;
  std::string objective = "val_alpha";
  double alpha = 0.0;
  double value = 0.0;
  std::string solver = "exact";
  std::string cut = "none";
  std::uint64_t seed = 0;

  friend bool operator==(const TreeFile&, const TreeFile&) = default;
};

inline json tree_file_to_json(const TreeFile& f) {
  return {{"n", f.tree.universe()},
          {"tree", tree_node_to_json(f.tree, f.tree.root())},
          {"objective", f.objective},
          {"alpha", f.alpha},
          {"value", f.value},
          {"solver", f.solver},
          {"cut", f.cut},
          {"seed", f.seed}};
}

inline TreeFile tree_file_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("tree")) throw domain_error("tree file: needs \"n\" and \"tree\"");
  TreeFile f;
  f.tree = tree_node_from_json(j.at("tree"), j.at("n").get<std::size_t>());
  f.objective = j.value("objective", f.objective);
  f.alpha = j.value("alpha", f.alpha);
  f.value = j.value("value", f.value);
  f.solver = j.value("solver", f.solver);
  f.cut = j.value("cut", f.cut);
  f.seed = j.value("seed", f.seed);
  return f;
}

// ---------------------------------------------------------------------------
// Truth file.

inline json truth_to_json(const PlantedTruth& t) {
  json j;
  j["n"] = t.clustering.size();
  j["blocks"] = t.clustering.blocks();
  json pairs = json::array();
  for (auto [x, y] : t.order.edges()) pairs.push_back({x, y});
  j["order"] = pairs;
  if (t.blocks) j["split"] = {{"a", t.blocks->a.elements()}, {"b", t.blocks->b.elements()}};
  return j;
}

inline PlantedTruth truth_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("blocks")) throw domain_error("truth: needs \"n\" and \"blocks\"");
  const auto n = j.at("n").get<std::size_t>();
  PlantedTruth t;
  t.clustering = Clustering::from_blocks(n, j.at("blocks").get<std::vector<std::vector<ElementId>>>());
  t.order = CrispRelation(n);
  if (j.contains("order"))
    for (const auto& p : j.at("order")) {
      if (!p.is_array() || p.size() != 2) throw domain_error("truth: order entries must be [x, y]");
      t.order.add(detail::index_at(p[0], n, "truth"), detail::index_at(p[1], n, "truth"));
    }
  if (j.contains("split")) {
    const auto& s = j.at("split");
    t.blocks = OrderedSplit(ElementSet::from_range(n, s.at("a").get<std::vector<ElementId>>()),
                            ElementSet::from_range(n, s.at("b").get<std::vector<ElementId>>()));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Report file.

struct ReportFile {
  QualityReport report;
  std::vector<std::vector<ElementId>> level_blocks;  // the chosen flat clustering
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  int schema_version = kSchemaVersion;

  friend bool operator==(const ReportFile& a, const ReportFile& b) {
    return a.report.ari == b.report.ari && a.report.order_agreement == b.report.order_agreement &&
           a.report.loops == b.report.loops && a.report.delta_good == b.report.delta_good &&
           a.report.chosen_t == b.report.chosen_t && a.level_blocks == b.level_blocks &&
           a.config_hash == b.config_hash && a.seed == b.seed && a.version == b.version &&
           a.schema_version == b.schema_version;
  }
};

inline json report_to_json(const ReportFile& r) {
  return {{"schema_version", r.schema_version},
          {"report",
           {{"ari", r.report.ari},
            {"order_agreement", r.report.order_agreement},
            {"loops", r.report.loops},
            {"delta_good", r.report.delta_good},
            {"chosen_t", r.report.chosen_t}}},
          {"level_blocks", r.level_blocks},
          {"provenance", {{"config_hash", r.config_hash}, {"seed", r.seed}, {"version", r.version}}},
          {"notes",
           "ari is the standard adjusted Rand index; order_agreement is pair-class agreement of induced relations"}};
}

inline ReportFile report_from_json(const json& j) {
  ReportFile r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kSchemaVersion)
    throw domain_error("report: unsupported schema version " + std::to_string(r.schema_version));
  const auto& q = j.at("report");
  r.report.ari = q.at("ari").get<double>();
  r.report.order_agreement = q.at("order_agreement").get<double>();
  r.report.loops = q.at("loops").get<double>();
  r.report.delta_good = q.at("delta_good").get<double>();
  r.report.chosen_t = q.at("chosen_t").get<double>();
  r.level_blocks = j.at("level_blocks").get<std::vector<std::vector<ElementId>>>();
  const auto& p = j.at("provenance");
  r.config_hash = p.at("config_hash").get<std::string>();
  r.seed = p.at("seed").get<std::uint64_t>();
  r.version = p.at("version").get<std::string>();
  return r;
}

}  // namespace ophc::io
