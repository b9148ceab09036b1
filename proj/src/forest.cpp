#include "ctscan/forest.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <thread>

#include "ctscan/error.hpp"
#include "ctscan/features.hpp"

namespace ctscan::forest {

namespace {

constexpr double kEulerMascheroni = 0.5772156649;
constexpr std::int64_t kExactHarmonicLimit = 10000;

double harmonic(std::int64_t k) {
  if (k <= kExactHarmonicLimit) {
    double h = 0.0;
    for (std::int64_t i = 1; i <= k; ++i) h += 1.0 / static_cast<double>(i);
    return h;
  }
  return std::log(static_cast<double>(k)) + kEulerMascheroni;
}

void run_on_workers(std::size_t n_items, const std::function<void(std::size_t)>& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>(hw, n_items);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n_items; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_items) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
}

nlohmann::json node_to_json(const Tree& tree, int index) {
  const TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
  if (node.is_leaf()) {
    return nlohmann::json{{"n", node.leaf_size}};
  }
  return nlohmann::json{{"f", node.feature},
                        {"s", node.split},
                        {"l", node_to_json(tree, node.left)},
                        {"r", node_to_json(tree, node.right)}};
}

int node_from_json(const nlohmann::json& doc, Tree& tree) {
  const int index = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  if (doc.contains("n")) {
    tree.nodes[static_cast<std::size_t>(index)].leaf_size = doc.at("n").get<int>();
    return index;
  }
  TreeNode node;
  node.feature = doc.at("f").get<int>();
  node.split = doc.at("s").get<double>();
  node.left = node_from_json(doc.at("l"), tree);
  node.right = node_from_json(doc.at("r"), tree);
  tree.nodes[static_cast<std::size_t>(index)] = node;
  return index;
}

}  // namespace

double avg_path_c(std::int64_t n) {
  if (n <= 1) return 0.0;
  if (n == 2) return 1.0;
  return 2.0 * harmonic(n - 1) -
         2.0 * static_cast<double>(n - 1) / static_cast<double>(n);
}

double anomaly_score(double mean_path, double c_psi) {
  return std::exp2(-mean_path / c_psi);
}

Tree build_tree(const Eigen::Ref<const Eigen::MatrixXd>& data,
                std::vector<std::uint32_t> rows, int height_limit, Rng& rng,
                const std::vector<int>& candidate_features) {
  Tree tree;

  auto make_leaf = [&tree](std::size_t size) {
    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes.back().leaf_size = static_cast<int>(size);
    return index;
  };

  // Returns the index of the subtree root for `rows` at `depth`.
  std::function<int(std::vector<std::uint32_t>&, int)> grow =
      [&](std::vector<std::uint32_t>& node_rows, int depth) -> int {
    if (depth >= height_limit || node_rows.size() <= 1) {
      return make_leaf(node_rows.size());
    }

    std::vector<int> splittable;
    for (const int f : candidate_features) {
      double lo = data(node_rows[0], f);
      double hi = lo;
      for (const std::uint32_t r : node_rows) {
        const double v = data(r, f);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (lo < hi) splittable.push_back(f);
    }
    if (splittable.empty()) {
      return make_leaf(node_rows.size());
    }

    const int feature =
        splittable[static_cast<std::size_t>(rng.below(splittable.size()))];
    double lo = data(node_rows[0], feature);
    double hi = lo;
    for (const std::uint32_t r : node_rows) {
      const double v = data(r, feature);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }

    // Split strictly inside (lo, hi); when no representable value exists
    // between two adjacent doubles the node degenerates to a leaf.
    double split = 0.0;
    bool found = false;
    for (int attempt = 0; attempt < 64 && !found; ++attempt) {
      split = rng.uniform(lo, hi);
      found = lo < split && split < hi;
    }
    if (!found) {
      split = lo + (hi - lo) / 2.0;
      found = lo < split && split < hi;
    }
    if (!found) {
      return make_leaf(node_rows.size());
    }

    std::vector<std::uint32_t> left_rows;
    std::vector<std::uint32_t> right_rows;
    for (const std::uint32_t r : node_rows) {
      (data(r, feature) < split ? left_rows : right_rows).push_back(r);
    }
    node_rows.clear();
    node_rows.shrink_to_fit();

    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const int left = grow(left_rows, depth + 1);
    const int right = grow(right_rows, depth + 1);
    TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
    node.feature = feature;
    node.split = split;
    node.left = left;
    node.right = right;
    return index;
  };

  grow(rows, 0);
  return tree;
}

ForestModel fit(const Eigen::Ref<const Eigen::MatrixXd>& data,
                const HyperParams& params,
                std::vector<std::string> feature_order) {
  const Eigen::Index n_rows = data.rows();
  const Eigen::Index n_cols = data.cols();
  if (n_rows < 2) {
    throw DataError("isolation forest needs at least 2 rows, got " +
                    std::to_string(n_rows));
  }
  if (params.n_trees < 1 || params.psi < 2 || params.n_features_per_tree < 1) {
    throw UsageError("invalid isolation forest hyperparameters");
  }

  ForestModel model;
  model.params = params;
  model.psi_effective = static_cast<int>(
      std::min<Eigen::Index>(params.psi, n_rows));
  model.c_psi = avg_path_c(model.psi_effective);
  if (feature_order.empty() && n_cols == features::kFeatureCount) {
    feature_order.assign(features::kFeatureNames.begin(),
                         features::kFeatureNames.end());
  }
  model.feature_order = std::move(feature_order);

  const int height_limit =
      model.psi_effective <= 1
          ? 0
          : std::bit_width(static_cast<unsigned>(model.psi_effective - 1));
  const int features_per_tree = static_cast<int>(
      std::min<Eigen::Index>(params.n_features_per_tree, n_cols));

  std::vector<int> all_features(static_cast<std::size_t>(n_cols));
  std::iota(all_features.begin(), all_features.end(), 0);

  model.trees.resize(static_cast<std::size_t>(params.n_trees));
  run_on_workers(model.trees.size(), [&](std::size_t i) {
    // Substream i: adding trees never perturbs earlier ones.
    Rng rng = Rng::substream(params.seed, i);
    const std::vector<std::uint64_t> sampled = sample_without_replacement(
        static_cast<std::uint64_t>(n_rows),
        static_cast<std::uint64_t>(model.psi_effective), rng);
    std::vector<std::uint32_t> rows(sampled.begin(), sampled.end());

    std::vector<int> tree_features = all_features;
    if (features_per_tree < n_cols) {
      const std::vector<std::uint64_t> picked = sample_without_replacement(
          static_cast<std::uint64_t>(n_cols),
          static_cast<std::uint64_t>(features_per_tree), rng);
      tree_features.assign(picked.begin(), picked.end());
    }

    model.trees[i] =
        build_tree(data, std::move(rows), height_limit, rng, tree_features);
  });

  return model;
}

double path_length(const Tree& tree,
                   const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  int index = 0;
  int depth = 0;
  for (;;) {
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
    if (node.is_leaf()) {
      return static_cast<double>(depth) + avg_path_c(node.leaf_size);
    }
    index = x[node.feature] < node.split ? node.left : node.right;
    ++depth;
  }
}

double score(const ForestModel& model,
             const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  double total = 0.0;
  for (const Tree& tree : model.trees) {
    total += path_length(tree, x);
  }
  return anomaly_score(total / static_cast<double>(model.trees.size()),
                       model.c_psi);
}

Eigen::VectorXd score_all(const ForestModel& model,
                          const Eigen::Ref<const Eigen::MatrixXd>& data) {
  Eigen::VectorXd scores(data.rows());
  run_on_workers(static_cast<std::size_t>(data.rows()), [&](std::size_t i) {
    scores[static_cast<Eigen::Index>(i)] =
        score(model, data.row(static_cast<Eigen::Index>(i)));
  });
  return scores;
}

std::vector<std::pair<Eigen::Index, double>> rank(
    const ForestModel& model, const Eigen::Ref<const Eigen::MatrixXd>& data,
    std::size_t top_n) {
  const Eigen::VectorXd scores = score_all(model, data);
  std::vector<std::pair<Eigen::Index, double>> order;
  order.reserve(static_cast<std::size_t>(data.rows()));
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    order.emplace_back(i, scores[i]);
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (order.size() > top_n) order.resize(top_n);
  return order;
}

nlohmann::json to_json(const ForestModel& model) {
  nlohmann::json trees = nlohmann::json::array();
  for (const Tree& tree : model.trees) {
    trees.push_back(node_to_json(tree, 0));
  }
  return nlohmann::json{
      {"params",
       {{"n_trees", model.params.n_trees},
        {"psi", model.params.psi},
        {"n_features_per_tree", model.params.n_features_per_tree},
        {"seed", model.params.seed}}},
      {"psi_effective", model.psi_effective},
      {"c_psi", model.c_psi},
      {"feature_order", model.feature_order},
      {"trees", std::move(trees)}};
}

ForestModel model_from_json(const nlohmann::json& doc) {
  try {
    ForestModel model;
    const nlohmann::json& p = doc.at("params");
    model.params.n_trees = p.at("n_trees").get<int>();
    model.params.psi = p.at("psi").get<int>();
    model.params.n_features_per_tree = p.at("n_features_per_tree").get<int>();
    model.params.seed = p.at("seed").get<std::uint64_t>();
    model.psi_effective = doc.at("psi_effective").get<int>();
    model.c_psi = doc.at("c_psi").get<double>();
    model.feature_order =
        doc.at("feature_order").get<std::vector<std::string>>();
    for (const nlohmann::json& tree_doc : doc.at("trees")) {
      Tree tree;
      node_from_json(tree_doc, tree);
      model.trees.push_back(std::move(tree));
    }
    if (model.trees.empty()) throw DataError("model has no trees");
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model JSON: ") + e.what());
  }
}

void save_model(const ForestModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model to " + path.string());
  out << to_json(model).dump() << '\n';
}

ForestModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read model from " + path.string());
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) {
    throw DataError("model file " + path.string() + " is not valid JSON");
  }
  return model_from_json(doc);
}

}  // namespace ctscan::forest
