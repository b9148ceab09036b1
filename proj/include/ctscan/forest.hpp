#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ctscan/rng.hpp"

namespace ctscan::forest {

struct HyperParams {
  int n_trees = 200;
  int psi = 256;  // per-tree subsample size, clamped to the row count
  int n_features_per_tree = 16;  // 16 = all features, no subsampling
  std::uint64_t seed = 0;
};

// Flat node storage; nodes[0] is the root. Internal nodes carry a feature
// and split, leaves carry the sample count that reached them.
struct TreeNode {
  int feature = -1;
  double split = 0.0;
  int left = -1;
  int right = -1;
  int leaf_size = 0;

  bool is_leaf() const { return left < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;
};

struct ForestModel {
  HyperParams params;
  std::vector<Tree> trees;
  int psi_effective = 0;
  double c_psi = 0.0;
  std::vector<std::string> feature_order;
};

// Expected unsuccessful-search path length in a BST of n nodes: c(0)=c(1)=0,
// c(2)=1, otherwise 2*H(n-1) - 2(n-1)/n. H is the exact harmonic sum up to
// n-1 = 10,000 and ln(k) + 0.5772156649 beyond.
double avg_path_c(std::int64_t n);

// s = 2^(-mean_path / c_psi); 0.5 exactly when mean_path equals c_psi.
double anomaly_score(double mean_path, double c_psi);

// One isolation tree over the given rows. Splits pick a uniform random
// feature among those with non-constant values and a uniform split strictly
// inside (min, max); nodes with no splittable feature, a single row, or at
// the height limit become leaves.
Tree build_tree(const Eigen::Ref<const Eigen::MatrixXd>& data,
                std::vector<std::uint32_t> rows, int height_limit, Rng& rng,
                const std::vector<int>& candidate_features);

// Trains n_trees trees, each on min(psi, rows) rows sampled without
// replacement from substream i of the seed; tree construction is
// order-independent, so builds run on several threads. Throws DataError for
// fewer than 2 rows.
ForestModel fit(const Eigen::Ref<const Eigen::MatrixXd>& data,
                const HyperParams& params,
                std::vector<std::string> feature_order = {});

// Edges traversed to the reached leaf plus the avg_path_c(leaf size)
// adjustment.
double path_length(const Tree& tree, const Eigen::Ref<const Eigen::RowVectorXd>& x);

double score(const ForestModel& model,
             const Eigen::Ref<const Eigen::RowVectorXd>& x);
Eigen::VectorXd score_all(const ForestModel& model,
                          const Eigen::Ref<const Eigen::MatrixXd>& data);

// Rows sorted by score descending, ties broken by ascending row index,
// truncated to top_n.
std::vector<std::pair<Eigen::Index, double>> rank(
    const ForestModel& model, const Eigen::Ref<const Eigen::MatrixXd>& data,
    std::size_t top_n);

// JSON form: {"params": ..., "psi_effective": ..., "c_psi": ...,
// "feature_order": [...], "trees": [...]} with nodes as nested
// {"f","s","l","r"} / {"n"} objects.
nlohmann::json to_json(const ForestModel& model);
ForestModel model_from_json(const nlohmann::json& doc);

void save_model(const ForestModel& model, const std::filesystem::path& path);
ForestModel load_model(const std::filesystem::path& path);

}  // namespace ctscan::forest
