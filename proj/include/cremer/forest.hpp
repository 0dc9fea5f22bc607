#pragma once

#include "cremer/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cremer::forest {

// Node-list tree, children linked by index (node 0 is the root). feature < 0
// marks a leaf; leaves carry weighted class counts. Routing: x[feature] <
// threshold goes left.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double weight0 = 0.0;
    double weight1 = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;
};

struct Split {
    int feature;
    double threshold;
    double impurity_decrease;
};

struct ClassWeights {
    double negative = 1.0;
    double positive = 1.0;
};

struct ForestModel {
    std::vector<Tree> trees;
    ForestParams params;
    ClassWeights class_weights;
    std::uint64_t rng_seed = 0;
};

// Best weighted-Gini split over the candidate features. Thresholds sit at
// midpoints between consecutive distinct sorted values; a split must strictly
// decrease impurity and leave min_samples_leaf samples on each side. Ties
// break to the lowest feature index, then the lowest threshold.
std::optional<Split> best_split(const Eigen::Ref<const Eigen::MatrixX3d>& x,
                                const std::vector<int>& y, const std::vector<double>& w,
                                std::span<const int> candidate_features,
                                int min_samples_leaf = 1);

// Single CART tree. At every node `features_per_split` features are drawn
// without replacement from the tree's RNG stream.
Tree fit_tree(const Eigen::Ref<const Eigen::MatrixX3d>& x, const std::vector<int>& y,
              const std::vector<double>& w, const ForestParams& params, std::uint64_t seed);

// Weighted positive fraction at the leaf x lands in.
double tree_predict_proba(const Tree& tree, const FeatureVector& x);

// Bagged forest: tree t trains on a with-replacement bootstrap drawn from a
// stream derived from (seed, t). Class weights fold into per-sample weights.
ForestModel fit_forest(const LabeledDataset& train, const ForestParams& params,
                       const ClassWeights& class_weights, std::uint64_t seed);

// Mean over trees of the leaf positive fraction.
double forest_predict_proba(const ForestModel& model, const FeatureVector& x);

} // namespace cremer::forest
