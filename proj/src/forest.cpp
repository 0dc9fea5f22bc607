#include "cremer/forest.hpp"

#include "cremer/errors.hpp"
#include "cremer/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace cremer::forest {

namespace {

double gini(double w0, double w1) {
    const double w = w0 + w1;
    if (w <= 0.0) return 0.0;
    const double p1 = w1 / w;
    return 2.0 * p1 * (1.0 - p1);
}

// Split search over an index subset. Scans features ascending and thresholds
// ascending with strict improvement, which realizes the documented
// tie-breaking without extra comparisons.
std::optional<Split> best_split_on(const Eigen::Ref<const Eigen::MatrixX3d>& x,
                                   const std::vector<int>& y, const std::vector<double>& w,
                                   std::span<const std::size_t> idx,
                                   std::span<const int> features, int min_samples_leaf) {
    const std::size_t m = idx.size();
    if (m < 2) return std::nullopt;

    double total_w = 0.0, total_w1 = 0.0;
    for (std::size_t i : idx) {
        total_w += w[i];
        total_w1 += w[i] * y[i];
    }
    const double parent_gini = gini(total_w - total_w1, total_w1);

    std::optional<Split> best;
    std::vector<std::pair<double, std::size_t>> order(m);

    for (int f : features) {
        for (std::size_t j = 0; j < m; ++j)
            order[j] = {x(static_cast<Eigen::Index>(idx[j]), f), idx[j]};
        std::sort(order.begin(), order.end());

        double left_w = 0.0, left_w1 = 0.0;
        for (std::size_t j = 0; j + 1 < m; ++j) {
            const auto i = order[j].second;
            left_w += w[i];
            left_w1 += w[i] * y[i];
            if (order[j].first == order[j + 1].first) continue; // no boundary here
            const auto left_n = static_cast<int>(j + 1);
            const auto right_n = static_cast<int>(m - j - 1);
            if (left_n < min_samples_leaf || right_n < min_samples_leaf) continue;

            const double right_w = total_w - left_w;
            const double right_w1 = total_w1 - left_w1;
            const double decrease = parent_gini -
                                    (left_w / total_w) * gini(left_w - left_w1, left_w1) -
                                    (right_w / total_w) * gini(right_w - right_w1, right_w1);
            if (decrease > 0.0 && (!best || decrease > best->impurity_decrease)) {
                best = Split{f, (order[j].first + order[j + 1].first) / 2.0, decrease};
            }
        }
    }
    return best;
}

struct TreeBuilder {
    const Eigen::Ref<const Eigen::MatrixX3d>& x;
    const std::vector<int>& y;
    const std::vector<double>& w;
    const ForestParams& params;
    Rng& rng;
    Tree tree;

    int build(std::vector<std::size_t>& idx, std::size_t begin, std::size_t end, int depth) {
        double w0 = 0.0, w1 = 0.0;
        for (std::size_t j = begin; j < end; ++j) {
            w0 += w[idx[j]] * (1 - y[idx[j]]);
            w1 += w[idx[j]] * y[idx[j]];
        }

        const auto node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({});
        tree.nodes[node_id].weight0 = w0;
        tree.nodes[node_id].weight1 = w1;

        const std::size_t count = end - begin;
        const bool pure = w0 == 0.0 || w1 == 0.0;
        if (depth >= params.max_depth || pure ||
            count < 2 * static_cast<std::size_t>(params.min_samples_leaf))
            return node_id;

        // Candidate features for this node, without replacement, then sorted
        // so the tie-break stays lowest-feature-first.
        std::array<int, kFeatureCount> pool{0, 1, 2};
        for (int i = 0; i < params.features_per_split; ++i) {
            const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(kFeatureCount - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        std::array<int, kFeatureCount> candidates{};
        std::copy_n(pool.begin(), params.features_per_split, candidates.begin());
        std::sort(candidates.begin(), candidates.begin() + params.features_per_split);

        const auto split = best_split_on(
            x, y, w, std::span<const std::size_t>(idx).subspan(begin, count),
            std::span<const int>(candidates.data(), static_cast<std::size_t>(params.features_per_split)),
            params.min_samples_leaf);
        if (!split) return node_id;

        const auto mid = std::stable_partition(idx.begin() + static_cast<std::ptrdiff_t>(begin),
                                               idx.begin() + static_cast<std::ptrdiff_t>(end),
                                               [&](std::size_t i) {
                                                   return x(static_cast<Eigen::Index>(i),
                                                            split->feature) < split->threshold;
                                               }) -
                         idx.begin();

        tree.nodes[node_id].feature = split->feature;
        tree.nodes[node_id].threshold = split->threshold;
        const int left = build(idx, begin, static_cast<std::size_t>(mid), depth + 1);
        tree.nodes[node_id].left = left;
        const int right = build(idx, static_cast<std::size_t>(mid), end, depth + 1);
        tree.nodes[node_id].right = right;
        return node_id;
    }
};

const TreeNode& route_to_leaf(const Tree& tree, const FeatureVector& x) {
    const TreeNode* node = &tree.nodes[0];
    while (!node->is_leaf())
        node = &tree.nodes[static_cast<std::size_t>(x(node->feature) < node->threshold
                                                        ? node->left
                                                        : node->right)];
    return *node;
}

} // namespace

std::optional<Split> best_split(const Eigen::Ref<const Eigen::MatrixX3d>& x,
                                const std::vector<int>& y, const std::vector<double>& w,
                                std::span<const int> candidate_features, int min_samples_leaf) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(x.rows()));
    std::iota(idx.begin(), idx.end(), 0);
    return best_split_on(x, y, w, idx, candidate_features, min_samples_leaf);
}

Tree fit_tree(const Eigen::Ref<const Eigen::MatrixX3d>& x, const std::vector<int>& y,
              const std::vector<double>& w, const ForestParams& params, std::uint64_t seed) {
    if (x.rows() == 0) throw DomainError("cannot fit a tree on empty data");
    Rng rng(derive_seed(seed, seed_tag::kTree));
    std::vector<std::size_t> idx(static_cast<std::size_t>(x.rows()));
    std::iota(idx.begin(), idx.end(), 0);
    TreeBuilder builder{x, y, w, params, rng, {}};
    builder.build(idx, 0, idx.size(), 0);
    return std::move(builder.tree);
}

double tree_predict_proba(const Tree& tree, const FeatureVector& x) {
    const TreeNode& leaf = route_to_leaf(tree, x);
    return leaf.weight1 / (leaf.weight0 + leaf.weight1);
}

ForestModel fit_forest(const LabeledDataset& train, const ForestParams& params,
                       const ClassWeights& class_weights, std::uint64_t seed) {
    if (train.count_of(0) == 0 || train.count_of(1) == 0)
        throw DomainError("forest training needs both classes");
    if (!(class_weights.negative > 0.0) || !(class_weights.positive > 0.0))
        throw DomainError("class weights must be positive");

    const Eigen::MatrixX3d x = train.feature_matrix();
    const auto n = static_cast<std::size_t>(x.rows());

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = train.weights()[i] *
               (train.labels()[i] == 1 ? class_weights.positive : class_weights.negative);

    ForestModel model;
    model.params = params;
    model.class_weights = class_weights;
    model.rng_seed = seed;
    model.trees.reserve(static_cast<std::size_t>(params.n_trees));

    for (int t = 0; t < params.n_trees; ++t) {
        Rng rng(derive_seed(seed, seed_tag::kTree, static_cast<std::uint64_t>(t)));
        std::vector<std::size_t> idx(n);
        if (params.bootstrap) {
            for (std::size_t i = 0; i < n; ++i)
                idx[i] = static_cast<std::size_t>(rng.below(n));
        } else {
            std::iota(idx.begin(), idx.end(), 0);
        }
        TreeBuilder builder{x, train.labels(), w, params, rng, {}};
        builder.build(idx, 0, idx.size(), 0);
        model.trees.push_back(std::move(builder.tree));
    }
    return model;
}

double forest_predict_proba(const ForestModel& model, const FeatureVector& x) {
    double sum = 0.0;
    for (const Tree& tree : model.trees) sum += tree_predict_proba(tree, x);
    return sum / static_cast<double>(model.trees.size());
}

} // namespace cremer::forest
