#include "solarcast/models/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "solarcast/parallel.hpp"
#include "solarcast/rng.hpp"

namespace solarcast {

namespace {

struct TreeBuilder {
    const Matrix& x;
    const std::vector<int>& y;
    int k;
    const ForestParams& params;
    int features_per_split;
    SplitMix64 rng;
    Tree tree;

    std::vector<int> draw_features() {
        const int d = static_cast<int>(x.cols);
        std::vector<int> all(static_cast<std::size_t>(d));
        std::iota(all.begin(), all.end(), 0);
        const int take = std::min(features_per_split, d);
        // Partial Fisher-Yates, then ascending order for the tie rule.
        for (int i = 0; i < take; ++i) {
            const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - i)));
            std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
        }
        all.resize(static_cast<std::size_t>(take));
        std::sort(all.begin(), all.end());
        return all;
    }

    std::vector<double> leaf_distribution(const std::vector<std::uint32_t>& rows) const {
        std::vector<double> counts(static_cast<std::size_t>(k), 0.0);
        for (std::uint32_t r : rows) counts[static_cast<std::size_t>(y[r])] += 1.0;
        const double total = static_cast<double>(rows.size());
        for (double& c : counts) c /= total;
        return counts;
    }

    int grow(std::vector<std::uint32_t> rows, int depth) {
        const int node_idx = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        bool pure = true;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (y[rows[i]] != y[rows[0]]) {
                pure = false;
                break;
            }

        std::optional<SplitCandidate> split;
        if (!pure && depth < params.max_depth) {
            const std::vector<int> features = draw_features();
            split = best_split_gini(x, y, k, rows, features, params.min_samples_leaf);
        }
        if (!split) {
            tree.nodes[static_cast<std::size_t>(node_idx)].value = leaf_distribution(rows);
            return node_idx;
        }

        std::vector<std::uint32_t> left, right;
        left.reserve(rows.size());
        right.reserve(rows.size());
        for (std::uint32_t r : rows) {
            if (x.at(r, static_cast<std::size_t>(split->feature)) < split->threshold)
                left.push_back(r);
            else
                right.push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        const int left_idx = grow(std::move(left), depth + 1);
        const int right_idx = grow(std::move(right), depth + 1);
        TreeNode& node = tree.nodes[static_cast<std::size_t>(node_idx)];
        node.feature = split->feature;
        node.threshold = split->threshold;
        node.left = left_idx;
        node.right = right_idx;
        return node_idx;
    }
};

}  // namespace

std::vector<double> ForestModel::predict_proba(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(n_features))
        throw std::invalid_argument("forest: feature vector has wrong length");
    std::vector<double> probs(static_cast<std::size_t>(n_classes), 0.0);
    for (const Tree& tree : trees) {
        const TreeNode& leaf = tree.leaf_for(x);
        for (std::size_t c = 0; c < probs.size(); ++c) probs[c] += leaf.value[c];
    }
    for (double& p : probs) p /= static_cast<double>(trees.size());
    return probs;
}

ForestModel train_forest(const LabeledDataset& dataset, const ForestParams& params,
                         std::uint64_t seed, unsigned threads) {
    dataset.validate();
    if (params.n_trees < 1) throw std::invalid_argument("forest: n_trees must be >= 1");
    if (params.max_depth < 0) throw std::invalid_argument("forest: max_depth must be >= 0");

    const int d = static_cast<int>(dataset.n_features());
    const int per_split = params.features_per_split > 0
                              ? params.features_per_split
                              : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));

    ForestModel model;
    model.n_classes = dataset.n_classes();
    model.n_features = d;
    model.params = params;
    model.seed = seed;
    model.class_names = dataset.class_names;
    model.trees.resize(static_cast<std::size_t>(params.n_trees));

    const std::size_t n = dataset.n_samples();
    parallel_for(model.trees.size(), threads, [&](std::size_t t) {
        SplitMix64 rng(derive_seed(seed, t));
        std::vector<std::uint32_t> bootstrap(n);
        for (std::size_t i = 0; i < n; ++i)
            bootstrap[i] = static_cast<std::uint32_t>(rng.below(n));

        TreeBuilder builder{dataset.features, dataset.labels, model.n_classes,
                            params,           per_split,      rng,
                            Tree{}};
        builder.grow(std::move(bootstrap), 0);
        model.trees[t] = std::move(builder.tree);
    });
    return model;
}

}  // namespace solarcast
