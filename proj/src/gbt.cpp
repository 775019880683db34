#include "solarcast/models/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "solarcast/models/logistic.hpp"
#include "solarcast/parallel.hpp"

namespace solarcast {

namespace {

// Per-node state during growth: each feature's row list, kept in (value, row)
// order by stable partitioning from the parent.
struct NodeRows {
    std::vector<std::vector<std::uint32_t>> by_feature;

    std::size_t size() const { return by_feature.empty() ? 0 : by_feature[0].size(); }
};

struct GbtTreeBuilder {
    const Matrix& x;
    std::span<const double> grad;
    std::span<const double> hess;
    const GbtParams& params;
    std::vector<char>& side;  // scratch, one byte per dataset row
    Tree tree;

    double leaf_value(const std::vector<std::uint32_t>& rows_any_order) const {
        double g = 0.0, h = 0.0;
        for (std::uint32_t r : rows_any_order) {
            g += grad[r];
            h += hess[r];
        }
        return params.learning_rate * gbt_leaf_weight(g, h, params.lambda);
    }

    int grow(NodeRows rows, int depth) {
        const int node_idx = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        std::optional<SplitCandidate> split;
        if (depth < params.max_depth && rows.size() >= 2) {
            for (std::size_t f = 0; f < x.cols; ++f)
                scan_split_gbt(x, static_cast<int>(f), rows.by_feature[f], grad, hess,
                               params.lambda, params.gamma, params.min_child_weight, split);
            if (split && !(split->gain > 0.0)) split.reset();
        }
        if (!split) {
            tree.nodes[static_cast<std::size_t>(node_idx)].value = {leaf_value(rows.by_feature[0])};
            return node_idx;
        }

        const std::size_t sf = static_cast<std::size_t>(split->feature);
        for (std::uint32_t r : rows.by_feature[sf])
            side[r] = x.at(r, sf) < split->threshold ? 0 : 1;

        NodeRows left, right;
        left.by_feature.resize(x.cols);
        right.by_feature.resize(x.cols);
        for (std::size_t f = 0; f < x.cols; ++f) {
            for (std::uint32_t r : rows.by_feature[f])
                (side[r] == 0 ? left.by_feature[f] : right.by_feature[f]).push_back(r);
            rows.by_feature[f].clear();
            rows.by_feature[f].shrink_to_fit();
        }

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

std::vector<double> GbtModel::predict_proba(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(n_features))
        throw std::invalid_argument("gbt: feature vector has wrong length");
    std::vector<double> logits(static_cast<std::size_t>(n_classes), base_score);
    const std::size_t k = static_cast<std::size_t>(n_classes);
    for (std::size_t t = 0; t < trees.size(); ++t)
        logits[t % k] += trees[t].leaf_for(x).value[0];
    return softmax(logits);
}

GbtModel train_gbt(const LabeledDataset& dataset, const GbtParams& params, unsigned threads) {
    dataset.validate();
    if (params.rounds < 0) throw std::invalid_argument("gbt: rounds must be >= 0");
    if (params.learning_rate <= 0.0 || params.learning_rate > 1.0)
        throw std::invalid_argument("gbt: learning_rate must be in (0,1]");
    if (params.lambda < 0.0 || params.gamma < 0.0)
        throw std::invalid_argument("gbt: lambda and gamma must be >= 0");

    const std::size_t n = dataset.n_samples();
    const std::size_t k = static_cast<std::size_t>(dataset.n_classes());

    GbtModel model;
    model.n_classes = static_cast<int>(k);
    model.n_features = static_cast<int>(dataset.n_features());
    model.params = params;
    model.class_names = dataset.class_names;

    const SortedFeatureIndex sorted = SortedFeatureIndex::build(dataset.features);

    Matrix logits(n, k, model.base_score);
    Matrix probs(n, k);
    auto refresh_probs_and_loss = [&]() {
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::vector<double> p = softmax(logits.row(i));
            for (std::size_t c = 0; c < k; ++c) probs.at(i, c) = p[c];
            loss -= std::log(std::max(p[static_cast<std::size_t>(dataset.labels[i])], 1e-300));
        }
        return loss / static_cast<double>(n);
    };
    model.train_log_loss.push_back(refresh_probs_and_loss());

    std::vector<std::vector<double>> g(k, std::vector<double>(n));
    std::vector<std::vector<double>> h(k, std::vector<double>(n));
    std::vector<std::vector<char>> side(k, std::vector<char>(n, 0));

    for (int round = 0; round < params.rounds; ++round) {
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t i = 0; i < n; ++i) {
                const double p = probs.at(i, c);
                g[c][i] = p - (dataset.labels[i] == static_cast<int>(c) ? 1.0 : 0.0);
                h[c][i] = p * (1.0 - p);
            }

        std::vector<Tree> round_trees(k);
        parallel_for(k, threads, [&](std::size_t c) {
            NodeRows root;
            root.by_feature = sorted.by_feature;
            GbtTreeBuilder builder{dataset.features, g[c], h[c], params, side[c], Tree{}};
            builder.grow(std::move(root), 0);
            round_trees[c] = std::move(builder.tree);
        });

        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t i = 0; i < n; ++i)
                logits.at(i, c) += round_trees[c].leaf_for(dataset.features.row(i)).value[0];
            model.trees.push_back(std::move(round_trees[c]));
        }
        model.train_log_loss.push_back(refresh_probs_and_loss());
    }
    return model;
}

}  // namespace solarcast
