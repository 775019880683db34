#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solarcast/dataset.hpp"
#include "solarcast/models/tree.hpp"

namespace solarcast {

struct ForestParams {
    int n_trees = 100;
    int max_depth = 12;
    int min_samples_leaf = 1;
    int features_per_split = 0;  // 0 = ceil(sqrt(D))
};

struct ForestModel {
    int n_classes = 0;
    int n_features = 0;
    ForestParams params;
    std::uint64_t seed = 0;
    std::vector<Tree> trees;  // leaves hold class distributions
    std::vector<std::string> class_names;

    std::vector<double> predict_proba(std::span<const double> x) const;
};

/// CART trees on bootstrap samples (n draws with replacement per tree), with
/// features_per_split candidates redrawn at every node. Tree t derives its
/// own RNG stream from (seed, t), so training parallelized across trees is
/// identical to the sequential run.
ForestModel train_forest(const LabeledDataset& dataset, const ForestParams& params,
                         std::uint64_t seed, unsigned threads = 1);

}  // namespace solarcast
