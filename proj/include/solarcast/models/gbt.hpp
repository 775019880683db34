#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solarcast/dataset.hpp"
#include "solarcast/models/tree.hpp"

namespace solarcast {

struct GbtParams {
    int rounds = 100;
    int max_depth = 6;
    double learning_rate = 0.1;
    double lambda = 1.0;
    double gamma = 0.0;
    double min_child_weight = 1.0;
};

struct GbtModel {
    int n_classes = 0;
    int n_features = 0;
    GbtParams params;
    double base_score = 0.0;              // shared logit base
    std::vector<Tree> trees;              // rounds x K, tree (r, c) at r*K + c
    std::vector<double> train_log_loss;   // loss before boosting, then after each round
    std::vector<std::string> class_names;

    std::vector<double> predict_proba(std::span<const double> x) const;
};

/// Second-order boosting on the softmax cross-entropy: per round, K trees fit
/// gradients p - y and hessians p(1-p); leaf weights -G/(H+lambda) scaled by
/// the learning rate; splits need positive gain and min_child_weight of
/// hessian in each child.
GbtModel train_gbt(const LabeledDataset& dataset, const GbtParams& params, unsigned threads = 1);

}  // namespace solarcast
