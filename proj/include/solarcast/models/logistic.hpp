#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "solarcast/dataset.hpp"

namespace solarcast {

/// Numerically stable softmax (max subtraction); sums to 1 within 1e-12.
std::vector<double> softmax(std::span<const double> logits);

struct LogisticParams {
    double learning_rate = 0.1;
    int max_iters = 500;
    double tolerance = 1e-6;
    double l2 = 0.0;
};

struct LogisticModel {
    int n_classes = 0;
    int n_features = 0;
    LogisticParams params;
    Matrix weights;             // K x D
    std::vector<double> bias;   // K
    std::vector<std::string> class_names;
    int iterations_run = 0;
    double final_loss = 0.0;

    std::vector<double> predict_proba(std::span<const double> x) const;
};

/// Mean softmax cross-entropy with L2 penalty on the weights (bias excluded),
/// and its analytic gradient. Exposed separately so the finite-difference
/// check can call it.
struct LossGrad {
    double loss = 0.0;
    Matrix grad_weights;
    std::vector<double> grad_bias;
};
LossGrad logistic_loss_grad(const LabeledDataset& dataset, const Matrix& weights,
                            const std::vector<double>& bias, double l2);

/// Full-batch gradient descent from zero weights. Steps that would raise the
/// loss are rejected and retried at half the rate, so the loss is
/// non-increasing across accepted iterations; stops when an accepted step
/// improves by less than `tolerance` or max_iters is reached. Throws when the
/// loss turns non-finite.
LogisticModel train_logistic(const LabeledDataset& dataset, const LogisticParams& params);

}  // namespace solarcast
