#include "solarcast/models/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace solarcast {

std::vector<double> softmax(std::span<const double> logits) {
    if (logits.empty()) throw std::invalid_argument("softmax: empty input");
    const double peak = *std::max_element(logits.begin(), logits.end());
    std::vector<double> out(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - peak);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

std::vector<double> LogisticModel::predict_proba(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(n_features))
        throw std::invalid_argument("logistic: feature vector has wrong length");
    std::vector<double> logits(static_cast<std::size_t>(n_classes));
    for (std::size_t c = 0; c < logits.size(); ++c) {
        double z = bias[c];
        for (std::size_t f = 0; f < x.size(); ++f) z += weights.at(c, f) * x[f];
        logits[c] = z;
    }
    return softmax(logits);
}

LossGrad logistic_loss_grad(const LabeledDataset& dataset, const Matrix& weights,
                            const std::vector<double>& bias, double l2) {
    const std::size_t n = dataset.n_samples();
    const std::size_t d = dataset.n_features();
    const std::size_t k = static_cast<std::size_t>(dataset.n_classes());
    if (weights.rows != k || weights.cols != d || bias.size() != k)
        throw std::invalid_argument("logistic_loss_grad: parameter shape mismatch");

    LossGrad out;
    out.grad_weights = Matrix(k, d);
    out.grad_bias.assign(k, 0.0);

    double loss = 0.0;
    std::vector<double> logits(k);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = dataset.features.row(i);
        for (std::size_t c = 0; c < k; ++c) {
            double z = bias[c];
            for (std::size_t f = 0; f < d; ++f) z += weights.at(c, f) * x[f];
            logits[c] = z;
        }
        const std::vector<double> p = softmax(logits);
        loss -= std::log(std::max(p[static_cast<std::size_t>(dataset.labels[i])], 1e-300));
        for (std::size_t c = 0; c < k; ++c) {
            const double residual = p[c] - (dataset.labels[i] == static_cast<int>(c) ? 1.0 : 0.0);
            out.grad_bias[c] += residual;
            for (std::size_t f = 0; f < d; ++f) out.grad_weights.at(c, f) += residual * x[f];
        }
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    loss *= inv_n;
    for (double& gb : out.grad_bias) gb *= inv_n;
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t f = 0; f < d; ++f)
            out.grad_weights.at(c, f) = out.grad_weights.at(c, f) * inv_n + l2 * weights.at(c, f);
    double penalty = 0.0;
    for (double w : weights.data) penalty += w * w;
    out.loss = loss + 0.5 * l2 * penalty;
    return out;
}

LogisticModel train_logistic(const LabeledDataset& dataset, const LogisticParams& params) {
    dataset.validate();
    if (params.max_iters < 0) throw std::invalid_argument("logistic: max_iters must be >= 0");
    if (params.learning_rate <= 0.0) throw std::invalid_argument("logistic: learning_rate must be > 0");

    std::vector<std::size_t> per_class(static_cast<std::size_t>(dataset.n_classes()), 0);
    for (int y : dataset.labels) per_class[static_cast<std::size_t>(y)] += 1;
    for (std::size_t c = 0; c < per_class.size(); ++c)
        if (per_class[c] == 0)
            throw std::invalid_argument("logistic: no training samples for class " + std::to_string(c));

    LogisticModel model;
    model.n_classes = dataset.n_classes();
    model.n_features = static_cast<int>(dataset.n_features());
    model.params = params;
    model.class_names = dataset.class_names;
    model.weights = Matrix(static_cast<std::size_t>(model.n_classes), dataset.n_features());
    model.bias.assign(static_cast<std::size_t>(model.n_classes), 0.0);

    double rate = params.learning_rate;
    LossGrad current = logistic_loss_grad(dataset, model.weights, model.bias, params.l2);
    if (!std::isfinite(current.loss)) throw std::runtime_error("logistic: non-finite loss");
    model.final_loss = current.loss;

    for (int iter = 0; iter < params.max_iters; ++iter) {
        Matrix cand_w = model.weights;
        std::vector<double> cand_b = model.bias;
        for (std::size_t i = 0; i < cand_w.data.size(); ++i)
            cand_w.data[i] -= rate * current.grad_weights.data[i];
        for (std::size_t c = 0; c < cand_b.size(); ++c) cand_b[c] -= rate * current.grad_bias[c];

        const LossGrad cand = logistic_loss_grad(dataset, cand_w, cand_b, params.l2);
        model.iterations_run = iter + 1;
        if (!std::isfinite(cand.loss) || cand.loss > current.loss) {
            rate *= 0.5;  // rejected step; retry smaller
            if (rate < 1e-15) break;
            continue;
        }
        const double improvement = current.loss - cand.loss;
        model.weights = std::move(cand_w);
        model.bias = std::move(cand_b);
        current = cand;
        model.final_loss = current.loss;
        if (improvement < params.tolerance) break;
    }
    return model;
}

}  // namespace solarcast
