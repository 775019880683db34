#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace solarcast {

/// Dense row-major float64 matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
    std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }

    bool operator==(const Matrix&) const = default;
};

/// Model input: feature matrix plus integer class labels in [0, K).
struct LabeledDataset {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> feature_names;
    std::vector<std::string> class_names;

    std::size_t n_samples() const { return features.rows; }
    std::size_t n_features() const { return features.cols; }
    int n_classes() const { return static_cast<int>(class_names.size()); }

    void validate() const {
        if (features.rows != labels.size())
            throw std::invalid_argument("dataset: feature rows != label count");
        if (class_names.size() < 2) throw std::invalid_argument("dataset: need K >= 2 classes");
        for (int y : labels)
            if (y < 0 || y >= n_classes())
                throw std::invalid_argument("dataset: label out of range");
    }
};

}  // namespace solarcast
