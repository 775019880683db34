#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "solarcast/dataset.hpp"

namespace solarcast {

/// Node of a binary decision tree in a flat array. Internal nodes route
/// x[feature] < threshold to `left`; leaves carry either a class distribution
/// (forest) or a single additive score (boosted trees).
struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<double> value;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;  // root at index 0

    const TreeNode& leaf_for(std::span<const double> x) const {
        int idx = 0;
        while (!nodes[idx].is_leaf())
            idx = x[static_cast<std::size_t>(nodes[idx].feature)] < nodes[idx].threshold
                      ? nodes[idx].left
                      : nodes[idx].right;
        return nodes[idx];
    }
};

/// 1 - sum(p_i^2) over (possibly weighted) class counts; throws when the
/// counts sum to zero.
double gini_impurity(std::span<const double> class_counts);

/// Impurity decrease of a candidate split:
/// I(parent) - (nL*I(left) + nR*I(right)) / n. Shared by the greedy scan and
/// the exhaustive test oracle so both sides evaluate candidates identically.
double gini_gain(std::span<const double> left_counts, std::span<const double> right_counts);

/// Second-order split gain:
/// 0.5*[GL^2/(HL+l) + GR^2/(HR+l) - (GL+GR)^2/(HL+HR+l)] - gamma.
double gbt_split_gain(double g_left, double h_left, double g_right, double h_right, double lambda,
                      double gamma);

/// Newton leaf weight -G/(H+lambda), before learning-rate scaling.
double gbt_leaf_weight(double grad_sum, double hess_sum, double lambda);

struct SplitCandidate {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

/// Exact greedy split for classification: per candidate feature, sort the
/// node's samples by (value, row), evaluate midpoints between distinct
/// consecutive values, and keep the highest gain; ties resolve to the lowest
/// feature index, then the lowest threshold. Returns nullopt when no split
/// has positive gain. `rows` may repeat (bootstrap multiset).
std::optional<SplitCandidate> best_split_gini(const Matrix& x, std::span<const int> y, int k,
                                              std::span<const std::uint32_t> rows,
                                              std::span<const int> features,
                                              int min_samples_leaf);

/// Same scan maximizing the second-order gain; children must each reach
/// min_child_weight of hessian mass. Gradient/hessian sums accumulate in
/// (value, row) order, which pins the floating-point result.
std::optional<SplitCandidate> best_split_gbt(const Matrix& x, std::span<const std::uint32_t> rows,
                                             std::span<const double> grad,
                                             std::span<const double> hess,
                                             std::span<const int> features, double lambda,
                                             double gamma, double min_child_weight);

/// One-feature scan over rows already sorted by (value, row) for `feature`.
/// best_split_gbt and the boosted-tree builder both run candidates through
/// this, so presorted-partition growth matches the reference split exactly.
void scan_split_gbt(const Matrix& x, int feature, std::span<const std::uint32_t> rows_sorted,
                    std::span<const double> grad, std::span<const double> hess, double lambda,
                    double gamma, double min_child_weight, std::optional<SplitCandidate>& best);

/// Per-feature row indices sorted by (value, row); computed once per matrix
/// and partitioned during boosted-tree growth.
struct SortedFeatureIndex {
    std::vector<std::vector<std::uint32_t>> by_feature;

    static SortedFeatureIndex build(const Matrix& x);
};

}  // namespace solarcast
