#include "solarcast/models/tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace solarcast {

double gini_impurity(std::span<const double> class_counts) {
    double total = 0.0;
    for (double c : class_counts) {
        if (c < 0.0) throw std::invalid_argument("gini_impurity: negative count");
        total += c;
    }
    if (total <= 0.0) throw std::invalid_argument("gini_impurity: all counts zero");
    double sum_sq = 0.0;
    for (double c : class_counts) {
        const double p = c / total;
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

double gini_gain(std::span<const double> left_counts, std::span<const double> right_counts) {
    const std::size_t k = left_counts.size();
    std::vector<double> parent(k);
    double n_left = 0.0, n_right = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        parent[c] = left_counts[c] + right_counts[c];
        n_left += left_counts[c];
        n_right += right_counts[c];
    }
    const double n = n_left + n_right;
    return gini_impurity(parent) - (n_left * gini_impurity(left_counts) +
                                    n_right * gini_impurity(right_counts)) /
                                       n;
}

double gbt_split_gain(double g_left, double h_left, double g_right, double h_right, double lambda,
                      double gamma) {
    const double g_total = g_left + g_right;
    const double h_total = h_left + h_right;
    return 0.5 * (g_left * g_left / (h_left + lambda) + g_right * g_right / (h_right + lambda) -
                  g_total * g_total / (h_total + lambda)) -
           gamma;
}

double gbt_leaf_weight(double grad_sum, double hess_sum, double lambda) {
    return -grad_sum / (hess_sum + lambda);
}

namespace {

// Midpoint between adjacent distinct values; nullopt when rounding collapses
// it onto the left value (the split would not separate the sides).
std::optional<double> split_threshold(double lo, double hi) {
    const double mid = lo + (hi - lo) / 2.0;
    if (!(lo < mid) || !(mid <= hi)) return std::nullopt;
    return mid;
}

struct ValueRow {
    double value;
    std::uint32_t row;
    bool operator<(const ValueRow& other) const {
        return value < other.value || (value == other.value && row < other.row);
    }
};

std::vector<ValueRow> gather_sorted(const Matrix& x, std::span<const std::uint32_t> rows,
                                    int feature) {
    std::vector<ValueRow> out;
    out.reserve(rows.size());
    for (std::uint32_t r : rows) out.push_back({x.at(r, static_cast<std::size_t>(feature)), r});
    std::sort(out.begin(), out.end());
    return out;
}

void keep_if_better(std::optional<SplitCandidate>& best, int feature, double threshold,
                    double gain) {
    // Features are scanned in ascending order and thresholds ascending within
    // a feature, so a strict improvement test realizes the tie rule.
    if (!best || gain > best->gain) best = SplitCandidate{feature, threshold, gain};
}

}  // namespace

std::optional<SplitCandidate> best_split_gini(const Matrix& x, std::span<const int> y, int k,
                                              std::span<const std::uint32_t> rows,
                                              std::span<const int> features,
                                              int min_samples_leaf) {
    if (rows.size() < 2) return std::nullopt;
    std::optional<SplitCandidate> best;
    std::vector<double> left(static_cast<std::size_t>(k)), right(static_cast<std::size_t>(k));

    for (int f : features) {
        const std::vector<ValueRow> sorted = gather_sorted(x, rows, f);
        std::fill(left.begin(), left.end(), 0.0);
        std::fill(right.begin(), right.end(), 0.0);
        for (const auto& vr : sorted) right[static_cast<std::size_t>(y[vr.row])] += 1.0;

        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            const std::size_t cls = static_cast<std::size_t>(y[sorted[i].row]);
            left[cls] += 1.0;
            right[cls] -= 1.0;
            if (sorted[i].value == sorted[i + 1].value) continue;
            const std::size_t n_left = i + 1;
            const std::size_t n_right = sorted.size() - n_left;
            if (n_left < static_cast<std::size_t>(min_samples_leaf) ||
                n_right < static_cast<std::size_t>(min_samples_leaf))
                continue;
            const auto threshold = split_threshold(sorted[i].value, sorted[i + 1].value);
            if (!threshold) continue;
            keep_if_better(best, f, *threshold, gini_gain(left, right));
        }
    }
    if (best && best->gain > 0.0) return best;
    return std::nullopt;
}

void scan_split_gbt(const Matrix& x, int feature, std::span<const std::uint32_t> rows_sorted,
                    std::span<const double> grad, std::span<const double> hess, double lambda,
                    double gamma, double min_child_weight, std::optional<SplitCandidate>& best) {
    const std::size_t f = static_cast<std::size_t>(feature);
    double g_total = 0.0, h_total = 0.0;
    for (std::uint32_t r : rows_sorted) {
        g_total += grad[r];
        h_total += hess[r];
    }
    double g_left = 0.0, h_left = 0.0;
    for (std::size_t i = 0; i + 1 < rows_sorted.size(); ++i) {
        g_left += grad[rows_sorted[i]];
        h_left += hess[rows_sorted[i]];
        const double lo = x.at(rows_sorted[i], f);
        const double hi = x.at(rows_sorted[i + 1], f);
        if (lo == hi) continue;
        const double h_right = h_total - h_left;
        if (h_left < min_child_weight || h_right < min_child_weight) continue;
        const auto threshold = split_threshold(lo, hi);
        if (!threshold) continue;
        keep_if_better(best, feature, *threshold,
                       gbt_split_gain(g_left, h_left, g_total - g_left, h_right, lambda, gamma));
    }
}

std::optional<SplitCandidate> best_split_gbt(const Matrix& x, std::span<const std::uint32_t> rows,
                                             std::span<const double> grad,
                                             std::span<const double> hess,
                                             std::span<const int> features, double lambda,
                                             double gamma, double min_child_weight) {
    if (rows.size() < 2) return std::nullopt;
    std::optional<SplitCandidate> best;
    for (int f : features) {
        const std::vector<ValueRow> sorted = gather_sorted(x, rows, f);
        std::vector<std::uint32_t> order;
        order.reserve(sorted.size());
        for (const auto& vr : sorted) order.push_back(vr.row);
        scan_split_gbt(x, f, order, grad, hess, lambda, gamma, min_child_weight, best);
    }
    if (best && best->gain > 0.0) return best;
    return std::nullopt;
}

SortedFeatureIndex SortedFeatureIndex::build(const Matrix& x) {
    SortedFeatureIndex index;
    index.by_feature.resize(x.cols);
    for (std::size_t f = 0; f < x.cols; ++f) {
        auto& order = index.by_feature[f];
        order.resize(x.rows);
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            const double va = x.at(a, f);
            const double vb = x.at(b, f);
            return va < vb || (va == vb && a < b);
        });
    }
    return index;
}

}  // namespace solarcast
