#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solarcast/dataset.hpp"
#include "solarcast/frame.hpp"

namespace solarcast {

// ---------------------------------------------------------------------------
// Imputation
// ---------------------------------------------------------------------------

/// Fills interior gaps by linear interpolation on the time axis; leading and
/// trailing gaps take the nearest valid value. Throws when every cell is
/// missing. Idempotent.
std::vector<double> interpolate_linear(const std::vector<Timestamp>& timestamps,
                                       const std::vector<std::optional<double>>& values);

/// Each missing cell takes the most recent non-missing value. Throws when the
/// first cell is missing. Idempotent.
std::vector<double> forward_fill(const std::vector<std::optional<double>>& values);

// ---------------------------------------------------------------------------
// Outliers
// ---------------------------------------------------------------------------

/// Per-row flags for the inspected columns; rows not flagged anywhere are kept
/// untouched by repair_outliers.
struct OutlierMask {
    std::size_t n_rows = 0;
    std::map<std::string, std::vector<bool>> flags;
};

/// Tukey fences: x < Q1 - k*IQR or x > Q3 + k*IQR, quartiles by the shared
/// rank rule. Missing cells are never flagged. Requires >= 4 non-missing
/// values.
std::vector<bool> detect_outliers_iqr(const std::vector<std::optional<double>>& values,
                                      double fence_multiplier = 1.5);

/// Flags |x - mean| / sample_stddev > threshold; zero stddev flags nothing.
/// Requires >= 2 non-missing values.
std::vector<bool> detect_outliers_zscore(const std::vector<std::optional<double>>& values,
                                         double threshold = 3.0);

enum class RepairMode { remove_rows, replace_with_interpolation };

TimeSeriesFrame repair_outliers(const TimeSeriesFrame& frame, const OutlierMask& mask,
                                RepairMode mode);

// ---------------------------------------------------------------------------
// Scaling & encoding
// ---------------------------------------------------------------------------

struct ScalingParams {
    double min = 0.0;
    double max = 0.0;
    bool operator==(const ScalingParams&) const = default;
};

/// (x - min) / (max - min); a constant column maps to all 0.0.
std::pair<std::vector<double>, ScalingParams> minmax_fit_transform(const std::vector<double>& values);
std::vector<double> minmax_transform(const std::vector<double>& values, ScalingParams params);
std::vector<double> minmax_inverse(const std::vector<double>& scaled, ScalingParams params);

/// One 0/1 column per distinct label, labels in lexicographic order, named
/// "<column>_<label>". Throws on missing cells.
std::vector<Column> one_hot_encode(const Column& column);

// ---------------------------------------------------------------------------
// Temporal features
// ---------------------------------------------------------------------------

/// Appends "<column>_lag_<l>" columns holding the value l rows earlier, then
/// drops the first max(lags) rows so no introduced gap remains. An empty lag
/// list returns the frame unchanged.
TimeSeriesFrame make_lag_features(const TimeSeriesFrame& frame,
                                  const std::vector<std::string>& columns,
                                  const std::vector<int>& lags);

/// Flattened sliding windows over all continuous columns. Sample i covers
/// rows [i, i+window_len) row-major and targets `target` at row
/// i + window_len + horizon - 1. Sample count = rows - window_len - horizon + 1.
/// Feature names are "<column>_tm<k>" with k hours before the window end + 1.
struct WindowedDataset {
    Matrix features;
    std::vector<double> targets;
    std::vector<Timestamp> target_times;
    std::vector<std::string> feature_names;
};

WindowedDataset make_windows(const TimeSeriesFrame& frame, int window_len, int horizon,
                             const std::string& target_column);

// ---------------------------------------------------------------------------
// Class labels
// ---------------------------------------------------------------------------

/// K-1 ascending cut points on the target; label = number of thresholds
/// strictly below the value.
struct LabelSpec {
    std::vector<double> thresholds;
    std::vector<std::string> class_names;

    int n_classes() const { return static_cast<int>(class_names.size()); }
    bool operator==(const LabelSpec&) const = default;
};

std::vector<std::string> default_class_names(int k);

/// Quantile mode: cut points at ranks j/K via the shared rank rule. Requires
/// >= K distinct values and strictly ascending thresholds.
std::pair<std::vector<int>, LabelSpec> bucket_labels_quantile(const std::vector<double>& values,
                                                              int k);
/// Fixed mode: buckets against a caller-supplied spec.
std::vector<int> bucket_labels_fixed(const std::vector<double>& values, const LabelSpec& spec);

// ---------------------------------------------------------------------------
// Matrix scaling for train/test splits
// ---------------------------------------------------------------------------

struct MatrixScaling {
    std::vector<ScalingParams> per_column;
};

/// Fits per-column min-max on rows [row_begin, row_end) only.
MatrixScaling fit_minmax(const Matrix& m, std::size_t row_begin, std::size_t row_end);
Matrix apply_minmax(const Matrix& m, const MatrixScaling& scaling);

}  // namespace solarcast
