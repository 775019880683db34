#include "solarcast/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "solarcast/stats.hpp"

namespace solarcast {

namespace {

std::vector<double> present_values(const std::vector<std::optional<double>>& values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values)
        if (v) out.push_back(*v);
    return out;
}

}  // namespace

std::vector<double> interpolate_linear(const std::vector<Timestamp>& timestamps,
                                       const std::vector<std::optional<double>>& values) {
    if (timestamps.size() != values.size())
        throw std::invalid_argument("interpolate_linear: length mismatch");
    std::vector<std::size_t> known;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i]) known.push_back(i);
    if (known.empty()) throw std::invalid_argument("interpolate_linear: all values missing");

    std::vector<double> out(values.size());
    std::size_t k = 0;  // index into known: known[k] is the next anchor at or after i
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) {
            out[i] = *values[i];
            if (k + 1 < known.size() && known[k] == i) ++k;
            continue;
        }
        if (i < known.front()) {
            out[i] = *values[known.front()];
        } else if (i > known.back()) {
            out[i] = *values[known.back()];
        } else {
            while (known[k] < i) ++k;
            const std::size_t lo = known[k - 1];
            const std::size_t hi = known[k];
            const double t = static_cast<double>(timestamps[i].epoch_seconds - timestamps[lo].epoch_seconds) /
                             static_cast<double>(timestamps[hi].epoch_seconds - timestamps[lo].epoch_seconds);
            out[i] = *values[lo] + (*values[hi] - *values[lo]) * t;
        }
    }
    return out;
}

std::vector<double> forward_fill(const std::vector<std::optional<double>>& values) {
    if (values.empty()) return {};
    if (!values.front()) throw std::invalid_argument("forward_fill: leading value missing");
    std::vector<double> out(values.size());
    double last = *values.front();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) last = *values[i];
        out[i] = last;
    }
    return out;
}

std::vector<bool> detect_outliers_iqr(const std::vector<std::optional<double>>& values,
                                      double fence_multiplier) {
    std::vector<double> present = present_values(values);
    if (present.size() < 4)
        throw std::invalid_argument("detect_outliers_iqr: need >= 4 non-missing values");
    std::sort(present.begin(), present.end());
    const double q1 = quantile_sorted(present, 0.25);
    const double q3 = quantile_sorted(present, 0.75);
    const double iqr = q3 - q1;
    const double lower = q1 - fence_multiplier * iqr;
    const double upper = q3 + fence_multiplier * iqr;

    std::vector<bool> mask(values.size(), false);
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i]) mask[i] = (*values[i] < lower || *values[i] > upper);
    return mask;
}

std::vector<bool> detect_outliers_zscore(const std::vector<std::optional<double>>& values,
                                         double threshold) {
    const std::vector<double> present = present_values(values);
    if (present.size() < 2)
        throw std::invalid_argument("detect_outliers_zscore: need >= 2 non-missing values");
    const double m = mean(present);
    const double sd = sample_stddev(present);
    std::vector<bool> mask(values.size(), false);
    if (sd == 0.0) return mask;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i]) mask[i] = std::abs(*values[i] - m) / sd > threshold;
    return mask;
}

TimeSeriesFrame repair_outliers(const TimeSeriesFrame& frame, const OutlierMask& mask,
                                RepairMode mode) {
    if (mask.n_rows != frame.n_rows())
        throw std::invalid_argument("repair_outliers: mask not aligned with frame");
    for (const auto& [name, flags] : mask.flags) {
        if (flags.size() != frame.n_rows())
            throw std::invalid_argument("repair_outliers: mask for '" + name + "' has wrong length");
        (void)frame.column(name);
    }

    if (mode == RepairMode::remove_rows) {
        std::vector<bool> keep(frame.n_rows(), true);
        for (const auto& [name, flags] : mask.flags)
            for (std::size_t i = 0; i < flags.size(); ++i)
                if (flags[i]) keep[i] = false;
        return frame.select_rows(keep);
    }

    std::vector<Column> cols;
    cols.reserve(frame.n_columns());
    for (const auto& c : frame.columns()) {
        auto it = mask.flags.find(c.name);
        if (it == mask.flags.end() || c.kind != ColumnKind::continuous) {
            cols.push_back(c);
            continue;
        }
        Column out = c;
        bool any = false;
        for (std::size_t i = 0; i < it->second.size(); ++i)
            if (it->second[i]) {
                out.reals[i] = std::nullopt;
                any = true;
            }
        if (any) {
            const std::vector<double> filled = interpolate_linear(frame.timestamps(), out.reals);
            for (std::size_t i = 0; i < filled.size(); ++i) out.reals[i] = filled[i];
        }
        cols.push_back(std::move(out));
    }
    return TimeSeriesFrame(frame.timestamps(), std::move(cols));
}

std::pair<std::vector<double>, ScalingParams> minmax_fit_transform(const std::vector<double>& values) {
    ScalingParams params;
    if (!values.empty()) {
        params.min = *std::min_element(values.begin(), values.end());
        params.max = *std::max_element(values.begin(), values.end());
    }
    return {minmax_transform(values, params), params};
}

std::vector<double> minmax_transform(const std::vector<double>& values, ScalingParams params) {
    std::vector<double> out(values.size());
    const double span = params.max - params.min;
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = span > 0.0 ? (values[i] - params.min) / span : 0.0;
    return out;
}

std::vector<double> minmax_inverse(const std::vector<double>& scaled, ScalingParams params) {
    std::vector<double> out(scaled.size());
    const double span = params.max - params.min;
    for (std::size_t i = 0; i < scaled.size(); ++i)
        out[i] = span > 0.0 ? scaled[i] * span + params.min : params.min;
    return out;
}

std::vector<Column> one_hot_encode(const Column& column) {
    if (column.kind != ColumnKind::categorical)
        throw std::invalid_argument("one_hot_encode: column '" + column.name + "' is not categorical");
    std::set<std::string> distinct;
    for (const auto& cell : column.labels) {
        if (!cell)
            throw std::invalid_argument("one_hot_encode: missing cell in column '" + column.name + "'");
        distinct.insert(*cell);
    }
    std::vector<Column> out;
    for (const auto& label : distinct) {
        std::vector<std::optional<double>> cells(column.labels.size());
        for (std::size_t i = 0; i < column.labels.size(); ++i)
            cells[i] = (*column.labels[i] == label) ? 1.0 : 0.0;
        out.push_back(Column::make_continuous(column.name + "_" + label, std::move(cells)));
    }
    return out;
}

TimeSeriesFrame make_lag_features(const TimeSeriesFrame& frame,
                                  const std::vector<std::string>& columns,
                                  const std::vector<int>& lags) {
    if (lags.empty() || columns.empty()) return frame;
    int max_lag = 0;
    for (int l : lags) {
        if (l < 1) throw std::invalid_argument("make_lag_features: lags must be >= 1");
        max_lag = std::max(max_lag, l);
    }
    if (frame.n_rows() < static_cast<std::size_t>(max_lag) + 1)
        throw std::invalid_argument("make_lag_features: frame shorter than max(lags) + 1 rows");

    TimeSeriesFrame out = frame;
    for (const auto& name : columns) {
        const Column& src = frame.column(name);
        if (src.kind != ColumnKind::continuous)
            throw std::invalid_argument("make_lag_features: column '" + name + "' is not continuous");
        for (int l : lags) {
            std::vector<std::optional<double>> cells(frame.n_rows());
            for (std::size_t i = static_cast<std::size_t>(l); i < frame.n_rows(); ++i)
                cells[i] = src.reals[i - static_cast<std::size_t>(l)];
            out = out.with_column(Column::make_continuous(
                name + "_lag_" + std::to_string(l), std::move(cells), src.unit));
        }
    }
    return out.slice_rows(static_cast<std::size_t>(max_lag), out.n_rows());
}

WindowedDataset make_windows(const TimeSeriesFrame& frame, int window_len, int horizon,
                             const std::string& target_column) {
    if (window_len < 1 || horizon < 1)
        throw std::invalid_argument("make_windows: window_len and horizon must be >= 1");
    const Column& target = frame.column(target_column);
    if (target.kind != ColumnKind::continuous)
        throw std::invalid_argument("make_windows: target must be continuous");
    const std::size_t need = static_cast<std::size_t>(window_len) + static_cast<std::size_t>(horizon);
    if (frame.n_rows() < need)
        throw std::invalid_argument("make_windows: frame has " + std::to_string(frame.n_rows()) +
                                    " rows, needs >= " + std::to_string(need));
    for (const auto& c : frame.columns()) {
        if (c.kind != ColumnKind::continuous)
            throw std::invalid_argument("make_windows: encode categorical column '" + c.name +
                                        "' before windowing");
        for (std::size_t i = 0; i < c.reals.size(); ++i)
            if (!c.reals[i])
                throw std::invalid_argument("make_windows: missing value in column '" + c.name +
                                            "' at row " + std::to_string(i));
    }

    const std::size_t n_samples = frame.n_rows() - need + 1;
    const std::size_t n_cols = frame.n_columns();
    WindowedDataset out;
    out.features = Matrix(n_samples, static_cast<std::size_t>(window_len) * n_cols);
    out.targets.resize(n_samples);
    out.target_times.resize(n_samples);
    out.feature_names.reserve(out.features.cols);
    for (int j = 0; j < window_len; ++j)
        for (const auto& c : frame.columns())
            out.feature_names.push_back(c.name + "_tm" + std::to_string(window_len - j));

    for (std::size_t i = 0; i < n_samples; ++i) {
        std::size_t f = 0;
        for (int j = 0; j < window_len; ++j)
            for (const auto& c : frame.columns())
                out.features.at(i, f++) = *c.reals[i + static_cast<std::size_t>(j)];
        const std::size_t target_row = i + need - 1;
        out.targets[i] = *target.reals[target_row];
        out.target_times[i] = frame.timestamps()[target_row];
    }
    return out;
}

std::vector<std::string> default_class_names(int k) {
    if (k == 2) return {"low", "high"};
    if (k == 3) return {"low", "medium", "high"};
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back("class_" + std::to_string(i));
    return names;
}

std::pair<std::vector<int>, LabelSpec> bucket_labels_quantile(const std::vector<double>& values,
                                                              int k) {
    if (k < 2) throw std::invalid_argument("bucket_labels: K must be >= 2");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t distinct =
        static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    if (distinct < static_cast<std::size_t>(k))
        throw std::invalid_argument("bucket_labels: fewer distinct values than classes");

    sorted = values;
    std::sort(sorted.begin(), sorted.end());
    LabelSpec spec;
    spec.class_names = default_class_names(k);
    for (int j = 1; j < k; ++j)
        spec.thresholds.push_back(quantile_sorted(sorted, static_cast<double>(j) / k));
    for (std::size_t j = 1; j < spec.thresholds.size(); ++j)
        if (!(spec.thresholds[j - 1] < spec.thresholds[j]))
            throw std::invalid_argument(
                "bucket_labels: quantile thresholds not strictly ascending (heavy ties); "
                "reduce K or use fixed thresholds");
    return {bucket_labels_fixed(values, spec), spec};
}

std::vector<int> bucket_labels_fixed(const std::vector<double>& values, const LabelSpec& spec) {
    for (std::size_t j = 1; j < spec.thresholds.size(); ++j)
        if (!(spec.thresholds[j - 1] < spec.thresholds[j]))
            throw std::invalid_argument("bucket_labels: thresholds must be strictly ascending");
    std::vector<int> labels(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        int label = 0;
        for (double t : spec.thresholds)
            if (t < values[i]) ++label;
        labels[i] = label;
    }
    return labels;
}

MatrixScaling fit_minmax(const Matrix& m, std::size_t row_begin, std::size_t row_end) {
    if (row_begin >= row_end || row_end > m.rows)
        throw std::invalid_argument("fit_minmax: bad row range");
    MatrixScaling scaling;
    scaling.per_column.resize(m.cols);
    for (std::size_t c = 0; c < m.cols; ++c) {
        double lo = m.at(row_begin, c);
        double hi = lo;
        for (std::size_t r = row_begin; r < row_end; ++r) {
            lo = std::min(lo, m.at(r, c));
            hi = std::max(hi, m.at(r, c));
        }
        scaling.per_column[c] = {lo, hi};
    }
    return scaling;
}

Matrix apply_minmax(const Matrix& m, const MatrixScaling& scaling) {
    if (scaling.per_column.size() != m.cols)
        throw std::invalid_argument("apply_minmax: column count mismatch");
    Matrix out = m;
    for (std::size_t c = 0; c < m.cols; ++c) {
        const ScalingParams p = scaling.per_column[c];
        const double span = p.max - p.min;
        for (std::size_t r = 0; r < m.rows; ++r)
            out.at(r, c) = span > 0.0 ? (m.at(r, c) - p.min) / span : 0.0;
    }
    return out;
}

}  // namespace solarcast
