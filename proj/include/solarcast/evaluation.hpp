#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "solarcast/dataset.hpp"
#include "solarcast/models/model.hpp"

namespace solarcast {

// ---------------------------------------------------------------------------
// Temporal splits
// ---------------------------------------------------------------------------

/// Contiguous train range followed immediately by a contiguous test range;
/// every test index is greater than every train index.
struct WindowSplit {
    std::size_t train_begin = 0;
    std::size_t train_end = 0;  // == test_begin
    std::size_t test_begin = 0;
    std::size_t test_end = 0;

    bool operator==(const WindowSplit&) const = default;
};

struct WindowConfig {
    std::size_t train_len = 720;  // 30 days hourly
    std::size_t test_len = 168;   // 7 days hourly
    std::size_t step = 168;
};

/// Window i starts at i*step; count = floor((n - train - test)/step) + 1.
/// Throws when the data cannot fit one window or a parameter is zero.
std::vector<WindowSplit> sliding_windows(std::size_t n_samples, const WindowConfig& config = {});

struct StratificationResult {
    bool ok = true;
    std::vector<int> missing_train;  // classes absent from the train segment
    std::vector<int> missing_test;
};

StratificationResult stratification_check(std::span<const int> labels, const WindowSplit& split,
                                          int k);

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/// K x K counts; entry (i, j) = samples with true class i predicted as j.
struct ConfusionMatrix {
    int k = 0;
    std::vector<std::int64_t> counts;

    ConfusionMatrix() = default;
    explicit ConfusionMatrix(int k_) : k(k_), counts(static_cast<std::size_t>(k_) * k_, 0) {}

    std::int64_t& at(int t, int p) { return counts[static_cast<std::size_t>(t) * k + p]; }
    std::int64_t at(int t, int p) const { return counts[static_cast<std::size_t>(t) * k + p]; }
    std::int64_t total() const;
    std::int64_t row_sum(int t) const;
    std::int64_t col_sum(int p) const;
    void add(const ConfusionMatrix& other);

    bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred, int k);

/// trace / total.
double accuracy(const ConfusionMatrix& cm);

struct ClassScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::int64_t support = 0;
    bool degenerate = false;  // some denominator was zero and the score was set to 0
};

struct ClassificationReport {
    double accuracy = 0.0;
    std::vector<ClassScores> per_class;
    double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
    double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f1 = 0.0;
};

ClassificationReport report(const ConfusionMatrix& cm);

struct AucResult {
    std::vector<std::optional<double>> per_class;  // undefined when a class is absent
    double macro = 0.0;                            // mean of the defined entries
};

/// One-vs-rest ROC-AUC from the rank statistic with ties counted 1/2.
/// `scores` holds per-sample class probabilities (n x K).
AucResult roc_auc_ovr(std::span<const int> y_true, const Matrix& scores);

// ---------------------------------------------------------------------------
// Cross-validation driver
// ---------------------------------------------------------------------------

struct ModelsConfig {
    std::vector<ModelKind> run = {ModelKind::logistic, ModelKind::forest, ModelKind::gbt};
    LogisticParams logistic;
    ForestParams forest;
    GbtParams gbt;
};

struct ModelWindowResult {
    ConfusionMatrix cm;
    ClassificationReport rep;
    AucResult auc;
};

struct ModelAggregate {
    ConfusionMatrix pooled_cm;
    ClassificationReport rep;
    AucResult pooled_auc;
};

struct SkippedWindow {
    std::size_t index = 0;
    WindowSplit split;
    std::vector<int> missing_train;
    std::vector<int> missing_test;
};

struct RunReport {
    std::uint64_t seed = 0;
    WindowConfig window_config;
    std::vector<std::string> model_keys;  // evaluation order
    std::vector<std::pair<std::size_t, WindowSplit>> windows;  // evaluated windows
    std::vector<std::vector<ModelWindowResult>> per_window;    // [window][model]
    std::vector<ModelAggregate> aggregate;                     // [model]
    std::vector<SkippedWindow> skipped;
};

/// For each usable window: fit min-max scaling and all configured models on
/// the train segment only, evaluate on the test segment, and pool the
/// confusion counts. Windows missing a class in either segment are skipped
/// with a warning on `warnings` (when given). Model training seeds derive
/// from (seed, window index, model index). Throws when no window is usable.
RunReport run_cv(const Matrix& features, const std::vector<int>& labels,
                 const std::vector<std::string>& class_names, const ModelsConfig& models,
                 const WindowConfig& windows, std::uint64_t seed, unsigned threads = 1,
                 std::ostream* warnings = nullptr);

std::string run_report_to_json(const RunReport& report);

// ---------------------------------------------------------------------------
// Model comparison
// ---------------------------------------------------------------------------

struct ComparisonRow {
    std::string model;  // display name
    double accuracy = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
};

/// Rows sorted by accuracy descending, ties by name.
std::vector<ComparisonRow> compare_models(std::vector<ComparisonRow> rows);
std::vector<ComparisonRow> comparison_from_run(const RunReport& report);

/// Fixed-width text table; accuracy at two-decimal percent, the other
/// metrics at whole percent.
std::string format_comparison_table(const std::vector<ComparisonRow>& rows);
void emit_comparison_csv(const std::vector<ComparisonRow>& rows, std::ostream& out);

}  // namespace solarcast
