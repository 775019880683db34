#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "solarcast/dataset.hpp"
#include "solarcast/frame.hpp"

namespace solarcast {

struct SummaryStats {
    std::size_t count = 0;
    double mean = 0.0;
    double sample_stddev = 0.0;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

/// Computed over the non-missing cells; throws when there are none.
SummaryStats summary_stats(const std::vector<std::optional<double>>& values);

struct CorrelationMatrix {
    std::vector<std::string> names;
    Matrix r;                      // symmetric, unit diagonal
    std::vector<bool> degenerate;  // per column: zero variance (off-diagonals defined as 0)
};

/// Pearson r over the listed continuous columns, pairwise-complete rows.
CorrelationMatrix pearson_matrix(const TimeSeriesFrame& frame,
                                 const std::vector<std::string>& columns);

struct GroupMean {
    std::string key;  // numeric keys formatted with format_double
    std::optional<double> mean;
};

/// One row per distinct key, ascending (numeric or lexicographic); the mean
/// ignores missing cells, and a key with no values at all is flagged missing.
std::vector<GroupMean> groupby_mean(const TimeSeriesFrame& frame, const std::string& key_column,
                                    const std::string& value_column);

struct HistogramSpec {
    std::vector<double> edges;        // bins + 1, ascending
    std::vector<std::size_t> counts;  // sums to the number of non-missing values
    std::vector<double> kde_x;        // empty unless KDE requested
    std::vector<double> kde_density;
};

/// Equal-width bins over [min, max] (the last bin includes max). The KDE uses
/// a Gaussian kernel with Silverman bandwidth 1.06*sigma*n^(-1/5) on a
/// 256-point grid; requesting it on a constant column throws (zero bandwidth).
HistogramSpec histogram_kde(const std::vector<std::optional<double>>& values, int bins = 30,
                            bool kde = false);

/// One node per (month), (month, weekday), (month, weekday, hour) path plus a
/// root; totals are sums of the power column, and every node carries the
/// quintile index of its total among nodes at the same depth.
struct RollupNode {
    std::vector<int> path;  // empty = root; then month, weekday, hour
    double total = 0.0;
    int bucket = 0;  // 0-4
};

std::vector<RollupNode> hierarchical_rollup(const TimeSeriesFrame& frame,
                                            const std::string& power_column);

// -- plot-data emission (CSV for tabular kinds, JSON for the rollup) --------

void emit_timeseries_csv(const TimeSeriesFrame& frame, const std::vector<std::string>& columns,
                         std::ostream& out);
void emit_scatter_csv(const TimeSeriesFrame& frame, const std::string& x_column,
                      const std::string& y_column, std::ostream& out);
void emit_heatmap_csv(const std::vector<std::string>& row_labels,
                      const std::vector<std::string>& col_labels, const Matrix& values,
                      std::ostream& out);
void emit_histogram_csv(const HistogramSpec& spec, std::ostream& out);
void emit_kde_csv(const HistogramSpec& spec, std::ostream& out);
void emit_groupby_csv(const std::vector<GroupMean>& rows, const std::string& key_name,
                      const std::string& value_name, std::ostream& out);
void emit_summary_csv(const std::vector<std::pair<std::string, SummaryStats>>& rows,
                      std::ostream& out);
void emit_rollup_json(const std::vector<RollupNode>& nodes, std::ostream& out);

}  // namespace solarcast
