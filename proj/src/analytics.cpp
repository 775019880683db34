#include "solarcast/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "solarcast/csv.hpp"
#include "solarcast/stats.hpp"

namespace solarcast {

SummaryStats summary_stats(const std::vector<std::optional<double>>& values) {
    std::vector<double> present;
    present.reserve(values.size());
    for (const auto& v : values)
        if (v) present.push_back(*v);
    if (present.empty()) throw std::invalid_argument("summary_stats: no non-missing values");
    std::sort(present.begin(), present.end());

    SummaryStats s;
    s.count = present.size();
    s.mean = mean(present);
    s.sample_stddev = sample_stddev(present);
    s.min = present.front();
    s.q1 = quantile_sorted(present, 0.25);
    s.median = quantile_sorted(present, 0.5);
    s.q3 = quantile_sorted(present, 0.75);
    s.max = present.back();
    return s;
}

CorrelationMatrix pearson_matrix(const TimeSeriesFrame& frame,
                                 const std::vector<std::string>& columns) {
    if (frame.n_rows() < 2) throw std::invalid_argument("pearson_matrix: need >= 2 rows");
    std::vector<const Column*> cols;
    for (const auto& name : columns) {
        const Column& c = frame.column(name);
        if (c.kind != ColumnKind::continuous)
            throw std::invalid_argument("pearson_matrix: column '" + name + "' is not continuous");
        cols.push_back(&c);
    }

    const std::size_t k = cols.size();
    CorrelationMatrix out;
    out.names = columns;
    out.r = Matrix(k, k);
    out.degenerate.assign(k, false);

    // Zero-variance flags from each column's own non-missing cells.
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<double> v;
        for (const auto& cell : cols[i]->reals)
            if (cell) v.push_back(*cell);
        out.degenerate[i] = v.size() < 2 || sample_stddev(v) == 0.0;
    }

    for (std::size_t i = 0; i < k; ++i) {
        out.r.at(i, i) = 1.0;
        for (std::size_t j = i + 1; j < k; ++j) {
            std::vector<double> xi, xj;  // pairwise-complete rows
            for (std::size_t row = 0; row < frame.n_rows(); ++row) {
                if (cols[i]->reals[row] && cols[j]->reals[row]) {
                    xi.push_back(*cols[i]->reals[row]);
                    xj.push_back(*cols[j]->reals[row]);
                }
            }
            const double r = (xi.size() < 2) ? 0.0 : pearson(xi, xj);
            out.r.at(i, j) = r;
            out.r.at(j, i) = r;
        }
    }
    return out;
}

std::vector<GroupMean> groupby_mean(const TimeSeriesFrame& frame, const std::string& key_column,
                                    const std::string& value_column) {
    const Column& key = frame.column(key_column);
    const Column& value = frame.column(value_column);
    if (value.kind != ColumnKind::continuous)
        throw std::invalid_argument("groupby_mean: value column must be continuous");

    struct Acc {
        double sum = 0.0;
        std::size_t n = 0;
    };
    auto fold = [&](auto key_of) {
        std::map<decltype(key_of(std::size_t{0})), Acc> groups;
        for (std::size_t i = 0; i < frame.n_rows(); ++i) {
            if (key.is_missing(i)) continue;
            Acc& acc = groups[key_of(i)];
            if (value.reals[i]) {
                acc.sum += *value.reals[i];
                acc.n += 1;
            }
        }
        return groups;
    };

    std::vector<GroupMean> out;
    if (key.kind == ColumnKind::continuous) {
        auto groups = fold([&](std::size_t i) { return *key.reals[i]; });
        for (const auto& [k, acc] : groups)
            out.push_back({format_double(k),
                           acc.n ? std::optional<double>(acc.sum / static_cast<double>(acc.n))
                                 : std::nullopt});
    } else {
        auto groups = fold([&](std::size_t i) { return *key.labels[i]; });
        for (const auto& [k, acc] : groups)
            out.push_back({k, acc.n ? std::optional<double>(acc.sum / static_cast<double>(acc.n))
                                    : std::nullopt});
    }
    return out;
}

HistogramSpec histogram_kde(const std::vector<std::optional<double>>& values, int bins, bool kde) {
    if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
    std::vector<double> present;
    for (const auto& v : values)
        if (v) present.push_back(*v);
    if (present.empty()) throw std::invalid_argument("histogram: no non-missing values");
    if (kde && present.size() < 2) throw std::invalid_argument("histogram: KDE needs >= 2 values");

    double lo = *std::min_element(present.begin(), present.end());
    double hi = *std::max_element(present.begin(), present.end());
    if (lo == hi) {
        if (kde) throw std::invalid_argument("histogram: KDE undefined for a constant column");
        // Degenerate range: widen to a unit interval centered on the value.
        lo -= 0.5;
        hi += 0.5;
    }

    HistogramSpec spec;
    const double width = (hi - lo) / bins;
    for (int b = 0; b <= bins; ++b) spec.edges.push_back(lo + width * b);
    spec.edges.back() = hi;
    spec.counts.assign(static_cast<std::size_t>(bins), 0);
    for (double v : present) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        if (b >= static_cast<std::size_t>(bins)) b = static_cast<std::size_t>(bins) - 1;
        spec.counts[b] += 1;
    }

    if (kde) {
        const double sigma = sample_stddev(present);
        if (sigma == 0.0) throw std::invalid_argument("histogram: KDE undefined for zero variance");
        const double n = static_cast<double>(present.size());
        const double bandwidth = 1.06 * sigma * std::pow(n, -0.2);
        const int grid = 256;
        const double inv_norm = 1.0 / (n * bandwidth * std::sqrt(2.0 * 3.14159265358979323846));
        for (int g = 0; g < grid; ++g) {
            const double x = lo + (hi - lo) * g / (grid - 1);
            double density = 0.0;
            for (double v : present) {
                const double z = (x - v) / bandwidth;
                density += std::exp(-0.5 * z * z);
            }
            spec.kde_x.push_back(x);
            spec.kde_density.push_back(density * inv_norm);
        }
    }
    return spec;
}

namespace {

int quintile_bucket(double value, const std::vector<double>& level_totals) {
    std::vector<double> sorted = level_totals;
    std::sort(sorted.begin(), sorted.end());
    int bucket = 0;
    for (int j = 1; j < 5; ++j)
        if (quantile_sorted(sorted, j / 5.0) < value) ++bucket;
    return bucket;
}

}  // namespace

std::vector<RollupNode> hierarchical_rollup(const TimeSeriesFrame& frame,
                                            const std::string& power_column) {
    for (const char* name : {"month", "weekday", "hour"})
        if (!frame.has_column(name))
            throw std::invalid_argument(std::string("hierarchical_rollup: missing calendar column '") +
                                        name + "'");
    const Column& month = frame.column("month");
    const Column& weekday = frame.column("weekday");
    const Column& hour = frame.column("hour");
    const Column& power = frame.column(power_column);
    if (power.kind != ColumnKind::continuous)
        throw std::invalid_argument("hierarchical_rollup: power column must be continuous");

    std::map<std::vector<int>, double> totals;  // keyed by path, all three depths + root
    for (std::size_t i = 0; i < frame.n_rows(); ++i) {
        if (!power.reals[i] || month.is_missing(i) || weekday.is_missing(i) || hour.is_missing(i))
            continue;
        const int m = static_cast<int>(*month.reals[i]);
        const int w = static_cast<int>(*weekday.reals[i]);
        const int h = static_cast<int>(*hour.reals[i]);
        const double p = *power.reals[i];
        totals[{}] += p;
        totals[{m}] += p;
        totals[{m, w}] += p;
        totals[{m, w, h}] += p;
    }
    if (totals.empty()) totals[{}] = 0.0;

    std::vector<double> level_totals[4];
    for (const auto& [path, total] : totals) level_totals[path.size()].push_back(total);

    std::vector<RollupNode> nodes;
    nodes.reserve(totals.size());
    for (const auto& [path, total] : totals) {
        RollupNode node;
        node.path = path;
        node.total = total;
        node.bucket = quintile_bucket(total, level_totals[path.size()]);
        nodes.push_back(std::move(node));
    }
    return nodes;
}

// ---------------------------------------------------------------------------
// Plot-data writers
// ---------------------------------------------------------------------------

namespace {

void put_cell(std::ostream& out, const Column& c, std::size_t row) {
    if (c.is_missing(row)) return;
    if (c.kind == ColumnKind::continuous)
        out << format_double(*c.reals[row]);
    else
        out << *c.labels[row];
}

}  // namespace

void emit_timeseries_csv(const TimeSeriesFrame& frame, const std::vector<std::string>& columns,
                         std::ostream& out) {
    out << "timestamp";
    for (const auto& name : columns) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < frame.n_rows(); ++i) {
        out << frame.timestamps()[i].to_iso8601();
        for (const auto& name : columns) {
            out << ',';
            put_cell(out, frame.column(name), i);
        }
        out << '\n';
    }
}

void emit_scatter_csv(const TimeSeriesFrame& frame, const std::string& x_column,
                      const std::string& y_column, std::ostream& out) {
    const Column& x = frame.column(x_column);
    const Column& y = frame.column(y_column);
    out << x_column << ',' << y_column << '\n';
    for (std::size_t i = 0; i < frame.n_rows(); ++i) {
        put_cell(out, x, i);
        out << ',';
        put_cell(out, y, i);
        out << '\n';
    }
}

void emit_heatmap_csv(const std::vector<std::string>& row_labels,
                      const std::vector<std::string>& col_labels, const Matrix& values,
                      std::ostream& out) {
    if (values.rows != row_labels.size() || values.cols != col_labels.size())
        throw std::invalid_argument("emit_heatmap_csv: label/matrix shape mismatch");
    out << "row_label,col_label,value\n";
    for (std::size_t i = 0; i < values.rows; ++i)
        for (std::size_t j = 0; j < values.cols; ++j)
            out << row_labels[i] << ',' << col_labels[j] << ',' << format_double(values.at(i, j))
                << '\n';
}

void emit_histogram_csv(const HistogramSpec& spec, std::ostream& out) {
    out << "bin_left,bin_right,count\n";
    for (std::size_t b = 0; b < spec.counts.size(); ++b)
        out << format_double(spec.edges[b]) << ',' << format_double(spec.edges[b + 1]) << ','
            << spec.counts[b] << '\n';
}

void emit_kde_csv(const HistogramSpec& spec, std::ostream& out) {
    out << "x,density\n";
    for (std::size_t g = 0; g < spec.kde_x.size(); ++g)
        out << format_double(spec.kde_x[g]) << ',' << format_double(spec.kde_density[g]) << '\n';
}

void emit_groupby_csv(const std::vector<GroupMean>& rows, const std::string& key_name,
                      const std::string& value_name, std::ostream& out) {
    out << key_name << ',' << value_name << '\n';
    for (const auto& row : rows) {
        out << row.key << ',';
        if (row.mean) out << format_double(*row.mean);
        out << '\n';
    }
}

void emit_summary_csv(const std::vector<std::pair<std::string, SummaryStats>>& rows,
                      std::ostream& out) {
    out << "column,count,mean,stddev,min,q1,median,q3,max\n";
    for (const auto& [name, s] : rows)
        out << name << ',' << s.count << ',' << format_double(s.mean) << ','
            << format_double(s.sample_stddev) << ',' << format_double(s.min) << ','
            << format_double(s.q1) << ',' << format_double(s.median) << ','
            << format_double(s.q3) << ',' << format_double(s.max) << '\n';
}

void emit_rollup_json(const std::vector<RollupNode>& nodes, std::ostream& out) {
    using json = nlohmann::ordered_json;

    // Rebuild the tree from the flat node list (paths are unique and sorted).
    auto make_entry = [](const std::string& name, const RollupNode& n) {
        json entry;
        entry["name"] = name;
        entry["value"] = n.total;
        entry["bucket"] = n.bucket;
        entry["children"] = json::array();
        return entry;
    };

    std::map<std::vector<int>, const RollupNode*> by_path;
    for (const auto& n : nodes) by_path[n.path] = &n;
    if (!by_path.count({})) throw std::invalid_argument("emit_rollup_json: missing root node");

    json root = make_entry("all", *by_path.at({}));
    for (const auto& [path, node] : by_path) {
        if (path.empty()) continue;
        json* parent = &root;
        for (std::size_t depth = 1; depth < path.size(); ++depth) {
            const std::string label = std::to_string(path[depth - 1]);
            for (auto& child : (*parent)["children"]) {
                if (child["name"] == label) {
                    parent = &child;
                    break;
                }
            }
        }
        (*parent)["children"].push_back(make_entry(std::to_string(path.back()), *node));
    }
    out << root.dump(2) << '\n';
}

}  // namespace solarcast
