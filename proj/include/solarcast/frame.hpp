#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solarcast/timestamp.hpp"

namespace solarcast {

enum class ColumnKind { continuous, categorical };

/// A named column: float64 cells (with a unit string) or string labels.
/// Either kind may hold explicitly missing cells; there is no NaN sentinel.
struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::continuous;
    std::string unit;  // continuous only; informational
    std::vector<std::optional<double>> reals;
    std::vector<std::optional<std::string>> labels;

    static Column make_continuous(std::string name, std::vector<std::optional<double>> values,
                                  std::string unit = "");
    static Column make_categorical(std::string name, std::vector<std::optional<std::string>> values);
    static Column from_values(std::string name, const std::vector<double>& values,
                              std::string unit = "");

    std::size_t size() const {
        return kind == ColumnKind::continuous ? reals.size() : labels.size();
    }
    bool is_missing(std::size_t row) const {
        return kind == ColumnKind::continuous ? !reals[row].has_value() : !labels[row].has_value();
    }

    bool operator==(const Column&) const = default;
};

/// Immutable timestamp-indexed table. Construction enforces: strictly
/// increasing timestamps, unique column names, and all columns the same
/// length as the index. Operations return new frames.
class TimeSeriesFrame {
public:
    TimeSeriesFrame() = default;
    TimeSeriesFrame(std::vector<Timestamp> timestamps, std::vector<Column> columns);

    std::size_t n_rows() const { return timestamps_.size(); }
    std::size_t n_columns() const { return columns_.size(); }
    const std::vector<Timestamp>& timestamps() const { return timestamps_; }
    const std::vector<Column>& columns() const { return columns_; }

    bool has_column(const std::string& name) const;
    const Column& column(const std::string& name) const;  // throws when absent

    /// New frame with one more column (same length); throws on name collision.
    TimeSeriesFrame with_column(Column column) const;
    /// New frame keeping only rows where keep[i] is true.
    TimeSeriesFrame select_rows(const std::vector<bool>& keep) const;
    /// New frame with rows [begin, end).
    TimeSeriesFrame slice_rows(std::size_t begin, std::size_t end) const;

    bool operator==(const TimeSeriesFrame&) const = default;

private:
    std::vector<Timestamp> timestamps_;
    std::vector<Column> columns_;
};

/// One output row per left row, joined against the right row with the nearest
/// timestamp within `tolerance_seconds` (ties resolved to the earlier row).
/// Right columns with no match within tolerance become missing. Throws on
/// empty inputs, negative tolerance, or column-name collisions.
TimeSeriesFrame merge_nearest(const TimeSeriesFrame& left, const TimeSeriesFrame& right,
                              std::int64_t tolerance_seconds);

/// Appends integer-valued "hour", "day", "month", "weekday" columns derived
/// from the UTC timestamp (weekday 0 = Monday). Throws on name collision.
TimeSeriesFrame extract_calendar(const TimeSeriesFrame& frame);

inline constexpr const char* kCalendarColumns[4] = {"hour", "day", "month", "weekday"};

}  // namespace solarcast
