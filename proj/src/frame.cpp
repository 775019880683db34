#include "solarcast/frame.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace solarcast {

Column Column::make_continuous(std::string name, std::vector<std::optional<double>> values,
                               std::string unit) {
    Column c;
    c.name = std::move(name);
    c.kind = ColumnKind::continuous;
    c.unit = std::move(unit);
    c.reals = std::move(values);
    return c;
}

Column Column::make_categorical(std::string name, std::vector<std::optional<std::string>> values) {
    Column c;
    c.name = std::move(name);
    c.kind = ColumnKind::categorical;
    c.labels = std::move(values);
    return c;
}

Column Column::from_values(std::string name, const std::vector<double>& values, std::string unit) {
    std::vector<std::optional<double>> cells(values.begin(), values.end());
    return make_continuous(std::move(name), std::move(cells), std::move(unit));
}

TimeSeriesFrame::TimeSeriesFrame(std::vector<Timestamp> timestamps, std::vector<Column> columns)
    : timestamps_(std::move(timestamps)), columns_(std::move(columns)) {
    for (std::size_t i = 1; i < timestamps_.size(); ++i)
        if (!(timestamps_[i - 1] < timestamps_[i]))
            throw std::invalid_argument("frame: timestamps must be strictly increasing (duplicate or unsorted at row " +
                                        std::to_string(i) + ")");
    std::set<std::string> names;
    for (const auto& c : columns_) {
        if (c.size() != timestamps_.size())
            throw std::invalid_argument("frame: column '" + c.name + "' length " +
                                        std::to_string(c.size()) + " != index length " +
                                        std::to_string(timestamps_.size()));
        if (!names.insert(c.name).second)
            throw std::invalid_argument("frame: duplicate column name '" + c.name + "'");
    }
}

bool TimeSeriesFrame::has_column(const std::string& name) const {
    for (const auto& c : columns_)
        if (c.name == name) return true;
    return false;
}

const Column& TimeSeriesFrame::column(const std::string& name) const {
    for (const auto& c : columns_)
        if (c.name == name) return c;
    throw std::out_of_range("frame: no column named '" + name + "'");
}

TimeSeriesFrame TimeSeriesFrame::with_column(Column column) const {
    auto cols = columns_;
    cols.push_back(std::move(column));
    return TimeSeriesFrame(timestamps_, std::move(cols));
}

TimeSeriesFrame TimeSeriesFrame::select_rows(const std::vector<bool>& keep) const {
    if (keep.size() != n_rows())
        throw std::invalid_argument("select_rows: mask length mismatch");
    std::vector<Timestamp> ts;
    for (std::size_t i = 0; i < keep.size(); ++i)
        if (keep[i]) ts.push_back(timestamps_[i]);
    std::vector<Column> cols;
    cols.reserve(columns_.size());
    for (const auto& c : columns_) {
        Column out = c;
        out.reals.clear();
        out.labels.clear();
        for (std::size_t i = 0; i < keep.size(); ++i) {
            if (!keep[i]) continue;
            if (c.kind == ColumnKind::continuous)
                out.reals.push_back(c.reals[i]);
            else
                out.labels.push_back(c.labels[i]);
        }
        cols.push_back(std::move(out));
    }
    return TimeSeriesFrame(std::move(ts), std::move(cols));
}

TimeSeriesFrame TimeSeriesFrame::slice_rows(std::size_t begin, std::size_t end) const {
    if (begin > end || end > n_rows()) throw std::out_of_range("slice_rows: bad range");
    std::vector<bool> keep(n_rows(), false);
    for (std::size_t i = begin; i < end; ++i) keep[i] = true;
    return select_rows(keep);
}

TimeSeriesFrame merge_nearest(const TimeSeriesFrame& left, const TimeSeriesFrame& right,
                              std::int64_t tolerance_seconds) {
    if (tolerance_seconds < 0) throw std::invalid_argument("merge_nearest: negative tolerance");
    if (left.n_rows() == 0 || right.n_rows() == 0)
        throw std::invalid_argument("merge_nearest: both frames must be non-empty");
    for (const auto& rc : right.columns())
        if (left.has_column(rc.name))
            throw std::invalid_argument("merge_nearest: column '" + rc.name + "' exists on both sides");

    const auto& rts = right.timestamps();
    std::vector<std::optional<std::size_t>> match(left.n_rows());
    for (std::size_t i = 0; i < left.n_rows(); ++i) {
        const Timestamp t = left.timestamps()[i];
        auto it = std::lower_bound(rts.begin(), rts.end(), t);
        std::optional<std::size_t> best;
        std::int64_t best_dist = 0;
        auto consider = [&](std::size_t j) {
            const std::int64_t dist = std::llabs(rts[j].epoch_seconds - t.epoch_seconds);
            if (dist > tolerance_seconds) return;
            if (!best || dist < best_dist || (dist == best_dist && j < *best)) {
                best = j;
                best_dist = dist;
            }
        };
        if (it != rts.begin()) consider(static_cast<std::size_t>(it - rts.begin()) - 1);
        if (it != rts.end()) consider(static_cast<std::size_t>(it - rts.begin()));
        match[i] = best;
    }

    std::vector<Column> cols = left.columns();
    for (const auto& rc : right.columns()) {
        Column out = rc;
        out.reals.clear();
        out.labels.clear();
        for (std::size_t i = 0; i < left.n_rows(); ++i) {
            if (rc.kind == ColumnKind::continuous)
                out.reals.push_back(match[i] ? rc.reals[*match[i]] : std::nullopt);
            else
                out.labels.push_back(match[i] ? rc.labels[*match[i]] : std::nullopt);
        }
        cols.push_back(std::move(out));
    }
    return TimeSeriesFrame(left.timestamps(), std::move(cols));
}

TimeSeriesFrame extract_calendar(const TimeSeriesFrame& frame) {
    for (const char* name : kCalendarColumns)
        if (frame.has_column(name))
            throw std::invalid_argument(std::string("extract_calendar: column '") + name +
                                        "' already exists");

    const std::size_t n = frame.n_rows();
    std::vector<std::optional<double>> hour(n), day(n), month(n), weekday(n);
    for (std::size_t i = 0; i < n; ++i) {
        const CalendarFeatures cf = frame.timestamps()[i].calendar();
        hour[i] = static_cast<double>(cf.hour);
        day[i] = static_cast<double>(cf.day);
        month[i] = static_cast<double>(cf.month);
        weekday[i] = static_cast<double>(cf.weekday);
    }

    TimeSeriesFrame out = frame.with_column(Column::make_continuous("hour", std::move(hour)));
    out = out.with_column(Column::make_continuous("day", std::move(day)));
    out = out.with_column(Column::make_continuous("month", std::move(month)));
    return out.with_column(Column::make_continuous("weekday", std::move(weekday)));
}

}  // namespace solarcast
