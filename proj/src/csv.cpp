#include "solarcast/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace solarcast {

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

bool CsvSchema::has(const std::string& name) const {
    return std::any_of(columns.begin(), columns.end(),
                       [&](const auto& c) { return c.first == name; });
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::optional<double> parse_cell(const std::string& field) {
    if (field.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
    return value;
}

}  // namespace

TimeSeriesFrame parse_csv(std::istream& input, const CsvSchema& schema) {
    std::string line;
    if (!std::getline(input, line)) throw std::runtime_error("csv: missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_line(line);

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < header.size(); ++i) index.emplace(header[i], i);

    auto locate = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw std::runtime_error("csv: header lacks column '" + name + "'");
        return it->second;
    };
    const std::size_t ts_idx = locate(schema.timestamp_column);
    std::vector<std::size_t> col_idx;
    col_idx.reserve(schema.columns.size());
    for (const auto& [name, kind] : schema.columns) {
        (void)kind;
        col_idx.push_back(locate(name));
    }

    std::vector<Timestamp> timestamps;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(input, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error("csv: row " + std::to_string(rows.size() + 2) + " has " +
                                     std::to_string(fields.size()) + " fields, header has " +
                                     std::to_string(header.size()));
        timestamps.push_back(Timestamp::parse_iso8601(fields[ts_idx]));
        rows.push_back(std::move(fields));
    }

    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return timestamps[a] < timestamps[b]; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (timestamps[order[i - 1]] == timestamps[order[i]])
            throw std::runtime_error("csv: duplicate timestamp " +
                                     timestamps[order[i]].to_iso8601());

    std::vector<Timestamp> sorted_ts;
    sorted_ts.reserve(order.size());
    for (std::size_t r : order) sorted_ts.push_back(timestamps[r]);

    std::vector<Column> columns;
    for (std::size_t c = 0; c < schema.columns.size(); ++c) {
        const auto& [name, kind] = schema.columns[c];
        if (kind == ColumnKind::continuous) {
            std::vector<std::optional<double>> cells;
            cells.reserve(order.size());
            for (std::size_t r : order) cells.push_back(parse_cell(rows[r][col_idx[c]]));
            auto unit_it = schema.units.find(name);
            columns.push_back(Column::make_continuous(
                name, std::move(cells), unit_it == schema.units.end() ? "" : unit_it->second));
        } else {
            std::vector<std::optional<std::string>> cells;
            cells.reserve(order.size());
            for (std::size_t r : order) {
                const std::string& f = rows[r][col_idx[c]];
                cells.push_back(f.empty() ? std::nullopt : std::optional<std::string>(f));
            }
            columns.push_back(Column::make_categorical(name, std::move(cells)));
        }
    }
    return TimeSeriesFrame(std::move(sorted_ts), std::move(columns));
}

TimeSeriesFrame parse_csv_text(const std::string& text, const CsvSchema& schema) {
    std::istringstream in(text);
    return parse_csv(in, schema);
}

TimeSeriesFrame parse_csv_file(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
    return parse_csv(in, schema);
}

void write_csv(const TimeSeriesFrame& frame, std::ostream& out) {
    out << "timestamp";
    for (const auto& c : frame.columns()) out << ',' << c.name;
    out << '\n';
    for (std::size_t i = 0; i < frame.n_rows(); ++i) {
        out << frame.timestamps()[i].to_iso8601();
        for (const auto& c : frame.columns()) {
            out << ',';
            if (c.is_missing(i)) continue;
            if (c.kind == ColumnKind::continuous)
                out << format_double(*c.reals[i]);
            else
                out << *c.labels[i];
        }
        out << '\n';
    }
}

std::string to_csv(const TimeSeriesFrame& frame) {
    std::ostringstream out;
    write_csv(frame, out);
    return out.str();
}

void write_csv_file(const TimeSeriesFrame& frame, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot write '" + path + "'");
    write_csv(frame, out);
}

}  // namespace solarcast
