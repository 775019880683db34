#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "solarcast/frame.hpp"

namespace solarcast {

/// Shortest round-trip decimal form of a double (std::to_chars). All CSV and
/// plot-data output goes through this so re-emission is byte-identical.
std::string format_double(double value);

/// Column layout expected from a CSV source. Columns present in the file but
/// not named here are ignored; named columns must exist.
struct CsvSchema {
    std::string timestamp_column = "timestamp";
    std::vector<std::pair<std::string, ColumnKind>> columns;  // in desired output order
    std::map<std::string, std::string> units;                 // optional, per column

    bool has(const std::string& name) const;
};

/// Parses the interchange CSV: UTF-8, comma-separated, header row, ISO 8601
/// timestamps, empty field = missing. Rows are sorted by timestamp; duplicate
/// timestamps and malformed timestamps are errors; unparseable numeric cells
/// become missing. Fields must not contain commas (no quoting).
TimeSeriesFrame parse_csv(std::istream& input, const CsvSchema& schema);
TimeSeriesFrame parse_csv_text(const std::string& text, const CsvSchema& schema);
TimeSeriesFrame parse_csv_file(const std::string& path, const CsvSchema& schema);

void write_csv(const TimeSeriesFrame& frame, std::ostream& out);
std::string to_csv(const TimeSeriesFrame& frame);
void write_csv_file(const TimeSeriesFrame& frame, const std::string& path);

}  // namespace solarcast
