#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace solarcast {

struct CalendarFeatures {
    int hour;     // 0-23
    int day;      // 1-31
    int month;    // 1-12
    int weekday;  // 0 = Monday .. 6 = Sunday
};

/// UTC timestamp with second resolution. Round-trips losslessly through the
/// ISO 8601 form "YYYY-MM-DDTHH:MM:SSZ"; no other text form is accepted.
struct Timestamp {
    std::int64_t epoch_seconds = 0;

    auto operator<=>(const Timestamp&) const = default;

    static Timestamp parse_iso8601(std::string_view text);  // throws std::invalid_argument
    std::string to_iso8601() const;

    CalendarFeatures calendar() const;
    int day_of_year() const;  // 1-based

    Timestamp plus_hours(std::int64_t h) const { return {epoch_seconds + 3600 * h}; }
};

}  // namespace solarcast
