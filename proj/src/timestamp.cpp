#include "solarcast/timestamp.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace solarcast {

namespace {

using days = std::chrono::days;
using sys_days = std::chrono::sys_days;
using sys_seconds = std::chrono::sys_seconds;

int parse_int_exact(std::string_view s) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("timestamp: non-numeric field '" + std::string(s) + "'");
    return value;
}

}  // namespace

Timestamp Timestamp::parse_iso8601(std::string_view text) {
    // Strict "YYYY-MM-DDTHH:MM:SSZ".
    if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
        text[13] != ':' || text[16] != ':' || text[19] != 'Z')
        throw std::invalid_argument("timestamp: malformed ISO 8601 value '" + std::string(text) + "'");

    const int y = parse_int_exact(text.substr(0, 4));
    const int mo = parse_int_exact(text.substr(5, 2));
    const int d = parse_int_exact(text.substr(8, 2));
    const int h = parse_int_exact(text.substr(11, 2));
    const int mi = parse_int_exact(text.substr(14, 2));
    const int s = parse_int_exact(text.substr(17, 2));

    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(mo)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 59)
        throw std::invalid_argument("timestamp: out-of-range ISO 8601 value '" + std::string(text) + "'");

    const std::int64_t day_count = sys_days{ymd}.time_since_epoch().count();
    return Timestamp{day_count * 86400 + h * 3600 + mi * 60 + s};
}

std::string Timestamp::to_iso8601() const {
    const sys_seconds tp{std::chrono::seconds{epoch_seconds}};
    const sys_days dp = std::chrono::floor<days>(tp);
    const std::chrono::year_month_day ymd{dp};
    const std::chrono::hh_mm_ss hms{tp - dp};

    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()),
                  static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                  static_cast<long>(hms.seconds().count()));
    return buf;
}

CalendarFeatures Timestamp::calendar() const {
    const sys_seconds tp{std::chrono::seconds{epoch_seconds}};
    const sys_days dp = std::chrono::floor<days>(tp);
    const std::chrono::year_month_day ymd{dp};
    const std::chrono::weekday wd{dp};
    const std::chrono::hh_mm_ss hms{tp - dp};

    return CalendarFeatures{
        static_cast<int>(hms.hours().count()),
        static_cast<int>(unsigned(ymd.day())),
        static_cast<int>(unsigned(ymd.month())),
        static_cast<int>((wd.c_encoding() + 6) % 7),  // c_encoding: 0 = Sunday
    };
}

int Timestamp::day_of_year() const {
    const sys_seconds tp{std::chrono::seconds{epoch_seconds}};
    const sys_days dp = std::chrono::floor<days>(tp);
    const std::chrono::year_month_day ymd{dp};
    const sys_days jan1{std::chrono::year_month_day{ymd.year(), std::chrono::January, std::chrono::day{1}}};
    return static_cast<int>((dp - jan1).count()) + 1;
}

}  // namespace solarcast
