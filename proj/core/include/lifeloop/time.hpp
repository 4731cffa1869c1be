#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace lifeloop {

/// UTC instant at one-second resolution.
using Timestamp = std::chrono::sys_seconds;
using Duration = std::chrono::seconds;
using Date = std::chrono::sys_days;

using std::chrono::hours;
using std::chrono::minutes;

/// Parses "YYYY-MM-DDTHH:MM:SSZ". Returns nullopt on any deviation from that form.
std::optional<Timestamp> try_parse_timestamp(std::string_view text);

/// Throws ValidationError on malformed input.
Timestamp parse_timestamp(std::string_view text);

std::string format_timestamp(Timestamp t);

/// Parses "YYYY-MM-DD".
std::optional<Date> try_parse_date(std::string_view text);
std::string format_date(Date d);

inline Date date_of(Timestamp t) { return std::chrono::floor<std::chrono::days>(t); }

/// 0 = Monday ... 6 = Sunday.
inline unsigned iso_weekday_index(Date d) { return std::chrono::weekday{d}.iso_encoding() - 1; }

inline Timestamp at_time(Date d, int hour, int minute = 0) {
    return Timestamp{d} + hours{hour} + minutes{minute};
}

}  // namespace lifeloop
