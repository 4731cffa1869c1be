#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "lifeloop/time.hpp"

namespace lifeloop::events {

/// Sensing channel an event came from. Declaration order is the tie-break
/// order used when two events share a start time.
enum class StreamKind : std::uint8_t { activity, food, mood, medical, environment };

std::string_view to_string(StreamKind kind);
std::optional<StreamKind> parse_stream_kind(std::string_view text);

using AttrValue = std::variant<double, std::string>;
using AttrMap = std::map<std::string, AttrValue, std::less<>>;

/// A point or interval life event. A missing `end` marks a point event.
struct Event {
    std::string id;
    StreamKind stream = StreamKind::activity;
    std::string category;
    Timestamp start{};
    std::optional<Timestamp> end;
    AttrMap attrs;
    std::string subject;

    bool is_point() const { return !end.has_value(); }
    Timestamp end_or_start() const { return end.value_or(start); }

    std::optional<double> number(std::string_view key) const;
    std::optional<std::string> text(std::string_view key) const;
    double number_or(std::string_view key, double fallback) const { return number(key).value_or(fallback); }

    bool operator==(const Event&) const = default;
};

/// Throws ValidationError if the event breaks its invariants
/// (end < start, empty category, empty id).
void validate(const Event& e);

/// Total order used by the personicle: (start, stream, id).
bool chronological_less(const Event& a, const Event& b);

}  // namespace lifeloop::events
