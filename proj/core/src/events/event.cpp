#include "lifeloop/events/event.hpp"

#include <array>
#include <tuple>

#include "lifeloop/error.hpp"

namespace lifeloop::events {
namespace {

constexpr std::array<std::string_view, 5> kStreamNames = {"activity", "food", "mood", "medical", "environment"};

}  // namespace

std::string_view to_string(StreamKind kind) { return kStreamNames[static_cast<std::size_t>(kind)]; }

std::optional<StreamKind> parse_stream_kind(std::string_view text) {
    for (std::size_t i = 0; i < kStreamNames.size(); ++i) {
        if (kStreamNames[i] == text) return static_cast<StreamKind>(i);
    }
    return std::nullopt;
}

std::optional<double> Event::number(std::string_view key) const {
    const auto it = attrs.find(key);
    if (it == attrs.end()) return std::nullopt;
    if (const auto* v = std::get_if<double>(&it->second)) return *v;
    return std::nullopt;
}

std::optional<std::string> Event::text(std::string_view key) const {
    const auto it = attrs.find(key);
    if (it == attrs.end()) return std::nullopt;
    if (const auto* v = std::get_if<std::string>(&it->second)) return *v;
    return std::nullopt;
}

void validate(const Event& e) {
    if (e.id.empty()) throw ValidationError("event has empty id");
    if (e.category.empty()) throw ValidationError("event '" + e.id + "' has empty category");
    if (e.end && *e.end < e.start) throw ValidationError("event '" + e.id + "': interval inverted");
}

bool chronological_less(const Event& a, const Event& b) {
    return std::tie(a.start, a.stream, a.id) < std::tie(b.start, b.stream, b.id);
}

}  // namespace lifeloop::events
