#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lifeloop/events/event.hpp"

namespace lifeloop::ingest {

struct Reject {
    std::size_t line = 0;  ///< 1-based
    std::string reason;
};

/// Every input line is accounted for: lines_read == events.size() +
/// rejects.size() + blank_lines.
struct ParseReport {
    std::vector<events::Event> events;
    std::vector<Reject> rejects;
    std::size_t lines_read = 0;
    std::size_t blank_lines = 0;
};

/// Parses a JSON-lines event log. One object per line with required keys
/// "stream", "category", "start", "subject" and optional "id", "end", "attrs".
/// Lines without an id get "L<line>". Malformed lines are collected as rejects.
/// Throws IoError if the file cannot be opened.
ParseReport parse_event_log(const std::filesystem::path& path);
ParseReport parse_event_log(std::istream& in);

/// One JSON object, no trailing newline. Keys are emitted in a fixed order so
/// output is byte-stable.
std::string serialize_event(const events::Event& e);
void write_event_log(std::ostream& out, std::span<const events::Event> events);

}  // namespace lifeloop::ingest
