#include "lifeloop/ingest/event_log.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "lifeloop/error.hpp"
#include "lifeloop/ingest/records.hpp"
#include "lifeloop/ingest/vocabulary.hpp"

namespace lifeloop::ingest {
namespace {

using nlohmann::json;
using events::Event;
using events::StreamKind;

struct LineError {
    std::string reason;
};

std::string require_string(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw LineError{std::string("missing field: ") + key};
    if (!it->is_string()) throw LineError{std::string("field '") + key + "' must be a string"};
    return it->get<std::string>();
}

Timestamp require_time(const std::string& text, const char* key) {
    const auto t = try_parse_timestamp(text);
    if (!t) throw LineError{std::string("bad timestamp in '") + key + "'"};
    return *t;
}

Event event_from_json(const json& obj, std::size_t line) {
    if (!obj.is_object()) throw LineError{"record is not a JSON object"};
    Event e;
    const auto stream = require_string(obj, "stream");
    const auto kind = events::parse_stream_kind(stream);
    if (!kind) throw LineError{"unknown stream '" + stream + "'"};
    e.stream = *kind;
    e.category = require_string(obj, "category");
    if (e.category.empty()) throw LineError{"empty category"};
    e.subject = require_string(obj, "subject");
    if (e.subject.empty()) throw LineError{"empty subject"};
    e.start = require_time(require_string(obj, "start"), "start");

    if (const auto it = obj.find("id"); it != obj.end()) {
        if (!it->is_string() || it->get<std::string>().empty()) throw LineError{"field 'id' must be a nonempty string"};
        e.id = it->get<std::string>();
    } else {
        e.id = "L" + std::to_string(line);
    }
    if (const auto it = obj.find("end"); it != obj.end() && !it->is_null()) {
        if (!it->is_string()) throw LineError{"field 'end' must be a string"};
        e.end = require_time(it->get<std::string>(), "end");
        if (*e.end < e.start) throw LineError{"interval inverted"};
    }
    if (const auto it = obj.find("attrs"); it != obj.end()) {
        if (!it->is_object()) throw LineError{"field 'attrs' must be an object"};
        for (const auto& [k, v] : it->items()) {
            if (v.is_number()) {
                e.attrs.emplace(k, v.get<double>());
            } else if (v.is_string()) {
                e.attrs.emplace(k, v.get<std::string>());
            } else {
                throw LineError{"attr '" + k + "' must be a number or string"};
            }
        }
    }
    for (const auto& [k, v] : obj.items()) {
        if (k != "id" && k != "stream" && k != "category" && k != "start" && k != "end" && k != "subject" &&
            k != "attrs") {
            throw LineError{"unknown field '" + k + "'"};
        }
    }

    if (e.stream == StreamKind::activity && !is_activity_category(e.category)) {
        throw LineError{"unknown activity category '" + e.category + "'"};
    }
    if (e.stream == StreamKind::food) {
        for (const char* key : {"carbs_g", "fat_g", "protein_g", "sugar_g", "kcal"}) {
            if (e.number_or(key, 0.0) < 0) throw LineError{std::string("negative nutrient '") + key + "'"};
        }
    }
    if (e.stream == StreamKind::mood) {
        const auto v = e.number("valence");
        if (!v || (*v != -1.0 && *v != 0.0 && *v != 1.0)) throw LineError{"mood valence must be -1, 0 or 1"};
    }
    if (e.stream == StreamKind::environment) {
        if (e.number_or("aqi", 0.0) < 0 || e.number_or("pollen", 0.0) < 0) {
            throw LineError{"negative environment reading"};
        }
    }
    return e;
}

}  // namespace

ParseReport parse_event_log(std::istream& in) {
    ParseReport report;
    std::set<std::string, std::less<>> ids;
    std::string text;
    while (std::getline(in, text)) {
        ++report.lines_read;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) {
            ++report.blank_lines;
            continue;
        }
        const std::size_t line = report.lines_read;
        const json obj = json::parse(text, nullptr, false);
        if (obj.is_discarded()) {
            report.rejects.push_back({line, "invalid JSON"});
            continue;
        }
        try {
            Event e = event_from_json(obj, line);
            if (!ids.insert(e.id).second) throw LineError{"duplicate id '" + e.id + "'"};
            report.events.push_back(std::move(e));
        } catch (const LineError& err) {
            report.rejects.push_back({line, err.reason});
        } catch (const json::exception& err) {
            report.rejects.push_back({line, err.what()});
        }
    }
    return report;
}

ParseReport parse_event_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open event log '" + path.string() + "'");
    return parse_event_log(in);
}

std::string serialize_event(const events::Event& e) {
    nlohmann::ordered_json obj;
    obj["id"] = e.id;
    obj["stream"] = std::string(events::to_string(e.stream));
    obj["category"] = e.category;
    obj["start"] = format_timestamp(e.start);
    if (e.end) obj["end"] = format_timestamp(*e.end);
    obj["subject"] = e.subject;
    if (!e.attrs.empty()) {
        nlohmann::ordered_json attrs = nlohmann::ordered_json::object();
        for (const auto& [k, v] : e.attrs) {
            std::visit([&](const auto& x) { attrs[k] = x; }, v);
        }
        obj["attrs"] = std::move(attrs);
    }
    return obj.dump();
}

void write_event_log(std::ostream& out, std::span<const events::Event> events) {
    for (const auto& e : events) out << serialize_event(e) << '\n';
}

}  // namespace lifeloop::ingest
