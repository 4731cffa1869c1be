#include "lifeloop/ingest/catalogs.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <tuple>

#include <json.hpp>

#include "lifeloop/error.hpp"

namespace lifeloop::ingest {
namespace {

using nlohmann::json;

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw ValidationError("line " + std::to_string(line) + ": " + what);
}

json parse_line(const std::string& text, std::size_t line) {
    json obj = json::parse(text, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) fail(line, "invalid JSON object");
    return obj;
}

double number_field(const json& obj, const char* key, std::size_t line, bool required = true) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) fail(line, std::string("missing field '") + key + "'");
        return 0.0;
    }
    if (!it->is_number()) fail(line, std::string("field '") + key + "' must be a number");
    const double v = it->get<double>();
    if (v < 0) fail(line, std::string("field '") + key + "' must be nonnegative");
    return v;
}

std::string string_field(const json& obj, const char* key, std::size_t line) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string() || it->get<std::string>().empty()) {
        fail(line, std::string("field '") + key + "' must be a nonempty string");
    }
    return it->get<std::string>();
}

template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        fn(parse_line(text, line), line);
    }
}

int parse_clock(std::string_view hhmm) {
    if (hhmm.size() != 5 || hhmm[2] != ':') return -1;
    for (const auto i : {0, 1, 3, 4}) {
        if (hhmm[i] < '0' || hhmm[i] > '9') return -1;
    }
    const int h = (hhmm[0] - '0') * 10 + (hhmm[1] - '0');
    const int m = (hhmm[3] - '0') * 10 + (hhmm[4] - '0');
    if (m > 59 || h > 24 || (h == 24 && m != 0)) return -1;
    return h * 60 + m;
}

}  // namespace

bool DailyWindow::contains(Timestamp t) const {
    const auto minute = static_cast<int>((t - Timestamp{date_of(t)}).count() / 60);
    if (open_minute == close_minute) return false;
    if (open_minute < close_minute) return minute >= open_minute && minute < close_minute;
    return minute >= open_minute || minute < close_minute;
}

DailyWindow DailyWindow::parse(std::string_view text) {
    if (text.size() != 11 || text[5] != '-') throw ValidationError("bad opening window '" + std::string(text) + "'");
    const int open = parse_clock(text.substr(0, 5));
    const int close = parse_clock(text.substr(6, 5));
    if (open < 0 || close < 0 || open == 1440) throw ValidationError("bad opening window '" + std::string(text) + "'");
    return {open, close};
}

std::string DailyWindow::to_string() const {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%02d:%02d-%02d:%02d", open_minute / 60, open_minute % 60, close_minute / 60,
                  close_minute % 60);
    return buf;
}

ResourceCatalog::ResourceCatalog(std::vector<CatalogItem> items) : items_(std::move(items)) {
    for (const auto& item : items_) {
        if (item.dish_id.empty() || item.venue_id.empty()) throw ValidationError("catalog item missing dish or venue id");
        item.food.validate();
        if (item.travel_minutes < 0) throw ValidationError("catalog item '" + item.dish_id + "': negative travel time");
        if (item.price < 0) throw ValidationError("catalog item '" + item.dish_id + "': negative price");
    }
    std::sort(items_.begin(), items_.end(), [](const CatalogItem& a, const CatalogItem& b) {
        return std::tie(a.venue_id, a.dish_id) < std::tie(b.venue_id, b.dish_id);
    });
    const auto dup = std::adjacent_find(items_.begin(), items_.end(), [](const CatalogItem& a, const CatalogItem& b) {
        return a.venue_id == b.venue_id && a.dish_id == b.dish_id;
    });
    if (dup != items_.end()) {
        throw ValidationError("duplicate catalog entry (venue '" + dup->venue_id + "', dish '" + dup->dish_id + "')");
    }
}

const CatalogItem* ResourceCatalog::find(std::string_view dish_id, std::string_view venue_id) const {
    for (const auto& item : items_) {
        if (item.dish_id == dish_id && (venue_id.empty() || item.venue_id == venue_id)) return &item;
    }
    return nullptr;
}

ResourceCatalog parse_resource_catalog(std::istream& in) {
    std::vector<CatalogItem> items;
    for_each_record(in, [&](const json& obj, std::size_t line) {
        CatalogItem item;
        item.venue_id = string_field(obj, "venue", line);
        item.dish_id = string_field(obj, "dish", line);
        item.food.dish_id = item.dish_id;
        item.food.carbs_g = number_field(obj, "carbs_g", line);
        item.food.fat_g = number_field(obj, "fat_g", line);
        item.food.protein_g = number_field(obj, "protein_g", line);
        item.food.sugar_g = number_field(obj, "sugar_g", line);
        item.food.kcal = number_field(obj, "kcal", line);
        item.travel_minutes = number_field(obj, "travel_minutes", line);
        item.price = number_field(obj, "price", line, false);
        if (const auto it = obj.find("open"); it != obj.end()) {
            if (!it->is_string()) fail(line, "field 'open' must be a string");
            try {
                item.open = DailyWindow::parse(it->get<std::string>());
            } catch (const ValidationError& err) {
                fail(line, err.what());
            }
        }
        items.push_back(std::move(item));
    });
    return ResourceCatalog(std::move(items));
}

ResourceCatalog load_resource_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open resource catalog '" + path.string() + "'");
    return parse_resource_catalog(in);
}

void write_resource_catalog(std::ostream& out, const ResourceCatalog& catalog) {
    for (const auto& item : catalog.items()) {
        nlohmann::ordered_json obj;
        obj["venue"] = item.venue_id;
        obj["dish"] = item.dish_id;
        obj["carbs_g"] = item.food.carbs_g;
        obj["fat_g"] = item.food.fat_g;
        obj["protein_g"] = item.food.protein_g;
        obj["sugar_g"] = item.food.sugar_g;
        obj["kcal"] = item.food.kcal;
        obj["travel_minutes"] = item.travel_minutes;
        obj["open"] = item.open.to_string();
        obj["price"] = item.price;
        out << obj.dump() << '\n';
    }
}

std::vector<EnvSnapshot> parse_environment(std::istream& in) {
    std::vector<EnvSnapshot> out;
    for_each_record(in, [&](const json& obj, std::size_t line) {
        EnvSnapshot s;
        const auto t = try_parse_timestamp(string_field(obj, "timestamp", line));
        if (!t) fail(line, "bad timestamp");
        s.at = *t;
        s.aqi = number_field(obj, "aqi", line);
        s.pollen = number_field(obj, "pollen", line, false);
        out.push_back(s);
    });
    std::stable_sort(out.begin(), out.end(), [](const EnvSnapshot& a, const EnvSnapshot& b) { return a.at < b.at; });
    return out;
}

std::vector<EnvSnapshot> load_environment(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open environment file '" + path.string() + "'");
    return parse_environment(in);
}

void write_environment(std::ostream& out, std::span<const EnvSnapshot> snapshots) {
    for (const auto& s : snapshots) {
        nlohmann::ordered_json obj;
        obj["timestamp"] = format_timestamp(s.at);
        obj["aqi"] = s.aqi;
        obj["pollen"] = s.pollen;
        out << obj.dump() << '\n';
    }
}

}  // namespace lifeloop::ingest
