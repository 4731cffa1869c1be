#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lifeloop/ingest/records.hpp"

namespace lifeloop::ingest {

/// Daily opening window [open, close) in minutes after midnight UTC. A window
/// with close < open wraps past midnight; close == open is never open and
/// 00:00-24:00 is always open.
struct DailyWindow {
    int open_minute = 0;
    int close_minute = 1440;

    bool contains(Timestamp t) const;
    static DailyWindow parse(std::string_view text);  ///< "HH:MM-HH:MM"
    std::string to_string() const;
    bool operator==(const DailyWindow&) const = default;
};

struct CatalogItem {
    std::string dish_id;
    std::string venue_id;
    FoodAttrs food;
    double travel_minutes = 0.0;
    DailyWindow open;
    double price = 0.0;

    bool operator==(const CatalogItem&) const = default;
};

/// Dishes available around the user, sorted by (venue_id, dish_id).
class ResourceCatalog {
public:
    ResourceCatalog() = default;
    /// Validates and sorts. Throws ValidationError on duplicates or negatives.
    explicit ResourceCatalog(std::vector<CatalogItem> items);

    std::span<const CatalogItem> items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    /// First item (in venue order) with the dish id, optionally at a given venue.
    const CatalogItem* find(std::string_view dish_id, std::string_view venue_id = {}) const;

    bool operator==(const ResourceCatalog&) const = default;

private:
    std::vector<CatalogItem> items_;
};

/// JSON-lines catalog: {"venue","dish","carbs_g","fat_g","protein_g","sugar_g",
/// "kcal","travel_minutes","open","price"}. Any error is fatal (ValidationError
/// naming the line).
ResourceCatalog load_resource_catalog(const std::filesystem::path& path);
ResourceCatalog parse_resource_catalog(std::istream& in);
void write_resource_catalog(std::ostream& out, const ResourceCatalog& catalog);

/// JSON-lines snapshots: {"timestamp","aqi","pollen"}; sorted by timestamp.
std::vector<EnvSnapshot> load_environment(const std::filesystem::path& path);
std::vector<EnvSnapshot> parse_environment(std::istream& in);
void write_environment(std::ostream& out, std::span<const EnvSnapshot> snapshots);

}  // namespace lifeloop::ingest
