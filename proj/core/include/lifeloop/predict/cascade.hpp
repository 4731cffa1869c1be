#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lifeloop::predict {

using ParameterMap = std::map<std::string, double, std::less<>>;

/// Overrides applying to people whose profile carries all of `tags`.
struct SubgroupOverride {
    std::vector<std::string> tags;  ///< kept sorted and unique
    ParameterMap values;

    bool operator==(const SubgroupOverride&) const = default;
};

/// Four layers of increasingly personal parameters. Resolution takes, for each
/// parameter, the value from the most personal layer defining it:
/// learned > individual > subgroup > universal.
struct ParameterCascade {
    ParameterMap universal;                 ///< layer 1, total
    std::vector<SubgroupOverride> subgroup; ///< layer 2
    ParameterMap individual;                ///< layer 3, static profile
    ParameterMap learned;                   ///< layer 4, estimated from data

    /// Throws ValidationError if a higher layer names a parameter absent from
    /// the universal layer, or two subgroup entries with the same tag set
    /// disagree on a value.
    void validate() const;
    bool operator==(const ParameterCascade&) const = default;
};

/// Universal defaults: glucose band 70-180 mg/dL, per-meal nutrient targets,
/// health-impact weights. The "hypoglycemia_risk" subgroup gets a less
/// stringent upper glucose target.
ParameterCascade default_cascade();

/// Resolves the effective parameters for a profile.
///
/// Among matching subgroup entries, one with more tags wins; equal-size tag
/// sets resolve by lexicographically smaller tag list, so the result never
/// depends on entry order.
ParameterMap resolve_parameters(const ParameterCascade& cascade, std::span<const std::string> profile_tags);

/// Layered config: {"universal": {...}, "subgroup": [{"tags": [...], "values": {...}}],
/// "individual": {...}, "learned": {...}}. Missing layers default to empty;
/// a missing universal layer defaults to default_cascade().universal.
ParameterCascade parse_cascade(std::string_view json_text);
ParameterCascade load_cascade(const std::filesystem::path& path);

/// Looks up a parameter; throws ValidationError naming it when absent.
double require(const ParameterMap& params, std::string_view name);

}  // namespace lifeloop::predict
