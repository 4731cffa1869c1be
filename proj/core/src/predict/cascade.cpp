#include "lifeloop/predict/cascade.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "detail/cascade_json.hpp"
#include "lifeloop/error.hpp"

namespace lifeloop::predict {
namespace {

std::vector<std::string> normalized(std::vector<std::string> tags) {
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    return tags;
}

void check_known(const ParameterMap& universal, const ParameterMap& layer, const std::string& layer_name) {
    for (const auto& [name, value] : layer) {
        if (!universal.contains(name)) {
            throw ValidationError("cascade layer '" + layer_name + "' sets unknown parameter '" + name + "'");
        }
    }
}

}  // namespace

void ParameterCascade::validate() const {
    check_known(universal, individual, "individual");
    check_known(universal, learned, "learned");
    for (std::size_t i = 0; i < subgroup.size(); ++i) {
        check_known(universal, subgroup[i].values, "subgroup");
        const auto tags_i = normalized(subgroup[i].tags);
        for (std::size_t j = i + 1; j < subgroup.size(); ++j) {
            if (normalized(subgroup[j].tags) != tags_i) continue;
            for (const auto& [name, value] : subgroup[i].values) {
                const auto it = subgroup[j].values.find(name);
                if (it != subgroup[j].values.end() && it->second != value) {
                    throw ValidationError("conflicting subgroup overrides for parameter '" + name + "'");
                }
            }
        }
    }
}

ParameterCascade default_cascade() {
    ParameterCascade c;
    c.universal = {
        {"glucose_low", 70.0},
        {"glucose_high", 180.0},
        // Per-meal nutrient targets used by the health-impact score.
        {"meal_carbs_low", 30.0},
        {"meal_carbs_high", 60.0},
        {"meal_sugar_max", 15.0},
        {"meal_fat_max", 20.0},
        {"meal_protein_low", 15.0},
        {"meal_kcal_max", 750.0},
        {"glycogen_carb_boost", 0.5},
        {"impact_w_carbs", 0.3},
        {"impact_w_sugar", 0.3},
        {"impact_w_fat", 0.2},
        {"impact_w_protein", 0.1},
        {"impact_w_kcal", 0.1},
        {"impact_scale", 0.2},
        // Post-meal glucose excursion (mg/dL) the learned carb ceiling aims for.
        {"allowed_excursion", 50.0},
    };
    c.subgroup.push_back({{"hypoglycemia_risk"}, {{"glucose_high", 200.0}}});
    return c;
}

ParameterMap resolve_parameters(const ParameterCascade& cascade, std::span<const std::string> profile_tags) {
    std::vector<std::string> profile(profile_tags.begin(), profile_tags.end());
    profile = normalized(std::move(profile));

    std::vector<const SubgroupOverride*> matching;
    std::vector<std::vector<std::string>> matching_tags;
    for (const auto& entry : cascade.subgroup) {
        auto tags = normalized(entry.tags);
        if (std::includes(profile.begin(), profile.end(), tags.begin(), tags.end())) {
            matching.push_back(&entry);
            matching_tags.push_back(std::move(tags));
        }
    }
    std::vector<std::size_t> order(matching.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    // Apply least specific first so the most specific entry writes last.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ta = matching_tags[a];
        const auto& tb = matching_tags[b];
        if (ta.size() != tb.size()) return ta.size() < tb.size();
        return ta > tb;
    });

    ParameterMap out = cascade.universal;
    for (const auto i : order) {
        for (const auto& [k, v] : matching[i]->values) out.insert_or_assign(k, v);
    }
    for (const auto& [k, v] : cascade.individual) out.insert_or_assign(k, v);
    for (const auto& [k, v] : cascade.learned) out.insert_or_assign(k, v);
    return out;
}

double require(const ParameterMap& params, std::string_view name) {
    const auto it = params.find(name);
    if (it == params.end()) throw ValidationError("missing parameter '" + std::string(name) + "'");
    return it->second;
}

ParameterCascade parse_cascade(std::string_view json_text) {
    const auto obj = nlohmann::json::parse(json_text, nullptr, false);
    if (obj.is_discarded()) throw ValidationError("cascade config is not valid JSON");
    detail::FieldErrors errors;
    auto cascade = detail::cascade_from_json(obj, "", errors);
    errors.throw_if_any("invalid cascade config:");
    return cascade;
}

ParameterCascade load_cascade(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open cascade config '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_cascade(buf.str());
}

}  // namespace lifeloop::predict

namespace lifeloop::detail {
namespace {

predict::ParameterMap parameter_map(const nlohmann::json& obj, const std::string& path, FieldErrors& errors) {
    predict::ParameterMap out;
    if (!obj.is_object()) {
        errors.add(path, "expected an object of parameter -> number");
        return out;
    }
    for (const auto& [k, v] : obj.items()) {
        if (!v.is_number()) {
            errors.add(join_path(path, k), "expected a number");
            continue;
        }
        out.emplace(k, v.get<double>());
    }
    return out;
}

}  // namespace

predict::ParameterCascade cascade_from_json(const nlohmann::json& obj, const std::string& prefix, FieldErrors& errors) {
    predict::ParameterCascade c = predict::default_cascade();
    if (!obj.is_object()) {
        errors.add(prefix.empty() ? "cascade" : prefix, "expected an object");
        return c;
    }
    reject_unknown(obj, {"universal", "subgroup", "individual", "learned"}, prefix, errors);

    if (const auto it = obj.find("universal"); it != obj.end()) {
        // A universal layer extends the built-in defaults rather than replacing them.
        for (const auto& [k, v] : parameter_map(*it, join_path(prefix, "universal"), errors)) {
            c.universal.insert_or_assign(k, v);
        }
    }
    if (const auto it = obj.find("subgroup"); it != obj.end()) {
        const auto path = join_path(prefix, "subgroup");
        if (!it->is_array()) {
            errors.add(path, "expected an array");
        } else {
            c.subgroup.clear();
            for (std::size_t i = 0; i < it->size(); ++i) {
                const auto& entry = (*it)[i];
                const auto epath = path + "[" + std::to_string(i) + "]";
                if (!entry.is_object()) {
                    errors.add(epath, "expected an object");
                    continue;
                }
                reject_unknown(entry, {"tags", "values"}, epath, errors);
                predict::SubgroupOverride o;
                const auto tags = entry.find("tags");
                if (tags == entry.end() || !tags->is_array() || tags->empty()) {
                    errors.add(epath + ".tags", "expected a nonempty array of strings");
                } else {
                    for (const auto& t : *tags) {
                        if (t.is_string()) {
                            o.tags.push_back(t.get<std::string>());
                        } else {
                            errors.add(epath + ".tags", "expected strings");
                        }
                    }
                    std::sort(o.tags.begin(), o.tags.end());
                    o.tags.erase(std::unique(o.tags.begin(), o.tags.end()), o.tags.end());
                }
                if (const auto vals = entry.find("values"); vals != entry.end()) {
                    o.values = parameter_map(*vals, epath + ".values", errors);
                }
                c.subgroup.push_back(std::move(o));
            }
        }
    }
    if (const auto it = obj.find("individual"); it != obj.end()) {
        c.individual = parameter_map(*it, join_path(prefix, "individual"), errors);
    }
    if (const auto it = obj.find("learned"); it != obj.end()) {
        c.learned = parameter_map(*it, join_path(prefix, "learned"), errors);
    }
    if (errors.empty()) {
        try {
            c.validate();
        } catch (const ValidationError& e) {
            errors.add(prefix.empty() ? "cascade" : prefix, e.what());
        }
    }
    return c;
}

}  // namespace lifeloop::detail
