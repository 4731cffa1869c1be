#include <fstream>
#include <sstream>

#include <json.hpp>

#include "detail/cascade_json.hpp"
#include "detail/json_fields.hpp"
#include "lifeloop/error.hpp"
#include "lifeloop/sim/experiment.hpp"

namespace lifeloop::sim {
namespace {

using nlohmann::json;
using detail::FieldErrors;
using detail::join_path;

struct NumberField {
    const char* name;
    double* target;
};

struct IntField {
    const char* name;
    int* target;
};

/// Reads a flat object of numeric fields; any other key is an error.
void read_section(const json& parent, const char* key, const std::string& prefix, std::vector<NumberField> numbers,
                  std::vector<IntField> ints, FieldErrors& errors, std::vector<const char*> nested = {}) {
    const auto it = parent.find(key);
    if (it == parent.end()) return;
    const std::string path = join_path(prefix, key);
    if (!it->is_object()) {
        errors.add(path, "expected an object");
        return;
    }
    for (const auto& [k, v] : it->items()) {
        const auto named = [&k](const char* n) { return k == n; };
        if (std::none_of(numbers.begin(), numbers.end(), [&](const NumberField& f) { return named(f.name); }) &&
            std::none_of(ints.begin(), ints.end(), [&](const IntField& f) { return named(f.name); }) &&
            std::none_of(nested.begin(), nested.end(), named)) {
            errors.add(join_path(path, k), "unknown field");
        }
    }
    for (const auto& f : numbers) detail::read_number(*it, f.name, path, *f.target, errors);
    for (const auto& f : ints) {
        long long v = 0;
        if (!detail::read_integer(*it, f.name, path, v, errors)) continue;
        if (v < INT32_MIN || v > INT32_MAX) {
            errors.add(join_path(path, f.name), "out of range");
            continue;
        }
        *f.target = static_cast<int>(v);
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

template <class F>
void collect(FieldErrors& errors, const std::string& field, F&& check) {
    try {
        check();
    } catch (const ValidationError& e) {
        errors.add(field, e.what());
    }
}

void check_config(const ExperimentConfig& cfg, FieldErrors& errors) {
    collect(errors, "scenario", [&] { default_horizon_days(cfg.scenario); });
    if (cfg.subject.empty()) errors.add("subject", "must be nonempty");
    if (cfg.horizon_days < 0) errors.add("horizon_days", "must be >= 0");
    collect(errors, "physiology", [&] { cfg.physiology.validate(); });
    collect(errors, "acceptance", [&] { cfg.acceptance.validate(); });
    collect(errors, "risk", [&] { cfg.risk.validate(); });
    collect(errors, "dispatch", [&] { cfg.dispatch.validate(); });
    collect(errors, "recommend", [&] { cfg.recommend.validate(); });
    collect(errors, "habit", [&] { cfg.habit.validate(); });
    collect(errors, "pooling", [&] { cfg.pooling.validate(); });
    if (!(cfg.min_observation_carbs > 0)) errors.add("pooling.min_observation_carbs", "must be positive");
    collect(errors, "cascade", [&] {
        cfg.cascade.validate();
        const auto params = predict::resolve_parameters(cfg.cascade, cfg.profile_tags);
        for (const char* name : {"glucose_low", "glucose_high", "allowed_excursion"}) predict::require(params, name);
        if (!(predict::require(params, "glucose_low") < predict::require(params, "glucose_high"))) {
            throw ValidationError("glucose_low must be below glucose_high");
        }
    });
}

}  // namespace

void HabitParams::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in (0, 1]");
    if (!(anomaly_k >= 0.0)) throw ValidationError("anomaly_k must be >= 0");
    if (baseline_days < 7) throw ValidationError("baseline_days must be >= 7");
}

void ExperimentConfig::validate() const {
    FieldErrors errors;
    check_config(*this, errors);
    errors.throw_if_any("invalid experiment config:");
}

ExperimentConfig default_config(std::string_view scenario) {
    ExperimentConfig cfg;
    cfg.scenario = std::string(scenario);
    cfg.horizon_days = default_horizon_days(scenario);
    return cfg;
}

ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ValidationError("config must be a JSON object");

    FieldErrors errors;
    detail::reject_unknown(root,
                           {"scenario", "arm", "subject", "horizon_days", "tick_minutes", "start_date", "catalog",
                            "environment", "cascade", "profile_tags", "physiology", "acceptance", "risk", "dispatch",
                            "recommend", "habit", "pooling"},
                           "", errors);

    std::string scenario = "commute_lunch";
    detail::read_string(root, "scenario", "", scenario, errors);
    ExperimentConfig cfg;
    try {
        cfg = default_config(scenario);
    } catch (const ValidationError& e) {
        errors.add("scenario", e.what());
        cfg = default_config();
    }

    std::string text;
    if (detail::read_string(root, "arm", "", text, errors)) {
        if (const auto arm = parse_arm(text)) {
            cfg.arm = *arm;
        } else {
            errors.add("arm", "expected 'active' or 'placebo'");
        }
    }
    detail::read_string(root, "subject", "", cfg.subject, errors);
    long long n = 0;
    if (detail::read_integer(root, "horizon_days", "", n, errors)) {
        if (n < 0 || n > 3660) {
            errors.add("horizon_days", "must lie in [0, 3660]");
        } else {
            cfg.horizon_days = static_cast<int>(n);
        }
    }
    if (detail::read_integer(root, "tick_minutes", "", n, errors)) {
        if (n <= 0 || n > 1440) {
            errors.add("tick_minutes", "must lie in [1, 1440]");
        } else {
            cfg.physiology.tick_minutes = static_cast<int>(n);
        }
    }
    if (detail::read_string(root, "start_date", "", text, errors)) {
        if (const auto d = try_parse_date(text)) {
            cfg.start_date = *d;
        } else {
            errors.add("start_date", "expected YYYY-MM-DD");
        }
    }
    if (detail::read_string(root, "catalog", "", text, errors)) {
        collect(errors, "catalog", [&] { cfg.catalog = ingest::load_resource_catalog(resolve(base_dir, text)); });
    }
    if (detail::read_string(root, "environment", "", text, errors)) {
        collect(errors, "environment", [&] { cfg.environment = ingest::load_environment(resolve(base_dir, text)); });
    }
    if (const auto it = root.find("cascade"); it != root.end()) {
        if (it->is_string()) {
            collect(errors, "cascade", [&] { cfg.cascade = predict::load_cascade(resolve(base_dir, it->get<std::string>())); });
        } else if (it->is_object()) {
            cfg.cascade = detail::cascade_from_json(*it, "cascade", errors);
        } else {
            errors.add("cascade", "expected an object or a path");
        }
    }
    if (const auto it = root.find("profile_tags"); it != root.end()) {
        if (!it->is_array()) {
            errors.add("profile_tags", "expected an array of strings");
        } else {
            cfg.profile_tags.clear();
            for (const auto& tag : *it) {
                if (tag.is_string()) {
                    cfg.profile_tags.push_back(tag.get<std::string>());
                } else {
                    errors.add("profile_tags", "expected an array of strings");
                }
            }
        }
    }

    auto& ph = cfg.physiology;
    read_section(root, "physiology", "",
                 {{"carb_gain", &ph.carb_gain},
                  {"exercise_gain", &ph.exercise_gain},
                  {"relaxation", &ph.relaxation},
                  {"s_base_max", &ph.s_base_max},
                  {"s_base_slope", &ph.s_base_slope},
                  {"medication_effect", &ph.medication_effect},
                  {"drift_rate", &ph.drift_rate},
                  {"basal_glucose", &ph.basal_glucose},
                  {"exercise_acute", &ph.exercise_acute},
                  {"glucose_min", &ph.glucose_min},
                  {"glucose_max", &ph.glucose_max},
                  {"sensitivity_min", &ph.sensitivity_min},
                  {"sensitivity_max", &ph.sensitivity_max}},
                 {{"absorption_minutes", &ph.absorption_minutes}, {"medication_minutes", &ph.medication_minutes}},
                 errors);

    auto& ac = cfg.acceptance;
    read_section(root, "acceptance", "",
                 {{"motivation", &ac.motivation}, {"ability", &ac.ability}, {"offset", &ac.offset}}, {}, errors);

    auto& rk = cfg.risk;
    read_section(root, "risk", "", {{"beta", &rk.beta}, {"initial", &rk.risk}}, {}, errors,
                 {"weights", "bounds", "thresholds"});
    if (const auto it = root.find("risk"); it != root.end() && it->is_object()) {
        read_section(*it, "weights", "risk",
                     {{"high_sugar_meal", &rk.weights.high_sugar_meal},
                      {"high_fat_meal", &rk.weights.high_fat_meal},
                      {"sedentary_hour", &rk.weights.sedentary_hour},
                      {"negative_mood", &rk.weights.negative_mood},
                      {"aqi_excess", &rk.weights.aqi_excess},
                      {"exercise_minute", &rk.weights.exercise_minute}},
                     {}, errors);
        read_section(*it, "bounds", "risk",
                     {{"high_sugar_meals", &rk.bounds.high_sugar_meals},
                      {"high_fat_meals", &rk.bounds.high_fat_meals},
                      {"sedentary_hours", &rk.bounds.sedentary_hours},
                      {"negative_mood", &rk.bounds.negative_mood},
                      {"aqi_excess", &rk.bounds.aqi_excess},
                      {"exercise_minutes", &rk.bounds.exercise_minutes}},
                     {}, errors);
        read_section(*it, "thresholds", "risk",
                     {{"sugar_g", &rk.thresholds.sugar_g},
                      {"fat_g", &rk.thresholds.fat_g},
                      {"aqi_base", &rk.thresholds.aqi_base},
                      {"aqi_scale", &rk.thresholds.aqi_scale}},
                     {}, errors);
    }

    auto& ds = cfg.dispatch;
    double gap_hours = static_cast<double>(std::chrono::duration_cast<hours>(ds.min_gap).count());
    read_section(root, "dispatch", "",
                 {{"theta_high", &ds.theta_high}, {"theta_low", &ds.theta_low}, {"min_gap_hours", &gap_hours}}, {},
                 errors);
    ds.min_gap = Duration{static_cast<Duration::rep>(gap_hours * 3600.0)};

    auto& rc = cfg.recommend;
    int top_n = static_cast<int>(rc.top_n);
    read_section(root, "recommend", "",
                 {{"lambda", &rc.lambda},
                  {"a_min", &rc.a_min},
                  {"w_preference", &rc.w_preference},
                  {"w_goal", &rc.w_goal},
                  {"w_social", &rc.w_social},
                  {"trigger_bonus", &rc.trigger_bonus},
                  {"preference_floor", &rc.preference_floor}},
                 {{"top_n", &top_n}}, errors);
    if (top_n < 1) {
        errors.add("recommend.top_n", "must be positive");
    } else {
        rc.top_n = static_cast<std::size_t>(top_n);
    }

    read_section(root, "habit", "", {{"alpha", &cfg.habit.alpha}, {"anomaly_k", &cfg.habit.anomaly_k}},
                 {{"baseline_days", &cfg.habit.baseline_days}}, errors);
    read_section(root, "pooling", "",
                 {{"mu0", &cfg.pooling.mu0},
                  {"tau2", &cfg.pooling.tau2},
                  {"sigma2", &cfg.pooling.sigma2},
                  {"min_observation_carbs", &cfg.min_observation_carbs}},
                 {}, errors);

    check_config(cfg, errors);
    errors.throw_if_any("invalid experiment config:");
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_file(path), path.parent_path());
}

}  // namespace lifeloop::sim
