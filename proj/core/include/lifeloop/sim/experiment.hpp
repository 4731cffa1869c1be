#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lifeloop/habit/waveform.hpp"
#include "lifeloop/predict/cascade.hpp"
#include "lifeloop/predict/pooling.hpp"
#include "lifeloop/predict/risk.hpp"
#include "lifeloop/recommend/dispatch.hpp"
#include "lifeloop/sim/acceptance.hpp"
#include "lifeloop/sim/scenario.hpp"

namespace lifeloop::sim {

struct HabitParams {
    double alpha = 0.1;
    double anomaly_k = 3.0;
    int baseline_days = 28;  ///< anomaly-score history length

    void validate() const;
    bool operator==(const HabitParams&) const = default;
};

/// Everything a run depends on besides the seed.
struct ExperimentConfig {
    std::string scenario = "commute_lunch";
    Arm arm = Arm::active;
    std::string subject = "bruce";
    int horizon_days = 28;
    Date start_date = Date{std::chrono::year{2017} / 3 / 6};
    PhysiologyParams physiology;
    AcceptanceCoefficients acceptance;
    /// `risk.risk` holds the initial accumulator value.
    predict::RiskModel risk = [] {
        predict::RiskModel m;
        m.risk = 4.0;
        return m;
    }();
    recommend::DispatchState dispatch;
    recommend::BehaviorModelParams recommend;
    HabitParams habit;
    predict::PopulationPrior pooling{1.0, 0.25, 0.25};  ///< rise per gram of carbs, mg/dL
    double min_observation_carbs = 20.0;
    predict::ParameterCascade cascade = predict::default_cascade();
    std::vector<std::string> profile_tags;
    ingest::ResourceCatalog catalog = default_catalog();
    std::vector<ingest::EnvSnapshot> environment;  ///< empty: use the scenario's own

    /// Throws ValidationError collecting every invalid field.
    void validate() const;
    bool operator==(const ExperimentConfig&) const = default;
};

/// Defaults for a named scenario (horizon included).
ExperimentConfig default_config(std::string_view scenario = "commute_lunch");

/// JSON config. Keys: scenario, arm, subject, horizon_days, tick_minutes,
/// start_date, catalog (path), environment (path), cascade (object or path),
/// profile_tags, physiology, acceptance, risk, dispatch, recommend, habit,
/// pooling. Relative paths resolve against `base_dir`. Unknown keys and bad
/// values are reported together in one ValidationError.
ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

struct Metrics {
    std::uint64_t seed = 0;
    Arm arm = Arm::active;
    std::size_t ticks = 0;
    double time_in_range = 0.0;
    double mean_glucose = 0.0;
    double final_sensitivity = 0.0;
    double final_risk = 0.0;
    double max_risk = 0.0;
    std::size_t alerts = 0;
    std::size_t recommendations = 0;
    std::size_t accepted = 0;
    double acceptance_rate = 0.0;
    std::size_t anomalous_days = 0;
    std::size_t mood_alerts = 0;
    double mean_accepted_health = 0.0;  ///< over accepted lunch suggestions
    bool operator==(const Metrics&) const = default;
};

struct TraceRow {
    Timestamp at{};
    double glucose = 0.0;
    double sensitivity = 0.0;
    double risk = 0.0;
};

struct DayRow {
    Date day{};
    predict::DayFeatures features;
    double risk = 0.0;
    double sensitivity = 0.0;
    double anomaly = 0.0;
    bool anomalous = false;
    bool alert = false;
};

struct RunResult {
    Metrics metrics;
    std::vector<TraceRow> trace;
    std::vector<DayRow> days;
    std::vector<recommend::Trigger> triggers;  ///< dispatched, in order
    std::vector<events::Event> events;         ///< realised events, chronological
    habit::HabitWaveform waveform;
    predict::ParameterMap resolved;            ///< parameters in force at the end
    double carbs_ingested = 0.0;
    double carbs_absorbed = 0.0;
};

/// Runs the closed loop for `horizon_days` of ticks. Deterministic in (cfg, seed).
RunResult run_experiment(const ExperimentConfig& cfg, std::uint64_t seed);

void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const Metrics& m);
void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows);
void write_days_csv(std::ostream& out, std::span<const DayRow> rows);
void write_audit_log(std::ostream& out, std::span<const recommend::Trigger> triggers);

struct SeedDelta {
    std::uint64_t seed = 0;
    Metrics treatment;
    Metrics control;
    double tir_delta = 0.0;          ///< treatment - control
    double mean_glucose_delta = 0.0;
    double final_risk_delta = 0.0;
};

struct ArmComparison {
    std::vector<SeedDelta> seeds;
    double mean_tir_delta = 0.0;
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t ties = 0;
    double sign_test_p = 1.0;
};

/// Two-sided exact sign test; zero deltas are dropped. 1 when no nonzero deltas.
double sign_test_p_value(std::size_t positive, std::size_t negative);

/// Paired runs of two configs that differ only in `arm`. Throws
/// ValidationError with fewer than two seeds or any other difference.
ArmComparison compare_arms(const ExperimentConfig& treatment, const ExperimentConfig& control,
                           std::span<const std::uint64_t> seeds);
/// Active vs placebo copies of `cfg`.
ArmComparison compare_arms(const ExperimentConfig& cfg, std::span<const std::uint64_t> seeds);

void write_comparison_csv(std::ostream& out, const ArmComparison& c);
void write_comparison_summary(std::ostream& out, const ArmComparison& c);

}  // namespace lifeloop::sim
