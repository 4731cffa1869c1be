#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lifeloop/error.hpp"
#include "lifeloop/events/personicle.hpp"
#include "lifeloop/habit/waveform.hpp"
#include "lifeloop/ingest/catalogs.hpp"
#include "lifeloop/ingest/event_log.hpp"
#include "lifeloop/predict/risk.hpp"
#include "lifeloop/predict/rules.hpp"
#include "lifeloop/sim/experiment.hpp"

namespace fs = std::filesystem;
using namespace lifeloop;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            seeds.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError("bad seed '" + item + "'");
        }
    }
    return seeds;
}

/// One personicle per subject, in subject order.
std::vector<events::Personicle> by_subject(const std::vector<events::Event>& evs) {
    std::map<std::string, std::vector<events::Event>> groups;
    for (const auto& e : evs) groups[e.subject].push_back(e);
    std::vector<events::Personicle> out;
    for (const auto& [subject, list] : groups) out.push_back(events::merge_streams(list));
    return out;
}

ingest::ParseReport read_log(const fs::path& path, bool strict) {
    auto report = ingest::parse_event_log(path);
    if (strict && !report.rejects.empty()) {
        const auto& r = report.rejects.front();
        throw ValidationError(path.string() + ": " + std::to_string(report.rejects.size()) + " invalid line(s); line " +
                              std::to_string(r.line) + ": " + r.reason);
    }
    return report;
}

int cmd_run(const std::string& config, std::uint64_t seed, const std::string& arm, const fs::path& out_dir) {
    auto cfg = sim::load_config(config);
    if (!arm.empty()) cfg.arm = *sim::parse_arm(arm);
    const auto result = sim::run_experiment(cfg, seed);
    ensure_dir(out_dir);
    {
        auto out = open_out(out_dir / "metrics.csv");
        sim::write_metrics_header(out);
        sim::write_metrics_row(out, result.metrics);
    }
    auto trace = open_out(out_dir / "trace.csv");
    sim::write_trace_csv(trace, result.trace);
    auto triggers = open_out(out_dir / "triggers.jsonl");
    sim::write_audit_log(triggers, result.triggers);
    auto evs = open_out(out_dir / "events.jsonl");
    ingest::write_event_log(evs, result.events);
    auto risk = open_out(out_dir / "risk.csv");
    sim::write_days_csv(risk, result.days);
    auto wave = open_out(out_dir / "waveform.csv");
    habit::write_waveform_csv(wave, result.waveform);

    const auto& m = result.metrics;
    std::cout << "time in range " << m.time_in_range << ", mean glucose " << m.mean_glucose << ", alerts " << m.alerts
              << ", recommendations " << m.recommendations << ", accepted " << m.accepted << '\n';
    return 0;
}

int cmd_compare(const std::string& config, const std::string& seeds_text, const fs::path& out_dir) {
    const auto cfg = sim::load_config(config);
    const auto seeds = parse_seeds(seeds_text);
    const auto cmp = sim::compare_arms(cfg, seeds);
    ensure_dir(out_dir);
    auto csv = open_out(out_dir / "compare.csv");
    sim::write_comparison_csv(csv, cmp);
    auto metrics = open_out(out_dir / "metrics.csv");
    sim::write_metrics_header(metrics);
    for (const auto& d : cmp.seeds) {
        sim::write_metrics_row(metrics, d.treatment);
        sim::write_metrics_row(metrics, d.control);
    }
    auto summary = open_out(out_dir / "summary.txt");
    sim::write_comparison_summary(summary, cmp);
    sim::write_comparison_summary(std::cout, cmp);
    return 0;
}

int cmd_mine(const fs::path& log, const predict::MiningParams& params, const std::string& out_path) {
    const auto report = read_log(log, false);
    const auto rules = predict::mine_rules(by_subject(report.events), params);
    if (out_path.empty()) {
        predict::write_rules_csv(std::cout, rules);
    } else {
        auto out = open_out(out_path);
        predict::write_rules_csv(out, rules);
    }
    if (!report.rejects.empty()) std::cerr << report.rejects.size() << " invalid line(s) skipped\n";
    return 0;
}

int cmd_report(const fs::path& log, const std::string& env_path, const fs::path& out_dir) {
    const auto report = read_log(log, false);
    const auto people = by_subject(report.events);
    if (people.size() != 1) throw ValidationError("report needs a log with exactly one subject");
    const auto& p = people.front();
    const std::vector<ingest::EnvSnapshot> env = env_path.empty() ? std::vector<ingest::EnvSnapshot>{}
                                                                    : ingest::load_environment(env_path);
    ensure_dir(out_dir);

    const auto span = *p.span();
    const Date first = date_of(span.start);
    const Date last = date_of(span.end);
    predict::RiskModel model;
    habit::HabitWaveform waveform(0.1);
    std::vector<sim::DayRow> rows;
    for (Date day = first; day <= last; day += std::chrono::days{1}) {
        sim::DayRow row;
        row.day = day;
        row.features = predict::extract_day_features(p.events(), env, day, model.thresholds, model.bounds);
        model = predict::risk_update(model, row.features);
        row.risk = model.risk;
        rows.push_back(row);
        if (iso_weekday_index(day) == 6 || day == last) {
            const Date week_start = day - std::chrono::days{iso_weekday_index(day)};
            waveform = habit::update_waveform(waveform, habit::weekly_occupancy(p, week_start));
        }
    }
    auto risk = open_out(out_dir / "risk.csv");
    sim::write_days_csv(risk, rows);
    auto wave = open_out(out_dir / "waveform.csv");
    habit::write_waveform_csv(wave, waveform);
    std::cout << rows.size() << " day(s), " << p.size() << " event(s)\n";
    return 0;
}

int cmd_validate(const std::string& config, const std::string& log, const std::string& catalog,
                 const std::string& environment) {
    if (config.empty() && log.empty() && catalog.empty() && environment.empty()) {
        throw ValidationError("nothing to validate: pass --config, --log, --catalog or --environment");
    }
    nlohmann::ordered_json summary;
    bool ok = true;
    if (!config.empty()) {
        sim::load_config(config);
        summary["config"] = "ok";
    }
    if (!catalog.empty()) summary["catalog_items"] = ingest::load_resource_catalog(catalog).size();
    if (!environment.empty()) summary["environment_snapshots"] = ingest::load_environment(environment).size();
    if (!log.empty()) {
        const auto report = ingest::parse_event_log(log);
        summary["log_lines"] = report.lines_read;
        summary["log_events"] = report.events.size();
        auto rejects = nlohmann::ordered_json::array();
        for (const auto& r : report.rejects) rejects.push_back({{"line", r.line}, {"reason", r.reason}});
        summary["log_rejects"] = std::move(rejects);
        ok = report.rejects.empty();
    }
    std::cout << summary.dump() << '\n';
    return ok ? 0 : 2;
}

void print_error(const char* kind, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-loop lifelog health simulator"};
    app.require_subcommand(1);

    std::string config, arm, seeds, log, catalog, environment, out;
    std::uint64_t seed = 1;

    auto* run = app.add_subcommand("run", "Run one experiment");
    run->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Random seed");
    run->add_option("--arm", arm, "Override the config's arm")->check(CLI::IsMember({"active", "placebo"}));
    run->add_option("--out", out, "Output directory")->required();

    auto* compare = app.add_subcommand("compare", "Paired active vs placebo runs");
    compare->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    compare->add_option("--seeds", seeds, "Comma-separated seeds")->required();
    compare->add_option("--out", out, "Output directory")->required();

    predict::MiningParams mining;
    long window_minutes = 240, horizon_minutes = 180;
    auto* mine = app.add_subcommand("mine", "Mine sequential rules from an event log");
    mine->add_option("--log", log, "Event log (JSON lines)")->required()->check(CLI::ExistingFile);
    mine->add_option("--consequent", mining.consequent, "Consequent category")->required();
    mine->add_option("--window-minutes", window_minutes, "Antecedent window")->check(CLI::PositiveNumber);
    mine->add_option("--horizon-minutes", horizon_minutes, "Consequent horizon")->check(CLI::PositiveNumber);
    mine->add_option("--min-support", mining.min_support, "Minimum support");
    mine->add_option("--max-len", mining.max_len, "Maximum antecedent length (1-3)")->check(CLI::Range(1, 3));
    mine->add_option("--out", out, "Rules CSV (stdout when omitted)");

    auto* report = app.add_subcommand("report", "Export waveform and risk CSVs for an event log");
    report->add_option("--log", log, "Event log (JSON lines)")->required()->check(CLI::ExistingFile);
    report->add_option("--environment", environment, "Environment snapshots (JSON lines)")->check(CLI::ExistingFile);
    report->add_option("--out", out, "Output directory")->required();

    auto* validate = app.add_subcommand("validate", "Schema-check inputs");
    validate->add_option("--config", config, "Experiment config (JSON)")->check(CLI::ExistingFile);
    validate->add_option("--log", log, "Event log (JSON lines)")->check(CLI::ExistingFile);
    validate->add_option("--catalog", catalog, "Resource catalog (JSON lines)")->check(CLI::ExistingFile);
    validate->add_option("--environment", environment, "Environment snapshots (JSON lines)")->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage", e.what());
        return 64;
    }

    try {
        if (*run) return cmd_run(config, seed, arm, out);
        if (*compare) return cmd_compare(config, seeds, out);
        if (*mine) {
            mining.window = minutes{window_minutes};
            mining.horizon = minutes{horizon_minutes};
            return cmd_mine(log, mining, out);
        }
        if (*report) return cmd_report(log, environment, out);
        if (*validate) return cmd_validate(config, log, catalog, environment);
    } catch (const ValidationError& e) {
        print_error("validation", e.what());
        return 2;
    } catch (const IoError& e) {
        print_error("io", e.what());
        return 3;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 1;
    }
    return 0;
}
