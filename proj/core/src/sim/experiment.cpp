#include "lifeloop/sim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "lifeloop/error.hpp"
#include "lifeloop/events/personicle.hpp"
#include "lifeloop/predict/preference.hpp"

namespace lifeloop::sim {
namespace {

using events::Event;
using events::StreamKind;

constexpr std::uint64_t kPatientStream = 2;
constexpr double kHyperglycemia = 250.0;
constexpr double kHypoglycemia = 70.0;

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

/// Rise in glucose per gram of carbs around one isolated meal.
struct RiseObservation {
    Timestamp until{};
    double start_glucose = 0.0;
    double peak = 0.0;
    double carbs = 0.0;
};

class Loop {
public:
    Loop(const ExperimentConfig& cfg, std::uint64_t seed)
        : cfg_(cfg),
          scenario_(generate_scenario(cfg.scenario, seed, {cfg.subject, cfg.start_date, cfg.horizon_days})),
          env_(cfg.environment.empty() ? scenario_.environment : cfg.environment),
          cascade_(cfg.cascade),
          risk_(cfg.risk),
          dispatch_(cfg.dispatch),
          patient_(initial_patient(Timestamp{cfg.start_date}, baseline_sensitivity(cfg.risk.risk, cfg.physiology),
                                   make_rng(seed, kPatientStream))) {
        out_.metrics.seed = seed;
        out_.metrics.arm = cfg.arm;
        out_.waveform = habit::HabitWaveform(cfg.habit.alpha);
        params_ = predict::resolve_parameters(cascade_, cfg_.profile_tags);
        for (const auto& e : scenario_.schedule) queue_.emplace(e.start, e);
    }

    RunResult run() {
        const auto& ph = cfg_.physiology;
        const Timestamp start{cfg_.start_date};
        const long ticks_per_day = 1440 / ph.tick_minutes;
        const long total = static_cast<long>(cfg_.horizon_days) * ticks_per_day;
        max_risk_ = risk_.risk;
        double glucose_sum = 0.0;
        std::size_t in_range = 0;

        for (long k = 0; k < total; ++k) {
            const Timestamp t0 = start + ph.tick() * k;
            const Timestamp t1 = t0 + ph.tick();

            while (next_decision_ < scenario_.decisions.size() && scenario_.decisions[next_decision_].at < t1) {
                lunch(scenario_.decisions[next_decision_++]);
            }

            std::vector<Event> due;
            while (!queue_.empty() && queue_.begin()->first < t1) {
                due.push_back(std::move(queue_.begin()->second));
                queue_.erase(queue_.begin());
            }
            std::stable_sort(due.begin(), due.end(), events::chronological_less);
            observe_meals(due);
            step(patient_, due, ph);
            for (auto& e : due) record(std::move(e));
            close_observation(t1);
            glucose_events(t1);

            if ((t1 - start) % hours{1} == Duration::zero() && predict::mood_shift_alert(marks_, t1)) {
                ++out_.metrics.mood_alerts;
            }
            if ((k + 1) % ticks_per_day == 0) end_of_day(date_of(t0), t1);

            const double g = patient_.glucose;
            glucose_sum += g;
            if (g >= predict::require(params_, "glucose_low") && g <= predict::require(params_, "glucose_high")) {
                ++in_range;
            }
            out_.trace.push_back({t1, g, patient_.sensitivity, risk_.risk});
        }

        auto& m = out_.metrics;
        m.ticks = static_cast<std::size_t>(total);
        if (total > 0) {
            m.time_in_range = static_cast<double>(in_range) / static_cast<double>(total);
            m.mean_glucose = glucose_sum / static_cast<double>(total);
        }
        m.final_sensitivity = patient_.sensitivity;
        m.final_risk = risk_.risk;
        m.max_risk = max_risk_;
        const std::size_t offered = m.recommendations + m.alerts;
        m.acceptance_rate = offered ? static_cast<double>(m.accepted) / static_cast<double>(offered) : 0.0;
        m.mean_accepted_health = accepted_lunches_ ? accepted_health_ / static_cast<double>(accepted_lunches_) : 0.0;

        std::stable_sort(log_.begin(), log_.end(), events::chronological_less);
        out_.events = std::move(log_);
        out_.resolved = params_;
        out_.carbs_ingested = patient_.carbs_ingested;
        out_.carbs_absorbed = patient_.carbs_absorbed;
        return std::move(out_);
    }

private:
    void record(Event e) {
        if (e.stream == StreamKind::mood) {
            const auto marks = ingest::mood_marks(std::span<const Event>(&e, 1));
            marks_.insert(marks_.end(), marks.begin(), marks.end());
        }
        log_.push_back(std::move(e));
    }

    recommend::Context context(Timestamp now, double budget) const {
        recommend::Context ctx;
        ctx.now = now;
        ctx.travel_budget_minutes = budget;
        ctx.natural_trigger = recommend::hunger_trigger(now, patient_.last_meal);
        for (const auto& e : log_) {
            if (e.stream == StreamKind::activity && e.category == "exercising" && e.end && *e.end <= now &&
                now - *e.end <= hours{2}) {
                ctx.needs.insert_or_assign(std::string(recommend::kGlycogenNeed), 1.0);
            }
        }
        return ctx;
    }

    void lunch(const LunchDecision& d) {
        Event outcome = d.fallback;
        if (cfg_.arm == Arm::active) {
            const auto ctx = context(d.at, d.travel_budget_minutes);
            const auto personicle = events::merge_streams(log_);
            const auto prefs = predict::preference_scores(personicle, marks_);
            const auto habitual = predict::habitual_items(personicle, marks_);
            const auto ranking = recommend::score_candidates(cfg_.catalog, ctx, prefs, cfg_.recommend, params_, habitual);
            if (const auto* top = recommend::select_for_dispatch(ranking, cfg_.recommend)) {
                auto trigger = recommend::build_trigger(*top, ctx, cfg_.subject);
                ++out_.metrics.recommendations;
                const auto* item = cfg_.catalog.find(top->item, top->venue);
                Event suggested = meal_event(d.id, cfg_.subject, d.fallback.start, item->food);
                auto decision = decide(trigger, *top, patient_, cfg_.recommend, cfg_.acceptance, std::move(suggested),
                                       d.fallback);
                if (decision.accepted) {
                    ++out_.metrics.accepted;
                    ++accepted_lunches_;
                    accepted_health_ += top->health;
                }
                outcome = std::move(decision.outcome);
                out_.triggers.push_back(std::move(trigger));
            }
        }
        const auto dish = outcome.text("dish_id").value_or("");
        const auto taste = scenario_.tastes.find(dish);
        const int valence = mood_valence(taste == scenario_.tastes.end() ? 0.0 : taste->second, d.mood_noise);
        Event mark = ingest::to_event({valence, outcome.start + minutes{75}, outcome.id}, d.id + "-mood", cfg_.subject);
        queue_.emplace(mark.start, std::move(mark));
        queue_.emplace(outcome.start, std::move(outcome));
    }

    void observe_meals(std::span<const Event> due) {
        for (const auto& e : due) {
            if (e.stream != StreamKind::food) continue;
            const double carbs = e.number_or("carbs_g", 0.0);
            if (observation_) {
                observation_.reset();  // overlapping meals confound the rise
                continue;
            }
            if (carbs >= cfg_.min_observation_carbs && patient_.pending_carbs.empty()) {
                observation_ = RiseObservation{e.start + minutes{cfg_.physiology.absorption_minutes}, patient_.glucose,
                                               patient_.glucose, carbs};
            }
        }
    }

    void close_observation(Timestamp now) {
        if (!observation_) return;
        observation_->peak = std::max(observation_->peak, patient_.glucose);
        if (now < observation_->until) return;
        rises_.push_back((observation_->peak - observation_->start_glucose) / observation_->carbs);
        observation_.reset();
        const auto pooled = predict::pool_estimate(rises_, cfg_.pooling);
        if (pooled.mean > 0.0) {
            const double ceiling = std::clamp(predict::require(params_, "allowed_excursion") / pooled.mean, 30.0, 90.0);
            cascade_.learned.insert_or_assign("meal_carbs_high", ceiling);
            params_ = predict::resolve_parameters(cascade_, cfg_.profile_tags);
        }
    }

    void glucose_events(Timestamp now) {
        const double g = patient_.glucose;
        const auto emit = [&](const char* category) {
            Event e;
            e.id = "g" + std::to_string(++glucose_events_);
            e.stream = StreamKind::medical;
            e.category = category;
            e.start = now;
            e.subject = cfg_.subject;
            e.attrs.emplace("glucose", g);
            log_.push_back(std::move(e));
        };
        if (g > kHyperglycemia && !hyper_) emit("hyperglycemia");
        if (g < kHypoglycemia && !hypo_) emit("hypoglycemia");
        hyper_ = g > kHyperglycemia;
        hypo_ = g < kHypoglycemia;
    }

    void end_of_day(Date day, Timestamp now) {
        DayRow row;
        row.day = day;
        row.features = predict::extract_day_features(log_, env_, day, risk_.thresholds, risk_.bounds);
        risk_ = predict::risk_update(risk_, row.features);
        max_risk_ = std::max(max_risk_, risk_.risk);
        relax_sensitivity(patient_, risk_.risk, cfg_.physiology);

        if (cfg_.arm == Arm::active) {
            const auto decision = recommend::should_dispatch(dispatch_, risk_.risk, now);
            dispatch_ = decision.state;
            if (decision.dispatch) {
                row.alert = true;
                alert(now);
            }
        }

        const auto personicle = events::merge_streams(log_);
        const unsigned weekday = iso_weekday_index(day);
        if (out_.waveform.updates_seen > 0) {
            habit::HabitWaveform slice = out_.waveform;
            slice.grid = out_.waveform.grid.day_slice(weekday);
            row.anomaly = habit::anomaly_score(slice, habit::daily_occupancy(personicle, day));
            row.anomalous = habit::is_anomalous(anomaly_history_, row.anomaly, cfg_.habit.anomaly_k).value_or(false);
            if (row.anomalous) ++out_.metrics.anomalous_days;
            anomaly_history_.push_back(row.anomaly);
            if (anomaly_history_.size() > static_cast<std::size_t>(cfg_.habit.baseline_days)) {
                anomaly_history_.erase(anomaly_history_.begin());
            }
        }
        if (weekday == 6) {
            out_.waveform = habit::update_waveform(out_.waveform,
                                                   habit::weekly_occupancy(personicle, day - std::chrono::days{6}));
        }
        row.risk = risk_.risk;
        row.sensitivity = patient_.sensitivity;
        out_.days.push_back(row);
    }

    /// Risk alert: suggests a 30-minute walk at 18:00 the coming day.
    void alert(Timestamp now) {
        ++out_.metrics.alerts;
        const auto personicle = events::merge_streams(log_);
        const auto prefs = predict::preference_scores(personicle, marks_);
        recommend::ScoredCandidate c;
        c.item = "exercising";
        c.venue = "home";
        c.health = 1.0;
        c.preference = prefs.score("exercising");
        c.ability = 1.0;
        c.utility = cfg_.recommend.lambda * c.health + (1.0 - cfg_.recommend.lambda) * c.preference;
        recommend::Context ctx;
        ctx.now = now;
        auto trigger = recommend::build_trigger(c, ctx, cfg_.subject, recommend::TriggerKind::alert);

        Event walk;
        walk.id = "alert" + std::to_string(out_.metrics.alerts) + "-walk";
        walk.stream = StreamKind::activity;
        walk.category = "exercising";
        walk.start = at_time(date_of(now), 18, 0);
        walk.end = walk.start + minutes{30};
        walk.subject = cfg_.subject;
        const auto decision = decide(trigger, c, patient_, cfg_.recommend, cfg_.acceptance, walk, Event{});
        if (decision.accepted) {
            ++out_.metrics.accepted;
            queue_.emplace(walk.start, std::move(walk));
        }
        out_.triggers.push_back(std::move(trigger));
    }

    const ExperimentConfig& cfg_;
    Scenario scenario_;
    std::vector<ingest::EnvSnapshot> env_;
    predict::ParameterCascade cascade_;
    predict::ParameterMap params_;
    predict::RiskModel risk_;
    recommend::DispatchState dispatch_;
    PatientState patient_;
    std::multimap<Timestamp, Event> queue_;
    std::size_t next_decision_ = 0;
    std::vector<Event> log_;
    std::vector<ingest::MoodMark> marks_;
    std::optional<RiseObservation> observation_;
    std::vector<double> rises_;
    std::vector<double> anomaly_history_;
    std::size_t glucose_events_ = 0;
    bool hyper_ = false;
    bool hypo_ = false;
    double max_risk_ = 0.0;
    double accepted_health_ = 0.0;
    std::size_t accepted_lunches_ = 0;
    RunResult out_;
};

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    return Loop(cfg, seed).run();
}

void write_metrics_header(std::ostream& out) {
    out << "seed,arm,ticks,time_in_range,mean_glucose,final_sensitivity,final_risk,max_risk,alerts,"
           "recommendations,accepted,acceptance_rate,anomalous_days,mood_alerts,mean_accepted_health\n";
}

void write_metrics_row(std::ostream& out, const Metrics& m) {
    out << m.seed << ',' << to_string(m.arm) << ',' << m.ticks << ',' << fixed6(m.time_in_range) << ','
        << fixed6(m.mean_glucose) << ',' << fixed6(m.final_sensitivity) << ',' << fixed6(m.final_risk) << ','
        << fixed6(m.max_risk) << ',' << m.alerts << ',' << m.recommendations << ',' << m.accepted << ','
        << fixed6(m.acceptance_rate) << ',' << m.anomalous_days << ',' << m.mood_alerts << ','
        << fixed6(m.mean_accepted_health) << '\n';
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows) {
    out << "timestamp,glucose,sensitivity,risk\n";
    for (const auto& r : rows) {
        out << format_timestamp(r.at) << ',' << fixed6(r.glucose) << ',' << fixed6(r.sensitivity) << ','
            << fixed6(r.risk) << '\n';
    }
}

void write_days_csv(std::ostream& out, std::span<const DayRow> rows) {
    out << "date,high_sugar_meals,high_fat_meals,sedentary_hours,negative_mood,aqi_excess,exercise_minutes,risk,"
           "sensitivity,anomaly,anomalous,alert\n";
    for (const auto& r : rows) {
        const auto& f = r.features;
        out << format_date(r.day) << ',' << fixed6(f.high_sugar_meals) << ',' << fixed6(f.high_fat_meals) << ','
            << fixed6(f.sedentary_hours) << ',' << fixed6(f.negative_mood) << ',' << fixed6(f.aqi_excess) << ','
            << fixed6(f.exercise_minutes) << ',' << fixed6(r.risk) << ',' << fixed6(r.sensitivity) << ','
            << fixed6(r.anomaly) << ',' << (r.anomalous ? 1 : 0) << ',' << (r.alert ? 1 : 0) << '\n';
    }
}

void write_audit_log(std::ostream& out, std::span<const recommend::Trigger> triggers) {
    for (const auto& t : triggers) out << recommend::audit_record(t) << '\n';
}

double sign_test_p_value(std::size_t positive, std::size_t negative) {
    const std::size_t n = positive + negative;
    if (n == 0) return 1.0;
    const std::size_t k = std::min(positive, negative);
    // P(X <= k) for X ~ Binomial(n, 1/2), summed in log space to stay finite for large n.
    double tail = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
        const double log_term = std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(i) + 1) -
                                std::lgamma(static_cast<double>(n - i) + 1) - static_cast<double>(n) * std::log(2.0);
        tail += std::exp(log_term);
    }
    return std::min(1.0, 2.0 * tail);
}

ArmComparison compare_arms(const ExperimentConfig& treatment, const ExperimentConfig& control,
                           std::span<const std::uint64_t> seeds) {
    if (seeds.size() < 2) throw ValidationError("comparison needs at least two seeds");
    ExperimentConfig aligned = control;
    aligned.arm = treatment.arm;
    if (!(aligned == treatment)) throw ValidationError("compared configs differ in more than the arm");

    ArmComparison c;
    double sum = 0.0;
    for (const auto seed : seeds) {
        SeedDelta d;
        d.seed = seed;
        d.treatment = run_experiment(treatment, seed).metrics;
        d.control = run_experiment(control, seed).metrics;
        d.tir_delta = d.treatment.time_in_range - d.control.time_in_range;
        d.mean_glucose_delta = d.treatment.mean_glucose - d.control.mean_glucose;
        d.final_risk_delta = d.treatment.final_risk - d.control.final_risk;
        sum += d.tir_delta;
        if (d.tir_delta > 0) {
            ++c.positive;
        } else if (d.tir_delta < 0) {
            ++c.negative;
        } else {
            ++c.ties;
        }
        c.seeds.push_back(d);
    }
    c.mean_tir_delta = sum / static_cast<double>(seeds.size());
    c.sign_test_p = sign_test_p_value(c.positive, c.negative);
    return c;
}

ArmComparison compare_arms(const ExperimentConfig& cfg, std::span<const std::uint64_t> seeds) {
    ExperimentConfig active = cfg;
    active.arm = Arm::active;
    ExperimentConfig placebo = cfg;
    placebo.arm = Arm::placebo;
    return compare_arms(active, placebo, seeds);
}

void write_comparison_csv(std::ostream& out, const ArmComparison& c) {
    out << "seed,tir_treatment,tir_control,tir_delta,mean_glucose_delta,final_risk_delta\n";
    for (const auto& d : c.seeds) {
        out << d.seed << ',' << fixed6(d.treatment.time_in_range) << ',' << fixed6(d.control.time_in_range) << ','
            << fixed6(d.tir_delta) << ',' << fixed6(d.mean_glucose_delta) << ',' << fixed6(d.final_risk_delta) << '\n';
    }
}

void write_comparison_summary(std::ostream& out, const ArmComparison& c) {
    out << "seeds: " << c.seeds.size() << '\n'
        << "time-in-range delta (treatment - control), mean: " << fixed6(c.mean_tir_delta) << '\n'
        << "positive / negative / tied: " << c.positive << " / " << c.negative << " / " << c.ties << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", c.sign_test_p);
    out << "two-sided sign test p: " << buf << '\n';
}

}  // namespace lifeloop::sim
