#include "lifeloop/habit/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "lifeloop/error.hpp"

namespace lifeloop::habit {
namespace {

constexpr double kColumnSlack = 1e-9;

using Span = std::pair<Timestamp, Timestamp>;

std::vector<Span> merge_spans(std::vector<Span> spans) {
    std::sort(spans.begin(), spans.end());
    std::vector<Span> out;
    for (const auto& s : spans) {
        if (!out.empty() && s.first <= out.back().second) {
            out.back().second = std::max(out.back().second, s.second);
        } else {
            out.push_back(s);
        }
    }
    return out;
}

void require_same_shape(const OccupancyGrid& a, const OccupancyGrid& b) {
    if (!a.same_shape(b)) {
        throw ValidationError("occupancy grid shape mismatch: " + std::to_string(a.rows()) + "x" +
                              std::to_string(a.bins()) + " vs " + std::to_string(b.rows()) + "x" +
                              std::to_string(b.bins()));
    }
}

}  // namespace

std::size_t hour_of_week_bin(Timestamp t) {
    const Date d = date_of(t);
    const auto hour = std::chrono::floor<hours>(t - Timestamp{d}).count();
    return iso_weekday_index(d) * kHoursPerDay + static_cast<std::size_t>(hour);
}

double OccupancyGrid::column_sum(std::size_t bin) const {
    double s = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) s += at(r, bin);
    return s;
}

OccupancyGrid OccupancyGrid::day_slice(unsigned weekday) const {
    OccupancyGrid out(rows_, bins_);
    const std::size_t first = weekday * kHoursPerDay;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t b = first; b < first + kHoursPerDay && b < bins_; ++b) out.at(r, b) = at(r, b);
    }
    return out;
}

void OccupancyGrid::check_invariants() const {
    for (const double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("occupancy value outside [0, 1]");
    }
    for (std::size_t b = 0; b < bins_; ++b) {
        if (column_sum(b) > 1.0 + kColumnSlack) throw ValidationError("occupancy column sum exceeds 1");
    }
}

OccupancyGrid daily_occupancy(const events::Personicle& p, Date day) {
    OccupancyGrid grid;
    const Timestamp day_start{day};
    const Timestamp day_end = day_start + hours{24};
    const std::size_t first_bin = iso_weekday_index(day) * kHoursPerDay;

    std::vector<std::vector<Span>> by_row(grid.rows());
    for (const auto& e : p.events()) {
        if (e.stream != events::StreamKind::activity || e.is_point()) continue;
        const auto row = ingest::activity_index(e.category);
        if (!row) continue;
        const Timestamp s = std::max(e.start, day_start);
        const Timestamp t = std::min(*e.end, day_end);
        if (t > s) by_row[*row].emplace_back(s, t);
    }

    for (std::size_t row = 0; row < by_row.size(); ++row) {
        for (const auto& [s, t] : merge_spans(std::move(by_row[row]))) {
            for (std::size_t h = 0; h < kHoursPerDay; ++h) {
                const Timestamp bin_start = day_start + hours{h};
                const Timestamp bin_end = bin_start + hours{1};
                const auto overlap = std::min(t, bin_end) - std::max(s, bin_start);
                if (overlap > Duration::zero()) {
                    grid.at(row, first_bin + h) += static_cast<double>(overlap.count()) / 3600.0;
                }
            }
        }
    }

    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        const std::size_t bin = first_bin + h;
        const double sum = grid.column_sum(bin);
        if (sum > 1.0) {
            for (std::size_t r = 0; r < grid.rows(); ++r) grid.at(r, bin) /= sum;
        }
    }
    return grid;
}

OccupancyGrid weekly_occupancy(const events::Personicle& p, Date week_start) {
    OccupancyGrid week;
    for (int d = 0; d < 7; ++d) {
        const auto day = daily_occupancy(p, week_start + std::chrono::days{d});
        const auto src = day.values();
        auto dst = week.values();
        // Different weekdays occupy disjoint columns, so summing never mixes bins.
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    }
    return week;
}

HabitWaveform::HabitWaveform(double a, OccupancyGrid initial) : grid(std::move(initial)), alpha(a) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("waveform alpha must lie in (0, 1]");
}

HabitWaveform update_waveform(const HabitWaveform& h, const OccupancyGrid& x) {
    require_same_shape(h.grid, x);
    HabitWaveform out = h;
    auto dst = out.grid.values();
    const auto src = x.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = (1.0 - h.alpha) * dst[i] + h.alpha * src[i];
    ++out.updates_seen;
    return out;
}

double anomaly_score(const HabitWaveform& h, const OccupancyGrid& x) {
    require_same_shape(h.grid, x);
    const auto a = h.grid.values();
    const auto b = x.values();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

std::optional<bool> is_anomalous(std::span<const double> history, double current, double k) {
    if (history.size() < 7) return std::nullopt;
    const double n = static_cast<double>(history.size());
    double mean = 0.0;
    for (const double v : history) mean += v;
    mean /= n;
    double var = 0.0;
    for (const double v : history) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / n);
    return current > mean + k * sd;
}

void write_waveform_csv(std::ostream& out, const HabitWaveform& h) {
    out << "category";
    for (std::size_t b = 0; b < h.grid.bins(); ++b) out << ",b" << b;
    out << '\n';
    char buf[32];
    for (std::size_t r = 0; r < h.grid.rows(); ++r) {
        if (r < ingest::kActivityVocabulary.size()) {
            out << ingest::kActivityVocabulary[r];
        } else {
            out << "row" << r;
        }
        for (std::size_t b = 0; b < h.grid.bins(); ++b) {
            std::snprintf(buf, sizeof buf, ",%.6f", h.grid.at(r, b));
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace lifeloop::habit
