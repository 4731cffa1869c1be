#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "lifeloop/events/personicle.hpp"
#include "lifeloop/ingest/vocabulary.hpp"

namespace lifeloop::habit {

inline constexpr std::size_t kHoursPerDay = 24;
inline constexpr std::size_t kBinsPerWeek = 7 * kHoursPerDay;

/// Hour-of-week bin of an instant; Monday 00:00-01:00 is bin 0.
std::size_t hour_of_week_bin(Timestamp t);

/// Fraction of each hour-of-week bin spent in each activity category.
/// Rows follow the activity vocabulary order. Values lie in [0, 1] and every
/// column sums to at most 1 (+1e-9).
class OccupancyGrid {
public:
    OccupancyGrid() : OccupancyGrid(ingest::kActivityVocabulary.size(), kBinsPerWeek) {}
    OccupancyGrid(std::size_t rows, std::size_t bins) : rows_(rows), bins_(bins), values_(rows * bins, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t bins() const { return bins_; }
    bool same_shape(const OccupancyGrid& o) const { return rows_ == o.rows_ && bins_ == o.bins_; }

    double& at(std::size_t row, std::size_t bin) { return values_[row * bins_ + bin]; }
    double at(std::size_t row, std::size_t bin) const { return values_[row * bins_ + bin]; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    double column_sum(std::size_t bin) const;

    /// Copy with only the 24 bins of the given ISO weekday (0 = Monday) kept.
    OccupancyGrid day_slice(unsigned weekday) const;

    /// Throws ValidationError if a value leaves [0, 1] or a column exceeds 1 + 1e-9.
    void check_invariants() const;

    bool operator==(const OccupancyGrid&) const = default;

private:
    std::size_t rows_;
    std::size_t bins_;
    std::vector<double> values_;
};

/// One calendar day's occupancy: only that weekday's 24 columns are populated.
/// Same-category events are merged before measuring; columns whose categories
/// overlap beyond a full hour are scaled down proportionally to sum to 1.
OccupancyGrid daily_occupancy(const events::Personicle& p, Date day);

/// Seven consecutive daily grids starting at `week_start`, combined.
OccupancyGrid weekly_occupancy(const events::Personicle& p, Date week_start);

/// The behavioural steady state: an exponentially smoothed occupancy grid.
struct HabitWaveform {
    OccupancyGrid grid;
    double alpha = 0.1;
    std::size_t updates_seen = 0;

    HabitWaveform() = default;
    /// Throws ValidationError unless alpha is in (0, 1].
    explicit HabitWaveform(double alpha, OccupancyGrid initial = {});
};

/// H' = (1 - alpha) H + alpha x, elementwise. Throws ValidationError on shape mismatch.
HabitWaveform update_waveform(const HabitWaveform& h, const OccupancyGrid& x);

/// L1 distance between the grid and the waveform. Throws ValidationError on shape mismatch.
double anomaly_score(const HabitWaveform& h, const OccupancyGrid& x);

/// True iff current > mean(history) + k * stddev(history), using the population
/// standard deviation. nullopt when history holds fewer than 7 scores.
std::optional<bool> is_anomalous(std::span<const double> history, double current, double k = 3.0);

/// CSV with one row per category and 168 bin columns.
void write_waveform_csv(std::ostream& out, const HabitWaveform& h);

}  // namespace lifeloop::habit
