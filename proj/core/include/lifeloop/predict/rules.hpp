#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lifeloop/events/personicle.hpp"

namespace lifeloop::predict {

struct MiningParams {
    std::string consequent;          ///< category of the adverse event, e.g. "hyperglycemia"
    Duration window{hours{4}};       ///< antecedent must fit within this span
    Duration horizon{hours{3}};      ///< consequent must follow within this delay
    std::size_t min_support = 3;
    std::size_t max_len = 3;         ///< 1..3

    /// Throws ValidationError on non-positive durations or max_len outside 1..3.
    void validate() const;
};

/// "antecedent, in order, within `window`" predicts "consequent within `horizon`".
struct PatternRule {
    std::vector<std::string> antecedent;
    Duration window{};
    std::string consequent;
    std::size_t support = 0;  ///< end positions at which the antecedent occurs
    std::size_t hits = 0;     ///< of those, followed by the consequent
    double confidence = 0.0;  ///< (hits + 1) / (support + 2)
    double lift = 0.0;        ///< confidence / smoothed base rate

    bool operator==(const PatternRule&) const = default;
};

/// Mines sequential rules by exhaustive enumeration.
///
/// Events whose category equals the consequent never appear in antecedents.
/// An antecedent (c1..ck) occurs at position j when event j has category ck
/// and there are earlier positions i1 < ... < j with categories c1..c(k-1)
/// and start(j) - start(i1) <= window; each position counts at most once per
/// antecedent. The occurrence is a hit when some consequent event after j
/// starts within `horizon` of event j.
///
/// The base rate is (positions followed by the consequent + 1) /
/// (non-consequent positions + 2). Rules under min_support are dropped; the
/// rest are sorted by lift, then confidence (both descending), then
/// antecedent lexicographically.
std::vector<PatternRule> mine_rules(std::span<const events::Personicle> personicles, const MiningParams& params);

void write_rules_csv(std::ostream& out, std::span<const PatternRule> rules);

}  // namespace lifeloop::predict
