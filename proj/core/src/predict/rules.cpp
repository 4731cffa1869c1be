#include "lifeloop/predict/rules.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>

#include "lifeloop/error.hpp"

namespace lifeloop::predict {
namespace {

struct Counts {
    std::size_t support = 0;
    std::size_t hits = 0;
};

using Key = std::vector<int>;

}  // namespace

void MiningParams::validate() const {
    if (window <= Duration::zero()) throw ValidationError("mining window must be positive");
    if (horizon <= Duration::zero()) throw ValidationError("mining horizon must be positive");
    if (max_len < 1 || max_len > 3) throw ValidationError("mining max_len must be 1..3");
    if (consequent.empty()) throw ValidationError("mining consequent must be named");
}

std::vector<PatternRule> mine_rules(std::span<const events::Personicle> personicles, const MiningParams& params) {
    params.validate();

    // Intern category names; ids are assigned in sorted name order so integer
    // keys compare like the strings they stand for.
    std::map<std::string, int, std::less<>> names;
    for (const auto& p : personicles) {
        for (const auto& e : p.events()) names.emplace(e.category, 0);
    }
    std::vector<std::string> by_id;
    for (auto& [name, id] : names) {
        id = static_cast<int>(by_id.size());
        by_id.push_back(name);
    }

    std::map<Key, Counts> counts;
    std::size_t positions = 0;
    std::size_t followed = 0;
    std::vector<Key> seen;

    for (const auto& p : personicles) {
        const auto ev = p.events();
        const std::size_t n = ev.size();
        std::vector<int> cat(n);
        std::vector<bool> is_consequent(n);
        for (std::size_t i = 0; i < n; ++i) {
            cat[i] = names.find(ev[i].category)->second;
            is_consequent[i] = ev[i].category == params.consequent;
        }
        // next_consequent[j]: smallest consequent index > j (n if none).
        std::vector<std::size_t> next_consequent(n + 1, n);
        for (std::size_t j = n; j-- > 0;) {
            next_consequent[j] = (j + 1 < n && is_consequent[j + 1]) ? j + 1 : next_consequent[j + 1];
        }

        for (std::size_t j = 0; j < n; ++j) {
            if (is_consequent[j]) continue;
            const std::size_t c = next_consequent[j];
            const bool hit = c < n && ev[c].start - ev[j].start <= params.horizon;
            ++positions;
            if (hit) ++followed;

            seen.clear();
            seen.push_back({cat[j]});
            if (params.max_len >= 2) {
                for (std::size_t i = j; i-- > 0;) {
                    if (ev[j].start - ev[i].start > params.window) break;
                    if (is_consequent[i]) continue;
                    seen.push_back({cat[i], cat[j]});
                    if (params.max_len >= 3) {
                        for (std::size_t h = i; h-- > 0;) {
                            if (ev[j].start - ev[h].start > params.window) break;
                            if (is_consequent[h]) continue;
                            seen.push_back({cat[h], cat[i], cat[j]});
                        }
                    }
                }
            }
            std::sort(seen.begin(), seen.end());
            seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
            for (const auto& key : seen) {
                auto& cnt = counts[key];
                ++cnt.support;
                if (hit) ++cnt.hits;
            }
        }
    }

    const double base_rate = (static_cast<double>(followed) + 1.0) / (static_cast<double>(positions) + 2.0);
    const std::size_t min_support = std::max<std::size_t>(params.min_support, 1);

    std::vector<PatternRule> rules;
    for (const auto& [key, cnt] : counts) {
        if (cnt.support < min_support) continue;
        PatternRule r;
        for (const int id : key) r.antecedent.push_back(by_id[static_cast<std::size_t>(id)]);
        r.window = params.window;
        r.consequent = params.consequent;
        r.support = cnt.support;
        r.hits = cnt.hits;
        r.confidence = (static_cast<double>(cnt.hits) + 1.0) / (static_cast<double>(cnt.support) + 2.0);
        r.lift = r.confidence / base_rate;
        rules.push_back(std::move(r));
    }
    std::sort(rules.begin(), rules.end(), [](const PatternRule& a, const PatternRule& b) {
        if (a.lift != b.lift) return a.lift > b.lift;
        if (a.confidence != b.confidence) return a.confidence > b.confidence;
        return a.antecedent < b.antecedent;
    });
    return rules;
}

void write_rules_csv(std::ostream& out, std::span<const PatternRule> rules) {
    out << "antecedent,window_s,consequent,support,hits,confidence,lift\n";
    char buf[96];
    for (const auto& r : rules) {
        std::string ante;
        for (const auto& a : r.antecedent) {
            if (!ante.empty()) ante += '>';
            ante += a;
        }
        std::snprintf(buf, sizeof buf, ",%lld,", static_cast<long long>(r.window.count()));
        out << ante << buf << r.consequent;
        std::snprintf(buf, sizeof buf, ",%zu,%zu,%.6f,%.6f\n", r.support, r.hits, r.confidence, r.lift);
        out << buf;
    }
}

}  // namespace lifeloop::predict
