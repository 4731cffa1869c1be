#pragma once

// Closed forms and direct simulations used to check the numeric modules.

#include <cmath>
#include <span>
#include <vector>

namespace lifeloop::oracle {

/// Precision-weighted normal-normal posterior mean, written in its convex-combination form.
inline double pooled_mean(std::span<const double> ys, double mu0, double tau2, double sigma2) {
    if (ys.empty()) return mu0;
    long double sum = 0;
    for (double y : ys) sum += y;
    const long double n = static_cast<long double>(ys.size());
    const long double ybar = sum / n;
    const long double w = (n * tau2) / (n * tau2 + sigma2);
    return static_cast<double>(w * ybar + (1 - w) * mu0);
}

/// Per-tick glucose increments of one meal absorbed evenly over `ticks`, with no drift.
inline std::vector<double> carb_increments(double carbs, double gain, double sensitivity, int ticks) {
    std::vector<double> out(static_cast<std::size_t>(ticks), gain * (carbs / ticks) / sensitivity);
    return out;
}

/// G after `ticks` of linear drift toward `basal` with a constant per-tick input.
inline double drift_with_input(double g0, double basal, double rate, const std::vector<double>& inputs) {
    double g = g0;
    for (double in : inputs) {
        g += in;
        g += rate * (basal - g);
    }
    return g;
}

/// Two-sided exact sign test via the binomial tail, summed with exact integer binomials.
inline double sign_test(unsigned positive, unsigned negative) {
    const unsigned n = positive + negative;
    if (n == 0) return 1.0;
    const unsigned k = std::min(positive, negative);
    long double coeff = 1, tail = 0;
    for (unsigned i = 0; i <= k; ++i) {
        if (i > 0) coeff = coeff * (n - i + 1) / i;
        tail += coeff;
    }
    const long double p = 2 * tail / std::pow(2.0L, static_cast<long double>(n));
    return static_cast<double>(std::min<long double>(1, p));
}

}  // namespace lifeloop::oracle
