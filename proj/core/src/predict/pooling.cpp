#include "lifeloop/predict/pooling.hpp"

#include "lifeloop/error.hpp"

namespace lifeloop::predict {

void PopulationPrior::validate() const {
    if (!(tau2 > 0.0)) throw ValidationError("population prior tau2 must be positive");
    if (!(sigma2 > 0.0)) throw ValidationError("population prior sigma2 must be positive");
}

PooledEstimate pool_estimate(std::span<const double> observations, const PopulationPrior& prior) {
    prior.validate();
    const double n = static_cast<double>(observations.size());
    if (observations.empty()) return {prior.mu0, prior.tau2, 0.0};

    double sum = 0.0;
    for (const double y : observations) sum += y;
    const double ybar = sum / n;

    const double data_precision = n / prior.sigma2;
    const double prior_precision = 1.0 / prior.tau2;
    const double precision = data_precision + prior_precision;
    const double w = data_precision / precision;
    // Written as a convex combination so the result is bracketed by ybar and mu0.
    return {w * ybar + (1.0 - w) * prior.mu0, 1.0 / precision, w};
}

}  // namespace lifeloop::predict
