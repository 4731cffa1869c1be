#pragma once

#include <span>

namespace lifeloop::predict {

/// Population-level normal prior on a per-person metric, with a known
/// within-person observation variance.
struct PopulationPrior {
    double mu0 = 0.0;
    double tau2 = 1.0;    ///< between-individual variance
    double sigma2 = 1.0;  ///< within-individual observation variance

    /// Throws ValidationError unless tau2 > 0 and sigma2 > 0.
    void validate() const;
    bool operator==(const PopulationPrior&) const = default;
};

struct PooledEstimate {
    double mean = 0.0;
    double variance = 0.0;
    /// Weight on the individual's sample mean; the prior mean gets 1 - weight.
    double data_weight = 0.0;
};

/// Normal-normal conjugate update of the population prior with an
/// individual's observations:
///   mean = (n ybar / sigma2 + mu0 / tau2) / (n / sigma2 + 1 / tau2)
///   variance = 1 / (n / sigma2 + 1 / tau2)
/// With no observations the prior is returned unchanged.
PooledEstimate pool_estimate(std::span<const double> observations, const PopulationPrior& prior);

}  // namespace lifeloop::predict
