#ifndef BERGM_MCMC_STATS_HPP_
#define BERGM_MCMC_STATS_HPP_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "bergm/sampler.hpp"

namespace bergm {

Eigen::VectorXd column_means(const StatMatrix& draws);

/// Sample covariance (divisor n-1).
Eigen::MatrixXd sample_covariance(const StatMatrix& draws);

/// Covariance of the column means of an autocorrelated series, by
/// non-overlapping batch means with about sqrt(n) batches.
Eigen::MatrixXd mean_covariance_batch(const StatMatrix& draws);

/// Variance of the mean of a scalar series, by batch means.
double mean_variance_batch(std::span<const double> series);

/// Per-column effective sample size: n * var / (n * var_of_mean), capped at n.
std::vector<double> effective_sample_size(const StatMatrix& draws);

}  // namespace bergm

#endif  // BERGM_MCMC_STATS_HPP_
