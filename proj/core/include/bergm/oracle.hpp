#ifndef BERGM_ORACLE_HPP_
#define BERGM_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bergm/graph.hpp"
#include "bergm/sampler.hpp"
#include "bergm/terms.hpp"

namespace bergm {

/**
 * Every network on n1 x n2 nodes with its statistic vector, for exact
 * likelihood computations on tiny models.
 *
 * State bit b is dyad index b (see BipartiteNetwork::dyad_index). The table
 * is filled by Gray-code enumeration using change statistics and is
 * resynchronised against full evaluation every 4096 states.
 */
class ExactModel {
 public:
  static constexpr int kMaxDyads = 22;

  /// `max_dyads` may lower the cap, never raise it. Throws ModelError when the
  /// model has more dyads than the cap.
  explicit ExactModel(CompiledModel model, int max_dyads = kMaxDyads);

  const CompiledModel& model() const noexcept { return model_; }
  std::size_t dyad_count() const noexcept { return dyads_; }
  std::size_t state_count() const noexcept { return std::size_t{1} << dyads_; }
  std::size_t dimension() const noexcept { return model_.dimension(); }
  const std::vector<std::string>& names() const noexcept { return model_.names(); }

  const StatMatrix& table() const noexcept { return table_; }
  Eigen::VectorXd stats_of(std::uint64_t state) const;
  BipartiteNetwork network_of(std::uint64_t state) const;
  std::uint64_t state_of(const BipartiteNetwork& net) const;

 private:
  CompiledModel model_;
  std::size_t dyads_ = 0;
  StatMatrix table_;
};

/// log kappa(theta) = log sum_y exp(theta . s(y)).
double exact_log_kappa(const ExactModel& em, std::span<const double> theta);

/// theta . s(y_obs) - log kappa(theta).
double exact_loglik(const ExactModel& em, std::span<const double> theta,
                    const BipartiteNetwork& observed);

struct ExactMoments {
  double log_kappa = 0.0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

/// E_theta[s(Y)] and Cov_theta[s(Y)] by enumeration.
ExactMoments exact_moments(const ExactModel& em, std::span<const double> theta);

struct ExactMle {
  Eigen::VectorXd theta;
  double loglik = 0.0;
  /// Inverse Fisher information at theta.
  Eigen::MatrixXd covariance;
  int iterations = 0;
};

/// Newton's method on the exact log-likelihood to gradient norm <= 1e-10.
/// Throws EstimationError (with a divergence direction) when s(y_obs) is not
/// interior to the hull of attainable statistics.
ExactMle exact_mle(const ExactModel& em, const BipartiteNetwork& observed);

struct ExactDistribution {
  /// Indexed by state.
  std::vector<double> probabilities;
  /// P(dyad present), indexed by dyad index.
  std::vector<double> dyad_marginals;
};

ExactDistribution exact_dyad_distribution(const ExactModel& em, std::span<const double> theta);

}  // namespace bergm

#endif  // BERGM_ORACLE_HPP_
