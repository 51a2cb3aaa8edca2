#ifndef BERGM_ESTIMATE_HPP_
#define BERGM_ESTIMATE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bergm/attributes.hpp"
#include "bergm/graph.hpp"
#include "bergm/model.hpp"
#include "bergm/sampler.hpp"
#include "bergm/terms.hpp"

namespace bergm {

enum class FitMethod { mple, mcmcmle };

std::string_view method_name(FitMethod m) noexcept;
std::optional<FitMethod> method_from_name(std::string_view name) noexcept;

struct FitDiagnostics {
  double acceptance_rate = 0.0;
  /// Effective sample size per statistic in the final anchor's sample.
  std::vector<double> ess;
  int anchors = 0;
  /// Euclidean norm of theta_new - theta_anchor, one per anchor.
  std::vector<double> step_norms;
  /// Hull step length used at the last anchor (1 = full step).
  double step_length = 1.0;
  int newton_iterations = 0;
  bool converged = true;
  std::vector<std::string> warnings;
};

struct FitResult {
  FitMethod method = FitMethod::mple;
  std::vector<std::string> names;
  Eigen::VectorXd theta;
  /// Inverse Fisher information (MPLE: inverse negative pseudo-Hessian).
  Eigen::MatrixXd covariance;
  /// Monte-Carlo standard error of each estimate; zero for MPLE.
  Eigen::VectorXd mc_std_error;
  std::optional<double> loglik;
  double loglik_sd = 0.0;
  /// "exact" (MPLE of a dyad-independent model), "pseudo", or "bridge".
  std::string loglik_kind;
  FitDiagnostics diagnostics;

  Eigen::VectorXd std_errors() const;
};

struct EstimationControl {
  SamplerControl sampler;
  int max_anchors = 20;
  double step_tolerance = 1e-4;
  /// Target is pulled this far past the observed statistics in the hull check.
  double hull_inflation = 1.05;
  bool compute_loglik = true;
  int bridges = 16;
  /// Draws per bridge; defaults to sampler.sample_size.
  std::optional<std::size_t> bridge_sample_size;
  bool degeneracy_is_error = false;
};

/// Dyads grouped by (change vector, response) with multiplicities; the
/// design matrix of the pseudo-likelihood logistic regression.
struct DyadTable {
  std::vector<std::string> names;
  StatMatrix change;
  std::vector<int> response;
  std::vector<double> count;
};

DyadTable dyad_table(const CompiledModel& model, const BipartiteNetwork& net);

/// Maximum pseudo-likelihood by Newton's method. Throws EstimationError on
/// complete or quasi-complete separation, with the divergence direction.
FitResult mple(const CompiledModel& model, const BipartiteNetwork& net);

/// Monte-Carlo MLE by importance sampling from a sequence of anchors,
/// starting from `theta0`.
FitResult mcmcmle(const CompiledModel& model, const BipartiteNetwork& net,
                  std::span<const double> theta0, const EstimationControl& control);
/// As above, starting from the MPLE.
FitResult mcmcmle(const CompiledModel& model, const BipartiteNetwork& net,
                  const EstimationControl& control);

struct LoglikEstimate {
  double value = 0.0;
  double sd = 0.0;
};

/// l(theta) = theta . s(y_obs) - log kappa(theta), with log kappa(theta) -
/// log kappa(0) estimated by bridge sampling along the segment 0 -> theta
/// and log kappa(0) = n1*n2*log 2.
LoglikEstimate bridge_loglik(const CompiledModel& model, const BipartiteNetwork& net,
                             std::span<const double> theta,
                             const EstimationControl& control, std::uint64_t seed);

struct Contrast {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// w . theta_hat and sqrt(w' Cov w).
Contrast contrast(const FitResult& fit, std::span<const double> weights);

/// Two-sided Wald p-value.
double wald_p_value(double estimate, double std_error);
/// "***" below 0.0001, "**" below 0.001, "*" below 0.05, else "".
std::string_view significance_stars(double p_value);

struct ProfilePoint {
  ExponentKind kind = ExponentKind::alpha;
  double value = 0.0;
  std::optional<FitResult> fit;
  /// Set when this grid point failed; the grid continues.
  std::string error;
  /// Indices of the nodematch statistics within the fit.
  std::vector<std::size_t> homophily_index;
};

/// Fits the template once per grid value with the nodematch exponent bound
/// to that value. Each point draws from its own seed split from
/// control.sampler.seed, keyed by (kind, grid index).
std::vector<ProfilePoint> profile(const ModelSpec& template_spec, ExponentKind which,
                                  std::span<const double> grid,
                                  const BipartiteNetwork& net, const NodeAttributes& attrs,
                                  const EstimationControl& control,
                                  FitMethod method = FitMethod::mcmcmle);

/// 0, 0.1, ..., 1.
std::vector<double> default_profile_grid();

}  // namespace bergm

#endif  // BERGM_ESTIMATE_HPP_
