#include "bergm/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "bergm/error.hpp"
#include "bergm/hull.hpp"
#include "bergm/mcmc_stats.hpp"

namespace bergm {

std::string_view method_name(FitMethod m) noexcept {
  return m == FitMethod::mple ? "mple" : "mcmcmle";
}

std::optional<FitMethod> method_from_name(std::string_view name) noexcept {
  if (name == "mple") return FitMethod::mple;
  if (name == "mcmcmle" || name == "mcmle") return FitMethod::mcmcmle;
  return std::nullopt;
}

Eigen::VectorXd FitResult::std_errors() const {
  Eigen::VectorXd se(covariance.rows());
  for (Eigen::Index j = 0; j < covariance.rows(); ++j) {
    se(j) = std::sqrt(std::max(0.0, covariance(j, j)));
  }
  return se;
}

namespace {

Eigen::VectorXd to_vector(std::span<const double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t j = 0; j < v.size(); ++j) out(static_cast<Eigen::Index>(j)) = v[j];
  return out;
}

// Inverse of a symmetric positive (semi)definite matrix via its
// eigendecomposition; near-zero eigenvalues are reported as singular.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m, const std::vector<std::string>& names,
                            const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()));
  const Eigen::VectorXd values = eig.eigenvalues();
  const double largest = std::max(values.cwiseAbs().maxCoeff(), 1e-300);
  if (values.minCoeff() <= 1e-12 * largest) {
    const Eigen::VectorXd dir = eig.eigenvectors().col(0);
    std::ostringstream msg;
    msg << what << " is singular: statistics are collinear along (";
    std::vector<double> direction;
    for (Eigen::Index j = 0; j < dir.size(); ++j) {
      msg << (j ? ", " : "") << names[static_cast<std::size_t>(j)] << "=" << dir(j);
      direction.push_back(dir(j));
    }
    msg << ")";
    throw EstimationError(msg.str(), direction);
  }
  const Eigen::MatrixXd inv =
      eig.eigenvectors() * values.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (inv + inv.transpose());
}

struct Logistic {
  const DyadTable& table;

  // Pseudo-log-likelihood, gradient and negative Hessian at theta.
  double evaluate(const Eigen::VectorXd& theta, Eigen::VectorXd* grad,
                  Eigen::MatrixXd* info) const {
    const Eigen::Index p = table.change.cols();
    double ll = 0.0;
    if (grad) grad->setZero(p);
    if (info) info->setZero(p, p);
    for (Eigen::Index r = 0; r < table.change.rows(); ++r) {
      const auto row = table.change.row(r);
      const double eta = row.dot(theta);
      const double w = table.count[static_cast<std::size_t>(r)];
      const int y = table.response[static_cast<std::size_t>(r)];
      // log(1 + e^eta) without overflow
      const double softplus = eta > 0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
      ll += w * (y * eta - softplus);
      const double prob = 1.0 / (1.0 + std::exp(-eta));
      if (grad) *grad += (w * (y - prob)) * row.transpose();
      if (info) info->noalias() += (w * prob * (1.0 - prob)) * row.transpose() * row;
    }
    return ll;
  }
};

std::string format_direction(const std::vector<std::string>& names, const Eigen::VectorXd& d) {
  std::ostringstream out;
  out << "(";
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    out << (j ? ", " : "") << names[static_cast<std::size_t>(j)] << "=" << d(j);
  }
  out << ")";
  return out.str();
}

}  // namespace

DyadTable dyad_table(const CompiledModel& model, const BipartiteNetwork& net) {
  const std::size_t p = model.dimension();
  std::map<std::pair<std::vector<double>, int>, double> groups;
  std::vector<double> delta(p);
  for (std::size_t index = 0; index < net.dyad_count(); ++index) {
    model.change(net, net.dyad_at(index), delta);
    groups[{delta, net.has_edge_at(index) ? 1 : 0}] += 1.0;
  }
  DyadTable out;
  out.names = model.names();
  out.change.resize(static_cast<Eigen::Index>(groups.size()), static_cast<Eigen::Index>(p));
  Eigen::Index r = 0;
  for (const auto& [key, count] : groups) {
    for (std::size_t j = 0; j < p; ++j) out.change(r, static_cast<Eigen::Index>(j)) = key.first[j];
    out.response.push_back(key.second);
    out.count.push_back(count);
    ++r;
  }
  return out;
}

FitResult mple(const CompiledModel& model, const BipartiteNetwork& net) {
  const DyadTable table = dyad_table(model, net);
  const Eigen::Index p = table.change.cols();
  const Logistic logistic{table};

  // The pseudo-likelihood has a finite maximizer iff 0 is interior to the
  // hull of the signed change vectors (2y-1) * delta.
  StatMatrix signed_rows = table.change;
  for (Eigen::Index r = 0; r < signed_rows.rows(); ++r) {
    if (table.response[static_cast<std::size_t>(r)] == 0) signed_rows.row(r) *= -1.0;
  }
  if (!strictly_inside_hull(signed_rows, Eigen::VectorXd::Zero(p))) {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
    for (int it = 0; it < 60; ++it) {
      Eigen::VectorXd grad;
      Eigen::MatrixXd info;
      logistic.evaluate(theta, &grad, &info);
      info += 1e-8 * Eigen::MatrixXd::Identity(p, p);
      theta += info.ldlt().solve(grad);
    }
    const double norm = theta.norm();
    const Eigen::VectorXd dir = norm > 0 ? Eigen::VectorXd(theta / norm) : theta;
    throw EstimationError(
        "pseudo-likelihood is not estimable: complete separation along " +
            format_direction(table.names, dir),
        std::vector<double>(dir.data(), dir.data() + dir.size()));
  }

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd grad;
  Eigen::MatrixXd info;
  double ll = logistic.evaluate(theta, &grad, &info);
  int iterations = 0;
  for (; iterations < 200 && grad.norm() > 1e-8; ++iterations) {
    const Eigen::VectorXd step = info.ldlt().solve(grad);
    double scale = 1.0;
    Eigen::VectorXd trial = theta + step;
    double trial_ll = logistic.evaluate(trial, nullptr, nullptr);
    while (trial_ll < ll - 1e-12 * std::abs(ll) && scale > 1e-10) {
      scale *= 0.5;
      trial = theta + scale * step;
      trial_ll = logistic.evaluate(trial, nullptr, nullptr);
    }
    theta = trial;
    ll = logistic.evaluate(theta, &grad, &info);
  }
  if (grad.norm() > 1e-8) {
    throw EstimationError("MPLE Newton iterations did not converge (gradient norm " +
                          std::to_string(grad.norm()) + ")");
  }

  FitResult fit;
  fit.method = FitMethod::mple;
  fit.names = model.names();
  fit.theta = theta;
  fit.covariance = spd_inverse(info, fit.names, "pseudo-likelihood information");
  fit.mc_std_error = Eigen::VectorXd::Zero(p);
  fit.loglik = ll;
  fit.loglik_sd = 0.0;
  fit.loglik_kind = model.dyad_independent() ? "exact" : "pseudo";
  fit.diagnostics.newton_iterations = iterations;
  return fit;
}

namespace {

// Geyer-Thompson: maximize d . (target - mean_stats) shifted form
//   f(d) = -log mean_m exp(d . (s_m - target))
// whose maximizer makes the importance-weighted mean equal `target`.
struct GeyerThompson {
  const StatMatrix& draws;
  Eigen::VectorXd target;

  // Returns f and fills the weighted mean / covariance at d.
  double evaluate(const Eigen::VectorXd& d, Eigen::VectorXd* mean, Eigen::MatrixXd* cov,
                  Eigen::VectorXd* weights = nullptr) const {
    const Eigen::Index n = draws.rows();
    Eigen::VectorXd x(n);
    for (Eigen::Index m = 0; m < n; ++m) x(m) = d.dot(draws.row(m).transpose() - target);
    const double shift = x.maxCoeff();
    Eigen::VectorXd w = (x.array() - shift).exp();
    const double total = w.sum();
    w /= total;
    if (mean) *mean = draws.transpose() * w;
    if (cov) {
      const StatMatrix centered = draws.rowwise() - mean->transpose();
      *cov = centered.transpose() * w.asDiagonal() * centered;
    }
    if (weights) *weights = w;
    return -(shift + std::log(total / static_cast<double>(n)));
  }

  Eigen::VectorXd maximize(int* iterations) const {
    const Eigen::Index p = draws.cols();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
    double f = evaluate(d, &mean, &cov);
    int it = 0;
    for (; it < 200; ++it) {
      const Eigen::VectorXd grad = target - mean;
      if (grad.norm() <= 1e-10 * (1.0 + target.norm())) break;
      Eigen::MatrixXd h = cov;
      h.diagonal().array() += 1e-12 * (1.0 + h.diagonal().maxCoeff());
      const Eigen::VectorXd step = h.ldlt().solve(grad);
      double scale = 1.0;
      Eigen::VectorXd trial = d + step;
      Eigen::VectorXd trial_mean;
      Eigen::MatrixXd trial_cov;
      double trial_f = evaluate(trial, &trial_mean, &trial_cov);
      while (!(trial_f >= f - 1e-12 * (1.0 + std::abs(f))) && scale > 1e-8) {
        scale *= 0.5;
        trial = d + scale * step;
        trial_f = evaluate(trial, &trial_mean, &trial_cov);
      }
      if (scale <= 1e-8) break;
      d = trial;
      f = trial_f;
      mean = trial_mean;
      cov = trial_cov;
    }
    if (iterations) *iterations = it;
    return d;
  }
};

// Wilson-Hilferty approximation of the chi-square 0.99 quantile.
double chi_square_99(double dof) {
  const double z = 2.326347874;
  const double a = 2.0 / (9.0 * dof);
  return dof * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

std::vector<std::string> degeneracy_warnings(const StatSample& sample,
                                             const Eigen::VectorXd& observed,
                                             std::size_t dyads) {
  std::vector<std::string> out;
  for (Eigen::Index j = 0; j < sample.stats.cols(); ++j) {
    const double lo = sample.stats.col(j).minCoeff();
    const double hi = sample.stats.col(j).maxCoeff();
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi)) && std::abs(observed(j) - lo) > 1e-9) {
      std::ostringstream msg;
      msg << "possible degeneracy: statistic " << sample.names[static_cast<std::size_t>(j)]
          << " is constant at " << lo << " in the sample (observed " << observed(j) << ")";
      out.push_back(msg.str());
    }
  }
  if (sample.final_network) {
    const std::size_t edges = sample.final_network->edge_count();
    if (dyads > 0 && (edges == 0 || edges == dyads)) {
      out.push_back(std::string("possible degeneracy: chain ended at the ") +
                    (edges == 0 ? "empty" : "full") + " network");
    }
  }
  return out;
}

}  // namespace

FitResult mcmcmle(const CompiledModel& model, const BipartiteNetwork& net,
                  const EstimationControl& control) {
  const FitResult start = mple(model, net);
  return mcmcmle(model, net, std::span<const double>(start.theta.data(),
                                                     static_cast<std::size_t>(start.theta.size())),
                 control);
}

FitResult mcmcmle(const CompiledModel& model, const BipartiteNetwork& net,
                  std::span<const double> theta0, const EstimationControl& control) {
  const auto p = static_cast<Eigen::Index>(model.dimension());
  if (static_cast<Eigen::Index>(theta0.size()) != p) {
    throw ModelError("initial parameter vector has the wrong length");
  }
  for (double v : theta0) {
    if (!std::isfinite(v)) throw ModelError("initial parameter vector must be finite");
  }
  if (control.max_anchors < 1) throw ModelError("max_anchors must be positive");
  control.sampler.validate();

  const StatVector observed_vec = model.eval(net);
  const Eigen::VectorXd observed = to_vector(observed_vec);

  FitResult fit;
  fit.method = FitMethod::mcmcmle;
  fit.names = model.names();

  Eigen::VectorXd anchor = to_vector(theta0);
  BipartiteNetwork chain_start = net;
  bool converged = false;
  std::optional<StatSample> last_sample;
  Eigen::VectorXd estimate = anchor;
  Eigen::VectorXd last_anchor = anchor;

  for (int a = 0; a < control.max_anchors; ++a) {
    SamplerControl sc = control.sampler;
    sc.seed = split_seed(control.sampler.seed, static_cast<std::uint64_t>(a));
    StatSample sample = simulate(model, std::span<const double>(anchor.data(), static_cast<std::size_t>(p)),
                                 chain_start, sc);
    chain_start = *sample.final_network;
    fit.diagnostics.anchors = a + 1;

    for (auto& w : degeneracy_warnings(sample, observed, net.dyad_count())) {
      if (control.degeneracy_is_error) throw DegeneracyError(w);
      if (std::find(fit.diagnostics.warnings.begin(), fit.diagnostics.warnings.end(), w) ==
          fit.diagnostics.warnings.end()) {
        fit.diagnostics.warnings.push_back(w);
      }
    }

    const Eigen::VectorXd mean = column_means(sample.stats);
    const double gamma =
        hull_step_length(sample.stats, mean, observed, control.hull_inflation);
    fit.diagnostics.step_length = gamma;
    if (gamma == 0.0) {
      if (a + 1 == control.max_anchors) {
        throw EstimationError("observed statistics stayed outside the convex hull of the "
                              "simulated statistics after " +
                              std::to_string(control.max_anchors) + " anchors");
      }
      last_sample = std::move(sample);
      last_anchor = anchor;
      continue;
    }

    GeyerThompson gt{sample.stats, mean + gamma * (observed - mean)};
    int iterations = 0;
    const Eigen::VectorXd d = gt.maximize(&iterations);
    fit.diagnostics.newton_iterations = iterations;
    const Eigen::VectorXd next = anchor + d;
    fit.diagnostics.step_norms.push_back(d.norm());

    bool done = false;
    if (gamma == 1.0) {
      if (d.norm() <= control.step_tolerance) {
        done = true;
      } else {
        // Stop once the step is indistinguishable from Monte-Carlo noise.
        Eigen::VectorXd wmean;
        Eigen::MatrixXd wcov;
        Eigen::VectorXd weights;
        gt.evaluate(d, &wmean, &wcov, &weights);
        StatMatrix scores = (sample.stats.rowwise() - wmean.transpose());
        scores.array().colwise() *= weights.array() * static_cast<double>(sample.stats.rows());
        const Eigen::MatrixXd mean_cov = mean_covariance_batch(scores);
        Eigen::MatrixXd h = wcov;
        h.diagonal().array() += 1e-12 * (1.0 + h.diagonal().maxCoeff());
        const auto h_ldlt = h.ldlt();
        const Eigen::MatrixXd mc_cov = h_ldlt.solve(h_ldlt.solve(mean_cov).transpose());
        Eigen::MatrixXd mc = 0.5 * (mc_cov + mc_cov.transpose());
        mc.diagonal().array() += 1e-300;
        const double d2 = d.dot(mc.ldlt().solve(d));
        if (std::isfinite(d2) && d2 <= chi_square_99(static_cast<double>(p))) done = true;
      }
    }
    last_sample = std::move(sample);
    last_anchor = anchor;
    estimate = next;
    anchor = next;
    if (done) {
      converged = true;
      break;
    }
  }

  if (!converged) {
    fit.diagnostics.converged = false;
    fit.diagnostics.warnings.push_back("MCMC-MLE did not converge within " +
                                       std::to_string(control.max_anchors) + " anchors");
  }

  // Covariance and Monte-Carlo error from the last sample, reweighted to the
  // estimate.
  const StatSample& sample = *last_sample;
  GeyerThompson at_estimate{sample.stats, observed};
  Eigen::VectorXd wmean;
  Eigen::MatrixXd wcov;
  Eigen::VectorXd weights;
  at_estimate.evaluate(estimate - last_anchor, &wmean, &wcov, &weights);
  fit.theta = estimate;
  fit.covariance = spd_inverse(wcov, fit.names, "estimated Fisher information");
  StatMatrix scores = (sample.stats.rowwise() - wmean.transpose());
  scores.array().colwise() *= weights.array() * static_cast<double>(sample.stats.rows());
  const Eigen::MatrixXd mc_cov =
      fit.covariance * mean_covariance_batch(scores) * fit.covariance;
  fit.mc_std_error = mc_cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  fit.diagnostics.acceptance_rate = sample.acceptance_rate();
  fit.diagnostics.ess = effective_sample_size(sample.stats);

  if (control.compute_loglik) {
    const auto ll = bridge_loglik(
        model, net, std::span<const double>(fit.theta.data(), static_cast<std::size_t>(p)),
        control, split_seed(control.sampler.seed, 0x6c6c));
    fit.loglik = ll.value;
    fit.loglik_sd = ll.sd;
    fit.loglik_kind = "bridge";
  }
  return fit;
}

LoglikEstimate bridge_loglik(const CompiledModel& model, const BipartiteNetwork& net,
                             std::span<const double> theta,
                             const EstimationControl& control, std::uint64_t seed) {
  if (theta.size() != model.dimension()) {
    throw ModelError("parameter vector has the wrong length");
  }
  if (control.bridges < 1) throw ModelError("bridge count must be positive");
  const Eigen::VectorXd th = to_vector(theta);
  const StatVector obs = model.eval(net);
  const Eigen::VectorXd observed = to_vector(obs);
  const int bridges = control.bridges;
  const Eigen::VectorXd half_step = th / (2.0 * bridges);

  double log_ratio = 0.0;
  double variance = 0.0;
  BipartiteNetwork chain_start = net;
  for (int b = 0; b < bridges; ++b) {
    const Eigen::VectorXd mid = th * ((b + 0.5) / bridges);
    SamplerControl sc = control.sampler;
    sc.seed = split_seed(seed, static_cast<std::uint64_t>(b));
    sc.sample_size = control.bridge_sample_size.value_or(control.sampler.sample_size);
    const StatSample sample = simulate(
        model, std::span<const double>(mid.data(), static_cast<std::size_t>(mid.size())),
        chain_start, sc);
    chain_start = *sample.final_network;

    // log kappa(mid + h) - log kappa(mid - h)
    //   = 2 h.mean + log E[exp(h.(s - mean))] - log E[exp(-h.(s - mean))]
    const Eigen::VectorXd mean = column_means(sample.stats);
    const Eigen::Index n = sample.stats.rows();
    Eigen::VectorXd x(n);
    for (Eigen::Index m = 0; m < n; ++m) x(m) = half_step.dot(sample.stats.row(m).transpose() - mean);
    const Eigen::ArrayXd up = x.array().exp();
    const Eigen::ArrayXd down = (-x.array()).exp();
    const double up_mean = up.mean();
    const double down_mean = down.mean();
    log_ratio += 2.0 * half_step.dot(mean) + std::log(up_mean) - std::log(down_mean);

    // Delta-method influence of each draw on the segment estimate.
    std::vector<double> influence(static_cast<std::size_t>(n));
    for (Eigen::Index m = 0; m < n; ++m) {
      influence[static_cast<std::size_t>(m)] =
          2.0 * x(m) + up(m) / up_mean - down(m) / down_mean;
    }
    variance += mean_variance_batch(influence);
  }

  const double log_kappa0 = static_cast<double>(net.dyad_count()) * std::log(2.0);
  LoglikEstimate out;
  out.value = th.dot(observed) - (log_kappa0 + log_ratio);
  out.sd = std::sqrt(variance);
  return out;
}

Contrast contrast(const FitResult& fit, std::span<const double> weights) {
  if (static_cast<Eigen::Index>(weights.size()) != fit.theta.size()) {
    throw ModelError("contrast weights have the wrong length");
  }
  const Eigen::VectorXd w = to_vector(weights);
  Contrast out;
  out.estimate = w.dot(fit.theta);
  out.std_error = std::sqrt(std::max(0.0, w.dot(fit.covariance * w)));
  return out;
}

double wald_p_value(double estimate, double std_error) {
  if (!(std_error > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::erfc(std::abs(estimate / std_error) / std::sqrt(2.0));
}

std::string_view significance_stars(double p_value) {
  if (!(p_value == p_value)) return "";
  if (p_value < 0.0001) return "***";
  if (p_value < 0.001) return "**";
  if (p_value < 0.05) return "*";
  return "";
}

}  // namespace bergm
