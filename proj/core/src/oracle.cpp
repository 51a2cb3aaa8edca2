#include "bergm/oracle.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "bergm/error.hpp"
#include "bergm/hull.hpp"

namespace bergm {

namespace {

constexpr std::uint64_t kResyncInterval = 4096;

Eigen::VectorXd to_vector(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void check_theta(const ExactModel& em, std::span<const double> theta) {
  if (theta.size() != em.dimension()) {
    throw ModelError("parameter vector has " + std::to_string(theta.size()) +
                     " entries, model has " + std::to_string(em.dimension()));
  }
}

// exp(theta . s(y) - shift) for every state, plus the shift.
Eigen::VectorXd state_weights(const ExactModel& em, const Eigen::VectorXd& theta, double& shift) {
  const Eigen::VectorXd x = em.table() * theta;
  shift = x.maxCoeff();
  return (x.array() - shift).exp().matrix();
}

ExactMoments moments(const ExactModel& em, const Eigen::VectorXd& theta) {
  double shift = 0.0;
  const Eigen::VectorXd w = state_weights(em, theta, shift);
  const double total = w.sum();
  ExactMoments out;
  out.log_kappa = shift + std::log(total);
  out.mean = em.table().transpose() * w / total;
  const StatMatrix centered = em.table().rowwise() - out.mean.transpose();
  out.covariance = centered.transpose() * (w / total).asDiagonal() * centered;
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  return out;
}

}  // namespace

ExactModel::ExactModel(CompiledModel model, int max_dyads) : model_(std::move(model)) {
  if (max_dyads > kMaxDyads) {
    throw ModelError("the enumeration cap cannot exceed " + std::to_string(kMaxDyads) +
                     " dyads");
  }
  dyads_ = static_cast<std::size_t>(model_.n1()) * static_cast<std::size_t>(model_.n2());
  if (max_dyads < 0 || dyads_ > static_cast<std::size_t>(max_dyads)) {
    throw ModelError("exact enumeration needs at most " + std::to_string(max_dyads) +
                     " dyads, network has " + std::to_string(dyads_));
  }
  const std::size_t p = model_.dimension();
  table_.resize(static_cast<Eigen::Index>(state_count()), static_cast<Eigen::Index>(p));

  BipartiteNetwork net(model_.n1(), model_.n2());
  std::vector<double> stats = model_.eval(net);
  std::vector<double> delta(p);
  std::uint64_t state = 0;
  for (std::size_t j = 0; j < p; ++j) table_(0, static_cast<Eigen::Index>(j)) = stats[j];
  for (std::uint64_t step = 1; step < state_count(); ++step) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(step));
    const Dyad d = net.dyad_at(bit);
    model_.change(net, d, delta);
    const bool added = net.toggle(d.i, d.k);
    for (std::size_t j = 0; j < p; ++j) stats[j] += added ? delta[j] : -delta[j];
    state ^= std::uint64_t{1} << bit;
    if (step % kResyncInterval == 0) {
      const StatVector fresh = model_.eval(net);
      for (std::size_t j = 0; j < p; ++j) {
        if (std::abs(fresh[j] - stats[j]) > 1e-9) {
          throw std::logic_error("enumeration drifted from full evaluation in statistic " +
                                 model_.names()[j]);
        }
        stats[j] = fresh[j];
      }
    }
    for (std::size_t j = 0; j < p; ++j) {
      table_(static_cast<Eigen::Index>(state), static_cast<Eigen::Index>(j)) = stats[j];
    }
  }
}

Eigen::VectorXd ExactModel::stats_of(std::uint64_t state) const {
  if (state >= state_count()) throw std::out_of_range("state out of range");
  return table_.row(static_cast<Eigen::Index>(state)).transpose();
}

BipartiteNetwork ExactModel::network_of(std::uint64_t state) const {
  if (state >= state_count()) throw std::out_of_range("state out of range");
  BipartiteNetwork net(model_.n1(), model_.n2());
  for (std::size_t b = 0; b < dyads_; ++b) {
    if ((state >> b) & 1U) {
      const Dyad d = net.dyad_at(b);
      net.set_edge(d.i, d.k, true);
    }
  }
  return net;
}

std::uint64_t ExactModel::state_of(const BipartiteNetwork& net) const {
  if (net.n1() != model_.n1() || net.n2() != model_.n2()) {
    throw ModelError("network dimensions do not match the exact model");
  }
  std::uint64_t state = 0;
  for (std::size_t b = 0; b < dyads_; ++b) {
    if (net.has_edge_at(b)) state |= std::uint64_t{1} << b;
  }
  return state;
}

double exact_log_kappa(const ExactModel& em, std::span<const double> theta) {
  check_theta(em, theta);
  double shift = 0.0;
  const Eigen::VectorXd w = state_weights(em, to_vector(theta), shift);
  return shift + std::log(w.sum());
}

double exact_loglik(const ExactModel& em, std::span<const double> theta,
                    const BipartiteNetwork& observed) {
  check_theta(em, theta);
  const Eigen::VectorXd obs = em.stats_of(em.state_of(observed));
  return to_vector(theta).dot(obs) - exact_log_kappa(em, theta);
}

ExactMoments exact_moments(const ExactModel& em, std::span<const double> theta) {
  check_theta(em, theta);
  return moments(em, to_vector(theta));
}

ExactMle exact_mle(const ExactModel& em, const BipartiteNetwork& observed) {
  const Eigen::VectorXd obs = em.stats_of(em.state_of(observed));
  const auto p = static_cast<Eigen::Index>(em.dimension());

  if (!strictly_inside_hull(em.table(), obs)) {
    // Follow the likelihood uphill for a while to expose the escape direction.
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
    for (int it = 0; it < 60; ++it) {
      const ExactMoments m = moments(em, theta);
      Eigen::MatrixXd h = m.covariance;
      h.diagonal().array() += 1e-8;
      theta += h.ldlt().solve(obs - m.mean);
    }
    const double norm = theta.norm();
    const Eigen::VectorXd dir = norm > 0 ? Eigen::VectorXd(theta / norm) : theta;
    std::ostringstream msg;
    msg << "maximum likelihood estimate does not exist: observed statistics are on the "
           "boundary of the attainable set; divergence direction (";
    for (Eigen::Index j = 0; j < p; ++j) {
      msg << (j ? ", " : "") << em.names()[static_cast<std::size_t>(j)] << "=" << dir(j);
    }
    msg << ")";
    throw EstimationError(msg.str(), std::vector<double>(dir.data(), dir.data() + dir.size()));
  }

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
  ExactMoments m = moments(em, theta);
  double ll = theta.dot(obs) - m.log_kappa;
  int it = 0;
  for (; it < 500; ++it) {
    const Eigen::VectorXd grad = obs - m.mean;
    if (grad.norm() <= 1e-10) break;
    const Eigen::VectorXd step = m.covariance.ldlt().solve(grad);
    double scale = 1.0;
    Eigen::VectorXd trial;
    ExactMoments trial_m;
    double trial_ll = 0.0;
    for (;;) {
      trial = theta + scale * step;
      trial_m = moments(em, trial);
      trial_ll = trial.dot(obs) - trial_m.log_kappa;
      if (trial_ll >= ll - 1e-13 * (1.0 + std::abs(ll)) || scale < 1e-12) break;
      scale *= 0.5;
    }
    theta = trial;
    m = trial_m;
    ll = trial_ll;
  }
  if ((obs - m.mean).norm() > 1e-10) {
    throw EstimationError("exact MLE iterations did not reach gradient norm 1e-10");
  }
  ExactMle out;
  out.theta = theta;
  out.loglik = ll;
  out.covariance = m.covariance.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  out.iterations = it;
  return out;
}

ExactDistribution exact_dyad_distribution(const ExactModel& em, std::span<const double> theta) {
  check_theta(em, theta);
  double shift = 0.0;
  const Eigen::VectorXd w = state_weights(em, to_vector(theta), shift);
  const double total = w.sum();
  ExactDistribution out;
  out.probabilities.resize(em.state_count());
  out.dyad_marginals.assign(em.dyad_count(), 0.0);
  for (std::size_t s = 0; s < em.state_count(); ++s) {
    const double prob = w(static_cast<Eigen::Index>(s)) / total;
    out.probabilities[s] = prob;
    for (std::size_t b = 0; b < em.dyad_count(); ++b) {
      if ((s >> b) & 1U) out.dyad_marginals[b] += prob;
    }
  }
  return out;
}

}  // namespace bergm
