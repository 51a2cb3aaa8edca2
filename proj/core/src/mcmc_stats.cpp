#include "bergm/mcmc_stats.hpp"

#include <algorithm>
#include <cmath>

namespace bergm {

namespace {

Eigen::Index batch_count(Eigen::Index n) {
  return std::max<Eigen::Index>(
      1, static_cast<Eigen::Index>(std::floor(std::sqrt(static_cast<double>(n)))));
}

}  // namespace

Eigen::VectorXd column_means(const StatMatrix& draws) {
  return draws.colwise().mean().transpose();
}

Eigen::MatrixXd sample_covariance(const StatMatrix& draws) {
  const Eigen::Index n = draws.rows();
  const Eigen::MatrixXd centered = draws.rowwise() - draws.colwise().mean();
  if (n < 2) return Eigen::MatrixXd::Zero(draws.cols(), draws.cols());
  return (centered.transpose() * centered) / static_cast<double>(n - 1);
}

Eigen::MatrixXd mean_covariance_batch(const StatMatrix& draws) {
  const Eigen::Index n = draws.rows();
  const Eigen::Index p = draws.cols();
  const Eigen::Index batches = batch_count(n);
  const Eigen::Index size = n / batches;
  if (batches < 2 || size < 1) return sample_covariance(draws) / std::max<double>(1, n);
  Eigen::MatrixXd means(batches, p);
  for (Eigen::Index b = 0; b < batches; ++b) {
    means.row(b) = draws.middleRows(b * size, size).colwise().mean();
  }
  const Eigen::MatrixXd centered = means.rowwise() - means.colwise().mean();
  const Eigen::MatrixXd batch_cov =
      (centered.transpose() * centered) / static_cast<double>(batches - 1);
  // Var(batch mean) ~ sigma^2 / size; Var(overall mean) ~ sigma^2 / (batches*size).
  return batch_cov / static_cast<double>(batches);
}

double mean_variance_batch(std::span<const double> series) {
  StatMatrix m(static_cast<Eigen::Index>(series.size()), 1);
  for (std::size_t t = 0; t < series.size(); ++t) m(static_cast<Eigen::Index>(t), 0) = series[t];
  return mean_covariance_batch(m)(0, 0);
}

std::vector<double> effective_sample_size(const StatMatrix& draws) {
  const auto n = static_cast<double>(draws.rows());
  const Eigen::MatrixXd cov = sample_covariance(draws);
  const Eigen::MatrixXd mean_cov = mean_covariance_batch(draws);
  std::vector<double> out(static_cast<std::size_t>(draws.cols()));
  for (Eigen::Index j = 0; j < draws.cols(); ++j) {
    const double v = cov(j, j);
    const double vm = mean_cov(j, j);
    out[static_cast<std::size_t>(j)] = (v <= 0.0 || vm <= 0.0) ? 0.0 : std::min(n, v / vm);
  }
  return out;
}

}  // namespace bergm
