#include "bergm/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace bergm {

namespace {

constexpr double kTol = 1e-9;

// Dense phase-one simplex. Rows: one per retained coordinate plus the
// convexity row. Basic variables start as artificials (basis = -1).
class PhaseOne {
 public:
  PhaseOne(Eigen::MatrixXd a, Eigen::VectorXd b) : a_(std::move(a)), b_(std::move(b)) {
    for (Eigen::Index r = 0; r < a_.rows(); ++r) {
      if (b_(r) < 0) {
        a_.row(r) *= -1.0;
        b_(r) = -b_(r);
      }
    }
    basis_.assign(static_cast<std::size_t>(a_.rows()), -1);
  }

  /// Minimum of the artificial sum; zero means feasible.
  double solve() {
    const Eigen::Index rows = a_.rows();
    const Eigen::Index cols = a_.cols();
    const long bland_after = 50 * (rows + 1);
    for (long iter = 0;; ++iter) {
      const bool bland = iter > bland_after;
      // Reduced costs of the structural columns.
      Eigen::RowVectorXd reduced = Eigen::RowVectorXd::Zero(cols);
      for (Eigen::Index r = 0; r < rows; ++r) {
        if (basis_[static_cast<std::size_t>(r)] < 0) reduced -= a_.row(r);
      }
      Eigen::Index enter = -1;
      double best = -kTol;
      for (Eigen::Index c = 0; c < cols; ++c) {
        if (reduced(c) < best) {
          enter = c;
          if (bland) break;
          best = reduced(c);
        }
      }
      if (enter < 0) break;
      Eigen::Index leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < rows; ++r) {
        const double v = a_(r, enter);
        if (v <= kTol) continue;
        const double q = b_(r) / v;
        if (q < ratio - kTol ||
            (q <= ratio + kTol && leave >= 0 &&
             basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)])) {
          ratio = std::min(ratio, q);
          leave = r;
        }
      }
      if (leave < 0) break;  // unbounded direction cannot occur in phase one
      pivot(leave, enter);
      if (iter > 100000) break;
    }
    double objective = 0.0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < 0) objective += b_(r);
    }
    return objective;
  }

 private:
  void pivot(Eigen::Index row, Eigen::Index col) {
    const double p = a_(row, col);
    a_.row(row) /= p;
    b_(row) /= p;
    for (Eigen::Index r = 0; r < a_.rows(); ++r) {
      if (r == row) continue;
      const double f = a_(r, col);
      if (f == 0.0) continue;
      a_.row(r) -= f * a_.row(row);
      b_(r) -= f * b_(row);
    }
    basis_[static_cast<std::size_t>(row)] = static_cast<long>(col);
  }

  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  std::vector<long> basis_;
};

}  // namespace

bool in_convex_hull(const StatMatrix& points, const Eigen::VectorXd& x) {
  const Eigen::Index n = points.rows();
  const Eigen::Index p = points.cols();
  if (n == 0) return false;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  const auto less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index j = 0; j < p; ++j) {
      if (points(a, j) != points(b, j)) return points(a, j) < points(b, j);
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<Eigen::Index> unique;
  for (Eigen::Index idx : order) {
    if (unique.empty() || less(unique.back(), idx)) unique.push_back(idx);
  }

  // Scale each coordinate by its spread; constant coordinates must match x.
  std::vector<Eigen::Index> kept;
  std::vector<double> scale;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double lo = points.col(j).minCoeff();
    const double hi = points.col(j).maxCoeff();
    const double spread = hi - lo;
    const double magnitude = std::max({1.0, std::abs(lo), std::abs(hi)});
    if (spread <= 1e-12 * magnitude) {
      if (std::abs(x(j) - lo) > 1e-9 * magnitude) return false;
      continue;
    }
    if (x(j) < lo - 1e-12 * magnitude || x(j) > hi + 1e-12 * magnitude) return false;
    kept.push_back(j);
    scale.push_back(spread);
  }

  const auto m = static_cast<Eigen::Index>(unique.size());
  const auto rows = static_cast<Eigen::Index>(kept.size()) + 1;
  Eigen::MatrixXd a(rows, m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  for (Eigen::Index c = 0; c < m; ++c) {
    const Eigen::Index src = unique[static_cast<std::size_t>(c)];
    for (std::size_t r = 0; r < kept.size(); ++r) {
      const Eigen::Index j = kept[r];
      a(static_cast<Eigen::Index>(r), c) = (points(src, j) - x(j)) / scale[r];
    }
    a(rows - 1, c) = 1.0;
  }
  b(rows - 1) = 1.0;
  return PhaseOne(std::move(a), std::move(b)).solve() <= 1e-8;
}

bool strictly_inside_hull(const StatMatrix& points, const Eigen::VectorXd& x,
                          double relative_eps) {
  if (points.rows() == 0) return false;
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    const double spread = points.col(j).maxCoeff() - points.col(j).minCoeff();
    if (spread <= 0.0) return false;
    for (const double sign : {1.0, -1.0}) {
      Eigen::VectorXd probe = x;
      probe(j) += sign * relative_eps * spread;
      if (!in_convex_hull(points, probe)) return false;
    }
  }
  return true;
}

double hull_step_length(const StatMatrix& points, const Eigen::VectorXd& mean,
                        const Eigen::VectorXd& target, double inflation,
                        int max_halvings) {
  double gamma = 1.0;
  for (int h = 0; h <= max_halvings; ++h) {
    if (in_convex_hull(points, mean + inflation * gamma * (target - mean))) return gamma;
    gamma *= 0.5;
  }
  return 0.0;
}

}  // namespace bergm
