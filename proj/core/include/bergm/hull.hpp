#ifndef BERGM_HULL_HPP_
#define BERGM_HULL_HPP_

#include <Eigen/Core>

#include "bergm/sampler.hpp"

namespace bergm {

/// Whether `x` lies in the convex hull of the rows of `points`. Decided by a
/// phase-one simplex on { lambda >= 0 : sum lambda = 1, points^T lambda = x }
/// after removing duplicate rows and scaling each coordinate.
bool in_convex_hull(const StatMatrix& points, const Eigen::VectorXd& x);

/// Whether `x` is interior to the hull: every point x +/- eps_j e_j is inside,
/// with eps_j = relative_eps times the spread of coordinate j. False when
/// some coordinate is constant across `points`.
bool strictly_inside_hull(const StatMatrix& points, const Eigen::VectorXd& x,
                          double relative_eps = 1e-6);

/// Largest gamma in {1, 1/2, 1/4, ...} (at most `max_halvings` halvings) such
/// that mean + inflation * gamma * (target - mean) is inside the hull of
/// `points`; 0 when none is.
double hull_step_length(const StatMatrix& points, const Eigen::VectorXd& mean,
                        const Eigen::VectorXd& target, double inflation = 1.05,
                        int max_halvings = 10);

}  // namespace bergm

#endif  // BERGM_HULL_HPP_
