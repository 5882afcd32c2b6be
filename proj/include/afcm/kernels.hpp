#pragma once

#include <Eigen/Dense>

namespace afcm::kernels {

// Data-parallel inner loops shared by the graph and clustering code paths.
// Every kernel parallelizes over independent rows; reductions accumulate
// per-row partials that are summed serially afterwards, so results are
// bit-identical for any thread count. kernels::serial holds reference
// twins with the same arithmetic, used by the tests and the benchmark.

/// All-pairs squared Euclidean distances between columns of `points` (d x n).
Eigen::MatrixXd pairwise_sq_dists(const Eigen::MatrixXd& points);

/// Squared distances between columns of `points` (d x n) and columns of
/// `centers` (d x c), as an n x c matrix.
Eigen::MatrixXd point_center_sq_dists(const Eigen::MatrixXd& points,
                                      const Eigen::MatrixXd& centers);

/// Row-wise softmax of -gamma * sq_dists, shifted by the per-row minimum
/// so the largest exponent is exactly zero.
Eigen::MatrixXd softmax_neg_scaled(const Eigen::MatrixXd& sq_dists, double gamma);

/// U diag(scale) U^T for an n x c membership matrix, as a dense n x n matrix.
Eigen::MatrixXd scaled_gram(const Eigen::MatrixXd& u, const Eigen::VectorXd& scale);

/// sum_ij weights(i,j) * values(i,j).
double weighted_sum(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& values);

/// sum_ij u(i,j) * ln u(i,j), with 0 ln 0 = 0.
double entropy_sum(const Eigen::MatrixXd& u);

/// Tr(coords * sym * coords^T) for coords with few rows and symmetric `sym`.
double trace_quad(const Eigen::MatrixXd& coords, const Eigen::MatrixXd& sym);

namespace serial {

Eigen::MatrixXd pairwise_sq_dists(const Eigen::MatrixXd& points);
Eigen::MatrixXd point_center_sq_dists(const Eigen::MatrixXd& points,
                                      const Eigen::MatrixXd& centers);
Eigen::MatrixXd softmax_neg_scaled(const Eigen::MatrixXd& sq_dists, double gamma);
Eigen::MatrixXd scaled_gram(const Eigen::MatrixXd& u, const Eigen::VectorXd& scale);
double weighted_sum(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& values);
double entropy_sum(const Eigen::MatrixXd& u);
double trace_quad(const Eigen::MatrixXd& coords, const Eigen::MatrixXd& sym);

}  // namespace serial

}  // namespace afcm::kernels
