#pragma once

#include <Eigen/Dense>

#include "afcm/dataset.hpp"
#include "afcm/partition.hpp"

namespace afcm {

enum class Symmetrize { Max, Mean };

/// k-NN Gaussian affinity graph: symmetric nonnegative weights with zero
/// diagonal, entries in [0, 1].
struct AffinityGraph {
    Eigen::MatrixXd weights;  // n x n
    int k = 0;
    double sigma = 0.0;
};

/// D^{-1/2} (D - W) D^{-1/2} together with the degree vector.
struct NormalizedLaplacian {
    Eigen::MatrixXd matrix;   // n x n, symmetric PSD, spectrum in [0, 2]
    Eigen::VectorXd degrees;  // row sums of W (floored, see below)
};

/// I_n - U B U^T with b_kk = 1 / sum_i u_ik. Row sums of U B U^T are 1 for
/// simplex memberships, so the all-ones vector is in the null space.
struct AnchorLaplacian {
    Eigen::MatrixXd matrix;        // n x n, symmetric PSD
    Eigen::VectorXd column_masses; // sum_i u_ik per cluster
};

/// w_ij = exp(-||x_i - x_j||^2 / (2 sigma^2)) when x_j is among the k nearest
/// neighbours of x_i (self excluded), 0 otherwise; then symmetrized.
/// Neighbour ties break to the lower sample index.
AffinityGraph knn_affinity(const Dataset& data, int k, double sigma,
                           Symmetrize mode = Symmetrize::Max);

/// Degrees below 1e-12 (isolated vertices) are floored so D^{-1/2} stays
/// defined; such a vertex contributes an identity row. The result is
/// explicitly symmetrized as (M + M^T) / 2.
NormalizedLaplacian normalized_laplacian(const AffinityGraph& graph);

/// Throws DegenerateClusterError when a column mass falls below 1e-12.
AnchorLaplacian anchor_laplacian(const FuzzyPartition& membership);

}  // namespace afcm
