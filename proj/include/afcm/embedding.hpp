#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "afcm/clustering.hpp"
#include "afcm/dataset.hpp"
#include "afcm/graph.hpp"

namespace afcm {

/// Learned sample coordinates with orthonormal rows (coords * coords^T = I).
struct Embedding {
    Eigen::MatrixXd coords;  // dim x n
    int dim = 0;
};

struct AfcmConfig {
    int clusters = 2;
    double lambda = 1.0;   // graph regularization weight
    int k = 5;             // affinity graph neighbours
    double sigma = 2.0;    // Gaussian kernel width
    int max_iter = 100;
    double tol = 1e-6;
    std::uint64_t seed = 0;
    int embed_dim = 0;     // 0 means use `clusters`
    Symmetrize symmetrize = Symmetrize::Max;
};

struct AfcmReport {
    FitReport fit;
    Embedding embedding;
};

/// Rows of the result are the eigenvectors of the `dim` smallest eigenvalues
/// of gamma (I - U B U^T) + lambda L_hat, so the achieved trace equals the
/// sum of those eigenvalues.
Embedding update_embedding(const FuzzyPartition& membership, double gamma, double lambda,
                           const NormalizedLaplacian& laplacian, int dim);

/// Eigenvectors of the c smallest eigenvalues of L_hat alone.
Embedding spectral_embed(const NormalizedLaplacian& laplacian, int c);

/// gamma * sum_ij u_ij ||x~_i - v_j||^2 + lambda Tr(X~ L_hat X~^T)
///   + sum_ij u_ij ln u_ij - (n dim / 2) ln gamma.
double objective_full(const Embedding& embedding, const FuzzyPartition& membership,
                      const Centers& centers, double gamma, double lambda,
                      const NormalizedLaplacian& laplacian);

/// Joint manifold learning and fuzzy clustering: per iteration the embedding
/// eigenstep, then centers, scale, and memberships, each in closed form.
/// The objective trace is nonincreasing. Builds the affinity graph internally.
AfcmReport fit_afcm(const Dataset& data, const AfcmConfig& config,
                    const std::vector<int>* truth = nullptr);

/// Same fit against a prebuilt Laplacian (grid searches reuse one per k).
AfcmReport fit_afcm(const Dataset& data, const NormalizedLaplacian& laplacian,
                    const AfcmConfig& config, const std::vector<int>* truth = nullptr);

}  // namespace afcm
