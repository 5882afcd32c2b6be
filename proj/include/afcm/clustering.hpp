#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "afcm/dataset.hpp"
#include "afcm/partition.hpp"

namespace afcm {

/// Upper bound on the adaptive scale; the closed-form update diverges at a
/// perfect fit, so it is clamped here.
inline constexpr double kGammaCap = 1e12;

/// Floor on per-cluster membership mass before a fit is declared degenerate.
inline constexpr double kMassEpsilon = 1e-12;

/// One cluster center per column.
struct Centers {
    Eigen::MatrixXd v;  // dim x c
};

/// The adaptive fuzziness scale; always in (0, kGammaCap].
struct ScaleGamma {
    double value = 1.0;
};

struct FitReport {
    FuzzyPartition partition;
    Centers centers;
    double gamma = 1.0;
    std::vector<double> objective_trace;  // one entry per iteration, nonincreasing
    std::vector<double> gamma_trace;
    std::vector<double> acc_trace;        // empty unless truth labels were given
    std::vector<double> iter_wall_ms;
    int iterations = 0;
    bool converged = false;
};

struct FitOptions {
    std::uint64_t seed = 0;
    int max_iter = 100;
    double tol = 1e-6;
    const std::vector<int>* truth = nullptr;  // enables per-iteration accuracy
};

/// u_ij proportional to exp(-gamma ||x_i - v_j||^2), row-normalized.
/// Computed with a per-row shift so large gamma cannot underflow the
/// winning entry.
FuzzyPartition update_membership(const Eigen::MatrixXd& points, const Centers& centers,
                                 ScaleGamma gamma);

/// v_j = sum_i u_ij x_i / sum_i u_ij. Throws DegenerateClusterError when a
/// column mass falls below kMassEpsilon.
Centers update_centers(const Eigen::MatrixXd& points, const FuzzyPartition& membership);

/// gamma = (dim * n / 2) / sum_ij u_ij ||x_i - v_j||^2, clamped to kGammaCap.
ScaleGamma update_gamma(const Eigen::MatrixXd& points, const FuzzyPartition& membership,
                        const Centers& centers, int dim);

/// gamma * sum_ij u_ij ||x_i - v_j||^2 + sum_ij u_ij ln u_ij - (n dim / 2) ln gamma.
double objective_degenerate(const Eigen::MatrixXd& points, const FuzzyPartition& membership,
                            const Centers& centers, ScaleGamma gamma, int dim);

/// Parameter-free entropy-regularized fuzzy fit with self-tuned gamma:
/// alternate centers, gamma, memberships until the objective stalls.
FitReport fit_degenerate_afcm(const Dataset& data, int c, const FitOptions& opts = {});

/// Entropy-regularized fuzzy c-means with a fixed gamma.
FitReport fit_fcm_er(const Dataset& data, int c, double gamma_fixed,
                     const FitOptions& opts = {});

struct KmeansResult {
    std::vector<int> labels;
    Eigen::MatrixXd centers;  // dim x c
    double inertia = 0.0;
    int iterations = 0;
};

/// Lloyd iterations from k-means++ seeding; empty clusters are reseeded to
/// the point farthest from its current center. Deterministic per seed.
KmeansResult kmeans(const Eigen::MatrixXd& points, int c, std::uint64_t seed,
                    int max_iter = 100);
KmeansResult kmeans(const Dataset& data, int c, std::uint64_t seed, int max_iter = 100);

/// Shared initialization: k-means++ picks c distinct samples as provisional
/// centers, then one membership pass with gamma = 1.
FuzzyPartition init_membership(const Eigen::MatrixXd& points, int c, std::uint64_t seed);

}  // namespace afcm
