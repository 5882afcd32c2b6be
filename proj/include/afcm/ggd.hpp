#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace afcm {

/// One generalized Gaussian component: mean and symmetric positive definite
/// scatter. Shape and scale are shared across a mixture.
struct GgdComponent {
    Eigen::VectorXd mean;
    Eigen::MatrixXd scatter;
};

/// Fixed-parameter mixture of generalized Gaussians. Evaluation only; no
/// parameter learning happens here.
struct GgdMixture {
    std::vector<GgdComponent> components;
    Eigen::VectorXd mixing;  // on the simplex
    double shape = 1.0;      // exponent on the Mahalanobis form
    double scale = 0.5;      // multiplier inside the exponential

    int size() const { return static_cast<int>(components.size()); }
};

/// Log density of one component:
///   log beta + lgamma(d/2) + d/(2 beta) log m - d/2 log pi - lgamma(d/(2 beta))
///   - 1/2 log|Sigma| - m [(x-v)^T Sigma^-1 (x-v)]^beta.
/// The Mahalanobis form goes through a Cholesky factor of Sigma; a non-PD
/// scatter is rejected.
double ggd_logpdf(const Eigen::VectorXd& x, const GgdComponent& component, double shape,
                  double scale);

/// Posterior component probabilities alpha_j g(x|theta_j) / sum_l alpha_l g(x|theta_l),
/// evaluated through full log densities and log-sum-exp.
Eigen::VectorXd mixture_posterior(const Eigen::VectorXd& x, const GgdMixture& mixture);

/// The closed-form membership row: softmax over
///   log alpha_j - 1/2 log|Sigma_j| - m [(x-v_j)^T Sigma_j^-1 (x-v_j)]^beta.
/// Agrees elementwise with mixture_posterior (the shared normalizing
/// constant cancels).
Eigen::VectorXd closed_form_membership(const Eigen::VectorXd& x, const GgdMixture& mixture);

/// Draw a randomized evaluation-ready mixture plus a query point: dimension
/// in [1, 5], 2-4 components, shape from {0.5, 1, 2}, scatters kept PD.
std::pair<GgdMixture, Eigen::VectorXd> random_mixture_instance(std::uint64_t seed);

/// Max elementwise |closed_form_membership - mixture_posterior| over
/// `trials` randomized instances.
double equivalence_max_discrepancy(int trials, std::uint64_t seed);

}  // namespace afcm
