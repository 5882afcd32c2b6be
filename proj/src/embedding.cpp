#include "afcm/embedding.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "afcm/eigs.hpp"
#include "afcm/errors.hpp"
#include "afcm/kernels.hpp"
#include "afcm/metrics.hpp"

namespace afcm {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool stalled(double prev, double cur, double tol) {
    return std::abs(cur - prev) <= tol * std::max(1.0, std::abs(prev));
}

}  // namespace

Embedding update_embedding(const FuzzyPartition& membership, double gamma, double lambda,
                           const NormalizedLaplacian& laplacian, int dim) {
    if (!(gamma >= 0.0) || !(lambda >= 0.0))
        throw std::invalid_argument("gamma and lambda must be nonnegative");
    const AnchorLaplacian anchor = anchor_laplacian(membership);
    const Eigen::MatrixXd m = gamma * anchor.matrix + lambda * laplacian.matrix;
    const EigenPairs pairs = smallest_eigenpairs(m, dim);
    return Embedding{pairs.vectors.transpose(), dim};
}

Embedding spectral_embed(const NormalizedLaplacian& laplacian, int c) {
    const EigenPairs pairs = smallest_eigenpairs(laplacian.matrix, c);
    return Embedding{pairs.vectors.transpose(), c};
}

double objective_full(const Embedding& embedding, const FuzzyPartition& membership,
                      const Centers& centers, double gamma, double lambda,
                      const NormalizedLaplacian& laplacian) {
    const Eigen::MatrixXd d2 =
        kernels::point_center_sq_dists(embedding.coords, centers.v);
    const double sse = kernels::weighted_sum(membership.u, d2);
    const double entropy = kernels::entropy_sum(membership.u);
    const double graph_term = kernels::trace_quad(embedding.coords, laplacian.matrix);
    const double n = static_cast<double>(embedding.coords.cols());
    return gamma * sse + lambda * graph_term + entropy -
           0.5 * n * embedding.dim * std::log(gamma);
}

AfcmReport fit_afcm(const Dataset& data, const AfcmConfig& config,
                    const std::vector<int>* truth) {
    const AffinityGraph graph =
        knn_affinity(data, config.k, config.sigma, config.symmetrize);
    return fit_afcm(data, normalized_laplacian(graph), config, truth);
}

AfcmReport fit_afcm(const Dataset& data, const NormalizedLaplacian& laplacian,
                    const AfcmConfig& config, const std::vector<int>* truth) {
    const Eigen::Index n = data.samples();
    const int c = config.clusters;
    if (c < 1 || c > n) throw std::invalid_argument("need 1 <= clusters <= n");
    if (!(config.lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    const int dim = config.embed_dim > 0 ? config.embed_dim : c;
    if (dim > n) throw std::invalid_argument("embedding dimension exceeds n");

    AfcmReport report;
    FitReport& fit = report.fit;
    fit.partition = init_membership(data.features, c, config.seed);
    fit.gamma = 1.0;

    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < config.max_iter; ++it) {
        const auto tick = Clock::now();
        try {
            report.embedding = update_embedding(fit.partition, fit.gamma, config.lambda,
                                                laplacian, dim);
            fit.centers = update_centers(report.embedding.coords, fit.partition);
            fit.gamma =
                update_gamma(report.embedding.coords, fit.partition, fit.centers, dim)
                    .value;
            fit.partition = update_membership(report.embedding.coords, fit.centers,
                                              ScaleGamma{fit.gamma});
        } catch (const DegenerateClusterError& e) {
            throw DegenerateClusterError(e.cluster(), e.mass(), it);
        }
        const double obj = objective_full(report.embedding, fit.partition, fit.centers,
                                          fit.gamma, config.lambda, laplacian);
        fit.objective_trace.push_back(obj);
        fit.gamma_trace.push_back(fit.gamma);
        fit.iter_wall_ms.push_back(ms_since(tick));
        if (truth) fit.acc_trace.push_back(accuracy(hard_labels(fit.partition), *truth));
        fit.iterations = it + 1;
        if (it > 0 && stalled(prev, obj, config.tol)) {
            fit.converged = true;
            break;
        }
        prev = obj;
    }
    return report;
}

}  // namespace afcm
