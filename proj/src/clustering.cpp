#include "afcm/clustering.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

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

/// k-means++ seeding over column indices; already-chosen points have zero
/// weight, so indices stay distinct. Falls back to the lowest unchosen index
/// when every remaining distance is zero (duplicated points).
std::vector<Eigen::Index> kmeanspp_indices(const Eigen::MatrixXd& points, int c,
                                           std::mt19937_64& rng) {
    const Eigen::Index n = points.cols();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Eigen::Index> chosen;
    chosen.reserve(c);
    chosen.push_back(static_cast<Eigen::Index>(unit(rng) * n) % n);

    Eigen::VectorXd best_d2 =
        (points.colwise() - points.col(chosen[0])).colwise().squaredNorm().transpose();
    std::vector<char> used(n, 0);
    used[chosen[0]] = 1;
    while (static_cast<int>(chosen.size()) < c) {
        const double total = best_d2.sum();
        Eigen::Index pick = -1;
        if (total > 0.0) {
            double r = unit(rng) * total;
            for (Eigen::Index i = 0; i < n; ++i) {
                r -= best_d2(i);
                if (r <= 0.0) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) pick = n - 1;
            if (used[pick]) pick = -1;  // duplicate coordinates; fall through
        }
        if (pick < 0) {
            for (Eigen::Index i = 0; i < n; ++i)
                if (!used[i]) {
                    pick = i;
                    break;
                }
        }
        used[pick] = 1;
        chosen.push_back(pick);
        best_d2 = best_d2.cwiseMin(
            (points.colwise() - points.col(pick)).colwise().squaredNorm().transpose());
    }
    return chosen;
}

}  // namespace

FuzzyPartition update_membership(const Eigen::MatrixXd& points, const Centers& centers,
                                 ScaleGamma gamma) {
    if (!(gamma.value > 0.0)) throw std::invalid_argument("gamma must be positive");
    const Eigen::MatrixXd d2 = kernels::point_center_sq_dists(points, centers.v);
    return FuzzyPartition{kernels::softmax_neg_scaled(d2, gamma.value)};
}

Centers update_centers(const Eigen::MatrixXd& points, const FuzzyPartition& membership) {
    const Eigen::Index c = membership.clusters();
    const Eigen::VectorXd mass = membership.u.colwise().sum();
    for (Eigen::Index j = 0; j < c; ++j)
        if (mass(j) < kMassEpsilon)
            throw DegenerateClusterError(static_cast<int>(j), mass(j));
    Centers out;
    out.v = (points * membership.u) * mass.cwiseInverse().asDiagonal();
    return out;
}

ScaleGamma update_gamma(const Eigen::MatrixXd& points, const FuzzyPartition& membership,
                        const Centers& centers, int dim) {
    const Eigen::MatrixXd d2 = kernels::point_center_sq_dists(points, centers.v);
    const double sse = kernels::weighted_sum(membership.u, d2);
    const double n = static_cast<double>(points.cols());
    double gamma = 0.5 * dim * n / sse;
    if (!(gamma <= kGammaCap)) gamma = kGammaCap;  // also catches sse == 0
    return ScaleGamma{gamma};
}

double objective_degenerate(const Eigen::MatrixXd& points, const FuzzyPartition& membership,
                            const Centers& centers, ScaleGamma gamma, int dim) {
    const Eigen::MatrixXd d2 = kernels::point_center_sq_dists(points, centers.v);
    const double sse = kernels::weighted_sum(membership.u, d2);
    const double entropy = kernels::entropy_sum(membership.u);
    const double n = static_cast<double>(points.cols());
    return gamma.value * sse + entropy - 0.5 * n * dim * std::log(gamma.value);
}

FuzzyPartition init_membership(const Eigen::MatrixXd& points, int c, std::uint64_t seed) {
    const Eigen::Index n = points.cols();
    if (c < 1 || c > n) throw std::invalid_argument("need 1 <= c <= n");
    std::mt19937_64 rng(seed);
    const auto idx = kmeanspp_indices(points, c, rng);
    Centers seeds;
    seeds.v.resize(points.rows(), c);
    for (int j = 0; j < c; ++j) seeds.v.col(j) = points.col(idx[j]);
    return update_membership(points, seeds, ScaleGamma{1.0});
}

namespace {

/// Shared alternating loop for the degenerate fit and FCM-ER; `adapt_gamma`
/// switches the gamma update on.
FitReport alternate_fit(const Eigen::MatrixXd& points, int c, bool adapt_gamma,
                        double gamma_fixed, const FitOptions& opts) {
    const int dim = static_cast<int>(points.rows());
    FitReport report;
    report.partition = init_membership(points, c, opts.seed);
    report.gamma = adapt_gamma ? 1.0 : gamma_fixed;

    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < opts.max_iter; ++it) {
        const auto tick = Clock::now();
        try {
            report.centers = update_centers(points, report.partition);
            if (adapt_gamma)
                report.gamma =
                    update_gamma(points, report.partition, report.centers, dim).value;
            report.partition =
                update_membership(points, report.centers, ScaleGamma{report.gamma});
        } catch (const DegenerateClusterError& e) {
            throw DegenerateClusterError(e.cluster(), e.mass(), it);
        }
        const double obj = objective_degenerate(points, report.partition, report.centers,
                                                ScaleGamma{report.gamma}, dim);
        report.objective_trace.push_back(obj);
        report.gamma_trace.push_back(report.gamma);
        report.iter_wall_ms.push_back(ms_since(tick));
        if (opts.truth)
            report.acc_trace.push_back(accuracy(hard_labels(report.partition), *opts.truth));
        report.iterations = it + 1;
        if (it > 0 && stalled(prev, obj, opts.tol)) {
            report.converged = true;
            break;
        }
        prev = obj;
    }
    return report;
}

}  // namespace

FitReport fit_degenerate_afcm(const Dataset& data, int c, const FitOptions& opts) {
    return alternate_fit(data.features, c, /*adapt_gamma=*/true, 1.0, opts);
}

FitReport fit_fcm_er(const Dataset& data, int c, double gamma_fixed, const FitOptions& opts) {
    if (!(gamma_fixed > 0.0)) throw std::invalid_argument("gamma_fixed must be positive");
    return alternate_fit(data.features, c, /*adapt_gamma=*/false, gamma_fixed, opts);
}

KmeansResult kmeans(const Eigen::MatrixXd& points, int c, std::uint64_t seed, int max_iter) {
    const Eigen::Index n = points.cols();
    if (c < 1 || c > n) throw std::invalid_argument("need 1 <= c <= n");
    std::mt19937_64 rng(seed);

    KmeansResult res;
    res.centers.resize(points.rows(), c);
    const auto idx = kmeanspp_indices(points, c, rng);
    for (int j = 0; j < c; ++j) res.centers.col(j) = points.col(idx[j]);
    res.labels.assign(n, 0);

    for (int it = 0; it < max_iter; ++it) {
        const Eigen::MatrixXd d2 = kernels::point_center_sq_dists(points, res.centers);
        bool changed = it == 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            for (int j = 1; j < c; ++j)
                if (d2(i, j) < d2(i, best)) best = j;
            if (best != res.labels[i]) {
                res.labels[i] = best;
                changed = true;
            }
        }
        res.iterations = it + 1;
        if (!changed) break;

        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(points.rows(), c);
        Eigen::VectorXd counts = Eigen::VectorXd::Zero(c);
        for (Eigen::Index i = 0; i < n; ++i) {
            sums.col(res.labels[i]) += points.col(i);
            counts(res.labels[i]) += 1.0;
        }
        for (int j = 0; j < c; ++j) {
            if (counts(j) > 0.0) {
                res.centers.col(j) = sums.col(j) / counts(j);
            } else {
                // Reseed an empty cluster at the point farthest from its center.
                Eigen::Index far = 0;
                double far_d = -1.0;
                for (Eigen::Index i = 0; i < n; ++i)
                    if (d2(i, res.labels[i]) > far_d) {
                        far_d = d2(i, res.labels[i]);
                        far = i;
                    }
                res.centers.col(j) = points.col(far);
            }
        }
    }

    const Eigen::MatrixXd d2 = kernels::point_center_sq_dists(points, res.centers);
    res.inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) res.inertia += d2(i, res.labels[i]);
    return res;
}

KmeansResult kmeans(const Dataset& data, int c, std::uint64_t seed, int max_iter) {
    return kmeans(data.features, c, seed, max_iter);
}

}  // namespace afcm
