#include "afcm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "afcm/errors.hpp"
#include "afcm/kernels.hpp"

namespace afcm {

namespace {
constexpr double kDegreeFloor = 1e-12;
constexpr double kMassFloor = 1e-12;
}  // namespace

bool FuzzyPartition::on_simplex(double tol) const {
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
            const double v = u(i, j);
            if (!(v >= 0.0 && v <= 1.0)) return false;
            sum += v;
        }
        if (std::abs(sum - 1.0) > tol) return false;
    }
    return true;
}

std::vector<int> hard_labels(const FuzzyPartition& partition) {
    std::vector<int> labels(partition.samples());
    for (Eigen::Index i = 0; i < partition.samples(); ++i) {
        int best = 0;
        for (Eigen::Index j = 1; j < partition.clusters(); ++j)
            if (partition.u(i, j) > partition.u(i, best)) best = static_cast<int>(j);
        labels[i] = best;
    }
    return labels;
}

AffinityGraph knn_affinity(const Dataset& data, int k, double sigma, Symmetrize mode) {
    const Eigen::Index n = data.samples();
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("k must be in [1, n-1], got k=" + std::to_string(k) +
                                    " with n=" + std::to_string(n));
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");

    const Eigen::MatrixXd d2 = kernels::pairwise_sq_dists(data.features);
    if (!d2.allFinite()) throw std::invalid_argument("non-finite pairwise distances");

    const double inv = 1.0 / (2.0 * sigma * sigma);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        std::vector<Eigen::Index> order(n - 1);
        Eigen::Index pos = 0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) order[pos++] = j;
        std::partial_sort(order.begin(), order.begin() + k, order.end(),
                          [&](Eigen::Index a, Eigen::Index b) {
                              if (d2(i, a) != d2(i, b)) return d2(i, a) < d2(i, b);
                              return a < b;
                          });
        for (int t = 0; t < k; ++t) {
            const Eigen::Index j = order[t];
            w(i, j) = std::exp(-d2(i, j) * inv);
        }
    }

    AffinityGraph graph;
    graph.k = k;
    graph.sigma = sigma;
    graph.weights.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        graph.weights(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = mode == Symmetrize::Max ? std::max(w(i, j), w(j, i))
                                                     : 0.5 * (w(i, j) + w(j, i));
            graph.weights(i, j) = v;
            graph.weights(j, i) = v;
        }
    }
    return graph;
}

NormalizedLaplacian normalized_laplacian(const AffinityGraph& graph) {
    const Eigen::Index n = graph.weights.rows();
    NormalizedLaplacian out;
    out.degrees = graph.weights.rowwise().sum().cwiseMax(kDegreeFloor);
    const Eigen::VectorXd inv_sqrt = out.degrees.cwiseSqrt().cwiseInverse();

    Eigen::MatrixXd m(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double l = (i == j ? out.degrees(i) : 0.0) - graph.weights(i, j);
            m(i, j) = inv_sqrt(i) * l * inv_sqrt(j);
        }
    out.matrix = 0.5 * (m + m.transpose());
    return out;
}

AnchorLaplacian anchor_laplacian(const FuzzyPartition& membership) {
    const Eigen::Index n = membership.samples();
    const Eigen::Index c = membership.clusters();

    AnchorLaplacian out;
    out.column_masses = membership.u.colwise().sum();
    for (Eigen::Index k = 0; k < c; ++k)
        if (out.column_masses(k) < kMassFloor)
            throw DegenerateClusterError(static_cast<int>(k), out.column_masses(k));

    const Eigen::VectorXd inv_mass = out.column_masses.cwiseInverse();
    out.matrix = kernels::scaled_gram(membership.u, inv_mass);
    out.matrix = -out.matrix;
    out.matrix.diagonal().array() += 1.0;
    return out;
}

}  // namespace afcm
