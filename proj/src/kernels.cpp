#include "afcm/kernels.hpp"

#include <cmath>

namespace afcm::kernels {

namespace {

inline double sq_dist_cols(const Eigen::MatrixXd& a, Eigen::Index i,
                           const Eigen::MatrixXd& b, Eigen::Index j) {
    double s = 0.0;
    for (Eigen::Index t = 0; t < a.rows(); ++t) {
        const double diff = a(t, i) - b(t, j);
        s += diff * diff;
    }
    return s;
}

}  // namespace

Eigen::MatrixXd pairwise_sq_dists(const Eigen::MatrixXd& points) {
    const Eigen::Index n = points.cols();
    Eigen::MatrixXd d2(n, n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            d2(i, j) = sq_dist_cols(points, i, points, j);
        }
    }
    return d2;
}

Eigen::MatrixXd point_center_sq_dists(const Eigen::MatrixXd& points,
                                      const Eigen::MatrixXd& centers) {
    const Eigen::Index n = points.cols();
    const Eigen::Index c = centers.cols();
    Eigen::MatrixXd d2(n, c);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < c; ++j) {
            d2(i, j) = sq_dist_cols(points, i, centers, j);
        }
    }
    return d2;
}

Eigen::MatrixXd softmax_neg_scaled(const Eigen::MatrixXd& sq_dists, double gamma) {
    const Eigen::Index n = sq_dists.rows();
    const Eigen::Index c = sq_dists.cols();
    Eigen::MatrixXd u(n, c);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        double dmin = sq_dists(i, 0);
        for (Eigen::Index j = 1; j < c; ++j) dmin = std::min(dmin, sq_dists(i, j));
        double sum = 0.0;
        for (Eigen::Index j = 0; j < c; ++j) {
            const double e = std::exp(-gamma * (sq_dists(i, j) - dmin));
            u(i, j) = e;
            sum += e;
        }
        for (Eigen::Index j = 0; j < c; ++j) u(i, j) /= sum;
    }
    return u;
}

Eigen::MatrixXd scaled_gram(const Eigen::MatrixXd& u, const Eigen::VectorXd& scale) {
    const Eigen::Index n = u.rows();
    const Eigen::Index c = u.cols();
    Eigen::MatrixXd g(n, n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double s = 0.0;
            for (Eigen::Index k = 0; k < c; ++k) s += u(i, k) * scale(k) * u(j, k);
            g(i, j) = s;
        }
    }
    return g;
}

double weighted_sum(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& values) {
    const Eigen::Index n = weights.rows();
    const Eigen::Index c = weights.cols();
    Eigen::VectorXd partial(n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < c; ++j) s += weights(i, j) * values(i, j);
        partial(i) = s;
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) total += partial(i);
    return total;
}

double entropy_sum(const Eigen::MatrixXd& u) {
    const Eigen::Index n = u.rows();
    const Eigen::Index c = u.cols();
    Eigen::VectorXd partial(n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < c; ++j) {
            const double v = u(i, j);
            if (v > 0.0) s += v * std::log(v);
        }
        partial(i) = s;
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) total += partial(i);
    return total;
}

double trace_quad(const Eigen::MatrixXd& coords, const Eigen::MatrixXd& sym) {
    const Eigen::Index rows = coords.rows();
    const Eigen::Index n = coords.cols();
    double total = 0.0;
    Eigen::VectorXd partial(n);
    for (Eigen::Index r = 0; r < rows; ++r) {
#pragma omp parallel for schedule(static)
        for (Eigen::Index i = 0; i < n; ++i) {
            double y = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) y += sym(i, j) * coords(r, j);
            partial(i) = coords(r, i) * y;
        }
        for (Eigen::Index i = 0; i < n; ++i) total += partial(i);
    }
    return total;
}

namespace serial {

Eigen::MatrixXd pairwise_sq_dists(const Eigen::MatrixXd& points) {
    const Eigen::Index n = points.cols();
    Eigen::MatrixXd d2(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            d2(i, j) = sq_dist_cols(points, i, points, j);
    return d2;
}

Eigen::MatrixXd point_center_sq_dists(const Eigen::MatrixXd& points,
                                      const Eigen::MatrixXd& centers) {
    const Eigen::Index n = points.cols();
    const Eigen::Index c = centers.cols();
    Eigen::MatrixXd d2(n, c);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < c; ++j)
            d2(i, j) = sq_dist_cols(points, i, centers, j);
    return d2;
}

Eigen::MatrixXd softmax_neg_scaled(const Eigen::MatrixXd& sq_dists, double gamma) {
    const Eigen::Index n = sq_dists.rows();
    const Eigen::Index c = sq_dists.cols();
    Eigen::MatrixXd u(n, c);
    for (Eigen::Index i = 0; i < n; ++i) {
        double dmin = sq_dists(i, 0);
        for (Eigen::Index j = 1; j < c; ++j) dmin = std::min(dmin, sq_dists(i, j));
        double sum = 0.0;
        for (Eigen::Index j = 0; j < c; ++j) {
            const double e = std::exp(-gamma * (sq_dists(i, j) - dmin));
            u(i, j) = e;
            sum += e;
        }
        for (Eigen::Index j = 0; j < c; ++j) u(i, j) /= sum;
    }
    return u;
}

Eigen::MatrixXd scaled_gram(const Eigen::MatrixXd& u, const Eigen::VectorXd& scale) {
    const Eigen::Index n = u.rows();
    const Eigen::Index c = u.cols();
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double s = 0.0;
            for (Eigen::Index k = 0; k < c; ++k) s += u(i, k) * scale(k) * u(j, k);
            g(i, j) = s;
        }
    }
    return g;
}

double weighted_sum(const Eigen::MatrixXd& weights, const Eigen::MatrixXd& values) {
    const Eigen::Index n = weights.rows();
    const Eigen::Index c = weights.cols();
    Eigen::VectorXd partial(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < c; ++j) s += weights(i, j) * values(i, j);
        partial(i) = s;
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) total += partial(i);
    return total;
}

double entropy_sum(const Eigen::MatrixXd& u) {
    const Eigen::Index n = u.rows();
    const Eigen::Index c = u.cols();
    Eigen::VectorXd partial(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < c; ++j) {
            const double v = u(i, j);
            if (v > 0.0) s += v * std::log(v);
        }
        partial(i) = s;
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) total += partial(i);
    return total;
}

double trace_quad(const Eigen::MatrixXd& coords, const Eigen::MatrixXd& sym) {
    const Eigen::Index rows = coords.rows();
    const Eigen::Index n = coords.cols();
    double total = 0.0;
    Eigen::VectorXd partial(n);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index i = 0; i < n; ++i) {
            double y = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) y += sym(i, j) * coords(r, j);
            partial(i) = coords(r, i) * y;
        }
        for (Eigen::Index i = 0; i < n; ++i) total += partial(i);
    }
    return total;
}

}  // namespace serial

}  // namespace afcm::kernels
