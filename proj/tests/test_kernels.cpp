#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "afcm/kernels.hpp"
#include "oracles.hpp"

namespace k = afcm::kernels;

namespace {

bool bit_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           (a.array() == b.array()).all();
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference bitwise") {
    // Odd sizes on purpose: uneven chunks across threads.
    for (auto [n, d, c] : {std::tuple{1, 1, 1}, {7, 3, 2}, {64, 5, 4}, {131, 9, 7}}) {
        const Eigen::MatrixXd pts = oracles::random_matrix(d, n, 100 + n);
        const Eigen::MatrixXd centers = oracles::random_matrix(d, c, 200 + n);
        const Eigen::MatrixXd u = oracles::random_simplex_rows(n, c, 300 + n);
        const Eigen::VectorXd scale = u.colwise().sum().cwiseInverse();
        const Eigen::MatrixXd d2 = k::point_center_sq_dists(pts, centers);
        const Eigen::MatrixXd sym =
            0.5 * (oracles::random_matrix(n, n, 400 + n) +
                   oracles::random_matrix(n, n, 400 + n).transpose());
        const Eigen::MatrixXd coords = oracles::random_matrix(c, n, 500 + n);

        CHECK(bit_equal(k::pairwise_sq_dists(pts), k::serial::pairwise_sq_dists(pts)));
        CHECK(bit_equal(k::point_center_sq_dists(pts, centers),
                        k::serial::point_center_sq_dists(pts, centers)));
        CHECK(bit_equal(k::softmax_neg_scaled(d2, 3.7),
                        k::serial::softmax_neg_scaled(d2, 3.7)));
        CHECK(bit_equal(k::scaled_gram(u, scale), k::serial::scaled_gram(u, scale)));
        CHECK(k::weighted_sum(u, d2) == k::serial::weighted_sum(u, d2));
        CHECK(k::entropy_sum(u) == k::serial::entropy_sum(u));
        CHECK(k::trace_quad(coords, sym) == k::serial::trace_quad(coords, sym));
    }
}

TEST_CASE("pairwise distances are symmetric with zero diagonal") {
    const Eigen::MatrixXd pts = oracles::random_matrix(4, 23, 7);
    const Eigen::MatrixXd d2 = k::pairwise_sq_dists(pts);
    CHECK(bit_equal(d2, d2.transpose()));
    CHECK(d2.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(d2.minCoeff() >= 0.0);
}

TEST_CASE("softmax rows sum to one and keep a positive winner at huge scale") {
    const Eigen::MatrixXd d2 = k::point_center_sq_dists(
        oracles::random_matrix(3, 40, 8), oracles::random_matrix(3, 5, 9));
    for (double gamma : {1e-8, 1.0, 1e6}) {
        const Eigen::MatrixXd u = k::softmax_neg_scaled(d2, gamma);
        for (Eigen::Index i = 0; i < u.rows(); ++i)
            CHECK(u.row(i).sum() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(u.maxCoeff() <= 1.0);
        // The shifted winner is exp(0), so every row keeps a nonzero max.
        CHECK(u.rowwise().maxCoeff().minCoeff() > 0.0);
    }
}

TEST_CASE("scaled gram matches a straightforward triple product") {
    const Eigen::MatrixXd u = oracles::random_simplex_rows(17, 4, 11);
    const Eigen::VectorXd scale = u.colwise().sum().cwiseInverse();
    const Eigen::MatrixXd direct = u * scale.asDiagonal() * u.transpose();
    CHECK((k::scaled_gram(u, scale) - direct).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("weighted sum and entropy agree with plain accumulation") {
    const Eigen::MatrixXd u = oracles::random_simplex_rows(29, 3, 12);
    const Eigen::MatrixXd vals = oracles::random_matrix(29, 3, 13).cwiseAbs();
    double ws = 0.0, ent = 0.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i)
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
            ws += u(i, j) * vals(i, j);
            ent += u(i, j) * std::log(u(i, j));
        }
    CHECK(k::weighted_sum(u, vals) == doctest::Approx(ws).epsilon(1e-13));
    CHECK(k::entropy_sum(u) == doctest::Approx(ent).epsilon(1e-13));
}

TEST_CASE("trace quad equals the explicit matrix product") {
    const Eigen::MatrixXd coords = oracles::random_matrix(3, 21, 14);
    Eigen::MatrixXd sym = oracles::random_matrix(21, 21, 15);
    sym = 0.5 * (sym + sym.transpose()).eval();
    const double direct = (coords * sym * coords.transpose()).trace();
    CHECK(k::trace_quad(coords, sym) == doctest::Approx(direct).epsilon(1e-12));
}
