#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "afcm/embedding.hpp"
#include "afcm/errors.hpp"
#include "afcm/kernels.hpp"
#include "afcm/metrics.hpp"
#include "oracles.hpp"

using afcm::AfcmConfig;
using afcm::Dataset;
using afcm::Embedding;
using afcm::FuzzyPartition;
using afcm::NormalizedLaplacian;

namespace {

NormalizedLaplacian two_node_edge() {
    Eigen::MatrixXd pts(1, 2);
    pts << 0.0, 1.0;
    Dataset d;
    d.features = pts;
    return afcm::normalized_laplacian(afcm::knn_affinity(d, 1, 2.0));
}

NormalizedLaplacian random_laplacian(int n, int k, std::uint64_t seed) {
    Dataset d;
    d.features = oracles::random_matrix(3, n, seed);
    return afcm::normalized_laplacian(afcm::knn_affinity(d, k, 2.0));
}

/// Subspace distance through projectors; invariant to rotation and sign.
double projector_gap(const Eigen::MatrixXd& a_rows, const Eigen::MatrixXd& b_rows) {
    const Eigen::MatrixXd pa = a_rows.transpose() * a_rows;
    const Eigen::MatrixXd pb = b_rows.transpose() * b_rows;
    return (pa - pb).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("zero-gamma edge case returns the flat eigenvector") {
    const auto lap = two_node_edge();
    const FuzzyPartition uniform{Eigen::MatrixXd::Constant(2, 2, 0.5)};
    const Embedding emb = afcm::update_embedding(uniform, 0.0, 3.0, lap, 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(emb.coords(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(emb.coords(0, 1) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
}

TEST_CASE("one-hot memberships reduce the eigenstep to the plain graph") {
    const auto lap = random_laplacian(8, 3, 50);
    const FuzzyPartition onehot{Eigen::MatrixXd::Identity(8, 8)};
    const Embedding joint = afcm::update_embedding(onehot, 5.0, 2.0, lap, 3);
    const Embedding spectral = afcm::spectral_embed(lap, 3);
    CHECK(projector_gap(joint.coords, spectral.coords) < 1e-9);
}

TEST_CASE("achieved trace equals the sum of the smallest eigenvalues") {
    const int n = 30, dim = 4;
    const auto lap = random_laplacian(n, 4, 51);
    const FuzzyPartition u{oracles::random_simplex_rows(n, 3, 52)};
    const double gamma = 2.5, lambda = 7.0;
    const Embedding emb = afcm::update_embedding(u, gamma, lambda, lap, dim);

    const Eigen::MatrixXd m =
        gamma * afcm::anchor_laplacian(u).matrix + lambda * lap.matrix;
    const double achieved = afcm::kernels::trace_quad(emb.coords, m);
    const auto spectrum = oracles::full_spectrum(m);
    const double expected = spectrum.eigenvalues().head(dim).sum();
    CHECK(std::abs(achieved - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));

    // Orthonormal rows.
    const Eigen::MatrixXd gram = emb.coords * emb.coords.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(dim, dim)).norm() <= 1e-8);
}

TEST_CASE("eigenstep beats random row-orthonormal competitors") {
    const int n = 24, dim = 3;
    const auto lap = random_laplacian(n, 3, 53);
    const FuzzyPartition u{oracles::random_simplex_rows(n, 4, 54)};
    const double gamma = 1.7, lambda = 3.0;
    const Embedding emb = afcm::update_embedding(u, gamma, lambda, lap, dim);
    const Eigen::MatrixXd m =
        gamma * afcm::anchor_laplacian(u).matrix + lambda * lap.matrix;
    const double achieved = afcm::kernels::trace_quad(emb.coords, m);
    std::mt19937_64 rng(55);
    for (int rep = 0; rep < 100; ++rep) {
        const Eigen::MatrixXd q = oracles::random_orthonormal_rows(dim, n, rng);
        CHECK(achieved <= afcm::kernels::trace_quad(q, m) + 1e-10);
    }
}

TEST_CASE("spectral embedding of a disconnected graph has zero trace") {
    Eigen::MatrixXd pts(1, 6);
    pts << 0.0, 0.1, 100.0, 100.1, 200.0, 200.1;
    Dataset d;
    d.features = pts;
    const auto lap = afcm::normalized_laplacian(afcm::knn_affinity(d, 1, 2.0));
    const Embedding emb = afcm::spectral_embed(lap, 3);
    CHECK(std::abs(afcm::kernels::trace_quad(emb.coords, lap.matrix)) < 1e-10);

    const Embedding one = afcm::spectral_embed(two_node_edge(), 1);
    CHECK(one.coords(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(one.coords(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    const auto rnd = random_laplacian(20, 4, 56);
    const Embedding emb20 = afcm::spectral_embed(rnd, 5);
    const double trace = afcm::kernels::trace_quad(emb20.coords, rnd.matrix);
    const double expected = oracles::full_spectrum(rnd.matrix).eigenvalues().head(5).sum();
    CHECK(std::abs(trace - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
}

TEST_CASE("full objective drops the graph term at lambda 0 and is re-derivable") {
    const int n = 12, c = 3;
    const auto lap = random_laplacian(n, 3, 57);
    std::mt19937_64 rng(58);
    Embedding emb;
    emb.coords = oracles::random_orthonormal_rows(c, n, rng);
    emb.dim = c;
    const FuzzyPartition u{oracles::random_simplex_rows(n, c, 59)};
    const afcm::Centers vc = afcm::update_centers(emb.coords, u);
    const double gamma = 3.0;

    const double at_zero_graph = afcm::objective_full(emb, u, vc, gamma, 0.0, lap);
    const double degenerate =
        afcm::objective_degenerate(emb.coords, u, vc, afcm::ScaleGamma{gamma}, c);
    CHECK(at_zero_graph == doctest::Approx(degenerate).epsilon(1e-12));

    // Independent evaluation of every term.
    const double lambda = 11.0;
    double direct = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < c; ++j) {
            direct += u.u(i, j) * gamma * (emb.coords.col(i) - vc.v.col(j)).squaredNorm();
            direct += u.u(i, j) * std::log(u.u(i, j));
        }
    direct += lambda * (emb.coords * lap.matrix * emb.coords.transpose()).trace();
    direct -= 0.5 * n * c * std::log(gamma);
    const double evaluated = afcm::objective_full(emb, u, vc, gamma, lambda, lap);
    CHECK(std::abs(evaluated - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
}

TEST_CASE("single-point reduction of the full objective") {
    // n = 1, uniform row over two clusters, centers at the point itself:
    // the scatter term vanishes and lambda * L_hat(0,0) + ln(1/2) remains.
    Embedding emb;
    emb.coords = Eigen::MatrixXd::Ones(1, 1);
    emb.dim = 1;
    NormalizedLaplacian lap;
    lap.matrix = Eigen::MatrixXd::Constant(1, 1, 0.37);
    lap.degrees = Eigen::VectorXd::Ones(1);
    const FuzzyPartition u{Eigen::MatrixXd::Constant(1, 2, 0.5)};
    afcm::Centers vc;
    vc.v = Eigen::MatrixXd::Ones(1, 2);
    const double lambda = 4.0;
    const double value = afcm::objective_full(emb, u, vc, 1.0, lambda, lap);
    CHECK(value == doctest::Approx(lambda * 0.37 + std::log(0.5)).epsilon(1e-14));
}

TEST_CASE("joint fit separates blobs and descends monotonically") {
    const Dataset blobs = oracles::make_blobs(20, oracles::two_blob_centers(), 0.4, 60);
    AfcmConfig cfg;
    cfg.clusters = 2;
    cfg.lambda = 10.0;
    cfg.k = 5;
    cfg.seed = 0;
    const auto report = afcm::fit_afcm(blobs, cfg, &blobs.labels);
    CHECK(afcm::accuracy(afcm::hard_labels(report.fit.partition), blobs.labels) == 1.0);
    for (std::size_t i = 1; i < report.fit.objective_trace.size(); ++i)
        CHECK(report.fit.objective_trace[i] <= report.fit.objective_trace[i - 1] + 1e-9);
    CHECK(report.fit.acc_trace.back() == 1.0);
    CHECK(report.fit.gamma_trace.size() == report.fit.objective_trace.size());

    const Eigen::MatrixXd gram = report.embedding.coords *
                                 report.embedding.coords.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-8);

    const auto rerun = afcm::fit_afcm(blobs, cfg, &blobs.labels);
    CHECK((rerun.fit.partition.u.array() == report.fit.partition.u.array()).all());
    CHECK(rerun.fit.objective_trace == report.fit.objective_trace);
}

TEST_CASE("monotone descent holds across seeds on a random dataset") {
    Dataset data;
    data.features = oracles::random_matrix(4, 40, 61);
    AfcmConfig cfg;
    cfg.clusters = 3;
    cfg.lambda = 100.0;
    cfg.k = 6;
    cfg.max_iter = 30;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        cfg.seed = seed;
        const auto report = afcm::fit_afcm(data, cfg);
        for (std::size_t i = 1; i < report.fit.objective_trace.size(); ++i)
            CHECK(report.fit.objective_trace[i] <=
                  report.fit.objective_trace[i - 1] + 1e-9);
    }
}

TEST_CASE("huge lambda reproduces the two-stage pipeline labels") {
    const Dataset blobs = oracles::make_blobs(15, oracles::two_blob_centers(), 0.5, 62);
    AfcmConfig cfg;
    cfg.clusters = 2;
    cfg.lambda = 1e6;
    cfg.k = 4;
    cfg.seed = 3;
    const auto joint = afcm::fit_afcm(blobs, cfg, nullptr);
    const auto labels_joint = afcm::hard_labels(joint.fit.partition);

    const auto lap =
        afcm::normalized_laplacian(afcm::knn_affinity(blobs, cfg.k, cfg.sigma));
    const Embedding staged = afcm::spectral_embed(lap, 2);
    Dataset projected;
    projected.features = staged.coords;
    const auto two_stage = afcm::fit_degenerate_afcm(projected, 2, {.seed = 3});
    const auto labels_staged = afcm::hard_labels(two_stage.partition);
    CHECK(afcm::accuracy(labels_joint, labels_staged) == 1.0);
}

TEST_CASE("config validation rejects bad dimensions") {
    const Dataset blobs = oracles::make_blobs(5, oracles::two_blob_centers(), 0.5, 63);
    AfcmConfig cfg;
    cfg.clusters = 2;
    cfg.lambda = 0.0;
    cfg.k = 3;
    CHECK_THROWS_AS(afcm::fit_afcm(blobs, cfg), std::invalid_argument);
    cfg.lambda = 1.0;
    cfg.embed_dim = 64;
    CHECK_THROWS_AS(afcm::fit_afcm(blobs, cfg), std::invalid_argument);
}
