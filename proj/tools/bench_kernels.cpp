// Times the OpenMP kernels against their serial reference twins and prints
// a speedup table. Results must match bitwise; mismatches abort.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <random>

#include "afcm/kernels.hpp"

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    return Eigen::MatrixXd::NullaryExpr(rows, cols, [&] { return gauss(rng); });
}

Eigen::MatrixXd random_simplex_rows(Eigen::Index n, Eigen::Index c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(1e-6, 1.0);
    Eigen::MatrixXd u(n, c);
    for (Eigen::Index i = 0; i < n; ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < c; ++j) sum += u(i, j) = -std::log(unit(rng));
        u.row(i) /= sum;
    }
    return u;
}

template <typename F>
double time_ms(F&& f, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = omp_get_wtime();
        f();
        const double t1 = omp_get_wtime();
        best = std::min(best, (t1 - t0) * 1e3);
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-24s %10.2f %10.2f %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "bitwise-equal" : "MISMATCH");
    if (!identical) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 1200;
    const int d = argc > 2 ? std::atoi(argv[2]) : 32;
    const int c = 8;
    const int reps = 3;
    std::printf("n=%d d=%d c=%d threads=%d\n", n, d, c, omp_get_max_threads());
    std::printf("%-24s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

    namespace k = afcm::kernels;
    const Eigen::MatrixXd points = random_matrix(d, n, 1);
    const Eigen::MatrixXd centers = random_matrix(d, c, 2);
    const Eigen::MatrixXd u = random_simplex_rows(n, c, 3);
    const Eigen::VectorXd scale = u.colwise().sum().cwiseInverse();

    Eigen::MatrixXd a, b;
    double x = 0.0, y = 0.0;

    const double s1 = time_ms([&] { a = k::serial::pairwise_sq_dists(points); }, reps);
    const double p1 = time_ms([&] { b = k::pairwise_sq_dists(points); }, reps);
    report("pairwise_sq_dists", s1, p1, (a.array() == b.array()).all());
    const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());

    const double s2 =
        time_ms([&] { a = k::serial::point_center_sq_dists(points, centers); }, reps);
    const double p2 = time_ms([&] { b = k::point_center_sq_dists(points, centers); }, reps);
    report("point_center_sq_dists", s2, p2, (a.array() == b.array()).all());
    const Eigen::MatrixXd d2 = b;

    const double s3 = time_ms([&] { a = k::serial::softmax_neg_scaled(d2, 2.5); }, reps);
    const double p3 = time_ms([&] { b = k::softmax_neg_scaled(d2, 2.5); }, reps);
    report("softmax_neg_scaled", s3, p3, (a.array() == b.array()).all());

    const double s4 = time_ms([&] { a = k::serial::scaled_gram(u, scale); }, reps);
    const double p4 = time_ms([&] { b = k::scaled_gram(u, scale); }, reps);
    report("scaled_gram", s4, p4, (a.array() == b.array()).all());

    const double s5 = time_ms([&] { x = k::serial::weighted_sum(u, d2); }, reps);
    const double p5 = time_ms([&] { y = k::weighted_sum(u, d2); }, reps);
    report("weighted_sum", s5, p5, x == y);

    const double s6 = time_ms([&] { x = k::serial::entropy_sum(u); }, reps);
    const double p6 = time_ms([&] { y = k::entropy_sum(u); }, reps);
    report("entropy_sum", s6, p6, x == y);

    const Eigen::MatrixXd coords = random_matrix(c, n, 4);
    const double s7 = time_ms([&] { x = k::serial::trace_quad(coords, sym); }, reps);
    const double p7 = time_ms([&] { y = k::trace_quad(coords, sym); }, reps);
    report("trace_quad", s7, p7, x == y);

    return 0;
}
