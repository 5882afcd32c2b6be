#include "afcm/ggd.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace afcm {

namespace {

/// Mahalanobis form and log|Sigma| through one LLT factorization.
struct MahalanobisEval {
    double quad;
    double logdet;
};

MahalanobisEval mahalanobis(const Eigen::VectorXd& x, const GgdComponent& comp) {
    const Eigen::LLT<Eigen::MatrixXd> llt(comp.scatter);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("scatter matrix is not positive definite");
    const Eigen::MatrixXd l = llt.matrixL();
    const Eigen::VectorXd z = l.triangularView<Eigen::Lower>().solve(x - comp.mean);
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) logdet += 2.0 * std::log(l(i, i));
    return {z.squaredNorm(), logdet};
}

Eigen::VectorXd softmax(Eigen::VectorXd log_terms) {
    const double shift = log_terms.maxCoeff();
    Eigen::VectorXd e = (log_terms.array() - shift).exp();
    return e / e.sum();
}

void check_mixture(const GgdMixture& mixture) {
    if (mixture.components.empty()) throw std::invalid_argument("empty mixture");
    if (mixture.mixing.size() != mixture.size())
        throw std::invalid_argument("mixing weight count mismatch");
    if (std::abs(mixture.mixing.sum() - 1.0) > 1e-9 || mixture.mixing.minCoeff() < 0.0)
        throw std::invalid_argument("mixing weights must lie on the simplex");
    if (!(mixture.shape > 0.0) || !(mixture.scale > 0.0))
        throw std::invalid_argument("shape and scale must be positive");
}

}  // namespace

double ggd_logpdf(const Eigen::VectorXd& x, const GgdComponent& component, double shape,
                  double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("shape and scale must be positive");
    const double d = static_cast<double>(x.size());
    const MahalanobisEval m = mahalanobis(x, component);
    const double norm_const = std::log(shape) + std::lgamma(0.5 * d) +
                              (0.5 * d / shape) * std::log(scale) -
                              0.5 * d * std::log(std::numbers::pi) -
                              std::lgamma(0.5 * d / shape);
    return norm_const - 0.5 * m.logdet - scale * std::pow(m.quad, shape);
}

Eigen::VectorXd mixture_posterior(const Eigen::VectorXd& x, const GgdMixture& mixture) {
    check_mixture(mixture);
    Eigen::VectorXd log_terms(mixture.size());
    for (int j = 0; j < mixture.size(); ++j)
        log_terms(j) = std::log(mixture.mixing(j)) +
                       ggd_logpdf(x, mixture.components[j], mixture.shape, mixture.scale);
    return softmax(std::move(log_terms));
}

Eigen::VectorXd closed_form_membership(const Eigen::VectorXd& x, const GgdMixture& mixture) {
    check_mixture(mixture);
    Eigen::VectorXd log_terms(mixture.size());
    for (int j = 0; j < mixture.size(); ++j) {
        const MahalanobisEval m = mahalanobis(x, mixture.components[j]);
        log_terms(j) = std::log(mixture.mixing(j)) - 0.5 * m.logdet -
                       mixture.scale * std::pow(m.quad, mixture.shape);
    }
    return softmax(std::move(log_terms));
}

std::pair<GgdMixture, Eigen::VectorXd> random_mixture_instance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim_pick(1, 5), comp_pick(2, 4), shape_pick(0, 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    constexpr double shapes[] = {0.5, 1.0, 2.0};

    const int d = dim_pick(rng);
    const int c = comp_pick(rng);
    GgdMixture mix;
    mix.shape = shapes[shape_pick(rng)];
    mix.scale = 0.2 + 2.8 * unit(rng);
    mix.mixing.resize(c);
    for (int j = 0; j < c; ++j) mix.mixing(j) = -std::log(1.0 - unit(rng));
    mix.mixing /= mix.mixing.sum();
    for (int j = 0; j < c; ++j) {
        GgdComponent comp;
        comp.mean = Eigen::VectorXd::NullaryExpr(d, [&] { return 2.0 * gauss(rng); });
        Eigen::MatrixXd a =
            Eigen::MatrixXd::NullaryExpr(d, d, [&] { return gauss(rng); });
        comp.scatter = a * a.transpose() + 0.3 * Eigen::MatrixXd::Identity(d, d);
        mix.components.push_back(std::move(comp));
    }
    Eigen::VectorXd x = Eigen::VectorXd::NullaryExpr(d, [&] { return 3.0 * gauss(rng); });
    return {std::move(mix), std::move(x)};
}

double equivalence_max_discrepancy(int trials, std::uint64_t seed) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto [mix, x] = random_mixture_instance(seed + static_cast<std::uint64_t>(t));
        const Eigen::VectorXd a = closed_form_membership(x, mix);
        const Eigen::VectorXd b = mixture_posterior(x, mix);
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace afcm
