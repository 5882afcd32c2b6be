#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "afcm/metrics.hpp"
#include "oracles.hpp"

namespace {

std::vector<int> random_labels(int n, int c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, c - 1);
    std::vector<int> out(n);
    for (int& v : out) v = pick(rng);
    return out;
}

std::vector<int> permute_ids(const std::vector<int>& labels,
                             const std::vector<int>& perm) {
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out[i] = perm[labels[i]];
    return out;
}

}  // namespace

TEST_CASE("perfect and permuted labelings score full accuracy") {
    const std::vector<int> truth{0, 0, 1, 1, 2, 2};
    CHECK(afcm::accuracy(truth, truth) == 1.0);
    CHECK(afcm::accuracy(permute_ids(truth, {2, 0, 1}), truth) == 1.0);
    CHECK(afcm::nmi(permute_ids(truth, {1, 2, 0}), truth) == doctest::Approx(1.0));
    CHECK(afcm::ari(permute_ids(truth, {2, 1, 0}), truth) == doctest::Approx(1.0));
}

TEST_CASE("the quarter-off example scores 0.75 and matches brute force") {
    const std::vector<int> truth{0, 0, 1, 1};
    const std::vector<int> pred{0, 1, 1, 1};
    CHECK(afcm::accuracy(pred, truth) == doctest::Approx(0.75));
    CHECK(afcm::accuracy(pred, truth) ==
          doctest::Approx(oracles::accuracy_bruteforce(pred, truth)));
}

TEST_CASE("accuracy equals exhaustive relabeling for c <= 6") {
    for (int rep = 0; rep < 40; ++rep) {
        const int c = 2 + rep % 5;
        const auto truth = random_labels(30, c, 2000 + rep);
        const auto pred = random_labels(30, c, 3000 + rep);
        CHECK(afcm::accuracy(pred, truth) ==
              doctest::Approx(oracles::accuracy_bruteforce(pred, truth)).epsilon(1e-12));
    }
    // Rectangular confusion: more clusters than classes and vice versa.
    const auto truth = random_labels(40, 3, 77);
    const auto pred = random_labels(40, 6, 78);
    CHECK(afcm::accuracy(pred, truth) ==
          doctest::Approx(oracles::accuracy_bruteforce(pred, truth)).epsilon(1e-12));
    CHECK(afcm::accuracy(truth, pred) ==
          doctest::Approx(oracles::accuracy_bruteforce(truth, pred)).epsilon(1e-12));
}

TEST_CASE("nmi handles the crossing and zero-entropy conventions") {
    CHECK(afcm::nmi({0, 1, 0, 1}, {0, 0, 1, 1}) == 0.0);  // independent crossing
    CHECK(afcm::nmi({0, 0, 0, 0}, {0, 0, 1, 1}) == 0.0);  // collapsed prediction
    CHECK(afcm::nmi({0, 0, 1, 1}, {1, 1, 1, 1}) == 0.0);  // collapsed truth
    CHECK(afcm::nmi({0, 0, 0}, {0, 0, 0}) == 1.0);        // both single-cluster
    CHECK(afcm::nmi({0, 0, 1, 1}, {0, 0, 1, 1}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ari matches the pair-counting oracle") {
    CHECK(afcm::ari({0, 1, 0, 1}, {0, 0, 1, 1}) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(afcm::ari({0, 0, 0}, {0, 0, 0}) == 1.0);
    for (int rep = 0; rep < 40; ++rep) {
        const auto truth = random_labels(25, 2 + rep % 4, 4000 + rep);
        const auto pred = random_labels(25, 2 + (rep + 1) % 4, 5000 + rep);
        CHECK(afcm::ari(pred, truth) ==
              doctest::Approx(oracles::ari_pairs(pred, truth)).epsilon(1e-10));
    }
}

TEST_CASE("metrics are invariant under relabeling either side") {
    std::mt19937_64 rng(81);
    for (int rep = 0; rep < 20; ++rep) {
        const int c = 4;
        const auto truth = random_labels(50, c, 6000 + rep);
        const auto pred = random_labels(50, c, 7000 + rep);
        std::vector<int> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto pred2 = permute_ids(pred, perm);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto truth2 = permute_ids(truth, perm);
        CHECK(afcm::accuracy(pred, truth) ==
              doctest::Approx(afcm::accuracy(pred2, truth2)).epsilon(1e-12));
        CHECK(afcm::nmi(pred, truth) ==
              doctest::Approx(afcm::nmi(pred2, truth2)).epsilon(1e-12));
        CHECK(afcm::ari(pred, truth) ==
              doctest::Approx(afcm::ari(pred2, truth2)).epsilon(1e-12));
    }
}

TEST_CASE("random labelings have near-zero expected ari") {
    const auto truth = random_labels(60, 3, 90);
    double mean = 0.0;
    for (int rep = 0; rep < 200; ++rep)
        mean += afcm::ari(random_labels(60, 3, 9100 + rep), truth) / 200.0;
    CHECK(std::abs(mean) <= 0.05);
}

TEST_CASE("mismatched and invalid label vectors are rejected") {
    CHECK_THROWS_AS(afcm::accuracy({0, 1}, {0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(afcm::nmi({0, -1}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(afcm::ari({}, {}), std::invalid_argument);
}

TEST_CASE("assignment solver handles known square instances") {
    // Costs with a unique optimum picked by hand.
    const std::vector<double> cost{4, 1, 3,
                                   2, 0, 5,
                                   3, 2, 2};
    const auto match = afcm::min_cost_assignment(cost, 3);
    CHECK(match == std::vector<int>{1, 0, 2});  // 1 + 2 + 2 = 5
}
