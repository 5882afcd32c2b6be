#include "afcm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace afcm {

namespace {

struct Contingency {
    std::vector<double> counts;  // truth-major, classes x clusters
    std::vector<double> truth_sizes;
    std::vector<double> pred_sizes;
    int classes = 0;
    int clusters = 0;
    double n = 0.0;
};

Contingency contingency(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("label vectors have different lengths");
    if (predicted.empty()) throw std::invalid_argument("label vectors are empty");
    int classes = 0, clusters = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 0 || predicted[i] < 0)
            throw std::invalid_argument("label ids must be nonnegative");
        classes = std::max(classes, truth[i] + 1);
        clusters = std::max(clusters, predicted[i] + 1);
    }
    Contingency c;
    c.classes = classes;
    c.clusters = clusters;
    c.n = static_cast<double>(truth.size());
    c.counts.assign(static_cast<std::size_t>(classes) * clusters, 0.0);
    c.truth_sizes.assign(classes, 0.0);
    c.pred_sizes.assign(clusters, 0.0);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        c.counts[static_cast<std::size_t>(truth[i]) * clusters + predicted[i]] += 1.0;
        c.truth_sizes[truth[i]] += 1.0;
        c.pred_sizes[predicted[i]] += 1.0;
    }
    return c;
}

double entropy(const std::vector<double>& sizes, double n) {
    double h = 0.0;
    for (double s : sizes)
        if (s > 0.0) h -= (s / n) * std::log(s / n);
    return h;
}

inline double choose2(double m) { return 0.5 * m * (m - 1.0); }

}  // namespace

std::vector<int> min_cost_assignment(const std::vector<double>& cost, int n) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] -
                                   u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> match(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) match[p[j] - 1] = j - 1;
    return match;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
    const Contingency c = contingency(predicted, truth);
    const int s = std::max(c.classes, c.clusters);
    // Maximize matched counts == minimize negated counts on the padded square.
    std::vector<double> cost(static_cast<std::size_t>(s) * s, 0.0);
    for (int t = 0; t < c.classes; ++t)
        for (int p = 0; p < c.clusters; ++p)
            cost[static_cast<std::size_t>(t) * s + p] =
                -c.counts[static_cast<std::size_t>(t) * c.clusters + p];
    const auto match = min_cost_assignment(cost, s);
    double matched = 0.0;
    for (int t = 0; t < c.classes; ++t)
        if (match[t] < c.clusters)
            matched += c.counts[static_cast<std::size_t>(t) * c.clusters + match[t]];
    return matched / c.n;
}

double nmi(const std::vector<int>& predicted, const std::vector<int>& truth) {
    const Contingency c = contingency(predicted, truth);
    const double ht = entropy(c.truth_sizes, c.n);
    const double hp = entropy(c.pred_sizes, c.n);
    if (ht == 0.0 && hp == 0.0) return 1.0;  // both single-cluster
    if (ht == 0.0 || hp == 0.0) return 0.0;
    double mi = 0.0;
    for (int t = 0; t < c.classes; ++t)
        for (int p = 0; p < c.clusters; ++p) {
            const double nij = c.counts[static_cast<std::size_t>(t) * c.clusters + p];
            if (nij > 0.0)
                mi += (nij / c.n) *
                      std::log(nij * c.n / (c.truth_sizes[t] * c.pred_sizes[p]));
        }
    return mi / (0.5 * (ht + hp));
}

double ari(const std::vector<int>& predicted, const std::vector<int>& truth) {
    const Contingency c = contingency(predicted, truth);
    if (c.n < 2.0) return 1.0;  // a single point has no pairs to disagree on
    double index = 0.0;
    for (double nij : c.counts) index += choose2(nij);
    double sum_t = 0.0, sum_p = 0.0;
    for (double s : c.truth_sizes) sum_t += choose2(s);
    for (double s : c.pred_sizes) sum_p += choose2(s);
    const double expected = sum_t * sum_p / choose2(c.n);
    const double max_index = 0.5 * (sum_t + sum_p);
    if (max_index == expected) return 1.0;  // both partitions trivial
    return (index - expected) / (max_index - expected);
}

}  // namespace afcm
