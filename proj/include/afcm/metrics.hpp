#pragma once

#include <vector>

namespace afcm {

/// Best matched fraction over cluster-to-class assignments, computed by an
/// optimal assignment on the (zero-padded square) confusion matrix.
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

/// Mutual information normalized by the arithmetic mean of the two label
/// entropies (natural logs). Conventions for zero-entropy partitions: 1 when
/// both are single-cluster, otherwise 0.
double nmi(const std::vector<int>& predicted, const std::vector<int>& truth);

/// Adjusted Rand index via pair counting. Returns 1 when the expected-index
/// correction leaves a zero denominator (both partitions trivially agree).
double ari(const std::vector<int>& predicted, const std::vector<int>& truth);

/// Minimum-cost perfect matching on a square cost matrix (row-major), by the
/// Hungarian algorithm with potentials; returns the column matched to each row.
std::vector<int> min_cost_assignment(const std::vector<double>& cost, int n);

}  // namespace afcm
