#pragma once

#include <Eigen/Dense>
#include <vector>

namespace afcm {

/// Soft cluster assignment: an n x c matrix whose rows lie on the
/// probability simplex.
struct FuzzyPartition {
    Eigen::MatrixXd u;  // n x c

    Eigen::Index samples() const { return u.rows(); }
    Eigen::Index clusters() const { return u.cols(); }

    /// Row sums within `tol` of 1 and all entries in [0, 1].
    bool on_simplex(double tol = 1e-12) const;
};

/// Per-row argmax; ties resolve to the lowest column index.
std::vector<int> hard_labels(const FuzzyPartition& partition);

}  // namespace afcm
