#pragma once

#include <Eigen/Dense>

namespace afcm {

struct EigenPairs {
    Eigen::MatrixXd vectors;  // n x m, orthonormal columns
    Eigen::VectorXd values;   // ascending
};

/// Eigenpairs for the m smallest eigenvalues of a dense symmetric matrix.
/// Each eigenvector is flipped so its largest-magnitude entry is positive.
/// Throws EigenSolveError with basic diagnostics on solver failure.
EigenPairs smallest_eigenpairs(const Eigen::MatrixXd& sym, int m);

}  // namespace afcm
