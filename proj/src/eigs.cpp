#include "afcm/eigs.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "afcm/errors.hpp"

namespace afcm {

EigenPairs smallest_eigenpairs(const Eigen::MatrixXd& sym, int m) {
    const auto n = static_cast<lapack_int>(sym.rows());
    if (sym.cols() != sym.rows()) throw std::invalid_argument("matrix is not square");
    if (m < 1 || m > n) throw std::invalid_argument("need 1 <= m <= n");

    Eigen::MatrixXd a = sym;  // dsyevr destroys its input
    EigenPairs out;
    out.values.resize(m);
    out.vectors.resize(n, m);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(m));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dsyevr(
        LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1, m, 0.0,
        &found, out.values.data(), out.vectors.data(), n, isuppz.data());
    if (info != 0 || found != m)
        throw EigenSolveError("symmetric eigensolver failed: info=" + std::to_string(info) +
                              ", found=" + std::to_string(found) + " of " + std::to_string(m) +
                              ", n=" + std::to_string(n) +
                              ", max|entry|=" + std::to_string(sym.cwiseAbs().maxCoeff()) +
                              ", finite=" + std::to_string(sym.allFinite()));

    // Deterministic sign: largest-magnitude entry positive, ties to the
    // lowest row index.
    for (int j = 0; j < m; ++j) {
        Eigen::Index arg = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double mag = std::abs(out.vectors(i, j));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (out.vectors(arg, j) < 0.0) out.vectors.col(j) = -out.vectors.col(j);
    }
    return out;
}

}  // namespace afcm
