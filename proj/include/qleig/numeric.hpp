#pragma once

#include <complex>
#include <vector>

#include "qleig/rmatrix.hpp"

namespace qleig {

// Dense double-precision matrix used by the numeric layer.
struct DMat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    DMat() = default;
    DMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

DMat dmat_from(const RealMatrix& m);
DMat dmat_transpose(const DMat& m);
std::vector<double> dmat_apply(const DMat& m, const std::vector<double>& x);
double vec_norm2(const std::vector<double>& x);

// Thin singular value decomposition, sigma descending. U is rows x k and V is
// cols x k with k = min(rows, cols); columns of U belonging to zero singular
// values are left as zero vectors.
struct SVD {
    std::vector<double> sigma;
    DMat U;
    DMat V;
};

// One-sided Jacobi orthogonalization. Throws ConvergenceFailure if the sweep
// cap is exceeded, which for the small matrices here indicates a logic error
// upstream rather than a hard numerical problem.
SVD jacobi_svd(const DMat& m);

// Minimal-norm least-squares solution of J x = b via the truncated SVD.
// Singular values at or below max(abs_threshold, rel_threshold * sigma_max)
// are treated as zero.
std::vector<double> svd_solve_minnorm(const DMat& J, const std::vector<double>& b,
                                      double rel_threshold, double abs_threshold = 0.0);

int numeric_rank(const std::vector<double>& sigma, double threshold);

using Cplx = std::complex<double>;

struct ZMat {
    int rows = 0;
    int cols = 0;
    std::vector<Cplx> a;

    ZMat() = default;
    ZMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Cplx(0.0, 0.0)) {}

    Cplx& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    Cplx at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// Eigenvalues of a general complex matrix: Householder reduction to
// Hessenberg form followed by shifted QR with deflation. Throws
// QRNoConvergence when the iteration budget runs out.
std::vector<Cplx> complex_eigenvalues(ZMat h);

}  // namespace qleig
