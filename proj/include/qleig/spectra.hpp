#pragma once

#include <array>
#include <vector>

#include "qleig/numeric.hpp"
#include "qleig/quaternion.hpp"

namespace qleig {

// Norm bounds for left eigenvalues derived from the extreme singular values.
// When the matrix is rank deficient the lower bound is inactive and reported
// as zero.
struct AnnulusBound {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    bool full_rank = true;
};

// Right eigenvalue representatives (one per conjugate pair, imaginary part
// nonnegative) together with the extreme norms alpha and beta.
struct RightSpectrum {
    std::vector<Cplx> eigenvalues;
    double alpha = 0.0;
    double beta = 0.0;
};

// All 4m singular values of the real image of A, descending.
std::vector<double> real_singular_spectrum(const QuaternionMatrix& A);

// The m quaternionic singular values, descending. Each appears four times in
// the real spectrum and is reported once.
std::vector<double> singular_values(const QuaternionMatrix& A);

AnnulusBound annulus(const QuaternionMatrix& A);

RightSpectrum right_eigenvalues(const QuaternionMatrix& A);

// True iff every given left eigenvalue norm lies inside [alpha - tol, beta + tol]
// for the right spectrum of A, with tol = 1e-8 * max(1, beta).
bool domination_check(const QuaternionMatrix& A,
                      const std::vector<std::array<double, 4>>& certified_lambdas);

}  // namespace qleig
