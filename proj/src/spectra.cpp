#include "qleig/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qleig/errors.hpp"
#include "qleig/forms.hpp"

namespace qleig {

std::vector<double> real_singular_spectrum(const QuaternionMatrix& A) {
    if (A.rows != A.cols) {
        throw DimensionMismatch("real_singular_spectrum: matrix must be square");
    }
    const SVD svd = jacobi_svd(dmat_from(p_map(1, A)));
    return svd.sigma;
}

std::vector<double> singular_values(const QuaternionMatrix& A) {
    const std::vector<double> raw = real_singular_spectrum(A);
    // each quaternionic value fills one block of four in the sorted spectrum
    std::vector<double> vals(raw.size() / 4, 0.0);
    for (size_t g = 0; g < vals.size(); ++g) {
        double s = 0.0;
        for (size_t i = 0; i < 4; ++i) s += raw[4 * g + i];
        vals[g] = s / 4.0;
    }
    return vals;
}

AnnulusBound annulus(const QuaternionMatrix& A) {
    const std::vector<double> raw = real_singular_spectrum(A);
    AnnulusBound b;
    b.sigma_max = raw.empty() ? 0.0 : raw.front();
    // rank decided exactly on the rational input, so a tiny-but-nonzero
    // smallest singular value is never mistaken for a rank drop
    b.full_rank = p_rank(p_map(1, A)) == 4 * A.rows;
    b.sigma_min = b.full_rank ? raw.back() : 0.0;
    return b;
}

RightSpectrum right_eigenvalues(const QuaternionMatrix& A) {
    if (A.rows != A.cols) {
        throw DimensionMismatch("right_eigenvalues: matrix must be square");
    }
    const int m = A.rows;
    // A = A1 + A2 j with complex entries over the unit h
    ZMat adj(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const Quaternion& q = A.at(i, j);
            const Cplx z1(to_double(q.c[0]), to_double(q.c[1]));
            const Cplx z2(to_double(q.c[2]), to_double(q.c[3]));
            adj.at(i, j) = z1;
            adj.at(i, j + m) = z2;
            adj.at(i + m, j) = -std::conj(z2);
            adj.at(i + m, j + m) = std::conj(z1);
        }
    }
    std::vector<Cplx> eig = complex_eigenvalues(adj);
    std::sort(eig.begin(), eig.end(), [](const Cplx& a, const Cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    // the adjoint spectrum is closed under conjugation; pair each value with
    // its best conjugate partner and keep one representative per pair
    RightSpectrum out;
    std::vector<bool> used(eig.size(), false);
    for (size_t i = 0; i < eig.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        size_t best = i;
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t j = i + 1; j < eig.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(std::conj(eig[i]) - eig[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        Cplx rep = eig[i];
        if (best != i) {
            used[best] = true;
            rep = (eig[i] + std::conj(eig[best])) * 0.5;
        }
        if (rep.imag() < 0.0) rep = std::conj(rep);
        out.eigenvalues.push_back(rep);
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](const Cplx& a, const Cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    out.alpha = std::numeric_limits<double>::infinity();
    out.beta = 0.0;
    for (const Cplx& z : out.eigenvalues) {
        const double n = std::abs(z);
        out.alpha = std::min(out.alpha, n);
        out.beta = std::max(out.beta, n);
    }
    if (out.eigenvalues.empty()) out.alpha = 0.0;
    return out;
}

bool domination_check(const QuaternionMatrix& A,
                      const std::vector<std::array<double, 4>>& certified_lambdas) {
    const RightSpectrum rs = right_eigenvalues(A);
    const double tol = 1e-8 * std::max(1.0, rs.beta);
    for (const auto& l : certified_lambdas) {
        const double n = std::sqrt(l[0] * l[0] + l[1] * l[1] + l[2] * l[2] + l[3] * l[3]);
        if (n < rs.alpha - tol || n > rs.beta + tol) return false;
    }
    return true;
}

}  // namespace qleig
