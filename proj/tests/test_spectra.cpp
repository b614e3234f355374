#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "qleig/forms.hpp"
#include "qleig/numeric.hpp"
#include "qleig/spectra.hpp"

using namespace qleig;

namespace {

QuaternionMatrix k_offdiag_2x2() {
    QuaternionMatrix a(2, 2);
    a.at(0, 0) = Q_ONE;
    a.at(0, 1) = Q_K;
    a.at(1, 0) = Q_K;
    a.at(1, 1) = Q_ONE;
    return a;
}

QuaternionMatrix j_skew_2x2() {
    QuaternionMatrix a(2, 2);
    a.at(0, 0) = Q_ONE;
    a.at(0, 1) = q_neg(Q_J);
    a.at(1, 0) = Q_J;
    a.at(1, 1) = Q_ONE;
    return a;
}

QuaternionMatrix k_plus_swap_3x3() {
    QuaternionMatrix a(3, 3);
    a.at(0, 0) = Q_K;
    a.at(0, 2) = Q_ONE;
    a.at(1, 1) = Q_K;
    a.at(2, 0) = Q_ONE;
    a.at(2, 2) = Q_K;
    return a;
}

QuaternionMatrix mixed_units_3x3() {
    QuaternionMatrix a(3, 3);
    a.at(0, 0) = Q_H;
    a.at(0, 2) = Q_H;
    a.at(1, 1) = Q_J;
    a.at(2, 0) = Q_H;
    a.at(2, 2) = Q_K;
    return a;
}

void check_svd_reconstructs(const DMat& m) {
    const SVD s = jacobi_svd(m);
    const int k = std::min(m.rows, m.cols);
    REQUIRE(static_cast<int>(s.sigma.size()) == k);
    for (int i = 0; i + 1 < k; ++i) CHECK(s.sigma[i] >= s.sigma[i + 1]);
    for (double sv : s.sigma) CHECK(sv >= 0.0);
    // A == U * diag(sigma) * V^T entrywise
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            double acc = 0;
            for (int t = 0; t < k; ++t) acc += s.U.at(i, t) * s.sigma[t] * s.V.at(j, t);
            CHECK(acc == doctest::Approx(m.at(i, j)).epsilon(1e-12));
        }
    }
    // columns of U with nonzero sigma are orthonormal
    for (int t = 0; t < k; ++t) {
        if (s.sigma[t] == 0.0) continue;
        for (int u = 0; u < k; ++u) {
            if (s.sigma[u] == 0.0) continue;
            double dot = 0;
            for (int i = 0; i < m.rows; ++i) dot += s.U.at(i, t) * s.U.at(i, u);
            CHECK(dot == doctest::Approx(t == u ? 1.0 : 0.0).epsilon(1e-10));
        }
    }
}

} // namespace

TEST_CASE("singular values of a fixed triangle") {
    DMat m(2, 2);
    m.at(0, 0) = 3;
    m.at(1, 0) = 4;
    m.at(1, 1) = 5;
    const SVD s = jacobi_svd(m);
    CHECK(s.sigma[0] == doctest::Approx(std::sqrt(45.0)).epsilon(1e-14));
    CHECK(s.sigma[1] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("svd reconstructs square, tall, and wide matrices") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (auto [r, c] : {std::pair{3, 3}, std::pair{5, 2}, std::pair{2, 5}}) {
        for (int s = 0; s < 10; ++s) {
            DMat m(r, c);
            for (auto& x : m.a) x = u(rng);
            check_svd_reconstructs(m);
        }
    }
}

TEST_CASE("rank deficient svd keeps zero columns out of the basis") {
    DMat m(3, 3);
    m.at(0, 0) = 1;
    m.at(1, 1) = 1; // third row and column zero
    const SVD s = jacobi_svd(m);
    CHECK(s.sigma[2] == doctest::Approx(0.0));
    CHECK(numeric_rank(s.sigma, 1e-12) == 2);
    check_svd_reconstructs(m);
}

TEST_CASE("minimum norm least squares matches hand solutions") {
    // consistent square system
    DMat a(2, 2);
    a.at(0, 0) = 2;
    a.at(1, 1) = 4;
    const std::vector<double> x = svd_solve_minnorm(a, {6, 8}, 1e-14);
    CHECK(x[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-12));

    // underdetermined row: minimum norm solution of x0 + x1 = 2 is (1,1)
    DMat b(1, 2);
    b.at(0, 0) = 1;
    b.at(0, 1) = 1;
    const std::vector<double> y = svd_solve_minnorm(b, {2}, 1e-14);
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(y[1] == doctest::Approx(1.0).epsilon(1e-12));

    // truncation drops the tiny direction entirely
    DMat c(2, 2);
    c.at(0, 0) = 1;
    c.at(1, 1) = 1e-16;
    const std::vector<double> z = svd_solve_minnorm(c, {1, 1}, 1e-8);
    CHECK(z[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(z[1] == doctest::Approx(0.0));
}

TEST_CASE("complex eigenvalues of small fixed matrices") {
    ZMat rot(2, 2);
    rot.at(0, 1) = Cplx(1, 0);
    rot.at(1, 0) = Cplx(-1, 0);
    std::vector<Cplx> ev = complex_eigenvalues(rot);
    std::sort(ev.begin(), ev.end(), [](Cplx a, Cplx b) { return a.imag() < b.imag(); });
    CHECK(std::abs(ev[0] - Cplx(0, -1)) < 1e-12);
    CHECK(std::abs(ev[1] - Cplx(0, 1)) < 1e-12);

    // companion matrix of z^3 - 1: the three cube roots of unity
    ZMat comp(3, 3);
    comp.at(0, 2) = Cplx(1, 0);
    comp.at(1, 0) = Cplx(1, 0);
    comp.at(2, 1) = Cplx(1, 0);
    ev = complex_eigenvalues(comp);
    std::sort(ev.begin(), ev.end(),
              [](Cplx a, Cplx b) { return std::arg(a) < std::arg(b); });
    const double s3 = std::sqrt(3.0) / 2.0;
    CHECK(std::abs(ev[0] - Cplx(-0.5, -s3)) < 1e-10);
    CHECK(std::abs(ev[1] - Cplx(1, 0)) < 1e-10);
    CHECK(std::abs(ev[2] - Cplx(-0.5, s3)) < 1e-10);
}

TEST_CASE("eigenvalue sums track the trace on random complex matrices") {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int s = 0; s < 10; ++s) {
        const int n = 4 + static_cast<int>(s % 3);
        ZMat m(n, n);
        for (auto& z : m.a) z = Cplx(u(rng), u(rng));
        Cplx trace(0, 0);
        for (int i = 0; i < n; ++i) trace += m.at(i, i);
        Cplx sum(0, 0);
        for (Cplx ev : complex_eigenvalues(m)) sum += ev;
        CHECK(std::abs(sum - trace) < 1e-10);
    }
}

TEST_CASE("block image singular values come in groups of four") {
    const std::vector<double> raw = real_singular_spectrum(k_offdiag_2x2());
    REQUIRE(raw.size() == 8);
    for (double s : raw) CHECK(s == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    const std::vector<double> folded = singular_values(k_offdiag_2x2());
    REQUIRE(folded.size() == 2);
    CHECK(folded[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(folded[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const std::vector<double> tri = singular_values(k_plus_swap_3x3());
    REQUIRE(tri.size() == 3);
    CHECK(tri[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(tri[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(tri[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("norm annulus bounds for the four fixtures") {
    const AnnulusBound a1 = annulus(k_offdiag_2x2());
    CHECK(a1.full_rank);
    CHECK(a1.sigma_min == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(a1.sigma_max == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const AnnulusBound a2 = annulus(j_skew_2x2());
    CHECK_FALSE(a2.full_rank); // exact rank drop detected symbolically
    CHECK(a2.sigma_min == 0.0);
    CHECK(a2.sigma_max == doctest::Approx(2.0).epsilon(1e-12));

    const AnnulusBound a3 = annulus(k_plus_swap_3x3());
    CHECK(a3.full_rank);
    CHECK(a3.sigma_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a3.sigma_max == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const AnnulusBound a4 = annulus(mixed_units_3x3());
    CHECK(a4.full_rank);
    CHECK(a4.sigma_min == doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))).epsilon(1e-12));
    CHECK(a4.sigma_max == doctest::Approx(std::sqrt(2.0 + std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("right spectrum representatives and norm extremes") {
    const RightSpectrum r1 = right_eigenvalues(k_offdiag_2x2());
    REQUIRE(r1.eigenvalues.size() == 2);
    for (Cplx z : r1.eigenvalues) CHECK(std::abs(z - Cplx(1, 1)) < 1e-10);
    CHECK(r1.alpha == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(r1.beta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

    QuaternionMatrix d(2, 2);
    d.at(0, 0) = Q_H;
    d.at(1, 1) = Q_J;
    const RightSpectrum rd = right_eigenvalues(d);
    REQUIRE(rd.eigenvalues.size() == 2);
    for (Cplx z : rd.eigenvalues) CHECK(std::abs(z - Cplx(0, 1)) < 1e-10);
    CHECK(rd.alpha == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rd.beta == doctest::Approx(1.0).epsilon(1e-10));

    const RightSpectrum r3 = right_eigenvalues(k_plus_swap_3x3());
    REQUIRE(r3.eigenvalues.size() == 3);
    CHECK(std::abs(r3.eigenvalues[0] - Cplx(-1, 1)) < 1e-10);
    CHECK(std::abs(r3.eigenvalues[1] - Cplx(0, 1)) < 1e-10);
    CHECK(std::abs(r3.eigenvalues[2] - Cplx(1, 1)) < 1e-10);

    const RightSpectrum r4 = right_eigenvalues(mixed_units_3x3());
    REQUIRE(r4.eigenvalues.size() == 3);
    CHECK(std::abs(r4.eigenvalues[0] - Cplx(0, std::sqrt(2.0 - std::sqrt(2.0)))) < 1e-10);
    CHECK(std::abs(r4.eigenvalues[1] - Cplx(0, 1)) < 1e-10);
    CHECK(std::abs(r4.eigenvalues[2] - Cplx(0, std::sqrt(2.0 + std::sqrt(2.0)))) < 1e-10);
    CHECK(r4.alpha == doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))).epsilon(1e-10));
    CHECK(r4.beta == doctest::Approx(std::sqrt(2.0 + std::sqrt(2.0))).epsilon(1e-10));
}

TEST_CASE("certified norms must dominate neither bound") {
    const QuaternionMatrix A = k_offdiag_2x2();
    CHECK(domination_check(A, {{1.0, 0.0, 0.0, 1.0}, {1.0, 0.0, 0.0, -1.0}}));
    CHECK_FALSE(domination_check(A, {{10.0, 0.0, 0.0, 0.0}}));
    CHECK_FALSE(domination_check(A, {{0.1, 0.0, 0.0, 0.0}}));
    CHECK(domination_check(A, {}));
}

TEST_CASE("right spectrum of a real diagonal matrix folds to the entries") {
    QuaternionMatrix d(2, 2);
    d.at(0, 0) = Quaternion(Rat(3));
    d.at(1, 1) = Quaternion(Rat(-2));
    const RightSpectrum r = right_eigenvalues(d);
    REQUIRE(r.eigenvalues.size() == 2);
    CHECK(std::abs(r.eigenvalues[0] - Cplx(-2, 0)) < 1e-10);
    CHECK(std::abs(r.eigenvalues[1] - Cplx(3, 0)) < 1e-10);
    CHECK(r.alpha == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r.beta == doctest::Approx(3.0).epsilon(1e-10));
}
