#include "qleig/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "qleig/errors.hpp"

namespace qleig {

DMat dmat_from(const RealMatrix& m) {
    DMat d(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            d.at(i, j) = to_double(m.at(i, j));
        }
    }
    return d;
}

DMat dmat_transpose(const DMat& m) {
    DMat t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            t.at(j, i) = m.at(i, j);
        }
    }
    return t;
}

std::vector<double> dmat_apply(const DMat& m, const std::vector<double>& x) {
    std::vector<double> y(static_cast<size_t>(m.rows), 0.0);
    for (int i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = s;
    }
    return y;
}

double vec_norm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

namespace {

constexpr int kJacobiSweepCap = 60;
constexpr double kJacobiRelTol = 1e-14;

// Core one-sided pass for a tall matrix (rows >= cols). Returns sigma, the
// column-normalized working matrix as U, and the accumulated rotations as V.
SVD jacobi_tall(const DMat& m) {
    const int r = m.rows;
    const int c = m.cols;
    DMat B = m;
    DMat V(c, c);
    for (int i = 0; i < c; ++i) V.at(i, i) = 1.0;

    for (int sweep = 0;; ++sweep) {
        if (sweep >= kJacobiSweepCap) {
            throw ConvergenceFailure("jacobi_svd: sweep cap exceeded");
        }
        bool rotated = false;
        for (int p = 0; p < c - 1; ++p) {
            for (int q = p + 1; q < c; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int i = 0; i < r; ++i) {
                    const double bp = B.at(i, p);
                    const double bq = B.at(i, q);
                    app += bp * bp;
                    aqq += bq * bq;
                    apq += bp * bq;
                }
                // sqrt separately so the product cannot underflow, and skip
                // outright in the denormal range where rotations stall
                if (std::abs(apq) <= kJacobiRelTol * std::sqrt(app) * std::sqrt(aqq) ||
                    std::abs(apq) < std::numeric_limits<double>::min()) {
                    continue;
                }
                const double zeta = (aqq - app) / (2.0 * apq);
                // asymptotic branch keeps zeta^2 from overflowing when the
                // two column norms differ by hundreds of orders of magnitude
                const double t = std::abs(zeta) > 1e8
                                     ? 1.0 / (2.0 * zeta)
                                     : (zeta >= 0.0 ? 1.0 : -1.0) /
                                           (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                if (t == 0.0 || !std::isfinite(t)) continue;  // identity rotation, no progress
                rotated = true;
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (int i = 0; i < r; ++i) {
                    const double bp = B.at(i, p);
                    const double bq = B.at(i, q);
                    B.at(i, p) = cs * bp - sn * bq;
                    B.at(i, q) = sn * bp + cs * bq;
                }
                for (int i = 0; i < c; ++i) {
                    const double vp = V.at(i, p);
                    const double vq = V.at(i, q);
                    V.at(i, p) = cs * vp - sn * vq;
                    V.at(i, q) = sn * vp + cs * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(static_cast<size_t>(c), 0.0);
    for (int j = 0; j < c; ++j) {
        double s = 0.0;
        for (int i = 0; i < r; ++i) s += B.at(i, j) * B.at(i, j);
        sigma[static_cast<size_t>(j)] = std::sqrt(s);
    }

    std::vector<int> order(static_cast<size_t>(c));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return sigma[static_cast<size_t>(x)] > sigma[static_cast<size_t>(y)]; });

    SVD out;
    out.sigma.resize(static_cast<size_t>(c));
    out.U = DMat(r, c);
    out.V = DMat(c, c);
    for (int j = 0; j < c; ++j) {
        const int src = order[static_cast<size_t>(j)];
        const double s = sigma[static_cast<size_t>(src)];
        out.sigma[static_cast<size_t>(j)] = s;
        if (s > 0.0) {
            for (int i = 0; i < r; ++i) out.U.at(i, j) = B.at(i, src) / s;
        }
        for (int i = 0; i < c; ++i) out.V.at(i, j) = V.at(i, src);
    }
    return out;
}

}  // namespace

SVD jacobi_svd(const DMat& m) {
    if (m.rows == 0 || m.cols == 0) {
        throw DimensionMismatch("jacobi_svd: empty matrix");
    }
    if (m.rows >= m.cols) return jacobi_tall(m);
    SVD t = jacobi_tall(dmat_transpose(m));
    SVD out;
    out.sigma = std::move(t.sigma);
    out.U = std::move(t.V);
    out.V = std::move(t.U);
    return out;
}

std::vector<double> svd_solve_minnorm(const DMat& J, const std::vector<double>& b,
                                      double rel_threshold, double abs_threshold) {
    if (static_cast<int>(b.size()) != J.rows) {
        throw DimensionMismatch("svd_solve_minnorm: rhs size mismatch");
    }
    SVD svd = jacobi_svd(J);
    const double smax = svd.sigma.empty() ? 0.0 : svd.sigma.front();
    const double cut = std::max(abs_threshold, rel_threshold * smax);
    std::vector<double> x(static_cast<size_t>(J.cols), 0.0);
    for (size_t k = 0; k < svd.sigma.size(); ++k) {
        const double s = svd.sigma[k];
        if (s <= cut || s == 0.0) continue;
        double proj = 0.0;
        for (int i = 0; i < J.rows; ++i) proj += svd.U.at(i, static_cast<int>(k)) * b[static_cast<size_t>(i)];
        const double coef = proj / s;
        for (int i = 0; i < J.cols; ++i) x[static_cast<size_t>(i)] += coef * svd.V.at(i, static_cast<int>(k));
    }
    return x;
}

int numeric_rank(const std::vector<double>& sigma, double threshold) {
    int r = 0;
    for (double s : sigma) {
        if (s > threshold) ++r;
    }
    return r;
}

namespace {

void hessenberg_reduce(ZMat& h) {
    const int n = h.rows;
    for (int k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm += std::norm(h.at(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm == 0.0) continue;
        Cplx x0 = h.at(k + 1, k);
        const double ax0 = std::abs(x0);
        const Cplx phase = ax0 > 0.0 ? x0 / ax0 : Cplx(1.0, 0.0);
        const Cplx alpha = -phase * colnorm;

        std::vector<Cplx> v(static_cast<size_t>(n - k - 1));
        v[0] = x0 - alpha;
        for (int i = k + 2; i < n; ++i) v[static_cast<size_t>(i - k - 1)] = h.at(i, k);
        double vn = 0.0;
        for (const Cplx& e : v) vn += std::norm(e);
        vn = std::sqrt(vn);
        if (vn == 0.0) continue;
        for (Cplx& e : v) e /= vn;

        // H <- (I - 2 v v*) H on rows k+1..n-1
        for (int j = k; j < n; ++j) {
            Cplx s(0.0, 0.0);
            for (int i = k + 1; i < n; ++i) s += std::conj(v[static_cast<size_t>(i - k - 1)]) * h.at(i, j);
            s *= 2.0;
            for (int i = k + 1; i < n; ++i) h.at(i, j) -= v[static_cast<size_t>(i - k - 1)] * s;
        }
        // H <- H (I - 2 v v*) on cols k+1..n-1
        for (int i = 0; i < n; ++i) {
            Cplx s(0.0, 0.0);
            for (int j = k + 1; j < n; ++j) s += h.at(i, j) * v[static_cast<size_t>(j - k - 1)];
            s *= 2.0;
            for (int j = k + 1; j < n; ++j) h.at(i, j) -= s * std::conj(v[static_cast<size_t>(j - k - 1)]);
        }
        for (int i = k + 2; i < n; ++i) h.at(i, k) = Cplx(0.0, 0.0);
        h.at(k + 1, k) = alpha;
    }
}

Cplx wilkinson_shift(const ZMat& h, int hi) {
    const Cplx a = h.at(hi - 1, hi - 1);
    const Cplx b = h.at(hi - 1, hi);
    const Cplx c = h.at(hi, hi - 1);
    const Cplx d = h.at(hi, hi);
    const Cplx tr2 = (a - d) * 0.5;
    const Cplx disc = std::sqrt(tr2 * tr2 + b * c);
    const Cplx m1 = d + tr2 + disc;
    const Cplx m2 = d + tr2 - disc;
    return std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
}

}  // namespace

std::vector<Cplx> complex_eigenvalues(ZMat h) {
    if (h.rows != h.cols) {
        throw DimensionMismatch("complex_eigenvalues: matrix must be square");
    }
    const int n = h.rows;
    std::vector<Cplx> eig(static_cast<size_t>(n));
    if (n == 0) return eig;
    hessenberg_reduce(h);

    const double eps = 1e-15;
    const int iter_cap = 30 * n;
    int total_iter = 0;
    int window_iter = 0;
    int hi = n - 1;
    while (hi >= 0) {
        if (hi == 0) {
            eig[0] = h.at(0, 0);
            break;
        }
        // zero out negligible subdiagonal entries
        for (int i = 1; i <= hi; ++i) {
            if (std::abs(h.at(i, i - 1)) <=
                eps * (std::abs(h.at(i - 1, i - 1)) + std::abs(h.at(i, i)))) {
                h.at(i, i - 1) = Cplx(0.0, 0.0);
            }
        }
        if (h.at(hi, hi - 1) == Cplx(0.0, 0.0)) {
            eig[static_cast<size_t>(hi)] = h.at(hi, hi);
            --hi;
            window_iter = 0;
            continue;
        }
        int lo = hi;
        while (lo > 0 && h.at(lo, lo - 1) != Cplx(0.0, 0.0)) --lo;

        if (++total_iter > iter_cap) {
            throw QRNoConvergence("complex_eigenvalues: iteration cap exceeded");
        }
        ++window_iter;
        Cplx mu;
        if (window_iter % 10 == 0) {
            // exceptional shift to break rare symmetric stalls
            double off = std::abs(h.at(hi, hi - 1));
            if (hi >= 2) off += std::abs(h.at(hi - 1, hi - 2));
            mu = h.at(hi, hi) + Cplx(0.75 * off, 0.0);
        } else {
            mu = wilkinson_shift(h, hi);
        }

        for (int i = lo; i <= hi; ++i) h.at(i, i) -= mu;
        // explicit QR factorization of the window by Givens rotations
        std::vector<std::array<Cplx, 2>> rots(static_cast<size_t>(hi - lo));
        for (int i = lo; i < hi; ++i) {
            const Cplx a = h.at(i, i);
            const Cplx b = h.at(i + 1, i);
            const double r = std::sqrt(std::norm(a) + std::norm(b));
            Cplx ca(1.0, 0.0), sb(0.0, 0.0);
            if (r > 0.0) {
                ca = std::conj(a) / r;
                sb = std::conj(b) / r;
            }
            rots[static_cast<size_t>(i - lo)] = {ca, sb};
            for (int j = i; j <= hi; ++j) {
                const Cplx hij = h.at(i, j);
                const Cplx hij1 = h.at(i + 1, j);
                h.at(i, j) = ca * hij + sb * hij1;
                h.at(i + 1, j) = -std::conj(sb) * hij + std::conj(ca) * hij1;
            }
        }
        // multiply R by the adjoints from the right
        for (int i = lo; i < hi; ++i) {
            const Cplx ca = rots[static_cast<size_t>(i - lo)][0];
            const Cplx sb = rots[static_cast<size_t>(i - lo)][1];
            const int top = lo;
            for (int r2 = top; r2 <= std::min(i + 1, hi); ++r2) {
                const Cplx hri = h.at(r2, i);
                const Cplx hri1 = h.at(r2, i + 1);
                h.at(r2, i) = hri * std::conj(ca) + hri1 * std::conj(sb);
                h.at(r2, i + 1) = -hri * sb + hri1 * ca;
            }
        }
        for (int i = lo; i <= hi; ++i) h.at(i, i) += mu;
    }
    return eig;
}

}  // namespace qleig
