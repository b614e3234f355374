#include "qleig/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "qleig/errors.hpp"
#include "qleig/forms.hpp"
#include "qleig/numeric.hpp"

namespace qleig {

namespace {

constexpr int kMaxCompiledDegree = 31;

// Polynomial flattened to double coefficients with byte exponents, evaluated
// against precomputed power tables.
struct CompiledPoly {
    struct Term {
        double coef;
        std::array<std::uint8_t, 4> e;
    };
    std::vector<Term> terms;

    double eval(const std::array<std::array<double, kMaxCompiledDegree + 1>, 4>& pw) const {
        double s = 0.0;
        for (const Term& t : terms) {
            s += t.coef * pw[0][t.e[0]] * pw[1][t.e[1]] * pw[2][t.e[2]] * pw[3][t.e[3]];
        }
        return s;
    }
};

CompiledPoly compile_poly(const MultiPoly4& p) {
    CompiledPoly c;
    c.terms.reserve(p.terms.size());
    for (const auto& [key, coef] : p.terms) {
        const auto e = MultiPoly4::unpack(key);
        for (int v = 0; v < 4; ++v) {
            if (e[v] > kMaxCompiledDegree) {
                throw IndexOutOfRange("compile_poly: exponent too large");
            }
        }
        c.terms.push_back({to_double(coef),
                           {static_cast<std::uint8_t>(e[0]), static_cast<std::uint8_t>(e[1]),
                            static_cast<std::uint8_t>(e[2]), static_cast<std::uint8_t>(e[3])}});
    }
    return c;
}

struct CompiledSystem {
    int k = 0;  // number of equations (4, or 16 in the degenerate fallback)
    std::vector<CompiledPoly> F;
    std::vector<CompiledPoly> Fabs;  // same terms with absolute coefficients
    std::vector<std::array<CompiledPoly, 4>> dF;
    int max_deg = 0;

    void fill_powers(const std::array<double, 4>& x,
                     std::array<std::array<double, kMaxCompiledDegree + 1>, 4>& pw) const {
        for (int v = 0; v < 4; ++v) {
            pw[v][0] = 1.0;
            for (int d = 1; d <= max_deg; ++d) pw[v][d] = pw[v][d - 1] * x[v];
        }
    }

    std::vector<double> eval_F(const std::array<double, 4>& x) const {
        std::array<std::array<double, kMaxCompiledDegree + 1>, 4> pw;
        fill_powers(x, pw);
        std::vector<double> out(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) out[static_cast<size_t>(i)] = F[static_cast<size_t>(i)].eval(pw);
        return out;
    }

    // Size of each polynomial with every term taken positively, evaluated at
    // |x|. Double evaluation of F stops being meaningful below roughly machine
    // epsilon times this, so convergence tests measure residuals against it.
    std::vector<double> eval_scale(const std::array<double, 4>& x) const {
        std::array<double, 4> ax;
        for (int v = 0; v < 4; ++v) ax[static_cast<size_t>(v)] = std::abs(x[static_cast<size_t>(v)]);
        std::array<std::array<double, kMaxCompiledDegree + 1>, 4> pw;
        fill_powers(ax, pw);
        std::vector<double> out(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) {
            out[static_cast<size_t>(i)] = Fabs[static_cast<size_t>(i)].eval(pw);
        }
        return out;
    }

    DMat eval_J(const std::array<double, 4>& x) const {
        std::array<std::array<double, kMaxCompiledDegree + 1>, 4> pw;
        fill_powers(x, pw);
        DMat J(k, 4);
        for (int i = 0; i < k; ++i) {
            for (int v = 0; v < 4; ++v) {
                J.at(i, v) = dF[static_cast<size_t>(i)][static_cast<size_t>(v)].eval(pw);
            }
        }
        return J;
    }
};

CompiledSystem compile_system(const CharSystem& cs) {
    CompiledSystem sys;
    sys.k = static_cast<int>(cs.F.size());
    for (const MultiPoly4& f : cs.F) {
        sys.max_deg = std::max(sys.max_deg, std::max(f.degree(), 0));
        sys.F.push_back(compile_poly(f));
        CompiledPoly fabs = sys.F.back();
        for (auto& t : fabs.terms) t.coef = std::abs(t.coef);
        sys.Fabs.push_back(std::move(fabs));
        std::array<CompiledPoly, 4> row;
        for (int v = 0; v < 4; ++v) row[static_cast<size_t>(v)] = compile_poly(poly_partial(f, v));
        sys.dF.push_back(std::move(row));
    }
    return sys;
}

double norm_inf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double sum_sq(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

// The four coordinate matrices of the first form, as doubles.
const std::array<std::array<std::array<double, 4>, 4>, 4>& q1_basis() {
    static const auto basis = [] {
        std::array<std::array<std::array<double, 4>, 4>, 4> b{};
        const RepresentationForm& f1 = form(1);
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                b[0][r][c] = r == c ? 1.0 : 0.0;
                b[1][r][c] = f1.H[r][c];
                b[2][r][c] = f1.J[r][c];
                b[3][r][c] = f1.K[r][c];
            }
        }
        return b;
    }();
    return basis;
}

// Numeric pencil at a concrete lambda: P1(A) minus the block diagonal image
// of lambda.
DMat pencil_at(const DMat& baseP, int m, const std::array<double, 4>& lambda) {
    DMat P = baseP;
    const auto& basis = q1_basis();
    for (int b = 0; b < m; ++b) {
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                double s = 0.0;
                for (int v = 0; v < 4; ++v) s += lambda[static_cast<size_t>(v)] * basis[v][r][c];
                P.at(4 * b + r, 4 * b + c) -= s;
            }
        }
    }
    return P;
}

std::vector<std::array<double, 4>> fold_null_vector(const std::vector<double>& y, int m) {
    std::vector<std::array<double, 4>> v(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        for (int c = 0; c < 4; ++c) v[static_cast<size_t>(i)][static_cast<size_t>(c)] = y[static_cast<size_t>(4 * i + c)];
    }
    return v;
}

struct SolveContext {
    int m = 0;
    const QuaternionMatrix* A = nullptr;
    std::vector<QuatD> Ad;  // row-major numeric copy of A
    DMat baseP;
    CompiledSystem sys;
    bool have_sys = false;
    double scale = 1.0;
    AnnulusBound ann;
};

SolveContext make_context(const QuaternionMatrix& A, bool with_system,
                          const CharSystem* prebuilt = nullptr) {
    SolveContext ctx;
    ctx.m = A.rows;
    ctx.A = &A;
    ctx.Ad.reserve(static_cast<size_t>(A.rows) * A.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) ctx.Ad.push_back(qd_from(A.at(i, j)));
    }
    ctx.baseP = dmat_from(p_map(1, A));
    ctx.ann = annulus(A);
    ctx.scale = std::max(1.0, ctx.ann.sigma_max);
    if (with_system && A.rows > 1) {
        ctx.sys = compile_system(prebuilt ? *prebuilt : build_char_system(A));
        ctx.have_sys = true;
    }
    return ctx;
}

// relative residual of A v = lambda v in double quaternion arithmetic
double left_vector_residual(const SolveContext& ctx, const std::array<double, 4>& lambda,
                            const std::vector<std::array<double, 4>>& v) {
    const int m = ctx.m;
    QuatD lam{{lambda[0], lambda[1], lambda[2], lambda[3]}};
    double num = 0.0, den = 0.0;
    for (int i = 0; i < m; ++i) {
        QuatD vi{{v[static_cast<size_t>(i)][0], v[static_cast<size_t>(i)][1], v[static_cast<size_t>(i)][2],
                  v[static_cast<size_t>(i)][3]}};
        den += qd_norm2(vi);
        QuatD acc{{0, 0, 0, 0}};
        for (int j = 0; j < m; ++j) {
            QuatD vj{{v[static_cast<size_t>(j)][0], v[static_cast<size_t>(j)][1], v[static_cast<size_t>(j)][2],
                      v[static_cast<size_t>(j)][3]}};
            QuatD prod = qd_mul(ctx.Ad[static_cast<size_t>(i) * m + j], vj);
            for (int c = 0; c < 4; ++c) acc.c[c] += prod.c[c];
        }
        QuatD r = qd_sub(acc, qd_mul(lam, vi));
        num += qd_norm2(r);
    }
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

EigenCertificate certify_point(const SolveContext& ctx, const std::array<double, 4>& lambda,
                               double tol) {
    EigenCertificate cert;
    cert.lambda = lambda;
    const DMat P = pencil_at(ctx.baseP, ctx.m, lambda);
    const SVD svd = jacobi_svd(P);
    cert.pencil_sigma_min = svd.sigma.back();
    std::vector<double> y(static_cast<size_t>(4 * ctx.m));
    const int last = 4 * ctx.m - 1;
    for (int i = 0; i < 4 * ctx.m; ++i) y[static_cast<size_t>(i)] = svd.V.at(i, last);
    cert.eigenvector = fold_null_vector(y, ctx.m);
    cert.vector_residual = left_vector_residual(ctx, lambda, cert.eigenvector);
    const double bound = tol * ctx.scale;
    cert.accepted = cert.pencil_sigma_min < bound && cert.vector_residual < bound;
    if (ctx.have_sys) {
        cert.newton_residual = norm_inf(ctx.sys.eval_F(lambda));
    }
    return cert;
}

int jacobian_rank_at(const CompiledSystem& sys, const std::array<double, 4>& x) {
    const SVD svd = jacobi_svd(sys.eval_J(x));
    const double thr = 1e-6 * std::max(svd.sigma.empty() ? 0.0 : svd.sigma.front(), 1.0);
    return numeric_rank(svd.sigma, thr);
}

// Residuals count as zero when each one is below tol times the evaluation
// noise floor of its own equation at x. A plain |F| <= tol test would never
// pass on systems whose exact integer coefficients are large (random
// rational inputs routinely reach 1e6), because the double sum at a true
// root already carries rounding error far above any fixed absolute bar.
bool residuals_converged(const CompiledSystem& sys, const std::array<double, 4>& x,
                         const std::vector<double>& F, double tol) {
    const std::vector<double> scale = sys.eval_scale(x);
    for (size_t i = 0; i < F.size(); ++i) {
        if (!(std::abs(F[i]) <= tol * std::max(1.0, scale[i]))) return false;
    }
    return true;
}

// Damped Newton with Armijo backtracking on |F|^2. Returns true when every
// residual drops to tol_newton relative to its evaluation scale.
bool newton_run(const CompiledSystem& sys, std::array<double, 4>& x, const SolveConfig& cfg) {
    std::vector<double> F = sys.eval_F(x);
    for (int it = 0; it < cfg.max_iter; ++it) {
        const double fn = norm_inf(F);
        if (!std::isfinite(fn)) return false;
        if (residuals_converged(sys, x, F, cfg.tol_newton)) return true;
        const DMat J = sys.eval_J(x);
        std::vector<double> rhs(F.size());
        for (size_t i = 0; i < F.size(); ++i) rhs[i] = -F[i];
        const std::vector<double> delta = svd_solve_minnorm(J, rhs, 1e-14);
        double dn = vec_norm2(delta);
        double xn = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        if (dn <= 1e-17 * (1.0 + xn)) return false;  // stalled away from a root
        const double phi0 = sum_sq(F);
        double t = 1.0;
        bool stepped = false;
        while (t >= 1e-12) {
            std::array<double, 4> xt = x;
            for (int v = 0; v < 4; ++v) xt[static_cast<size_t>(v)] += t * delta[static_cast<size_t>(v)];
            std::vector<double> Ft = sys.eval_F(xt);
            const double phit = sum_sq(Ft);
            if (std::isfinite(phit) && phit <= phi0 * (1.0 - 1e-4 * t)) {
                x = xt;
                F = std::move(Ft);
                stepped = true;
                break;
            }
            t *= 0.5;
        }
        if (!stepped) return false;
    }
    return residuals_converged(sys, x, F, cfg.tol_newton);
}

// Gauss-Newton polish of the full eigenpair (lambda, v) against
// P(lambda) v = 0 with v normalized. Quadratic near regular roots and a
// strict improvement even where the minor system is degenerate.
void refine_eigenpair(const SolveContext& ctx, std::array<double, 4>& lambda) {
    const int m = ctx.m;
    const int n = 4 * m;
    DMat P = pencil_at(ctx.baseP, m, lambda);
    SVD svd = jacobi_svd(P);
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = svd.V.at(i, n - 1);

    std::array<double, 4> best_lambda = lambda;
    double best_g = std::numeric_limits<double>::infinity();
    const auto& basis = q1_basis();

    for (int it = 0; it < 60; ++it) {
        std::vector<double> Pv = dmat_apply(P, v);
        double vv = 0.0;
        for (double e : v) vv += e * e;
        std::vector<double> G(static_cast<size_t>(n + 1));
        for (int i = 0; i < n; ++i) G[static_cast<size_t>(i)] = Pv[static_cast<size_t>(i)];
        G[static_cast<size_t>(n)] = 0.5 * (vv - 1.0);
        const double gn = norm_inf(G);
        if (gn < best_g) {
            best_g = gn;
            best_lambda = lambda;
        }
        if (gn <= 1e-16 * ctx.scale) break;

        DMat J(n + 1, n + 4);
        for (int b = 0; b < m; ++b) {
            for (int r = 0; r < 4; ++r) {
                for (int var = 0; var < 4; ++var) {
                    double s = 0.0;
                    for (int c = 0; c < 4; ++c) s += basis[var][r][c] * v[static_cast<size_t>(4 * b + c)];
                    J.at(4 * b + r, var) = -s;
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) J.at(i, 4 + j) = P.at(i, j);
        }
        for (int j = 0; j < n; ++j) J.at(n, 4 + j) = v[static_cast<size_t>(j)];

        std::vector<double> rhs(G.size());
        for (size_t i = 0; i < G.size(); ++i) rhs[i] = -G[i];
        const std::vector<double> delta = svd_solve_minnorm(J, rhs, 1e-13);
        for (int var = 0; var < 4; ++var) lambda[static_cast<size_t>(var)] += delta[static_cast<size_t>(var)];
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] += delta[static_cast<size_t>(4 + i)];
        P = pencil_at(ctx.baseP, m, lambda);
        if (vec_norm2(delta) <= 1e-16 * (1.0 + vec_norm2(v))) break;
    }
    lambda = best_lambda;
}

bool within_cluster(const std::array<double, 4>& a, const std::array<double, 4>& b, double tol) {
    for (int v = 0; v < 4; ++v) {
        if (std::abs(a[static_cast<size_t>(v)] - b[static_cast<size_t>(v)]) >= tol) return false;
    }
    return true;
}

// Ordering on roots that ignores sub-tolerance noise: coordinates are
// snapped to a grid of half the cluster tolerance before comparing, so two
// distinct roots always compare by a coordinate they genuinely differ in.
bool lambda_less(const std::array<double, 4>& a, const std::array<double, 4>& b, double tol) {
    const double h = 0.5 * tol;
    for (int v = 0; v < 4; ++v) {
        const long long ka = std::llround(a[static_cast<size_t>(v)] / h);
        const long long kb = std::llround(b[static_cast<size_t>(v)] / h);
        if (ka != kb) return ka < kb;
    }
    return false;
}

int thread_count_from_env() {
    const char* env = std::getenv("QS_THREADS");
    if (env == nullptr) return 1;
    try {
        const int n = std::stoi(env);
        return std::clamp(n, 1, 64);
    } catch (const std::exception&) {
        return 1;
    }
}

struct StartResult {
    bool converged = false;
    std::array<double, 4> x{0, 0, 0, 0};
    double fn = std::numeric_limits<double>::infinity();
    double rel = std::numeric_limits<double>::infinity();  // max_i |F_i| / max(1, scale_i)
};

// Newton restricted to the locally well determined directions: singular
// values of the Jacobian below the manifold threshold are truncated away, so
// steps stay transversal to the manifold tangent instead of sliding along it.
bool restricted_newton(const CompiledSystem& sys, std::array<double, 4>& x,
                       const SolveConfig& cfg) {
    std::vector<double> F = sys.eval_F(x);
    for (int it = 0; it < cfg.max_iter; ++it) {
        const double fn = norm_inf(F);
        if (!std::isfinite(fn)) return false;
        if (residuals_converged(sys, x, F, cfg.tol_newton)) return true;
        const DMat J = sys.eval_J(x);
        const SVD svd = jacobi_svd(J);
        const double thr = 1e-6 * std::max(svd.sigma.empty() ? 0.0 : svd.sigma.front(), 1.0);
        std::vector<double> rhs(F.size());
        for (size_t i = 0; i < F.size(); ++i) rhs[i] = -F[i];
        const std::vector<double> delta = svd_solve_minnorm(J, rhs, 0.0, thr);
        if (vec_norm2(delta) <= 1e-17) return false;
        const double phi0 = sum_sq(F);
        double t = 1.0;
        bool stepped = false;
        while (t >= 1e-12) {
            std::array<double, 4> xt = x;
            for (int v = 0; v < 4; ++v) xt[static_cast<size_t>(v)] += t * delta[static_cast<size_t>(v)];
            std::vector<double> Ft = sys.eval_F(xt);
            const double phit = sum_sq(Ft);
            if (std::isfinite(phit) && phit <= phi0 * (1.0 - 1e-4 * t)) {
                x = xt;
                F = std::move(Ft);
                stepped = true;
                break;
            }
            t *= 0.5;
        }
        if (!stepped) return false;
    }
    return residuals_converged(sys, x, F, cfg.tol_newton);
}

std::vector<EigenCertificate> sample_manifold_impl(const SolveContext& ctx,
                                                   const EigenCertificate& seed, int k,
                                                   const SolveConfig& cfg) {
    if (seed.jacobian_rank >= 4) {
        throw std::invalid_argument("sample_manifold: seed has full Jacobian rank");
    }
    if (k < 1) {
        throw std::invalid_argument("sample_manifold: k must be positive");
    }
    const SVD svd = jacobi_svd(ctx.sys.eval_J(seed.lambda));
    const double thr = 1e-6 * std::max(svd.sigma.empty() ? 0.0 : svd.sigma.front(), 1.0);
    std::vector<std::vector<double>> null_dirs;
    for (size_t i = 0; i < svd.sigma.size(); ++i) {
        if (svd.sigma[i] > thr) continue;
        std::vector<double> d(4);
        for (int r = 0; r < 4; ++r) d[static_cast<size_t>(r)] = svd.V.at(r, static_cast<int>(i));
        null_dirs.push_back(std::move(d));
    }
    if (null_dirs.empty()) {
        throw std::invalid_argument("sample_manifold: no null directions at seed");
    }

    std::mt19937_64 rng(cfg.rng_seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double lam_norm = std::sqrt(seed.lambda[0] * seed.lambda[0] + seed.lambda[1] * seed.lambda[1] +
                                      seed.lambda[2] * seed.lambda[2] + seed.lambda[3] * seed.lambda[3]);
    const double eps = 1e-2 * std::max(1.0, lam_norm);

    std::vector<EigenCertificate> out;
    std::vector<std::array<double, 4>> distinct;
    const int max_attempts = 8 * k;
    for (int attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < k; ++attempt) {
        // a seed whose whole neighborhood certifies nothing is a point
        // degeneracy, not a curve; stop probing early
        if (attempt >= 2 * k && out.empty()) break;
        std::array<double, 4> dir{0, 0, 0, 0};
        for (const auto& d : null_dirs) {
            const double w = gauss(rng);
            for (int v = 0; v < 4; ++v) dir[static_cast<size_t>(v)] += w * d[static_cast<size_t>(v)];
        }
        double dn = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2] + dir[3] * dir[3]);
        if (dn == 0.0) continue;
        std::array<double, 4> x = seed.lambda;
        for (int v = 0; v < 4; ++v) x[static_cast<size_t>(v)] += eps * dir[static_cast<size_t>(v)] / dn;
        if (!restricted_newton(ctx.sys, x, cfg)) continue;
        refine_eigenpair(ctx, x);
        EigenCertificate cert = certify_point(ctx, x, cfg.tol_residual);
        if (!cert.accepted) continue;
        cert.jacobian_rank = jacobian_rank_at(ctx.sys, cert.lambda);
        out.push_back(cert);
        bool fresh = true;
        for (const auto& d : distinct) {
            if (within_cluster(d, cert.lambda, cfg.tol_cluster)) {
                fresh = false;
                break;
            }
        }
        if (fresh) distinct.push_back(cert.lambda);
    }
    if (static_cast<int>(distinct.size()) * 2 < k) {
        throw ManifoldCollapse("sample_manifold: only " + std::to_string(distinct.size()) +
                               " distinct certified points for k=" + std::to_string(k));
    }
    return out;
}

}  // namespace

EigenCertificate verify_left_eigenvalue(const QuaternionMatrix& A, const Quaternion& lambda,
                                        double tol) {
    if (A.rows != A.cols) {
        throw DimensionMismatch("verify_left_eigenvalue: matrix must be square");
    }
    SolveContext ctx = make_context(A, false);
    std::array<double, 4> lam;
    for (int v = 0; v < 4; ++v) lam[static_cast<size_t>(v)] = to_double(lambda.c[v]);
    return certify_point(ctx, lam, tol);
}

std::vector<EigenCertificate> sample_manifold(const QuaternionMatrix& A,
                                              const EigenCertificate& seed, int k,
                                              const SolveConfig& cfg) {
    if (A.rows != A.cols) {
        throw DimensionMismatch("sample_manifold: matrix must be square");
    }
    SolveContext ctx = make_context(A, true);
    if (!ctx.have_sys) {
        throw std::invalid_argument("sample_manifold: needs a matrix of size at least 2");
    }
    return sample_manifold_impl(ctx, seed, k, cfg);
}

namespace {

SolutionSet solve_impl(const QuaternionMatrix& A, const SolveConfig& cfg,
                       const CharSystem* prebuilt) {
    if (A.rows != A.cols) {
        throw DimensionMismatch("solve_left_eigenvalues: matrix must be square");
    }
    if (cfg.n_starts < 1) {
        throw std::invalid_argument("solve_left_eigenvalues: n_starts must be positive");
    }
    SolutionSet out;

    if (A.rows == 1) {
        SolveContext ctx = make_context(A, false);
        std::array<double, 4> lam;
        for (int v = 0; v < 4; ++v) lam[static_cast<size_t>(v)] = to_double(A.at(0, 0).c[v]);
        EigenCertificate cert = certify_point(ctx, lam, cfg.tol_residual);
        cert.newton_residual = 0.0;
        cert.jacobian_rank = 4;  // the system is linear with identity Jacobian
        out.isolated.push_back(cert);
        out.annulus = ctx.ann;
        out.coverage.starts = 1;  // the single entry, read off directly
        out.coverage.converged = 1;
        out.coverage.fraction = 1.0;
        out.coverage.basin_counts = {1};
        return out;
    }

    SolveContext ctx = make_context(A, true, prebuilt);
    out.annulus = ctx.ann;

    // Newton starts: the diagonal entries first (they recover roots that the
    // shared factor of the minors divides out), then a deterministic uniform
    // sample of the search ball.
    std::vector<std::array<double, 4>> starts;
    for (int i = 0; i < ctx.m; ++i) {
        const QuatD d = ctx.Ad[static_cast<size_t>(i) * ctx.m + i];
        starts.push_back({d.c[0], d.c[1], d.c[2], d.c[3]});
    }
    const double radius = cfg.search_radius_scale * ctx.ann.sigma_max;
    std::mt19937_64 rng(cfg.rng_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int s = 0; s < cfg.n_starts; ++s) {
        std::array<double, 4> d;
        double n2 = 0.0;
        do {
            for (int v = 0; v < 4; ++v) d[static_cast<size_t>(v)] = gauss(rng);
            n2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3];
        } while (n2 == 0.0);
        const double r = radius * std::pow(unif(rng), 0.25) / std::sqrt(n2);
        for (int v = 0; v < 4; ++v) d[static_cast<size_t>(v)] *= r;
        starts.push_back(d);
    }

    const int total = static_cast<int>(starts.size());
    std::vector<StartResult> results(static_cast<size_t>(total));
    const int nthreads = std::min(thread_count_from_env(), total);
    auto worker = [&](int lo, int hi) {
        for (int s = lo; s < hi; ++s) {
            std::array<double, 4> x = starts[static_cast<size_t>(s)];
            StartResult& res = results[static_cast<size_t>(s)];
            res.converged = newton_run(ctx.sys, x, cfg);
            res.x = x;
            const std::vector<double> F = ctx.sys.eval_F(x);
            res.fn = norm_inf(F);
            if (std::isfinite(res.fn)) {
                const std::vector<double> scale = ctx.sys.eval_scale(x);
                res.rel = 0.0;
                for (size_t i = 0; i < F.size(); ++i) {
                    res.rel = std::max(res.rel, std::abs(F[i]) / std::max(1.0, scale[i]));
                }
            }
        }
    };
    if (nthreads <= 1) {
        worker(0, total);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (total + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const int lo = t * chunk;
            const int hi = std::min(total, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (std::thread& th : pool) th.join();
    }

    if (std::getenv("QLEIG_DEBUG_DUMP") != nullptr) {
        for (const StartResult& r : results) {
            std::fprintf(stderr, "EP %d %.17g %.17g %.17g %.17g %.3e %.3e\n", r.converged ? 1 : 0,
                         r.x[0], r.x[1], r.x[2], r.x[3], r.fn, r.rel);
        }
    }

    int converged = 0;
    struct Cluster {
        std::array<double, 4> rep;
        double fn;
        long count;
        double rel;
    };
    std::vector<Cluster> clusters;
    for (const StartResult& r : results) {
        if (!r.converged) continue;
        ++converged;
        bool placed = false;
        for (Cluster& c : clusters) {
            if (within_cluster(c.rep, r.x, cfg.tol_cluster)) {
                ++c.count;
                if (r.fn < c.fn) {
                    c.rep = r.x;
                    c.fn = r.fn;
                }
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({r.x, r.fn, 1, r.rel});
    }
    out.coverage.starts = total;
    out.coverage.converged = converged;
    out.coverage.fraction = total > 0 ? static_cast<double>(converged) / total : 0.0;
    if (converged == 0) {
        throw NoConvergence("solve_left_eigenvalues: no Newton start converged");
    }

    // Stalled endpoints get a second chance. A reducible matrix is the model
    // case: with the pivot inside one diagonal block, every kept minor
    // carries the determinant of the complementary block as a factor, and
    // that factor is a nonnegative polynomial, so eigenvalues of the
    // complementary block are minima of |F| where the Jacobian vanishes and
    // Newton stalls just short of them. The eigenpair refinement below works
    // on the pencil directly and has no such blind spot, so stalled endpoints
    // are clustered, ordered by how close their residual sits to the
    // evaluation noise floor, and handed to it; certification keeps or
    // discards what refinement produces.
    std::vector<Cluster> rescue;
    for (const StartResult& r : results) {
        if (r.converged || !std::isfinite(r.rel)) continue;
        bool placed = false;
        for (Cluster& c : rescue) {
            if (within_cluster(c.rep, r.x, cfg.tol_cluster)) {
                ++c.count;
                if (r.rel < c.rel) {
                    c.rep = r.x;
                    c.fn = r.fn;
                    c.rel = r.rel;
                }
                placed = true;
                break;
            }
        }
        if (!placed) rescue.push_back({r.x, r.fn, 1, r.rel});
    }
    std::stable_sort(rescue.begin(), rescue.end(),
                     [](const Cluster& a, const Cluster& b) { return a.rel < b.rel; });
    constexpr size_t kMaxRescue = 160;  // bounds refinement work on hostile inputs
    if (rescue.size() > kMaxRescue) rescue.resize(kMaxRescue);
    clusters.insert(clusters.end(), rescue.begin(), rescue.end());

    // refine every cluster representative, certify, and merge clusters that
    // refinement pulled together
    struct Root {
        EigenCertificate cert;
        long count;
    };
    std::vector<Root> roots;
    for (const Cluster& c : clusters) {
        std::array<double, 4> lam = c.rep;
        refine_eigenpair(ctx, lam);
        EigenCertificate cert = certify_point(ctx, lam, cfg.tol_residual);
        if (!cert.accepted) continue;
        cert.jacobian_rank = jacobian_rank_at(ctx.sys, cert.lambda);
        bool merged = false;
        for (Root& root : roots) {
            if (within_cluster(root.cert.lambda, cert.lambda, cfg.tol_cluster)) {
                root.count += c.count;
                if (cert.pencil_sigma_min < root.cert.pencil_sigma_min) root.cert = cert;
                merged = true;
                break;
            }
        }
        if (!merged) roots.push_back({cert, c.count});
    }

    std::sort(roots.begin(), roots.end(), [&cfg](const Root& a, const Root& b) {
        return lambda_less(a.cert.lambda, b.cert.lambda, cfg.tol_cluster);
    });

    std::vector<Root> isolated_roots;
    std::vector<Root> manifold_seeds;
    for (Root& root : roots) {
        if (root.cert.jacobian_rank >= 4) {
            isolated_roots.push_back(std::move(root));
            continue;
        }
        // Full sampling for the first suspected manifold; once confirmed,
        // later rank-deficient roots only need a short collapse probe.
        const int k_sample = out.manifold_flag ? 8 : 50;
        try {
            std::vector<EigenCertificate> pts = sample_manifold_impl(ctx, root.cert, k_sample, cfg);
            out.manifold_flag = true;
            out.manifold_points.push_back(root.cert);
            for (EigenCertificate& p : pts) out.manifold_points.push_back(std::move(p));
            manifold_seeds.push_back(std::move(root));
        } catch (const ManifoldCollapse&) {
            // the rank drop was a degenerate factor at a point, not a curve
            isolated_roots.push_back(std::move(root));
        }
    }

    for (Root& r : isolated_roots) {
        out.coverage.basin_counts.push_back(r.count);
        out.isolated.push_back(std::move(r.cert));
    }
    for (Root& r : manifold_seeds) out.coverage.basin_counts.push_back(r.count);
    return out;
}

}  // namespace

SolutionSet solve_left_eigenvalues(const QuaternionMatrix& A, const SolveConfig& cfg) {
    return solve_impl(A, cfg, nullptr);
}

SolutionSet solve_left_eigenvalues(const QuaternionMatrix& A, const SolveConfig& cfg,
                                   const CharSystem& prebuilt) {
    return solve_impl(A, cfg, &prebuilt);
}

bool domination_check(const QuaternionMatrix& A, const SolutionSet& s) {
    std::vector<std::array<double, 4>> lambdas;
    for (const EigenCertificate& c : s.isolated) lambdas.push_back(c.lambda);
    for (const EigenCertificate& c : s.manifold_points) lambdas.push_back(c.lambda);
    return domination_check(A, lambdas);
}

}  // namespace qleig
