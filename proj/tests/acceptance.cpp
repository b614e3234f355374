// Acceptance gate for the left-eigenvalue toolkit. Every criterion prints one
// PASS or FAIL line with its runtime; the process exits nonzero when any
// criterion fails. Tolerances are pinned here on purpose, do not read them
// from flags or the environment.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "qleig/charpoly.hpp"
#include "qleig/errors.hpp"
#include "qleig/forms.hpp"
#include "qleig/rmatrix.hpp"
#include "qleig/scalar.hpp"
#include "qleig/solver.hpp"
#include "qleig/spectra.hpp"

using namespace qleig;

namespace {

std::string g_why; // first failing condition of the current criterion

bool need_fail(const char* expr, int line) {
    if (g_why.empty()) g_why = std::string(expr) + " (acceptance.cpp:" + std::to_string(line) + ")";
    return false;
}

#define NEED(cond)                                        \
    do {                                                  \
        if (!(cond)) return need_fail(#cond, __LINE__);   \
    } while (0)

// ---------- subprocess helper for the CLI criteria ----------

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QLEIG_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    return r;
}

std::string data(const char* name) {
    return std::string(QLEIG_TEST_DATA) + "/" + name;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos < s.size()) {
        const size_t nl = s.find('\n', pos);
        if (nl == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

// ---------- fixtures ----------

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

Quaternion rq(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 3);
    Quaternion q;
    for (int v = 0; v < 4; ++v) q.c[v] = Rat(num(rng), den(rng));
    return q;
}

Quaternion rq_nonzero(std::mt19937_64& rng) {
    Quaternion q = rq(rng);
    while (q_norm2(q) == 0) q = rq(rng);
    return q;
}

QuaternionMatrix random_square(std::mt19937_64& rng, int m) {
    QuaternionMatrix a(m, m);
    for (auto& e : a.data) e = rq(rng);
    return a;
}

double dist4(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double d = a[static_cast<size_t>(i)] - b[static_cast<size_t>(i)];
        s += d * d;
    }
    return std::sqrt(s);
}

double norm4(const std::array<double, 4>& a) {
    return dist4(a, {0.0, 0.0, 0.0, 0.0});
}

bool has_root(const SolutionSet& s, const std::array<double, 4>& want, double tol) {
    for (const EigenCertificate& c : s.isolated) {
        if (dist4(c.lambda, want) < tol) return true;
    }
    return false;
}

// shorthand builders for expected polynomials
MultiPoly4 mono(std::array<int, 4> e, long long num, long long den = 1) {
    return MultiPoly4::monomial(e, Rat(num, den));
}

MultiPoly4 sum(std::initializer_list<MultiPoly4> ps) {
    MultiPoly4 acc;
    for (const auto& p : ps) acc = poly_add(acc, p);
    return acc;
}

// ---------- criteria ----------

// Two isolated roots 1 +- kappa on the symmetric k coupling matrix, both
// certificates tight on the pencil.
bool crit_exchange_pair() {
    const SolutionSet s = solve_left_eigenvalues(k_offdiag_2x2());
    NEED(!s.manifold_flag);
    NEED(s.isolated.size() == 2);
    NEED(has_root(s, {1.0, 0.0, 0.0, 1.0}, 1e-9));
    NEED(has_root(s, {1.0, 0.0, 0.0, -1.0}, 1e-9));
    for (const EigenCertificate& c : s.isolated) {
        NEED(c.accepted);
        NEED(c.pencil_sigma_min < 1e-10);
    }
    return true;
}

// The skew j coupling matrix carries a whole sphere of eigenvalues:
// (l0-1)^2 + l1^2 + l3^2 = 1 with l2 = 0. The solver must flag the manifold
// and every sampled point must sit on that sphere.
bool crit_sphere_manifold() {
    const SolutionSet s = solve_left_eigenvalues(j_skew_2x2());
    NEED(s.manifold_flag);
    NEED(s.manifold_points.size() >= 50);
    for (const EigenCertificate& c : s.manifold_points) {
        const auto& l = c.lambda;
        const double sphere = (l[0] - 1.0) * (l[0] - 1.0) + l[1] * l[1] + l[3] * l[3] - 1.0;
        NEED(std::abs(sphere) < 1e-8);
        NEED(std::abs(l[2]) < 1e-8);
    }
    return true;
}

// Spectrum {kappa, 1 + kappa, -1 + kappa} of the corner-swap matrix. The root
// kappa is the delicate one: the shared square factor of the reduced system
// vanishes there, so it exercises the degenerate-root recovery path.
bool crit_corner_swap_triple() {
    const SolutionSet s = solve_left_eigenvalues(k_plus_swap_3x3());
    NEED(!s.manifold_flag);
    NEED(s.isolated.size() == 3);
    NEED(has_root(s, {0.0, 0.0, 0.0, 1.0}, 1e-9));
    NEED(has_root(s, {1.0, 0.0, 0.0, 1.0}, 1e-9));
    NEED(has_root(s, {-1.0, 0.0, 0.0, 1.0}, 1e-9));
    return true;
}

// Quartic oracle for the mixed-unit upper triangle: the kappa coordinate of
// the two non-trivial roots satisfies 4t^4 - 8t^3 + 10t^2 - 6t + 1 = 0, whose
// real roots have the closed form (1 +- sqrt(sqrt(5) - 2)) / 2. Bisection
// locates them independently of the solver and is cross-checked against the
// closed form before use.
double quartic(double t) {
    return (((4.0 * t - 8.0) * t + 10.0) * t - 6.0) * t + 1.0;
}

double bisect_quartic(double lo, double hi) {
    double flo = quartic(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = quartic(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

bool crit_mixed_triangle_roots() {
    const double r_lo = bisect_quartic(0.0, 0.5);
    const double r_hi = bisect_quartic(0.5, 1.0);
    const double w = std::sqrt(std::sqrt(5.0) - 2.0);
    NEED(std::abs(r_lo - 0.5 * (1.0 - w)) < 1e-12);
    NEED(std::abs(r_hi - 0.5 * (1.0 + w)) < 1e-12);

    const SolutionSet s = solve_left_eigenvalues(mixed_units_3x3());
    NEED(!s.manifold_flag);
    NEED(s.isolated.size() == 3);
    NEED(has_root(s, {0.0, 0.0, 1.0, 0.0}, 1e-9));
    bool used_lo = false;
    bool used_hi = false;
    for (const EigenCertificate& c : s.isolated) {
        if (dist4(c.lambda, {0.0, 0.0, 1.0, 0.0}) < 1e-9) continue;
        NEED(std::abs(c.lambda[0]) < 1e-9);
        NEED(std::abs(c.lambda[2]) < 1e-9);
        const double t = c.lambda[3];
        if (!used_lo && std::abs(t - r_lo) < 1e-9) {
            used_lo = true;
        } else if (!used_hi && std::abs(t - r_hi) < 1e-9) {
            used_hi = true;
        } else {
            NEED(false && "kappa coordinate matches neither quartic root");
        }
        NEED(std::abs(c.lambda[1] - (1.0 - t) / (1.0 - 2.0 * t)) < 1e-8);
    }
    NEED(used_lo && used_hi);
    return true;
}

// The charpoly command must reproduce the hand-derived reduced systems of the
// three printed fixtures. Group order and an overall sign per group are free;
// term order inside a group is canonical on both sides.
bool match_system(const std::string& cli_out, const std::array<MultiPoly4, 4>& expected) {
    const std::vector<std::string> lines = lines_of(cli_out);
    NEED(lines.size() == 4);
    std::array<bool, 4> used{};
    for (int i = 0; i < 4; ++i) {
        const std::string prefix = "F" + std::to_string(i + 1) + ": ";
        const std::string& line = lines[static_cast<size_t>(i)];
        NEED(line.rfind(prefix, 0) == 0);
        const std::string body = line.substr(prefix.size());
        bool placed = false;
        for (int j = 0; j < 4 && !placed; ++j) {
            if (used[static_cast<size_t>(j)]) continue;
            const MultiPoly4& e = expected[static_cast<size_t>(j)];
            if (body == render_poly(e) || body == render_poly(poly_neg(e))) {
                used[static_cast<size_t>(j)] = true;
                placed = true;
            }
        }
        NEED(placed);
    }
    return true;
}

bool crit_reduced_system_text() {
    // symmetric k coupling
    const std::array<MultiPoly4, 4> sys1 = {
        sum({mono({2, 0, 0, 0}, -1), mono({1, 0, 0, 0}, 2), mono({0, 2, 0, 0}, -1),
             mono({0, 0, 2, 0}, -1), mono({0, 0, 0, 2}, 1), mono({0, 0, 0, 0}, -2)}),
        mono({0, 0, 1, 1}, -2),
        mono({0, 1, 0, 1}, 2),
        sum({mono({1, 0, 0, 1}, -2), mono({0, 0, 0, 1}, 2)}),
    };
    // skew j coupling
    const std::array<MultiPoly4, 4> sys2 = {
        mono({0, 0, 1, 1}, -2),
        sum({mono({2, 0, 0, 0}, -1), mono({1, 0, 0, 0}, 2), mono({0, 2, 0, 0}, -1),
             mono({0, 0, 2, 0}, 1), mono({0, 0, 0, 2}, -1)}),
        mono({0, 1, 1, 0}, -2),
        sum({mono({1, 0, 1, 0}, 2), mono({0, 0, 1, 0}, -2)}),
    };
    // mixed unit upper triangle, every group carries the square of
    // beta = l0^2 + l1^2 + (l2 - 1)^2 + l3^2
    const MultiPoly4 beta = sum({mono({2, 0, 0, 0}, 1), mono({0, 2, 0, 0}, 1),
                                 mono({0, 0, 2, 0}, 1), mono({0, 0, 1, 0}, -2),
                                 mono({0, 0, 0, 2}, 1), mono({0, 0, 0, 0}, 1)});
    const MultiPoly4 b2 = poly_mul(beta, beta);
    const std::array<MultiPoly4, 4> sys4 = {
        poly_mul(sum({mono({0, 1, 0, 0}, -1), mono({0, 0, 0, 1}, -1), mono({0, 1, 0, 1}, 2),
                      mono({0, 0, 0, 0}, 1)}),
                 b2),
        poly_mul(sum({mono({1, 0, 0, 0}, -1), mono({0, 0, 1, 0}, 1), mono({0, 1, 1, 0}, -2)}), b2),
        poly_mul(sum({mono({2, 0, 0, 0}, -1), mono({0, 2, 0, 0}, 1), mono({0, 1, 0, 0}, -1),
                      mono({0, 0, 2, 0}, -1), mono({0, 0, 0, 2}, -1), mono({0, 0, 0, 1}, 1),
                      mono({0, 0, 0, 0}, -1)}),
                 b2),
        poly_mul(sum({mono({1, 0, 0, 0}, 1), mono({0, 0, 1, 0}, 1), mono({1, 1, 0, 0}, -2)}), b2),
    };

    const RunResult r1 = run_cli("charpoly " + data("mat2_k_offdiag.json"));
    NEED(r1.code == 0);
    NEED(match_system(r1.out, sys1));
    const RunResult r2 = run_cli("charpoly " + data("mat2_j_skew.json"));
    NEED(r2.code == 0);
    NEED(match_system(r2.out, sys2));
    const RunResult r4 = run_cli("charpoly " + data("mat3_mixed_units.json"));
    NEED(r4.code == 0);
    NEED(match_system(r4.out, sys4));
    return true;
}

// Exact rank of the block image is a multiple of four, across sizes up to
// 4 x 3 and a spread of representation forms. Every fifth matrix gets a
// duplicated row so rank-deficient images are exercised too.
bool crit_rank_mod_four() {
    std::mt19937_64 rng(4604);
    std::uniform_int_distribution<int> rows(1, 4);
    std::uniform_int_distribution<int> cols(1, 3);
    for (int i = 0; i < 500; ++i) {
        const int r = rows(rng);
        const int c = cols(rng);
        QuaternionMatrix A(r, c);
        for (auto& e : A.data) e = rq(rng);
        if (i % 5 == 0 && r >= 2) {
            for (int j = 0; j < c; ++j) A.at(r - 1, j) = A.at(0, j);
        }
        const int k = (i * 7) % 48 + 1;
        const int rank = p_rank(p_map(k, A));
        NEED(rank % 4 == 0);
        NEED(rank <= 4 * std::min(r, c));
    }
    return true;
}

// The four sign chains relating the sixteen bordered minors hold as exact
// polynomial identities on random matrices.
bool crit_minor_relations() {
    std::mt19937_64 rng(4607);
    for (int i = 0; i < 120; ++i) {
        const int m = (i < 100) ? 2 : 3;
        const QuaternionMatrix A = random_square(rng, m);
        const Pencil pen = build_pencil(A);
        const PivotChoice pivot = select_pivot_block(pen);
        const MinorSet minors = extract_minors(pen, pivot);
        verify_minor_relations(minors); // throws RelationViolation on failure
    }
    return true;
}

// At every sampled rational point the full pencil determinant vanishes
// exactly when the whole reduced system does. Upper-triangular matrices
// contribute their diagonal entries as guaranteed common zeros, so the
// forward direction is exercised on genuine roots, not vacuously.
bool crit_det_equivalence() {
    std::mt19937_64 rng(4608);
    for (int i = 0; i < 50; ++i) {
        const bool triangular = (i % 2 == 1);
        QuaternionMatrix A(2, 2);
        if (triangular) {
            A.at(0, 0) = rq(rng);
            A.at(0, 1) = rq(rng);
            A.at(1, 1) = rq(rng);
            while (A.at(1, 1) == A.at(0, 0)) A.at(1, 1) = rq(rng);
        } else {
            A = random_square(rng, 2);
        }
        const Pencil pen = build_pencil(A);
        const MultiPoly4 det = full_generalized_charpoly(pen);
        const CharSystem cs = build_char_system(A);
        NEED(!cs.trivial);

        auto check_point = [&](const std::array<Rat, 4>& x, bool must_be_root) -> bool {
            bool all_zero = true;
            for (const MultiPoly4& f : cs.F) {
                if (poly_eval_exact(f, x) != Rat(0)) {
                    all_zero = false;
                    break;
                }
            }
            const bool det_zero = poly_eval_exact(det, x) == Rat(0);
            if (det_zero != all_zero) return false;
            if (must_be_root && !det_zero) return false;
            return true;
        };

        for (int p = 0; p < 100; ++p) {
            const Quaternion pt = rq(rng);
            NEED(check_point({pt.c[0], pt.c[1], pt.c[2], pt.c[3]}, false));
        }
        if (triangular) {
            for (const Quaternion& d : {A.at(0, 0), A.at(1, 1)}) {
                NEED(check_point({d.c[0], d.c[1], d.c[2], d.c[3]}, true));
            }
        }
    }
    return true;
}

// Identity suite for one representation form, exact arithmetic throughout:
// basis algebra, multiplicativity, additivity, conjugate transpose,
// determinant equal to the squared norm-square, round trip, and for form 1
// the three fixed signed-permutation conjugations.
bool form_identities(int k, int samples) {
    const RepresentationForm& f = form(k);
    const RealMatrix E = RealMatrix::identity(4);
    RealMatrix negE(4, 4);
    for (int i = 0; i < 4; ++i) negE.at(i, i) = -1;
    const RealMatrix H = form_matrix(f.H);
    const RealMatrix J = form_matrix(f.J);
    const RealMatrix K = form_matrix(f.K);
    NEED(rmat_mul(H, H) == negE);
    NEED(rmat_mul(J, J) == negE);
    NEED(rmat_mul(K, K) == negE);
    NEED(rmat_mul(rmat_mul(H, J), K) == negE);
    NEED(rmat_mul(H, J) == K);
    NEED(rmat_mul(J, K) == H);
    NEED(rmat_mul(K, H) == J);
    NEED(q_map(k, Q_ONE) == E);

    std::mt19937_64 rng(0xACC0ULL + static_cast<unsigned long long>(k));
    for (int s = 0; s < samples; ++s) {
        const Quaternion a = rq(rng);
        const Quaternion b = rq(rng);
        NEED(q_map(k, q_mul(a, b)) == rmat_mul(q_map(k, a), q_map(k, b)));
        NEED(q_map(k, q_add(a, b)) == rmat_add(q_map(k, a), q_map(k, b)));
        NEED(q_map(k, q_conj(a)) == q_map(k, a).transpose());
        const Rat n2 = q_norm2(a);
        NEED(rmat_det(q_map(k, a)) == n2 * n2);
        NEED(q_unmap(k, q_map(k, a)) == a);
        if (k == 1) NEED(elementary_conjugation_check(a));
    }
    return true;
}

bool crit_form_suites() {
    const std::vector<RepresentationForm>& fs = enumerate_forms();
    NEED(fs.size() == 48);
    for (const RepresentationForm& f : fs) {
        NEED(form_identities(f.index, 1000));
    }
    const RunResult r = run_cli("forms --check");
    NEED(r.code == 0);
    const std::vector<std::string> lines = lines_of(r.out);
    NEED(!lines.empty());
    NEED(lines.back() == "48/48 pass");
    return true;
}

// Two-sided scaling: when lambda is certified for A, a*lambda*b must certify
// for a*A*b. The scaled candidate is checked directly on the scaled pencil.
bool crit_scaling_closure() {
    std::mt19937_64 rng(4610);
    const QuaternionMatrix A1 = k_offdiag_2x2();
    const QuaternionMatrix A3 = k_plus_swap_3x3();
    const SolutionSet s1 = solve_left_eigenvalues(A1);
    const SolutionSet s3 = solve_left_eigenvalues(A3);
    NEED(s1.isolated.size() == 2);
    NEED(s3.isolated.size() == 3);
    for (int t = 0; t < 20; ++t) {
        const Quaternion a = rq_nonzero(rng);
        const Quaternion b = rq_nonzero(rng);
        const bool first = (t % 2 == 0);
        const QuaternionMatrix& A = first ? A1 : A3;
        const SolutionSet& s = first ? s1 : s3;
        const QuaternionMatrix scaled = scalar_left_mul(a, scalar_right_mul(A, b));
        for (const EigenCertificate& c : s.isolated) {
            Quaternion lam;
            for (int v = 0; v < 4; ++v) lam.c[v] = rat_from_double(c.lambda[static_cast<size_t>(v)]);
            const Quaternion mu = q_mul(a, q_mul(lam, b));
            const EigenCertificate check = verify_left_eigenvalue(scaled, mu, 1e-8);
            NEED(check.accepted);
        }
    }
    return true;
}

// Every certified eigenvalue norm sits inside the singular-value annulus and
// inside the right-spectrum norm band, on the four fixtures and on random
// matrices alike.
bool crit_norm_bounds() {
    std::vector<QuaternionMatrix> mats = {k_offdiag_2x2(), j_skew_2x2(), k_plus_swap_3x3(),
                                          mixed_units_3x3()};
    std::mt19937_64 rng(4611);
    for (int i = 0; i < 50; ++i) mats.push_back(random_square(rng, 2));
    for (size_t idx = 0; idx < mats.size(); ++idx) {
        const QuaternionMatrix& A = mats[idx];
        SolveConfig cfg;
        if (idx >= 4) {
            cfg.n_starts = 500;
            cfg.rng_seed = static_cast<std::uint64_t>(idx);
        }
        SolutionSet s;
        try {
            s = solve_left_eigenvalues(A, cfg);
        } catch (const NoConvergence&) {
            cfg.n_starts = 2000; // a second, denser sweep before giving up
            s = solve_left_eigenvalues(A, cfg);
        }
        const AnnulusBound ann = annulus(A);
        const RightSpectrum rs = right_eigenvalues(A);
        std::vector<const EigenCertificate*> all;
        for (const EigenCertificate& c : s.isolated) all.push_back(&c);
        for (const EigenCertificate& c : s.manifold_points) all.push_back(&c);
        for (const EigenCertificate* c : all) {
            const double n = norm4(c->lambda);
            NEED(n >= ann.sigma_min - 1e-8);
            NEED(n <= ann.sigma_max + 1e-8);
            NEED(n >= rs.alpha - 1e-8);
            NEED(n <= rs.beta + 1e-8);
        }
    }
    return true;
}

// diag(q, B) must report {q} union spectrum(B), matched both ways at the
// clustering tolerance. This leans on the stalled-start rescue: the reduced
// system of the block matrix is degenerate at the eigenvalues of B.
bool crit_block_diagonal() {
    std::mt19937_64 rng(4612);
    for (int t = 0; t < 20; ++t) {
        const Quaternion q = rq(rng);
        const QuaternionMatrix B = random_square(rng, 2);
        QuaternionMatrix A(3, 3);
        A.at(0, 0) = q;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) A.at(i + 1, j + 1) = B.at(i, j);
        }
        SolveConfig cfg_b;
        cfg_b.n_starts = 600;
        cfg_b.rng_seed = static_cast<std::uint64_t>(1000 + t);
        SolveConfig cfg_a;
        cfg_a.n_starts = 1200;
        cfg_a.rng_seed = static_cast<std::uint64_t>(2000 + t);
        const SolutionSet sb = solve_left_eigenvalues(B, cfg_b);
        const SolutionSet sa = solve_left_eigenvalues(A, cfg_a);
        NEED(!sb.manifold_flag);
        NEED(!sa.manifold_flag);

        std::vector<std::array<double, 4>> expected;
        expected.push_back({to_double(q.c[0]), to_double(q.c[1]), to_double(q.c[2]),
                            to_double(q.c[3])});
        for (const EigenCertificate& c : sb.isolated) expected.push_back(c.lambda);

        for (const auto& e : expected) {
            bool hit = false;
            for (const EigenCertificate& c : sa.isolated) {
                if (dist4(c.lambda, e) < 1e-7) {
                    hit = true;
                    break;
                }
            }
            NEED(hit);
        }
        for (const EigenCertificate& c : sa.isolated) {
            bool hit = false;
            for (const auto& e : expected) {
                if (dist4(c.lambda, e) < 1e-7) {
                    hit = true;
                    break;
                }
            }
            NEED(hit);
        }
    }
    return true;
}

// Identical flags, identical bytes. Two independent CLI processes per input.
bool crit_determinism() {
    const std::string flags = "solve " + data("mat2_k_offdiag.json") + " --starts 500 --seed 5";
    const RunResult a = run_cli(flags);
    const RunResult b = run_cli(flags);
    NEED(a.code == 0);
    NEED(b.code == 0);
    NEED(!a.out.empty());
    NEED(a.out == b.out);
    const std::string flags1 = "solve " + data("m1_kappa.json");
    const RunResult c = run_cli(flags1);
    const RunResult d = run_cli(flags1);
    NEED(c.code == 0);
    NEED(c.out == d.out);
    return true;
}

struct Criterion {
    const char* name;
    bool (*fn)();
    double cap_seconds; // 0 means uncapped
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"two isolated certified roots on the k coupling pair", crit_exchange_pair, 5.0},
        {"sphere manifold flagged and sampled on the skew pair", crit_sphere_manifold, 30.0},
        {"corner-swap triple including the degenerate root", crit_corner_swap_triple, 60.0},
        {"mixed triangle: j plus the two quartic roots", crit_mixed_triangle_roots, 60.0},
        {"charpoly text matches the hand-derived systems", crit_reduced_system_text, 0.0},
        {"block-image rank is always a multiple of four", crit_rank_mod_four, 0.0},
        {"minor sign chains hold as exact identities", crit_minor_relations, 0.0},
        {"determinant zero iff the reduced system vanishes", crit_det_equivalence, 0.0},
        {"all 48 representation forms pass the identity suite", crit_form_suites, 0.0},
        {"scaled roots certify on two-sided scaled matrices", crit_scaling_closure, 0.0},
        {"certified norms respect annulus and right-norm bands", crit_norm_bounds, 0.0},
        {"block-diagonal spectra match the union of blocks", crit_block_diagonal, 0.0},
        {"identical solve flags give byte-identical reports", crit_determinism, 0.0},
    };

    int passed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& cr = criteria[i];
        g_why.clear();
        bool ok = false;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            ok = cr.fn();
        } catch (const std::exception& e) {
            g_why = std::string("exception: ") + e.what();
        } catch (...) {
            g_why = "unknown exception";
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && cr.cap_seconds > 0.0 && secs >= cr.cap_seconds) {
            ok = false;
            g_why = "runtime " + std::to_string(secs) + "s exceeds the " +
                    std::to_string(cr.cap_seconds) + "s cap";
        }
        std::printf("%2zu. %-55s %s (%.1fs)\n", i + 1, cr.name, ok ? "PASS" : "FAIL", secs);
        if (!ok && !g_why.empty()) std::printf("      reason: %s\n", g_why.c_str());
        if (ok) ++passed;
    }
    std::printf("%d/13 criteria pass\n", passed);
    return passed == 13 ? 0 : 1;
}
