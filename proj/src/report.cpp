#include "qleig/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qleig {

namespace {

// %.6g with -0 folded to 0, for the human readable mode
std::string g6(double x) {
    if (x == 0.0) x = 0.0;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

// JSON has no NaN/Inf tokens, so anything non finite degrades to null.
// Certified outputs are always finite; this is a guard, not a code path.
std::string jnum(double x) {
    if (!std::isfinite(x)) return "null";
    return format_double(x);
}

void write_certificate(std::ostringstream& o, const EigenCertificate& c) {
    o << "{\"lambda\":[";
    for (int v = 0; v < 4; ++v) {
        if (v) o << ',';
        o << jnum(c.lambda[static_cast<size_t>(v)]);
    }
    o << "],\"residual\":" << jnum(c.vector_residual)
      << ",\"sigma_min\":" << jnum(c.pencil_sigma_min)
      << ",\"jacobian_rank\":" << c.jacobian_rank << '}';
}

} // namespace

std::string format_quaternion_components(const std::array<double, 4>& q) {
    static const char* kUnits[3] = {"ℏ", "ȷ", "κ"};
    std::string out = g6(q[0]);
    for (int v = 1; v < 4; ++v) {
        double c = q[static_cast<size_t>(v)];
        if (c == 0.0) c = 0.0;
        out += (c < 0.0) ? " - " : " + ";
        out += g6(std::abs(c));
        out += kUnits[v - 1];
    }
    return out;
}

Report left_spectrum_report(const QuaternionMatrix& A, const SolveConfig& cfg) {
    if (A.rows != A.cols || A.rows < 1) {
        throw DimensionMismatch("left_spectrum_report: matrix must be square and nonempty");
    }
    Report rep;
    rep.m = A.rows;
    rep.config = cfg;
    rep.input_entries.reserve(static_cast<size_t>(A.rows) * A.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) {
            std::array<std::string, 4> comp;
            for (int v = 0; v < 4; ++v) comp[static_cast<size_t>(v)] = rat_to_string(A.at(i, j).c[v]);
            rep.input_entries.push_back(std::move(comp));
        }
    }
    CharSystem cs = build_char_system(A);
    rep.trivial = cs.trivial;
    rep.fallback_all16 = cs.fallback_all16;
    rep.char_system.reserve(cs.F.size());
    for (const MultiPoly4& f : cs.F) rep.char_system.push_back(render_poly(f));
    rep.solution = cs.trivial ? solve_left_eigenvalues(A, cfg)
                              : solve_left_eigenvalues(A, cfg, cs);
    rep.right = right_eigenvalues(A);
    rep.domination = domination_check(A, rep.solution);
    return rep;
}

std::string render_report_json(const Report& r) {
    std::ostringstream o;
    o << "{\"input\":{\"m\":" << r.m << ",\"entries\":[";
    for (int i = 0; i < r.m; ++i) {
        if (i) o << ',';
        o << '[';
        for (int j = 0; j < r.m; ++j) {
            if (j) o << ',';
            const auto& comp = r.input_entries[static_cast<size_t>(i) * r.m + j];
            o << '[';
            for (int v = 0; v < 4; ++v) {
                if (v) o << ',';
                o << '"' << json_escape(comp[static_cast<size_t>(v)]) << '"';
            }
            o << ']';
        }
        o << ']';
    }
    o << "]},\"config\":{"
      << "\"tol_residual\":" << jnum(r.config.tol_residual)
      << ",\"tol_newton\":" << jnum(r.config.tol_newton)
      << ",\"tol_cluster\":" << jnum(r.config.tol_cluster)
      << ",\"n_starts\":" << r.config.n_starts
      << ",\"max_iter\":" << r.config.max_iter
      << ",\"rng_seed\":" << r.config.rng_seed
      << ",\"search_radius_scale\":" << jnum(r.config.search_radius_scale)
      << "},\"trivial\":" << (r.trivial ? "true" : "false")
      << ",\"fallback_all16\":" << (r.fallback_all16 ? "true" : "false")
      << ",\"char_system\":[";
    for (size_t i = 0; i < r.char_system.size(); ++i) {
        if (i) o << ',';
        o << '"' << json_escape(r.char_system[i]) << '"';
    }
    o << "],\"isolated\":[";
    for (size_t i = 0; i < r.solution.isolated.size(); ++i) {
        if (i) o << ',';
        write_certificate(o, r.solution.isolated[i]);
    }
    o << "],\"manifold\":{\"flag\":" << (r.solution.manifold_flag ? "true" : "false")
      << ",\"points\":[";
    for (size_t i = 0; i < r.solution.manifold_points.size(); ++i) {
        if (i) o << ',';
        write_certificate(o, r.solution.manifold_points[i]);
    }
    o << "]},\"bounds\":{"
      << "\"sigma_min\":" << jnum(r.solution.annulus.sigma_min)
      << ",\"sigma_max\":" << jnum(r.solution.annulus.sigma_max)
      << ",\"alpha\":" << jnum(r.right.alpha)
      << ",\"beta\":" << jnum(r.right.beta)
      << "},\"domination\":" << (r.domination ? "true" : "false")
      << ",\"coverage\":{"
      << "\"starts\":" << r.solution.coverage.starts
      << ",\"converged\":" << r.solution.coverage.converged
      << ",\"fraction\":" << jnum(r.solution.coverage.fraction)
      << ",\"basin_counts\":[";
    for (size_t i = 0; i < r.solution.coverage.basin_counts.size(); ++i) {
        if (i) o << ',';
        o << r.solution.coverage.basin_counts[i];
    }
    o << "]}}";
    return o.str();
}

std::string render_report_text(const Report& r) {
    std::ostringstream o;
    o << "left eigenvalue report, " << r.m << " x " << r.m << " matrix\n";
    o << "characteristic system";
    if (r.trivial) o << " (trivial, size 1)";
    if (r.fallback_all16) o << " (no full-rank pivot block, all 16 minors kept)";
    o << ":\n";
    for (size_t i = 0; i < r.char_system.size(); ++i) {
        o << "  F" << (i + 1) << ": " << r.char_system[i] << '\n';
    }
    o << "isolated eigenvalues: " << r.solution.isolated.size() << '\n';
    for (const EigenCertificate& c : r.solution.isolated) {
        o << "  " << format_quaternion_components(c.lambda)
          << "  (residual " << g6(c.vector_residual)
          << ", sigma_min " << g6(c.pencil_sigma_min)
          << ", jacobian rank " << c.jacobian_rank << ")\n";
    }
    if (r.solution.manifold_flag) {
        o << "manifold detected: yes, " << r.solution.manifold_points.size()
          << " certified sample points\n";
        const size_t shown = std::min<size_t>(5, r.solution.manifold_points.size());
        for (size_t i = 0; i < shown; ++i) {
            const EigenCertificate& c = r.solution.manifold_points[i];
            o << "  " << format_quaternion_components(c.lambda)
              << "  (residual " << g6(c.vector_residual) << ")\n";
        }
        if (r.solution.manifold_points.size() > shown) {
            o << "  ... " << (r.solution.manifold_points.size() - shown) << " more\n";
        }
    } else {
        o << "manifold detected: no\n";
    }
    o << "norm annulus: [" << g6(r.solution.annulus.sigma_min) << ", "
      << g6(r.solution.annulus.sigma_max) << "]";
    if (!r.solution.annulus.full_rank) o << "  (rank deficient, lower bound 0)";
    o << '\n';
    o << "right eigenvalue norms: alpha = " << g6(r.right.alpha)
      << ", beta = " << g6(r.right.beta) << '\n';
    o << "norm domination check: " << (r.domination ? "pass" : "fail") << '\n';
    o << "coverage: " << r.solution.coverage.converged << "/" << r.solution.coverage.starts
      << " starts converged (fraction " << g6(r.solution.coverage.fraction) << ")\n";
    return o.str();
}

} // namespace qleig
