#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qleig/charpoly.hpp"
#include "qleig/forms.hpp"
#include "qleig/report.hpp"
#include "qleig/solver.hpp"

namespace {

using nlohmann::json;
using namespace qleig;

// Input file problems carry "path:line: message" so scripts can jump to the
// offending spot. Exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

InputError input_error(const std::string& path, int line, const std::string& msg) {
    return InputError(path + ":" + std::to_string(line) + ": " + msg);
}

int line_at_byte(const std::string& raw, size_t byte) {
    int line = 1;
    for (size_t i = 0; i < byte && i < raw.size(); ++i) {
        if (raw[i] == '\n') ++line;
    }
    return line;
}

// Best-effort line lookup for semantic errors: the first occurrence of the
// offending token. Falls back to line 1.
int line_of(const std::string& raw, const std::string& needle) {
    const size_t pos = raw.find(needle);
    if (pos == std::string::npos) return 1;
    return line_at_byte(raw, pos);
}

Rat parse_component(const json& v, const std::string& path, const std::string& raw) {
    if (v.is_number_unsigned()) return Rat(v.get<unsigned long long>());
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_number_float()) return rat_from_double(v.get<double>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        try {
            return rat_from_string(s);
        } catch (const std::exception& e) {
            throw input_error(path, line_of(raw, '"' + s + '"'),
                              "bad rational string \"" + s + "\": " + e.what());
        }
    }
    throw input_error(path, 1, "quaternion component must be a number or a rational string");
}

QuaternionMatrix load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string raw = buf.str();

    json doc;
    try {
        doc = json::parse(raw);
    } catch (const json::parse_error& e) {
        throw input_error(path, line_at_byte(raw, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
    if (!doc.is_object()) throw input_error(path, 1, "top level must be an object");
    if (!doc.contains("m") || !doc["m"].is_number_integer()) {
        throw input_error(path, line_of(raw, "\"m\""), "missing integer field \"m\"");
    }
    const long long m = doc["m"].get<long long>();
    if (m < 1) {
        throw input_error(path, line_of(raw, "\"m\""), "matrix size must be at least 1");
    }
    if (!doc.contains("entries") || !doc["entries"].is_array()) {
        throw input_error(path, line_of(raw, "\"entries\""), "missing array field \"entries\"");
    }
    const json& rows = doc["entries"];
    if (static_cast<long long>(rows.size()) != m) {
        throw input_error(path, line_of(raw, "\"entries\""),
                          "entries has " + std::to_string(rows.size()) + " rows, expected " +
                              std::to_string(m) + " (matrix must be square)");
    }
    QuaternionMatrix A(static_cast<int>(m), static_cast<int>(m));
    for (long long i = 0; i < m; ++i) {
        const json& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<long long>(row.size()) != m) {
            throw input_error(path, line_of(raw, "\"entries\""),
                              "row " + std::to_string(i + 1) + " has " +
                                  std::to_string(row.is_array() ? row.size() : 0) +
                                  " entries, expected " + std::to_string(m) +
                                  " (matrix must be square)");
        }
        for (long long j = 0; j < m; ++j) {
            const json& q = row[static_cast<size_t>(j)];
            if (!q.is_array() || q.size() != 4) {
                throw input_error(path, line_of(raw, "\"entries\""),
                                  "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                      ") must be a quaternion [q0,q1,q2,q3]");
            }
            Quaternion& dst = A.at(static_cast<int>(i), static_cast<int>(j));
            for (int v = 0; v < 4; ++v) dst.c[v] = parse_component(q[static_cast<size_t>(v)], path, raw);
        }
    }
    return A;
}

// Exact-text quaternion, used where coefficients are still rational.
std::string format_quaternion_exact(const Quaternion& q) {
    static const char* kUnits[3] = {"ℏ", "ȷ", "κ"};
    std::string out = rat_to_string(q.c[0]);
    for (int v = 1; v < 4; ++v) {
        const Rat& c = q.c[v];
        out += (c < 0) ? " - " : " + ";
        out += rat_to_string(c < 0 ? Rat(-c) : c);
        out += kUnits[v - 1];
    }
    return out;
}

std::string render_signed_perm(const std::array<std::array<int, 4>, 4>& mat) {
    std::string out = "[";
    for (int i = 0; i < 4; ++i) {
        if (i) out += ',';
        out += '[';
        for (int j = 0; j < 4; ++j) {
            if (j) out += ',';
            out += std::to_string(mat[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        }
        out += ']';
    }
    out += ']';
    return out;
}

int run_solve(const std::string& path, const SolveConfig& cfg, bool text) {
    QuaternionMatrix A = load_matrix(path);
    Report rep = left_spectrum_report(A, cfg);
    if (text) {
        std::cout << render_report_text(rep);
    } else {
        std::cout << render_report_json(rep) << '\n';
    }
    return 0;
}

int run_charpoly(const std::string& path, bool full) {
    QuaternionMatrix A = load_matrix(path);
    CharSystem cs = build_char_system(A);
    if (cs.trivial) {
        std::cout << "trivial spectrum {" << format_quaternion_exact(cs.trivial_value) << "}\n";
    } else {
        for (size_t i = 0; i < cs.F.size(); ++i) {
            std::cout << 'F' << (i + 1) << ": " << render_poly(cs.F[i]) << '\n';
        }
    }
    if (full) {
        Pencil pen = build_pencil(A);
        std::cout << "full: " << render_poly(full_generalized_charpoly(pen)) << '\n';
    }
    return 0;
}

int run_verify(const std::string& path, const std::vector<double>& lam, double tol) {
    QuaternionMatrix A = load_matrix(path);
    Quaternion lambda(rat_from_double(lam[0]), rat_from_double(lam[1]),
                      rat_from_double(lam[2]), rat_from_double(lam[3]));
    EigenCertificate cert = verify_left_eigenvalue(A, lambda, tol);
    std::cout << "sigma_min: " << format_double(cert.pencil_sigma_min) << '\n';
    std::cout << "vector_residual: " << format_double(cert.vector_residual) << '\n';
    std::cout << (cert.accepted ? "accept" : "reject") << '\n';
    return cert.accepted ? 0 : 3;
}

Quaternion random_quaternion(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    Quaternion q;
    for (int v = 0; v < 4; ++v) q.c[v] = Rat(num(rng), den(rng));
    return q;
}

// Exhaustive identity suite for one representation form: algebra of the
// basis triple, then sampled homomorphism, addition, conjugate-transpose,
// determinant-norm and round-trip identities. Form 1 additionally runs the
// fixed signed-permutation conjugation checks. Exact arithmetic throughout.
bool form_suite(int k, int samples) {
    const RepresentationForm& f = form(k);
    const RealMatrix E = RealMatrix::identity(4);
    RealMatrix negE(4, 4);
    for (int i = 0; i < 4; ++i) negE.at(i, i) = -1;
    const RealMatrix H = form_matrix(f.H);
    const RealMatrix J = form_matrix(f.J);
    const RealMatrix K = form_matrix(f.K);
    if (rmat_mul(H, H) != negE || rmat_mul(J, J) != negE || rmat_mul(K, K) != negE) return false;
    if (rmat_mul(rmat_mul(H, J), K) != negE) return false;
    if (rmat_mul(H, J) != K || rmat_mul(J, K) != H || rmat_mul(K, H) != J) return false;
    if (q_map(k, Q_ONE) != E) return false;

    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned long long>(k));
    for (int s = 0; s < samples; ++s) {
        const Quaternion a = random_quaternion(rng);
        const Quaternion b = random_quaternion(rng);
        if (q_map(k, q_mul(a, b)) != rmat_mul(q_map(k, a), q_map(k, b))) return false;
        if (q_map(k, q_add(a, b)) != rmat_add(q_map(k, a), q_map(k, b))) return false;
        if (q_map(k, q_conj(a)) != q_map(k, a).transpose()) return false;
        const Rat n2 = q_norm2(a);
        if (rmat_det(q_map(k, a)) != n2 * n2) return false;
        if (q_unmap(k, q_map(k, a)) != a) return false;
        if (k == 1 && !elementary_conjugation_check(a)) return false;
    }
    return true;
}

int run_forms(bool check) {
    const std::vector<RepresentationForm>& fs = enumerate_forms();
    for (const RepresentationForm& f : fs) {
        std::cout << f.index << ": H=" << render_signed_perm(f.H)
                  << " J=" << render_signed_perm(f.J)
                  << " K=" << render_signed_perm(f.K) << '\n';
    }
    if (!check) return 0;
    int pass = 0;
    for (const RepresentationForm& f : fs) {
        if (form_suite(f.index, 1000)) ++pass;
    }
    std::cout << pass << "/" << fs.size() << " pass\n";
    return pass == static_cast<int>(fs.size()) ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"left eigenvalues of quaternion matrices via a real symbolic pencil"};
    app.require_subcommand(1);

    std::string solve_path;
    SolveConfig cfg;
    bool flag_json = false;
    bool flag_text = false;
    CLI::App* solve = app.add_subcommand("solve", "compute and certify the left spectrum");
    solve->add_option("path", solve_path, "matrix JSON file")->required();
    solve->add_option("--tol", cfg.tol_residual, "certification tolerance");
    solve->add_option("--starts", cfg.n_starts, "number of random Newton starts");
    solve->add_option("--seed", cfg.rng_seed, "random number seed");
    solve->add_option("--max-iter", cfg.max_iter, "Newton iteration cap");
    CLI::Option* opt_json = solve->add_flag("--json", flag_json, "JSON report (default)");
    solve->add_flag("--text", flag_text, "human readable report")->excludes(opt_json);

    std::string charpoly_path;
    bool flag_full = false;
    CLI::App* charpoly = app.add_subcommand("charpoly", "print the reduced polynomial system");
    charpoly->add_option("path", charpoly_path, "matrix JSON file")->required();
    charpoly->add_flag("--full", flag_full, "also print the full pencil determinant");

    std::string verify_path;
    std::vector<double> lambda_flat;
    double verify_tol = 1e-10;
    CLI::App* verify = app.add_subcommand("verify", "certify one candidate left eigenvalue");
    verify->add_option("path", verify_path, "matrix JSON file")->required();
    verify->add_option("--lambda", lambda_flat, "candidate as q0,q1,q2,q3")
        ->required()
        ->delimiter(',')
        ->expected(4);
    verify->add_option("--tol", verify_tol, "acceptance tolerance");

    bool flag_check = false;
    CLI::App* forms_cmd = app.add_subcommand("forms", "list the 48 representation forms");
    forms_cmd->add_flag("--check", flag_check, "run the exact identity suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*solve) return run_solve(solve_path, cfg, flag_text);
        if (*charpoly) return run_charpoly(charpoly_path, flag_full);
        if (*verify) return run_verify(verify_path, lambda_flat, verify_tol);
        if (*forms_cmd) return run_forms(flag_check);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
