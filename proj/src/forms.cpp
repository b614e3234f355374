#include "qleig/forms.hpp"

#include <string>

#include "qleig/errors.hpp"

namespace qleig {

// ---------------------------------------------------------------------------
// Representation forms.

namespace {

using Mat4i = std::array<std::array<int, 4>, 4>;

Mat4i mul4(const Mat4i& a, const Mat4i& b) {
    Mat4i r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

Mat4i neg4(const Mat4i& a) {
    Mat4i r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = -a[i][j];
    return r;
}

bool is_minus_identity(const Mat4i& a) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (a[i][j] != (i == j ? -1 : 0)) return false;
    return true;
}

// All signed permutation matrices M with M^2 = -E. The permutation must be
// a product of two disjoint transpositions and the two signs inside each
// transposition must differ; that gives 3 * 4 = 12 candidates.
std::vector<Mat4i> square_root_units() {
    static const std::array<std::array<int, 4>, 3> perms = {{{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}};
    std::vector<Mat4i> out;
    for (const auto& sigma : perms) {
        for (int mask = 0; mask < 16; ++mask) {
            Mat4i m{};
            for (int i = 0; i < 4; ++i) m[i][sigma[i]] = (mask >> i) & 1 ? -1 : 1;
            if (is_minus_identity(mul4(m, m))) out.push_back(m);
        }
    }
    return out;
}

std::vector<RepresentationForm> build_forms() {
    const std::vector<Mat4i> units = square_root_units();
    if (units.size() != 12) throw std::logic_error("form search: expected 12 base units");

    std::vector<RepresentationForm> out;
    for (const auto& h : units) {
        for (const auto& j : units) {
            // k is forced by h*j*k = -E together with h^2 = -E, j^2 = -E.
            const Mat4i k = neg4(mul4(j, h));
            if (!is_minus_identity(mul4(k, k))) continue;
            RepresentationForm f;
            f.H = h;
            f.J = j;
            f.K = k;
            out.push_back(f);
        }
    }
    if (out.size() != 48) throw std::logic_error("form search: expected 48 triples");

    // Pin the Hamilton left-regular triple to the front.
    const Mat4i h1 = {{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}};
    const Mat4i j1 = {{{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}}};
    size_t pos = out.size();
    for (size_t i = 0; i < out.size(); ++i)
        if (out[i].H == h1 && out[i].J == j1) {
            pos = i;
            break;
        }
    if (pos == out.size()) throw std::logic_error("form search: canonical triple missing");
    if (pos != 0) {
        RepresentationForm f = out[pos];
        out.erase(out.begin() + static_cast<long>(pos));
        out.insert(out.begin(), f);
    }
    for (size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i) + 1;
    return out;
}

} // namespace

const std::vector<RepresentationForm>& enumerate_forms() {
    static const std::vector<RepresentationForm> forms = build_forms();
    return forms;
}

const RepresentationForm& form(int k) {
    const auto& fs = enumerate_forms();
    if (k < 1 || k > static_cast<int>(fs.size()))
        throw IndexOutOfRange("form index " + std::to_string(k) + " outside 1..48");
    return fs[static_cast<size_t>(k) - 1];
}

RealMatrix form_matrix(const std::array<std::array<int, 4>, 4>& m) {
    RealMatrix r(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.at(i, j) = m[i][j];
    return r;
}

RealMatrix q_map(int k, const Quaternion& q) {
    const RepresentationForm& f = form(k);
    RealMatrix r(4, 4);
    for (int i = 0; i < 4; ++i) {
        r.at(i, i) += q.c[0];
        for (int j = 0; j < 4; ++j) {
            if (f.H[i][j] != 0) r.at(i, j) += q.c[1] * f.H[i][j];
            if (f.J[i][j] != 0) r.at(i, j) += q.c[2] * f.J[i][j];
            if (f.K[i][j] != 0) r.at(i, j) += q.c[3] * f.K[i][j];
        }
    }
    return r;
}

Quaternion q_unmap(int k, const RealMatrix& m) {
    if (m.rows != 4 || m.cols != 4) throw DimensionMismatch("q_unmap: matrix must be 4x4");
    const RepresentationForm& f = form(k);
    // {E, H, J, K} is an orthogonal family under the trace inner product,
    // each of squared norm 4, so coordinates are projections.
    Quaternion q;
    for (int i = 0; i < 4; ++i) {
        q.c[0] += m.at(i, i);
        for (int j = 0; j < 4; ++j) {
            if (f.H[i][j] != 0) q.c[1] += m.at(i, j) * f.H[i][j];
            if (f.J[i][j] != 0) q.c[2] += m.at(i, j) * f.J[i][j];
            if (f.K[i][j] != 0) q.c[3] += m.at(i, j) * f.K[i][j];
        }
    }
    for (auto& c : q.c) c /= 4;
    if (!(q_map(k, q) == m))
        throw NotInRepresentation("q_unmap: matrix outside span of form " + std::to_string(k));
    return q;
}

RealMatrix p_map(int k, const QuaternionMatrix& a) {
    RealMatrix r(4 * a.rows, 4 * a.cols);
    for (int bi = 0; bi < a.rows; ++bi)
        for (int bj = 0; bj < a.cols; ++bj) {
            const Quaternion& q = a.at(bi, bj);
            if (q.is_zero()) continue;
            RealMatrix blk = q_map(k, q);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) r.at(4 * bi + i, 4 * bj + j) = blk.at(i, j);
        }
    return r;
}

int p_rank(const RealMatrix& m) {
    int r = rmat_rank(m);
    if (r % 4 != 0)
        throw RankNotMultipleOfFour("p_rank: rank " + std::to_string(r) +
                                    " is not a multiple of four; input is not a block image");
    return r;
}

QuaternionMatrix convert_form(const QuaternionMatrix& a, int k, int kt) {
    QuaternionMatrix b(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) b.at(i, j) = q_unmap(kt, q_map(k, a.at(i, j)));
    return b;
}

const std::array<RealMatrix, 3>& conjugation_matrices() {
    static const std::array<RealMatrix, 3> ls = [] {
        auto make = [](std::initializer_list<int> v) {
            RealMatrix m(4, 4);
            int idx = 0;
            for (int x : v) m.data[idx++] = x;
            return m;
        };
        return std::array<RealMatrix, 3>{
            make({0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0}),
            make({0, 0, -1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 1, 0, 0}),
            make({0, 0, 0, -1, 0, 0, 1, 0, 0, -1, 0, 0, 1, 0, 0, 0})};
    }();
    return ls;
}

bool elementary_conjugation_check(const Quaternion& q) {
    const RealMatrix qm = q_map(1, q);
    for (const RealMatrix& l : conjugation_matrices()) {
        RealMatrix lhs = rmat_mul(rmat_mul(l, qm), l.transpose());
        if (!(lhs == qm)) return false;
    }
    return true;
}

} // namespace qleig
