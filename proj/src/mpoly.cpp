#include "qleig/mpoly.hpp"

#include <algorithm>

#include "qleig/errors.hpp"

namespace qleig {

void MultiPoly4::add_term(const std::array<int, 4>& e, const Rat& c) {
    if (c == 0) return;
    const uint64_t k = pack(e[0], e[1], e[2], e[3]);
    auto it = terms.find(k);
    if (it == terms.end()) {
        terms.emplace(k, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

MultiPoly4 MultiPoly4::constant(const Rat& c) {
    MultiPoly4 p;
    if (c != 0) p.terms.emplace(pack(0, 0, 0, 0), c);
    return p;
}

MultiPoly4 MultiPoly4::variable(int i) {
    if (i < 0 || i > 3) throw IndexOutOfRange("variable index outside 0..3");
    std::array<int, 4> e{0, 0, 0, 0};
    e[static_cast<size_t>(i)] = 1;
    return monomial(e, Rat(1));
}

MultiPoly4 MultiPoly4::monomial(const std::array<int, 4>& e, const Rat& c) {
    MultiPoly4 p;
    p.add_term(e, c);
    return p;
}

MultiPoly4 poly_add(const MultiPoly4& a, const MultiPoly4& b) {
    MultiPoly4 r = a;
    for (const auto& [k, c] : b.terms) {
        auto it = r.terms.find(k);
        if (it == r.terms.end()) {
            r.terms.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) r.terms.erase(it);
        }
    }
    return r;
}

MultiPoly4 poly_sub(const MultiPoly4& a, const MultiPoly4& b) {
    MultiPoly4 r = a;
    for (const auto& [k, c] : b.terms) {
        auto it = r.terms.find(k);
        if (it == r.terms.end()) {
            r.terms.emplace(k, -c);
        } else {
            it->second -= c;
            if (it->second == 0) r.terms.erase(it);
        }
    }
    return r;
}

MultiPoly4 poly_neg(const MultiPoly4& a) {
    MultiPoly4 r = a;
    for (auto& [k, c] : r.terms) c = -c;
    return r;
}

MultiPoly4 poly_scale(const MultiPoly4& a, const Rat& c) {
    if (c == 0) return {};
    MultiPoly4 r = a;
    for (auto& [k, v] : r.terms) v *= c;
    return r;
}

MultiPoly4 poly_mul(const MultiPoly4& a, const MultiPoly4& b) {
    if (a.is_zero() || b.is_zero()) return {};
    // Accumulate raw products, then sort and merge once. Exponent packing
    // makes monomial multiplication a key addition.
    std::vector<std::pair<uint64_t, Rat>> prod;
    prod.reserve(a.terms.size() * b.terms.size());
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) prod.emplace_back(ka + kb, ca * cb);
    std::sort(prod.begin(), prod.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    MultiPoly4 r;
    size_t i = 0;
    while (i < prod.size()) {
        uint64_t k = prod[i].first;
        Rat c = std::move(prod[i].second);
        ++i;
        while (i < prod.size() && prod[i].first == k) {
            c += prod[i].second;
            ++i;
        }
        if (c != 0) r.terms.emplace_hint(r.terms.end(), k, std::move(c));
    }
    return r;
}

MultiPoly4 poly_divide_exact(const MultiPoly4& num, const MultiPoly4& den) {
    if (den.is_zero()) throw DivisionByZero("poly_divide_exact: zero divisor");
    MultiPoly4 q;
    MultiPoly4 r = num;
    const auto dlead = *den.terms.rbegin();
    const auto de = MultiPoly4::unpack(dlead.first);
    while (!r.is_zero()) {
        const auto rlead = *r.terms.rbegin();
        const auto re = MultiPoly4::unpack(rlead.first);
        std::array<int, 4> qe{};
        for (int i = 0; i < 4; ++i) {
            qe[static_cast<size_t>(i)] = re[static_cast<size_t>(i)] - de[static_cast<size_t>(i)];
            if (qe[static_cast<size_t>(i)] < 0)
                throw std::logic_error("poly_divide_exact: division is not exact");
        }
        const Rat qc = rlead.second / dlead.second;
        q.add_term(qe, qc);
        // Subtract qc * x^qe * den from r in place.
        const uint64_t qkey = MultiPoly4::pack(qe[0], qe[1], qe[2], qe[3]);
        for (const auto& [dk, dc] : den.terms) {
            const uint64_t k = qkey + dk;
            auto it = r.terms.find(k);
            if (it == r.terms.end()) {
                r.terms.emplace(k, -qc * dc);
            } else {
                it->second -= qc * dc;
                if (it->second == 0) r.terms.erase(it);
            }
        }
    }
    return q;
}

namespace {

// Terms sorted descending pure-lex on (e0,e1,e2,e3); shared by rendering
// and the nested Horner evaluators.
struct FlatTerm {
    std::array<int, 4> e;
    const Rat* c;
};

std::vector<FlatTerm> flatten_desc_lex(const MultiPoly4& p) {
    std::vector<FlatTerm> v;
    v.reserve(p.terms.size());
    for (const auto& [k, c] : p.terms) v.push_back({MultiPoly4::unpack(k), &c});
    std::sort(v.begin(), v.end(), [](const FlatTerm& a, const FlatTerm& b) { return a.e > b.e; });
    return v;
}

template <typename T>
T tpow(const T& x, int e) {
    T r = T(1);
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

// Horner over variable `var` on the half-open range [lo, hi) of terms that
// already agree on all earlier variables.
template <typename T>
T horner(const std::vector<FlatTerm>& ts, size_t lo, size_t hi, int var, const std::array<T, 4>& x) {
    if (var == 4) return T(*ts[lo].c); // single term remains
    T acc = T(0);
    int prev_exp = -1;
    size_t i = lo;
    while (i < hi) {
        const int e = ts[i].e[static_cast<size_t>(var)];
        size_t j = i;
        while (j < hi && ts[j].e[static_cast<size_t>(var)] == e) ++j;
        if (prev_exp < 0) {
            acc = horner(ts, i, j, var + 1, x);
        } else {
            acc = acc * tpow(x[static_cast<size_t>(var)], prev_exp - e) + horner(ts, i, j, var + 1, x);
        }
        prev_exp = e;
        i = j;
    }
    if (prev_exp > 0) acc = acc * tpow(x[static_cast<size_t>(var)], prev_exp);
    return acc;
}

template <typename T>
T eval_impl(const MultiPoly4& p, const std::array<T, 4>& x) {
    if (p.is_zero()) return T(0);
    const auto ts = flatten_desc_lex(p);
    return horner(ts, 0, ts.size(), 0, x);
}

} // namespace

double poly_eval(const MultiPoly4& p, const std::array<double, 4>& x) { return eval_impl(p, x); }

Rat poly_eval_exact(const MultiPoly4& p, const std::array<Rat, 4>& x) { return eval_impl(p, x); }

MultiPoly4 poly_partial(const MultiPoly4& p, int var) {
    if (var < 0 || var > 3) throw IndexOutOfRange("poly_partial: variable index outside 0..3");
    MultiPoly4 r;
    for (const auto& [k, c] : p.terms) {
        auto e = MultiPoly4::unpack(k);
        const int ev = e[static_cast<size_t>(var)];
        if (ev == 0) continue;
        e[static_cast<size_t>(var)] = ev - 1;
        r.add_term(e, c * ev);
    }
    return r;
}

std::string render_poly(const MultiPoly4& p) {
    if (p.is_zero()) return "0";
    const auto ts = flatten_desc_lex(p);
    std::string out;
    bool first = true;
    for (const auto& t : ts) {
        const Rat& c = *t.c;
        const bool neg = c < 0;
        const Rat ac = neg ? Rat(-c) : c;
        std::string mono;
        for (int v = 0; v < 4; ++v) {
            const int e = t.e[static_cast<size_t>(v)];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "l" + std::to_string(v);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        std::string body;
        if (mono.empty()) {
            body = rat_to_string(ac);
        } else if (ac == 1) {
            body = mono;
        } else {
            body = rat_to_string(ac) + "*" + mono;
        }
        if (first) {
            out += (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

MultiPoly4 poly_det_cofactor(const PolyMatrix& m) {
    if (m.rows != m.cols) throw DimensionMismatch("poly_det: matrix not square");
    const int n = m.rows;
    if (n == 0) return MultiPoly4::constant(Rat(1));
    if (n == 1) return m.at(0, 0);
    std::vector<int> cols(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) cols[static_cast<size_t>(j)] = j;
    // Expand along the first row, recursing on column subsets.
    struct Rec {
        const PolyMatrix& m;
        MultiPoly4 run(int row, std::vector<int>& cols) {
            const size_t n = cols.size();
            if (n == 1) return m.at(row, cols[0]);
            MultiPoly4 acc;
            for (size_t j = 0; j < n; ++j) {
                const MultiPoly4& a = m.at(row, cols[j]);
                if (a.is_zero()) continue;
                std::vector<int> sub;
                sub.reserve(n - 1);
                for (size_t t = 0; t < n; ++t)
                    if (t != j) sub.push_back(cols[t]);
                MultiPoly4 term = poly_mul(a, run(row + 1, sub));
                acc = (j % 2 == 0) ? poly_add(acc, term) : poly_sub(acc, term);
            }
            return acc;
        }
    } rec{m};
    return rec.run(0, cols);
}

MultiPoly4 poly_det_bareiss(const PolyMatrix& m) {
    if (m.rows != m.cols) throw DimensionMismatch("poly_det: matrix not square");
    const int n = m.rows;
    if (n == 0) return MultiPoly4::constant(Rat(1));
    PolyMatrix w = m;
    int sign = 1;
    MultiPoly4 prev = MultiPoly4::constant(Rat(1));
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k).is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (!w.at(i, k).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) return {}; // column of zeros below the diagonal
            for (int j = k; j < n; ++j) std::swap(w.at(k, j), w.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                MultiPoly4 t = poly_sub(poly_mul(w.at(k, k), w.at(i, j)),
                                        poly_mul(w.at(i, k), w.at(k, j)));
                w.at(i, j) = t.is_zero() ? MultiPoly4{} : poly_divide_exact(t, prev);
            }
            w.at(i, k) = {};
        }
        prev = w.at(k, k);
    }
    MultiPoly4 det = w.at(n - 1, n - 1);
    return sign < 0 ? poly_neg(det) : det;
}

MultiPoly4 poly_det(const PolyMatrix& m) {
    if (m.rows != m.cols) throw DimensionMismatch("poly_det: matrix not square");
    return m.rows <= 4 ? poly_det_cofactor(m) : poly_det_bareiss(m);
}

MultiPoly4 poly_minor(const PolyMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    if (rows.size() != cols.size()) throw DimensionMismatch("poly_minor: index lists differ in length");
    for (int r : rows)
        if (r < 0 || r >= m.rows) throw IndexOutOfRange("poly_minor: row index " + std::to_string(r));
    for (int c : cols)
        if (c < 0 || c >= m.cols) throw IndexOutOfRange("poly_minor: column index " + std::to_string(c));
    const int n = static_cast<int>(rows.size());
    PolyMatrix sub(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sub.at(i, j) = m.at(rows[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]);
    return poly_det(sub);
}

RealMatrix poly_matrix_eval_exact(const PolyMatrix& m, const std::array<Rat, 4>& x) {
    RealMatrix r(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(i, j) = poly_eval_exact(m.at(i, j), x);
    return r;
}

} // namespace qleig
