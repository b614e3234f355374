#include "qleig/scalar.hpp"

#include <cctype>
#include <cstdio>

#include "qleig/rmatrix.hpp"

namespace qleig {

// ---------------------------------------------------------------------------
// Scalar helpers (declared in scalar.hpp).

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double mant = std::frexp(x, &exp); // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    long long scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rat r(scaled);
    if (exp > 0) {
        r *= Rat(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rat(BigInt(1) << (-exp));
    }
    return r;
}

Rat rat_from_string(const std::string& s) {
    auto bad = [&]() { return std::invalid_argument("rat_from_string: cannot parse '" + s + "'"); };
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw bad();

    auto slash = t.find('/');
    if (slash != std::string::npos) {
        std::string num = t.substr(0, slash), den = t.substr(slash + 1);
        if (num.empty() || den.empty()) throw bad();
        try {
            BigInt n(num), d(den);
            if (d == 0) throw DivisionByZero("rat_from_string: zero denominator in '" + s + "'");
            return Rat(n, d);
        } catch (const DivisionByZero&) {
            throw;
        } catch (...) {
            throw bad();
        }
    }

    // Optional sign, digits, optional fractional part, optional exponent.
    size_t i = 0;
    bool neg = false;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) {
        neg = (t[i] == '-');
        ++i;
    }
    std::string int_part, frac_part;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) int_part += t[i++];
    if (i < t.size() && t[i] == '.') {
        ++i;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) frac_part += t[i++];
    }
    long long exp10 = 0;
    if (i < t.size() && (t[i] == 'e' || t[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < t.size() && (t[i] == '+' || t[i] == '-')) {
            eneg = (t[i] == '-');
            ++i;
        }
        if (i >= t.size()) throw bad();
        std::string edig;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) edig += t[i++];
        if (edig.empty() || edig.size() > 6) throw bad();
        exp10 = std::stoll(edig);
        if (eneg) exp10 = -exp10;
    }
    if (i != t.size() || (int_part.empty() && frac_part.empty())) throw bad();

    BigInt digits(int_part.empty() && frac_part.empty() ? "0" : (int_part + frac_part).c_str());
    Rat r(digits);
    long long shift = exp10 - static_cast<long long>(frac_part.size());
    if (shift > 0) {
        BigInt p(1);
        for (long long j = 0; j < shift; ++j) p *= 10;
        r *= Rat(p);
    } else if (shift < 0) {
        BigInt p(1);
        for (long long j = 0; j < -shift; ++j) p *= 10;
        r /= Rat(p);
    }
    return neg ? -r : r;
}

std::string rat_to_string(const Rat& r) {
    std::string n = numerator(r).str();
    if (denominator(r) == 1) return n;
    return n + "/" + denominator(r).str();
}

std::string format_double(double x) {
    if (x == 0.0) x = 0.0; // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// Rational matrices.

RealMatrix rmat_mul(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols != b.rows) throw DimensionMismatch("rmat_mul: inner dimensions disagree");
    RealMatrix r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

RealMatrix rmat_add(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatch("rmat_add: shapes disagree");
    RealMatrix r(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] + b.data[i];
    return r;
}

RealMatrix rmat_sub(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatch("rmat_sub: shapes disagree");
    RealMatrix r(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] - b.data[i];
    return r;
}

int rmat_rank(const RealMatrix& m) {
    RealMatrix w = m;
    int rank = 0;
    int row = 0;
    for (int col = 0; col < w.cols && row < w.rows; ++col) {
        int piv = -1;
        for (int i = row; i < w.rows; ++i)
            if (w.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(row, j));
        const Rat p = w.at(row, col);
        for (int i = row + 1; i < w.rows; ++i) {
            if (w.at(i, col) == 0) continue;
            const Rat f = w.at(i, col) / p;
            w.at(i, col) = 0;
            for (int j = col + 1; j < w.cols; ++j) w.at(i, j) -= f * w.at(row, j);
        }
        ++row;
        ++rank;
    }
    return rank;
}

Rat rmat_det(const RealMatrix& m) {
    if (m.rows != m.cols) throw DimensionMismatch("rmat_det: matrix not square");
    const int n = m.rows;
    RealMatrix w = m;
    Rat det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (w.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(w.at(piv, j), w.at(col, j));
            det = -det;
        }
        const Rat p = w.at(col, col);
        det *= p;
        for (int i = col + 1; i < n; ++i) {
            if (w.at(i, col) == 0) continue;
            const Rat f = w.at(i, col) / p;
            for (int j = col; j < n; ++j) w.at(i, j) -= f * w.at(col, j);
        }
    }
    return det;
}

} // namespace qleig
