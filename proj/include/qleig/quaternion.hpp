#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qleig/scalar.hpp"

namespace qleig {

// Quaternion over the exact rationals, component order (re, h, j, k):
// q = q0 + q1*h + q2*j + q3*k with h*j = k, j*k = h, k*h = j and
// h^2 = j^2 = k^2 = -1.
struct Quaternion {
    Rat c[4];

    Quaternion() : c{0, 0, 0, 0} {}
    Quaternion(Rat w, Rat x, Rat y, Rat z) : c{std::move(w), std::move(x), std::move(y), std::move(z)} {}
    explicit Quaternion(Rat w) : c{std::move(w), 0, 0, 0} {}
    explicit Quaternion(long long w) : c{w, 0, 0, 0} {}

    const Rat& operator[](int i) const { return c[i]; }
    Rat& operator[](int i) { return c[i]; }

    bool operator==(const Quaternion& o) const {
        return c[0] == o.c[0] && c[1] == o.c[1] && c[2] == o.c[2] && c[3] == o.c[3];
    }
    bool operator!=(const Quaternion& o) const { return !(*this == o); }
    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
};

inline Quaternion q_add(const Quaternion& a, const Quaternion& b) {
    return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]};
}

inline Quaternion q_sub(const Quaternion& a, const Quaternion& b) {
    return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]};
}

inline Quaternion q_neg(const Quaternion& a) { return {-a.c[0], -a.c[1], -a.c[2], -a.c[3]}; }

inline Quaternion q_mul(const Quaternion& a, const Quaternion& b) {
    return {a.c[0] * b.c[0] - a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3],
            a.c[0] * b.c[1] + a.c[1] * b.c[0] + a.c[2] * b.c[3] - a.c[3] * b.c[2],
            a.c[0] * b.c[2] - a.c[1] * b.c[3] + a.c[2] * b.c[0] + a.c[3] * b.c[1],
            a.c[0] * b.c[3] + a.c[1] * b.c[2] - a.c[2] * b.c[1] + a.c[3] * b.c[0]};
}

inline Quaternion q_conj(const Quaternion& a) { return {a.c[0], -a.c[1], -a.c[2], -a.c[3]}; }

// Squared norm, kept exact. The norm itself is usually irrational.
inline Rat q_norm2(const Quaternion& a) {
    return a.c[0] * a.c[0] + a.c[1] * a.c[1] + a.c[2] * a.c[2] + a.c[3] * a.c[3];
}

inline Quaternion q_inv(const Quaternion& a) {
    Rat n2 = q_norm2(a);
    if (n2 == 0) throw DivisionByZero("q_inv of zero quaternion");
    Quaternion cj = q_conj(a);
    for (auto& x : cj.c) x /= n2;
    return cj;
}

// Two quaternions lie in the same similarity class exactly when their real
// parts and norms agree; with exact scalars this is a pair of equalities.
inline bool q_similar(const Quaternion& a, const Quaternion& b) {
    return a.c[0] == b.c[0] && q_norm2(a) == q_norm2(b);
}

inline Quaternion operator+(const Quaternion& a, const Quaternion& b) { return q_add(a, b); }
inline Quaternion operator-(const Quaternion& a, const Quaternion& b) { return q_sub(a, b); }
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return q_mul(a, b); }
inline Quaternion operator-(const Quaternion& a) { return q_neg(a); }

inline const Quaternion Q_ONE{Rat(1), Rat(0), Rat(0), Rat(0)};
inline const Quaternion Q_H{Rat(0), Rat(1), Rat(0), Rat(0)};
inline const Quaternion Q_J{Rat(0), Rat(0), Rat(1), Rat(0)};
inline const Quaternion Q_K{Rat(0), Rat(0), Rat(0), Rat(1)};

// Dense row-major quaternion matrix. Vectors are columns (cols == 1).
struct QuaternionMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Quaternion> data;

    QuaternionMatrix() = default;
    QuaternionMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

    Quaternion& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    const Quaternion& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const QuaternionMatrix& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }

    static QuaternionMatrix identity(int n) {
        QuaternionMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Q_ONE;
        return m;
    }
};

using QuaternionVector = QuaternionMatrix;

inline QuaternionMatrix mat_mul(const QuaternionMatrix& a, const QuaternionMatrix& b) {
    if (a.cols != b.rows) throw DimensionMismatch("mat_mul: inner dimensions disagree");
    QuaternionMatrix r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Quaternion& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols; ++j)
                r.at(i, j) = r.at(i, j) + q_mul(aik, b.at(k, j));
        }
    return r;
}

inline QuaternionMatrix mat_add(const QuaternionMatrix& a, const QuaternionMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatch("mat_add: shapes disagree");
    QuaternionMatrix r(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) r.data[i] = q_add(a.data[i], b.data[i]);
    return r;
}

inline QuaternionMatrix mat_sub(const QuaternionMatrix& a, const QuaternionMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatch("mat_sub: shapes disagree");
    QuaternionMatrix r(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) r.data[i] = q_sub(a.data[i], b.data[i]);
    return r;
}

// q * A, multiplying every entry from the left. Order matters.
inline QuaternionMatrix scalar_left_mul(const Quaternion& q, const QuaternionMatrix& a) {
    QuaternionMatrix r(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) r.data[i] = q_mul(q, a.data[i]);
    return r;
}

// A * q, multiplying every entry from the right.
inline QuaternionMatrix scalar_right_mul(const QuaternionMatrix& a, const Quaternion& q) {
    QuaternionMatrix r(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) r.data[i] = q_mul(a.data[i], q);
    return r;
}

// Double-precision quaternion for residual arithmetic in the numeric paths.
struct QuatD {
    double c[4] = {0, 0, 0, 0};
};

inline QuatD qd_from(const Quaternion& q) {
    return {to_double(q.c[0]), to_double(q.c[1]), to_double(q.c[2]), to_double(q.c[3])};
}

inline QuatD qd_mul(const QuatD& a, const QuatD& b) {
    return {{a.c[0] * b.c[0] - a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3],
             a.c[0] * b.c[1] + a.c[1] * b.c[0] + a.c[2] * b.c[3] - a.c[3] * b.c[2],
             a.c[0] * b.c[2] - a.c[1] * b.c[3] + a.c[2] * b.c[0] + a.c[3] * b.c[1],
             a.c[0] * b.c[3] + a.c[1] * b.c[2] - a.c[2] * b.c[1] + a.c[3] * b.c[0]}};
}

inline QuatD qd_sub(const QuatD& a, const QuatD& b) {
    return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]}};
}

inline double qd_norm2(const QuatD& a) {
    return a.c[0] * a.c[0] + a.c[1] * a.c[1] + a.c[2] * a.c[2] + a.c[3] * a.c[3];
}

} // namespace qleig
