#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qleig/rmatrix.hpp"
#include "qleig/scalar.hpp"

namespace qleig {

// Sparse polynomial in the four variables l0..l3 over exact rationals.
// Keys pack (total degree, e0, e1, e2) into 16-bit fields, so ascending
// key order is graded lexicographic order; e3 is implied. Zero
// coefficients are never stored.
struct MultiPoly4 {
    std::map<uint64_t, Rat> terms;

    static uint64_t pack(int e0, int e1, int e2, int e3) {
        const uint64_t t = static_cast<uint64_t>(e0 + e1 + e2 + e3);
        return (t << 48) | (static_cast<uint64_t>(e0) << 32) | (static_cast<uint64_t>(e1) << 16) |
               static_cast<uint64_t>(e2);
    }
    static std::array<int, 4> unpack(uint64_t k) {
        const int t = static_cast<int>(k >> 48);
        const int e0 = static_cast<int>((k >> 32) & 0xffff);
        const int e1 = static_cast<int>((k >> 16) & 0xffff);
        const int e2 = static_cast<int>(k & 0xffff);
        return {e0, e1, e2, t - e0 - e1 - e2};
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const MultiPoly4& o) const { return terms == o.terms; }

    // Total degree; -1 for the zero polynomial.
    int degree() const { return terms.empty() ? -1 : static_cast<int>(terms.rbegin()->first >> 48); }

    void add_term(const std::array<int, 4>& e, const Rat& c);

    static MultiPoly4 constant(const Rat& c);
    static MultiPoly4 variable(int i);
    static MultiPoly4 monomial(const std::array<int, 4>& e, const Rat& c);
};

MultiPoly4 poly_add(const MultiPoly4& a, const MultiPoly4& b);
MultiPoly4 poly_sub(const MultiPoly4& a, const MultiPoly4& b);
MultiPoly4 poly_neg(const MultiPoly4& a);
MultiPoly4 poly_mul(const MultiPoly4& a, const MultiPoly4& b);
MultiPoly4 poly_scale(const MultiPoly4& a, const Rat& c);

// Quotient of an exact division; throws std::logic_error when the division
// leaves a remainder (the fraction-free determinant guarantees exactness).
MultiPoly4 poly_divide_exact(const MultiPoly4& num, const MultiPoly4& den);

// Nested Horner evaluation, one variable at a time.
double poly_eval(const MultiPoly4& p, const std::array<double, 4>& x);
Rat poly_eval_exact(const MultiPoly4& p, const std::array<Rat, 4>& x);

MultiPoly4 poly_partial(const MultiPoly4& p, int var);

// Text form: terms in descending pure lexicographic exponent order,
// variables named l0..l3, e.g. "-l0^2 + 2*l0 - l1^2 - l2^2 + l3^2 - 2".
std::string render_poly(const MultiPoly4& p);

struct PolyMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<MultiPoly4> data;

    PolyMatrix() = default;
    PolyMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

    MultiPoly4& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    const MultiPoly4& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }
};

// Determinant over the polynomial ring: cofactor expansion up to 4x4,
// fraction-free elimination above that. Both agree; the split is a speed
// choice only.
MultiPoly4 poly_det(const PolyMatrix& m);
MultiPoly4 poly_det_bareiss(const PolyMatrix& m);
MultiPoly4 poly_det_cofactor(const PolyMatrix& m);

// Determinant of the submatrix picked by 0-based row and column index
// lists (strictly increasing, equal lengths). Throws IndexOutOfRange.
MultiPoly4 poly_minor(const PolyMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols);

// Evaluate a whole polynomial matrix at an exact point.
RealMatrix poly_matrix_eval_exact(const PolyMatrix& m, const std::array<Rat, 4>& x);

} // namespace qleig
