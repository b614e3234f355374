#pragma once

#include <vector>

#include "qleig/scalar.hpp"

namespace qleig {

// Dense row-major matrix over the exact rationals.
struct RealMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> data;

    RealMatrix() = default;
    RealMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

    Rat& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const RealMatrix& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }

    static RealMatrix identity(int n) {
        RealMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    RealMatrix transpose() const {
        RealMatrix t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    std::vector<double> to_doubles() const {
        std::vector<double> d(data.size());
        for (size_t i = 0; i < data.size(); ++i) d[i] = to_double(data[i]);
        return d;
    }
};

RealMatrix rmat_mul(const RealMatrix& a, const RealMatrix& b);
RealMatrix rmat_add(const RealMatrix& a, const RealMatrix& b);
RealMatrix rmat_sub(const RealMatrix& a, const RealMatrix& b);

// Exact rank via fraction-free Gaussian elimination with full pivot search.
int rmat_rank(const RealMatrix& m);

// Exact determinant (Bareiss). Square input only.
Rat rmat_det(const RealMatrix& m);

} // namespace qleig
