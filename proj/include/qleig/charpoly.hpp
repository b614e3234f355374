#pragma once

#include <array>
#include <vector>

#include "qleig/forms.hpp"
#include "qleig/mpoly.hpp"
#include "qleig/quaternion.hpp"

namespace qleig {

// Symbolic pencil: the 4m x 4m real image of A - lambda*I under the first
// representation form, with the four real coordinates of lambda kept as
// polynomial unknowns l0..l3.
struct Pencil {
    int m = 0;
    PolyMatrix P;
    QuaternionMatrix A;
};

Pencil build_pencil(const QuaternionMatrix& A);

// Choice of one block row and one block column to delete when carving the
// bordered minors out of the pencil. kept_rows/kept_cols list the surviving
// row and column indices (0-based, ascending) of the trimmed square matrix
// whose generic rank must be 4(m-1) for the reduction to apply. n is the
// trimmed generic rank divided by four, as observed at rational probe points.
struct PivotChoice {
    int i_del = 1;
    int j_del = 1;
    int n = 0;
    std::vector<int> kept_rows;
    std::vector<int> kept_cols;
};

PivotChoice select_pivot_block(const Pencil& pen);

// The sixteen bordered minors of order 4m-3. Minor t keeps row r of the
// deleted block row and column c of the deleted block column on top of the
// trimmed matrix; the numbering pairs (r,c) -> t as
//   (1,1)=1 (2,2)=2 (3,3)=3 (4,4)=4
//   (1,2)=5 (2,1)=6 (3,4)=7 (4,3)=8
//   (1,3)=9 (2,4)=10 (3,1)=11 (4,2)=12
//   (1,4)=13 (2,3)=14 (3,2)=15 (4,1)=16
// so that each row of the table is one sign chain: within a chain the minors
// agree up to the fixed signs in minor_chain_signs().
struct MinorSet {
    std::array<MultiPoly4, 16> C;
    int i_del = 1;
    int j_del = 1;
};

// (r, c) pair for minor t (1-based t in 1..16).
std::array<int, 2> minor_position(int t);

// Four chains of four minor indices each; entry k of a chain carries the
// sign relating it to the chain representative (entry 0).
const std::array<std::array<int, 4>, 4>& minor_chains();
const std::array<std::array<int, 4>, 4>& minor_chain_signs();

MinorSet extract_minors(const Pencil& pen, const PivotChoice& pivot);

// Checks the four sign chains exactly; throws RelationViolation on mismatch.
void verify_minor_relations(const MinorSet& minors);

// The reduced polynomial system whose real common zeros are the left
// eigenvalues of A written in coordinates.
struct CharSystem {
    int m = 0;
    bool trivial = false;          // m == 1, spectrum is the single entry
    Quaternion trivial_value;
    std::vector<MultiPoly4> F;     // 4 chain representatives, or 16 in fallback
    bool fallback_all16 = false;
    MinorSet minors;
    PivotChoice pivot;
};

CharSystem build_char_system(const QuaternionMatrix& A);

// Determinant of the full pencil, a single polynomial of degree 4m.
MultiPoly4 full_generalized_charpoly(const Pencil& pen);

}  // namespace qleig
