#pragma once

#include <array>
#include <vector>

#include "qleig/quaternion.hpp"
#include "qleig/rmatrix.hpp"

namespace qleig {

// One real 4x4 representation triple. H, J, K are signed permutation
// matrices with H^2 = J^2 = K^2 = H*J*K = -E; entries are -1, 0, 1.
struct RepresentationForm {
    int index = 0; // 1-based
    std::array<std::array<int, 4>, 4> H{};
    std::array<std::array<int, 4>, 4> J{};
    std::array<std::array<int, 4>, 4> K{};
};

// All 48 triples, found by exhaustive search over signed permutation
// matrices. Form 1 is the Hamilton left-regular triple whose H has first
// row (0,-1,0,0). The list is built once and cached; order is stable.
const std::vector<RepresentationForm>& enumerate_forms();

// 1-based lookup into enumerate_forms(). Throws IndexOutOfRange.
const RepresentationForm& form(int k);

RealMatrix form_matrix(const std::array<std::array<int, 4>, 4>& m);

// Q_k(q) = q0*E + q1*H_k + q2*J_k + q3*K_k.
RealMatrix q_map(int k, const Quaternion& q);

// Inverse of q_map on its image. Throws NotInRepresentation when M is not
// an exact combination of {E, H_k, J_k, K_k}.
Quaternion q_unmap(int k, const RealMatrix& m);

// Block matrix (Q_k(a_ij)) of size 4m x 4n.
RealMatrix p_map(int k, const QuaternionMatrix& a);

// Exact rank of a block image. Ranks of such matrices are multiples of
// four; anything else raises RankNotMultipleOfFour.
int p_rank(const RealMatrix& m);

// Entrywise change of representation: the unique B with
// p_map(kt, B) = p_map(k, A), when every block stays representable.
QuaternionMatrix convert_form(const QuaternionMatrix& a, int k, int kt);

// Checks the three fixed signed-permutation conjugations L * Q_1(q) * L^T
// that leave Q_1(q) invariant for every quaternion q. Exact.
bool elementary_conjugation_check(const Quaternion& q);

// The three conjugating matrices used by elementary_conjugation_check,
// exposed so tests can inspect them.
const std::array<RealMatrix, 3>& conjugation_matrices();

} // namespace qleig
