#pragma once

#include <stdexcept>
#include <string>

namespace qleig {

// Shape mismatch between operands (matrix sizes, vector lengths).
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Inversion or division touched a zero value.
struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

// A real 4x4 block does not lie in the span of {E, H, J, K} for the
// requested form, so it has no quaternion preimage there.
struct NotInRepresentation : std::domain_error {
    using std::domain_error::domain_error;
};

// The exact rank of a structured 4m x 4n block matrix came out as a
// non-multiple of four, which can only happen on corrupted input.
struct RankNotMultipleOfFour : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Row or column selection outside the matrix.
struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// One of the sixteen structured minors failed its expected sign identity.
// Carries the offending pair and the rendered difference polynomial.
struct RelationViolation : std::logic_error {
    RelationViolation(int lhs_index, int rhs_index, std::string difference)
        : std::logic_error("minor relation violated between C" + std::to_string(lhs_index) +
                           " and C" + std::to_string(rhs_index) + ", difference " + difference),
          lhs(lhs_index), rhs(rhs_index), diff(std::move(difference)) {}
    int lhs;
    int rhs;
    std::string diff;
};

// No Newton start converged at all.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A continuum candidate produced too few distinct certified samples.
struct ManifoldCollapse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative numeric kernel (Jacobi sweep set) hit its cap.
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The shifted QR eigenvalue iteration hit its cap.
struct QRNoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qleig
