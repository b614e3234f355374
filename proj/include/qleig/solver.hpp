#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qleig/charpoly.hpp"
#include "qleig/quaternion.hpp"
#include "qleig/spectra.hpp"

namespace qleig {

struct SolveConfig {
    double tol_residual = 1e-10;
    double tol_newton = 1e-12;
    double tol_cluster = 1e-7;
    int n_starts = 2000;
    int max_iter = 100;
    std::uint64_t rng_seed = 0;
    double search_radius_scale = 1.25;
};

// Certified candidate left eigenvalue. Fields newton_residual and
// jacobian_rank are -1 when the certifying path had no polynomial system at
// hand (verify_left_eigenvalue does a pure pencil check).
struct EigenCertificate {
    std::array<double, 4> lambda{0.0, 0.0, 0.0, 0.0};
    double newton_residual = -1.0;
    double pencil_sigma_min = 0.0;
    std::vector<std::array<double, 4>> eigenvector;
    double vector_residual = 0.0;
    int jacobian_rank = -1;
    bool accepted = false;
};

// Multistart bookkeeping: how many Newton starts ran, how many converged,
// and the basin size of every surviving root (isolated roots first, then
// manifold seeds, both in output order).
struct CoverageStats {
    int starts = 0;
    int converged = 0;
    double fraction = 0.0;
    std::vector<long> basin_counts;
};

struct SolutionSet {
    std::vector<EigenCertificate> isolated;
    std::vector<EigenCertificate> manifold_points;
    bool manifold_flag = false;
    AnnulusBound annulus;
    CoverageStats coverage;
};

// Multistart damped Newton over the reduced polynomial system, followed by
// eigenpair refinement, certification, clustering, and rank classification.
// Throws NoConvergence when not a single start converges. An empty but
// converged result is legal and returned as such. Honors the QS_THREADS
// environment variable for running starts concurrently; output is identical
// for every thread count.
SolutionSet solve_left_eigenvalues(const QuaternionMatrix& A, const SolveConfig& cfg = {});

// Same, but reuses an already constructed characteristic system for A so
// callers that need both the symbolic dump and the roots build it once.
SolutionSet solve_left_eigenvalues(const QuaternionMatrix& A, const SolveConfig& cfg,
                                   const CharSystem& prebuilt);

// Pure numeric check of one candidate: smallest singular value of the pencil
// at lambda, the folded null direction as eigenvector, and the relative
// residual of A v = lambda v.
EigenCertificate verify_left_eigenvalue(const QuaternionMatrix& A, const Quaternion& lambda,
                                        double tol);

// Perturbs a rank-deficient seed along the numeric Jacobian null space and
// re-converges, producing up to k certified points on the solution manifold.
// Throws ManifoldCollapse when fewer than k/2 distinct points certify and
// std::invalid_argument when the seed has full Jacobian rank.
std::vector<EigenCertificate> sample_manifold(const QuaternionMatrix& A,
                                              const EigenCertificate& seed, int k,
                                              const SolveConfig& cfg);

// Forwards the certified eigenvalues of s to the right-spectrum norm check.
bool domination_check(const QuaternionMatrix& A, const SolutionSet& s);

}  // namespace qleig
