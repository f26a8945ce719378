#pragma once
/**
 * @file solver.hpp
 * @brief Solver-agnostic contract for continuous conic programs (LP/SOCP)
 *        with certificate extraction, plus the interior-point computation
 *        used by the polar normalization.
 *
 * This is the only seam through which the rest of the library talks to a
 * numerical optimizer; everything downstream consumes SolveResult.  The
 * bundled backend is the homogeneous self-dual interior-point method in
 * src/ipm.*, but any method able to produce the same statuses and
 * certificates can be substituted behind solve().
 */

#include "coniccut/cones.hpp"
#include "coniccut/instance.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace coniccut {

/// Unrecoverable backend failure (never used for mere non-convergence).
class SolveError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// min c'x s.t. Ax = b, x in K.  Cone blocks must come from
/// {Free, NonNeg, NonPos, SOC}; rotated blocks are rewritten upstream.
struct ConicProgram {
    Vector c;
    SparseMatrix A;
    Vector b;
    ConeProduct cones;
    std::optional<Vector> warm_start;  // advisory; backends may ignore it
};

enum class SolveStatus {
    Optimal,           ///< primal/dual pair within tolerances
    PrimalInfeasible,  ///< verified Farkas certificate available
    DualInfeasible,    ///< verified unbounded ray available
    Stalled,           ///< no certificate, but x is primal-feasible to 1e-6
    IterLimit,         ///< gave up without a usable iterate
};

const char* solve_status_name(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::IterLimit;
    Vector x;        ///< primal point (best iterate when Stalled)
    Vector y;        ///< equality multipliers; c - A'y in K* at optimality
    Vector z;        ///< reduced costs c - A'y (the K* multiplier)
    double obj = 0.0;
    double dual_obj = 0.0;  ///< b'y, for weak-duality checks
    int iterations = 0;

    /// PrimalInfeasible: y with -A'y in K*, scaled so b'y = 1.
    std::optional<Vector> farkas_y;
    /// DualInfeasible: ray x with Ax = 0, x in K, scaled so c'x = -1.
    std::optional<Vector> ray_x;
};

struct SolveOptions {
    int max_iterations = 200;
    double feastol = 1e-8;
    double relgap = 1e-8;
};

/// Solve the program.  Certificates are re-verified before being reported;
/// when verification fails the status degrades to Stalled or IterLimit
/// rather than ever returning an unverified claim.  Backend breakdowns
/// (factorization failure on valid input) raise SolveError.
SolveResult solve(const ConicProgram& program, const SolveOptions& options = {});

/// Well-centered relaxation point for the polar normalization.
struct AnalyticCenter {
    Vector x;                       ///< Ax = b, x in K (interior iff flagged)
    bool strictly_interior = false; ///< margin above threshold AND rank(A) < n
    double margin = 0.0;            ///< largest t with x - t*rho in K, t <= 1
};

/// Compute an interior point of {Ax = b, x in K} by maximizing the margin
/// along the canonical interior direction.  The point of a weakly feasible
/// relaxation (zero margin, or a feasible set pinned to a single point by
/// rank(A) = n) is still returned but flagged, so callers can fall back to
/// another normalization.  An infeasible relaxation raises SolveError.
AnalyticCenter analytic_center(const StandardProblem& problem,
                               const SolveOptions& options = {});

}  // namespace coniccut
