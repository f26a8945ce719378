#pragma once
/**
 * @file oracle.hpp
 * @brief Independent ground-truth checkers used to audit the cut machinery:
 *        brute-force validation of a linear inequality over an enumerable
 *        mixed-integer conic feasible set, and the closed-form geometry of
 *        the planar split hull of a disk.
 *
 * Nothing here reuses the separation theory it is meant to check: validity
 * is established by enumerating integer assignments and solving the
 * continuous subproblems directly, and the planar support lines come from
 * elementary projections onto the hull boundary.
 */

#include "coniccut/instance.hpp"
#include "coniccut/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coniccut {

/// Bounds for brute-force enumeration, one entry per declared integer
/// variable in variable order.  Implied integers stay continuous in the
/// subproblems; their integrality is a consequence, not a degree of freedom.
struct EnumBox {
    std::vector<long long> lower;
    std::vector<long long> upper;

    /// Product of the per-variable range sizes (1 for no integers).
    double volume() const;

    /// The same [lo, hi] range for every declared integer of the problem.
    static EnumBox uniform(const StandardProblem& problem, long long lo,
                           long long hi);
};

enum class CutVerdict { Valid, Violated, Inconclusive };

const char* cut_verdict_name(CutVerdict v);

struct CutValidation {
    CutVerdict verdict = CutVerdict::Inconclusive;
    /// Violated only: a mixed-integer feasible point with
    /// alpha'witness < beta - 1e-6.
    std::optional<Vector> witness;
    /// Smallest alpha'x - beta over the solvable subproblems
    /// (absent when every assignment was infeasible).
    std::optional<double> worst_slack;
    long long assignments = 0;  ///< integer assignments enumerated
    long long feasible = 0;     ///< assignments with a nonempty subproblem
    std::string message;        ///< diagnosis for Violated/Inconclusive
};

/// Checks alpha'x >= beta over every x with Ax = b, x in K and the declared
/// integers fixed to each assignment in the box, by minimizing alpha'x per
/// assignment with the continuous solver.  Valid iff every solvable
/// subproblem has optimum >= beta - 1e-6 (the cut certificate tolerance);
/// an infeasible subproblem is vacuously satisfied; a subproblem the solver
/// cannot finish makes the verdict Inconclusive unless some other
/// assignment already produced a violation witness.  Enumeration runs in
/// parallel over assignments; the result is reduced deterministically
/// (smallest violating assignment wins).  Throws std::invalid_argument when
/// the box does not match the declared integers, has an empty range, or its
/// volume exceeds 1e6.
CutValidation validate_cut(const StandardProblem& problem, const Vector& alpha,
                           double beta, const EnumBox& box,
                           const SolveOptions& options = {});

/// A line a1*x1 + a2*x2 >= beta with a1^2 + a2^2 = 1.
struct SupportLine {
    double a1 = 0.0;
    double a2 = 0.0;
    double beta = 0.0;
};

/// Deepest supporting line at (x1, x2) of the planar split hull
///
///     conv( (D_R ∩ {x1 <= 0})  ∪  (D_R ∩ {x1 >= 1}) ),
///
/// where D_R is the origin-centered disk of radius R.  For R >= 1 this is
/// the top/bottom facet through (0, ±R) and (1, ±sqrt(R^2-1)) whenever the
/// point projects onto that segment, and otherwise the tangent of the disk
/// at the arc point nearest the query.  For R < 1 the right piece is empty
/// and the hull's only flat face is x1 = 0, which is returned as -x1 >= 0.
/// Throws std::invalid_argument for R <= 0.
SupportLine split_hull_support_2d(double R, double x1, double x2);

}  // namespace coniccut
