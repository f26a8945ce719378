#pragma once
/**
 * @file liftstrength.hpp
 * @brief Lifting reduced-space cuts back to the full space, and monoidal
 *        strengthening of split-cut coefficients on integer coordinates.
 *
 * Lifting: when xbar has entire cone blocks at zero, separation can run
 * on the kept coordinates only.  The dropped coefficients alpha_2 are
 * recovered afterwards as the rho-smallest vector dominating, in the
 * dual-cone order, every term's requirement A_2'u_h + D_{2,h}'v_h.  The
 * lifted cut keeps the reduced cut's right-hand side and its violation
 * at xbar exactly (the dropped coordinates of xbar are zero).
 *
 * Strengthening: for a two-term split, tilting the split direction by an
 * integral delta on integer coordinates leaves the disjunction valid for
 * the mixed-integer set, and each tilt re-prices the cut coefficients.
 * On scalar blocks the best tilt has a closed form (the classical
 * monoidal strengthening); on second-order blocks a small enumerated
 * grid of tilts is scored with one conic solve each.
 */

#include "coniccut/model.hpp"
#include "coniccut/solver.hpp"

#include <string>
#include <utility>
#include <vector>

namespace coniccut {

/// Partition of the coordinates (and cone blocks) of K by the support of
/// a point: a block is dropped exactly when every one of its coordinates
/// is 0.0, so the partition always respects block boundaries.
struct SupportSplit {
    std::vector<int> kept;     // original coordinate indices, ascending
    std::vector<int> dropped;  // complement, ascending
    std::vector<std::size_t> kept_blocks;    // indices into K.blocks()
    std::vector<std::size_t> dropped_blocks;
    ConeProduct kept_cone;
    ConeProduct dropped_cone;
};

/// Splits on the exact zeros of xbar (clean the point beforehand).
SupportSplit support_split(const ConeProduct& K, const Vector& xbar);

/// The problem restricted to the kept coordinates: columns of A, entries
/// of c and the masks, blocks of K.  Rows and b are unchanged, so row
/// multipliers transfer between the two spaces verbatim.
StandardProblem reduce_problem(const StandardProblem& problem,
                               const SupportSplit& split);

/// Same column restriction applied to every term's D.  A split tag whose
/// variable was dropped is removed; otherwise its index is remapped.
Disjunction reduce_disjunction(const Disjunction& disjunction,
                               const SupportSplit& split);

Vector reduce_vector(const Vector& x, const SupportSplit& split);

struct LiftOutcome {
    CutCandidate cut;  // full-space, with lifted = true
    // Some block's conic solve failed and its coefficients fall back to a
    // dominating-but-not-minimal construction (for a free block, where no
    // dominating choice may exist at all, the certificate can be invalid).
    bool fallback = false;
    std::string message;
};

/// Recovers a full-space cut from one that is certificate-valid for the
/// reduced problem and disjunction.  rho is an interior point of the FULL
/// cone; only its dropped-block components are read.
LiftOutcome lift(const StandardProblem& problem,
                 const Disjunction& disjunction, const SupportSplit& split,
                 const CutCandidate& reduced_cut, const InteriorPoint& rho,
                 const SolveOptions& options = SolveOptions{});

/// Integral tilt minimizing max(a1 - v1*d, a2 + v2*d) for a nonnegative
/// coordinate; the candidates sit astride the crossing (a1-a2)/(v1+v2),
/// so the search is exact.  Requires v1 + v2 > 0.  Returns the new
/// coefficient and the minimizing tilt (ties prefer the smaller tilt).
std::pair<double, long long> strengthened_coefficient(double a1, double a2,
                                                      double v1, double v2);

/// Mirror form for nonpositive coordinates: maximizes the minimum of the
/// same two lines (the dual order flips with the sign of the block).
std::pair<double, long long> strengthened_coefficient_nonpos(double a1,
                                                             double a2,
                                                             double v1,
                                                             double v2);

struct StrengthenOutcome {
    CutCandidate cut;
    bool strengthened = false;  // false => cut returned unchanged
    std::string message;        // reason when nothing was strengthened
};

/// Monoidal strengthening of a certificate-valid split cut.  mask selects
/// the coordinates whose tilt may be nonzero (integer or implied-integer
/// variables; the split variable itself is always excluded).  Scalar
/// blocks use the closed form; second-order blocks with up to four masked
/// coordinates are tilted by grid search over {-3..3} per coordinate with
/// one conic re-lift per candidate, keeping the rho-smallest.  The tilted
/// direction is recorded in the cut's pi_tilde and the violation is
/// re-evaluated at xbar.
StrengthenOutcome strengthen(const StandardProblem& problem,
                             const Disjunction& disjunction,
                             const CutCandidate& cut, const Vector& xbar,
                             const std::vector<bool>& mask,
                             const InteriorPoint& rho,
                             const SolveOptions& options = SolveOptions{});

}  // namespace coniccut
