#pragma once
/**
 * @file model.hpp
 * @brief Disjunctions, cut candidates, Farkas aggregation, and the cut
 *        certificate check — the shared vocabulary of separation.
 *
 * A disjunction is a finite union of terms, each restricting the base
 * relaxation {Ax = b, x in K} by extra conic rows D_h x >=_{Q_h} d_h.
 * A cut candidate alpha'x >= beta comes with per-term multipliers
 * (u_h, lambda_h, v_h) certifying validity through the aggregation
 * identity alpha = A'u_h + lambda_h + D_h'v_h and beta <= b'u_h + d_h'v_h.
 */

#include "coniccut/instance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coniccut {

/// One term of a disjunction: {x | Ax = b, x in K, D x >=_Q d}.
struct DisjunctiveTerm {
    SparseMatrix D;     // extra rows, n columns
    Vector d;           // right-hand side, one entry per row of D
    ConeProduct Q;      // cone ordering the extra rows
    InteriorPoint sigma;  // interior point of Q used for recession norms
};

/// Bookkeeping for elementary splits pi'x <= pi0  or  pi'x >= pi0 + 1.
struct SplitTag {
    int j = -1;          // split variable (pi = e_j when untilted)
    long long pi0 = 0;   // floor of the fractional value
    Vector pi;           // split direction, n entries
};

struct Disjunction {
    std::vector<DisjunctiveTerm> terms;
    std::optional<SplitTag> split_tag;

    int term_count() const { return static_cast<int>(terms.size()); }
};

enum class CutClass { LiftAndProject, KStar, None };
const char* cut_class_name(CutClass c);

/// A linear inequality alpha'x >= beta with its validity certificate.
/// Violation is alpha'xbar - beta: negative means xbar is cut off.
struct CutCandidate {
    Vector alpha;
    double beta = 0.0;
    std::vector<Vector> u;       // per term, one multiplier per row of A
    std::vector<Vector> lambda;  // per term, in K*
    std::vector<Vector> v;       // per term, in Q_h*
    double violation = 0.0;
    CutClass classification = CutClass::None;
    std::string normalization;
    std::optional<Vector> pi_tilde;  // tilted split direction, if any
    bool strengthened = false;
    bool lifted = false;
};

/// alpha = A'u + lambda, beta = b'u: a valid inequality for the continuous
/// relaxation whenever lambda in K* (u = 0 gives the trivial lambda'x >= 0).
/// Throws std::invalid_argument when lambda is not in K*.
std::pair<Vector, double> farkas_aggregate(const StandardProblem& problem,
                                           const Vector& u,
                                           const Vector& lambda);

/// Builds the two-term split (pi'x <= pi0) v (pi'x >= pi0 + 1) for an
/// arbitrary direction pi, encoded as rows (-pi'x >= -pi0) and
/// (pi'x >= pi0 + 1) with scalar nonnegative cones and sigma = 1.
Disjunction split_from_direction(const Vector& pi, long long pi0);

/// Elementary split on variable j at the fractional value xbar_j:
/// pi = e_j, pi0 = floor(xbar_j).  Throws std::invalid_argument when j is
/// not (implied-)integer or xbar_j is within 1e-6 of an integer.
Disjunction elementary_split(const StandardProblem& problem, int j,
                             double xbar_j);

/// Equivalent cut obtained by sliding along the row space:
/// (alpha - A'u0, beta - b'u0), multipliers u_h - u0.  The violation at
/// any point with Ax = b is unchanged.
CutCandidate shift_equivalent(const StandardProblem& problem,
                              const CutCandidate& cut, const Vector& u0);

/// Verifies the aggregation identity, the right-hand-side bound, and the
/// dual-cone memberships for every term.  On failure, *why (if given)
/// receives a human-readable reason.
bool cut_certificate_ok(const StandardProblem& problem,
                        const Disjunction& disjunction,
                        const CutCandidate& cut, std::string* why = nullptr);

/// JSON record of a cut (sparse alpha triplets, beta, classification,
/// violation, flags) for report files.
std::string cut_to_json(const CutCandidate& cut);

}  // namespace coniccut
