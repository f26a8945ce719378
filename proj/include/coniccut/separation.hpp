#pragma once
/**
 * @file separation.hpp
 * @brief Cut separation: the compact cut-generating conic program under
 *        five normalizations, the matching membership problem used for
 *        duality cross-checks, and the trivial-cut machinery (detection,
 *        closed-form shortcut, disaggregation).
 *
 * Separating a point xbar (with A xbar = b) from a disjunction means
 * minimizing alpha'xbar - beta over the certified cuts of model.hpp.
 * That feasible set is a cone, so it is intersected with a normalization:
 *
 *   alpha   : ||alpha||_2 <= 1
 *   polar   : gamma'alpha <= 1  for a fixed interior direction gamma
 *   standard: sum_h (rho'lambda_h + sigma_h'v_h) <= 1
 *   trivial : sum_h sigma_h'v_h <= 1
 *   uniform : sum_h rho'lambda_h <= 1
 *
 * For two-term splits the program is built in the compact form that fixes
 * u_1 = 0 and eliminates (alpha, beta); general disjunctions route to an
 * explicit-variable builder with the same contract.
 */

#include "coniccut/model.hpp"
#include "coniccut/solver.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace coniccut {

struct Normalization {
    enum class Kind { Alpha, Polar, Standard, Trivial, Uniform };
    Kind kind = Kind::Standard;
    std::optional<Vector> gamma;        // polar direction (required for Polar)
    std::optional<InteriorPoint> rho;   // standard/uniform; defaults to the
                                        // canonical interior point of K
};

const char* normalization_name(Normalization::Kind kind);
std::optional<Normalization::Kind> normalization_from_name(
    const std::string& name);

Normalization alpha_normalization();
Normalization standard_normalization(
    std::optional<InteriorPoint> rho = std::nullopt);
Normalization trivial_normalization();
Normalization uniform_normalization(
    std::optional<InteriorPoint> rho = std::nullopt);
Normalization polar_normalization(Vector gamma);

/// Polar normalization with gamma = analytic_center(problem) - xbar.
/// Empty when the relaxation has no strictly interior point to anchor to
/// (the direction would be meaningless, so none is invented).
std::optional<Normalization> polar_from_center(const StandardProblem& problem,
                                               const Vector& xbar,
                                               const SolveOptions& options = {});

/// A separation program together with the variable layout needed to read
/// multipliers back out of a solver point.
struct CgcpProgram {
    ConicProgram program;
    bool compact = true;  // two-term split form with u_1 = 0
    int n = 0;            // problem variables
    int m = 0;            // problem rows
    int num_terms = 0;

    // compact layout
    int u2_offset = 0;      // m entries
    int lambda1_offset = 0;  // n entries
    int lambda2_offset = 0;  // n entries
    int v_offset = 0;        // v1, v2, t1, t2 in that order
    Vector pi;               // split direction
    double pi0 = 0.0;

    // general layout
    int alpha_offset = 0;
    int beta_offset = 0;
    std::vector<int> u_offset;       // per term
    std::vector<int> lambda_offset;  // per term
    std::vector<int> v_term_offset;  // per term
    std::vector<int> t_offset;       // per term

    Normalization norm;
};

CgcpProgram build_cgcp(const StandardProblem& problem,
                       const Disjunction& disjunction, const Vector& xbar,
                       const Normalization& norm);

/// Routing predicate shared by build_cgcp and build_mcp: a tagged two-term
/// disjunction whose sides are single inequalities gets the compact form.
bool is_two_term_split(const Disjunction& disjunction);

/// Reads (alpha, beta, u_h, lambda_h, v_h) out of a solver point for the
/// program built by build_cgcp and evaluates the violation at xbar.
CutCandidate reconstruct_cut(const CgcpProgram& cgcp, const Vector& solution,
                             const Vector& xbar);

/// The membership side: decides whether xbar sits in the closed convex
/// hull of the disjunction, in the geometry induced by the normalization.
/// Solved only for cross-checks; its optimal value is the negative of the
/// matching separation program's.
struct McpProgram {
    ConicProgram program;
    Normalization::Kind kind = Normalization::Kind::Standard;
    int n = 0;
    int m = 0;
    int num_terms = 0;
    std::vector<int> y_offset;  // per term (k_h when substituted)
    int z_offset = 0;           // num_terms convex weights
    std::vector<int> q_offset;  // per term surplus block
    int eta_offset = -1;        // scalar recession weight (when present)
    int w_offset = -1;          // (w0, r) second-order block (alpha variant)
    bool substituted = false;   // k_h = y_h + eta*rho variable change
    Vector rho;                 // interior point used by the substitution
    // Splits under the ball/polar normalizations mirror the separation
    // side's pinned first-term row multipliers: that term's equality rows
    // are omitted so the two programs stay an exact primal-dual pair.
    bool first_term_rows_dropped = false;
};

McpProgram build_mcp(const StandardProblem& problem,
                     const Disjunction& disjunction, const Vector& xbar,
                     const Normalization& norm);

/// Hull point sum_h y_h reconstructed from a solver point (undoes the
/// k_h = y_h + eta*rho substitution when one was applied).
Vector mcp_point(const McpProgram& mcp, const Vector& solution);
double mcp_eta(const McpProgram& mcp, const Vector& solution);

/// Closed-form optimum for conic-infeasible points under the standard
/// normalization: when eta_bar >= tau_bar_h / H for every term, an optimal
/// solution is the trivial cut lambda0'x >= 0 where lambda0 supports
/// xi = xbar + eta_bar*rho (lambda0'xi = 0, rho'lambda0 = 1/H), with
/// objective value -eta_bar/H.  Returns nothing when the test fails.
std::optional<CutCandidate> kstar_shortcut(const StandardProblem& problem,
                                           const Disjunction& disjunction,
                                           const Vector& xbar,
                                           const InteriorPoint& rho);

/// One sparse cut lambda_B'x_B >= 0 per cone block carrying a nonzero
/// component of lambda (full-length vectors, zero off the block).
std::vector<Vector> disaggregate_kstar(const Vector& lambda,
                                       const ConeProduct& K);

struct SeparationConfig {
    SolveOptions solver;
    double no_cut_threshold = 1e-4;  // objective above -threshold => no cut
    double kstar_tol = 1e-7;         // ||v_h||_inf below => trivial cut
    bool try_shortcut = true;        // closed form before solving
};

struct SeparationOutcome {
    std::optional<CutCandidate> cut;
    double cgcp_obj = 0.0;  // -inf when an unbounded ray was harvested
    SolveStatus status = SolveStatus::Optimal;
    bool solver_failed = false;  // backend error; status then meaningless
    std::string message;
    std::vector<Vector> disaggregated_kstar;
    bool shortcut_used = false;
    int iterations = 0;
};

/// Builds and solves the separation program, reconstructs and classifies
/// the cut, harvests unbounded rays and stalled iterates, and never lets
/// a numerical failure escape as an exception.
SeparationOutcome separate(const StandardProblem& problem,
                           const Disjunction& disjunction, const Vector& xbar,
                           const Normalization& norm,
                           const SeparationConfig& config = {});

}  // namespace coniccut
