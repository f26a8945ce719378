#pragma once
/**
 * @file cutloop.hpp
 * @brief Root-node cutting-plane driver.
 *
 * Starting from the continuous relaxation of a mixed-integer conic
 * problem, the loop alternates relaxation solves with rounds of
 * disjunctive cut separation until no violated cut is found or a
 * round/time budget runs out.  Two relaxation modes are supported:
 *
 *  - OuterApprox (default): second-order blocks are dropped to free
 *    space and represented by an growing set of linear K* rows (initial
 *    seeds, plus subgradient refinements whenever the relaxation point
 *    strays too far from the cone).  Every relaxation solve is an LP.
 *  - Conic: the relaxation keeps its conic blocks and is re-solved as an
 *    SOCP each round; refinement is unnecessary and skipped.
 *
 * Each round: clean the point, refine the outer approximation, separate
 * one cut per fractional integer coordinate (most fractional first),
 * disaggregate dual-cone cuts, strengthen lift-and-project cuts on the
 * integer coordinates, clean and deduplicate, append, re-solve.
 *
 * Bounds are tracked in the standardized minimization space; gap-closed
 * percentages are invariant under the sign/offset mapping back to the
 * original objective, so callers may pass the best-known integer value
 * in original units.
 */

#include "coniccut/model.hpp"
#include "coniccut/separation.hpp"
#include "coniccut/solver.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace coniccut {

enum class RelaxationMode { OuterApprox, Conic };
const char* relaxation_mode_name(RelaxationMode m);

enum class LoopStatus {
    Running,         ///< internal: the loop has not finished
    NoViolatedCuts,  ///< a full round produced nothing new
    RoundLimit,
    TimeLimit,
    Infeasible,      ///< relaxation infeasible (bad instance)
    Unbounded,       ///< relaxation unbounded even after ray refinement
    SolverFailure,
};
const char* loop_status_name(LoopStatus s);

struct LoopConfig {
    Normalization norm;
    int max_rounds = 200;
    double eps_K = 0.05;   ///< conic-infeasibility level that triggers refinement
    int refine_cap = 50;   ///< LP re-solves per refinement phase
    double violation_threshold = 1e-4;  ///< CGCP objective above -this => no cut
    double clean_x = 1e-7;
    double clean_alpha = 1e-7;
    double clean_beta = 1e-8;
    RelaxationMode relaxation = RelaxationMode::OuterApprox;
    /// Best-known integer objective, in the ORIGINAL objective units
    /// (before the sign/offset standardization); absent => no gap columns.
    std::optional<double> z_micp;
    double time_limit_seconds = std::numeric_limits<double>::infinity();
    bool strengthen_cuts = true;  ///< monoidal strengthening of L&P cuts
    bool lift_cuts = false;       ///< separate on the support of xbar, lift back
    SolveOptions solver;
};

/// Per-round metrics (one CSV row).
struct RoundStats {
    int round = 0;          // 1-based
    int kstar = 0;          // disaggregated dual-cone cuts appended
    int landp = 0;          // lift-and-project cuts appended
    int refine_cuts = 0;    // outer-approximation refinement rows
    int strengthened = 0;   // L&P cuts that accepted a tilt
    double density_pct = 0.0;  // mean % nonzeros over this round's cuts
    double z_bound = 0.0;      // standardized relaxation bound after the round
    std::optional<double> gap_pct;
    double eta = 0.0;          // conic infeasibility of xbar after refinement
    bool refine_capped = false;
    double seconds = 0.0;
};

/// One stored relaxation row alpha'x >= beta (cleaned coefficients).
struct CutRecord {
    Vector alpha;
    double beta = 0.0;
    CutClass kind = CutClass::KStar;
    int round = 0;        // 0 = bootstrap seed
    std::string origin;   // "seed" | "refine" | "shortcut" | "disaggregated"
                          // | "cgcp" | "lifted"
    int coordinate = -1;  // split variable for L&P cuts
    bool strengthened = false;
};

struct Report {
    std::string instance;
    std::string normalization;
    std::string relaxation;
    std::string status;
    double z_cp = 0.0;    // conic relaxation bound (standardized space)
    double z_star = 0.0;  // final relaxation bound (standardized space)
    std::optional<double> z_micp;  // standardized, when supplied
    std::optional<double> gap_pct;
    double obj_sign = 1.0;    // original objective = obj_sign * z + obj_offset
    double obj_offset = 0.0;
    int total_kstar = 0;
    int total_landp = 0;
    int total_strengthened = 0;
    double seconds = 0.0;
    std::string message;
    std::vector<RoundStats> rounds;
    std::vector<CutRecord> cuts;
};

struct LoopState {
    StandardProblem problem;
    LoopConfig config;
    InteriorPoint rho;            // eta/strengthening interior point
    std::vector<bool> tilt_mask;  // integer or implied-integer coordinates
    /// Analytic center for the polar normalization: gamma is recomputed as
    /// center - xbar every time the point moves.
    std::optional<Vector> polar_center;
    std::vector<CutRecord> cuts;
    Vector xbar;          // current relaxation point (cleaned)
    double z_cp = 0.0;    // conic relaxation bound
    double z_star = 0.0;  // current relaxation bound
    LoopStatus status = LoopStatus::Running;
    std::string message;
    std::vector<RoundStats> rounds;
};

/// Thresholded copy: entries with |v_j| <= threshold become exactly zero
/// (boundary inclusive).
Vector clean(const Vector& v, double threshold);

/// 100*(z_star - z_cp)/(z_micp - z_cp), clamped into [0, 100].  Empty when
/// z_micp <= z_cp: the root gap must be strictly positive for the ratio to
/// mean anything.
std::optional<double> gap_closed(double z_cp, double z_micp, double z_star);

/// Bootstraps the loop: validates the config, seeds the outer
/// approximation, solves the conic relaxation for z_cp and the working
/// relaxation for the first xbar.  On relaxation infeasibility or
/// unboundedness the state comes back with the corresponding status
/// instead of throwing.
LoopState init_loop(const StandardProblem& problem, const LoopConfig& config);

struct RefineResult {
    int cuts_added = 0;
    int iterations = 0;  // LP re-solves
    bool capped = false;
    double eta = 0.0;  // conic infeasibility of xbar on exit
};

/// While the relaxation point is more than eps_K outside the cone, add
/// the supporting dual-cone row of every violated block (the subgradient
/// at the projection for second-order blocks, the bound row for scalar
/// blocks) and re-solve, up to refine_cap times.  No-op in Conic mode.
RefineResult refine(LoopState& state);

/// One full round.  Appends the stats row to state.rounds and returns it;
/// a round that appends no rows leaves the loop ready to terminate.
RoundStats run_round(LoopState& state);

/// Drives run_round until no cuts, max_rounds, or the time limit, then
/// assembles the report.
Report run(const StandardProblem& problem, const LoopConfig& config,
           const std::string& instance_name = "");

}  // namespace coniccut
