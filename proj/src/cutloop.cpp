// Root-node cutting-plane driver.  The relaxation is a plain conic program
// over the original variables plus one nonnegative slack per accumulated
// cut row; outer-approximation mode drops second-order blocks to free
// space and lets the seed/refinement rows carry the cone.  All solves go
// through the solver seam, every appended row is certificate-checked, and
// coordinate order is fixed so runs are reproducible.

#include "coniccut/cutloop.hpp"

#include "coniccut/liftstrength.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace coniccut {

namespace {

constexpr double kDupTol = 1e-9;        // duplicate-row match tolerance
constexpr double kRowViolationTol = 1e-9;  // block counts as violated above
constexpr double kMemberTol = 1e-7;     // dual/cone membership checks
constexpr double kFracTol = 1e-6;       // fractionality filter

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate_config(const StandardProblem& problem, const LoopConfig& c) {
    if (c.max_rounds < 0) throw std::invalid_argument("max_rounds < 0");
    if (c.refine_cap < 0) throw std::invalid_argument("refine_cap < 0");
    if (c.eps_K <= 0 || c.violation_threshold <= 0 || c.clean_x <= 0 ||
        c.clean_alpha <= 0 || c.clean_beta <= 0) {
        throw std::invalid_argument("loop tolerances must be positive");
    }
    if (c.eps_K <= c.clean_x) {
        throw std::invalid_argument(
            "eps_K must exceed the point-cleaning threshold");
    }
    for (const Cone& blk : problem.K.blocks()) {
        if (blk.kind == ConeKind::RSOC) {
            throw std::invalid_argument(
                "rotated blocks are rewritten by standardization; pass the "
                "instance through to_standard_form first");
        }
    }
}

// ---------------------------------------------------------------------
// Relaxation assembly
// ---------------------------------------------------------------------

// x variables first, then one nonnegative slack per cut row:
//   A x = b,  alpha_i'x - s_i = beta_i.
ConicProgram build_relaxation(const LoopState& s) {
    const StandardProblem& p = s.problem;
    const int n = p.num_vars();
    const int m = p.num_rows();
    const int k = static_cast<int>(s.cuts.size());

    ConicProgram prog;
    prog.c = Vector::Zero(n + k);
    prog.c.head(n) = p.c;
    prog.b = Vector::Zero(m + k);
    prog.b.head(m) = p.b;

    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(p.A.nonZeros()) + 16 * k);
    for (int outer = 0; outer < p.A.outerSize(); ++outer) {
        for (SparseMatrix::InnerIterator it(p.A, outer); it; ++it) {
            trips.emplace_back(static_cast<int>(it.row()),
                               static_cast<int>(it.col()), it.value());
        }
    }
    for (int i = 0; i < k; ++i) {
        const CutRecord& cut = s.cuts[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            if (cut.alpha(j) != 0.0) trips.emplace_back(m + i, j, cut.alpha(j));
        }
        trips.emplace_back(m + i, n + i, -1.0);
        prog.b(m + i) = cut.beta;
    }
    prog.A = SparseMatrix(m + k, n + k);
    prog.A.setFromTriplets(trips.begin(), trips.end());

    for (const Cone& blk : p.K.blocks()) {
        if (s.config.relaxation == RelaxationMode::OuterApprox &&
            blk.kind == ConeKind::SOC) {
            prog.cones.push_block(Cone{ConeKind::Free, blk.dim});
        } else {
            prog.cones.push_block(blk);
        }
    }
    if (k > 0) prog.cones.push_block(Cone{ConeKind::NonNeg, k});
    return prog;
}

// Dual-cone rows that pin down a relaxed second-order block:
// head >= 0 and head +/- tail_i >= 0.
std::vector<Vector> seed_rows(const ConeProduct& K) {
    std::vector<Vector> rows;
    const int n = K.total_dim();
    for (std::size_t bi = 0; bi < K.block_count(); ++bi) {
        const Cone& blk = K.block(bi);
        if (blk.kind != ConeKind::SOC) continue;
        const int o = K.block_offset(bi);
        Vector head = Vector::Zero(n);
        head(o) = 1.0;
        rows.push_back(head);
        for (int i = 1; i < blk.dim; ++i) {
            Vector plus = head, minus = head;
            plus(o + i) = 1.0;
            minus(o + i) = -1.0;
            rows.push_back(plus);
            rows.push_back(minus);
        }
    }
    return rows;
}

// Supporting dual-cone row separating x from one violated block: the
// subgradient at the projection for second-order blocks, the bound row
// for scalar blocks.  Empty when the block holds x already.
std::optional<Vector> block_refinement_row(const ConeProduct& K,
                                           std::size_t bi, const Vector& x) {
    const Cone& blk = K.block(bi);
    const int o = K.block_offset(bi);
    const int n = K.total_dim();
    switch (blk.kind) {
        case ConeKind::Free: return std::nullopt;
        case ConeKind::NonNeg:
        case ConeKind::NonPos: {
            const double sign = blk.kind == ConeKind::NonNeg ? 1.0 : -1.0;
            int worst = -1;
            double worst_val = -kRowViolationTol;
            for (int i = 0; i < blk.dim; ++i) {
                const double val = sign * x(o + i);
                if (val < worst_val) {
                    worst_val = val;
                    worst = i;
                }
            }
            if (worst < 0) return std::nullopt;
            Vector row = Vector::Zero(n);
            row(o + worst) = sign;
            return row;
        }
        case ConeKind::SOC: {
            const Vector tail = x.segment(o + 1, blk.dim - 1);
            const double tail_norm = tail.norm();
            if (x(o) >= tail_norm - kRowViolationTol) return std::nullopt;
            Vector row = Vector::Zero(n);
            row(o) = 1.0;
            if (tail_norm > 0.0) row.segment(o + 1, blk.dim - 1) = -tail / tail_norm;
            return row;
        }
        case ConeKind::RSOC: {
            Vector local = x.segment(o, blk.dim);
            rotate_rsoc_to_soc(local);
            const Vector tail = local.tail(blk.dim - 1);
            const double tail_norm = tail.norm();
            if (local(0) >= tail_norm - kRowViolationTol) return std::nullopt;
            Vector soc_row = Vector::Zero(blk.dim);
            soc_row(0) = 1.0;
            if (tail_norm > 0.0) soc_row.tail(blk.dim - 1) = -tail / tail_norm;
            rotate_soc_to_rsoc(soc_row);  // orthogonal involution: K* maps back
            Vector row = Vector::Zero(n);
            row.segment(o, blk.dim) = soc_row;
            return row;
        }
    }
    return std::nullopt;
}

// Scale-free duplicate detection: rows match when their inf-norm-one
// normalizations agree entrywise (right-hand side included).
std::pair<Vector, double> normalized_key(const Vector& alpha, double beta) {
    const double scale = alpha.cwiseAbs().maxCoeff();
    if (scale <= 0.0) return {alpha, beta};
    return {alpha / scale, beta / scale};
}

bool same_row(const std::pair<Vector, double>& a,
              const std::pair<Vector, double>& b) {
    return std::abs(a.second - b.second) <= kDupTol &&
           (a.first - b.first).lpNorm<Eigen::Infinity>() <= kDupTol;
}

// Cleans, deduplicates, and stores one row.  Returns false when the row
// degenerates to nothing or is already present.
bool append_cut(LoopState& s, CutRecord record) {
    record.alpha = clean(record.alpha, s.config.clean_alpha);
    if (std::abs(record.beta) <= s.config.clean_beta) record.beta = 0.0;
    if (record.alpha.cwiseAbs().maxCoeff() <= 0.0) return false;
    const auto key = normalized_key(record.alpha, record.beta);
    for (const CutRecord& stored : s.cuts) {
        if (same_row(key, normalized_key(stored.alpha, stored.beta))) {
            return false;
        }
    }
    s.cuts.push_back(std::move(record));
    return true;
}

// ---------------------------------------------------------------------
// Relaxation solving (with unbounded-ray repair in OA mode)
// ---------------------------------------------------------------------

// Solve the current relaxation and refresh xbar / z_star.  An unbounded
// outer approximation is repaired by cutting the certified ray with
// dual-cone rows of its violated blocks; a genuinely unbounded conic
// problem surfaces as LoopStatus::Unbounded.
bool solve_relaxation(LoopState& s, int round_for_rows) {
    const int n = s.problem.num_vars();
    for (int attempt = 0; attempt <= s.config.refine_cap; ++attempt) {
        SolveResult res = solve(build_relaxation(s), s.config.solver);
        switch (res.status) {
            case SolveStatus::Optimal:
                s.xbar = clean(res.x.head(n), s.config.clean_x);
                s.z_star = res.obj;
                return true;
            case SolveStatus::Stalled:
                // Feasible iterate without a certified bound: usable as a
                // separation point, but the bound must not move on it.  At
                // bootstrap there is no previous bound to keep, so a stall
                // there is a failure rather than a silent zero.
                if (round_for_rows == 0) {
                    s.status = LoopStatus::SolverFailure;
                    s.message = "initial relaxation solve stalled";
                    return false;
                }
                s.xbar = clean(res.x.head(n), s.config.clean_x);
                s.message = "relaxation solve stalled; bound kept";
                return true;
            case SolveStatus::IterLimit:
                s.status = LoopStatus::SolverFailure;
                s.message = "relaxation solve hit the iteration limit";
                return false;
            case SolveStatus::PrimalInfeasible:
                s.status = LoopStatus::Infeasible;
                s.message = "relaxation infeasible";
                return false;
            case SolveStatus::DualInfeasible: {
                if (s.config.relaxation != RelaxationMode::OuterApprox ||
                    !res.ray_x) {
                    s.status = LoopStatus::Unbounded;
                    s.message = "relaxation unbounded";
                    return false;
                }
                const Vector ray = res.ray_x->head(n);
                int added = 0;
                for (std::size_t bi = 0; bi < s.problem.K.block_count(); ++bi) {
                    if (auto row = block_refinement_row(s.problem.K, bi, ray)) {
                        CutRecord rec;
                        rec.alpha = *row;
                        rec.beta = 0.0;
                        rec.kind = CutClass::KStar;
                        rec.round = round_for_rows;
                        rec.origin = "refine";
                        if (append_cut(s, std::move(rec))) ++added;
                    }
                }
                if (added == 0) {
                    s.status = LoopStatus::Unbounded;
                    s.message =
                        "unbounded ray lies in the cone; the conic problem "
                        "itself is unbounded";
                    return false;
                }
                break;  // re-solve with the new rows
            }
        }
    }
    s.status = LoopStatus::Unbounded;
    s.message = "outer approximation stayed unbounded after ray refinement";
    return false;
}

// ---------------------------------------------------------------------
// Per-round helpers
// ---------------------------------------------------------------------

std::vector<int> fractional_coordinates(const LoopState& s) {
    struct Entry {
        int j;
        double frac;
    };
    std::vector<Entry> entries;
    for (int j = 0; j < s.problem.num_vars(); ++j) {
        if (!s.tilt_mask[static_cast<std::size_t>(j)]) continue;
        const double frac = std::abs(s.xbar(j) - std::round(s.xbar(j)));
        if (frac > kFracTol) entries.push_back({j, frac});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) {
                         return a.frac > b.frac;
                     });
    std::vector<int> order;
    order.reserve(entries.size());
    for (const Entry& e : entries) order.push_back(e.j);
    return order;
}

Normalization round_normalization(const LoopState& s) {
    Normalization norm = s.config.norm;
    if (norm.kind == Normalization::Kind::Polar && s.polar_center) {
        norm.gamma = *s.polar_center - s.xbar;
    }
    return norm;
}

double density_pct(const Vector& alpha) {
    int nnz = 0;
    for (int j = 0; j < alpha.size(); ++j) {
        if (alpha(j) != 0.0) ++nnz;
    }
    return 100.0 * nnz / std::max<int>(1, static_cast<int>(alpha.size()));
}

std::optional<double> standardized_z_micp(const LoopState& s) {
    if (!s.config.z_micp) return std::nullopt;
    const double sign = s.problem.obj_sign == 0.0 ? 1.0 : s.problem.obj_sign;
    return (*s.config.z_micp - s.problem.obj_offset) / sign;
}

}  // namespace

const char* relaxation_mode_name(RelaxationMode m) {
    switch (m) {
        case RelaxationMode::OuterApprox: return "outer-approximation";
        case RelaxationMode::Conic: return "conic";
    }
    return "unknown";
}

const char* loop_status_name(LoopStatus s) {
    switch (s) {
        case LoopStatus::Running: return "running";
        case LoopStatus::NoViolatedCuts: return "no-violated-cuts";
        case LoopStatus::RoundLimit: return "round-limit";
        case LoopStatus::TimeLimit: return "time-limit";
        case LoopStatus::Infeasible: return "infeasible";
        case LoopStatus::Unbounded: return "unbounded";
        case LoopStatus::SolverFailure: return "solver-failure";
    }
    return "unknown";
}

Vector clean(const Vector& v, double threshold) {
    Vector out = v;
    for (int j = 0; j < out.size(); ++j) {
        if (std::abs(out(j)) <= threshold) out(j) = 0.0;
    }
    return out;
}

std::optional<double> gap_closed(double z_cp, double z_micp, double z_star) {
    if (!(z_micp > z_cp)) return std::nullopt;
    const double pct = 100.0 * (z_star - z_cp) / (z_micp - z_cp);
    return std::clamp(pct, 0.0, 100.0);
}

LoopState init_loop(const StandardProblem& problem, const LoopConfig& config) {
    validate_config(problem, config);

    LoopState s;
    s.problem = problem;
    s.config = config;
    s.rho = config.norm.rho ? *config.norm.rho
                            : default_interior_point(problem.K);
    s.tilt_mask.assign(static_cast<std::size_t>(problem.num_vars()), false);
    for (int j = 0; j < problem.num_vars(); ++j) {
        const auto uj = static_cast<std::size_t>(j);
        s.tilt_mask[uj] =
            problem.integer_mask[uj] ||
            (problem.implied_integer_mask.size() > uj &&
             problem.implied_integer_mask[uj]);
    }
    s.xbar = Vector::Zero(problem.num_vars());

    if (config.norm.kind == Normalization::Kind::Polar) {
        if (config.norm.gamma) {
            // A fixed direction was supplied; keep it for every round.
        } else {
            try {
                AnalyticCenter center = analytic_center(problem, config.solver);
                if (!center.strictly_interior) {
                    s.status = LoopStatus::SolverFailure;
                    s.message =
                        "polar normalization needs a strictly interior "
                        "relaxation point and none exists";
                    return s;
                }
                s.polar_center = center.x;
            } catch (const SolveError& err) {
                s.status = LoopStatus::SolverFailure;
                s.message = std::string("analytic center failed: ") + err.what();
                return s;
            }
        }
    }

    // Baseline bound: the conic relaxation, regardless of the working mode.
    {
        ConicProgram conic;
        conic.c = problem.c;
        conic.A = problem.A;
        conic.b = problem.b;
        conic.cones = problem.K;
        SolveResult res;
        try {
            res = solve(conic, config.solver);
        } catch (const SolveError& err) {
            s.status = LoopStatus::SolverFailure;
            s.message = std::string("conic relaxation failed: ") + err.what();
            return s;
        }
        switch (res.status) {
            case SolveStatus::Optimal:
                s.z_cp = res.obj;
                break;
            case SolveStatus::Stalled:
                s.z_cp = res.obj;
                s.message = "conic relaxation stalled; baseline bound inexact";
                break;
            case SolveStatus::PrimalInfeasible:
                s.status = LoopStatus::Infeasible;
                s.message = "conic relaxation infeasible";
                return s;
            case SolveStatus::DualInfeasible:
                s.status = LoopStatus::Unbounded;
                s.message = "conic relaxation unbounded";
                return s;
            case SolveStatus::IterLimit:
                s.status = LoopStatus::SolverFailure;
                s.message = "conic relaxation hit the iteration limit";
                return s;
        }
        if (config.relaxation == RelaxationMode::Conic) {
            s.xbar = clean(res.x, config.clean_x);
            s.z_star = res.obj;
            return s;
        }
    }

    for (Vector& row : seed_rows(problem.K)) {
        CutRecord rec;
        rec.alpha = std::move(row);
        rec.beta = 0.0;
        rec.kind = CutClass::KStar;
        rec.round = 0;
        rec.origin = "seed";
        append_cut(s, std::move(rec));
    }
    solve_relaxation(s, 0);
    return s;
}

RefineResult refine(LoopState& state) {
    RefineResult out;
    out.eta = eta_bar(state.problem.K, state.xbar, state.rho);
    if (state.config.relaxation != RelaxationMode::OuterApprox) return out;

    const int round = state.rounds.empty()
                          ? 1
                          : static_cast<int>(state.rounds.size()) + 1;
    while (out.eta > state.config.eps_K &&
           out.iterations < state.config.refine_cap) {
        int added = 0;
        for (std::size_t bi = 0; bi < state.problem.K.block_count(); ++bi) {
            if (auto row =
                    block_refinement_row(state.problem.K, bi, state.xbar)) {
                CutRecord rec;
                rec.alpha = *row;
                rec.beta = 0.0;
                rec.kind = CutClass::KStar;
                rec.round = round;
                rec.origin = "refine";
                if (append_cut(state, std::move(rec))) ++added;
            }
        }
        if (added == 0) break;  // every separating row is already present
        out.cuts_added += added;
        if (!solve_relaxation(state, round)) return out;
        ++out.iterations;
        out.eta = eta_bar(state.problem.K, state.xbar, state.rho);
    }
    out.capped = out.eta > state.config.eps_K;
    return out;
}

RoundStats run_round(LoopState& state) {
    const auto t0 = Clock::now();
    RoundStats stats;
    stats.round = static_cast<int>(state.rounds.size()) + 1;
    stats.z_bound = state.z_star;

    const std::size_t first_new_cut = state.cuts.size();

    if (state.status == LoopStatus::Running) {
        state.xbar = clean(state.xbar, state.config.clean_x);
        RefineResult rr = refine(state);
        stats.refine_cuts = rr.cuts_added;
        stats.refine_capped = rr.capped;
        stats.eta = rr.eta;
    }

    if (state.status != LoopStatus::Running) {
        stats.z_bound = state.z_star;
        stats.seconds = seconds_since(t0);
        state.rounds.push_back(stats);
        return stats;
    }

    const Normalization norm = round_normalization(state);
    SeparationConfig sep_config;
    sep_config.solver = state.config.solver;
    sep_config.no_cut_threshold = state.config.violation_threshold;

    // Lifting works off the support of the cleaned point; compute the
    // partition once per round.
    std::optional<SupportSplit> support;
    if (state.config.lift_cuts) {
        SupportSplit split = support_split(state.problem.K, state.xbar);
        if (!split.dropped.empty()) support = std::move(split);
    }

    for (int j : fractional_coordinates(state)) {
        Disjunction disjunction =
            elementary_split(state.problem, j, state.xbar(j));

        SeparationOutcome outcome;
        CutCandidate cut;
        bool have_cut = false;
        bool lifted = false;

        if (support) {
            StandardProblem reduced = reduce_problem(state.problem, *support);
            Disjunction reduced_disj =
                reduce_disjunction(disjunction, *support);
            Vector reduced_x = reduce_vector(state.xbar, *support);
            outcome = separate(reduced, reduced_disj, reduced_x, norm,
                               sep_config);
            if (outcome.cut &&
                outcome.cut->classification == CutClass::LiftAndProject) {
                LiftOutcome lo = lift(state.problem, disjunction, *support,
                                      *outcome.cut, state.rho,
                                      state.config.solver);
                if (!lo.fallback) {
                    cut = std::move(lo.cut);
                    have_cut = true;
                    lifted = true;
                }
            }
        }
        if (!have_cut) {
            outcome = separate(state.problem, disjunction, state.xbar, norm,
                               sep_config);
            if (!outcome.cut) continue;
            cut = *outcome.cut;
            have_cut = true;
        }

        if (cut.classification == CutClass::KStar) {
            // Disaggregated dual-cone rows: valid on the whole cone, so
            // they go in as beta = 0 rows after a membership check.
            const auto& pieces = outcome.disaggregated_kstar;
            for (const Vector& lam : pieces) {
                if (!dual_membership(state.problem.K, lam, kMemberTol)) {
                    continue;
                }
                CutRecord rec;
                rec.alpha = lam;
                rec.beta = 0.0;
                rec.kind = CutClass::KStar;
                rec.round = stats.round;
                rec.origin = outcome.shortcut_used ? "shortcut"
                                                   : "disaggregated";
                rec.coordinate = j;
                if (append_cut(state, std::move(rec))) ++stats.kstar;
            }
            continue;
        }

        // Lift-and-project cut: strengthen, certificate-check, store.
        Disjunction certificate_disjunction = disjunction;
        if (state.config.strengthen_cuts) {
            const double depth_before =
                cut.alpha.dot(state.xbar) - cut.beta;
            StrengthenOutcome st =
                strengthen(state.problem, disjunction, cut, state.xbar,
                           state.tilt_mask, state.rho, state.config.solver);
            // Adopt the tilted cut only when it is at least as deep at the
            // point being separated; otherwise keep the cut that prompted
            // the round.
            if (st.strengthened &&
                st.cut.alpha.dot(state.xbar) - st.cut.beta <=
                    depth_before + 1e-12) {
                cut = std::move(st.cut);
                ++stats.strengthened;
                certificate_disjunction = split_from_direction(
                    *cut.pi_tilde, disjunction.split_tag->pi0);
            }
        }
        if (!cut_certificate_ok(state.problem, certificate_disjunction, cut)) {
            continue;  // never store a row the certificate cannot back
        }
        CutRecord rec;
        rec.alpha = cut.alpha;
        rec.beta = cut.beta;
        rec.kind = CutClass::LiftAndProject;
        rec.round = stats.round;
        rec.origin = lifted ? "lifted" : "cgcp";
        rec.coordinate = j;
        rec.strengthened = cut.strengthened;
        if (append_cut(state, std::move(rec))) ++stats.landp;
    }

    const std::size_t appended = state.cuts.size() - first_new_cut;
    if (appended > 0) {
        solve_relaxation(state, stats.round);
        double total = 0.0;
        for (std::size_t i = first_new_cut; i < state.cuts.size(); ++i) {
            total += density_pct(state.cuts[i].alpha);
        }
        stats.density_pct = total / static_cast<double>(appended);
    }
    stats.z_bound = state.z_star;
    if (auto z_micp = standardized_z_micp(state)) {
        stats.gap_pct = gap_closed(state.z_cp, *z_micp, state.z_star);
    }
    stats.seconds = seconds_since(t0);
    state.rounds.push_back(stats);
    return stats;
}

Report run(const StandardProblem& problem, const LoopConfig& config,
           const std::string& instance_name) {
    const auto t0 = Clock::now();
    LoopState state = init_loop(problem, config);

    if (state.status == LoopStatus::Running) {
        if (config.max_rounds == 0) {
            state.status = LoopStatus::RoundLimit;
        } else if (config.time_limit_seconds <= 0.0) {
            state.status = LoopStatus::TimeLimit;
        }
    }
    while (state.status == LoopStatus::Running) {
        RoundStats stats = run_round(state);
        if (state.status != LoopStatus::Running) break;
        const int added = stats.refine_cuts + stats.kstar + stats.landp;
        if (added == 0) {
            state.status = LoopStatus::NoViolatedCuts;
        } else if (static_cast<int>(state.rounds.size()) >=
                   config.max_rounds) {
            state.status = LoopStatus::RoundLimit;
        } else if (seconds_since(t0) > config.time_limit_seconds) {
            state.status = LoopStatus::TimeLimit;
        }
    }

    Report report;
    report.instance = instance_name;
    report.normalization = normalization_name(config.norm.kind);
    report.relaxation = relaxation_mode_name(config.relaxation);
    report.status = loop_status_name(state.status);
    report.z_cp = state.z_cp;
    report.z_star = state.z_star;
    report.z_micp = standardized_z_micp(state);
    if (report.z_micp) {
        report.gap_pct = gap_closed(state.z_cp, *report.z_micp, state.z_star);
    }
    report.obj_sign = problem.obj_sign;
    report.obj_offset = problem.obj_offset;
    report.seconds = seconds_since(t0);
    report.message = state.message;
    report.rounds = state.rounds;
    report.cuts = state.cuts;
    for (const CutRecord& cut : report.cuts) {
        if (cut.origin == "shortcut" || cut.origin == "disaggregated") {
            ++report.total_kstar;
        }
        if (cut.kind == CutClass::LiftAndProject) {
            ++report.total_landp;
            if (cut.strengthened) ++report.total_strengthened;
        }
    }
    return report;
}

}  // namespace coniccut
