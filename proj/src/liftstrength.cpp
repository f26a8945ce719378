#include "coniccut/liftstrength.hpp"

#include "coniccut/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coniccut {

namespace {

constexpr double kDominanceTol = 1e-7;
constexpr double kVGuard = 1e-4;
constexpr int kGridRadius = 3;          // tilt grid {-3..3} per coordinate
constexpr int kGridBudget = 2401;       // 7^4: at most four tilted coords

std::vector<int> old_to_new_map(int n, const std::vector<int>& kept) {
    std::vector<int> map(n, -1);
    for (int idx = 0; idx < static_cast<int>(kept.size()); ++idx) {
        map[kept[idx]] = idx;
    }
    return map;
}

SparseMatrix keep_columns(const SparseMatrix& M, const std::vector<int>& map,
                          int new_cols) {
    std::vector<Triplet> trips;
    for (int col = 0; col < M.outerSize(); ++col) {
        if (map[col] < 0) continue;
        for (SparseMatrix::InnerIterator it(M, col); it; ++it) {
            trips.emplace_back(static_cast<int>(it.row()), map[col],
                               it.value());
        }
    }
    SparseMatrix out(M.rows(), new_cols);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

bool dominates(const Cone& block, const Vector& alpha,
               const std::vector<Vector>& targets) {
    for (const Vector& t : targets) {
        Vector slack = alpha - t;
        double scale = 1.0 + slack.norm();
        if (dual_block_infeasibility(block, slack) > kDominanceTol * scale) {
            return false;
        }
    }
    return true;
}

/// Feasible (not rho-minimal) dominating vector for a second-order block:
/// the componentwise max of the targets, padded along the block's axis
/// until it clears every target in the dual order.
Vector padded_max_soc(const std::vector<Vector>& targets) {
    const int k = static_cast<int>(targets.front().size());
    Vector base = targets.front();
    for (const Vector& t : targets) base = base.cwiseMax(t);
    double pad = 0.0;
    for (const Vector& t : targets) {
        Vector s = base - t;
        pad = std::max(pad, s.tail(k - 1).norm() - s(0));
    }
    if (pad > 0.0) base(0) += pad;
    return base;
}

Vector fallback_dominator(const Cone& block,
                          const std::vector<Vector>& targets) {
    switch (block.kind) {
        case ConeKind::SOC:
            return padded_max_soc(targets);
        case ConeKind::RSOC: {
            // Work through the orthogonal bijection with the plain cone.
            std::vector<Vector> rotated = targets;
            for (Vector& t : rotated) rotate_rsoc_to_soc(t);
            Vector alpha = padded_max_soc(rotated);
            rotate_soc_to_rsoc(alpha);
            return alpha;
        }
        default: {
            Vector base = targets.front();
            for (const Vector& t : targets) base = base.cwiseMax(t);
            return base;
        }
    }
}

struct BlockLcp {
    Vector alpha;
    bool solved = false;
    double objective = std::numeric_limits<double>::infinity();
};

/// min rho'alpha  s.t.  alpha - t_h in (dual of block)  for every target.
/// Scalar and free blocks never reach here (they have closed forms).
BlockLcp solve_block_lcp(const Cone& block, const std::vector<Vector>& targets,
                         const Vector& rho_block,
                         const SolveOptions& options) {
    const int k = block.dim;
    const int H = static_cast<int>(targets.size());
    BlockLcp out;

    // All targets equal: the common value is feasible with zero slack and
    // rho-minimal (any other feasible point adds a dual-cone vector, which
    // a strictly interior rho prices positively).
    double spread = 0.0;
    double scale = 1.0;
    for (const Vector& t : targets) {
        spread = std::max(spread, (t - targets.front()).cwiseAbs().maxCoeff());
        scale = std::max(scale, t.cwiseAbs().maxCoeff());
    }
    if (spread <= 1e-11 * scale) {
        out.alpha = targets.front();
        out.solved = true;
        out.objective = rho_block.dot(out.alpha);
        return out;
    }

    ConicProgram lcp;
    lcp.cones.push_block(Cone{ConeKind::Free, k});
    for (int h = 0; h < H; ++h) lcp.cones.push_block(block);  // self-dual
    lcp.b = Vector::Zero(H * k);
    std::vector<Triplet> trips;
    for (int h = 0; h < H; ++h) {
        for (int j = 0; j < k; ++j) {
            trips.emplace_back(h * k + j, j, 1.0);
            trips.emplace_back(h * k + j, k + h * k + j, -1.0);
            lcp.b(h * k + j) = targets[h](j);
        }
    }
    lcp.A.resize(H * k, (H + 1) * k);
    lcp.A.setFromTriplets(trips.begin(), trips.end());
    lcp.c = Vector::Zero((H + 1) * k);
    lcp.c.head(k) = rho_block;

    try {
        SolveResult res = solve(lcp, options);
        if (res.status == SolveStatus::Optimal) {
            Vector alpha = res.x.head(k);
            if (dominates(block, alpha, targets)) {
                out.alpha = alpha;
                out.solved = true;
                out.objective = rho_block.dot(alpha);
            }
        }
    } catch (const SolveError&) {
        // fall through unsolved
    }
    return out;
}

}  // namespace

SupportSplit support_split(const ConeProduct& K, const Vector& xbar) {
    if (xbar.size() != K.total_dim()) {
        throw std::invalid_argument("support split: point has wrong dimension");
    }
    SupportSplit out;
    for (std::size_t i = 0; i < K.block_count(); ++i) {
        const Cone& blk = K.block(i);
        const int off = K.block_offset(i);
        bool all_zero = true;
        for (int j = 0; j < blk.dim; ++j) {
            if (xbar(off + j) != 0.0) {
                all_zero = false;
                break;
            }
        }
        if (all_zero) {
            out.dropped_blocks.push_back(i);
            out.dropped_cone.push_block(blk);
            for (int j = 0; j < blk.dim; ++j) out.dropped.push_back(off + j);
        } else {
            out.kept_blocks.push_back(i);
            out.kept_cone.push_block(blk);
            for (int j = 0; j < blk.dim; ++j) out.kept.push_back(off + j);
        }
    }
    return out;
}

StandardProblem reduce_problem(const StandardProblem& problem,
                               const SupportSplit& split) {
    const int n = problem.num_vars();
    const int n1 = static_cast<int>(split.kept.size());
    std::vector<int> map = old_to_new_map(n, split.kept);

    StandardProblem out;
    out.c = reduce_vector(problem.c, split);
    out.A = keep_columns(problem.A, map, n1);
    out.b = problem.b;
    out.K = split.kept_cone;
    out.integer_mask.resize(n1);
    out.implied_integer_mask.resize(n1);
    for (int idx = 0; idx < n1; ++idx) {
        out.integer_mask[idx] = problem.integer_mask[split.kept[idx]];
        out.implied_integer_mask[idx] =
            problem.implied_integer_mask[split.kept[idx]];
    }
    out.obj_sign = problem.obj_sign;
    out.obj_offset = problem.obj_offset;
    if (!problem.names.empty()) {
        out.names.reserve(n1);
        for (int idx : split.kept) out.names.push_back(problem.names[idx]);
    }
    return out;
}

Disjunction reduce_disjunction(const Disjunction& disjunction,
                               const SupportSplit& split) {
    const int n1 = static_cast<int>(split.kept.size());
    const int n = n1 + static_cast<int>(split.dropped.size());
    std::vector<int> map = old_to_new_map(n, split.kept);

    Disjunction out;
    for (const DisjunctiveTerm& term : disjunction.terms) {
        DisjunctiveTerm reduced;
        reduced.D = keep_columns(term.D, map, n1);
        reduced.d = term.d;
        reduced.Q = term.Q;
        reduced.sigma = term.sigma;
        out.terms.push_back(std::move(reduced));
    }
    if (disjunction.split_tag) {
        const SplitTag& tag = *disjunction.split_tag;
        if (tag.j >= 0 && tag.j < n && map[tag.j] >= 0) {
            SplitTag reduced_tag;
            reduced_tag.j = map[tag.j];
            reduced_tag.pi0 = tag.pi0;
            reduced_tag.pi = reduce_vector(tag.pi, split);
            out.split_tag = reduced_tag;
        }
    }
    return out;
}

Vector reduce_vector(const Vector& x, const SupportSplit& split) {
    Vector out(split.kept.size());
    for (int idx = 0; idx < out.size(); ++idx) out(idx) = x(split.kept[idx]);
    return out;
}

LiftOutcome lift(const StandardProblem& problem,
                 const Disjunction& disjunction, const SupportSplit& split,
                 const CutCandidate& reduced_cut, const InteriorPoint& rho,
                 const SolveOptions& options) {
    const int n = problem.num_vars();
    const int n1 = static_cast<int>(split.kept.size());
    const int H = disjunction.term_count();
    if (static_cast<int>(split.kept.size() + split.dropped.size()) != n) {
        throw std::invalid_argument("lift: split does not match the problem");
    }
    if (reduced_cut.alpha.size() != n1) {
        throw std::invalid_argument("lift: cut is not in the reduced space");
    }
    if (static_cast<int>(reduced_cut.u.size()) != H ||
        static_cast<int>(reduced_cut.v.size()) != H ||
        static_cast<int>(reduced_cut.lambda.size()) != H) {
        throw std::invalid_argument("lift: cut is missing term multipliers");
    }
    if (rho.rho.size() != n) {
        throw std::invalid_argument("lift: rho must cover the full cone");
    }

    // Per-term requirement on the dropped coordinates.
    std::vector<Vector> full_target(H);
    for (int h = 0; h < H; ++h) {
        full_target[h] = problem.A.transpose() * reduced_cut.u[h] +
                         disjunction.terms[h].D.transpose() * reduced_cut.v[h];
    }

    LiftOutcome out;
    Vector alpha2 = Vector::Zero(split.dropped.size());
    for (std::size_t bi = 0; bi < split.dropped_cone.block_count(); ++bi) {
        const Cone& blk = split.dropped_cone.block(bi);
        const int local = split.dropped_cone.block_offset(bi);
        std::vector<Vector> targets(H);
        Vector rho_block(blk.dim);
        for (int j = 0; j < blk.dim; ++j) {
            rho_block(j) = rho.rho(split.dropped[local + j]);
            for (int h = 0; h < H; ++h) {
                if (j == 0) targets[h].resize(blk.dim);
                targets[h](j) = full_target[h](split.dropped[local + j]);
            }
        }

        Vector alpha_block;
        switch (blk.kind) {
            case ConeKind::NonNeg: {
                alpha_block = targets[0];
                for (const Vector& t : targets) {
                    alpha_block = alpha_block.cwiseMax(t);
                }
                break;
            }
            case ConeKind::NonPos: {
                alpha_block = targets[0];
                for (const Vector& t : targets) {
                    alpha_block = alpha_block.cwiseMin(t);
                }
                break;
            }
            case ConeKind::Free: {
                // The dual order degenerates to equality: a lift exists
                // only when every term asks for the same coefficients.
                double spread = 0.0;
                double scale = 1.0;
                for (const Vector& t : targets) {
                    spread = std::max(
                        spread, (t - targets[0]).cwiseAbs().maxCoeff());
                    scale = std::max(scale, t.cwiseAbs().maxCoeff());
                }
                alpha_block = targets[0];
                if (spread > 1e-9 * scale) {
                    out.fallback = true;
                    out.message =
                        "free block admits no dominating coefficients";
                    for (const Vector& t : targets) {
                        alpha_block = alpha_block.cwiseMax(t);
                    }
                }
                break;
            }
            case ConeKind::SOC:
            case ConeKind::RSOC: {
                BlockLcp lcp =
                    solve_block_lcp(blk, targets, rho_block, options);
                if (lcp.solved) {
                    alpha_block = lcp.alpha;
                } else {
                    out.fallback = true;
                    out.message = "block lifting solve failed";
                    alpha_block = fallback_dominator(blk, targets);
                }
                break;
            }
        }
        alpha2.segment(local, blk.dim) = alpha_block;
    }

    // Assemble the full-space cut.
    CutCandidate cut;
    cut.alpha = Vector::Zero(n);
    for (int idx = 0; idx < n1; ++idx) {
        cut.alpha(split.kept[idx]) = reduced_cut.alpha(idx);
    }
    for (std::size_t idx = 0; idx < split.dropped.size(); ++idx) {
        cut.alpha(split.dropped[idx]) = alpha2(idx);
    }
    cut.beta = reduced_cut.beta;
    cut.u = reduced_cut.u;
    cut.v = reduced_cut.v;
    cut.lambda.resize(H);
    for (int h = 0; h < H; ++h) {
        cut.lambda[h] = Vector::Zero(n);
        for (int idx = 0; idx < n1; ++idx) {
            cut.lambda[h](split.kept[idx]) = reduced_cut.lambda[h](idx);
        }
        for (std::size_t idx = 0; idx < split.dropped.size(); ++idx) {
            cut.lambda[h](split.dropped[idx]) =
                alpha2(idx) - full_target[h](split.dropped[idx]);
        }
    }
    cut.violation = reduced_cut.violation;  // dropped coords of xbar are 0
    cut.classification = reduced_cut.classification;
    cut.normalization = reduced_cut.normalization;
    cut.lifted = true;
    out.cut = std::move(cut);
    return out;
}

std::pair<double, long long> strengthened_coefficient(double a1, double a2,
                                                      double v1, double v2) {
    const double s = v1 + v2;
    const double crossing = (a1 - a2) / s;
    const long long lo = static_cast<long long>(std::floor(crossing));
    const long long hi = static_cast<long long>(std::ceil(crossing));
    const double at_lo = std::max(a1 - v1 * lo, a2 + v2 * lo);
    const double at_hi = std::max(a1 - v1 * hi, a2 + v2 * hi);
    if (at_lo <= at_hi) return {at_lo, lo};
    return {at_hi, hi};
}

std::pair<double, long long> strengthened_coefficient_nonpos(double a1,
                                                             double a2,
                                                             double v1,
                                                             double v2) {
    const double s = v1 + v2;
    const double crossing = (a1 - a2) / s;
    const long long lo = static_cast<long long>(std::floor(crossing));
    const long long hi = static_cast<long long>(std::ceil(crossing));
    const double at_lo = std::min(a1 - v1 * lo, a2 + v2 * lo);
    const double at_hi = std::min(a1 - v1 * hi, a2 + v2 * hi);
    if (at_lo >= at_hi) return {at_lo, lo};
    return {at_hi, hi};
}

StrengthenOutcome strengthen(const StandardProblem& problem,
                             const Disjunction& disjunction,
                             const CutCandidate& cut, const Vector& xbar,
                             const std::vector<bool>& mask,
                             const InteriorPoint& rho,
                             const SolveOptions& options) {
    const int n = problem.num_vars();
    StrengthenOutcome out;
    out.cut = cut;

    if (!is_two_term_split(disjunction)) {
        out.message = "strengthening needs a tagged two-term split";
        return out;
    }
    if (static_cast<int>(mask.size()) != n || xbar.size() != n ||
        cut.alpha.size() != n) {
        throw std::invalid_argument("strengthen: dimension mismatch");
    }
    if (cut.u.size() != 2 || cut.v.size() != 2 || cut.v[0].size() != 1 ||
        cut.v[1].size() != 1) {
        out.message = "cut carries no split multipliers";
        return out;
    }
    const double v1 = cut.v[0](0);
    const double v2 = cut.v[1](0);
    if (std::abs(v1) + std::abs(v2) < kVGuard) {
        out.message = "term multipliers too small to strengthen";
        return out;
    }

    const SplitTag& tag = *disjunction.split_tag;
    const Vector& pi = tag.pi;
    // The tilt arithmetic below assumes the canonical encoding of the two
    // sides, rows -pi'x >= -pi0 and pi'x >= pi0 + 1.
    Vector row1 = Vector(disjunction.terms[0].D.toDense().row(0));
    Vector row2 = Vector(disjunction.terms[1].D.toDense().row(0));
    const double scale = 1.0 + pi.cwiseAbs().maxCoeff();
    if ((row1 + pi).cwiseAbs().maxCoeff() > 1e-12 * scale ||
        (row2 - pi).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        out.message = "split rows are not in canonical form";
        return out;
    }
    Vector w1 = problem.A.transpose() * cut.u[0];
    Vector w2 = problem.A.transpose() * cut.u[1];

    Vector alpha = cut.alpha;
    Vector lam1 = cut.lambda[0];
    Vector lam2 = cut.lambda[1];
    Vector delta = Vector::Zero(n);
    bool changed = false;

    for (std::size_t bi = 0; bi < problem.K.block_count(); ++bi) {
        const Cone& blk = problem.K.block(bi);
        const int off = problem.K.block_offset(bi);
        std::vector<int> tilted;
        for (int j = 0; j < blk.dim; ++j) {
            if (mask[off + j] && off + j != tag.j) tilted.push_back(off + j);
        }
        if (tilted.empty()) continue;

        switch (blk.kind) {
            case ConeKind::NonNeg:
            case ConeKind::NonPos: {
                for (int j : tilted) {
                    const double a1 = w1(j) - v1 * pi(j);
                    const double a2 = w2(j) + v2 * pi(j);
                    auto [coeff, d] =
                        blk.kind == ConeKind::NonNeg
                            ? strengthened_coefficient(a1, a2, v1, v2)
                            : strengthened_coefficient_nonpos(a1, a2, v1, v2);
                    if (d == 0 && std::abs(coeff - alpha(j)) <= 1e-12) {
                        continue;
                    }
                    alpha(j) = coeff;
                    delta(j) = static_cast<double>(d);
                    lam1(j) = coeff - (a1 - v1 * delta(j));
                    lam2(j) = coeff - (a2 + v2 * delta(j));
                    changed = true;
                }
                break;
            }
            case ConeKind::Free:
                // A certificate-valid cut has lambda = 0 here, so both
                // terms already price the coordinate identically and the
                // only feasible tilt is zero.
                break;
            case ConeKind::SOC:
            case ConeKind::RSOC: {
                const int width = 2 * kGridRadius + 1;
                double combos = 1.0;
                for (std::size_t t = 0; t < tilted.size(); ++t) {
                    combos *= width;
                }
                if (combos > kGridBudget) {
                    out.message = "second-order block left untouched: too "
                                  "many integer coordinates";
                    break;
                }
                Vector rho_block = rho.rho.segment(off, blk.dim);
                Vector base1 = w1.segment(off, blk.dim) -
                               v1 * pi.segment(off, blk.dim);
                Vector base2 = w2.segment(off, blk.dim) +
                               v2 * pi.segment(off, blk.dim);
                const double baseline =
                    rho_block.dot(alpha.segment(off, blk.dim));
                // A tilt is only an improvement if the re-completed block
                // does not lose depth at the separation point: the block
                // solve minimizes the rho weight, which says nothing about
                // the point that prompted the cut.
                const Vector xb_block = xbar.segment(off, blk.dim);
                const double depth0 =
                    xb_block.dot(alpha.segment(off, blk.dim));

                double best = baseline;
                Vector best_alpha;
                Vector best_delta;
                std::vector<int> counter(tilted.size(), -kGridRadius);
                bool done = false;
                while (!done) {
                    Vector d_block = Vector::Zero(blk.dim);
                    for (std::size_t t = 0; t < tilted.size(); ++t) {
                        d_block(tilted[t] - off) =
                            static_cast<double>(counter[t]);
                    }
                    std::vector<Vector> targets{base1 - v1 * d_block,
                                                base2 + v2 * d_block};
                    BlockLcp lcp =
                        solve_block_lcp(blk, targets, rho_block, options);
                    if (lcp.solved && lcp.objective < best - 1e-10 &&
                        xb_block.dot(lcp.alpha) <= depth0 + 1e-12) {
                        best = lcp.objective;
                        best_alpha = lcp.alpha;
                        best_delta = d_block;
                    }
                    // odometer over the tilt grid
                    std::size_t pos = 0;
                    while (pos < counter.size() &&
                           ++counter[pos] > kGridRadius) {
                        counter[pos] = -kGridRadius;
                        ++pos;
                    }
                    done = pos == counter.size();
                }
                if (best_alpha.size() > 0) {
                    alpha.segment(off, blk.dim) = best_alpha;
                    delta.segment(off, blk.dim) = best_delta;
                    lam1.segment(off, blk.dim) =
                        best_alpha - (base1 - v1 * best_delta);
                    lam2.segment(off, blk.dim) =
                        best_alpha - (base2 + v2 * best_delta);
                    changed = true;
                }
                break;
            }
        }
    }

    if (!changed) {
        if (out.message.empty()) {
            out.message = "no coefficient admitted a better tilt";
        }
        return out;
    }

    out.strengthened = true;
    out.cut.alpha = alpha;
    out.cut.lambda[0] = lam1;
    out.cut.lambda[1] = lam2;
    out.cut.pi_tilde = pi + delta;
    out.cut.strengthened = true;
    out.cut.violation = alpha.dot(xbar) - cut.beta;
    return out;
}

}  // namespace coniccut
