#include "coniccut/solver.hpp"

#include "ipm.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace coniccut {
namespace {

/// Mapping of one equality-form program onto the inequality form
/// min c'x s.t. Ax = b, Gx + s = h consumed by the interior-point backend:
/// every scalar cone coordinate becomes one nonnegative row (sign-flipped
/// for NonPos) and every second-order block becomes an identity slice, so
/// s recovers the conic part of x and the dual z maps back to a K* vector
/// through -G'z.
struct IneqMapping {
    ipm::IpmProblem ipm;
    bool dummy_row = false;  // fully-free programs get one padding row
};

IneqMapping to_inequality_form(const ConicProgram& p) {
    const int n = static_cast<int>(p.c.size());
    std::vector<Triplet> g_trips;
    std::vector<int> soc_dims;
    int row = 0;

    // scalar rows first
    for (std::size_t bi = 0; bi < p.cones.block_count(); ++bi) {
        const Cone& blk = p.cones.blocks()[bi];
        const int off = p.cones.block_offset(bi);
        if (blk.kind == ConeKind::NonNeg)
            for (int k = 0; k < blk.dim; ++k) g_trips.emplace_back(row++, off + k, -1.0);
        else if (blk.kind == ConeKind::NonPos)
            for (int k = 0; k < blk.dim; ++k) g_trips.emplace_back(row++, off + k, 1.0);
    }
    const int n_lp = row;
    // then second-order blocks
    for (std::size_t bi = 0; bi < p.cones.block_count(); ++bi) {
        const Cone& blk = p.cones.blocks()[bi];
        const int off = p.cones.block_offset(bi);
        if (blk.kind == ConeKind::SOC) {
            for (int k = 0; k < blk.dim; ++k) g_trips.emplace_back(row++, off + k, -1.0);
            soc_dims.push_back(blk.dim);
        }
    }

    IneqMapping out;
    out.ipm.c = p.c;
    out.ipm.A = p.A;
    out.ipm.b = p.b;
    out.ipm.n_nonneg = n_lp;
    out.ipm.soc_dims = soc_dims;
    if (row == 0) {
        // fully free program: pad with 0'x + s = 1, s >= 0 so the conic
        // part of the embedding is nonempty
        out.dummy_row = true;
        out.ipm.G = SparseMatrix(1, n);
        out.ipm.h = Vector::Ones(1);
        out.ipm.n_nonneg = 1;
    } else {
        out.ipm.G = SparseMatrix(row, n);
        out.ipm.G.setFromTriplets(g_trips.begin(), g_trips.end());
        out.ipm.h = Vector::Zero(row);
    }
    return out;
}

void validate(const ConicProgram& p) {
    const int n = static_cast<int>(p.c.size());
    if (static_cast<int>(p.cones.total_dim()) != n)
        throw std::invalid_argument("cone product does not cover all variables");
    if (p.A.cols() != n) throw std::invalid_argument("A column count mismatch");
    if (p.A.rows() != p.b.size()) throw std::invalid_argument("b size mismatch");
    for (const Cone& blk : p.cones.blocks())
        if (blk.kind == ConeKind::RSOC)
            throw std::invalid_argument(
                "rotated blocks must be rewritten to plain second-order blocks "
                "before solving");
}

bool primal_feasible(const ConicProgram& p, const Vector& x, double tol) {
    if (!x.allFinite()) return false;
    const double scale = 1.0 + p.b.lpNorm<Eigen::Infinity>();
    if (p.A.rows() > 0 && (p.A * x - p.b).lpNorm<Eigen::Infinity>() > tol * scale)
        return false;
    return membership(p.cones, x, tol);
}

}  // namespace

const char* solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::PrimalInfeasible: return "PrimalInfeasible";
        case SolveStatus::DualInfeasible: return "DualInfeasible";
        case SolveStatus::Stalled: return "Stalled";
        case SolveStatus::IterLimit: return "IterLimit";
    }
    return "unknown";
}

SolveResult solve(const ConicProgram& program, const SolveOptions& options) {
    validate(program);
    const IneqMapping map = to_inequality_form(program);

    ipm::IpmSettings settings;
    settings.max_iterations = options.max_iterations;
    settings.feastol = options.feastol;
    settings.abstol = options.relgap;
    settings.reltol = options.relgap;

    ipm::IpmResult raw;
    try {
        raw = ipm::solve(map.ipm, settings);
    } catch (const std::invalid_argument&) {
        throw;  // caller bug, not a numerical failure
    }
    if (raw.status == ipm::IpmStatus::Fatal)
        throw SolveError("interior-point backend failed to factorize the KKT system");

    SolveResult res;
    res.iterations = raw.iterations;
    res.x = raw.x;
    res.y = -raw.y;  // our dual sign convention: c - A'y in K*
    res.z = program.c - program.A.transpose() * res.y;
    res.obj = program.c.dot(raw.x);
    res.dual_obj = program.b.dot(res.y);

    auto classify_non_optimal = [&]() {
        res.status = primal_feasible(program, res.x, 1e-6) ? SolveStatus::Stalled
                                                           : SolveStatus::IterLimit;
    };

    switch (raw.status) {
        case ipm::IpmStatus::Optimal: {
            // enforce the contract before reporting Optimal
            const double rscale = 1.0 + program.b.lpNorm<Eigen::Infinity>();
            const bool ok =
                res.x.allFinite() &&
                (program.A.rows() == 0 ||
                 (program.A * res.x - program.b).lpNorm<Eigen::Infinity>() <=
                     1e-7 * rscale) &&
                membership(program.cones, res.x, 1e-7) &&
                std::abs(res.obj - res.dual_obj) <= 1e-7 * (1.0 + std::abs(res.obj));
            if (ok)
                res.status = SolveStatus::Optimal;
            else
                classify_non_optimal();
            break;
        }
        case ipm::IpmStatus::PrimalInfeasible:
        case ipm::IpmStatus::PrimalInfeasibleInaccurate: {
            // verify the Farkas certificate: -A'y in K*, b'y > 0
            Vector fy = -raw.y;  // adapter sign convention
            const double by = program.b.dot(fy);
            const Vector at_y = program.A.transpose() * fy;
            const bool ok = fy.allFinite() && by >= 1e-9 &&
                            dual_membership(program.cones, Vector(-at_y),
                                            1e-7 * std::max(1.0, fy.norm()));
            if (ok) {
                res.status = SolveStatus::PrimalInfeasible;
                res.farkas_y = fy / by;  // normalize b'y = 1
            } else {
                classify_non_optimal();
            }
            break;
        }
        case ipm::IpmStatus::DualInfeasible:
        case ipm::IpmStatus::DualInfeasibleInaccurate: {
            // verify the improving ray: A x = 0, x in K, c'x < 0
            const Vector& ray = raw.x;
            const double cx = program.c.dot(ray);
            const double rnorm = std::max(1.0, ray.norm());
            const bool ok = ray.allFinite() && cx <= -1e-9 &&
                            (program.A.rows() == 0 ||
                             (program.A * ray).lpNorm<Eigen::Infinity>() <= 1e-7 * rnorm) &&
                            membership(program.cones, ray, 1e-7);
            if (ok) {
                res.status = SolveStatus::DualInfeasible;
                res.ray_x = ray / -cx;  // normalize c'x = -1
            } else {
                classify_non_optimal();
            }
            break;
        }
        default:
            classify_non_optimal();
            break;
    }
    return res;
}

AnalyticCenter analytic_center(const StandardProblem& problem,
                               const SolveOptions& options) {
    const int n = problem.num_vars();
    const int m = problem.num_rows();
    const InteriorPoint rho = default_interior_point(problem.K);

    // margin program over (x, t, w, u):
    //   max t  s.t.  Ax = b,  x_B - t*rho_B - w_B = 0 per non-free block B,
    //                t + u = 1,  x free, w_B in block cone, u >= 0
    ConeProduct cones;
    cones.push_block({ConeKind::Free, n});
    cones.push_block({ConeKind::Free, 1});  // t
    std::vector<std::pair<int, int>> link;  // (block index, w offset)
    int extra = 0;
    for (std::size_t bi = 0; bi < problem.K.block_count(); ++bi) {
        const Cone& blk = problem.K.blocks()[bi];
        if (blk.kind == ConeKind::Free) continue;
        const int woff = cones.push_block(blk);
        link.emplace_back(static_cast<int>(bi), woff);
        extra += blk.dim;
    }
    const int u_off = cones.push_block({ConeKind::NonNeg, 1});
    const int nn = n + 1 + extra + 1;
    const int t_col = n;

    std::vector<Triplet> trips;
    for (int col = 0; col < problem.A.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(problem.A, col); it; ++it)
            trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                               it.value());
    int row = m;
    for (const auto& [bi, woff] : link) {
        const Cone& blk = problem.K.blocks()[bi];
        const int xoff = problem.K.block_offset(bi);
        for (int k = 0; k < blk.dim; ++k) {
            trips.emplace_back(row, xoff + k, 1.0);
            if (rho.rho(xoff + k) != 0.0) trips.emplace_back(row, t_col, -rho.rho(xoff + k));
            trips.emplace_back(row, woff + k, -1.0);
            ++row;
        }
    }
    trips.emplace_back(row, t_col, 1.0);
    trips.emplace_back(row, u_off, 1.0);
    ++row;

    ConicProgram margin;
    margin.c = Vector::Zero(nn);
    margin.c(t_col) = -1.0;  // maximize t
    margin.A = SparseMatrix(row, nn);
    margin.A.setFromTriplets(trips.begin(), trips.end());
    margin.b = Vector::Zero(row);
    margin.b.head(m) = problem.b;
    margin.b(row - 1) = 1.0;
    margin.cones = cones;

    const SolveResult sol = solve(margin, options);
    if (sol.status == SolveStatus::PrimalInfeasible)
        throw SolveError("relaxation is infeasible; no interior point exists");
    if (sol.status != SolveStatus::Optimal && sol.status != SolveStatus::Stalled)
        throw SolveError("interior-point computation did not produce a usable point");

    AnalyticCenter out;
    out.x = sol.x.head(n);
    out.margin = sol.x(t_col);
    if (out.margin < -1e-7)
        throw SolveError("relaxation is infeasible; no interior point exists");

    // a margin-positive point is still not strictly interior when the
    // equalities pin the feasible set to a single point
    const Eigen::MatrixXd dense_a(problem.A);
    const bool full_column_rank =
        m > 0 && Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(dense_a).rank() >= n;
    out.strictly_interior = out.margin > 1e-7 && !full_column_rank;
    return out;
}

}  // namespace coniccut
