#pragma once
/**
 * @file ipm.hpp
 * @brief Homogeneous self-dual interior-point method for LP/SOCP.
 *
 * Solves problems in the inequality form
 *
 *     min  c'x
 *     s.t. A x = b
 *          G x + s = h,   s in C = R+^l x SOC(q_1) x ... x SOC(q_N)
 *
 * with a Mehrotra predictor-corrector on the homogeneous self-dual
 * embedding, Nesterov-Todd scaling, Ruiz-style equilibration of the
 * problem data, a sparse quasi-definite KKT factorization (LDLT without
 * numeric pivoting, made safe by static regularization), and iterative
 * refinement of every KKT solve.  The design follows the standard
 * conelp/ECOS recipe; all tolerances are configurable.
 *
 * The embedding certifies one of: optimality, primal infeasibility
 * (Farkas dual ray), or dual infeasibility (unbounded primal ray).
 * When the central path stalls it returns the best iterate seen.
 */

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <optional>
#include <vector>

namespace coniccut::ipm {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

enum class IpmStatus {
    Optimal,
    PrimalInfeasible,
    DualInfeasible,
    OptimalInaccurate,
    PrimalInfeasibleInaccurate,
    DualInfeasibleInaccurate,
    MaxIterations,
    Numerics,
    Fatal,
};

const char* ipm_status_name(IpmStatus s);

struct IpmSettings {
    int max_iterations = 200;
    double feastol = 1e-8;
    double abstol = 1e-8;
    double reltol = 1e-8;
    double feastol_inacc = 1e-4;
    double abstol_inacc = 5e-5;
    double reltol_inacc = 5e-5;
    int max_refine_iters = 9;       // iterative refinement cap per KKT solve
    double refine_stop_ratio = 6.0; // stop refining once error decays slower than this
    double linsys_accuracy = 1e-14; // refinement target, relative to the RHS
    double static_reg = 7e-8;       // static regularization of the KKT matrix
    double step_scale = 0.99;       // fraction of the step to the boundary
    double step_min = 1e-6;
    double step_max = 0.999;
    double sigma_min = 1e-4;
    double sigma_max = 1.0;
    double safeguard = 500.0;       // divergence guard on the primal residual
    int equilibrate_iters = 3;
};

struct IpmProblem {
    Vector c;
    SparseMatrix A;  // p x n equality constraints (may have 0 rows)
    Vector b;
    SparseMatrix G;  // m x n conic constraints (may have 0 rows)
    Vector h;
    int n_nonneg = 0;             // leading rows of G: componentwise s >= 0
    std::vector<int> soc_dims;    // trailing rows: second-order cone blocks
};

struct IpmResult {
    IpmStatus status = IpmStatus::Fatal;
    Vector x;  // primal variables (scaled back, divided by tau)
    Vector y;  // equality multipliers
    Vector z;  // conic multipliers
    Vector s;  // conic slacks
    int iterations = 0;
    double pcost = 0.0;
    double dcost = 0.0;
    double gap = 0.0;
    double pres = 0.0;
    double dres = 0.0;
};

IpmResult solve(const IpmProblem& problem, const IpmSettings& settings = {});

}  // namespace coniccut::ipm
