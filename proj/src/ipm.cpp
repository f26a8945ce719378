#include "ipm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

namespace coniccut::ipm {
namespace {

using Triplet = Eigen::Triplet<double>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Nesterov-Todd scaling data for one second-order cone block.  The scaled
/// matrix is W = eta * Wbar with Wbar = [a q'; q I + qq'/(1+a)], and its
/// square is represented inside the KKT system through the low-rank arrow
/// expansion Wbar^2 = diag(d1, I) + u u' - v v' with u = (u0, u1*q) and
/// v = (0, v1*q), which costs two extra rows/columns per cone but keeps the
/// factorization sparsity independent of the cone dimension.
struct SocScaling {
    double eta = 1.0;
    double eta_sq = 1.0;
    double a = 1.0;  // first component of the scaling point wbar
    double d1 = 1.0;
    double u0 = 0.0;
    double u1 = 0.0;
    double v1 = 0.0;
    Vector q;  // tail of wbar (dimension = cone dimension - 1)
};

/// Convergence statistics of one homogeneous-embedding iterate.
struct Stats {
    double gap = kNaN;     // s'z in embedded coordinates
    double mu = kNaN;      // complementarity measure
    double pcost = kNaN;   // c'x / tau
    double dcost = kNaN;   // -(b'y + h'z) / tau
    double relgap = kNaN;  // gap relative to the objective magnitude
    double pres = kNaN;    // scaled primal residual
    double dres = kNaN;    // scaled dual residual
    double pinfres = kNaN; // primal-infeasibility certificate residual
    double dinfres = kNaN; // dual-infeasibility certificate residual
    double kapovert = kNaN;
};

/// Outcome of the convergence test, before inaccurate-mode mapping.
enum class Verdict { NotConverged, Optimal, PrimalInfeasible, DualInfeasible };

class HsdSolver {
  public:
    HsdSolver(const IpmProblem& prob, const IpmSettings& opts);
    IpmResult run();

  private:
    // problem data (equilibrated in place by equilibrate())
    IpmSettings opts_;
    int n_, p_, m_;               // variables, equality rows, cone rows
    int lp_dim_;                  // leading componentwise-nonnegative rows
    std::vector<int> soc_dims_;   // second-order cone block sizes
    std::vector<int> soc_offs_;   // offsets of the blocks within [0, m)
    SparseMatrix A_, G_;
    Vector c_, b_, h_;
    int mx_;                      // expanded cone dimension m + 2 * #soc
    int kkt_dim_;                 // n + p + mx
    std::vector<int> exp_off_;    // expanded offset of each SOC block

    // equilibration factors (unit until equilibrate() runs)
    Vector x_equil_, a_equil_, g_equil_;

    // iterate
    Vector x_, y_, z_, s_;
    double tau_ = 1.0, kap_ = 1.0;
    Stats stats_;

    // residuals and cached inner products for the current iterate
    Vector rx_, ry_, rz_;
    double rt_ = 0.0;
    double cx_ = 0.0, by_ = 0.0, hz_ = 0.0;
    double nx_ = 0.0, ny_ = 0.0, nz_ = 0.0, ns_ = 0.0;
    double hresx_ = 0.0, hresy_ = 0.0, hresz_ = 0.0;
    double resx0_ = 1.0, resy0_ = 1.0, resz0_ = 1.0;

    // Nesterov-Todd scalings and the scaled point lambda = W z
    Vector lp_v_, lp_w_;  // per-row W^2 and W for the nonnegative part
    std::vector<SocScaling> soc_;
    Vector lambda_;

    // KKT system: regularized copy for the factorization, unregularized
    // copy for iterative-refinement residuals
    SparseMatrix kkt_reg_, kkt_true_;
    Eigen::SimplicialLDLT<SparseMatrix, Eigen::Upper> ldlt_;
    bool pattern_ready_ = false;

    // best iterate seen, for stall recovery
    bool has_best_ = false;
    Vector bx_, by_vec_, bz_, bs_;
    double btau_ = 1.0, bkap_ = 1.0;
    Stats bstats_;
    int best_iter_ = 0;

    void equilibrate();
    void unscale_equilibration();
    void reset_scalings();
    bool update_scalings();
    bool refresh_kkt();
    Vector solve_kkt(const Vector& rhs) const;
    Vector apply_w(const Vector& u) const;
    Vector conic_product(const Vector& u, const Vector& v) const;
    Vector conic_division(const Vector& u, const Vector& v) const;
    Vector bring_to_cone(const Vector& r) const;
    double line_search(const Vector& ds, const Vector& dz, double dtau,
                       double dkap) const;
    Vector to_expanded(const Vector& u) const;
    Vector from_expanded(const Vector& u) const;
    void compute_residuals();
    void update_statistics();
    Verdict check_exit(bool reduced) const;
    bool is_better(const Stats& cand, const Stats& best) const;
    void save_if_best(int iter);
    void restore_best();
    IpmResult finish(IpmStatus status, int iters);
};

HsdSolver::HsdSolver(const IpmProblem& prob, const IpmSettings& opts)
    : opts_(opts),
      n_(static_cast<int>(prob.c.size())),
      p_(static_cast<int>(prob.A.rows())),
      m_(static_cast<int>(prob.G.rows())),
      lp_dim_(prob.n_nonneg),
      soc_dims_(prob.soc_dims),
      A_(prob.A),
      G_(prob.G),
      c_(prob.c),
      b_(prob.b),
      h_(prob.h) {
    if (m_ <= 0) throw std::invalid_argument("conic part must be nonempty");
    if (prob.A.cols() != n_ && p_ > 0)
        throw std::invalid_argument("A column count mismatch");
    if (prob.G.cols() != n_) throw std::invalid_argument("G column count mismatch");
    if (prob.b.size() != p_) throw std::invalid_argument("b size mismatch");
    if (prob.h.size() != m_) throw std::invalid_argument("h size mismatch");
    int total = lp_dim_;
    for (int q : soc_dims_) {
        if (q < 1) throw std::invalid_argument("empty second-order cone block");
        soc_offs_.push_back(total);
        total += q;
    }
    if (total != m_ || lp_dim_ < 0)
        throw std::invalid_argument("cone dimensions do not cover the rows of G");
    if (p_ == 0 && A_.cols() != n_) A_.resize(0, n_);

    mx_ = m_ + 2 * static_cast<int>(soc_dims_.size());
    kkt_dim_ = n_ + p_ + mx_;
    int off = lp_dim_;
    for (int q : soc_dims_) {
        exp_off_.push_back(off);
        off += q + 2;
    }

    soc_.resize(soc_dims_.size());
    for (std::size_t i = 0; i < soc_dims_.size(); ++i)
        soc_[i].q = Vector::Zero(soc_dims_[i] - 1);
    lp_v_ = Vector::Ones(lp_dim_);
    lp_w_ = Vector::Ones(lp_dim_);
    lambda_ = Vector::Zero(m_);
}

// --------------------------------------------------------------------------
// data equilibration

/// Ruiz-style scaling: a few rounds of dividing rows and columns by the
/// square root of their largest magnitude.  Rows belonging to one
/// second-order cone share a single factor so the scaled rows still form a
/// second-order cone constraint.
void HsdSolver::equilibrate() {
    x_equil_ = Vector::Ones(n_);
    a_equil_ = Vector::Ones(p_);
    g_equil_ = Vector::Ones(m_);

    for (int round = 0; round < opts_.equilibrate_iters; ++round) {
        Vector xm = Vector::Zero(n_), am = Vector::Zero(p_), gm = Vector::Zero(m_);
        for (int col = 0; col < A_.outerSize(); ++col)
            for (SparseMatrix::InnerIterator it(A_, col); it; ++it) {
                const double v =
                    std::abs(it.value()) / (a_equil_(it.row()) * x_equil_(it.col()));
                am(it.row()) = std::max(am(it.row()), v);
                xm(it.col()) = std::max(xm(it.col()), v);
            }
        for (int col = 0; col < G_.outerSize(); ++col)
            for (SparseMatrix::InnerIterator it(G_, col); it; ++it) {
                const double v =
                    std::abs(it.value()) / (g_equil_(it.row()) * x_equil_(it.col()));
                gm(it.row()) = std::max(gm(it.row()), v);
                xm(it.col()) = std::max(xm(it.col()), v);
            }
        // one factor per second-order cone block
        for (std::size_t i = 0; i < soc_dims_.size(); ++i) {
            const double total = gm.segment(soc_offs_[i], soc_dims_[i]).sum();
            gm.segment(soc_offs_[i], soc_dims_[i]).setConstant(total);
        }
        auto factor = [](double v) { return v < 1e-6 ? 1.0 : std::sqrt(v); };
        for (int j = 0; j < n_; ++j) x_equil_(j) *= factor(xm(j));
        for (int i = 0; i < p_; ++i) a_equil_(i) *= factor(am(i));
        for (int i = 0; i < m_; ++i) g_equil_(i) *= factor(gm(i));
    }

    for (int col = 0; col < A_.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(A_, col); it; ++it)
            it.valueRef() /= a_equil_(it.row()) * x_equil_(it.col());
    for (int col = 0; col < G_.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(G_, col); it; ++it)
            it.valueRef() /= g_equil_(it.row()) * x_equil_(it.col());
    c_ = c_.cwiseQuotient(x_equil_);
    b_ = b_.cwiseQuotient(a_equil_);
    h_ = h_.cwiseQuotient(g_equil_);
}

/// Undo the equilibration on the final iterate.  Inner products such as
/// c'x, b'y and h'z are invariant under this change of variables.
void HsdSolver::unscale_equilibration() {
    x_ = x_.cwiseQuotient(x_equil_);
    y_ = y_.cwiseQuotient(a_equil_);
    z_ = z_.cwiseQuotient(g_equil_);
    s_ = s_.cwiseProduct(g_equil_);
}

// --------------------------------------------------------------------------
// cone algebra

Vector HsdSolver::to_expanded(const Vector& u) const {
    Vector out = Vector::Zero(mx_);
    out.head(lp_dim_) = u.head(lp_dim_);
    for (std::size_t i = 0; i < soc_dims_.size(); ++i)
        out.segment(exp_off_[i], soc_dims_[i]) = u.segment(soc_offs_[i], soc_dims_[i]);
    return out;
}

Vector HsdSolver::from_expanded(const Vector& u) const {
    Vector out(m_);
    out.head(lp_dim_) = u.head(lp_dim_);
    for (std::size_t i = 0; i < soc_dims_.size(); ++i)
        out.segment(soc_offs_[i], soc_dims_[i]) = u.segment(exp_off_[i], soc_dims_[i]);
    return out;
}

/// y = W u with the current Nesterov-Todd scaling.
Vector HsdSolver::apply_w(const Vector& u) const {
    Vector out(m_);
    out.head(lp_dim_) = lp_w_.cwiseProduct(u.head(lp_dim_));
    for (std::size_t i = 0; i < soc_.size(); ++i) {
        const SocScaling& sc = soc_[i];
        const int off = soc_offs_[i], q = soc_dims_[i];
        const auto tail = u.segment(off + 1, q - 1);
        const double zeta = sc.q.dot(tail);
        out(off) = sc.eta * (sc.a * u(off) + zeta);
        out.segment(off + 1, q - 1) =
            sc.eta * (tail + (u(off) + zeta / (1.0 + sc.a)) * sc.q);
    }
    return out;
}

/// Jordan-algebra product u o v (componentwise on the nonnegative part).
Vector HsdSolver::conic_product(const Vector& u, const Vector& v) const {
    Vector out(m_);
    out.head(lp_dim_) = u.head(lp_dim_).cwiseProduct(v.head(lp_dim_));
    for (std::size_t i = 0; i < soc_.size(); ++i) {
        const int off = soc_offs_[i], q = soc_dims_[i];
        out(off) = u.segment(off, q).dot(v.segment(off, q));
        out.segment(off + 1, q - 1) = u(off) * v.segment(off + 1, q - 1) +
                                      v(off) * u.segment(off + 1, q - 1);
    }
    return out;
}

/// Jordan-algebra division u \ v, the inverse of conic_product in u.
Vector HsdSolver::conic_division(const Vector& u, const Vector& v) const {
    Vector out(m_);
    out.head(lp_dim_) = v.head(lp_dim_).cwiseQuotient(u.head(lp_dim_));
    for (std::size_t i = 0; i < soc_.size(); ++i) {
        const int off = soc_offs_[i], q = soc_dims_[i];
        const auto ut = u.segment(off + 1, q - 1);
        const auto vt = v.segment(off + 1, q - 1);
        const double rho = u(off) * u(off) - ut.squaredNorm();
        const double zeta = ut.dot(vt);
        out(off) = (u(off) * v(off) - zeta) / rho;
        out.segment(off + 1, q - 1) =
            ((zeta / u(off) - v(off)) / rho) * ut + (1.0 / u(off)) * vt;
    }
    return out;
}

/// Shift r along the cone's unit element until it is safely interior.
Vector HsdSolver::bring_to_cone(const Vector& r) const {
    double worst = -1.0;
    for (int i = 0; i < lp_dim_; ++i)
        if (r(i) <= 0.0) worst = std::max(worst, -r(i));
    for (std::size_t i = 0; i < soc_.size(); ++i) {
        const int off = soc_offs_[i], q = soc_dims_[i];
        const double res = r(off) - r.segment(off + 1, q - 1).norm();
        if (res <= 0.0) worst = std::max(worst, -res);
    }
    const double shift = worst + 1.0;
    Vector s = r;
    s.head(lp_dim_).array() += shift;
    for (std::size_t i = 0; i < soc_.size(); ++i) s(soc_offs_[i]) += shift;
    return s;
}

/// Largest step length t such that lambda + t*ds and lambda + t*dz stay in
/// the cone, together with the tau/kappa ratio tests, clamped to the
/// configured range.  ds and dz live in the Nesterov-Todd scaled space.
double HsdSolver::line_search(const Vector& ds, const Vector& dz, double dtau,
                              double dkap) const {
    double alpha = 2.0;
    for (int i = 0; i < lp_dim_; ++i) {
        if (ds(i) < 0.0) alpha = std::min(alpha, -lambda_(i) / ds(i));
        if (dz(i) < 0.0) alpha = std::min(alpha, -lambda_(i) / dz(i));
    }
    if (dtau < 0.0) alpha = std::min(alpha, -tau_ / dtau);
    if (dkap < 0.0) alpha = std::min(alpha, -kap_ / dkap);

    double conic_step = 0.0;
    for (std::size_t i = 0; i < soc_.size(); ++i) {
        const int off = soc_offs_[i], q = soc_dims_[i];
        const auto lt = lambda_.segment(off + 1, q - 1);
        const double ln2 = lambda_(off) * lambda_(off) - lt.squaredNorm();
        if (ln2 <= 0.0) continue;
        const double ln = std::sqrt(ln2);
        const double lb0 = lambda_(off) / ln;
        const Vector lbt = lt / ln;
        // distance to the boundary along each scaled direction
        for (const Vector* dir : {&ds, &dz}) {
            const double d0 = (*dir)(off);
            const auto dt = dir->segment(off + 1, q - 1);
            const double rho0 = lb0 * d0 - lbt.dot(dt);
            const double fac = (rho0 + d0) / (lb0 + 1.0);
            const double rnorm = (dt - fac * lbt).norm() / ln - rho0 / ln;
            conic_step = std::max(conic_step, rnorm);
        }
    }
    if (conic_step > 0.0) alpha = std::min(alpha, 1.0 / conic_step);
    return std::clamp(alpha, opts_.step_min, opts_.step_max);
}

// --------------------------------------------------------------------------
// Nesterov-Todd scalings

void HsdSolver::reset_scalings() {
    lp_v_.setOnes();
    lp_w_.setOnes();
    for (std::size_t i = 0; i < soc_.size(); ++i) {
        soc_[i] = SocScaling{};
        soc_[i].q = Vector::Zero(soc_dims_[i] - 1);
    }
}

/// Compute the scaling point between s and z.  Returns false when the
/// iterate has left the cone interior, which signals a numerical breakdown.
bool HsdSolver::update_scalings() {
    for (int i = 0; i < lp_dim_; ++i) {
        if (s_(i) <= 0.0 || z_(i) <= 0.0) return false;
        lp_v_(i) = s_(i) / z_(i);
        lp_w_(i) = std::sqrt(lp_v_(i));
    }
    for (std::size_t i = 0; i < soc_.size(); ++i) {
        const int off = soc_offs_[i], q = soc_dims_[i];
        const auto sk = s_.segment(off, q);
        const auto zk = z_.segment(off, q);
        const double sres = sk(0) * sk(0) - sk.tail(q - 1).squaredNorm();
        const double zres = zk(0) * zk(0) - zk.tail(q - 1).squaredNorm();
        if (sres <= 0.0 || zres <= 0.0) return false;
        const double snorm = std::sqrt(sres), znorm = std::sqrt(zres);
        const Vector sbar = sk / snorm, zbar = zk / znorm;

        SocScaling& sc = soc_[i];
        sc.eta_sq = snorm / znorm;
        sc.eta = std::sqrt(sc.eta_sq);
        const double gamma = std::sqrt(0.5 * (1.0 + sbar.dot(zbar)));
        sc.a = (0.5 / gamma) * (sbar(0) + zbar(0));
        sc.q = (0.5 / gamma) * (sbar.tail(q - 1) - zbar.tail(q - 1));

        const double w = sc.q.squaredNorm();
        const double bb = 1.0 / (1.0 + sc.a);
        const double cc = 1.0 + sc.a + w * bb;
        const double dd = 1.0 + 2.0 * bb + w * bb * bb;
        sc.d1 = std::max(0.0, 0.5 * (sc.a * sc.a + w * (1.0 - cc * cc / (1.0 + w * dd))));
        const double u0_sq = sc.a * sc.a + w - sc.d1;
        if (u0_sq <= 0.0) return false;
        sc.u0 = std::sqrt(u0_sq);
        const double c2byu02 = cc * cc / u0_sq;
        if (c2byu02 <= dd) return false;
        sc.u1 = std::sqrt(c2byu02);
        sc.v1 = std::sqrt(c2byu02 - dd);
    }
    lambda_ = apply_w(z_);
    return true;
}

// --------------------------------------------------------------------------
// KKT system

/// Rebuild the KKT values for the current scalings and refactorize.
///
///     [ dI   A'   G~' ]
///     [ A   -dI    0  ]  with the scaling blocks -W^2 (arrow-expanded)
///     [ G~   0   -V~  ]  in the lower-right corner.
///
/// Only the upper triangle is stored.  kkt_true_ carries the same values
/// without the static regularization d and is used to compute residuals for
/// iterative refinement.
bool HsdSolver::refresh_kkt() {
    const double delta = opts_.static_reg;
    std::vector<Triplet> reg, tru;
    reg.reserve(static_cast<std::size_t>(kkt_dim_ + A_.nonZeros() + G_.nonZeros() + 3 * mx_));
    tru.reserve(reg.capacity());

    for (int j = 0; j < n_; ++j) reg.emplace_back(j, j, delta);
    for (int col = 0; col < A_.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(A_, col); it; ++it) {
            reg.emplace_back(static_cast<int>(it.col()), n_ + static_cast<int>(it.row()),
                             it.value());
            tru.emplace_back(static_cast<int>(it.col()), n_ + static_cast<int>(it.row()),
                             it.value());
        }
    for (int i = 0; i < p_; ++i) reg.emplace_back(n_ + i, n_ + i, -delta);

    // G' entries: column n+p+r of the KKT matrix holds G row r
    const int base = n_ + p_;
    std::vector<int> exp_row_of(m_);
    for (int i = 0; i < lp_dim_; ++i) exp_row_of[i] = i;
    for (std::size_t i = 0; i < soc_dims_.size(); ++i)
        for (int k = 0; k < soc_dims_[i]; ++k)
            exp_row_of[soc_offs_[i] + k] = exp_off_[i] + k;
    for (int col = 0; col < G_.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(G_, col); it; ++it) {
            const int kcol = base + exp_row_of[it.row()];
            reg.emplace_back(static_cast<int>(it.col()), kcol, it.value());
            tru.emplace_back(static_cast<int>(it.col()), kcol, it.value());
        }

    // scaling blocks
    for (int i = 0; i < lp_dim_; ++i) {
        reg.emplace_back(base + i, base + i, -lp_v_(i) - delta);
        tru.emplace_back(base + i, base + i, -lp_v_(i));
    }
    for (std::size_t i = 0; i < soc_.size(); ++i) {
        const SocScaling& sc = soc_[i];
        const int q = soc_dims_[i];
        const int eb = base + exp_off_[i];
        const double es = sc.eta_sq;
        auto both = [&](int r, int ccol, double vreg, double vtrue) {
            reg.emplace_back(r, ccol, vreg);
            tru.emplace_back(r, ccol, vtrue);
        };
        both(eb, eb, -es * sc.d1 - delta, -es * sc.d1);
        for (int k = 1; k < q; ++k) both(eb + k, eb + k, -es - delta, -es);
        for (int k = 1; k < q; ++k)  // column of v = (0, v1*q)
            both(eb + k, eb + q, -es * sc.v1 * sc.q(k - 1), -es * sc.v1 * sc.q(k - 1));
        both(eb + q, eb + q, -es, -es);
        both(eb, eb + q + 1, -es * sc.u0, -es * sc.u0);  // column of u = (u0, u1*q)
        for (int k = 1; k < q; ++k)
            both(eb + k, eb + q + 1, -es * sc.u1 * sc.q(k - 1), -es * sc.u1 * sc.q(k - 1));
        both(eb + q + 1, eb + q + 1, es + delta, es);
    }

    kkt_reg_.resize(kkt_dim_, kkt_dim_);
    kkt_reg_.setFromTriplets(reg.begin(), reg.end());
    kkt_true_.resize(kkt_dim_, kkt_dim_);
    kkt_true_.setFromTriplets(tru.begin(), tru.end());

    if (!pattern_ready_) {
        ldlt_.analyzePattern(kkt_reg_);
        pattern_ready_ = true;
    }
    ldlt_.factorize(kkt_reg_);
    return ldlt_.info() == Eigen::Success;
}

/// Solve against the factorization, polishing with iterative refinement
/// until the residual of the unregularized system stops improving.
Vector HsdSolver::solve_kkt(const Vector& rhs) const {
    Vector sol = ldlt_.solve(rhs);
    const double bnorm = 1.0 + rhs.lpNorm<Eigen::Infinity>();
    double prev = kInf;
    Vector corr;
    for (int it = 0; it <= opts_.max_refine_iters; ++it) {
        const Vector err = rhs - kkt_true_.selfadjointView<Eigen::Upper>() * sol;
        const double nerr = err.lpNorm<Eigen::Infinity>();
        if (it > 0 && nerr >= prev) {
            sol -= corr;  // the last correction made things worse
            break;
        }
        if (nerr <= opts_.linsys_accuracy * bnorm || it == opts_.max_refine_iters) break;
        corr = ldlt_.solve(err);
        sol += corr;
        prev = nerr;
    }
    return sol;
}

// --------------------------------------------------------------------------
// residuals, statistics and exit tests

void HsdSolver::compute_residuals() {
    rx_ = -(A_.transpose() * y_) - G_.transpose() * z_ - c_ * tau_;
    ry_ = A_ * x_ - b_ * tau_;
    rz_ = s_ + G_ * x_ - h_ * tau_;
    cx_ = c_.dot(x_);
    by_ = p_ > 0 ? b_.dot(y_) : 0.0;
    hz_ = h_.dot(z_);
    rt_ = kap_ + cx_ + by_ + hz_;
    nx_ = x_.norm();
    ny_ = y_.norm();
    nz_ = z_.norm();
    ns_ = s_.norm();
    hresx_ = (rx_ + c_ * tau_).norm();  // ||A'y + G'z||
    hresy_ = (ry_ + b_ * tau_).norm();  // ||A x||
    hresz_ = (rz_ + h_ * tau_).norm();  // ||G x + s||
}

void HsdSolver::update_statistics() {
    const double degree = static_cast<double>(lp_dim_ + soc_.size());
    stats_.gap = s_.dot(z_);
    stats_.mu = (stats_.gap + kap_ * tau_) / (degree + 1.0);
    stats_.kapovert = kap_ / tau_;
    stats_.pcost = cx_ / tau_;
    stats_.dcost = -(by_ + hz_) / tau_;
    if (stats_.pcost < 0.0)
        stats_.relgap = stats_.gap / -stats_.pcost;
    else if (stats_.dcost > 0.0)
        stats_.relgap = stats_.gap / stats_.dcost;
    else
        stats_.relgap = kNaN;

    const double nry = p_ > 0 ? ry_.norm() / std::max(resy0_ + nx_, 1.0) : 0.0;
    const double nrz = rz_.norm() / std::max(resz0_ + nx_ + ns_, 1.0);
    stats_.pres = std::max(nry, nrz) / tau_;
    stats_.dres = rx_.norm() / std::max(resx0_ + ny_ + nz_, 1.0) / tau_;

    // certificate residuals, meaningful only when the objective rays point
    // the right way
    if ((hz_ + by_) / std::max(ny_ + nz_, 1.0) < -opts_.reltol)
        stats_.pinfres = hresx_ / std::max(ny_ + nz_, 1.0);
    else
        stats_.pinfres = kNaN;
    if (cx_ / std::max(nx_, 1.0) < -opts_.reltol)
        stats_.dinfres =
            std::max(hresy_ / std::max(nx_, 1.0), hresz_ / std::max(nx_ + ns_, 1.0));
    else
        stats_.dinfres = kNaN;
}

Verdict HsdSolver::check_exit(bool reduced) const {
    const double ft = reduced ? opts_.feastol_inacc : opts_.feastol;
    const double at = reduced ? opts_.abstol_inacc : opts_.abstol;
    const double rt = reduced ? opts_.reltol_inacc : opts_.reltol;
    if (stats_.pres < ft && stats_.dres < ft &&
        (stats_.gap < at || (std::isfinite(stats_.relgap) && stats_.relgap < rt)))
        return Verdict::Optimal;
    if (std::isfinite(stats_.pinfres) && stats_.pinfres < ft && tau_ < kap_)
        return Verdict::PrimalInfeasible;
    if (std::isfinite(stats_.dinfres) && stats_.dinfres < ft && tau_ < kap_)
        return Verdict::DualInfeasible;
    return Verdict::NotConverged;
}

/// Merit comparison used to keep the best iterate for stall recovery:
/// primarily the worst feasibility residual, with the duality gap as a
/// tie-breaker.
bool HsdSolver::is_better(const Stats& cand, const Stats& best) const {
    const double mc = std::max(cand.pres, cand.dres);
    const double mb = std::max(best.pres, best.dres);
    if (!std::isfinite(mb)) return true;
    if (!std::isfinite(mc)) return false;
    if (mc != mb) return mc < mb;
    return std::abs(cand.gap) < std::abs(best.gap);
}

void HsdSolver::save_if_best(int iter) {
    if (has_best_ && !is_better(stats_, bstats_)) return;
    has_best_ = true;
    bx_ = x_;
    by_vec_ = y_;
    bz_ = z_;
    bs_ = s_;
    btau_ = tau_;
    bkap_ = kap_;
    bstats_ = stats_;
    best_iter_ = iter;
}

void HsdSolver::restore_best() {
    if (!has_best_) return;
    x_ = bx_;
    y_ = by_vec_;
    z_ = bz_;
    s_ = bs_;
    tau_ = btau_;
    kap_ = bkap_;
    compute_residuals();
    update_statistics();
}

// --------------------------------------------------------------------------
// final packaging

IpmResult HsdSolver::finish(IpmStatus status, int iters) {
    IpmResult res;
    res.status = status;
    res.iterations = iters;
    res.pcost = stats_.pcost;
    res.dcost = stats_.dcost;
    res.gap = stats_.gap;
    res.pres = stats_.pres;
    res.dres = stats_.dres;

    unscale_equilibration();
    const double tau_safe = std::max(tau_, 1e-12);
    switch (status) {
        case IpmStatus::PrimalInfeasible:
        case IpmStatus::PrimalInfeasibleInaccurate: {
            // scale the Farkas certificate (y, z) so that b'y + h'z = -1
            const double d = -(by_ + hz_);
            const double sc = d > 1e-12 ? 1.0 / d : 1.0 / tau_safe;
            y_ *= sc;
            z_ *= sc;
            x_ /= tau_safe;
            s_ /= tau_safe;
            break;
        }
        case IpmStatus::DualInfeasible:
        case IpmStatus::DualInfeasibleInaccurate: {
            // scale the unbounded ray x so that c'x = -1
            const double d = -cx_;
            const double sc = d > 1e-12 ? 1.0 / d : 1.0 / tau_safe;
            x_ *= sc;
            s_ *= sc;
            y_ /= tau_safe;
            z_ /= tau_safe;
            break;
        }
        default:
            x_ /= tau_safe;
            s_ /= tau_safe;
            y_ /= tau_safe;
            z_ /= tau_safe;
            break;
    }
    res.x = x_;
    res.y = y_;
    res.z = z_;
    res.s = s_;
    return res;
}

// --------------------------------------------------------------------------
// main loop

IpmResult HsdSolver::run() {
    equilibrate();
    resx0_ = std::max(1.0, c_.norm());
    resy0_ = std::max(1.0, b_.norm());
    resz0_ = std::max(1.0, h_.norm());

    reset_scalings();
    if (!refresh_kkt()) return finish(IpmStatus::Fatal, 0);

    // initial point: solve two systems under the identity scaling and shift
    // the conic parts into the interior
    {
        Vector r1 = Vector::Zero(kkt_dim_);
        r1.segment(n_, p_) = b_;
        r1.tail(mx_) = to_expanded(h_);
        const Vector s1 = solve_kkt(r1);
        x_ = s1.head(n_);
        s_ = bring_to_cone(-from_expanded(s1.tail(mx_)));

        Vector r2 = Vector::Zero(kkt_dim_);
        r2.head(n_) = -c_;
        const Vector s2 = solve_kkt(r2);
        y_ = s2.segment(n_, p_);
        z_ = bring_to_cone(from_expanded(s2.tail(mx_)));
    }
    tau_ = 1.0;
    kap_ = 1.0;

    double prev_pres = kInf;
    int iter = 0;
    IpmStatus status = IpmStatus::Numerics;

    for (iter = 0; iter <= opts_.max_iterations; ++iter) {
        compute_residuals();
        update_statistics();
        if (std::getenv("IPM_TRACE")) {
            std::fprintf(stderr,
                         "it=%d pres=%.3e dres=%.3e gap=%.3e mu=%.3e tau=%.3e "
                         "kap=%.3e pcost=%.6f dcost=%.6f\n",
                         iter, stats_.pres, stats_.dres, stats_.gap, stats_.mu,
                         tau_, kap_, stats_.pcost, stats_.dcost);
        }

        Verdict v = check_exit(false);
        if (v == Verdict::Optimal) return finish(IpmStatus::Optimal, iter);
        if (v == Verdict::PrimalInfeasible)
            return finish(IpmStatus::PrimalInfeasible, iter);
        if (v == Verdict::DualInfeasible)
            return finish(IpmStatus::DualInfeasible, iter);

        const bool numerics_broke =
            !std::isfinite(stats_.pres) || !std::isfinite(stats_.dres) ||
            !std::isfinite(stats_.gap) || tau_ <= 0.0 || kap_ <= 0.0;
        // Residual growth only counts as divergence once the residual is
        // itself significant; an exactly feasible start would otherwise trip
        // the guard on rounding noise.  Same slack for the gap sign test.
        const bool diverging =
            iter > 0 &&
            ((stats_.pres > opts_.safeguard * prev_pres &&
              stats_.pres > opts_.feastol) ||
             stats_.gap < -opts_.feastol);
        if (numerics_broke || diverging) {
            restore_best();
            v = check_exit(true);
            status = v == Verdict::Optimal              ? IpmStatus::OptimalInaccurate
                     : v == Verdict::PrimalInfeasible   ? IpmStatus::PrimalInfeasibleInaccurate
                     : v == Verdict::DualInfeasible     ? IpmStatus::DualInfeasibleInaccurate
                                                        : IpmStatus::Numerics;
            return finish(status, iter);
        }

        save_if_best(iter);
        if (iter == opts_.max_iterations) {
            restore_best();
            v = check_exit(true);
            status = v == Verdict::Optimal              ? IpmStatus::OptimalInaccurate
                     : v == Verdict::PrimalInfeasible   ? IpmStatus::PrimalInfeasibleInaccurate
                     : v == Verdict::DualInfeasible     ? IpmStatus::DualInfeasibleInaccurate
                                                        : IpmStatus::MaxIterations;
            return finish(status, iter);
        }
        prev_pres = stats_.pres;

        if (!update_scalings() || !refresh_kkt()) {
            restore_best();
            v = check_exit(true);
            status = v == Verdict::Optimal ? IpmStatus::OptimalInaccurate
                                           : IpmStatus::Numerics;
            return finish(status, iter);
        }

        // direction associated with the static right-hand side [-c; b; h]
        Vector r1 = Vector::Zero(kkt_dim_);
        r1.head(n_) = -c_;
        r1.segment(n_, p_) = b_;
        r1.tail(mx_) = to_expanded(h_);
        const Vector s1 = solve_kkt(r1);
        const Vector dx1 = s1.head(n_);
        const Vector dy1 = s1.segment(n_, p_);
        const Vector dz1 = from_expanded(s1.tail(mx_));
        const double dtau_denom =
            kap_ / tau_ - c_.dot(dx1) - (p_ > 0 ? b_.dot(dy1) : 0.0) - h_.dot(dz1);

        // affine (predictor) direction
        Vector r2 = Vector::Zero(kkt_dim_);
        r2.head(n_) = rx_;
        r2.segment(n_, p_) = -ry_;
        r2.tail(mx_) = to_expanded(s_ - rz_);
        Vector s2 = solve_kkt(r2);
        Vector dx2 = s2.head(n_);
        Vector dy2 = s2.segment(n_, p_);
        Vector dz2 = from_expanded(s2.tail(mx_));

        const double dtau_aff =
            (rt_ - kap_ + c_.dot(dx2) + (p_ > 0 ? b_.dot(dy2) : 0.0) + h_.dot(dz2)) /
            dtau_denom;
        const Vector dzaff = dz2 + dtau_aff * dz1;
        const Vector w_dzaff = apply_w(dzaff);
        const Vector dsaff_by_w = -lambda_ - w_dzaff;
        const double dkap_aff = -kap_ - (kap_ / tau_) * dtau_aff;

        const double step_aff = line_search(dsaff_by_w, w_dzaff, dtau_aff, dkap_aff);
        const double sigma = std::clamp(std::pow(1.0 - step_aff, 3.0),
                                        opts_.sigma_min, opts_.sigma_max);
        const double one_ms = 1.0 - sigma;

        // combined (predictor + corrector + centering) direction
        Vector ds1 = conic_product(lambda_, lambda_) + conic_product(dsaff_by_w, w_dzaff);
        ds1.head(lp_dim_).array() -= sigma * stats_.mu;
        for (std::size_t i = 0; i < soc_.size(); ++i)
            ds1(soc_offs_[i]) -= sigma * stats_.mu;
        const Vector ds2 = conic_division(lambda_, ds1);
        const double bkap = kap_ * tau_ + dkap_aff * dtau_aff - sigma * stats_.mu;

        Vector r3 = Vector::Zero(kkt_dim_);
        r3.head(n_) = one_ms * rx_;
        r3.segment(n_, p_) = -one_ms * ry_;
        r3.tail(mx_) = to_expanded(apply_w(ds2) - one_ms * rz_);
        const Vector s3 = solve_kkt(r3);
        dx2 = s3.head(n_);
        dy2 = s3.segment(n_, p_);
        dz2 = from_expanded(s3.tail(mx_));

        const double dtau = (one_ms * rt_ - bkap / tau_ + c_.dot(dx2) +
                             (p_ > 0 ? b_.dot(dy2) : 0.0) + h_.dot(dz2)) /
                            dtau_denom;
        const Vector dx = dx2 + dtau * dx1;
        const Vector dy = dy2 + dtau * dy1;
        const Vector dz = dz2 + dtau * dz1;
        const Vector w_dz = apply_w(dz);
        const Vector ds_by_w = -(ds2 + w_dz);
        const double dkap = -(bkap + kap_ * dtau) / tau_;

        const double raw_step = line_search(ds_by_w, w_dz, dtau, dkap);
        if (raw_step <= opts_.step_min) {
            restore_best();
            v = check_exit(true);
            status = v == Verdict::Optimal ? IpmStatus::OptimalInaccurate
                                           : IpmStatus::Numerics;
            return finish(status, iter);
        }
        const double alpha = opts_.step_scale * raw_step;

        x_ += alpha * dx;
        y_ += alpha * dy;
        z_ += alpha * dz;
        s_ += alpha * apply_w(ds_by_w);
        tau_ += alpha * dtau;
        kap_ += alpha * dkap;
    }
    return finish(status, iter);
}

}  // namespace

const char* ipm_status_name(IpmStatus s) {
    switch (s) {
        case IpmStatus::Optimal: return "optimal";
        case IpmStatus::PrimalInfeasible: return "primal_infeasible";
        case IpmStatus::DualInfeasible: return "dual_infeasible";
        case IpmStatus::OptimalInaccurate: return "optimal_inaccurate";
        case IpmStatus::PrimalInfeasibleInaccurate: return "primal_infeasible_inaccurate";
        case IpmStatus::DualInfeasibleInaccurate: return "dual_infeasible_inaccurate";
        case IpmStatus::MaxIterations: return "max_iterations";
        case IpmStatus::Numerics: return "numerics";
        case IpmStatus::Fatal: return "fatal";
    }
    return "unknown";
}

IpmResult solve(const IpmProblem& problem, const IpmSettings& settings) {
    return HsdSolver(problem, settings).run();
}

}  // namespace coniccut::ipm
