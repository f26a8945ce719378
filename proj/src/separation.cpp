#include "coniccut/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coniccut {

namespace {

constexpr double kRowFeasTol = 1e-6;  // A xbar = b precondition

// Pushes the dual cone of K block by block.  Scalar and quadratic blocks
// are self-dual; the dual of a free block is {0}, expressed as a free
// block plus pinning rows, whose absolute coordinates are appended to
// `pins`.
void append_dual_cone(ConeProduct& cones, const ConeProduct& K,
                      std::vector<int>& pins) {
    for (const Cone& blk : K.blocks()) {
        int off = cones.push_block(blk);
        if (blk.kind == ConeKind::Free) {
            for (int k = 0; k < blk.dim; ++k) pins.push_back(off + k);
        }
    }
}

void require_on_row_space(const StandardProblem& problem, const Vector& xbar) {
    if (xbar.size() != problem.num_vars()) {
        throw std::invalid_argument("separation: xbar has wrong dimension");
    }
    if (problem.num_rows() == 0) return;
    double err = (problem.A * xbar - problem.b).cwiseAbs().maxCoeff();
    if (err > kRowFeasTol * (1.0 + problem.b.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument(
            "separation: xbar violates the equality rows by " +
            std::to_string(err));
    }
}

InteriorPoint resolve_rho(const Normalization& norm, const ConeProduct& K) {
    if (norm.rho) return *norm.rho;
    return default_interior_point(K);
}

}  // namespace

bool is_two_term_split(const Disjunction& disjunction) {
    return disjunction.split_tag.has_value() &&
           disjunction.term_count() == 2 &&
           disjunction.terms[0].D.rows() == 1 &&
           disjunction.terms[1].D.rows() == 1;
}

const char* normalization_name(Normalization::Kind kind) {
    switch (kind) {
        case Normalization::Kind::Alpha: return "alpha";
        case Normalization::Kind::Polar: return "polar";
        case Normalization::Kind::Standard: return "standard";
        case Normalization::Kind::Trivial: return "trivial";
        case Normalization::Kind::Uniform: return "uniform";
    }
    return "?";
}

std::optional<Normalization::Kind> normalization_from_name(
    const std::string& name) {
    if (name == "alpha") return Normalization::Kind::Alpha;
    if (name == "polar") return Normalization::Kind::Polar;
    if (name == "standard") return Normalization::Kind::Standard;
    if (name == "trivial") return Normalization::Kind::Trivial;
    if (name == "uniform") return Normalization::Kind::Uniform;
    return std::nullopt;
}

Normalization alpha_normalization() {
    return Normalization{Normalization::Kind::Alpha, std::nullopt,
                         std::nullopt};
}

Normalization standard_normalization(std::optional<InteriorPoint> rho) {
    return Normalization{Normalization::Kind::Standard, std::nullopt,
                         std::move(rho)};
}

Normalization trivial_normalization() {
    return Normalization{Normalization::Kind::Trivial, std::nullopt,
                         std::nullopt};
}

Normalization uniform_normalization(std::optional<InteriorPoint> rho) {
    return Normalization{Normalization::Kind::Uniform, std::nullopt,
                         std::move(rho)};
}

Normalization polar_normalization(Vector gamma) {
    return Normalization{Normalization::Kind::Polar, std::move(gamma),
                         std::nullopt};
}

std::optional<Normalization> polar_from_center(const StandardProblem& problem,
                                               const Vector& xbar,
                                               const SolveOptions& options) {
    AnalyticCenter center;
    try {
        center = analytic_center(problem, options);
    } catch (const SolveError&) {
        return std::nullopt;
    }
    if (!center.strictly_interior) return std::nullopt;
    return polar_normalization(center.x - xbar);
}

// ---------------------------------------------------------------------
// Separation program builders
// ---------------------------------------------------------------------

namespace {

CgcpProgram build_cgcp_compact(const StandardProblem& problem,
                               const Disjunction& disjunction,
                               const Vector& xbar, const Normalization& norm) {
    const int n = problem.num_vars();
    const int m = problem.num_rows();
    const Vector& pi = disjunction.split_tag->pi;
    const double pi0 = static_cast<double>(disjunction.split_tag->pi0);

    CgcpProgram out;
    out.compact = true;
    out.n = n;
    out.m = m;
    out.num_terms = 2;
    out.pi = pi;
    out.pi0 = pi0;
    out.norm = norm;

    ConicProgram& prog = out.program;
    std::vector<int> pins;

    out.u2_offset = 0;
    if (m > 0) prog.cones.push_block(Cone{ConeKind::Free, m});
    out.lambda1_offset = m;
    append_dual_cone(prog.cones, problem.K, pins);
    out.lambda2_offset = m + n;
    append_dual_cone(prog.cones, problem.K, pins);
    out.v_offset = m + 2 * n;  // v1, v2, t1, t2
    prog.cones.push_block(Cone{ConeKind::NonNeg, 4});
    const int ext = m + 2 * n + 4;

    int num_vars = ext;
    int num_rows = n + 1 + static_cast<int>(pins.size());
    if (norm.kind == Normalization::Kind::Alpha) {
        num_vars += n + 1;
        num_rows += n + 1;
        prog.cones.push_block(Cone{ConeKind::SOC, n + 1});
    } else {
        num_vars += 1;
        num_rows += 1;
        prog.cones.push_block(Cone{ConeKind::NonNeg, 1});
    }

    std::vector<Triplet> trips;
    prog.b = Vector::Zero(num_rows);

    // rows 0..n-1: A'u2 + lambda2 - lambda1 + (v1 + v2) pi = 0
    for (int col = 0; col < problem.A.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(problem.A, col); it; ++it) {
            trips.emplace_back(static_cast<int>(it.col()),
                               out.u2_offset + static_cast<int>(it.row()),
                               it.value());
        }
    }
    for (int j = 0; j < n; ++j) {
        trips.emplace_back(j, out.lambda1_offset + j, -1.0);
        trips.emplace_back(j, out.lambda2_offset + j, 1.0);
        if (pi(j) != 0.0) {
            trips.emplace_back(j, out.v_offset + 0, pi(j));
            trips.emplace_back(j, out.v_offset + 1, pi(j));
        }
    }
    // row n: b'u2 + t1 - t2 + (v1 + v2) pi0 + v2 = 0
    const int row_c2 = n;
    for (int i = 0; i < m; ++i) {
        if (problem.b(i) != 0.0) {
            trips.emplace_back(row_c2, out.u2_offset + i, problem.b(i));
        }
    }
    if (pi0 != 0.0) trips.emplace_back(row_c2, out.v_offset + 0, pi0);
    trips.emplace_back(row_c2, out.v_offset + 1, pi0 + 1.0);
    trips.emplace_back(row_c2, out.v_offset + 2, 1.0);
    trips.emplace_back(row_c2, out.v_offset + 3, -1.0);

    int row = n + 1;
    for (int coord : pins) {
        trips.emplace_back(row, coord, 1.0);
        ++row;
    }

    const double sigma1 = disjunction.terms[0].sigma.rho(0);
    const double sigma2 = disjunction.terms[1].sigma.rho(0);
    switch (norm.kind) {
        case Normalization::Kind::Alpha: {
            // r - lambda1 + v1 pi = 0 (so r = alpha), then r0 = 1
            for (int j = 0; j < n; ++j) {
                trips.emplace_back(row, ext + 1 + j, 1.0);
                trips.emplace_back(row, out.lambda1_offset + j, -1.0);
                if (pi(j) != 0.0) {
                    trips.emplace_back(row, out.v_offset + 0, pi(j));
                }
                ++row;
            }
            trips.emplace_back(row, ext, 1.0);
            prog.b(row) = 1.0;
            break;
        }
        case Normalization::Kind::Polar: {
            const Vector& gamma = *norm.gamma;
            for (int j = 0; j < n; ++j) {
                if (gamma(j) != 0.0) {
                    trips.emplace_back(row, out.lambda1_offset + j, gamma(j));
                }
            }
            const double gp = gamma.dot(pi);
            if (gp != 0.0) trips.emplace_back(row, out.v_offset + 0, -gp);
            trips.emplace_back(row, ext, 1.0);
            prog.b(row) = 1.0;
            break;
        }
        case Normalization::Kind::Standard:
        case Normalization::Kind::Uniform: {
            InteriorPoint rho = resolve_rho(norm, problem.K);
            for (int j = 0; j < n; ++j) {
                if (rho.rho(j) != 0.0) {
                    trips.emplace_back(row, out.lambda1_offset + j,
                                       rho.rho(j));
                    trips.emplace_back(row, out.lambda2_offset + j,
                                       rho.rho(j));
                }
            }
            if (norm.kind == Normalization::Kind::Standard) {
                trips.emplace_back(row, out.v_offset + 0, sigma1);
                trips.emplace_back(row, out.v_offset + 1, sigma2);
            }
            trips.emplace_back(row, ext, 1.0);
            prog.b(row) = 1.0;
            break;
        }
        case Normalization::Kind::Trivial: {
            trips.emplace_back(row, out.v_offset + 0, sigma1);
            trips.emplace_back(row, out.v_offset + 1, sigma2);
            trips.emplace_back(row, ext, 1.0);
            prog.b(row) = 1.0;
            break;
        }
    }

    prog.A.resize(num_rows, num_vars);
    prog.A.setFromTriplets(trips.begin(), trips.end());

    prog.c = Vector::Zero(num_vars);
    for (int j = 0; j < n; ++j) prog.c(out.lambda1_offset + j) = xbar(j);
    prog.c(out.v_offset + 0) = -(pi.dot(xbar) - pi0);
    prog.c(out.v_offset + 2) = 1.0;
    return out;
}

CgcpProgram build_cgcp_general(const StandardProblem& problem,
                               const Disjunction& disjunction,
                               const Vector& xbar, const Normalization& norm) {
    const int n = problem.num_vars();
    const int m = problem.num_rows();
    const int H = disjunction.term_count();

    CgcpProgram out;
    out.compact = false;
    out.n = n;
    out.m = m;
    out.num_terms = H;
    out.norm = norm;

    ConicProgram& prog = out.program;
    std::vector<int> pins;

    out.alpha_offset = prog.cones.push_block(Cone{ConeKind::Free, n});
    out.beta_offset = prog.cones.push_block(Cone{ConeKind::Free, 1});
    for (int h = 0; h < H; ++h) {
        const DisjunctiveTerm& term = disjunction.terms[h];
        out.u_offset.push_back(
            m > 0 ? prog.cones.push_block(Cone{ConeKind::Free, m})
                  : prog.cones.total_dim());
        int loff = prog.cones.total_dim();
        append_dual_cone(prog.cones, problem.K, pins);
        out.lambda_offset.push_back(loff);
        int voff = prog.cones.total_dim();
        append_dual_cone(prog.cones, term.Q, pins);
        out.v_term_offset.push_back(voff);
        out.t_offset.push_back(prog.cones.push_block(Cone{ConeKind::NonNeg, 1}));
    }
    int ext = prog.cones.total_dim();

    int num_rows = H * (n + 1) + static_cast<int>(pins.size());
    int num_vars = ext;
    if (norm.kind == Normalization::Kind::Alpha) {
        prog.cones.push_block(Cone{ConeKind::SOC, n + 1});
        num_vars += n + 1;
        num_rows += n + 1;
    } else {
        prog.cones.push_block(Cone{ConeKind::NonNeg, 1});
        num_vars += 1;
        num_rows += 1;
    }

    std::vector<Triplet> trips;
    prog.b = Vector::Zero(num_rows);
    int row = 0;

    for (int h = 0; h < H; ++h) {
        const DisjunctiveTerm& term = disjunction.terms[h];
        // alpha - A'u_h - lambda_h - D_h'v_h = 0   (n rows)
        for (int j = 0; j < n; ++j) {
            trips.emplace_back(row + j, out.alpha_offset + j, 1.0);
            trips.emplace_back(row + j, out.lambda_offset[h] + j, -1.0);
        }
        for (int col = 0; col < problem.A.outerSize(); ++col) {
            for (SparseMatrix::InnerIterator it(problem.A, col); it; ++it) {
                trips.emplace_back(row + static_cast<int>(it.col()),
                                   out.u_offset[h] + static_cast<int>(it.row()),
                                   -it.value());
            }
        }
        for (int col = 0; col < term.D.outerSize(); ++col) {
            for (SparseMatrix::InnerIterator it(term.D, col); it; ++it) {
                trips.emplace_back(row + static_cast<int>(it.col()),
                                   out.v_term_offset[h] +
                                       static_cast<int>(it.row()),
                                   -it.value());
            }
        }
        row += n;
        // b'u_h + d_h'v_h - beta - t_h = 0
        for (int i = 0; i < m; ++i) {
            if (problem.b(i) != 0.0) {
                trips.emplace_back(row, out.u_offset[h] + i, problem.b(i));
            }
        }
        for (int k = 0; k < term.d.size(); ++k) {
            if (term.d(k) != 0.0) {
                trips.emplace_back(row, out.v_term_offset[h] + k, term.d(k));
            }
        }
        trips.emplace_back(row, out.beta_offset, -1.0);
        trips.emplace_back(row, out.t_offset[h], -1.0);
        ++row;
    }
    for (int coord : pins) {
        trips.emplace_back(row, coord, 1.0);
        ++row;
    }

    switch (norm.kind) {
        case Normalization::Kind::Alpha: {
            for (int j = 0; j < n; ++j) {
                trips.emplace_back(row, ext + 1 + j, 1.0);
                trips.emplace_back(row, out.alpha_offset + j, -1.0);
                ++row;
            }
            trips.emplace_back(row, ext, 1.0);
            prog.b(row) = 1.0;
            break;
        }
        case Normalization::Kind::Polar: {
            const Vector& gamma = *norm.gamma;
            for (int j = 0; j < n; ++j) {
                if (gamma(j) != 0.0) {
                    trips.emplace_back(row, out.alpha_offset + j, gamma(j));
                }
            }
            trips.emplace_back(row, ext, 1.0);
            prog.b(row) = 1.0;
            break;
        }
        case Normalization::Kind::Standard:
        case Normalization::Kind::Uniform:
        case Normalization::Kind::Trivial: {
            if (norm.kind != Normalization::Kind::Trivial) {
                InteriorPoint rho = resolve_rho(norm, problem.K);
                for (int h = 0; h < H; ++h) {
                    for (int j = 0; j < n; ++j) {
                        if (rho.rho(j) != 0.0) {
                            trips.emplace_back(row, out.lambda_offset[h] + j,
                                               rho.rho(j));
                        }
                    }
                }
            }
            if (norm.kind != Normalization::Kind::Uniform) {
                for (int h = 0; h < H; ++h) {
                    const Vector& sig = disjunction.terms[h].sigma.rho;
                    for (int k = 0; k < sig.size(); ++k) {
                        if (sig(k) != 0.0) {
                            trips.emplace_back(
                                row, out.v_term_offset[h] + k, sig(k));
                        }
                    }
                }
            }
            trips.emplace_back(row, ext, 1.0);
            prog.b(row) = 1.0;
            break;
        }
    }

    prog.A.resize(num_rows, num_vars);
    prog.A.setFromTriplets(trips.begin(), trips.end());

    prog.c = Vector::Zero(num_vars);
    for (int j = 0; j < n; ++j) prog.c(out.alpha_offset + j) = xbar(j);
    prog.c(out.beta_offset) = -1.0;
    return out;
}

}  // namespace

CgcpProgram build_cgcp(const StandardProblem& problem,
                       const Disjunction& disjunction, const Vector& xbar,
                       const Normalization& norm) {
    require_on_row_space(problem, xbar);
    if (disjunction.term_count() < 1) {
        throw std::invalid_argument("separation: empty disjunction");
    }
    if (norm.kind == Normalization::Kind::Polar &&
        (!norm.gamma || norm.gamma->size() != problem.num_vars())) {
        throw std::invalid_argument(
            "separation: polar normalization needs a direction of the "
            "problem's dimension");
    }
    if (is_two_term_split(disjunction)) {
        return build_cgcp_compact(problem, disjunction, xbar, norm);
    }
    return build_cgcp_general(problem, disjunction, xbar, norm);
}

CutCandidate reconstruct_cut(const CgcpProgram& cgcp, const Vector& solution,
                             const Vector& xbar) {
    CutCandidate cut;
    cut.normalization = normalization_name(cgcp.norm.kind);
    if (cgcp.compact) {
        Vector u2 = solution.segment(cgcp.u2_offset, cgcp.m);
        Vector l1 = solution.segment(cgcp.lambda1_offset, cgcp.n);
        Vector l2 = solution.segment(cgcp.lambda2_offset, cgcp.n);
        double v1 = solution(cgcp.v_offset + 0);
        double v2 = solution(cgcp.v_offset + 1);
        double t1 = solution(cgcp.v_offset + 2);
        cut.alpha = l1 - v1 * cgcp.pi;
        cut.beta = -cgcp.pi0 * v1 - t1;
        cut.u = {Vector::Zero(cgcp.m), u2};
        cut.lambda = {l1, l2};
        cut.v = {Vector::Constant(1, v1), Vector::Constant(1, v2)};
    } else {
        cut.alpha = solution.segment(cgcp.alpha_offset, cgcp.n);
        cut.beta = solution(cgcp.beta_offset);
        for (int h = 0; h < cgcp.num_terms; ++h) {
            cut.u.push_back(cgcp.m > 0
                                ? solution.segment(cgcp.u_offset[h], cgcp.m)
                                : Vector::Zero(0).eval());
            cut.lambda.push_back(
                solution.segment(cgcp.lambda_offset[h], cgcp.n));
            int vdim = cgcp.t_offset[h] - cgcp.v_term_offset[h];
            cut.v.push_back(solution.segment(cgcp.v_term_offset[h], vdim));
        }
    }
    cut.violation = cut.alpha.dot(xbar) - cut.beta;
    return cut;
}

// ---------------------------------------------------------------------
// Trivial-cut machinery
// ---------------------------------------------------------------------

std::optional<CutCandidate> kstar_shortcut(const StandardProblem& problem,
                                           const Disjunction& disjunction,
                                           const Vector& xbar,
                                           const InteriorPoint& rho) {
    const int H = disjunction.term_count();
    const double eta = eta_bar(problem.K, xbar, rho);
    if (eta <= 1e-12) return std::nullopt;  // xbar already conic-feasible
    for (const DisjunctiveTerm& term : disjunction.terms) {
        double tau = tau_bar(term.D, term.d, term.Q, term.sigma, xbar);
        if (eta + 1e-12 < tau / H) return std::nullopt;
    }

    // xi = xbar + eta*rho touches the boundary; find the binding block.
    Vector xi = xbar + eta * rho.rho;
    const auto& blocks = problem.K.blocks();
    int binding = -1;
    double binding_eta = -1.0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].kind == ConeKind::Free) continue;
        int off = problem.K.block_offset(static_cast<int>(i));
        ConeProduct single;
        single.push_block(blocks[i]);
        InteriorPoint r{rho.rho.segment(off, blocks[i].dim)};
        double e = eta_bar(single, xbar.segment(off, blocks[i].dim), r);
        if (e > binding_eta) {
            binding_eta = e;
            binding = static_cast<int>(i);
        }
    }
    if (binding < 0) return std::nullopt;

    const Cone blk = blocks[binding];
    const int off = problem.K.block_offset(binding);
    Vector lambda = Vector::Zero(xbar.size());
    switch (blk.kind) {
        case ConeKind::NonNeg: {
            int arg = 0;
            xi.segment(off, blk.dim).minCoeff(&arg);
            lambda(off + arg) = 1.0;
            break;
        }
        case ConeKind::NonPos: {
            int arg = 0;
            xi.segment(off, blk.dim).maxCoeff(&arg);
            lambda(off + arg) = -1.0;
            break;
        }
        case ConeKind::SOC: {
            Vector seg = xi.segment(off, blk.dim);
            if (seg.norm() <= 1e-12) {
                lambda(off) = 1.0;
            } else {
                lambda(off) = seg(0);
                lambda.segment(off + 1, blk.dim - 1) = -seg.tail(blk.dim - 1);
            }
            break;
        }
        case ConeKind::RSOC: {
            Vector seg = xi.segment(off, blk.dim);
            if (seg.norm() <= 1e-12) {
                lambda(off) = 1.0;
            } else {
                lambda(off) = seg(1);
                lambda(off + 1) = seg(0);
                lambda.segment(off + 2, blk.dim - 2) = -seg.tail(blk.dim - 2);
            }
            break;
        }
        case ConeKind::Free: break;
    }
    const double scale = rho.rho.dot(lambda);
    if (scale <= 1e-14) return std::nullopt;
    lambda /= (H * scale);  // standard normalization held with equality

    CutCandidate cut;
    cut.alpha = lambda;
    cut.beta = 0.0;
    for (const DisjunctiveTerm& term : disjunction.terms) {
        cut.u.push_back(Vector::Zero(problem.num_rows()));
        cut.lambda.push_back(lambda);
        cut.v.push_back(Vector::Zero(term.d.size()));
    }
    cut.violation = lambda.dot(xbar);
    cut.classification = CutClass::KStar;
    cut.normalization = "standard";
    return cut;
}

std::vector<Vector> disaggregate_kstar(const Vector& lambda,
                                       const ConeProduct& K) {
    std::vector<Vector> cuts;
    const auto& blocks = K.blocks();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        int off = K.block_offset(static_cast<int>(i));
        int dim = blocks[i].dim;
        if (lambda.segment(off, dim).cwiseAbs().maxCoeff() <= 1e-12) continue;
        Vector piece = Vector::Zero(lambda.size());
        piece.segment(off, dim) = lambda.segment(off, dim);
        cuts.push_back(std::move(piece));
    }
    return cuts;
}

// ---------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------

namespace {

void classify(CutCandidate& cut, double kstar_tol) {
    double vmax = 0.0;
    for (const Vector& vh : cut.v) {
        if (vh.size() > 0) vmax = std::max(vmax, vh.cwiseAbs().maxCoeff());
    }
    cut.classification =
        vmax <= kstar_tol ? CutClass::KStar : CutClass::LiftAndProject;
}

}  // namespace

SeparationOutcome separate(const StandardProblem& problem,
                           const Disjunction& disjunction, const Vector& xbar,
                           const Normalization& norm,
                           const SeparationConfig& config) {
    SeparationOutcome out;

    if (norm.kind == Normalization::Kind::Standard && config.try_shortcut) {
        InteriorPoint rho = resolve_rho(norm, problem.K);
        if (auto shortcut = kstar_shortcut(problem, disjunction, xbar, rho)) {
            out.shortcut_used = true;
            out.status = SolveStatus::Optimal;
            out.cgcp_obj = shortcut->violation;
            if (out.cgcp_obj <= -config.no_cut_threshold) {
                out.disaggregated_kstar =
                    disaggregate_kstar(shortcut->alpha, problem.K);
                out.cut = std::move(shortcut);
            } else {
                out.message = "shortcut value above the cut threshold";
            }
            return out;
        }
    }

    CgcpProgram cgcp = build_cgcp(problem, disjunction, xbar, norm);
    SolveResult result;
    try {
        result = solve(cgcp.program, config.solver);
    } catch (const SolveError& err) {
        out.solver_failed = true;
        out.message = err.what();
        return out;
    }
    out.status = result.status;
    out.iterations = result.iterations;
    out.cgcp_obj = result.obj;

    auto harvest = [&](const Vector& point, bool require_threshold) {
        CutCandidate cut = reconstruct_cut(cgcp, point, xbar);
        if (require_threshold && cut.violation > -config.no_cut_threshold) {
            out.message = "harvested point not violated enough";
            return;
        }
        classify(cut, config.kstar_tol);
        std::string why;
        if (!cut_certificate_ok(problem, disjunction, cut, &why)) {
            out.message = "candidate failed its certificate: " + why;
            return;
        }
        if (cut.classification == CutClass::KStar) {
            out.disaggregated_kstar =
                disaggregate_kstar(cut.lambda[0], problem.K);
        }
        out.cgcp_obj = std::min(out.cgcp_obj, cut.violation);
        out.cut = std::move(cut);
    };

    switch (result.status) {
        case SolveStatus::Optimal:
            if (result.obj > -config.no_cut_threshold) {
                out.message = "no sufficiently violated cut";
                return out;
            }
            harvest(result.x, false);
            return out;
        case SolveStatus::DualInfeasible:
            out.cgcp_obj = -std::numeric_limits<double>::infinity();
            if (result.ray_x) {
                harvest(*result.ray_x, true);
            } else {
                out.message = "unbounded but no ray returned";
            }
            return out;
        case SolveStatus::Stalled:
            harvest(result.x, true);
            return out;
        case SolveStatus::IterLimit:
        case SolveStatus::PrimalInfeasible:
            out.message = std::string("solver returned ") +
                          solve_status_name(result.status);
            return out;
    }
    return out;
}

}  // namespace coniccut
