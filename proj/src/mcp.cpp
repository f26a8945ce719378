#include "coniccut/separation.hpp"

#include <stdexcept>

namespace coniccut {

namespace {

InteriorPoint mcp_rho(const Normalization& norm, const ConeProduct& K) {
    if (norm.rho) return *norm.rho;
    return default_interior_point(K);
}

}  // namespace

McpProgram build_mcp(const StandardProblem& problem,
                     const Disjunction& disjunction, const Vector& xbar,
                     const Normalization& norm) {
    const int n = problem.num_vars();
    const int m = problem.num_rows();
    const int H = disjunction.term_count();
    if (H < 1) throw std::invalid_argument("membership: empty disjunction");
    if (xbar.size() != n) {
        throw std::invalid_argument("membership: xbar has wrong dimension");
    }
    if (norm.kind == Normalization::Kind::Polar &&
        (!norm.gamma || norm.gamma->size() != n)) {
        throw std::invalid_argument(
            "membership: polar normalization needs a direction of the "
            "problem's dimension");
    }

    McpProgram out;
    out.kind = norm.kind;
    out.n = n;
    out.m = m;
    out.num_terms = H;
    out.substituted = norm.kind == Normalization::Kind::Standard ||
                      norm.kind == Normalization::Kind::Uniform;
    out.rho = out.substituted ? mcp_rho(norm, problem.K).rho
                              : Vector::Zero(n).eval();

    ConicProgram& prog = out.program;
    for (int h = 0; h < H; ++h) {
        out.y_offset.push_back(prog.cones.total_dim());
        for (const Cone& blk : problem.K.blocks()) prog.cones.push_block(blk);
    }
    out.z_offset = prog.cones.push_block(Cone{ConeKind::NonNeg, H});
    int total_term_rows = 0;
    for (int h = 0; h < H; ++h) {
        const DisjunctiveTerm& term = disjunction.terms[h];
        out.q_offset.push_back(prog.cones.total_dim());
        for (const Cone& blk : term.Q.blocks()) prog.cones.push_block(blk);
        total_term_rows += static_cast<int>(term.D.rows());
    }
    if (norm.kind == Normalization::Kind::Alpha) {
        out.w_offset = prog.cones.push_block(Cone{ConeKind::SOC, n + 1});
    } else {
        out.eta_offset = prog.cones.push_block(Cone{ConeKind::NonNeg, 1});
    }
    // The compact split separation program pins the first term's row
    // multipliers under the ball/polar normalizations, so the matching
    // membership program omits that term's equality rows; the two sides
    // then close the duality gap exactly.  (The other normalizations do
    // not see the pinning: their objectives ignore the row multipliers,
    // so both variants price the same cuts and the rows stay.)
    out.first_term_rows_dropped =
        is_two_term_split(disjunction) &&
        (norm.kind == Normalization::Kind::Alpha ||
         norm.kind == Normalization::Kind::Polar);

    const int num_vars = prog.cones.total_dim();
    const int num_rows = n + H * m + total_term_rows + 1 -
                         (out.first_term_rows_dropped ? m : 0);

    Vector a_rho = Vector::Zero(m);
    if (out.substituted && m > 0) a_rho = problem.A * out.rho;

    std::vector<Triplet> trips;
    prog.b = Vector::Zero(num_rows);

    // Link rows: the y_h (or k_h) blocks recombine to xbar.
    for (int j = 0; j < n; ++j) {
        for (int h = 0; h < H; ++h) {
            trips.emplace_back(j, out.y_offset[h] + j, 1.0);
        }
        prog.b(j) = xbar(j);
    }
    switch (norm.kind) {
        case Normalization::Kind::Alpha:
            for (int j = 0; j < n; ++j) {
                trips.emplace_back(j, out.w_offset + 1 + j, 1.0);
            }
            break;
        case Normalization::Kind::Polar: {
            const Vector& gamma = *norm.gamma;
            for (int j = 0; j < n; ++j) {
                if (gamma(j) != 0.0) {
                    trips.emplace_back(j, out.eta_offset, -gamma(j));
                }
            }
            break;
        }
        case Normalization::Kind::Standard:
        case Normalization::Kind::Uniform:
            for (int j = 0; j < n; ++j) {
                if (out.rho(j) != 0.0) {
                    trips.emplace_back(j, out.eta_offset, -H * out.rho(j));
                }
            }
            break;
        case Normalization::Kind::Trivial:
            break;
    }

    int row = n;
    for (int h = 0; h < H; ++h) {
        const DisjunctiveTerm& term = disjunction.terms[h];
        if (!(h == 0 && out.first_term_rows_dropped)) {
            // A y_h - b z_h (- A rho eta when substituted) = 0
            for (int col = 0; col < problem.A.outerSize(); ++col) {
                for (SparseMatrix::InnerIterator it(problem.A, col); it;
                     ++it) {
                    trips.emplace_back(row + static_cast<int>(it.row()),
                                       out.y_offset[h] + col, it.value());
                }
            }
            for (int i = 0; i < m; ++i) {
                if (problem.b(i) != 0.0) {
                    trips.emplace_back(row + i, out.z_offset + h,
                                       -problem.b(i));
                }
                if (out.substituted && a_rho(i) != 0.0) {
                    trips.emplace_back(row + i, out.eta_offset, -a_rho(i));
                }
            }
            row += m;
        }

        // D_h y_h - d_h z_h - q_h (+ eta corrections) = 0
        const int k = static_cast<int>(term.D.rows());
        for (int col = 0; col < term.D.outerSize(); ++col) {
            for (SparseMatrix::InnerIterator it(term.D, col); it; ++it) {
                trips.emplace_back(row + static_cast<int>(it.row()),
                                   out.y_offset[h] + col, it.value());
            }
        }
        Vector eta_coeff = Vector::Zero(k);
        if (out.substituted) eta_coeff -= term.D * out.rho;
        if (norm.kind == Normalization::Kind::Standard ||
            norm.kind == Normalization::Kind::Trivial) {
            eta_coeff += term.sigma.rho;
        }
        for (int r = 0; r < k; ++r) {
            if (term.d(r) != 0.0) {
                trips.emplace_back(row + r, out.z_offset + h, -term.d(r));
            }
            trips.emplace_back(row + r, out.q_offset[h] + r, -1.0);
            if (eta_coeff(r) != 0.0) {
                trips.emplace_back(row + r, out.eta_offset, eta_coeff(r));
            }
        }
        row += k;
    }

    // Convex-combination row.
    for (int h = 0; h < H; ++h) trips.emplace_back(row, out.z_offset + h, 1.0);
    prog.b(row) = 1.0;

    prog.A.resize(num_rows, num_vars);
    prog.A.setFromTriplets(trips.begin(), trips.end());

    prog.c = Vector::Zero(num_vars);
    if (norm.kind == Normalization::Kind::Alpha) {
        prog.c(out.w_offset) = 1.0;
    } else {
        prog.c(out.eta_offset) = 1.0;
    }
    return out;
}

Vector mcp_point(const McpProgram& mcp, const Vector& solution) {
    Vector point = Vector::Zero(mcp.n);
    for (int h = 0; h < mcp.num_terms; ++h) {
        point += solution.segment(mcp.y_offset[h], mcp.n);
    }
    if (mcp.substituted) {
        point -= mcp.num_terms * mcp_eta(mcp, solution) * mcp.rho;
    }
    return point;
}

double mcp_eta(const McpProgram& mcp, const Vector& solution) {
    if (mcp.kind == Normalization::Kind::Alpha) {
        return solution(mcp.w_offset);
    }
    return solution(mcp.eta_offset);
}

}  // namespace coniccut
