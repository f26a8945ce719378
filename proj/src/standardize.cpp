// Conversion of a parsed document into the equality-form model
//
//     min c'x   s.t.  A x = b,  x in K,  x_j integer for marked j.
//
// Constraint rows (Ax + b) in cone gain one slack variable per coordinate
// (slack blocks live in the matching cone), rotated-quadratic blocks are
// rotated onto plain second-order blocks by the orthogonal symmetric map
// u1 = (x1 + x2)/sqrt(2), u2 = (x1 - x2)/sqrt(2), fixed-to-zero variable
// blocks become free variables pinned by extra equality rows, and the
// objective sense is normalized to minimization.
//
// Column/row order convention: original variables first, then slacks in
// row-block order; constraint-derived rows first (in document order, free
// rows dropped), then the x_j = 0 pinning rows.

#include "coniccut/instance.hpp"

#include <Eigen/SparseCore>

#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

namespace coniccut {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Identity with 2x2 rotation blocks [[s, s], [s, -s]] at the leading two
// coordinates of each rotated-quadratic block.  Symmetric and involutive.
SparseMatrix rotation_mixer(int dim, const std::vector<RawBlock>& blocks) {
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(dim) + 2 * blocks.size());
    int offset = 0;
    for (const RawBlock& blk : blocks) {
        if (blk.cone == CbfCone::RotatedQuad) {
            trips.emplace_back(offset, offset, kInvSqrt2);
            trips.emplace_back(offset + 1, offset, kInvSqrt2);
            trips.emplace_back(offset, offset + 1, kInvSqrt2);
            trips.emplace_back(offset + 1, offset + 1, -kInvSqrt2);
            for (int k = 2; k < blk.dim; ++k) {
                trips.emplace_back(offset + k, offset + k, 1.0);
            }
        } else {
            for (int k = 0; k < blk.dim; ++k) {
                trips.emplace_back(offset + k, offset + k, 1.0);
            }
        }
        offset += blk.dim;
    }
    SparseMatrix mixer(dim, dim);
    mixer.setFromTriplets(trips.begin(), trips.end());
    return mixer;
}

bool needs_mixing(const std::vector<RawBlock>& blocks) {
    for (const RawBlock& blk : blocks) {
        if (blk.cone == CbfCone::RotatedQuad) return true;
    }
    return false;
}

}  // namespace

StandardProblem to_standard_form(const RawInstance& raw) {
    const int n = raw.num_vars;
    const int m_raw = raw.num_rows;

    Vector c_raw = Vector::Zero(n);
    for (const auto& [j, v] : raw.obj_coeffs) c_raw(j) += v;
    Vector b_raw = Vector::Zero(m_raw);
    for (const auto& [i, v] : raw.rhs) b_raw(i) += v;
    SparseMatrix a_raw(m_raw, n);
    a_raw.setFromTriplets(raw.coeffs.begin(), raw.coeffs.end());

    std::unordered_set<int> integer_set(raw.integers.begin(),
                                        raw.integers.end());

    // Variable blocks: cone mapping, pinned coordinates, rotation guard.
    StandardProblem out;
    std::vector<int> pinned;  // coordinates of fixed-to-zero variable blocks
    {
        int offset = 0;
        for (const RawBlock& blk : raw.var_blocks) {
            switch (blk.cone) {
                case CbfCone::Free:
                    out.K.push_block(Cone{ConeKind::Free, blk.dim});
                    break;
                case CbfCone::NonNeg:
                    out.K.push_block(Cone{ConeKind::NonNeg, blk.dim});
                    break;
                case CbfCone::NonPos:
                    out.K.push_block(Cone{ConeKind::NonPos, blk.dim});
                    break;
                case CbfCone::Zero:
                    out.K.push_block(Cone{ConeKind::Free, blk.dim});
                    for (int k = 0; k < blk.dim; ++k) {
                        pinned.push_back(offset + k);
                    }
                    break;
                case CbfCone::Quad:
                    out.K.push_block(Cone{ConeKind::SOC, blk.dim});
                    break;
                case CbfCone::RotatedQuad:
                    if (integer_set.count(offset) ||
                        integer_set.count(offset + 1)) {
                        throw InstanceError(
                            "integrality mark on coordinate " +
                            std::to_string(integer_set.count(offset)
                                               ? offset
                                               : offset + 1) +
                            " of a rotated-quadratic variable block; the "
                            "rotation mixes the two leading coordinates and "
                            "cannot preserve integrality");
                    }
                    out.K.push_block(Cone{ConeKind::SOC, blk.dim});
                    break;
            }
            offset += blk.dim;
        }
    }

    // Apply variable rotation (columns) and row rotation (rows + rhs).
    SparseMatrix a_mixed = a_raw;
    Vector c_mixed = c_raw;
    if (needs_mixing(raw.var_blocks)) {
        SparseMatrix mv = rotation_mixer(n, raw.var_blocks);
        a_mixed = (a_raw * mv).eval();
        c_mixed = mv * c_raw;  // symmetric, so M^T c == M c
    }
    Vector b_mixed = b_raw;
    if (needs_mixing(raw.row_blocks)) {
        SparseMatrix mr = rotation_mixer(m_raw, raw.row_blocks);
        a_mixed = (mr * a_mixed).eval();
        b_mixed = mr * b_raw;
    }

    // Row bookkeeping: slack column per retained coordinate of non-free,
    // non-equality row blocks; free rows are dropped.
    int n_slack = 0;
    int m_out = 0;
    for (const RawBlock& blk : raw.row_blocks) {
        switch (blk.cone) {
            case CbfCone::Free: break;
            case CbfCone::Zero: m_out += blk.dim; break;
            default:
                n_slack += blk.dim;
                m_out += blk.dim;
                break;
        }
    }
    m_out += static_cast<int>(pinned.size());
    const int n_out = n + n_slack;

    // Slack cone blocks, in row-block order.
    for (const RawBlock& blk : raw.row_blocks) {
        switch (blk.cone) {
            case CbfCone::Free:
            case CbfCone::Zero: break;
            case CbfCone::NonNeg:
                out.K.push_block(Cone{ConeKind::NonNeg, blk.dim});
                break;
            case CbfCone::NonPos:
                out.K.push_block(Cone{ConeKind::NonPos, blk.dim});
                break;
            case CbfCone::Quad:
            case CbfCone::RotatedQuad:
                out.K.push_block(Cone{ConeKind::SOC, blk.dim});
                break;
        }
    }

    // Assemble rows: (Ax + b)_i in cone  ==>  a_i'x - s_i = -b_i with the
    // slack s living in the cone block (equality rows take no slack).
    Eigen::SparseMatrix<double, Eigen::RowMajor> a_rows(a_mixed);
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(a_rows.nonZeros()) +
                  static_cast<std::size_t>(n_slack + pinned.size()));
    out.b = Vector::Zero(m_out);

    int raw_row = 0;
    int out_row = 0;
    int slack_col = n;
    for (const RawBlock& blk : raw.row_blocks) {
        for (int k = 0; k < blk.dim; ++k, ++raw_row) {
            if (blk.cone == CbfCone::Free) continue;
            for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator
                     it(a_rows, raw_row);
                 it; ++it) {
                if (it.value() != 0.0) {
                    trips.emplace_back(out_row, static_cast<int>(it.col()),
                                       it.value());
                }
            }
            if (blk.cone != CbfCone::Zero) {
                trips.emplace_back(out_row, slack_col, -1.0);
                ++slack_col;
            }
            out.b(out_row) = -b_mixed(raw_row);
            ++out_row;
        }
    }
    for (int j : pinned) {
        trips.emplace_back(out_row, j, 1.0);
        out.b(out_row) = 0.0;
        ++out_row;
    }

    out.A.resize(m_out, n_out);
    out.A.setFromTriplets(trips.begin(), trips.end());

    out.c = Vector::Zero(n_out);
    out.c.head(n) = c_mixed;
    if (raw.sense == ObjectiveSense::Maximize) {
        out.c = -out.c;
        out.obj_sign = -1.0;
    }
    out.obj_offset = 0.0;

    out.integer_mask.assign(static_cast<std::size_t>(n_out), false);
    for (int j : raw.integers) out.integer_mask[static_cast<std::size_t>(j)] = true;
    out.implied_integer_mask.assign(static_cast<std::size_t>(n_out), false);

    out.names.reserve(static_cast<std::size_t>(n_out));
    for (int j = 0; j < n; ++j) out.names.push_back("x" + std::to_string(j));
    for (int k = 0; k < n_slack; ++k) {
        out.names.push_back("s" + std::to_string(k));
    }
    return out;
}

}  // namespace coniccut
