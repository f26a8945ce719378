/**
 * @file cones.cpp
 * @brief Cone membership, dual membership, norms and minimal-step formulas.
 */

#include "coniccut/cones.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coniccut {

const char* cone_kind_name(ConeKind kind) {
    switch (kind) {
        case ConeKind::Free: return "Free";
        case ConeKind::NonNeg: return "NonNeg";
        case ConeKind::NonPos: return "NonPos";
        case ConeKind::SOC: return "SOC";
        case ConeKind::RSOC: return "RSOC";
    }
    return "?";
}

namespace {

void check_block(const Cone& c) {
    const int min_dim = c.kind == ConeKind::SOC ? 2 : c.kind == ConeKind::RSOC ? 3 : 1;
    if (c.dim < min_dim) {
        throw std::invalid_argument(std::string(cone_kind_name(c.kind)) +
                                    " block requires dim >= " + std::to_string(min_dim) +
                                    ", got " + std::to_string(c.dim));
    }
}

void check_length(const ConeProduct& K, const Vector& u, const char* what) {
    if (u.size() != K.total_dim()) {
        throw std::invalid_argument(std::string(what) + ": vector length " +
                                    std::to_string(u.size()) + " does not match cone dimension " +
                                    std::to_string(K.total_dim()));
    }
}

/// Infeasibility of a second-order cone block: ||x_tail|| - x_head.
double soc_infeasibility(const Eigen::Ref<const Vector>& x) {
    return x.tail(x.size() - 1).norm() - x(0);
}

}  // namespace

ConeProduct::ConeProduct(std::vector<Cone> blocks) {
    for (const Cone& c : blocks) push_block(c);
}

int ConeProduct::push_block(Cone c) {
    check_block(c);
    const int offset = total_dim_;
    blocks_.push_back(c);
    offsets_.push_back(offset);
    total_dim_ += c.dim;
    return offset;
}

double cone_block_infeasibility(const Cone& c, const Eigen::Ref<const Vector>& u) {
    switch (c.kind) {
        case ConeKind::Free:
            return 0.0;
        case ConeKind::NonNeg:
            return std::max(0.0, -u.minCoeff());
        case ConeKind::NonPos:
            return std::max(0.0, u.maxCoeff());
        case ConeKind::SOC:
            return soc_infeasibility(u);
        case ConeKind::RSOC: {
            Vector w = u;
            rotate_rsoc_to_soc(w);
            return soc_infeasibility(w);
        }
    }
    return 0.0;
}

double dual_block_infeasibility(const Cone& c, const Eigen::Ref<const Vector>& u) {
    // All pointed kinds here are self-dual; Free's dual is the origin.
    if (c.kind == ConeKind::Free) return u.lpNorm<Eigen::Infinity>();
    return cone_block_infeasibility(c, u);
}

namespace {

bool blockwise_within(const ConeProduct& K, const Vector& u, double tol,
                      double (*infeas)(const Cone&, const Eigen::Ref<const Vector>&)) {
    for (std::size_t i = 0; i < K.block_count(); ++i) {
        const auto seg = u.segment(K.block_offset(i), K.block(i).dim);
        if (infeas(K.block(i), seg) > tol * (1.0 + seg.norm())) return false;
    }
    return true;
}

}  // namespace

bool membership(const ConeProduct& K, const Vector& x, double tol) {
    check_length(K, x, "membership");
    return blockwise_within(K, x, tol, &cone_block_infeasibility);
}

bool dual_membership(const ConeProduct& K, const Vector& u, double tol) {
    check_length(K, u, "dual_membership");
    return blockwise_within(K, u, tol, &dual_block_infeasibility);
}

double conic_norm(const InteriorPoint& rho, const Vector& u) {
    if (rho.rho.size() != u.size()) {
        throw std::invalid_argument("conic_norm: dimension mismatch");
    }
    return rho.rho.dot(u);
}

namespace {

/// Entry step for one scalar coordinate: smallest eta >= 0 with
/// x + eta*rho on the right side of zero.  Works for both orthants
/// because rho carries the orthant's sign.
double scalar_entry_step(double x, double rho) { return std::max(0.0, -x / rho); }

/// Entry step for a second-order cone block with a general strictly
/// interior direction rho.  Solves the quadratic
///   (x1 + eta*r1)^2 - ||x_t + eta*r_t||^2 = 0
/// and takes the largest root; the cone is reached there because
/// r1 > ||r_t|| makes the head grow faster than the tail.
double soc_entry_step(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& rho) {
    if (soc_infeasibility(x) <= 0.0) return 0.0;

    const auto xt = x.tail(x.size() - 1);
    const auto rt = rho.tail(rho.size() - 1);
    const double a = rho(0) * rho(0) - rt.squaredNorm();
    const double b = x(0) * rho(0) - xt.dot(rt);
    const double c = x(0) * x(0) - xt.squaredNorm();
    const double disc = std::max(0.0, b * b - a * c);
    double eta = std::max(0.0, (-b + std::sqrt(disc)) / a);

    // The quadratic can land on the reflected branch (head still negative)
    // in near-degenerate configurations; walk forward until truly inside.
    Vector probe = x + eta * rho;
    int guard = 0;
    while (soc_infeasibility(probe) > 1e-12 * (1.0 + probe.norm()) && guard++ < 128) {
        eta = std::max(eta * 2.0, 1e-12);
        probe = x + eta * rho;
    }
    return eta;
}

}  // namespace

double eta_bar(const ConeProduct& K, const Vector& x, const InteriorPoint& rho) {
    check_length(K, x, "eta_bar");
    check_length(K, rho.rho, "eta_bar (rho)");

    double eta = 0.0;
    for (std::size_t i = 0; i < K.block_count(); ++i) {
        const Cone& c = K.block(i);
        const auto xb = x.segment(K.block_offset(i), c.dim);
        const auto rb = rho.rho.segment(K.block_offset(i), c.dim);
        switch (c.kind) {
            case ConeKind::Free:
                break;
            case ConeKind::NonNeg:
            case ConeKind::NonPos:
                for (int k = 0; k < c.dim; ++k) {
                    eta = std::max(eta, scalar_entry_step(xb(k), rb(k)));
                }
                break;
            case ConeKind::SOC:
                eta = std::max(eta, soc_entry_step(xb, rb));
                break;
            case ConeKind::RSOC: {
                Vector xw = xb, rw = rb;
                rotate_rsoc_to_soc(xw);
                rotate_rsoc_to_soc(rw);
                eta = std::max(eta, soc_entry_step(xw, rw));
                break;
            }
        }
    }
    return eta;
}

double tau_bar(const SparseMatrix& D_h, const Vector& d_h, const ConeProduct& Q_h,
               const InteriorPoint& sigma_h, const Vector& x) {
    if (D_h.cols() != x.size() || D_h.rows() != d_h.size() ||
        D_h.rows() != Q_h.total_dim()) {
        throw std::invalid_argument("tau_bar: inconsistent shapes");
    }
    // tau_bar is eta_bar applied to the image point D_h x - d_h with
    // direction sigma_h inside Q_h.
    const Vector image = D_h * x - d_h;
    return eta_bar(Q_h, image, sigma_h);
}

InteriorPoint default_interior_point(const ConeProduct& K) {
    Vector rho = Vector::Zero(K.total_dim());
    for (std::size_t i = 0; i < K.block_count(); ++i) {
        const Cone& c = K.block(i);
        const int off = K.block_offset(i);
        switch (c.kind) {
            case ConeKind::Free:
                break;  // zero: excluded from normalization sums
            case ConeKind::NonNeg:
                rho.segment(off, c.dim).setOnes();
                break;
            case ConeKind::NonPos:
                rho.segment(off, c.dim).setConstant(-1.0);
                break;
            case ConeKind::SOC:
                rho(off) = 1.0;
                break;
            case ConeKind::RSOC: {
                // Pull (1, 0, ..., 0) back through the bijection.
                Vector w = Vector::Zero(c.dim);
                w(0) = 1.0;
                rotate_soc_to_rsoc(w);
                rho.segment(off, c.dim) = w;
                break;
            }
        }
    }
    return InteriorPoint{std::move(rho)};
}

Vector project_dual_block(const Cone& c, const Eigen::Ref<const Vector>& u) {
    switch (c.kind) {
        case ConeKind::Free:
            return Vector::Zero(u.size());
        case ConeKind::NonNeg:
            return u.cwiseMax(0.0);
        case ConeKind::NonPos:
            return u.cwiseMin(0.0);
        case ConeKind::SOC: {
            const double r = u.tail(u.size() - 1).norm();
            if (u(0) >= r) return u;                    // already inside
            if (u(0) <= -r) return Vector::Zero(u.size());  // polar cone: project to apex
            Vector p(u.size());
            const double head = 0.5 * (u(0) + r);
            p(0) = head;
            p.tail(u.size() - 1) = u.tail(u.size() - 1) * (head / r);
            return p;
        }
        case ConeKind::RSOC: {
            Vector w = u;
            rotate_rsoc_to_soc(w);
            Vector p = project_dual_block(Cone{ConeKind::SOC, c.dim}, w);
            rotate_soc_to_rsoc(p);
            return p;
        }
    }
    return u;
}

void rotate_rsoc_to_soc(Eigen::Ref<Vector> v) {
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double x1 = v(0), x2 = v(1);
    v(0) = (x1 + x2) * inv_sqrt2;
    v(1) = (x1 - x2) * inv_sqrt2;
}

void rotate_soc_to_rsoc(Eigen::Ref<Vector> v) {
    // The change of variables is its own inverse.
    rotate_rsoc_to_soc(v);
}

}  // namespace coniccut
