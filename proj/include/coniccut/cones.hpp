#pragma once
/**
 * @file cones.hpp
 * @brief Cone taxonomy for block-structured conic programs.
 *
 * Variables live in a product K = K_1 x ... x K_N of irreducible cones
 * (free space, nonnegative/nonpositive orthants, second-order cones and
 * their rotated variant).  This header provides membership and dual-cone
 * membership tests, the interior-point-induced norm <u>_rho = rho'u on K*,
 * interior points, projections, and the two minimal-step quantities used
 * throughout cut separation:
 *
 *   eta_bar(x)   = min { eta >= 0 | x + eta*rho in K }
 *   tau_bar_h(x) = min { tau >= 0 | D_h x + tau*sigma_h - d_h in Q_h }
 */

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstddef>
#include <vector>

namespace coniccut {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

enum class ConeKind { Free, NonNeg, NonPos, SOC, RSOC };

/// One irreducible cone block.  SOC requires dim >= 2, RSOC dim >= 3,
/// scalar kinds dim >= 1 (a scalar block of dim k is the k-fold product
/// of the 1-dimensional cone).
struct Cone {
    ConeKind kind;
    int dim;
};

const char* cone_kind_name(ConeKind kind);

/// An ordered list of cone blocks partitioning the coordinates
/// 0..total_dim with no gaps or overlaps.
class ConeProduct {
  public:
    ConeProduct() = default;
    explicit ConeProduct(std::vector<Cone> blocks);

    const std::vector<Cone>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }
    int total_dim() const { return total_dim_; }
    int block_offset(std::size_t i) const { return offsets_[i]; }
    const Cone& block(std::size_t i) const { return blocks_[i]; }

    /// Appends another block, returning the offset it starts at.
    int push_block(Cone c);

  private:
    std::vector<Cone> blocks_;
    std::vector<int> offsets_;
    int total_dim_ = 0;
};

/// A point strictly interior to a cone product (free blocks carry the
/// zero component by convention, so that rho'u sums only over pointed
/// blocks).
struct InteriorPoint {
    Vector rho;
};

/// Signed infeasibility of u w.r.t. one cone block: <= 0 means member.
/// Free blocks are all of R^d, so their infeasibility is always 0.
double cone_block_infeasibility(const Cone& c, const Eigen::Ref<const Vector>& u);

/// Same for the dual cone.  Scalar and second-order blocks are self-dual
/// (RSOC via the orthogonal SOC bijection); the dual of Free is {0}.
double dual_block_infeasibility(const Cone& c, const Eigen::Ref<const Vector>& u);

/// True iff every block of x is within tol*(1 + ||x_block||_2) of its cone.
bool membership(const ConeProduct& K, const Vector& x, double tol);

/// True iff every block of u is within tol*(1 + ||u_block||_2) of the
/// block's dual cone.
bool dual_membership(const ConeProduct& K, const Vector& u, double tol);

/// The norm <u>_rho = rho'u induced on K* by an interior point rho of K.
/// Nonnegative for u in K*; additive over blocks; positively homogeneous.
double conic_norm(const InteriorPoint& rho, const Vector& u);

/// Smallest eta >= 0 with x + eta*rho in K, computed block-wise in closed
/// form (max over blocks).  rho must be strictly interior.
double eta_bar(const ConeProduct& K, const Vector& x, const InteriorPoint& rho);

/// Smallest tau >= 0 with D_h x + tau*sigma_h - d_h in Q_h.
double tau_bar(const SparseMatrix& D_h, const Vector& d_h, const ConeProduct& Q_h,
               const InteriorPoint& sigma_h, const Vector& x);

/// Canonical interior point: 1 per NonNeg coordinate, -1 per NonPos
/// coordinate, (1, 0, ..., 0) per SOC block (any dimension), the SOC
/// choice mapped through the bijection for RSOC blocks, 0 on Free blocks.
InteriorPoint default_interior_point(const ConeProduct& K);

/// Euclidean projection of u onto the dual of the given block (self-dual
/// blocks project onto themselves; Free's dual {0} projects to zero).
Vector project_dual_block(const Cone& c, const Eigen::Ref<const Vector>& u);

/// In-place orthogonal change of variables between the rotated and plain
/// second-order cone: u1 = (x1+x2)/sqrt(2), u2 = (x1-x2)/sqrt(2).  The
/// map is an involution, so the same routine converts in both directions.
void rotate_rsoc_to_soc(Eigen::Ref<Vector> v);
void rotate_soc_to_rsoc(Eigen::Ref<Vector> v);

}  // namespace coniccut
