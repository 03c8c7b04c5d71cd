#ifndef PENTABEND_REDUCTION_HPP
#define PENTABEND_REDUCTION_HPP

/** \file reduction.hpp
 * Symplectic reduction plumbing: the two-sphere reduction identity, the
 * stage-wise identification of ell_12 levels of pentagon space with 4-gon
 * spaces, and the analytic 2x2 reduced Hessian at rank-1 points.
 */

#include <array>
#include <cstdint>

#include "common.hpp"
#include "geometry.hpp"
#include "manifold.hpp"
#include "types.hpp"

namespace pentabend {

/** A point of the reduced space at level c of ell_12, represented by the
 * gauge-fixed 4-gon with edges (rho_1 + rho_2, rho_3, rho_4, rho_5). */
struct ReducedPoint {
    double c = 0;        ///< reduction level |rho_1 + rho_2|
    Configuration quad;  ///< 4 edges of lengths (c, r3, r4, r5), edge 0 = (c,0,0)
};

/** Collapses a pentagon configuration to its reduced 4-gon: replaces the
 * first two edges by their sum and gauge-fixes the result. Constant on
 * bending orbits of ell_12 and on SO(3) orbits. Throws VanishingMoment when
 * ell_12 < 1e-8 * perimeter. */
ReducedPoint reduce_point(const Configuration& rho);

/** Outcome of the two-sphere reduction identity check. */
struct TwoSphereReport {
    int samples = 0;
    double max_discrepancy = 0;  ///< max |LHS - RHS| over samples and tangent pairs
    bool boundary = false;       ///< checked the boundary (fixed-surface) branch
    int branch = 0;              ///< +1 at c = r1+r2, -1 at c = |r1-r2|, 0 interior
};

/** Checks numerically that collapsing the two-sphere pair to its resultant is
 * a symplectomorphism onto the sphere of radius c with form omega/c^2:
 * interior levels compare the pushforward of the pair form with the sphere
 * form on the frame V_i = (rho_1 x e_i, rho_2 x e_i); at the boundary levels
 * c = r1 + r2 and c = |r1 - r2| the aligned/anti-aligned embedding of the
 * sphere into the pair space is checked instead. Deterministic in seed.
 * Throws LevelOutOfRange when c is outside [|r1-r2|, r1+r2] and
 * HypothesisViolation when r1 = r2 (the lower level degenerates to a point). */
TwoSphereReport two_sphere_reduction_check(double r1, double r2, double c,
                                           int samples, std::uint64_t seed = 1);

/** Scalars behind the analytic reduced Hessian at a rank-1 point. */
struct ReducedHessianData {
    double a = 0;          ///< multiplier of the star equations
    double K = 0;          ///< t b5 / ((1-t) b3)
    double X = 0;          ///< a b3 / t
    double Y = 0;          ///< a b5 / (1-t)
    double A_entry = 0;    ///< Hessian entry on W1
    double B_entry = 0;    ///< Hessian entry on W2
    bool b4_zero = false;  ///< which case of the two displayed matrices applies
};

/** The analytic reduced Hessian of (1/2) H_t at the reduced rank-1 point `q`,
 * diagonal in the adapted chart basis (W1, W2). The half normalization
 * matches the other half-squared Hessian conventions in this library. */
struct ReducedHessian {
    Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
    ReducedHessianData data;
    /** Ambient representatives of the chart basis on the 4-gon, usable as
     * finite-difference directions. */
    std::array<TangentVector, 2> basis;
};

/** Evaluates the closed-form reduced Hessian for a star solution describing
 * `q` (which must be planar and match the star coordinates). Requires
 * t in (0,1). When |b4| exceeds the planarity scale the generic case
 *   A = -t b4/b3 - (1-t) b4/b5,
 *   B = (a/c)(a3 b5 - a5 b3)^2 - (t/b3)(a3^2+b3^2) b4 b5^2
 *       - ((1-t)/b5)(a5^2+b5^2) b3^2 b4
 * applies; at t = 1/2 with b4 = 0 the matrix is
 *   diag(a/c, (a/c)(a3 b5 - a5 b3)^2).
 * Throws NotSingular when the star residual or the planarity defect of `q` is
 * large, and ContractViolation when a denominator the theory proves nonzero
 * (b3, b5, K+1, c) vanishes numerically. */
ReducedHessian reduced_hessian_rank1(const ReducedPoint& q, double t,
                                     const StarSolution& star);

/** Finite-difference oracle: the 2x2 Hessian of the half reduced Hamiltonian
 * (1/2)(t ell_{34}^2 + (1-t) ell_{45}^2) on the 4-gon manifold along the
 * given directions. Only meaningful where the reduced Hamiltonian is
 * critical; matches the normalization of reduced_hessian_rank1. */
Eigen::Matrix2d fd_reduced_hessian(const ReducedPoint& q, double t,
                                   const std::array<TangentVector, 2>& dirs,
                                   const FdOptions& opt = {});

/** The reduced Hamiltonian on 4-gons (pentagon ell_34, ell_45 become the
 * index sets {1,2} and {2,3} after reduction). */
double reduced_family_H(const Configuration& quad, double t);

} // namespace pentabend

#endif
