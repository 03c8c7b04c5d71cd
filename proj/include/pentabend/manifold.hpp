#ifndef PENTABEND_MANIFOLD_HPP
#define PENTABEND_MANIFOLD_HPP

/** \file manifold.hpp
 * Numerics on the constraint manifold {|rho_i| = r_i, sum rho_i = 0}:
 * Newton retraction, orthonormal tangent / horizontal bases, and
 * finite-difference derivatives along retracted curves.
 *
 * The second-difference Hessians computed here are only meaningful at
 * critical points of f restricted to the manifold (there the intrinsic
 * Hessian is independent of the curve used to realize a tangent direction);
 * all call sites are of that form. */

#include <functional>
#include <vector>

#include "common.hpp"
#include "geometry.hpp"

namespace pentabend {

using ScalarField = std::function<double(const Configuration&)>;

/** Retracts ambient points onto the constraint set: each point is radially
 * projected to its sphere, then a least-norm tangent correction restores
 * closure; repeated until |sum rho_i| <= tol_rel * sum(radii).
 * Throws NumericalFailure if Newton stalls before reaching the tolerance. */
Configuration newton_retract(const std::vector<Vec3>& points,
                             const std::vector<double>& radii,
                             double tol_rel = 1e-14, int max_iter = 60);

/** Retraction of base + s * dir (radii taken from `radii`). */
Configuration retract(const Configuration& base, const std::vector<double>& radii,
                      const TangentVector& dir, double s);

/** Orthonormal basis of the tangent space of the constraint set (dimension
 * 2n-3 at non-collinear configurations), via SVD of the constraint Jacobian. */
std::vector<TangentVector> constraint_tangent_basis(const Configuration& c);

/** Orthonormal basis of the horizontal space: the orthogonal complement of
 * the rotation generators inside the constraint tangent space (dimension
 * 2n-6). Quotient tangent vectors are represented by horizontal lifts. */
std::vector<TangentVector> horizontal_basis(const Configuration& c);

/** Orthogonal projection of an ambient perturbation onto the constraint
 * tangent space at `c`. */
TangentVector project_to_tangent(const Configuration& c, const TangentVector& w);

/** The matrix [omega(dirs[i], dirs[j])]_ij. */
Eigen::MatrixXd form_matrix(const Configuration& c,
                            const std::vector<TangentVector>& dirs);

struct FdOptions {
    double step_rel = 1.5e-3; ///< FD step as a fraction of the perimeter
    bool richardson = true;   ///< one Richardson pass (h and h/2)
    double retract_tol = 1e-14;
};

/** Central first derivative of f along the retracted curve through `c` with
 * velocity `dir`. Valid everywhere (first derivatives only see the tangent
 * direction). */
double fd_directional(const ScalarField& f, const Configuration& c,
                      const TangentVector& dir, const FdOptions& opt = {});

/** Second derivative of f along the retracted curve with velocity `dir`;
 * equals Hess(f)(dir, dir) at critical points of f. */
double fd_second(const ScalarField& f, const Configuration& c,
                 const TangentVector& dir, const FdOptions& opt = {});

/** Full FD Hessian in the given directions (by polarization of fd_second);
 * valid at critical points of f on the manifold. */
Eigen::MatrixXd fd_hessian(const ScalarField& f, const Configuration& c,
                           const std::vector<TangentVector>& dirs,
                           const FdOptions& opt = {});

} // namespace pentabend

#endif
