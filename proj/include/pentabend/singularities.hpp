#ifndef PENTABEND_SINGULARITIES_HPP
#define PENTABEND_SINGULARITIES_HPP

/** \file singularities.hpp
 * Detection and classification of singular points of F_t = (ell_12, H_t):
 * numerical rank, the algebraic singularity criterion, enumeration of
 * reduced rank-1 points (star solutions), the rank-0 classifier via the
 * characteristic quadratic, rank-1 and fixed-surface classifiers, and the
 * closed-form local-model classifiers. */

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "common.hpp"
#include "geometry.hpp"
#include "manifold.hpp"
#include "reduction.hpp"
#include "types.hpp"

namespace pentabend {

struct RankOptions {
    double sv_rel = 1e-8;  ///< singular-value cutoff for the differential span
};

/** Rank of the point for F_t: the dimension of span{dJ, dH_t} on the quotient
 * tangent space (differentials evaluated on the horizontal basis, each row
 * normalized by its ambient gradient norm). Returns 0, 1 or 2. */
int rank_at(const Configuration& rho, double t, const RankOptions& opt = {});

/** Decides whether the point is a critical point of H_t via the rotation-axis
 * criterion: after gauge fixing rho_1 = (r1,0,0), solves in least squares for
 * the single scalar a in
 *   (a,0,0) x rho_i = 0           (i = 2, .., n-3),
 *   (a,0,0) x rho_{n-2} = t rho_{n-1} x rho_{n-2},
 *   (a,0,0) x rho_n = (1-t) rho_{n-1} x rho_n,
 * and accepts when the residual is at most tol * perimeter^2. Returns the
 * witness a (possibly 0, e.g. at the transition point) or nullopt. */
std::optional<double> detect_singular(const Configuration& rho, double t,
                                      double tol = 1e-8);

struct StarOptions {
    int grid = 720;          ///< seed resolution of the angle sweep
    int bisect_iters = 80;   ///< refinement iterations per bracketed root
    double dedupe = 1e-6;    ///< coordinate distance identifying duplicates
};

/** Enumerates planar 4-gon solutions of the reduced critical-point equations
 * at level c with side lengths (c, r3, r4, r5) and parameter t in (0,1).
 * Parametrized by the direction of rho_3 and the elbow branch of the
 * (rho_4, rho_5) pair; roots of the consistency function are bracketed on the
 * grid and bisected. Solutions come in mirror pairs (b -> -b). Returns an
 * empty list when the level carries no rank-1 point. */
std::vector<StarSolution> solve_star(double c, double r3, double r4, double r5,
                                     double t, const StarOptions& opt = {});

struct ClassifyOptions {
    double fd_step_rel = 1e-4;        ///< FD step for quotient Hessians
    /** A probe is inconclusive when |c2^2 - 4 c4| <= disc_margin_rel *
     * max(c2^2, |4 c4|, 1): the discriminant carries the finite-difference
     * noise floor, so the real/non-real decision needs a coarser margin than
     * the roots themselves. */
    double disc_margin_rel = 1e-4;
    /** Roots closer to zero than root_margin_rel * max(1, |roots|) make a
     * probe inconclusive. */
    double root_margin_rel = 1e-7;
    int random_probes = 8;            ///< probes appended to the fixed schedule
    std::uint64_t probe_seed = 2024;
    double rank_sv_rel = 1e-8;
    double fixed_surface_tol = 1e-8;  ///< |J - J_min/max| <= tol * perimeter
};

/** Evidence from the rank-0 classifier. */
struct Rank0Report {
    SingularityType type = SingularityType::Degenerate;
    std::array<double, 2> probe{0, 0};             ///< deciding (nu, mu)
    std::array<std::complex<double>, 2> roots{};   ///< roots of chi_{nu,mu}
    double odd_residual = 0;   ///< size of the odd characteristic coefficients
    double margin = 0;         ///< smallest of root separation and |roots|
};

/** Classifies a rank-0 point by the characteristic quadratic chi_{nu,mu} of
 * A_{nu,mu} = Omega^{-1} (nu Hess J + mu Hess H_t) on the 4-dimensional
 * quotient tangent space (Hessians of the half-squared invariants by finite
 * differences along retracted curves). Probes are tried in schedule order
 * (0,1), (1,1), (1,-1), (1,0.9), then `random_probes` seeded draws; the first
 * probe with distinct nonzero roots decides. Throws NotRankZero. */
Rank0Report classify_rank0(const Configuration& rho, double t,
                           const ClassifyOptions& opt = {});

/** Same, with an explicit probe list replacing the schedule. */
Rank0Report classify_rank0(const Configuration& rho, double t,
                           const std::vector<std::array<double, 2>>& probes,
                           const ClassifyOptions& opt = {});

/** Classifies a rank-1 point: on a fixed surface of the circle action the
 * transverse model is examined (elliptic-regular iff the transverse Hessian
 * of J on the symplectic complement is definite); elsewhere the point is
 * reduced and the 2x2 reduced Hessian decides (det > 0 elliptic-regular,
 * det < 0 hyperbolic-regular). For t in (0,1) the analytic star form is used;
 * at the endpoints the finite-difference Hessian on the reduced 4-gon.
 * Throws NotRankOne. */
SingularityType classify_rank1(const Configuration& rho, double t,
                               const ClassifyOptions& opt = {});

/** Classifies a rank-0 point lying on a fixed surface J^{-1}(J_min) or
 * J^{-1}(J_max) by the Morse type of H_t restricted to the surface:
 * det > 0 elliptic-elliptic, det < 0 elliptic-hyperbolic. Throws
 * NotOnFixedSurface / NotRankZero. */
SingularityType classify_fixed_surface_rank0(const Configuration& rho, double t,
                                             const ClassifyOptions& opt = {});

/** The closed-form rank-0 local-model rule: focus-focus when
 * |mu2 + mu3| < |mu1|, elliptic-elliptic when |mu2 + mu3| > |mu1|, degenerate
 * at equality (compared with relative tolerance tol_rel). psi and the sign of
 * mu1 are irrelevant. Throws NotIntegrable when mu1 = mu2 + mu3 = 0. */
SingularityType classify_local_model(const LocalModelParams& p, double tol_rel = 1e-12);

/** Transition times of the interpolated local model
 *   f(t) = (t(mu2+mu3) + (1-t)(nu2+nu3))^2 - (t mu1)^2:
 * the two roots of f in (0,1), ascending. Requires (mu2+mu3)^2 > mu1^2 > 0,
 * nu2 + nu3 > 0 and mu2 + mu3 < 0; otherwise HypothesisViolation. */
std::pair<double, double> local_transition_times(double mu1, double mu2, double mu3,
                                                 double nu2, double nu3);

/** Full dispatcher: rank, then the matching classifier; regular points are
 * reported as rank 2. Populates diagnostic residuals. */
SingularityReport classify_point(const Configuration& rho, double t,
                                 const ClassifyOptions& opt = {});

} // namespace pentabend

#endif
