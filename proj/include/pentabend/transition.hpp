#ifndef PENTABEND_TRANSITION_HPP
#define PENTABEND_TRANSITION_HPP

/** \file transition.hpp
 * Everything specific to the isolated fixed point P and the transition times:
 * the closed-form 4x4 matrices at P, their finite-difference reproduction,
 * the characteristic-quadratic coefficients A(t), B(t), the factored
 * discriminant f(t) = a t^2 + b t + c, the closed-form transition times, and
 * the type sweep over t. */

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "common.hpp"
#include "geometry.hpp"
#include "manifold.hpp"
#include "singularities.hpp"
#include "types.hpp"

namespace pentabend {

/** The four matrices at P in the adapted chart basis (W1..W4):
 * Hessians of the half-squared Hamiltonians (1/2) ell_45^2, (1/2) ell_34^2,
 * (1/2) ell_12^2 and the inverse of the symplectic Gram matrix. */
struct PMatrices {
    Eigen::Matrix4d hess_h0;   ///< Hess of (1/2) ell_45^2 at P
    Eigen::Matrix4d hess_h1;   ///< Hess of (1/2) ell_34^2 at P
    Eigen::Matrix4d hess_j;    ///< Hess of (1/2) ell_12^2 at P
    Eigen::Matrix4d omega_inv; ///< inverse symplectic Gram matrix
};

/** Closed forms in (r3, r4, r5, j). */
PMatrices analytic_matrices(const TheoremHypotheses& h);

/** The same matrices from the transition configuration by finite differences
 * along retracted curves (Hessians) and by direct evaluation of the
 * symplectic form on the chart basis (Gram matrix, then inverted). */
PMatrices numeric_matrices(const TheoremHypotheses& h, const FdOptions& opt = {});

/** The ambient chart directions W1..W4 at P used by both channels. */
std::vector<TangentVector> transition_chart_basis();

/** Closed-form coefficients of chi_{1,1}(Y) = Y^2 + A(t) Y + B(t). */
std::pair<double, double> chi_coefficients(const TheoremHypotheses& h, double t);

/** chi coefficients extracted from the characteristic polynomial of
 * omega_inv * (hess_j + t hess_h1 + (1-t) hess_h0). */
struct ChiFromMatrices {
    double A = 0;             ///< coefficient of Y
    double B = 0;             ///< constant coefficient
    double odd_residual = 0;  ///< relative size of the odd X-coefficients
};
ChiFromMatrices chi_from_matrices(const PMatrices& m, double t);

/** The factored discriminant A(t)^2 - 4 B(t) = (linear)^2 (a t^2 + b t + c),
 * with the identity checked by direct evaluation on a t-grid. */
struct FactoredF {
    double a = 0, b = 0, c = 0;
    double delta = 0;                  ///< b^2 - 4 a c = 16 r3 r4 r5 j
    double max_rel_identity_err = 0;   ///< factorization identity on the grid
};
FactoredF factored_f(const TheoremHypotheses& h, int grid_points = 101);

/** Closed-form transition times, ascending; both roots of a t^2 + b t + c,
 * guaranteed inside (0,1) under the hypotheses. */
std::pair<double, double> transition_times(const TheoremHypotheses& h);

/** All the derived quadratic data in one bundle. */
struct QuadraticData {
    std::array<double, 3> A_coeffs{};  ///< A(t) = A2 t^2 + A1 t + A0 (stored {A2,A1,A0})
    std::array<double, 3> g_coeffs{};  ///< B(t) = j^2 g(t)^2, g = g2 t^2 + g1 t + g0
    std::array<double, 3> f_coeffs{};  ///< (a, b, c)
    double delta = 0;
    double t_minus = 0, t_plus = 0;
};
QuadraticData quadratic_data(const TheoremHypotheses& h);

/** One row of the type sweep at P. */
struct SweepRow {
    double t = 0;
    SingularityType type = SingularityType::Degenerate;  ///< formula channel
    std::optional<SingularityType> eigen_type;           ///< probe channel, suppressed near t+-
    double A = 0, B = 0, disc = 0;
    std::complex<double> root1, root2;                   ///< roots of chi_{1,1}
};

struct SweepOptions {
    double degenerate_window = 1e-6;  ///< |t - t+-| below which rows report Degenerate
    bool with_eigen_channel = true;   ///< also classify via the probe channel
    double t_start = 0.0;             ///< sweep interval, within [0,1]
    double t_stop = 1.0;
    ClassifyOptions classify;
};

/** Classifies P at num_t equispaced t in [t_start, t_stop] (a subinterval of
 * [0,1]). The `type` column follows the closed-form channel
 * (elliptic-elliptic outside [t-, t+], focus-focus inside, degenerate within
 * the window); `eigen_type` carries the finite-difference probe
 * classification where enabled. Throws ContractViolation for num_t < 2 or a
 * bad interval. */
std::vector<SweepRow> sweep(const TheoremHypotheses& h, int num_t,
                            const SweepOptions& opt = {});

} // namespace pentabend

#endif
