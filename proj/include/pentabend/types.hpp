#ifndef PENTABEND_TYPES_HPP
#define PENTABEND_TYPES_HPP

/** \file types.hpp
 * Shared value types for singularity analysis: the singularity taxonomy,
 * planar star solutions of the reduced critical-point equations, local
 * normal-form parameters, and the serializable classification report. */

#include <array>
#include <complex>
#include <map>
#include <string>

#include "common.hpp"

namespace pentabend {

/** Taxonomy of points of the integrable system F_t = (ell_12, H_t). */
enum class SingularityType {
    Regular,             ///< rank 2
    EllipticElliptic,    ///< rank 0, two distinct negative roots of chi
    FocusFocus,          ///< rank 0, non-real root pair of chi
    EllipticHyperbolic,  ///< rank 0, real roots of opposite sign
    HyperbolicHyperbolic,///< rank 0, two distinct positive roots
    EllipticRegular,     ///< rank 1, reduced Hessian definite
    HyperbolicRegular,   ///< rank 1, reduced Hessian indefinite
    Degenerate,          ///< no probe certifies non-degeneracy
};

const char* to_string(SingularityType s);

/** Parses the exact strings produced by to_string; throws ContractViolation
 * on anything else. */
SingularityType singularity_type_from_string(const std::string& s);

/** Types admissible in a semitoric system. */
bool semitoric_admissible(SingularityType s);

/** A planar 4-gon rho_0 = (c,0,0), rho_i = (a_i, b_i, 0) solving the reduced
 * critical-point equations
 *     a b3 = t (a4 b3 - a3 b4),   a b5 = (1-t) (a4 b5 - a5 b4),
 * together with the multiplier a. Indices are the pentagon labels 3,4,5 of
 * the edges surviving reduction. */
struct StarSolution {
    double t = 0;  ///< family parameter
    double c = 0;  ///< length of the fixed first edge (reduction level)
    double a = 0;  ///< multiplier; nonzero for valid solutions
    double a3 = 0, b3 = 0;
    double a4 = 0, b4 = 0;
    double a5 = 0, b5 = 0;

    /** Max absolute residual of the two defining equations. */
    double residual() const;
};

/** Parameters of the rank-0 local model
 *   H = mu1 Re(e^{i psi} z1 z2) + mu2 |z1|^2 + mu3 |z2|^2 + O(3),
 *   J = eps (|z1|^2 - |z2|^2)/2,
 * and of the toric endpoint model with coefficients nu2, nu3. */
struct LocalModelParams {
    double mu1 = 0;
    double mu2 = 0;
    double mu3 = 0;
    double psi = 0;  ///< phase; irrelevant for the type
    double nu2 = 0;
    double nu3 = 0;
    int eps = +1;    ///< sign of the J-model
};

/** Serializable outcome of classifying one point at one t. */
struct SingularityReport {
    int rank = 2;
    SingularityType type = SingularityType::Regular;
    double t = 0;
    std::array<double, 2> probe{0, 0};                  ///< (nu, mu) used, rank 0 only
    std::array<std::complex<double>, 2> roots{};        ///< roots of chi (rank 0) or of the reduced spectrum
    std::map<std::string, double> residuals;            ///< named diagnostics
};

} // namespace pentabend

#endif
