#ifndef PENTABEND_GEOMETRY_HPP
#define PENTABEND_GEOMETRY_HPP

/** \file geometry.hpp
 * Closed n-gon configurations in R^3 with fixed side lengths, their tangent
 * vectors, the symplectic form, gauge fixing, and samplers.
 *
 * A configuration is a tuple (rho_1,...,rho_n) of edge vectors with
 * |rho_i| = r_i and sum rho_i = 0, considered up to simultaneous rotation.
 * The moduli space carries the symplectic form
 *     omega(u, w) = sum_i (1/r_i^2) rho_i . (u_i x w_i),
 * reduced from the product of round spheres. */

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "common.hpp"

namespace pentabend {

/** Positive side lengths r_1..r_n, n >= 4. */
struct SideLengths {
    std::vector<double> r;

    SideLengths() = default;
    /** Validates positivity and n >= 4; throws InvalidLengths. */
    explicit SideLengths(std::vector<double> lengths);

    int size() const { return int(r.size()); }
    double operator[](int i) const { return r[std::size_t(i)]; }
    /** Perimeter sum(r_i); the length scale used by tolerances. */
    double total() const;
};

/** Structural flags of a side-length vector. */
struct LengthFlags {
    bool generic = false;   ///< no sign vector eps with sum eps_i r_i = 0
    bool nonempty = false;  ///< polygon inequality max r_i <= sum of others
    /** Transition-theorem hypotheses; only defined for n = 5. */
    std::optional<bool> theorem_ok;
};

/** Computes all flags. Genericity is checked by exhaustive enumeration of the
 * 2^(n-1) sign vectors, so n <= 12 (throws UnsupportedSize beyond). */
LengthFlags validate_side_lengths(const SideLengths& r);

/** Pentagon side lengths satisfying the transition-theorem hypotheses:
 *
 *   (1/2) r5 <= r4 < r5 < r3,
 *   |r1 + r2 - r3| < r5 - r4,
 *   |r3 - r4 - r5| < |r1 - r2| < r3 + r4 - r5,
 *
 * plus genericity and nonemptiness. Carries the derived quantities
 * j = r3 + r4 - r5 and the range [J_min, J_max] of ell_{12}. */
struct TheoremHypotheses {
    SideLengths r;
    double j = 0;      ///< r3 + r4 - r5, the ell_12-level of the transition point
    double J_min = 0;  ///< |r1 - r2|
    double J_max = 0;  ///< r1 + r2

    /** Validates and constructs; throws HypothesisViolation / InvalidLengths. */
    static TheoremHypotheses require(const SideLengths& r);
    /** Non-throwing check of the same inequalities. */
    static bool check(const SideLengths& r);
};

/** Edge vectors of a closed polygon; entries satisfy |rho_i| = r_i and
 * sum rho_i = 0 up to the construction tolerances. */
struct Configuration {
    std::vector<Vec3> rho;

    int size() const { return int(rho.size()); }
    Vec3& operator[](int i) { return rho[std::size_t(i)]; }
    const Vec3& operator[](int i) const { return rho[std::size_t(i)]; }

    Vec3 closure_defect() const;
    /** Edge norms |rho_i| (equal to the side lengths within tolerance). */
    std::vector<double> radii() const;
    double perimeter() const;
};

/** Verifies |rho_i| = r_i to rel_tol and closure to rel_tol * perimeter. */
bool is_valid_configuration(const Configuration& c, const SideLengths& r,
                            double rel_tol = 1e-9);

/** One tangent vector per edge: v_i in T_{rho_i} S^2, sum v_i = 0. */
struct TangentVector {
    std::vector<Vec3> v;

    TangentVector() = default;
    explicit TangentVector(int n) : v(std::size_t(n), Vec3::Zero()) {}

    int size() const { return int(v.size()); }
    Vec3& operator[](int i) { return v[std::size_t(i)]; }
    const Vec3& operator[](int i) const { return v[std::size_t(i)]; }

    double norm() const;
    double dot(const TangentVector& o) const;

    TangentVector& operator+=(const TangentVector& o);
    TangentVector& operator*=(double s);
    friend TangentVector operator+(TangentVector a, const TangentVector& b) { return a += b; }
    friend TangentVector operator*(double s, TangentVector a) { return a *= s; }
};

/** The three rotation generators at `c`: V_k[i] = e_k x rho_i. These span the
 * vertical space of the SO(3) quotient. */
std::array<TangentVector, 3> vertical_frame(const Configuration& c);

/** The reduced symplectic form omega(u,w) = sum (1/|rho_i|^2) rho_i.(u_i x w_i). */
double symplectic_form(const Configuration& c, const TangentVector& u,
                       const TangentVector& w);

/** Rotates the configuration to the residual gauge: rho_1 along +x, and the
 * first edge not collinear with rho_1 placed in the closed upper half-plane
 * (y >= 0, z = 0 for rho_2 when rho_2 is that edge). Idempotent; the result
 * depends only on the SO(3)-orbit of the input. */
Configuration gauge_fix(const Configuration& c);

/** The planar transition configuration P for pentagon lengths satisfying the
 * theorem hypotheses: edges 3,4,5 on the x-axis,
 *   rho_3 = (-r3,0,0), rho_4 = (-r4,0,0), rho_5 = (r5,0,0),
 * and rho_1, rho_2 closing up the triangle with |rho_1 + rho_2| = j in the
 * upper half-plane. */
Configuration build_transition_point(const TheoremHypotheses& h);

/** Uniform-ish random configuration by the diagonal-chain construction:
 * sample the free diagonals d_k = |rho_1 + ... + rho_k| inside their triangle
 * intervals (rejection, budget 10^4), then fold the hinge triangles by
 * uniform bending angles. Deterministic in `seed`. Throws EmptySpace if the
 * polygon inequality fails and SamplingFailed if the budget is exhausted. */
Configuration sample_configuration(const SideLengths& r, std::uint64_t seed);

/** Same, drawing from an existing generator (used by the batch kernels). */
Configuration sample_configuration(const SideLengths& r, Rng& rng);

} // namespace pentabend

#endif
