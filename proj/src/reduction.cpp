#include "pentabend/reduction.hpp"

#include <cmath>

#include "pentabend/hamiltonians.hpp"

namespace pentabend {

namespace {

/** Builds a pair (rho1, rho2) with |rho1| = r1, |rho2| = r2 and
 * |rho1 + rho2| = c, uniformly randomized in orientation. */
std::pair<Vec3, Vec3> random_pair_on_level(double r1, double r2, double c, Rng& rng) {
    const Vec3 e = rng.unit_vector();           // direction of the resultant
    Vec3 raw = rng.unit_vector();
    Vec3 w = raw - raw.dot(e) * e;              // transverse direction
    double wn = w.norm();
    while (wn < 1e-8) {
        raw = rng.unit_vector();
        w = raw - raw.dot(e) * e;
        wn = w.norm();
    }
    w /= wn;
    const double x1 = (c * c + r1 * r1 - r2 * r2) / (2 * c);
    const double y1 = std::sqrt(std::max(0.0, r1 * r1 - x1 * x1));
    const Vec3 rho1 = x1 * e + y1 * w;
    const Vec3 rho2 = c * e - rho1;
    return {rho1, rho2};
}

} // namespace

ReducedPoint reduce_point(const Configuration& rho) {
    if (rho.size() != 5) throw UnsupportedSize("reduce_point expects a pentagon");
    const Vec3 mu = rho[0] + rho[1];
    const double c = mu.norm();
    if (c < 1e-8 * rho.perimeter())
        throw VanishingMoment("ell_12 vanishes; the reduced 4-gon is undefined");
    Configuration quad;
    quad.rho = {mu, rho[2], rho[3], rho[4]};
    ReducedPoint out;
    out.c = c;
    out.quad = gauge_fix(quad);
    return out;
}

TwoSphereReport two_sphere_reduction_check(double r1, double r2, double c,
                                           int samples, std::uint64_t seed) {
    if (!(r1 > 0) || !(r2 > 0)) throw InvalidLengths("radii must be positive");
    if (r1 == r2) throw HypothesisViolation("two-sphere check requires r1 != r2");
    const double lo = std::abs(r1 - r2), hi = r1 + r2;
    const double scale = hi;
    if (c < lo - 1e-12 * scale || c > hi + 1e-12 * scale)
        throw LevelOutOfRange("level outside [|r1-r2|, r1+r2]");

    TwoSphereReport rep;
    rep.samples = samples;
    Rng rng(seed);

    const bool upper = std::abs(c - hi) <= 1e-12 * scale;
    const bool lower = std::abs(c - lo) <= 1e-12 * scale;
    if (upper || lower) {
        // Boundary branch: the embedding rho -> (s1 r1 rho/c, s2 r2 rho/c) of
        // the radius-c sphere onto the aligned pairs; its pullback of the pair
        // form must be the sphere form omega/c^2.
        rep.boundary = true;
        const double s1 = (upper || r1 > r2) ? +1.0 : -1.0;
        const double s2 = upper ? +1.0 : -s1;
        rep.branch = upper ? +1 : -1;
        for (int k = 0; k < samples; ++k) {
            const Vec3 rhoc = c * rng.unit_vector();
            Vec3 v = rng.unit_vector(), w = rng.unit_vector();
            v -= v.dot(rhoc) / rhoc.squaredNorm() * rhoc;
            w -= w.dot(rhoc) / rhoc.squaredNorm() * rhoc;
            const double lhs = rhoc.dot(v.cross(w)) / (c * c);
            const Vec3 p1 = s1 * (r1 / c) * rhoc, p2 = s2 * (r2 / c) * rhoc;
            const Vec3 v1 = s1 * (r1 / c) * v, v2 = s2 * (r2 / c) * v;
            const Vec3 w1 = s1 * (r1 / c) * w, w2 = s2 * (r2 / c) * w;
            const double rhs = p1.dot(v1.cross(w1)) / (r1 * r1) +
                               p2.dot(v2.cross(w2)) / (r2 * r2);
            rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(lhs - rhs));
        }
        return rep;
    }

    // Interior branch: push the frame V_i = (rho1 x e_i, rho2 x e_i), which is
    // tangent to the level set, through the collapse map (sum the components)
    // and compare the sphere form with the pair form on all index pairs.
    const Vec3 axes[3] = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
    for (int k = 0; k < samples; ++k) {
        const auto [rho1, rho2] = random_pair_on_level(r1, r2, c, rng);
        const Vec3 mu = rho1 + rho2;
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                const Vec3 vi1 = rho1.cross(axes[i]), vi2 = rho2.cross(axes[i]);
                const Vec3 vj1 = rho1.cross(axes[j]), vj2 = rho2.cross(axes[j]);
                const Vec3 di = vi1 + vi2, dj = vj1 + vj2;  // collapsed images
                const double lhs = mu.dot(di.cross(dj)) / (c * c);
                const double rhs = rho1.dot(vi1.cross(vj1)) / (r1 * r1) +
                                   rho2.dot(vi2.cross(vj2)) / (r2 * r2);
                rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(lhs - rhs));
            }
        }
    }
    return rep;
}

double reduced_family_H(const Configuration& quad, double t) {
    if (quad.size() != 4) throw UnsupportedSize("reduced_family_H expects a 4-gon");
    return t * ell_sq(quad, IndexSet{1, 2}) + (1.0 - t) * ell_sq(quad, IndexSet{2, 3});
}

ReducedHessian reduced_hessian_rank1(const ReducedPoint& q, double t,
                                     const StarSolution& star) {
    if (q.quad.size() != 4) throw UnsupportedSize("expected a reduced 4-gon");
    if (!(t > 0.0) || !(t < 1.0))
        throw ContractViolation("analytic reduced Hessian requires t in (0,1)");
    const double scale = q.quad.perimeter();

    // The closed forms hold on the planar chart; require q to live there and
    // to match the star coordinates.
    double max_z = 0, coord_err = 0;
    const double coords[4][2] = {{q.c, 0},
                                 {star.a3, star.b3},
                                 {star.a4, star.b4},
                                 {star.a5, star.b5}};
    for (int i = 0; i < 4; ++i) {
        max_z = std::max(max_z, std::abs(q.quad[i].z()));
        coord_err = std::max(coord_err, std::abs(q.quad[i].x() - coords[i][0]));
        coord_err = std::max(coord_err, std::abs(q.quad[i].y() - coords[i][1]));
    }
    if (max_z > 1e-6 * scale)
        throw NotSingular("reduced point is not planar within tolerance");
    if (coord_err > 1e-6 * scale)
        throw ContractViolation("star solution does not describe this reduced point");
    if (star.residual() > 1e-6 * scale * scale)
        throw NotSingular("star equations not satisfied within tolerance");

    const double a = star.a, c = q.c;
    const double a3 = star.a3, b3 = star.b3;
    const double a5 = star.a5, b5 = star.b5;
    const double b4 = star.b4;
    if (std::abs(c) < 1e-12 * scale) throw ContractViolation("vanishing reduction level");
    if (std::abs(b3) < 1e-10 * scale || std::abs(b5) < 1e-10 * scale)
        throw ContractViolation("b3 or b5 vanishes; excluded by the star equations");

    ReducedHessian out;
    auto& d = out.data;
    d.a = a;
    d.X = a * b3 / t;
    d.Y = a * b5 / (1.0 - t);
    d.K = (t * b5) / ((1.0 - t) * b3);
    d.b4_zero = std::abs(b4) <= 1e-8 * scale;

    const int n = 4;
    TangentVector w1(n), w2(n);
    const double cross35 = a3 * b5 - a5 * b3;
    // W2 = (a5 b3 - a3 b5) d/dy0 - b3 b5 d/dx3 + b3 b5 d/dx5, written out with
    // the sphere-dependent coordinates eliminated at the planar point.
    w2[0] = Vec3(0, -cross35, 0);
    w2[1] = Vec3(-b3 * b5, a3 * b5, 0);
    w2[3] = Vec3(b3 * b5, -a5 * b3, 0);

    if (d.b4_zero) {
        if (std::abs(t - 0.5) > 1e-8)
            throw ContractViolation("b4 = 0 occurs only at t = 1/2");
        // W1 = d/dz0 - d/dz3.
        w1[0] = Vec3(0, 0, 1);
        w1[1] = Vec3(0, 0, -1);
        d.A_entry = a / c;
        d.B_entry = (a / c) * cross35 * cross35;
    } else {
        if (std::abs(d.K + 1.0) < 1e-10)
            throw ContractViolation("K = -1; excluded for singular points");
        // W1 = d/dz3 - d/dz5.
        w1[1] = Vec3(0, 0, 1);
        w1[3] = Vec3(0, 0, -1);
        d.A_entry = -t * b4 / b3 - (1.0 - t) * b4 / b5;
        d.B_entry = (a / c) * cross35 * cross35 -
                    (t / b3) * (a3 * a3 + b3 * b3) * b4 * b5 * b5 -
                    ((1.0 - t) / b5) * (a5 * a5 + b5 * b5) * b3 * b3 * b4;
    }

    out.H << d.A_entry, 0, 0, d.B_entry;
    out.basis = {w1, w2};
    return out;
}

Eigen::Matrix2d fd_reduced_hessian(const ReducedPoint& q, double t,
                                   const std::array<TangentVector, 2>& dirs,
                                   const FdOptions& opt) {
    // Half normalization: the closed-form entries of reduced_hessian_rank1
    // are the Hessian entries of (1/2)(t ell_34^2 + (1-t) ell_45^2), as a
    // Lagrange-multiplier computation at the star point shows.
    const ScalarField f = [t](const Configuration& quad) {
        return 0.5 * reduced_family_H(quad, t);
    };
    const std::vector<TangentVector> v{dirs[0], dirs[1]};
    return fd_hessian(f, q.quad, v, opt);
}

} // namespace pentabend
