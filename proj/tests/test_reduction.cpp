#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pentabend/geometry.hpp"
#include "pentabend/hamiltonians.hpp"
#include "pentabend/reduction.hpp"
#include "pentabend/singularities.hpp"

using namespace pentabend;

namespace {
SideLengths reference() { return SideLengths({3, 1, 4, 2, 3}); }

Configuration transition_P() {
    return build_transition_point(TheoremHypotheses::require(reference()));
}

ReducedPoint reduced_point_from_star(const StarSolution& s) {
    ReducedPoint q;
    q.c = s.c;
    q.quad.rho = {Vec3(s.c, 0, 0), Vec3(s.a3, s.b3, 0), Vec3(s.a4, s.b4, 0),
                  Vec3(s.a5, s.b5, 0)};
    return q;
}
}

TEST_SUITE("reduction") {

TEST_CASE("reduce_point collapses the first two edges of P to (j,0,0)") {
    ReducedPoint q = reduce_point(transition_P());
    CHECK(q.c == doctest::Approx(3.0).epsilon(1e-14));
    REQUIRE(q.quad.size() == 4);
    CHECK(q.quad[0].isApprox(Vec3(3, 0, 0), 1e-12));
    CHECK(q.quad[1].isApprox(Vec3(-4, 0, 0), 1e-12));
    CHECK(q.quad[2].isApprox(Vec3(-2, 0, 0), 1e-12));
    CHECK(q.quad[3].isApprox(Vec3(3, 0, 0), 1e-12));
}

TEST_CASE("reduction is constant on rotation and ell_12-bending orbits") {
    Configuration c = sample_configuration(reference(), 41);
    ReducedPoint q0 = reduce_point(c);

    Eigen::AngleAxisd rot(1.2, Vec3(0.3, -1, 2).normalized());
    Configuration rc = c;
    for (int i = 0; i < 5; ++i) rc[i] = rot * c[i];
    ReducedPoint q1 = reduce_point(rc);

    Configuration bc = bending_rotate(c, IndexSet{0, 1}, 1.1);
    ReducedPoint q2 = reduce_point(bc);

    for (int i = 0; i < 4; ++i) {
        CHECK(q1.quad[i].isApprox(q0.quad[i], 1e-9));
        CHECK(q2.quad[i].isApprox(q0.quad[i], 1e-9));
    }
}

TEST_CASE("reduce_point requires a nonvanishing ell_12") {
    Configuration c;
    c.rho = {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(1, 0, 0),
             Vec3(-1, -1, 0)};
    CHECK_THROWS_AS(reduce_point(c), VanishingMoment);
}

TEST_CASE("two-sphere reduction identity on interior and boundary levels") {
    TwoSphereReport interior = two_sphere_reduction_check(3, 1, 2.5, 60, 9);
    CHECK(interior.samples == 60);
    CHECK(interior.max_discrepancy <= 1e-10);
    CHECK_FALSE(interior.boundary);
    CHECK(interior.branch == 0);

    TwoSphereReport upper = two_sphere_reduction_check(3, 1, 4.0, 40, 9);
    CHECK(upper.boundary);
    CHECK(upper.branch == +1);
    CHECK(upper.max_discrepancy <= 1e-10);

    TwoSphereReport lower = two_sphere_reduction_check(3, 1, 2.0, 40, 9);
    CHECK(lower.boundary);
    CHECK(lower.branch == -1);
    CHECK(lower.max_discrepancy <= 1e-10);

    CHECK_THROWS_AS(two_sphere_reduction_check(3, 1, 4.5, 10), LevelOutOfRange);
    CHECK_THROWS_AS(two_sphere_reduction_check(3, 1, 1.5, 10), LevelOutOfRange);
    CHECK_THROWS_AS(two_sphere_reduction_check(2, 2, 0.0, 10), HypothesisViolation);
}

TEST_CASE("the reduced Hamiltonian matches the pentagon family") {
    Configuration c = sample_configuration(reference(), 47);
    ReducedPoint q = reduce_point(c);
    for (double t : {0.0, 0.3, 1.0})
        CHECK(reduced_family_H(q.quad, t) ==
              doctest::Approx(family_H(c, t)).epsilon(1e-12));
}

TEST_CASE("frozen b4 = 0 star: explicit reduced Hessian and FD agreement") {
    // planar quad (3,0,0), (-2,2,0), (-2,0,0), (1,-2,0); lengths
    // (3, 2*sqrt 2, 2, sqrt 5); at t = 1/2 the star equations hold with
    // multiplier a = a4/2 = -1
    StarSolution s;
    s.t = 0.5;
    s.c = 3;
    s.a = -1;
    s.a3 = -2; s.b3 = 2;
    s.a4 = -2; s.b4 = 0;
    s.a5 = 1;  s.b5 = -2;
    CHECK(s.residual() == 0.0);

    ReducedPoint q = reduced_point_from_star(s);
    ReducedHessian rh = reduced_hessian_rank1(q, 0.5, s);
    CHECK(rh.data.b4_zero);
    // H = diag(a/c, (a/c) C^2) with C = a3 b5 - a5 b3 = 2
    CHECK(rh.H(0, 0) == doctest::Approx(-1.0 / 3).epsilon(1e-12));
    CHECK(rh.H(1, 1) == doctest::Approx(-4.0 / 3).epsilon(1e-12));
    CHECK(std::abs(rh.H(0, 1)) <= 1e-12);
    CHECK(rh.H.determinant() > 0);  // definite: elliptic

    Eigen::Matrix2d fd = fd_reduced_hessian(q, 0.5, rh.basis);
    CHECK(fd(0, 0) == doctest::Approx(rh.H(0, 0)).epsilon(1e-5));
    CHECK(fd(1, 1) == doctest::Approx(rh.H(1, 1)).epsilon(1e-5));
    CHECK(std::abs(fd(0, 1)) <= 1e-5);
}

TEST_CASE("analytic and FD reduced Hessians agree at solved stars") {
    const double c = 2.5, t = 0.3;
    auto stars = solve_star(c, 4, 2, 3, t);
    REQUIRE(!stars.empty());

    int checked = 0;
    for (const StarSolution& s : stars) {
        if (checked >= 4) break;
        ReducedPoint q = reduced_point_from_star(s);
        ReducedHessian rh = reduced_hessian_rank1(q, t, s);
        Eigen::Matrix2d fd = fd_reduced_hessian(q, t, rh.basis);

        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> ea(rh.H), ef(fd);
        for (int k = 0; k < 2; ++k) {
            const double want = ea.eigenvalues()(k), got = ef.eigenvalues()(k);
            CHECK(std::abs(got - want) <=
                  1e-4 * std::max({std::abs(want), std::abs(got), 1.0}));
        }

        // mirror star (b -> -b) carries the same Hessian entries
        StarSolution m = s;
        m.b3 = -s.b3; m.b4 = -s.b4; m.b5 = -s.b5;
        CHECK(m.residual() <= 1e-9 * (1 + std::abs(s.a4)));
        ReducedHessian rhm = reduced_hessian_rank1(reduced_point_from_star(m), t, m);
        CHECK(rhm.H(0, 0) == doctest::Approx(rh.H(0, 0)).epsilon(1e-12));
        CHECK(rhm.H(1, 1) == doctest::Approx(rh.H(1, 1)).epsilon(1e-12));
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("reduced Hessian rejects non-critical data") {
    // a quad that is NOT a star solution (generic sampled 4-gon)
    Configuration c = sample_configuration(reference(), 49);
    ReducedPoint q = reduce_point(c);
    StarSolution fake;
    fake.t = 0.4;
    fake.c = q.c;
    fake.a = 0.5;
    fake.a3 = q.quad[1].x(); fake.b3 = q.quad[1].y();
    fake.a4 = q.quad[2].x(); fake.b4 = q.quad[2].y();
    fake.a5 = q.quad[3].x(); fake.b5 = q.quad[3].y();
    CHECK_THROWS_AS(reduced_hessian_rank1(q, 0.4, fake), NotSingular);
}

} // TEST_SUITE
