#include <doctest.h>

#include <cmath>

#include "pentabend/geometry.hpp"
#include "pentabend/hamiltonians.hpp"
#include "pentabend/manifold.hpp"
#include "pentabend/transition.hpp"

using namespace pentabend;

namespace {
SideLengths reference() { return SideLengths({3, 1, 4, 2, 3}); }

TangentVector random_tangent(const Configuration& c, Rng& rng) {
    TangentVector w(c.size());
    for (int i = 0; i < c.size(); ++i) w[i] = rng.unit_vector();
    TangentVector y = project_to_tangent(c, w);
    y *= 1.0 / y.norm();
    return y;
}
}

TEST_SUITE("manifold") {

TEST_CASE("retraction restores radii and closure") {
    SideLengths r = reference();
    Configuration c = sample_configuration(r, 21);
    Rng rng(3);
    TangentVector dir = random_tangent(c, rng);

    Configuration moved = retract(c, r.r, dir, 0.02 * c.perimeter());
    for (int i = 0; i < 5; ++i)
        CHECK(moved[i].norm() == doctest::Approx(r[i]).epsilon(1e-12));
    CHECK(moved.closure_defect().norm() <= 1e-12 * moved.perimeter());
    // the step actually went somewhere
    CHECK((moved[0] - c[0]).norm() + (moved[2] - c[2]).norm() > 1e-4);
}

TEST_CASE("tangent basis has dimension 2n-3 and is orthonormal") {
    Configuration c = sample_configuration(reference(), 22);
    auto basis = constraint_tangent_basis(c);
    REQUIRE(basis.size() == 7);  // 2*5 - 3
    for (std::size_t a = 0; a < basis.size(); ++a) {
        // tangency and closure of each basis vector
        Vec3 sum = Vec3::Zero();
        for (int i = 0; i < 5; ++i) {
            CHECK(std::abs(basis[a][i].dot(c[i])) <= 1e-10);
            sum += basis[a][i];
        }
        CHECK(sum.norm() <= 1e-10);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const double want = (a == b) ? 1.0 : 0.0;
            CHECK(basis[a].dot(basis[b]) == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("horizontal basis is orthogonal to the rotation generators") {
    Configuration c = sample_configuration(reference(), 23);
    auto basis = horizontal_basis(c);
    REQUIRE(basis.size() == 4);  // 2*5 - 6
    auto V = vertical_frame(c);
    for (const TangentVector& h : basis)
        for (const TangentVector& v : V)
            CHECK(std::abs(h.dot(v)) <= 1e-9 * v.norm());
}

TEST_CASE("projection onto the tangent space is idempotent") {
    Configuration c = sample_configuration(reference(), 24);
    Rng rng(9);
    TangentVector w(5);
    for (int i = 0; i < 5; ++i) w[i] = rng.unit_vector();
    TangentVector p1 = project_to_tangent(c, w);
    TangentVector p2 = project_to_tangent(c, p1);
    TangentVector diff = p2 + (-1.0 * p1);
    CHECK(diff.norm() <= 1e-10 * (1 + p1.norm()));
    Vec3 sum = Vec3::Zero();
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(p1[i].dot(c[i])) <= 1e-10 * c.perimeter());
        sum += p1[i];
    }
    CHECK(sum.norm() <= 1e-10);
}

TEST_CASE("fd_directional matches the analytic differential") {
    Configuration c = sample_configuration(reference(), 25);
    Rng rng(11);
    TangentVector y = random_tangent(c, rng);
    for (const Observable& f :
         {Observable::length_sq(IndexSet{2, 3}), Observable::length(IndexSet{0, 1}),
          Observable::family(0.37)}) {
        const double want = f.differential(c, y);
        const double got =
            fd_directional([&f](const Configuration& cc) { return f(cc); }, c, y);
        CHECK(got == doctest::Approx(want).epsilon(1e-7));
    }
}

TEST_CASE("fd_second reproduces a frozen Hessian entry at the transition point") {
    TheoremHypotheses h = TheoremHypotheses::require(reference());
    Configuration P = build_transition_point(h);
    auto basis = transition_chart_basis();
    const ScalarField half_j = [](const Configuration& c) {
        return 0.5 * ell_sq(c, IndexSet{0, 1});
    };
    // Hess[(1/2) ell_12^2](W1, W1) = 1 - j/r3 = 1/4 at the reference tuple
    CHECK(fd_second(half_j, P, basis[0]) == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("newton_retract rejects unreachable inputs") {
    // radically wrong radii make closure infeasible: max > sum of others
    std::vector<Vec3> pts = {Vec3(10, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1),
                             Vec3(-1, 0, 0), Vec3(0, -1, 0)};
    std::vector<double> radii = {10, 1, 1, 1, 1};
    CHECK_THROWS_AS(newton_retract(pts, radii), NumericalFailure);
}

} // TEST_SUITE
