#include <doctest.h>

#include <cmath>

#include "pentabend/geometry.hpp"
#include "pentabend/hamiltonians.hpp"
#include "pentabend/manifold.hpp"

using namespace pentabend;

namespace {
SideLengths reference() { return SideLengths({3, 1, 4, 2, 3}); }

Configuration transition_P() {
    return build_transition_point(TheoremHypotheses::require(reference()));
}

/* Pentagon with mu_{12} = 0: lengths (1,1,1,1,sqrt 2). */
Configuration vanishing_pair() {
    Configuration c;
    c.rho = {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(1, 0, 0),
             Vec3(-1, -1, 0)};
    return c;
}
}

TEST_SUITE("hamiltonians") {

TEST_CASE("index sets must be nonempty proper subsets in range") {
    CHECK_THROWS_AS(IndexSet{}.validate(5), ContractViolation);
    CHECK_THROWS_AS(IndexSet({0, 1, 2, 3, 4}).validate(5), ContractViolation);
    CHECK_THROWS_AS(IndexSet({-1}).validate(5), ContractViolation);
    CHECK_THROWS_AS(IndexSet({5}).validate(5), ContractViolation);
    IndexSet ok{2, 3};
    ok.validate(5);
    CHECK(ok.contains(2));
    CHECK_FALSE(ok.contains(4));
}

TEST_CASE("bending lengths at the transition point are j, r3+r4, r5-r4") {
    Configuration P = transition_P();
    CHECK(ell(P, IndexSet{0, 1}) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(ell(P, IndexSet{2, 3}) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(ell(P, IndexSet{3, 4}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ell_sq(P, IndexSet{2, 3}) == doctest::Approx(36.0).epsilon(1e-14));
    CHECK(family_H(P, 0.3) ==
          doctest::Approx(0.3 * 36 + 0.7 * 1).epsilon(1e-14));
    CHECK(partial_sum(P, IndexSet{0, 1}).isApprox(Vec3(3, 0, 0), 1e-13));

    Configuration quad;
    quad.rho = {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(-1, 0, 0), Vec3(0, -1, 0)};
    CHECK_THROWS_AS(family_H(quad, 0.5), UnsupportedSize);
}

TEST_CASE("hamiltonian fields follow df = omega(X_f, .)") {
    Configuration c = sample_configuration(reference(), 31);
    IndexSet I{2, 3};
    const Vec3 mu = partial_sum(c, I);
    const double len = mu.norm();

    TangentVector Xsq = Observable::length_sq(I).hamiltonian_vector_field(c);
    TangentVector Xlen = Observable::length(I).hamiltonian_vector_field(c);
    for (int i = 0; i < 5; ++i) {
        if (I.contains(i)) {
            CHECK(Xsq[i].isApprox(Vec3(2 * mu.cross(c[i])), 1e-12));
            CHECK(Xlen[i].isApprox(Vec3(mu.cross(c[i]) / len), 1e-12));
        } else {
            CHECK(Xsq[i].norm() == 0.0);
            CHECK(Xlen[i].norm() == 0.0);
        }
    }

    // omega(X_f, Y) = dF(Y) against the analytic differential
    Rng rng(17);
    TangentVector w(5);
    for (int i = 0; i < 5; ++i) w[i] = rng.unit_vector();
    TangentVector y = project_to_tangent(c, w);
    Observable f = Observable::family(0.41);
    const double lhs = symplectic_form(c, f.hamiltonian_vector_field(c), y);
    const double rhs = f.differential(c, y);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("vanishing moments are reported, not divided by") {
    Configuration c = vanishing_pair();
    CHECK(ell(c, IndexSet{0, 1}) == 0.0);
    CHECK_THROWS_AS(Observable::length(IndexSet{0, 1}).hamiltonian_vector_field(c),
                    VanishingMoment);
    CHECK_THROWS_AS(bending_rotate(c, IndexSet{0, 1}, 0.5), VanishingMoment);
    // the squared length stays smooth
    TangentVector X = Observable::length_sq(IndexSet{0, 1}).hamiltonian_vector_field(c);
    CHECK(X.norm() == 0.0);
}

TEST_CASE("poisson brackets: antisymmetry, commutation, non-commutation") {
    Configuration c = sample_configuration(reference(), 33);
    const Observable j_sq = Observable::length_sq(IndexSet{0, 1});
    const Observable l34_sq = Observable::length_sq(IndexSet{2, 3});
    const double scale = std::pow(c.perimeter(), 3);

    const double b = poisson_bracket(c, j_sq, l34_sq);
    CHECK(poisson_bracket(c, l34_sq, j_sq) ==
          doctest::Approx(-b).epsilon(1e-12));
    CHECK(std::abs(b) <= 1e-10 * scale);  // disjoint index sets commute

    for (double t : {0.0, 0.5, 1.0}) {
        const double m =
            poisson_bracket(c, Observable::length(IndexSet{0, 1}), Observable::family(t));
        CHECK(std::abs(m) <= 1e-10 * c.perimeter() * c.perimeter());
    }

    // ell_34^2 and ell_45^2 share edge 4 and do not commute generically
    const double nb =
        poisson_bracket(c, l34_sq, Observable::length_sq(IndexSet{3, 4}));
    CHECK(std::abs(nb) > 1e-6);
}

TEST_CASE("bending flow: invariants, group law, and 2-pi periodicity") {
    Configuration c = sample_configuration(reference(), 35);
    IndexSet I{2, 3};
    Configuration d = bending_rotate(c, I, 0.7);

    for (int i = 0; i < 5; ++i)
        CHECK(d[i].norm() == doctest::Approx(c[i].norm()).epsilon(1e-12));
    CHECK(ell(d, I) == doctest::Approx(ell(c, I)).epsilon(1e-12));
    CHECK(ell(d, IndexSet{0, 1}) ==
          doctest::Approx(ell(c, IndexSet{0, 1})).epsilon(1e-12));
    CHECK(d.closure_defect().norm() <= 1e-12 * d.perimeter());
    // edge 4 moved, so ell_45 changes generically
    CHECK(std::abs(ell(d, IndexSet{3, 4}) - ell(c, IndexSet{3, 4})) > 1e-6);

    Configuration two_steps = bending_rotate(bending_rotate(c, I, 0.3), I, 0.4);
    for (int i = 0; i < 5; ++i) CHECK(two_steps[i].isApprox(d[i], 1e-12));

    Configuration full = bending_rotate(c, I, 2 * M_PI);
    for (int i = 0; i < 5; ++i)
        CHECK((full[i] - c[i]).norm() <= 1e-10);
}

} // TEST_SUITE
