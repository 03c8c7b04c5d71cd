#include <doctest.h>

#include <cmath>

#include "pentabend/geometry.hpp"
#include "pentabend/manifold.hpp"

using namespace pentabend;

namespace {
SideLengths reference() { return SideLengths({3, 1, 4, 2, 3}); }
}

TEST_SUITE("geometry") {

TEST_CASE("side lengths must be positive and at least four") {
    CHECK_THROWS_AS(SideLengths({1.0, 2.0, 3.0}), InvalidLengths);
    CHECK_THROWS_AS(SideLengths({1.0, -2.0, 3.0, 1.0, 1.0}), InvalidLengths);
    CHECK_THROWS_AS(SideLengths({1.0, 0.0, 3.0, 1.0, 1.0}), InvalidLengths);
    CHECK(reference().total() == 13.0);
    CHECK(reference().size() == 5);
    CHECK(reference()[2] == 4.0);
}

TEST_CASE("length flags: genericity, nonemptiness, theorem hypotheses") {
    LengthFlags ref = validate_side_lengths(reference());
    CHECK(ref.generic);  // total 13 is odd, so signed sums cannot vanish
    CHECK(ref.nonempty);
    REQUIRE(ref.theorem_ok.has_value());
    CHECK(*ref.theorem_ok);

    // (+,-,+,-) cancels exactly
    LengthFlags square = validate_side_lengths(SideLengths({1, 1, 1, 1}));
    CHECK_FALSE(square.generic);
    CHECK(square.nonempty);
    CHECK_FALSE(square.theorem_ok.has_value());  // only pentagons carry the flag

    // five odd entries: every signed sum is odd, hence generic; but r4 < r5
    // fails, so the theorem hypotheses do not hold
    LengthFlags ones = validate_side_lengths(SideLengths({1, 1, 1, 1, 1}));
    CHECK(ones.generic);
    CHECK(ones.nonempty);
    REQUIRE(ones.theorem_ok.has_value());
    CHECK_FALSE(*ones.theorem_ok);

    LengthFlags far = validate_side_lengths(SideLengths({10, 1, 1, 1, 1}));
    CHECK_FALSE(far.nonempty);

    CHECK_THROWS_AS(
        validate_side_lengths(SideLengths(std::vector<double>(13, 1.0))),
        UnsupportedSize);
}

TEST_CASE("theorem hypotheses derive j and the ell_12 range") {
    TheoremHypotheses h = TheoremHypotheses::require(reference());
    CHECK(h.j == 3.0);
    CHECK(h.J_min == 2.0);
    CHECK(h.J_max == 4.0);
    CHECK(TheoremHypotheses::check(reference()));
    CHECK_FALSE(TheoremHypotheses::check(SideLengths({1, 1, 1, 1, 1})));
    // r4 < r5 violated
    CHECK_FALSE(TheoremHypotheses::check(SideLengths({3, 1, 4, 3.5, 3})));
    CHECK_THROWS_AS(TheoremHypotheses::require(SideLengths({1, 1, 1, 1, 1})),
                    HypothesisViolation);
}

TEST_CASE("transition point has the frozen planar coordinates") {
    TheoremHypotheses h = TheoremHypotheses::require(reference());
    Configuration p = build_transition_point(h);
    REQUIRE(p.size() == 5);
    const double s35 = std::sqrt(35.0) / 6.0;
    CHECK(p[0].isApprox(Vec3(17.0 / 6.0, s35, 0), 1e-14));
    CHECK(p[1].isApprox(Vec3(1.0 / 6.0, -s35, 0), 1e-14));
    CHECK(p[2] == Vec3(-4, 0, 0));
    CHECK(p[3] == Vec3(-2, 0, 0));
    CHECK(p[4] == Vec3(3, 0, 0));
    CHECK(is_valid_configuration(p, reference()));
    CHECK((p[0] + p[1]).norm() == doctest::Approx(h.j).epsilon(1e-14));
}

TEST_CASE("sampler is deterministic, valid, and seed-sensitive") {
    SideLengths r = reference();
    Configuration a = sample_configuration(r, 42);
    Configuration b = sample_configuration(r, 42);
    Configuration c = sample_configuration(r, 43);
    REQUIRE(a.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(a[i] == b[i]);

    bool differs = false;
    for (int i = 0; i < 5; ++i) differs = differs || !a[i].isApprox(c[i], 1e-12);
    CHECK(differs);

    CHECK(is_valid_configuration(a, r));
    CHECK(a.closure_defect().norm() <= 1e-10 * a.perimeter());
    for (int i = 0; i < 5; ++i)
        CHECK(a[i].norm() == doctest::Approx(r[i]).epsilon(1e-12));

    CHECK_THROWS_AS(sample_configuration(SideLengths({10, 1, 1, 1, 1}), 1),
                    EmptySpace);
}

TEST_CASE("gauge fixing is idempotent and constant on rotation orbits") {
    Configuration c = sample_configuration(reference(), 7);
    Configuration g = gauge_fix(c);
    CHECK(g[0].isApprox(Vec3(3, 0, 0), 1e-12));
    CHECK(std::abs(g[1].z()) <= 1e-10);
    CHECK(g[1].y() >= -1e-12);

    Eigen::AngleAxisd rot(0.83, Vec3(1, 2, -1).normalized());
    Configuration rc = c;
    for (int i = 0; i < 5; ++i) rc[i] = rot * c[i];
    Configuration g2 = gauge_fix(rc);
    for (int i = 0; i < 5; ++i) CHECK(g2[i].isApprox(g[i], 1e-9));

    Configuration g3 = gauge_fix(g);
    for (int i = 0; i < 5; ++i) CHECK(g3[i].isApprox(g[i], 1e-12));
}

TEST_CASE("vertical frame fields are tangent and closed") {
    Configuration c = sample_configuration(reference(), 11);
    auto V = vertical_frame(c);
    const double scale = c.perimeter();
    for (const TangentVector& v : V) {
        Vec3 sum = Vec3::Zero();
        for (int i = 0; i < 5; ++i) {
            CHECK(std::abs(v[i].dot(c[i])) <= 1e-12 * scale * scale);
            sum += v[i];
        }
        CHECK(sum.norm() <= 1e-12 * scale);
    }
}

TEST_CASE("symplectic form is antisymmetric and bilinear") {
    Configuration c = sample_configuration(reference(), 13);
    Rng rng(5);
    auto random_tangent = [&] {
        TangentVector w(5);
        for (int i = 0; i < 5; ++i) w[i] = rng.unit_vector();
        return project_to_tangent(c, w);
    };
    TangentVector u = random_tangent(), w = random_tangent(), x = random_tangent();
    const double uw = symplectic_form(c, u, w);
    CHECK(symplectic_form(c, w, u) == doctest::Approx(-uw).epsilon(1e-12));
    CHECK(std::abs(symplectic_form(c, u, u)) <= 1e-12);
    const double lhs = symplectic_form(c, 2.5 * u + x, w);
    const double rhs = 2.5 * uw + symplectic_form(c, x, w);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

} // TEST_SUITE
