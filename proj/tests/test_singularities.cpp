#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "pentabend/geometry.hpp"
#include "pentabend/reduction.hpp"
#include "pentabend/singularities.hpp"

using namespace pentabend;

namespace {
SideLengths reference() { return SideLengths({3, 1, 4, 2, 3}); }

Configuration transition_P() {
    return build_transition_point(TheoremHypotheses::require(reference()));
}

/* Embeds a reduced star solution into pentagon space: rho_1, rho_2 close the
 * (r1, r2) triangle over (c,0,0), the remaining edges are the star's. */
Configuration embed_star(const StarSolution& s, double r1, double r2) {
    const double x1 = (r1 * r1 - r2 * r2 + s.c * s.c) / (2 * s.c);
    const double y1 = std::sqrt(r1 * r1 - x1 * x1);
    Configuration c;
    c.rho = {Vec3(x1, y1, 0), Vec3(s.c - x1, -y1, 0), Vec3(s.a3, s.b3, 0),
             Vec3(s.a4, s.b4, 0), Vec3(s.a5, s.b5, 0)};
    return c;
}

/* Rank-0 point on the lower fixed surface J = J_min: the (2,2) vertex of the
 * (ell_12, ell_34) Delzant polygon for the reference lengths. Closure uses
 * the (2, 2, 3) triangle of mu_12, mu_34, rho_5. */
Configuration jmin_vertex() {
    const double ct = 3.0 / 4, st = std::sqrt(7.0) / 4;
    Configuration c;
    c.rho = {Vec3(3 * ct, 3 * st, 0), Vec3(-ct, -st, 0), Vec3(4 * ct, -4 * st, 0),
             Vec3(-2 * ct, 2 * st, 0), Vec3(-3, 0, 0)};
    return c;
}
}

TEST_SUITE("singularities") {

TEST_CASE("rank: 0 at the transition point, 1 at stars, 2 generically") {
    Configuration P = transition_P();
    for (double t : {0.0, 0.25, 0.5, 1.0}) CHECK(rank_at(P, t) == 0);

    Configuration generic = sample_configuration(reference(), 51);
    CHECK(rank_at(generic, 0.3) == 2);

    const double t = 0.35;
    auto stars = solve_star(2.6, 4, 2, 3, t);
    REQUIRE(!stars.empty());
    Configuration star_pentagon = embed_star(stars[0], 3, 1);
    CHECK(is_valid_configuration(star_pentagon, reference()));
    CHECK(rank_at(star_pentagon, t) == 1);
}

TEST_CASE("the rotation-axis witness detects critical points of H_t") {
    Configuration generic = sample_configuration(reference(), 53);
    CHECK_FALSE(detect_singular(generic, 0.3).has_value());

    // the transition point solves the axis equations with witness a = 0
    auto at_P = detect_singular(transition_P(), 0.4);
    REQUIRE(at_P.has_value());
    CHECK(std::abs(*at_P) <= 1e-8);

    // The witness criterion is about critical points of H_t alone.  An
    // embedded star is rank 1 for the pair (dH_t = a dJ != 0), so the
    // pentagon itself carries no witness -- the reduced quad does, and its
    // witness is the star multiplier.
    const double t = 0.35;
    auto stars = solve_star(2.6, 4, 2, 3, t);
    REQUIRE(!stars.empty());
    Configuration star_pentagon = embed_star(stars[0], 3, 1);
    CHECK_FALSE(detect_singular(star_pentagon, t).has_value());

    auto at_quad = detect_singular(reduce_point(star_pentagon).quad, t);
    REQUIRE(at_quad.has_value());
    CHECK(std::abs(*at_quad) > 1e-6);
    CHECK(*at_quad == doctest::Approx(stars[0].a).epsilon(1e-6));
}

TEST_CASE("star solutions satisfy the reduced equations and mirror symmetry") {
    const double c = 2.5, t = 0.3;
    auto stars = solve_star(c, 4, 2, 3, t);
    REQUIRE(!stars.empty());
    CHECK(stars.size() % 2 == 0);  // mirror pairs

    for (const StarSolution& s : stars) {
        CHECK(s.residual() <= 1e-8);
        CHECK(s.a3 * s.a3 + s.b3 * s.b3 == doctest::Approx(16.0).epsilon(1e-8));
        CHECK(s.a4 * s.a4 + s.b4 * s.b4 == doctest::Approx(4.0).epsilon(1e-8));
        CHECK(s.a5 * s.a5 + s.b5 * s.b5 == doctest::Approx(9.0).epsilon(1e-8));
        CHECK(std::abs(c + s.a3 + s.a4 + s.a5) <= 1e-8);
        CHECK(std::abs(s.b3 + s.b4 + s.b5) <= 1e-8);
        CHECK(s.a != 0.0);

        const bool has_mirror =
            std::any_of(stars.begin(), stars.end(), [&](const StarSolution& m) {
                return std::abs(m.b3 + s.b3) < 1e-5 && std::abs(m.b4 + s.b4) < 1e-5 &&
                       std::abs(m.b5 + s.b5) < 1e-5 && std::abs(m.a - s.a) < 1e-5;
            });
        CHECK(has_mirror);
    }
}

TEST_CASE("rank-0 classifier: EE-FF-EE along the family at P") {
    Configuration P = transition_P();
    // reference transition times: t- ~ 0.0278, t+ ~ 0.4927
    CHECK(classify_rank0(P, 0.0).type == SingularityType::EllipticElliptic);
    CHECK(classify_rank0(P, 0.25).type == SingularityType::FocusFocus);
    CHECK(classify_rank0(P, 0.6).type == SingularityType::EllipticElliptic);
    CHECK(classify_rank0(P, 1.0).type == SingularityType::EllipticElliptic);

    // frozen roots of the characteristic quadratic at t = 0: {-9, -4}
    Rank0Report rep = classify_rank0(P, 0.0);
    double lo = std::min(rep.roots[0].real(), rep.roots[1].real());
    double hi = std::max(rep.roots[0].real(), rep.roots[1].real());
    CHECK(std::abs(rep.roots[0].imag()) <= 1e-4);
    CHECK(std::abs(rep.roots[1].imag()) <= 1e-4);
    CHECK(lo == doctest::Approx(-9.0).epsilon(1e-3));
    CHECK(hi == doctest::Approx(-4.0).epsilon(1e-3));

    CHECK_THROWS_AS(classify_rank0(sample_configuration(reference(), 55), 0.3),
                    NotRankZero);
}

TEST_CASE("any decisive probe yields the same rank-0 type") {
    Configuration P = transition_P();
    using Probes = std::vector<std::array<double, 2>>;
    CHECK(classify_rank0(P, 0.25, Probes{{0, 1}}).type ==
          SingularityType::FocusFocus);
    CHECK(classify_rank0(P, 0.25, Probes{{1, 1}}).type ==
          SingularityType::FocusFocus);
    CHECK(classify_rank0(P, 0.6, Probes{{0, 1}}).type ==
          SingularityType::EllipticElliptic);
    CHECK(classify_rank0(P, 0.6, Probes{{1, 1}}).type ==
          SingularityType::EllipticElliptic);
}

TEST_CASE("rank-1 classification matches the reduced Hessian sign") {
    const double t = 0.35;
    auto stars = solve_star(2.6, 4, 2, 3, t);
    REQUIRE(!stars.empty());
    const StarSolution& s = stars[0];
    Configuration pent = embed_star(s, 3, 1);

    ReducedPoint q;
    q.c = s.c;
    q.quad.rho = {Vec3(s.c, 0, 0), Vec3(s.a3, s.b3, 0), Vec3(s.a4, s.b4, 0),
                  Vec3(s.a5, s.b5, 0)};
    const double det = reduced_hessian_rank1(q, t, s).H.determinant();

    SingularityType type = classify_rank1(pent, t);
    if (det > 0)
        CHECK(type == SingularityType::EllipticRegular);
    else
        CHECK(type == SingularityType::HyperbolicRegular);

    CHECK_THROWS_AS(classify_rank1(transition_P(), 0.3), NotRankOne);
}

TEST_CASE("fixed-surface rank-0 vertex is elliptic-elliptic") {
    Configuration v = jmin_vertex();
    CHECK(is_valid_configuration(v, reference()));
    CHECK((v[0] + v[1]).norm() == doctest::Approx(2.0).epsilon(1e-13));  // J_min
    CHECK((v[2] + v[3]).norm() == doctest::Approx(2.0).epsilon(1e-13));  // r3 - r4

    CHECK(rank_at(v, 1.0) == 0);
    CHECK(classify_fixed_surface_rank0(v, 1.0) ==
          SingularityType::EllipticElliptic);

    SingularityReport rep = classify_point(v, 1.0);
    CHECK(rep.rank == 0);
    CHECK(rep.type == SingularityType::EllipticElliptic);

    // the transition point sits at an interior level j = 3
    CHECK_THROWS_AS(classify_fixed_surface_rank0(transition_P(), 0.5),
                    NotOnFixedSurface);
}

TEST_CASE("classify_point dispatches by rank") {
    Configuration P = transition_P();
    SingularityReport ff = classify_point(P, 0.25);
    CHECK(ff.rank == 0);
    CHECK(ff.type == SingularityType::FocusFocus);

    SingularityReport ee = classify_point(P, 0.9);
    CHECK(ee.rank == 0);
    CHECK(ee.type == SingularityType::EllipticElliptic);

    SingularityReport reg = classify_point(sample_configuration(reference(), 57), 0.3);
    CHECK(reg.rank == 2);
    CHECK(reg.type == SingularityType::Regular);

    const double t = 0.35;
    auto stars = solve_star(2.6, 4, 2, 3, t);
    REQUIRE(!stars.empty());
    SingularityReport r1 = classify_point(embed_star(stars[0], 3, 1), t);
    CHECK(r1.rank == 1);
    CHECK((r1.type == SingularityType::EllipticRegular ||
           r1.type == SingularityType::HyperbolicRegular));
}

TEST_CASE("local model rule: three-way comparison on mu") {
    LocalModelParams p;
    p.mu1 = 1; p.mu2 = 0.2; p.mu3 = 0.3; p.psi = 0.7;
    CHECK(classify_local_model(p) == SingularityType::FocusFocus);

    p.mu2 = -1; p.mu3 = -1;
    CHECK(classify_local_model(p) == SingularityType::EllipticElliptic);

    p.mu1 = -1;  // sign of mu1 and psi are irrelevant
    CHECK(classify_local_model(p) == SingularityType::EllipticElliptic);

    p.mu1 = 2; p.mu2 = 1; p.mu3 = 1;  // exact tie
    CHECK(classify_local_model(p) == SingularityType::Degenerate);

    p.mu1 = 2; p.mu2 = 1; p.mu3 = 1 + 1e-15;  // tie within tolerance
    CHECK(classify_local_model(p) == SingularityType::Degenerate);

    p.mu1 = 0; p.mu2 = 0.5; p.mu3 = -0.5;
    CHECK_THROWS_AS(classify_local_model(p), NotIntegrable);
}

TEST_CASE("local transition times: frozen value and validity window") {
    auto [tm, tp] = local_transition_times(1, -1, -1, 1, 1);
    CHECK(tm == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(tp == doctest::Approx(2.0 / 3).epsilon(1e-14));

    // f(t) = (t(mu2+mu3) + (1-t)(nu2+nu3))^2 - (t mu1)^2 vanishes there
    auto f = [](double t) {
        const double s = t * (-2.0) + (1 - t) * 2.0;
        return s * s - t * t;
    };
    CHECK(std::abs(f(tm)) <= 1e-13);
    CHECK(std::abs(f(tp)) <= 1e-13);

    CHECK_THROWS_AS(local_transition_times(0, -1, -1, 1, 1), HypothesisViolation);
    CHECK_THROWS_AS(local_transition_times(1, 1, 1, 1, 1), HypothesisViolation);
    CHECK_THROWS_AS(local_transition_times(1, -1, -1, -1, -1), HypothesisViolation);
    CHECK_THROWS_AS(local_transition_times(3, -1, -1, 1, 1), HypothesisViolation);
}

} // TEST_SUITE
