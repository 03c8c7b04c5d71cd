#include "pentabend/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "pentabend/hamiltonians.hpp"
#include "pentabend/kernels.hpp"
#include "pentabend/manifold.hpp"
#include "pentabend/polygon2d.hpp"
#include "pentabend/reduction.hpp"
#include "pentabend/singularities.hpp"
#include "pentabend/transition.hpp"

namespace pentabend {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> tols = {
        {"transition_rel", 1e-12}, {"transition_ms", 1.0},
        {"matrices_abs", 1e-5},    {"matrices_ms", 10000.0},
        {"chi_rel", 1e-7},         {"chi_ms", 30000.0},
        {"factor_rel", 1e-9},      {"sweep_window", 1e-3},
        {"poisson_rel", 1e-9},     {"field_abs", 1e-7},
        {"field_step", 1e-5},      {"periodicity_abs", 1e-10},
        {"two_sphere_abs", 1e-10}, {"rank1_eig_rel", 1e-4},
        {"moment_slack", 1e-9},    {"hull_dist", 0.02},
        {"local_rel", 1e-12},
    };
    return tols;
}

/* Collects pass/fail plus named residuals for one suite. */
struct Check {
    SuiteResult& res;

    void require(bool ok, const std::string& why) {
        if (!ok) {
            res.pass = false;
            if (res.message.empty()) res.message = why;
        }
    }
    void metric_max(const std::string& name, double v) {
        auto [it, fresh] = res.metrics.emplace(name, v);
        if (!fresh) it->second = std::max(it->second, v);
    }
    void metric(const std::string& name, double v) { res.metrics[name] = v; }
};

double rel_err(double got, double want) {
    return std::abs(got - want) /
           std::max({std::abs(want), std::abs(got), 1e-300});
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        xs[std::size_t(i)] = a + (b - a) * double(i) / double(n - 1);
    return xs;
}

bool is_reference(const SideLengths& r) {
    static const double want[5] = {3, 1, 4, 2, 3};
    if (r.size() != 5) return false;
    for (int i = 0; i < 5; ++i)
        if (r[i] != want[i]) return false;
    return true;
}

bool skip_unless_hypotheses(const VerifyOptions& opt, SuiteResult& res) {
    if (opt.r.size() == 5 && TheoremHypotheses::check(opt.r)) return false;
    res.skipped = true;
    res.pass = true;
    res.message = "side lengths do not satisfy the transition hypotheses";
    return true;
}

bool skip_unless_pentagon(const VerifyOptions& opt, SuiteResult& res) {
    if (opt.r.size() == 5 && validate_side_lengths(opt.r).nonempty) return false;
    res.skipped = true;
    res.pass = true;
    res.message = "side lengths are not a nonempty pentagon";
    return true;
}

/* Reference + `extra` random hypothesis tuples (deterministic in seed). */
std::vector<SideLengths> tuple_pool(const VerifyOptions& opt, int extra,
                                    std::uint64_t salt) {
    std::vector<SideLengths> pool{opt.r};
    Rng rng(opt.seed ^ salt);
    for (int i = 0; i < extra; ++i) {
        Rng stream = rng.fork(std::uint64_t(i));
        pool.push_back(sample_hypothesis_tuple(stream));
    }
    return pool;
}

/* ------------------------- suite 1: transition times --------------------- */

SuiteResult suite_transition_times(const VerifyOptions& opt) {
    SuiteResult res;
    res.name = "transition-times";
    res.pass = true;
    if (skip_unless_hypotheses(opt, res)) return res;
    Check chk{res};
    const double tol = opt.tolerance("transition_rel");

    TheoremHypotheses h = TheoremHypotheses::require(opt.r);

    // time the closed form alone (best of 5 to suppress scheduler noise)
    double best_ms = 1e9;
    std::pair<double, double> times{};
    for (int rep = 0; rep < 5; ++rep) {
        auto t0 = Clock::now();
        times = transition_times(h);
        best_ms = std::min(best_ms, ms_since(t0));
    }
    chk.metric("closed_form_ms", best_ms);
    chk.require(best_ms < opt.tolerance("transition_ms"),
                "closed-form transition times slower than the budget");

    auto [tm, tp] = times;
    QuadraticData q = quadratic_data(h);
    chk.require(0 < tm && tm < tp && tp < 1, "times not ordered inside (0,1)");

    const double a = q.f_coeffs[0], b = q.f_coeffs[1], c = q.f_coeffs[2];
    const double scale_f = std::max({std::abs(a), std::abs(b), std::abs(c)});
    for (double t : {tm, tp}) {
        double root_res = std::abs((a * t + b) * t + c) / scale_f;
        chk.metric_max("root_residual", root_res);
        chk.require(root_res <= tol, "t+- do not solve a t^2 + b t + c");

        auto [A, B] = chi_coefficients(h, t);
        double disc_res = std::abs(A * A - 4 * B) / std::max({A * A, 4 * B, 1.0});
        chk.metric_max("disc_residual", disc_res);
        chk.require(disc_res <= 1e-9, "A^2 - 4B does not vanish at t+-");
    }

    double delta_identity = 16.0 * h.r[2] * h.r[3] * h.r[4] * h.j;
    chk.metric("delta_rel_err", rel_err(q.delta, delta_identity));
    chk.require(rel_err(q.delta, delta_identity) <= tol,
                "delta != 16 r3 r4 r5 j");

    if (is_reference(opt.r)) {
        const double s = std::sqrt(2.0);
        chk.metric("ref_tminus_rel", rel_err(tm, (19 - 12 * s) / 73));
        chk.metric("ref_tplus_rel", rel_err(tp, (19 + 12 * s) / 73));
        chk.require(rel_err(tm, (19 - 12 * s) / 73) <= tol, "t- mismatch");
        chk.require(rel_err(tp, (19 + 12 * s) / 73) <= tol, "t+ mismatch");
        chk.require(a == 73.0 && b == -38.0 && c == 1.0 && q.delta == 1152.0,
                    "(a,b,c,delta) != (73,-38,1,1152)");
    }
    return res;
}

/* ------------------------- suite 2: matrix reproduction ------------------ */

SuiteResult suite_matrices(const VerifyOptions& opt) {
    SuiteResult res;
    res.name = "matrix-reproduction";
    res.pass = true;
    if (skip_unless_hypotheses(opt, res)) return res;
    Check chk{res};
    const double tol = opt.tolerance("matrices_abs");

    auto t0 = Clock::now();
    const auto pool = tuple_pool(opt, 25, 0x11d2ULL);
    for (const SideLengths& r : pool) {
        TheoremHypotheses h = TheoremHypotheses::require(r);
        PMatrices ma = analytic_matrices(h);
        PMatrices mn = numeric_matrices(h);
        chk.metric_max("err_hess_h0", (ma.hess_h0 - mn.hess_h0).cwiseAbs().maxCoeff());
        chk.metric_max("err_hess_h1", (ma.hess_h1 - mn.hess_h1).cwiseAbs().maxCoeff());
        chk.metric_max("err_hess_j", (ma.hess_j - mn.hess_j).cwiseAbs().maxCoeff());
        chk.metric_max("err_omega_inv",
                       (ma.omega_inv - mn.omega_inv).cwiseAbs().maxCoeff());
    }
    double worst = std::max({res.metrics["err_hess_h0"], res.metrics["err_hess_h1"],
                             res.metrics["err_hess_j"], res.metrics["err_omega_inv"]});
    chk.metric("max_abs_err", worst);
    chk.require(worst <= tol, "analytic vs numeric matrices disagree");
    res.ms = ms_since(t0);
    chk.require(res.ms <= opt.tolerance("matrices_ms"), "matrix suite over budget");
    return res;
}

/* --------------------- suite 3: chi coefficient reproduction ------------- */

SuiteResult suite_chi(const VerifyOptions& opt) {
    SuiteResult res;
    res.name = "chi-coefficients";
    res.pass = true;
    if (skip_unless_hypotheses(opt, res)) return res;
    Check chk{res};
    const double tol = opt.tolerance("chi_rel");

    auto t0 = Clock::now();
    const auto pool = tuple_pool(opt, 25, 0x22c3ULL);
    const auto ts = linspace(0.0, 1.0, 21);
    for (const SideLengths& r : pool) {
        TheoremHypotheses h = TheoremHypotheses::require(r);
        PMatrices m = analytic_matrices(h);
        for (double t : ts) {
            auto [A, B] = chi_coefficients(h, t);
            ChiFromMatrices got = chi_from_matrices(m, t);
            chk.metric_max("rel_err_A", rel_err(got.A, A));
            chk.metric_max("rel_err_B", rel_err(got.B, B));
            chk.metric_max("odd_residual", got.odd_residual);
            chk.require(rel_err(got.A, A) <= tol && rel_err(got.B, B) <= tol,
                        "char-poly coefficients disagree with the closed form");
            chk.require(got.odd_residual <= tol,
                        "odd characteristic coefficients do not vanish");
        }
    }
    // informational: the same extraction on the finite-difference matrices
    TheoremHypotheses h = TheoremHypotheses::require(opt.r);
    PMatrices mn = numeric_matrices(h);
    auto [A_mid, B_mid] = chi_coefficients(h, 0.5);
    ChiFromMatrices fd = chi_from_matrices(mn, 0.5);
    chk.metric("fd_channel_rel_A", rel_err(fd.A, A_mid));
    chk.metric("fd_channel_rel_B", rel_err(fd.B, B_mid));
    res.ms = ms_since(t0);
    chk.require(res.ms <= opt.tolerance("chi_ms"), "chi suite over budget");
    return res;
}

/* ------------------------ suite 4: factorization identity ---------------- */

SuiteResult suite_factorization(const VerifyOptions& opt) {
    SuiteResult res;
    res.name = "factorization-identity";
    res.pass = true;
    if (skip_unless_hypotheses(opt, res)) return res;
    Check chk{res};
    const double tol = opt.tolerance("factor_rel");

    const auto pool = tuple_pool(opt, 25, 0x33b4ULL);
    for (const SideLengths& r : pool) {
        TheoremHypotheses h = TheoremHypotheses::require(r);
        FactoredF f = factored_f(h, 101);
        chk.metric_max("max_rel_identity_err", f.max_rel_identity_err);
        chk.require(f.max_rel_identity_err <= tol,
                    "A^2-4B != (linear)^2 (a t^2 + b t + c) on the grid");
        double delta_identity = 16.0 * h.r[2] * h.r[3] * h.r[4] * h.j;
        chk.metric_max("delta_rel_err", rel_err(f.delta, delta_identity));
        chk.require(rel_err(f.delta, delta_identity) <= 1e-12,
                    "discriminant identity fails");
    }
    return res;
}

/* ---------------------------- suite 5: EE-FF-EE sweep -------------------- */

SuiteResult suite_sweep(const VerifyOptions& opt) {
    SuiteResult res;
    res.name = "ee-ff-ee-sweep";
    res.pass = true;
    if (skip_unless_hypotheses(opt, res)) return res;
    Check chk{res};
    const double window = opt.tolerance("sweep_window");

    TheoremHypotheses h = TheoremHypotheses::require(opt.r);
    auto [tm, tp] = transition_times(h);
    std::vector<SweepRow> rows = sweep(h, 101);

    // formula channel: EE / FF / EE with exactly two changes
    int changes = 0;
    SingularityType prev = SingularityType::Regular;
    bool first = true;
    for (const SweepRow& row : rows) {
        if (row.type == SingularityType::Degenerate) continue;  // window rows
        chk.require(row.type == SingularityType::EllipticElliptic ||
                        row.type == SingularityType::FocusFocus,
                    "formula channel produced a type outside {EE, FF}");
        bool inside = tm < row.t && row.t < tp;
        chk.require(row.type == (inside ? SingularityType::FocusFocus
                                        : SingularityType::EllipticElliptic),
                    "formula channel disagrees with the (t-, t+) interval");
        if (!first && row.type != prev) ++changes;
        prev = row.type;
        first = false;
    }
    chk.metric("formula_changes", changes);
    chk.require(changes == 2, "pattern is not EE -> FF -> EE");

    // eigen channel agrees outside the +-window around t+-
    int disagreements = 0;
    double worst_dist = 0;
    for (const SweepRow& row : rows) {
        if (!row.eigen_type) continue;
        double dist = std::min(std::abs(row.t - tm), std::abs(row.t - tp));
        if (*row.eigen_type != row.type) {
            ++disagreements;
            worst_dist = std::max(worst_dist, dist);
            chk.require(dist < window,
                        "channels disagree away from the transition times");
        } else if (dist > window) {
            chk.require(semitoric_admissible(*row.eigen_type),
                        "eigen channel produced an inadmissible type");
        }
    }
    chk.metric("channel_disagreements", disagreements);
    chk.metric("worst_disagreement_distance", worst_dist);
    return res;
}

/* -------------------------- suite 6: Poisson brackets -------------------- */

SuiteResult suite_poisson(const VerifyOptions& opt) {
    SuiteResult res;
    res.name = "poisson-commutation";
    res.pass = true;
    if (skip_unless_pentagon(opt, res)) return res;
    Check chk{res};
    const double tol = opt.tolerance("poisson_rel");

    const Observable j_sq = Observable::length_sq(IndexSet{0, 1});
    const Observable l34_sq = Observable::length_sq(IndexSet{2, 3});
    const Observable l45_sq = Observable::length_sq(IndexSet{3, 4});
    const Observable j_len = Observable::length(IndexSet{0, 1});
    const double ts[5] = {0.0, 0.25, 0.5, 0.75, 1.0};

    const double P = opt.r.total();
    const double scale_sq = P * P * P;  // {ell^2, ell^2} carries length^3
    const double scale_mix = P * P;     // {ell, H} carries length^2

    Rng master(opt.seed ^ 0x77aaULL);
    int skipped_vanishing = 0;
    for (int i = 0; i < 1000; ++i) {
        Rng stream = master.fork(std::uint64_t(i));
        Configuration c = sample_configuration(opt.r, stream);
        double b1 = poisson_bracket(c, j_sq, l34_sq);
        double b2 = poisson_bracket(c, j_sq, l45_sq);
        chk.metric_max("bracket_sq_rel", std::abs(b1) / scale_sq);
        chk.metric_max("bracket_sq_rel", std::abs(b2) / scale_sq);
        for (double t : ts) {
            try {
                double b3 = poisson_bracket(c, j_len, Observable::family(t));
                chk.metric_max("bracket_mix_rel", std::abs(b3) / scale_mix);
            } catch (const VanishingMoment&) {
                ++skipped_vanishing;  // ell_12 = 0 has no length field
            }
        }
    }
    chk.metric("vanishing_levels_skipped", skipped_vanishing);
    chk.require(res.metrics["bracket_sq_rel"] <= tol,
                "{ell12^2, ell^2} exceeds the commutation tolerance");
    chk.require(res.metrics["bracket_mix_rel"] <= tol,
                "{ell12, H_t} exceeds the commutation tolerance");
    return res;
}

/* ------------------------ suite 7: field identity ------------------------ */

SuiteResult suite_field_identity(const VerifyOptions& opt) {
    SuiteResult res;
    res.name = "field-identity";
    res.pass = true;
    if (skip_unless_pentagon(opt, res)) return res;
    Check chk{res};
    const double tol = opt.tolerance("field_abs");

    FdOptions fd;
    fd.step_rel = opt.tolerance("field_step");
    fd.richardson = false;

    Rng master(opt.seed ^ 0x55cdULL);
    int done = 0;
    for (int i = 0; done < 200 && i < 1000; ++i) {
        Rng stream = master.fork(std::uint64_t(i));
        Configuration c = sample_configuration(opt.r, stream);

        // random unit tangent direction
        TangentVector w(c.size());
        for (int k = 0; k < c.size(); ++k) w[k] = stream.unit_vector();
        TangentVector y = project_to_tangent(c, w);
        if (y.norm() < 1e-8) continue;
        y *= 1.0 / y.norm();

        // random observable from the representative pool
        Observable f = Observable::length_sq(IndexSet{0, 1});
        switch (stream.next_u64() % 6) {
            case 0: f = Observable::length_sq(IndexSet{0, 1}); break;
            case 1: f = Observable::length_sq(IndexSet{2, 3}); break;
            case 2: f = Observable::length_sq(IndexSet{1, 2, 3}); break;
            case 3: f = Observable::length(IndexSet{0, 1}); break;
            case 4: f = Observable::length(IndexSet{2, 3, 4}); break;
            case 5: f = Observable::family(stream.uniform01()); break;
        }
        double lhs, rhs;
        try {
            lhs = symplectic_form(c, f.hamiltonian_vector_field(c), y);
            rhs = fd_directional([&f](const Configuration& cc) { return f(cc); },
                                 c, y, fd);
        } catch (const VanishingMoment&) {
            continue;  // redraw when ell_I ~ 0 makes the length field singular
        }
        chk.metric_max("max_abs_err", std::abs(lhs - rhs));
        ++done;
    }
    chk.metric("triples", done);
    chk.require(done == 200, "could not assemble 200 valid triples");
    chk.require(res.metrics["max_abs_err"] <= tol,
                "omega(X_f, Y) != df(Y) beyond tolerance");
    return res;
}

/* ----------------------- suite 8: bending periodicity -------------------- */

SuiteResult suite_periodicity(const VerifyOptions& opt) {
    SuiteResult res;
    res.name = "bending-periodicity";
    res.pass = true;
    if (skip_unless_pentagon(opt, res)) return res;
    Check chk{res};
    const double tol = opt.tolerance("periodicity_abs");
    const double two_pi = 2.0 * std::acos(-1.0);

    Rng master(opt.seed ^ 0x88ffULL);
    int done = 0;
    for (int i = 0; done < 200 && i < 2000; ++i) {
        Rng stream = master.fork(std::uint64_t(i));
        Configuration c = sample_configuration(opt.r, stream);
        const int n = c.size();
        // random nonempty proper subset
        std::uint64_t mask = 1 + stream.next_u64() % ((1ULL << n) - 2);
        std::vector<int> idx;
        for (int k = 0; k < n; ++k)
            if (mask & (1ULL << k)) idx.push_back(k);
        IndexSet I(idx);
        if (ell(c, I) < 1e-6 * c.perimeter()) continue;

        Configuration back = bending_rotate(c, I, two_pi);
        double err = 0;
        for (int k = 0; k < n; ++k)
            err = std::max(err, (back[k] - c[k]).cwiseAbs().maxCoeff());
        chk.metric_max("max_component_err", err);
        ++done;
    }
    chk.metric("cases", done);
    chk.require(done == 200, "could not assemble 200 bending cases");
    chk.require(res.metrics["max_component_err"] <= tol,
                "2 pi bending does not return the configuration");
    return res;
}

/* ----------------------- suite 9: two-sphere reduction ------------------- */

SuiteResult suite_two_sphere(const VerifyOptions& opt) {
    SuiteResult res;
    res.name = "two-sphere-reduction";
    res.pass = true;
    Check chk{res};
    const double tol = opt.tolerance("two_sphere_abs");

    Rng master(opt.seed ^ 0x99abULL);
    int upper = 0, lower = 0;
    for (int i = 0; i < 20; ++i) {
        Rng stream = master.fork(std::uint64_t(i));
        double r1 = stream.uniform(0.5, 3.0);
        double r2 = stream.uniform(0.5, 3.0);
        if (std::abs(r1 - r2) < 0.05) r2 += 0.1;
        double lo = std::abs(r1 - r2), hi = r1 + r2;
        double c;
        if (i % 5 == 3) {
            c = hi;
            ++upper;
        } else if (i % 5 == 4) {
            c = lo;
            ++lower;
        } else {
            c = stream.uniform(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo));
        }
        TwoSphereReport rep = two_sphere_reduction_check(
            r1, r2, c, 40, opt.seed ^ (0xabcd00ULL + std::uint64_t(i)));
        chk.metric_max("max_discrepancy", rep.max_discrepancy);
        chk.require(rep.max_discrepancy <= tol,
                    "pullback form disagrees with the sphere form");
        if (i % 5 == 3) chk.require(rep.boundary && rep.branch == +1, "upper branch not taken");
        if (i % 5 == 4) chk.require(rep.boundary && rep.branch == -1, "lower branch not taken");
    }
    chk.metric("upper_boundary_cases", upper);
    chk.metric("lower_boundary_cases", lower);
    chk.require(upper >= 1 && lower >= 1, "boundary levels not exercised");
    return res;
}

/* --------------------- suite 10: rank-1 non-degeneracy ------------------- */

SuiteResult suite_rank1(const VerifyOptions& opt) {
    SuiteResult res;
    res.name = "rank1-nondegeneracy";
    res.pass = true;
    if (skip_unless_hypotheses(opt, res)) return res;
    Check chk{res};
    const double tol = opt.tolerance("rank1_eig_rel");

    TheoremHypotheses h = TheoremHypotheses::require(opt.r);
    const double span = h.J_max - h.J_min;
    Rng master(opt.seed ^ 0xaa11ULL);

    int accepted = 0;
    double min_det = std::numeric_limits<double>::infinity();
    for (int draw = 0; accepted < 20 && draw < 400; ++draw) {
        Rng stream = master.fork(std::uint64_t(draw));
        double c = stream.uniform(h.J_min + 0.04 * span, h.J_max - 0.04 * span);
        if (std::abs(c - h.j) < 0.05 * span) continue;  // regular levels only
        double t = stream.uniform(0.1, 0.9);

        std::vector<StarSolution> stars =
            solve_star(c, h.r[2], h.r[3], h.r[4], t);
        for (const StarSolution& s : stars) {
            if (accepted >= 20) break;
            ReducedPoint q;
            q.c = c;
            q.quad.rho = {Vec3(c, 0, 0), Vec3(s.a3, s.b3, 0),
                          Vec3(s.a4, s.b4, 0), Vec3(s.a5, s.b5, 0)};
            ReducedHessian rh = reduced_hessian_rank1(q, t, s);
            Eigen::Matrix2d fd = fd_reduced_hessian(q, t, rh.basis);

            double det_an = rh.H.determinant();
            min_det = std::min(min_det, det_an);
            chk.require(det_an > 0, "reduced Hessian determinant not positive");
            chk.require(fd.determinant() > 0,
                        "FD reduced Hessian determinant not positive");

            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es_an(rh.H), es_fd(fd);
            for (int k = 0; k < 2; ++k) {
                double e = rel_err(es_fd.eigenvalues()[k], es_an.eigenvalues()[k]);
                chk.metric_max("eig_rel_err", e);
                chk.require(e <= tol, "analytic vs FD eigenvalues disagree");
            }
            chk.metric_max("star_residual", s.residual());
            ++accepted;
        }
    }
    chk.metric("solutions", accepted);
    chk.metric("min_det", min_det);
    chk.require(accepted == 20, "could not locate 20 star solutions");
    return res;
}

/* ------------------------- suite 11: momentum image ---------------------- */

SuiteResult suite_moment_image(const VerifyOptions& opt) {
    SuiteResult res;
    res.name = "moment-image";
    res.pass = true;
    if (skip_unless_hypotheses(opt, res)) return res;
    Check chk{res};
    const double slack = opt.tolerance("moment_slack");
    const double hull_tol = opt.tolerance("hull_dist");

    TheoremHypotheses h = TheoremHypotheses::require(opt.r);
    PredictedVertices pv = predicted_vertices(h);

    if (is_reference(opt.r)) {
        auto matches = [](const std::vector<Vec2>& got,
                          std::vector<Vec2> want) {
            if (got.size() != want.size()) return false;
            for (const Vec2& g : got) {
                auto it = std::find_if(want.begin(), want.end(), [&](const Vec2& w) {
                    return (g - w).cwiseAbs().maxCoeff() <= 1e-12;
                });
                if (it == want.end()) return false;
                want.erase(it);
            }
            return true;
        };
        chk.require(matches(pv.vertices_34,
                            {Vec2(2, 2), Vec2(4, 2), Vec2(4, 6), Vec2(3, 6), Vec2(2, 5)}),
                    "(ell12, ell34) vertices differ from the reference values");
        chk.require(matches(pv.vertices_45,
                            {Vec2(2, 5), Vec2(4, 5), Vec2(4, 1), Vec2(3, 1), Vec2(2, 2)}),
                    "(ell12, ell45) vertices differ from the reference values");
    }

    const std::size_t n = 100000;
    std::vector<MomentSample> samples =
        moment_image_samples(opt.r, 0.25, n, opt.seed);

    ConvexPolygon poly34 = ConvexPolygon::from_vertices(pv.vertices_34);
    ConvexPolygon poly45 = ConvexPolygon::from_vertices(pv.vertices_45);
    std::vector<Vec2> pts34, pts45;
    pts34.reserve(n);
    pts45.reserve(n);
    double out34 = 0, out45 = 0;
    for (const MomentSample& s : samples) {
        Vec2 p34(s.J, s.ell34), p45(s.J, s.ell45);
        out34 = std::max(out34, poly34.distance(p34));
        out45 = std::max(out45, poly45.distance(p45));
        pts34.push_back(p34);
        pts45.push_back(p45);
    }
    chk.metric("max_outside_34", out34);
    chk.metric("max_outside_45", out45);
    chk.require(out34 <= slack, "(J, ell34) samples escape the predicted polygon");
    chk.require(out45 <= slack, "(J, ell45) samples escape the predicted polygon");

    ConvexPolygon hull34 = ConvexPolygon::convex_hull(pts34);
    ConvexPolygon hull45 = ConvexPolygon::convex_hull(pts45);
    for (const Vec2& v : pv.vertices_34)
        chk.metric_max("vertex_dist_34", hull34.distance(v));
    for (const Vec2& v : pv.vertices_45)
        chk.metric_max("vertex_dist_45", hull45.distance(v));
    chk.require(res.metrics["vertex_dist_34"] <= hull_tol,
                "sample hull misses a predicted (ell12, ell34) vertex");
    chk.require(res.metrics["vertex_dist_45"] <= hull_tol,
                "sample hull misses a predicted (ell12, ell45) vertex");
    return res;
}

/* -------------------------- suite 12: local model ------------------------ */

SuiteResult suite_local_model(const VerifyOptions& opt) {
    SuiteResult res;
    res.name = "local-model";
    res.pass = true;
    Check chk{res};
    const double tol = opt.tolerance("local_rel");

    // (a) the three-way rule on a grid of >= 10^4 parameter points
    Rng rng(opt.seed ^ 0xbb22ULL);
    const auto grid = linspace(-2.0, 2.0, 21);
    long mismatches = 0, points = 0;
    auto expect_type = [tol](double mu1, double mu2, double mu3) {
        double s = std::abs(mu2 + mu3), m = std::abs(mu1);
        if (std::abs(s - m) <= tol * std::max({s, m, 0.0}))
            return SingularityType::Degenerate;
        return s < m ? SingularityType::FocusFocus
                     : SingularityType::EllipticElliptic;
    };
    auto check_one = [&](double mu1, double mu2, double mu3) {
        LocalModelParams p;
        p.mu1 = mu1;
        p.mu2 = mu2;
        p.mu3 = mu3;
        p.psi = rng.uniform(0, 6.28);          // irrelevant by construction
        p.eps = (points % 2 == 0) ? +1 : -1;   // irrelevant as well
        ++points;
        if (mu1 == 0.0 && mu2 + mu3 == 0.0) {
            try {
                (void)classify_local_model(p, tol);
                ++mismatches;  // should have thrown
            } catch (const NotIntegrable&) {
            }
            return;
        }
        if (classify_local_model(p, tol) != expect_type(mu1, mu2, mu3))
            ++mismatches;
    };
    for (double mu1 : grid)
        for (double mu2 : grid)
            for (double mu3 : grid) check_one(mu1, mu2, mu3);
    for (double mu2 : grid)  // exact boundary ties
        for (double mu3 : grid) {
            check_one(mu2 + mu3, mu2, mu3);
            check_one(-(mu2 + mu3), mu2, mu3);
        }
    chk.metric("grid_points", double(points));
    chk.metric("grid_mismatches", double(mismatches));
    chk.require(points >= 10000, "parameter grid smaller than 10^4");
    chk.require(mismatches == 0, "local-model rule violated on the grid");

    // (b) frozen transition times of the interpolated model
    auto [tm, tp] = local_transition_times(1, -1, -1, 1, 1);
    chk.metric("frozen_tminus_rel", rel_err(tm, 0.4));
    chk.metric("frozen_tplus_rel", rel_err(tp, 2.0 / 3.0));
    chk.require(rel_err(tm, 0.4) <= tol && rel_err(tp, 2.0 / 3.0) <= tol,
                "local transition times differ from (2/5, 2/3)");

    // (c) f(t+-) = 0 for random hypothesis-satisfying draws
    for (int i = 0; i < 100; ++i) {
        Rng stream = rng.fork(std::uint64_t(i));
        double M = -stream.uniform(0.5, 3.0);
        double mu2 = stream.uniform(-2.0, 2.0);
        double mu3 = M - mu2;
        double mu1 = (stream.next_u64() & 1 ? 1 : -1) *
                     stream.uniform(0.05, 0.95) * std::abs(M);
        double N = stream.uniform(0.2, 3.0);
        double nu2 = stream.uniform(-2.0, 2.0);
        double nu3 = N - nu2;

        auto [ta, tb] = local_transition_times(mu1, mu2, mu3, nu2, nu3);
        chk.require(0 < ta && ta < tb && tb < 1, "roots leave (0,1)");
        double sm = mu2 + mu3, sn = nu2 + nu3;
        double scale = std::max({std::abs(sm), sn, std::abs(mu1), 1.0});
        for (double t : {ta, tb}) {
            double f = (t * sm + (1 - t) * sn) * (t * sm + (1 - t) * sn) -
                       (t * mu1) * (t * mu1);
            chk.metric_max("f_root_residual", std::abs(f) / (scale * scale));
            chk.require(std::abs(f) / (scale * scale) <= tol,
                        "t+- do not solve the local model quadratic");
        }
    }
    return res;
}

}  // namespace

VerifyOptions::VerifyOptions() : r(reference_lengths()) {}

double VerifyOptions::tolerance(const std::string& name) const {
    if (auto it = tol.find(name); it != tol.end()) return it->second;
    const auto& defs = default_tolerances();
    if (auto it = defs.find(name); it != defs.end()) return it->second;
    throw ContractViolation("unknown tolerance: " + name);
}

SideLengths reference_lengths() { return SideLengths({3, 1, 4, 2, 3}); }

SideLengths sample_hypothesis_tuple(Rng& rng) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        double r5 = rng.uniform(0.8, 2.5);
        double r4 = r5 * rng.uniform(0.55, 0.95);
        double r3 = r5 * (1.0 + rng.uniform(0.05, 1.2));
        double j = r3 + r4 - r5;

        double low_d = std::abs(r3 - r4 - r5), high_d = j;
        if (high_d - low_d < 1e-3) continue;
        double md = 0.05 * (high_d - low_d);
        double D = rng.uniform(low_d + md, high_d - md);

        double high_s = r3 + (r5 - r4);  // lower endpoint of the S-window is j
        double ms = 0.05 * (high_s - j);
        double S = rng.uniform(j + ms, high_s - ms);

        SideLengths r({0.5 * (S + D), 0.5 * (S - D), r3, r4, r5});
        LengthFlags f = validate_side_lengths(r);
        if (f.generic && f.nonempty && f.theorem_ok.value_or(false)) return r;
    }
    throw SamplingFailed("sample_hypothesis_tuple: rejection budget exhausted");
}

const std::vector<std::string>& verification_suite_names() {
    static const std::vector<std::string> names = {
        "transition-times",  "matrix-reproduction", "chi-coefficients",
        "factorization-identity", "ee-ff-ee-sweep", "poisson-commutation",
        "field-identity",    "bending-periodicity", "two-sphere-reduction",
        "rank1-nondegeneracy", "moment-image",      "local-model",
    };
    return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opt) {
    using Runner = SuiteResult (*)(const VerifyOptions&);
    static const std::map<std::string, Runner> table = {
        {"transition-times", suite_transition_times},
        {"matrix-reproduction", suite_matrices},
        {"chi-coefficients", suite_chi},
        {"factorization-identity", suite_factorization},
        {"ee-ff-ee-sweep", suite_sweep},
        {"poisson-commutation", suite_poisson},
        {"field-identity", suite_field_identity},
        {"bending-periodicity", suite_periodicity},
        {"two-sphere-reduction", suite_two_sphere},
        {"rank1-nondegeneracy", suite_rank1},
        {"moment-image", suite_moment_image},
        {"local-model", suite_local_model},
    };
    auto it = table.find(name);
    if (it == table.end()) throw ContractViolation("unknown suite: " + name);

    auto t0 = Clock::now();
    SuiteResult res;
    try {
        res = it->second(opt);
    } catch (const std::exception& e) {
        res.name = name;
        res.pass = false;
        res.message = std::string("exception: ") + e.what();
    }
    if (res.ms == 0) res.ms = ms_since(t0);
    if (res.message.empty() && res.pass && !res.skipped)
        res.message = "all checks passed";
    return res;
}

std::vector<SuiteResult> run_all_suites(const VerifyOptions& opt) {
    std::vector<SuiteResult> out;
    for (const std::string& name : verification_suite_names())
        out.push_back(run_suite(name, opt));
    return out;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const SuiteResult& r) { return r.skipped || r.pass; });
}

Json suites_to_json(const std::vector<SuiteResult>& results) {
    Json doc = json_document();
    Json arr = Json::array();
    for (const SuiteResult& r : results) {
        Json s;
        s["name"] = r.name;
        s["pass"] = r.pass;
        s["skipped"] = r.skipped;
        s["ms"] = r.ms;
        s["message"] = r.message;
        s["metrics"] = Json::object();
        for (const auto& [k, v] : r.metrics) s["metrics"][k] = v;
        arr.push_back(std::move(s));
    }
    doc["suites"] = std::move(arr);
    doc["pass"] = all_passed(results);
    return doc;
}

}  // namespace pentabend
