#include "pentabend/transition.hpp"

#include <cmath>

#include "pentabend/hamiltonians.hpp"

namespace pentabend {

PMatrices analytic_matrices(const TheoremHypotheses& h) {
    const double r3 = h.r[2], r4 = h.r[3], r5 = h.r[4], j = h.j;
    PMatrices m;

    m.hess_h0 << 0, 0, 0, 0,
                 0, r5 / r4, 0, 0,
                 0, 0, r5 / r4, 1 - r5 / r4,
                 0, 0, 1 - r5 / r4, r5 / r4 + r4 / r5 - 2;

    m.hess_h1 << -r4 / r3, 1, 0, 0,
                 1, -r3 / r4, 0, 0,
                 0, 0, -2 - r4 / r3 - r3 / r4, 1 + r3 / r4,
                 0, 0, 1 + r3 / r4, -r3 / r4;

    m.hess_j << 1 - j / r3, 1, 0, 0,
                1, 1 - j / r4, 0, 0,
                0, 0, -j * (1 / r3 + 1 / r4), j / r4,
                0, 0, j / r4, j * (1 / r5 - 1 / r4);

    m.omega_inv << 0, 0, -r3, -r3,
                   0, 0, 0, -r4,
                   r3, 0, 0, 0,
                   r3, r4, 0, 0;
    return m;
}

std::vector<TangentVector> transition_chart_basis() {
    // W1 = dz1 - dz3, W2 = dz1 - dz4, W3 = dy3 - dy4, W4 = dy4 - dy5, with
    // 1-based edge labels; each difference preserves closure and, at the
    // planar point P, first-order sphere tangency, so the ambient vectors
    // need no chart corrections.
    const int n = 5;
    std::vector<TangentVector> w(4, TangentVector(n));
    w[0][0] = Vec3(0, 0, 1);
    w[0][2] = Vec3(0, 0, -1);
    w[1][0] = Vec3(0, 0, 1);
    w[1][3] = Vec3(0, 0, -1);
    w[2][2] = Vec3(0, 1, 0);
    w[2][3] = Vec3(0, -1, 0);
    w[3][3] = Vec3(0, 1, 0);
    w[3][4] = Vec3(0, -1, 0);
    return w;
}

PMatrices numeric_matrices(const TheoremHypotheses& h, const FdOptions& opt) {
    const Configuration P = build_transition_point(h);
    const auto basis = transition_chart_basis();

    const ScalarField half_h0 = [](const Configuration& c) {
        return 0.5 * ell_sq(c, IndexSet{3, 4});
    };
    const ScalarField half_h1 = [](const Configuration& c) {
        return 0.5 * ell_sq(c, IndexSet{2, 3});
    };
    const ScalarField half_j = [](const Configuration& c) {
        return 0.5 * ell_sq(c, IndexSet{0, 1});
    };

    PMatrices m;
    m.hess_h0 = fd_hessian(half_h0, P, basis, opt);
    m.hess_h1 = fd_hessian(half_h1, P, basis, opt);
    m.hess_j = fd_hessian(half_j, P, basis, opt);

    // Gram matrix of the symplectic form on the chart basis, in the
    // convention Omega_ik = omega(W_k, W_i); its inverse reproduces the
    // closed-form inverse Gram matrix.
    const Eigen::Matrix4d omega = form_matrix(P, basis).transpose();
    m.omega_inv = omega.inverse();
    return m;
}

std::pair<double, double> chi_coefficients(const TheoremHypotheses& h, double t) {
    const double r3 = h.r[2], r4 = h.r[3], r5 = h.r[4], j = h.j;
    const double A = ((r3 + r5) * (r3 + r5) + 2 * r4 * j) * t * t +
                     2 * (r3 * j + (r5 - r4) * (r4 - 2 * r5)) * t +
                     2 * r3 * (r3 + 3 * r4 - 3 * r5) + 5 * (r4 - r5) * (r4 - r5);
    const double g = -r4 * t * t + (r3 + r4 + r5) * t + r3 + 2 * r4 - 2 * r5;
    const double B = j * j * g * g;
    return {A, B};
}

ChiFromMatrices chi_from_matrices(const PMatrices& m, double t) {
    const Eigen::Matrix4d M = m.hess_j + t * m.hess_h1 + (1.0 - t) * m.hess_h0;
    const Eigen::Matrix4d A = m.omega_inv * M;

    // Faddeev-LeVerrier characteristic coefficients of A.
    Eigen::Matrix4d Mk = A;
    const double c1 = -Mk.trace();
    Mk = A * (Mk + c1 * Eigen::Matrix4d::Identity());
    const double c2 = -Mk.trace() / 2;
    Mk = A * (Mk + c2 * Eigen::Matrix4d::Identity());
    const double c3 = -Mk.trace() / 3;
    Mk = A * (Mk + c3 * Eigen::Matrix4d::Identity());
    const double c4 = -Mk.trace() / 4;

    ChiFromMatrices out;
    out.A = c2;
    out.B = c4;
    const double s = std::max(A.norm(), 1e-300);
    out.odd_residual = std::max(std::abs(c1) / s, std::abs(c3) / (s * s * s));
    return out;
}

FactoredF factored_f(const TheoremHypotheses& h, int grid_points) {
    const double r3 = h.r[2], r4 = h.r[3], r5 = h.r[4], j = h.j;
    FactoredF f;
    f.a = (r3 + r5) * (r3 + r5) + 4 * r4 * j;
    f.b = -2 * (r3 * r4 + r3 * r5 + 2 * r4 * r4 - 3 * r4 * r5 + r5 * r5);
    f.c = (r4 - r5) * (r4 - r5);
    f.delta = f.b * f.b - 4 * f.a * f.c;

    const int n = std::max(grid_points, 2);
    for (int k = 0; k < n; ++k) {
        const double t = double(k) / double(n - 1);
        const auto [A, B] = chi_coefficients(h, t);
        const double lhs = A * A - 4 * B;
        const double lin = (r3 + r5) * t + 2 * r3 + 3 * r4 - 3 * r5;
        const double rhs = lin * lin * (f.a * t * t + f.b * t + f.c);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-12});
        f.max_rel_identity_err =
            std::max(f.max_rel_identity_err, std::abs(lhs - rhs) / scale);
    }
    return f;
}

std::pair<double, double> transition_times(const TheoremHypotheses& h) {
    const double r3 = h.r[2], r4 = h.r[3], r5 = h.r[4], j = h.j;
    const double denom = (r3 + r5) * (r3 + r5) + 4 * r4 * j;
    const double mid = r3 * r4 + r3 * r5 + 2 * r4 * r4 - 3 * r4 * r5 + r5 * r5;
    const double root = 2 * std::sqrt(r3 * r4 * r5 * j);
    const double tm = (mid - root) / denom;
    const double tp = (mid + root) / denom;
    if (!(tm > 0) || !(tp < 1) || !(tm < tp))
        throw HypothesisViolation("transition times left (0,1); hypotheses violated");
    return {tm, tp};
}

QuadraticData quadratic_data(const TheoremHypotheses& h) {
    const double r3 = h.r[2], r4 = h.r[3], r5 = h.r[4], j = h.j;
    QuadraticData q;
    q.A_coeffs = {(r3 + r5) * (r3 + r5) + 2 * r4 * j,
                  2 * (r3 * j + (r5 - r4) * (r4 - 2 * r5)),
                  2 * r3 * (r3 + 3 * r4 - 3 * r5) + 5 * (r4 - r5) * (r4 - r5)};
    q.g_coeffs = {-r4, r3 + r4 + r5, r3 + 2 * r4 - 2 * r5};
    const FactoredF f = factored_f(h, 2);
    q.f_coeffs = {f.a, f.b, f.c};
    q.delta = f.delta;
    std::tie(q.t_minus, q.t_plus) = transition_times(h);
    return q;
}

std::vector<SweepRow> sweep(const TheoremHypotheses& h, int num_t,
                            const SweepOptions& opt) {
    if (num_t < 2) throw ContractViolation("sweep needs at least 2 t-values");
    if (!(0.0 <= opt.t_start && opt.t_start < opt.t_stop && opt.t_stop <= 1.0))
        throw ContractViolation("sweep interval must satisfy 0 <= start < stop <= 1");
    const auto [tm, tp] = transition_times(h);
    const Configuration P = build_transition_point(h);

    std::vector<SweepRow> rows(static_cast<std::size_t>(num_t));
    for (int k = 0; k < num_t; ++k) {
        SweepRow& row = rows[std::size_t(k)];
        const double t = opt.t_start + (opt.t_stop - opt.t_start) * double(k) /
                                           double(num_t - 1);
        row.t = t;
        std::tie(row.A, row.B) = chi_coefficients(h, t);
        row.disc = row.A * row.A - 4 * row.B;
        if (row.disc >= 0) {
            const double root = std::sqrt(row.disc);
            const double q = -0.5 * (row.A + (row.A >= 0 ? root : -root));
            row.root1 = q;
            row.root2 = (q != 0.0) ? row.B / q : -row.A - q;
        } else {
            row.root1 = std::complex<double>(-row.A / 2, std::sqrt(-row.disc) / 2);
            row.root2 = std::conj(row.root1);
        }

        const bool near = std::min(std::abs(t - tm), std::abs(t - tp)) <
                          opt.degenerate_window;
        if (near) {
            row.type = SingularityType::Degenerate;
        } else if (t > tm && t < tp) {
            row.type = SingularityType::FocusFocus;
        } else {
            row.type = SingularityType::EllipticElliptic;
        }
        if (opt.with_eigen_channel && !near) {
            row.eigen_type = classify_rank0(P, t, opt.classify).type;
        }
    }
    return rows;
}

} // namespace pentabend
