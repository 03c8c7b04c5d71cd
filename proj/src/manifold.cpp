#include "pentabend/manifold.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace pentabend {

namespace {

TangentVector unflatten(const Eigen::VectorXd& x) {
    TangentVector t(int(x.size()) / 3);
    for (int i = 0; i < t.size(); ++i) t[i] = x.segment<3>(3 * i);
    return t;
}

/* Columns of an orthonormal nullspace basis of M (threshold relative to the
 * largest singular value). */
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double rel_tol = 1e-10) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double thresh = (sv.size() ? sv(0) : 0.0) * rel_tol;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++rank;
    return svd.matrixV().rightCols(svd.matrixV().cols() - rank);
}

} // namespace

Configuration newton_retract(const std::vector<Vec3>& points,
                             const std::vector<double>& radii,
                             double tol_rel, int max_iter) {
    const int n = int(points.size());
    double scale = 0;
    for (double r : radii) scale += r;
    const double tol = tol_rel * scale;

    Configuration c;
    c.rho.resize(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        double nrm = points[std::size_t(i)].norm();
        if (nrm <= 1e-300)
            throw NumericalFailure("retraction: zero edge vector");
        c[i] = points[std::size_t(i)] * (radii[std::size_t(i)] / nrm);
    }

    double best = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
        Vec3 defect = c.closure_defect();
        double dn = defect.norm();
        if (dn <= tol) return c;
        if (dn >= 0.5 * best && it > 3)
            throw NumericalFailure("retraction stalled at defect " +
                                   std::to_string(dn));
        best = std::min(best, dn);

        // least-norm tangent correction: v_i = P_i w with sum v_i = -defect,
        // P_i the projector orthogonal to rho_i
        Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
        for (int i = 0; i < n; ++i) {
            Vec3 u = c[i] / radii[std::size_t(i)];
            m += Eigen::Matrix3d::Identity() - u * u.transpose();
        }
        // pseudo-solve (m can be singular for collinear configurations)
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
        Eigen::Vector3d inv_ev;
        for (int k = 0; k < 3; ++k) {
            double ev = es.eigenvalues()(k);
            inv_ev(k) = ev > 1e-12 * n ? 1.0 / ev : 0.0;
        }
        Vec3 w = es.eigenvectors() *
                 (inv_ev.asDiagonal() * (es.eigenvectors().transpose() * (-defect)));
        for (int i = 0; i < n; ++i) {
            Vec3 u = c[i] / radii[std::size_t(i)];
            Vec3 v = w - u * u.dot(w);
            Vec3 moved = c[i] + v;
            c[i] = moved * (radii[std::size_t(i)] / moved.norm());
        }
    }
    if (c.closure_defect().norm() <= tol) return c;
    throw NumericalFailure("retraction did not converge");
}

Configuration retract(const Configuration& base, const std::vector<double>& radii,
                      const TangentVector& dir, double s) {
    std::vector<Vec3> pts(std::size_t(base.size()));
    for (int i = 0; i < base.size(); ++i) pts[std::size_t(i)] = base[i] + s * dir[i];
    return newton_retract(pts, radii);
}

std::vector<TangentVector> constraint_tangent_basis(const Configuration& c) {
    const int n = c.size();
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n + 3, 3 * n);
    for (int i = 0; i < n; ++i) jac.block<1, 3>(i, 3 * i) = c[i].transpose();
    for (int i = 0; i < n; ++i)
        jac.block<3, 3>(n, 3 * i) = Eigen::Matrix3d::Identity();

    Eigen::MatrixXd ns = nullspace(jac);
    std::vector<TangentVector> basis;
    basis.reserve(std::size_t(ns.cols()));
    for (int k = 0; k < ns.cols(); ++k) basis.push_back(unflatten(ns.col(k)));
    return basis;
}

std::vector<TangentVector> horizontal_basis(const Configuration& c) {
    std::vector<TangentVector> tangent = constraint_tangent_basis(c);
    const int m = int(tangent.size());
    auto vert = vertical_frame(c);

    // coordinates of the rotation generators in the tangent basis
    Eigen::MatrixXd g(m, 3);
    for (int a = 0; a < m; ++a)
        for (int k = 0; k < 3; ++k)
            g(a, k) = tangent[std::size_t(a)].dot(vert[std::size_t(k)]);

    // horizontal = orthogonal complement of col(g) inside the tangent basis
    Eigen::MatrixXd comp = nullspace(g.transpose());
    std::vector<TangentVector> out;
    out.reserve(std::size_t(comp.cols()));
    for (int k = 0; k < comp.cols(); ++k) {
        TangentVector h(c.size());
        for (int a = 0; a < m; ++a) {
            TangentVector term = tangent[std::size_t(a)];
            term *= comp(a, k);
            h += term;
        }
        out.push_back(std::move(h));
    }
    return out;
}

TangentVector project_to_tangent(const Configuration& c, const TangentVector& w) {
    std::vector<TangentVector> basis = constraint_tangent_basis(c);
    TangentVector out(c.size());
    for (const TangentVector& b : basis) {
        TangentVector term = b;
        term *= b.dot(w);
        out += term;
    }
    return out;
}

Eigen::MatrixXd form_matrix(const Configuration& c,
                            const std::vector<TangentVector>& dirs) {
    const int m = int(dirs.size());
    Eigen::MatrixXd omega(m, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            omega(i, k) =
                symplectic_form(c, dirs[std::size_t(i)], dirs[std::size_t(k)]);
    return omega;
}

double fd_directional(const ScalarField& f, const Configuration& c,
                      const TangentVector& dir, const FdOptions& opt) {
    const std::vector<double> radii = c.radii();
    const double h = opt.step_rel * c.perimeter();
    auto slope = [&](double step) {
        return (f(retract(c, radii, dir, step)) -
                f(retract(c, radii, dir, -step))) /
               (2 * step);
    };
    if (!opt.richardson) return slope(h);
    return (4 * slope(h / 2) - slope(h)) / 3;
}

double fd_second(const ScalarField& f, const Configuration& c,
                 const TangentVector& dir, const FdOptions& opt) {
    const std::vector<double> radii = c.radii();
    const double h = opt.step_rel * c.perimeter();
    const double f0 = f(c);
    auto second = [&](double step) {
        return (f(retract(c, radii, dir, step)) - 2 * f0 +
                f(retract(c, radii, dir, -step))) /
               (step * step);
    };
    if (!opt.richardson) return second(h);
    return (4 * second(h / 2) - second(h)) / 3;
}

Eigen::MatrixXd fd_hessian(const ScalarField& f, const Configuration& c,
                           const std::vector<TangentVector>& dirs,
                           const FdOptions& opt) {
    const int m = int(dirs.size());
    Eigen::MatrixXd hess(m, m);
    for (int i = 0; i < m; ++i) {
        hess(i, i) = fd_second(f, c, dirs[std::size_t(i)], opt);
        for (int k = i + 1; k < m; ++k) {
            // polarization: H(u,w) = (Q(u+w) - Q(u-w)) / 4
            TangentVector plus = dirs[std::size_t(i)];
            plus += dirs[std::size_t(k)];
            TangentVector minus = dirs[std::size_t(i)];
            TangentVector neg = dirs[std::size_t(k)];
            neg *= -1.0;
            minus += neg;
            double q_plus = fd_second(f, c, plus, opt);
            double q_minus = fd_second(f, c, minus, opt);
            hess(i, k) = hess(k, i) = 0.25 * (q_plus - q_minus);
        }
    }
    return hess;
}

} // namespace pentabend
