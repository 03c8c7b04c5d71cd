#include "pentabend/singularities.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "pentabend/hamiltonians.hpp"

namespace pentabend {

namespace {

/** Ambient gradient magnitude of an observable, used to normalize the rows of
 * the differential matrix so that the rank cutoff is scale-free. The analytic
 * differential formulas extend to arbitrary (non-tangent) directions, so the
 * gradient is assembled from the coordinate axes. */
double ambient_gradient_norm(const Observable& f, const Configuration& c) {
    const int n = c.size();
    double sq = 0;
    for (int i = 0; i < n; ++i) {
        for (int ax = 0; ax < 3; ++ax) {
            TangentVector e(n);
            e[i] = Vec3::Unit(ax);
            const double d = f.differential(c, e);
            sq += d * d;
        }
    }
    return std::sqrt(sq);
}

struct RankDetail {
    int rank = 2;
    double sv1 = 0, sv2 = 0;
};

RankDetail rank_detail(const Configuration& rho, double t, const RankOptions& opt) {
    const auto basis = horizontal_basis(rho);
    const int m = int(basis.size());

    const double peri = rho.perimeter();
    Observable J = ell(rho, IndexSet{0, 1}) > 1e-12 * peri
                       ? Observable::length(IndexSet{0, 1})
                       : Observable::length_sq(IndexSet{0, 1});
    Observable H = Observable::family(t);

    Eigen::MatrixXd rows(2, m);
    const Observable* fs[2] = {&J, &H};
    for (int r = 0; r < 2; ++r) {
        const double s = ambient_gradient_norm(*fs[r], rho);
        for (int k = 0; k < m; ++k) {
            const double d = fs[r]->differential(rho, basis[std::size_t(k)]);
            rows(r, k) = s > 1e-300 ? d / s : 0.0;
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
    RankDetail out;
    out.sv1 = svd.singularValues()(0);
    out.sv2 = svd.singularValues()(1);
    const double cut = opt.sv_rel * std::max(1.0, out.sv1);
    out.rank = (out.sv1 > cut ? 1 : 0) + (out.sv2 > cut ? 1 : 0);
    return out;
}

/** Characteristic polynomial X^4 + c1 X^3 + c2 X^2 + c3 X + c4 of a 4x4
 * matrix by the Faddeev-LeVerrier recursion. */
std::array<double, 4> char_poly4(const Eigen::Matrix4d& A) {
    std::array<double, 4> c{};
    Eigen::Matrix4d M = A;
    c[0] = -M.trace();
    M = A * (M + c[0] * Eigen::Matrix4d::Identity());
    c[1] = -M.trace() / 2;
    M = A * (M + c[1] * Eigen::Matrix4d::Identity());
    c[2] = -M.trace() / 3;
    M = A * (M + c[2] * Eigen::Matrix4d::Identity());
    c[3] = -M.trace() / 4;
    return c;
}

struct ProbeOutcome {
    bool decisive = false;
    SingularityType type = SingularityType::Degenerate;
    std::array<std::complex<double>, 2> roots{};
    double odd_residual = 0;
    double margin = 0;
};

ProbeOutcome evaluate_probe(const Eigen::PartialPivLU<Eigen::Matrix4d>& lu,
                            const Eigen::Matrix4d& hess_j,
                            const Eigen::Matrix4d& hess_h, double nu, double mu,
                            const ClassifyOptions& opt) {
    const Eigen::Matrix4d M = nu * hess_j + mu * hess_h;
    const Eigen::Matrix4d A = lu.solve(M);
    const auto c = char_poly4(A);

    ProbeOutcome out;
    const double s = std::max(A.norm(), 1e-300);
    out.odd_residual = std::max(std::abs(c[0]) / s, std::abs(c[2]) / (s * s * s));

    // chi(Y) = Y^2 + c2 Y + c4 with Y = X^2.
    const double c2 = c[1], c4 = c[3];
    const double disc = c2 * c2 - 4 * c4;
    const double disc_scale = std::max({c2 * c2, std::abs(4 * c4), 1.0});

    std::complex<double> y1, y2;
    if (disc >= 0) {
        const double root = std::sqrt(disc);
        // Stable quadratic roots.
        const double q = -0.5 * (c2 + (c2 >= 0 ? root : -root));
        y1 = q;
        y2 = (q != 0.0) ? c4 / q : -c2 - q;
    } else {
        y1 = std::complex<double>(-c2 / 2, std::sqrt(-disc) / 2);
        y2 = std::conj(y1);
    }
    out.roots = {y1, y2};

    const double mag = std::max(std::abs(y1), std::abs(y2));
    const double minabs = std::min(std::abs(y1), std::abs(y2));
    const double root_floor = opt.root_margin_rel * std::max(1.0, mag);
    out.margin = std::min(minabs, std::abs(y1 - y2));

    if (std::abs(disc) <= opt.disc_margin_rel * disc_scale) return out;  // repeated-root zone
    if (minabs <= root_floor) return out;                                // zero-root zone

    out.decisive = true;
    if (disc < 0) {
        out.type = SingularityType::FocusFocus;
    } else {
        const double a = y1.real(), b = y2.real();
        if (a < 0 && b < 0) out.type = SingularityType::EllipticElliptic;
        else if (a > 0 && b > 0) out.type = SingularityType::HyperbolicHyperbolic;
        else out.type = SingularityType::EllipticHyperbolic;
    }
    return out;
}

/** Bundle used by both rank-1 entry points. */
struct Rank1Detail {
    SingularityType type = SingularityType::Degenerate;
    double det = 0;
    double e1 = 0, e2 = 0;  ///< diagonal/eigen data of the deciding 2x2 matrix
    std::string channel;    ///< "star", "fd-reduced" or "fixed-surface"
};

SingularityType sign_classify(double det, double scale_sq) {
    const double tol = 1e-9 * std::max(1.0, scale_sq);
    if (det > tol) return SingularityType::EllipticRegular;
    if (det < -tol) return SingularityType::HyperbolicRegular;
    return SingularityType::Degenerate;
}

Rank1Detail rank1_fixed_surface(const Configuration& rho, double t,
                                const ClassifyOptions& opt) {
    // Transverse model at a free-for-H, fixed-for-J point: restrict the
    // Hessian of (1/2) ell_12^2 to the omega-complement of X_H modulo X_H;
    // definiteness there (det > 0) is the elliptic-regular condition.
    const auto basis = horizontal_basis(rho);
    const int m = int(basis.size());
    const Eigen::MatrixXd omega = form_matrix(rho, basis);

    const Observable H = Observable::family(t);
    const TangentVector xh = H.hamiltonian_vector_field(rho);
    Eigen::VectorXd h(m);
    for (int k = 0; k < m; ++k) h(k) = xh.dot(basis[std::size_t(k)]);
    const double hn = h.norm();
    if (hn < 1e-12) throw NotRankOne("Hamiltonian field vanishes; not a rank-1 point");
    h /= hn;

    // Nullspace of the row h^T omega, then remove the h direction.
    Eigen::RowVectorXd row = h.transpose() * omega;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(row, Eigen::ComputeFullV);
    std::vector<Eigen::VectorXd> complement;
    for (int k = 1; k < m; ++k) {  // columns beyond the first span the nullspace
        Eigen::VectorXd v = svd.matrixV().col(k);
        v -= v.dot(h) * h;
        for (const auto& prev : complement) v -= v.dot(prev) * prev;
        const double nv = v.norm();
        if (nv > 1e-8) complement.push_back(v / nv);
    }
    if (complement.size() != 2)
        throw NumericalFailure("transverse complement has unexpected dimension");

    std::vector<TangentVector> dirs;
    for (const auto& coeffs : complement) {
        TangentVector d(rho.size());
        for (int k = 0; k < m; ++k) {
            TangentVector term = basis[std::size_t(k)];
            term *= coeffs(k);
            d += term;
        }
        dirs.push_back(d);
    }

    const ScalarField half_j_sq = [](const Configuration& c) {
        return 0.5 * ell_sq(c, IndexSet{0, 1});
    };
    FdOptions fd;
    fd.step_rel = opt.fd_step_rel;
    const Eigen::MatrixXd S = fd_hessian(half_j_sq, rho, dirs, fd);

    Rank1Detail out;
    out.channel = "fixed-surface";
    out.det = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(S);
    out.e1 = es.eigenvalues()(0);
    out.e2 = es.eigenvalues()(1);
    out.type = sign_classify(out.det, S.norm() * S.norm());
    return out;
}

Rank1Detail rank1_reduced(const Configuration& rho, double t,
                          const ClassifyOptions& opt) {
    const ReducedPoint q = reduce_point(rho);
    const double scale = q.quad.perimeter();

    double max_z = 0;
    for (int i = 0; i < 4; ++i) max_z = std::max(max_z, std::abs(q.quad[i].z()));

    Rank1Detail out;
    if (t > 0 && t < 1 && max_z <= 1e-6 * scale) {
        // Analytic channel: read off the star coordinates and evaluate the
        // closed-form reduced Hessian.
        StarSolution star;
        star.t = t;
        star.c = q.c;
        star.a3 = q.quad[1].x(); star.b3 = q.quad[1].y();
        star.a4 = q.quad[2].x(); star.b4 = q.quad[2].y();
        star.a5 = q.quad[3].x(); star.b5 = q.quad[3].y();
        const double r1 = star.b3, rhs1 = t * (star.a4 * star.b3 - star.a3 * star.b4);
        const double r2 = star.b5, rhs2 = (1 - t) * (star.a4 * star.b5 - star.a5 * star.b4);
        const double denom = r1 * r1 + r2 * r2;
        star.a = denom > 0 ? (r1 * rhs1 + r2 * rhs2) / denom : 0.0;
        if (star.residual() <= 1e-6 * scale * scale &&
            std::abs(star.b3) > 1e-9 * scale && std::abs(star.b5) > 1e-9 * scale) {
            const ReducedHessian rh = reduced_hessian_rank1(q, t, star);
            out.channel = "star";
            out.e1 = rh.data.A_entry;
            out.e2 = rh.data.B_entry;
            out.det = out.e1 * out.e2;
            out.type = sign_classify(out.det, rh.H.norm() * rh.H.norm());
            return out;
        }
    }

    // Finite-difference fallback (endpoints t = 0, 1 and unexpected charts):
    // Hessian of the reduced Hamiltonian on the 2-dimensional quotient basis.
    const auto dirs = horizontal_basis(q.quad);
    if (dirs.size() != 2)
        throw NumericalFailure("reduced quotient basis has unexpected dimension");
    FdOptions fd;
    fd.step_rel = opt.fd_step_rel;
    const ScalarField f = [t](const Configuration& quad) {
        return reduced_family_H(quad, t);
    };
    const Eigen::MatrixXd S = fd_hessian(f, q.quad, dirs, fd);
    out.channel = "fd-reduced";
    out.det = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(S);
    out.e1 = es.eigenvalues()(0);
    out.e2 = es.eigenvalues()(1);
    out.type = sign_classify(out.det, S.norm() * S.norm());
    return out;
}

bool on_fixed_surface(const Configuration& rho, const ClassifyOptions& opt) {
    const double r1 = rho[0].norm(), r2 = rho[1].norm();
    const double c = (rho[0] + rho[1]).norm();
    const double tol = opt.fixed_surface_tol * rho.perimeter();
    return std::abs(c - (r1 + r2)) <= tol || std::abs(c - std::abs(r1 - r2)) <= tol;
}

} // namespace

int rank_at(const Configuration& rho, double t, const RankOptions& opt) {
    return rank_detail(rho, t, opt).rank;
}

std::optional<double> detect_singular(const Configuration& rho, double t, double tol) {
    const int n = rho.size();
    if (n < 4) throw UnsupportedSize("singularity criterion needs n >= 4");
    const Configuration g = gauge_fix(rho);
    const double scale = g.perimeter() * g.perimeter();
    const Vec3 xhat = Vec3::UnitX();

    std::vector<Vec3> lhs, rhs;
    for (int i = 1; i <= n - 4; ++i) {  // interior edges: rotation must fix them
        lhs.push_back(xhat.cross(g[i]));
        rhs.push_back(Vec3::Zero());
    }
    lhs.push_back(xhat.cross(g[n - 3]));
    rhs.push_back(t * g[n - 2].cross(g[n - 3]));
    lhs.push_back(xhat.cross(g[n - 1]));
    rhs.push_back((1.0 - t) * g[n - 2].cross(g[n - 1]));

    double ll = 0, lr = 0;
    for (std::size_t k = 0; k < lhs.size(); ++k) {
        ll += lhs[k].squaredNorm();
        lr += lhs[k].dot(rhs[k]);
    }
    const double a = ll > 1e-30 ? lr / ll : 0.0;

    double resid = 0;
    for (std::size_t k = 0; k < lhs.size(); ++k)
        resid = std::max(resid, (a * lhs[k] - rhs[k]).norm());
    if (resid <= tol * scale) return a;
    return std::nullopt;
}

std::vector<StarSolution> solve_star(double c, double r3, double r4, double r5,
                                     double t, const StarOptions& opt) {
    if (!(c > 0) || !(r3 > 0) || !(r4 > 0) || !(r5 > 0))
        throw InvalidLengths("star equations need positive lengths");
    if (!(t > 0.0) || !(t < 1.0))
        throw ContractViolation("star equations are posed for t in (0,1)");

    const double scale = c + r3 + r4 + r5;

    struct PlanarQuad {
        double a3, b3, a4, b4, a5, b5;
        bool valid;
    };
    // One angle parametrizes rho_3; the elbow branch sigma places rho_4.
    const auto build = [&](double theta, int sigma) -> PlanarQuad {
        PlanarQuad q{0, 0, 0, 0, 0, 0, false};
        q.a3 = r3 * std::cos(theta);
        q.b3 = r3 * std::sin(theta);
        const double dx = -(c + q.a3), dy = -q.b3;  // rho_4 + rho_5
        const double d = std::hypot(dx, dy);
        if (d < std::abs(r4 - r5) || d > r4 + r5 || d < 1e-14 * scale) return q;
        const double alpha = (d * d + r4 * r4 - r5 * r5) / (2 * d);
        const double beta_sq = r4 * r4 - alpha * alpha;
        const double beta = std::sqrt(std::max(0.0, beta_sq));
        const double ux = dx / d, uy = dy / d;     // along the resultant
        const double nx = -uy, ny = ux;            // in-plane normal
        q.a4 = alpha * ux + sigma * beta * nx;
        q.b4 = alpha * uy + sigma * beta * ny;
        q.a5 = dx - q.a4;
        q.b5 = dy - q.b4;
        q.valid = true;
        return q;
    };
    const auto consistency = [&](const PlanarQuad& q) {
        return t * (q.a4 * q.b3 - q.a3 * q.b4) * q.b5 -
               (1.0 - t) * (q.a4 * q.b5 - q.a5 * q.b4) * q.b3;
    };
    const auto finish = [&](const PlanarQuad& q) -> std::optional<StarSolution> {
        StarSolution s;
        s.t = t;
        s.c = c;
        s.a3 = q.a3; s.b3 = q.b3;
        s.a4 = q.a4; s.b4 = q.b4;
        s.a5 = q.a5; s.b5 = q.b5;
        const double rhs1 = t * (q.a4 * q.b3 - q.a3 * q.b4);
        const double rhs2 = (1.0 - t) * (q.a4 * q.b5 - q.a5 * q.b4);
        const double denom = q.b3 * q.b3 + q.b5 * q.b5;
        if (denom < 1e-18 * scale * scale) return std::nullopt;
        s.a = (q.b3 * rhs1 + q.b5 * rhs2) / denom;
        if (s.residual() > 1e-10 * scale * scale) return std::nullopt;
        if (std::abs(s.b3) < 1e-9 * scale || std::abs(s.b5) < 1e-9 * scale)
            return std::nullopt;
        if (std::abs(s.a) < 1e-12 * scale) return std::nullopt;
        return s;
    };

    std::vector<StarSolution> found;
    const int G = std::max(opt.grid, 16);
    for (int sigma : {+1, -1}) {
        // March the closed angle grid and bisect every sign change of the
        // consistency function between consecutive valid nodes.
        double prev_theta = 0, prev_g = 0;
        bool have_prev = false;
        for (int k = 0; k <= G; ++k) {
            const double theta = 2.0 * M_PI * double(k % G) / double(G);
            const PlanarQuad q = build(theta, sigma);
            if (!q.valid) {
                have_prev = false;
                continue;
            }
            const double g = consistency(q);
            if (have_prev && ((g < 0) != (prev_g < 0) || g == 0)) {
                double lo = prev_theta, hi = (k == G ? 2.0 * M_PI : theta);
                double glo = prev_g;
                for (int it = 0; it < opt.bisect_iters; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const PlanarQuad qm = build(mid, sigma);
                    if (!qm.valid) break;
                    const double gm = consistency(qm);
                    if ((gm < 0) == (glo < 0)) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                const PlanarQuad qr = build(0.5 * (lo + hi), sigma);
                if (qr.valid) {
                    if (auto s = finish(qr)) found.push_back(*s);
                }
            }
            prev_theta = theta;
            prev_g = g;
            have_prev = true;
        }
    }

    // Deduplicate by coordinate distance.
    std::vector<StarSolution> out;
    for (const auto& s : found) {
        bool dup = false;
        for (const auto& o : out) {
            const double d = std::max({std::abs(s.a3 - o.a3), std::abs(s.b3 - o.b3),
                                       std::abs(s.a4 - o.a4), std::abs(s.b4 - o.b4),
                                       std::abs(s.a5 - o.a5), std::abs(s.b5 - o.b5)});
            if (d < opt.dedupe) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(s);
    }
    return out;
}

Rank0Report classify_rank0(const Configuration& rho, double t,
                           const ClassifyOptions& opt) {
    std::vector<std::array<double, 2>> probes = {
        {0, 1}, {1, 1}, {1, -1}, {1, 0.9}};
    Rng rng(opt.probe_seed);
    for (int k = 0; k < opt.random_probes; ++k)
        probes.push_back({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
    return classify_rank0(rho, t, probes, opt);
}

Rank0Report classify_rank0(const Configuration& rho, double t,
                           const std::vector<std::array<double, 2>>& probes,
                           const ClassifyOptions& opt) {
    RankOptions ro;
    ro.sv_rel = opt.rank_sv_rel;
    if (rank_at(rho, t, ro) != 0)
        throw NotRankZero("classify_rank0 called on a point of rank > 0");

    const auto basis = horizontal_basis(rho);
    if (basis.size() != 4)
        throw NumericalFailure("quotient tangent space has unexpected dimension");
    const Eigen::Matrix4d omega = form_matrix(rho, basis);
    const Eigen::PartialPivLU<Eigen::Matrix4d> lu(omega);

    FdOptions fd;
    fd.step_rel = opt.fd_step_rel;
    const ScalarField half_j_sq = [](const Configuration& c) {
        return 0.5 * ell_sq(c, IndexSet{0, 1});
    };
    const ScalarField half_h = [t](const Configuration& c) {
        return 0.5 * family_H(c, t);
    };
    const Eigen::Matrix4d hess_j = fd_hessian(half_j_sq, rho, basis, fd);
    const Eigen::Matrix4d hess_h = fd_hessian(half_h, rho, basis, fd);

    Rank0Report report;
    ProbeOutcome best;
    std::array<double, 2> best_probe{0, 0};
    for (const auto& p : probes) {
        const ProbeOutcome o = evaluate_probe(lu, hess_j, hess_h, p[0], p[1], opt);
        if (o.decisive) {
            report.type = o.type;
            report.probe = p;
            report.roots = o.roots;
            report.odd_residual = o.odd_residual;
            report.margin = o.margin;
            return report;
        }
        if (o.margin >= best.margin) {
            best = o;
            best_probe = p;
        }
    }
    report.type = SingularityType::Degenerate;
    report.probe = best_probe;
    report.roots = best.roots;
    report.odd_residual = best.odd_residual;
    report.margin = best.margin;
    return report;
}

SingularityType classify_rank1(const Configuration& rho, double t,
                               const ClassifyOptions& opt) {
    RankOptions ro;
    ro.sv_rel = opt.rank_sv_rel;
    if (rank_at(rho, t, ro) != 1)
        throw NotRankOne("classify_rank1 called on a point of rank != 1");
    if (on_fixed_surface(rho, opt)) return rank1_fixed_surface(rho, t, opt).type;
    return rank1_reduced(rho, t, opt).type;
}

SingularityType classify_fixed_surface_rank0(const Configuration& rho, double t,
                                             const ClassifyOptions& opt) {
    if (!on_fixed_surface(rho, opt))
        throw NotOnFixedSurface("point is not on a fixed surface of the circle action");
    RankOptions ro;
    ro.sv_rel = opt.rank_sv_rel;
    if (rank_at(rho, t, ro) != 0)
        throw NotRankZero("fixed-surface rank-0 classifier needs a rank-0 point");

    const ReducedPoint q = reduce_point(rho);
    const auto dirs = horizontal_basis(q.quad);
    if (dirs.size() != 2)
        throw NumericalFailure("fixed-surface chart has unexpected dimension");
    FdOptions fd;
    fd.step_rel = opt.fd_step_rel;
    const ScalarField f = [t](const Configuration& quad) {
        return reduced_family_H(quad, t);
    };
    const Eigen::MatrixXd S = fd_hessian(f, q.quad, dirs, fd);
    const double det = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
    const double tol = 1e-9 * std::max(1.0, S.norm() * S.norm());
    if (det > tol) return SingularityType::EllipticElliptic;
    if (det < -tol) return SingularityType::EllipticHyperbolic;
    return SingularityType::Degenerate;
}

SingularityType classify_local_model(const LocalModelParams& p, double tol_rel) {
    const double m = std::abs(p.mu2 + p.mu3);
    const double u = std::abs(p.mu1);
    if (m == 0 && u == 0)
        throw NotIntegrable("local model needs (mu1, mu2+mu3) != (0,0)");
    const double scale = std::max(m, u);
    if (std::abs(m - u) <= tol_rel * scale) return SingularityType::Degenerate;
    return m < u ? SingularityType::FocusFocus : SingularityType::EllipticElliptic;
}

std::pair<double, double> local_transition_times(double mu1, double mu2, double mu3,
                                                 double nu2, double nu3) {
    const double M = mu2 + mu3, N = nu2 + nu3;
    if (!((M * M) > mu1 * mu1) || !(mu1 * mu1 > 0))
        throw HypothesisViolation("need (mu2+mu3)^2 > mu1^2 > 0");
    if (!(N > 0)) throw HypothesisViolation("need nu2 + nu3 > 0");
    if (!(M < 0)) throw HypothesisViolation("need mu2 + mu3 < 0");
    // f(t) = (N + t(M-N))^2 - (t mu1)^2 has discriminant 4 N^2 mu1^2 > 0.
    const double A = (M - N) * (M - N) - mu1 * mu1;
    const double u = std::abs(mu1);
    const double t1 = N * (N - M - u) / A;
    const double t2 = N * (N - M + u) / A;
    return {std::min(t1, t2), std::max(t1, t2)};
}

SingularityReport classify_point(const Configuration& rho, double t,
                                 const ClassifyOptions& opt) {
    RankOptions ro;
    ro.sv_rel = opt.rank_sv_rel;
    const RankDetail rd = rank_detail(rho, t, ro);

    SingularityReport rep;
    rep.rank = rd.rank;
    rep.t = t;
    rep.residuals["closure"] = rho.closure_defect().norm();
    rep.residuals["sv1"] = rd.sv1;
    rep.residuals["sv2"] = rd.sv2;

    if (rd.rank == 2) {
        rep.type = SingularityType::Regular;
        return rep;
    }
    if (rd.rank == 1) {
        const Rank1Detail d = on_fixed_surface(rho, opt)
                                  ? rank1_fixed_surface(rho, t, opt)
                                  : rank1_reduced(rho, t, opt);
        rep.type = d.type;
        rep.roots = {std::complex<double>(d.e1, 0), std::complex<double>(d.e2, 0)};
        rep.residuals["reduced_det"] = d.det;
        rep.residuals["channel_fd"] = d.channel == "star" ? 0.0 : 1.0;
        return rep;
    }
    if (on_fixed_surface(rho, opt)) {
        rep.type = classify_fixed_surface_rank0(rho, t, opt);
        return rep;
    }
    const Rank0Report r0 = classify_rank0(rho, t, opt);
    rep.type = r0.type;
    rep.probe = r0.probe;
    rep.roots = r0.roots;
    rep.residuals["odd_coefficients"] = r0.odd_residual;
    rep.residuals["root_margin"] = r0.margin;
    return rep;
}

} // namespace pentabend
