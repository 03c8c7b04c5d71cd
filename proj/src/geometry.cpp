#include "pentabend/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

namespace pentabend {

SideLengths::SideLengths(std::vector<double> lengths) : r(std::move(lengths)) {
    if (r.size() < 4)
        throw InvalidLengths("need at least 4 side lengths, got " +
                             std::to_string(r.size()));
    for (double x : r)
        if (!(x > 0) || !std::isfinite(x))
            throw InvalidLengths("side lengths must be positive and finite");
}

double SideLengths::total() const {
    double s = 0;
    for (double x : r) s += x;
    return s;
}

LengthFlags validate_side_lengths(const SideLengths& r) {
    const int n = r.size();
    if (n > 12)
        throw UnsupportedSize("genericity enumeration supports n <= 12");

    LengthFlags f;

    // nonempty: longest side reachable by the others
    double total = r.total();
    double longest = *std::max_element(r.r.begin(), r.r.end());
    f.nonempty = longest <= total - longest;

    // generic: no subset sum equals its complement. Fix eps_1 = +1 (global
    // sign is irrelevant) and enumerate the remaining 2^(n-1) assignments.
    const double tol = 1e-12 * total;
    f.generic = true;
    for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        double s = r[0];
        for (int i = 1; i < n; ++i)
            s += (mask >> (i - 1)) & 1u ? -r[i] : r[i];
        if (std::abs(s) <= tol) {
            f.generic = false;
            break;
        }
    }

    if (n == 5) f.theorem_ok = TheoremHypotheses::check(r);
    return f;
}

bool TheoremHypotheses::check(const SideLengths& r) {
    if (r.size() != 5) return false;
    const double r1 = r[0], r2 = r[1], r3 = r[2], r4 = r[3], r5 = r[4];
    const double j = r3 + r4 - r5;
    if (!(0.5 * r5 <= r4 && r4 < r5 && r5 < r3)) return false;
    if (!(std::abs(r1 + r2 - r3) < r5 - r4)) return false;
    if (!(std::abs(r3 - r4 - r5) < std::abs(r1 - r2) && std::abs(r1 - r2) < j))
        return false;
    return true;
}

TheoremHypotheses TheoremHypotheses::require(const SideLengths& r) {
    if (r.size() != 5)
        throw HypothesisViolation("transition theorem needs exactly 5 sides");
    if (!check(r))
        throw HypothesisViolation("side lengths violate the transition-theorem "
                                  "inequalities");
    LengthFlags f = validate_side_lengths(r);
    if (!f.generic || !f.nonempty)
        throw HypothesisViolation("side lengths must be generic and admit a "
                                  "nonempty polygon space");
    TheoremHypotheses h;
    h.r = r;
    h.j = r[2] + r[3] - r[4];
    h.J_min = std::abs(r[0] - r[1]);
    h.J_max = r[0] + r[1];
    return h;
}

Vec3 Configuration::closure_defect() const {
    Vec3 s = Vec3::Zero();
    for (const Vec3& e : rho) s += e;
    return s;
}

std::vector<double> Configuration::radii() const {
    std::vector<double> out(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) out[i] = rho[i].norm();
    return out;
}

double Configuration::perimeter() const {
    double s = 0;
    for (const Vec3& e : rho) s += e.norm();
    return s;
}

bool is_valid_configuration(const Configuration& c, const SideLengths& r,
                            double rel_tol) {
    if (c.size() != r.size()) return false;
    for (int i = 0; i < c.size(); ++i)
        if (std::abs(c[i].norm() - r[i]) > rel_tol * r[i]) return false;
    return c.closure_defect().norm() <= rel_tol * r.total();
}

double TangentVector::norm() const { return std::sqrt(dot(*this)); }

double TangentVector::dot(const TangentVector& o) const {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i].dot(o.v[i]);
    return s;
}

TangentVector& TangentVector::operator+=(const TangentVector& o) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}

TangentVector& TangentVector::operator*=(double s) {
    for (Vec3& x : v) x *= s;
    return *this;
}

std::array<TangentVector, 3> vertical_frame(const Configuration& c) {
    std::array<TangentVector, 3> frame{TangentVector(c.size()),
                                       TangentVector(c.size()),
                                       TangentVector(c.size())};
    for (int k = 0; k < 3; ++k) {
        Vec3 e = Vec3::Unit(k);
        for (int i = 0; i < c.size(); ++i) frame[std::size_t(k)][i] = e.cross(c[i]);
    }
    return frame;
}

double symplectic_form(const Configuration& c, const TangentVector& u,
                       const TangentVector& w) {
    double s = 0;
    for (int i = 0; i < c.size(); ++i)
        s += c[i].dot(u[i].cross(w[i])) / c[i].squaredNorm();
    return s;
}

Configuration gauge_fix(const Configuration& c) {
    Configuration out = c;
    const double scale = c.perimeter();

    // align rho_1 with +x
    Eigen::Quaterniond q =
        Eigen::Quaterniond::FromTwoVectors(out[0], Vec3::UnitX());
    for (Vec3& e : out.rho) e = q * e;

    // residual rotation about x: first edge with a transverse part goes to
    // the closed upper half-plane (z = 0, y >= 0)
    for (int i = 1; i < out.size(); ++i) {
        double y = out[i].y(), z = out[i].z();
        double trans = std::hypot(y, z);
        if (trans <= 1e-12 * scale) continue;
        double a = -std::atan2(z, y);
        Eigen::AngleAxisd rot(a, Vec3::UnitX());
        for (Vec3& e : out.rho) e = rot * e;
        break;
    }
    return out;
}

Configuration build_transition_point(const TheoremHypotheses& h) {
    const double r1 = h.r[0], r2 = h.r[1], r3 = h.r[2], r4 = h.r[3],
                 r5 = h.r[4], j = h.j;
    // triangle (r1, r2, j) over the base segment from 0 to (j,0,0)
    double x1 = (r1 * r1 - r2 * r2 + j * j) / (2 * j);
    double y1 = std::sqrt(std::max(0.0, r1 * r1 - x1 * x1));
    Configuration p;
    p.rho = {Vec3(x1, y1, 0), Vec3(j - x1, -y1, 0), Vec3(-r3, 0, 0),
             Vec3(-r4, 0, 0), Vec3(r5, 0, 0)};
    return p;
}

namespace {

/* Places the third triangle vertex: |p| = b and |p - prev| = r_edge with
 * |prev| = a, in the plane, on the +normal side. */
bool triangle_place(const Vec3& prev, double b, double r_edge, Vec3& out) {
    double a = prev.norm();
    if (a <= 1e-300) return false;
    double alpha = (a * a + b * b - r_edge * r_edge) / (2 * a);
    double beta2 = b * b - alpha * alpha;
    if (beta2 < -1e-12 * (b * b + 1)) return false;
    double beta = std::sqrt(std::max(0.0, beta2));
    Vec3 dir = prev / a;
    Vec3 normal = Vec3::UnitZ().cross(dir); // in-plane normal, unit length
    out = alpha * dir + beta * normal;
    return true;
}

} // namespace

Configuration sample_configuration(const SideLengths& r, Rng& rng) {
    const int n = r.size();
    LengthFlags f = validate_side_lengths(r);
    if (!f.nonempty) throw EmptySpace("polygon space is empty for these lengths");

    const int budget = 10000;
    for (int attempt = 0; attempt < budget; ++attempt) {
        // diagonals d_k = |rho_1 + ... + rho_k|, k = 1..n-1; d_1 and d_{n-1}
        // are pinned, d_2..d_{n-2} are sampled in their triangle intervals
        std::vector<double> d(std::size_t(n), 0.0);
        d[1] = r[0];
        d[std::size_t(n) - 1] = r[n - 1];
        bool ok = true;
        for (int k = 2; k <= n - 2; ++k) {
            double lo = std::abs(d[std::size_t(k) - 1] - r[k - 1]);
            double hi = d[std::size_t(k) - 1] + r[k - 1];
            double rest = 0; // reachability of closure by the remaining edges
            for (int i = k; i < n; ++i) rest += r[i];
            hi = std::min(hi, rest);
            if (k == n - 2) {
                lo = std::max(lo, std::abs(r[n - 2] - r[n - 1]));
                hi = std::min(hi, r[n - 2] + r[n - 1]);
            }
            if (!(lo <= hi)) { ok = false; break; }
            d[std::size_t(k)] = rng.uniform(lo, hi);
        }
        if (!ok) continue;

        // planar spine: vertices p_k with |p_k| = d_k
        std::vector<Vec3> p(std::size_t(n), Vec3::Zero());
        p[1] = Vec3(d[1], 0, 0);
        for (int k = 2; k <= n - 1; ++k) {
            if (!triangle_place(p[std::size_t(k) - 1], d[std::size_t(k)], r[k - 1],
                                p[std::size_t(k)])) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        // fold the flaps: rotate vertices p_1..p_{k-1} about each interior
        // diagonal axis by a uniform angle
        for (int k = 2; k <= n - 2; ++k) {
            double dk = p[std::size_t(k)].norm();
            if (dk <= 1e-12 * r.total()) { ok = false; break; }
            Eigen::AngleAxisd rot(rng.uniform(0, 2 * M_PI),
                                  p[std::size_t(k)] / dk);
            for (int i = 1; i < k; ++i) p[std::size_t(i)] = rot * p[std::size_t(i)];
        }
        if (!ok) continue;

        Configuration c;
        c.rho.resize(std::size_t(n));
        for (int i = 0; i < n; ++i) {
            Vec3 next = (i + 1 < n) ? p[std::size_t(i) + 1] : Vec3::Zero();
            c.rho[std::size_t(i)] = next - p[std::size_t(i)];
        }
        if (!is_valid_configuration(c, r, 1e-9)) continue;
        return c;
    }
    throw SamplingFailed("rejection budget exhausted while sampling");
}

Configuration sample_configuration(const SideLengths& r, std::uint64_t seed) {
    Rng rng(seed);
    return sample_configuration(r, rng);
}

} // namespace pentabend
