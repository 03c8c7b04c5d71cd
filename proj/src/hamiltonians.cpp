#include "pentabend/hamiltonians.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

namespace pentabend {

IndexSet::IndexSet(std::initializer_list<int> list) : idx(list) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
}

IndexSet::IndexSet(std::vector<int> list) : idx(std::move(list)) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
}

bool IndexSet::contains(int i) const {
    return std::binary_search(idx.begin(), idx.end(), i);
}

void IndexSet::validate(int n) const {
    if (idx.empty())
        throw ContractViolation("index set must be nonempty");
    if (idx.front() < 0 || idx.back() >= n)
        throw ContractViolation("index out of range");
    if (size() >= n)
        throw ContractViolation("index set must be a proper subset");
}

Vec3 partial_sum(const Configuration& c, const IndexSet& I) {
    I.validate(c.size());
    Vec3 s = Vec3::Zero();
    for (int i : I.idx) s += c[i];
    return s;
}

double ell(const Configuration& c, const IndexSet& I) {
    return partial_sum(c, I).norm();
}

double ell_sq(const Configuration& c, const IndexSet& I) {
    return partial_sum(c, I).squaredNorm();
}

double family_H(const Configuration& c, double t) {
    if (c.size() != 5)
        throw UnsupportedSize("the transition family is defined on pentagons");
    return t * ell_sq(c, IndexSet{2, 3}) +
           (1 - t) * ell_sq(c, IndexSet{3, 4});
}

Observable Observable::length_sq(IndexSet I) {
    Observable o;
    o.kind_ = Kind::LengthSq;
    o.set_ = std::move(I);
    return o;
}

Observable Observable::length(IndexSet I) {
    Observable o;
    o.kind_ = Kind::Length;
    o.set_ = std::move(I);
    return o;
}

Observable Observable::family(double t) {
    Observable o;
    o.kind_ = Kind::Family;
    o.t_ = t;
    return o;
}

double Observable::operator()(const Configuration& c) const {
    switch (kind_) {
      case Kind::LengthSq: return ell_sq(c, set_);
      case Kind::Length: return ell(c, set_);
      case Kind::Family: return family_H(c, t_);
    }
    return 0; // unreachable
}

namespace {

/* X_{ell_I^2} scaled by `weight`, accumulated into `out`. */
void add_length_sq_field(const Configuration& c, const IndexSet& I,
                         double weight, TangentVector& out) {
    Vec3 mu = partial_sum(c, I);
    for (int i : I.idx) out[i] += 2 * weight * mu.cross(c[i]);
}

} // namespace

TangentVector Observable::hamiltonian_vector_field(const Configuration& c) const {
    TangentVector x(c.size());
    switch (kind_) {
      case Kind::LengthSq:
        add_length_sq_field(c, set_, 1.0, x);
        break;
      case Kind::Length: {
        Vec3 mu = partial_sum(c, set_);
        double len = mu.norm();
        if (len <= 1e-12 * c.perimeter())
            throw VanishingMoment("ell_I vanishes; its flow is undefined");
        for (int i : set_.idx) x[i] = mu.cross(c[i]) / len;
        break;
      }
      case Kind::Family:
        if (c.size() != 5)
            throw UnsupportedSize("the transition family is defined on pentagons");
        add_length_sq_field(c, IndexSet{2, 3}, t_, x);
        add_length_sq_field(c, IndexSet{3, 4}, 1 - t_, x);
        break;
    }
    return x;
}

double Observable::differential(const Configuration& c,
                                const TangentVector& w) const {
    auto sum_over = [&](const IndexSet& I) {
        Vec3 s = Vec3::Zero();
        for (int i : I.idx) s += w[i];
        return s;
    };
    switch (kind_) {
      case Kind::LengthSq:
        return 2 * partial_sum(c, set_).dot(sum_over(set_));
      case Kind::Length: {
        Vec3 mu = partial_sum(c, set_);
        double len = mu.norm();
        if (len <= 1e-12 * c.perimeter())
            throw VanishingMoment("ell_I vanishes; d(ell_I) is undefined");
        return mu.dot(sum_over(set_)) / len;
      }
      case Kind::Family:
        return t_ * 2 * partial_sum(c, IndexSet{2, 3}).dot(sum_over(IndexSet{2, 3})) +
               (1 - t_) * 2 *
                   partial_sum(c, IndexSet{3, 4}).dot(sum_over(IndexSet{3, 4}));
    }
    return 0; // unreachable
}

double poisson_bracket(const Configuration& c, const Observable& f,
                       const Observable& g) {
    return symplectic_form(c, f.hamiltonian_vector_field(c), g.hamiltonian_vector_field(c));
}

Configuration bending_rotate(const Configuration& c, const IndexSet& I, double theta) {
    Vec3 mu = partial_sum(c, I);
    double len = mu.norm();
    if (len <= 1e-12 * c.perimeter())
        throw VanishingMoment("ell_I vanishes; the bending axis is undefined");
    Eigen::AngleAxisd rot(theta, mu / len);
    Configuration out = c;
    for (int i : I.idx) out[i] = rot * c[i];
    return out;
}

} // namespace pentabend
