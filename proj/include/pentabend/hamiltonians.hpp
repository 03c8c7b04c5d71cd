#ifndef PENTABEND_HAMILTONIANS_HPP
#define PENTABEND_HAMILTONIANS_HPP

/** \file hamiltonians.hpp
 * Bending Hamiltonians ell_I = |sum_{i in I} rho_i|, their squares, the
 * one-parameter family H_t = t*ell_{34}^2 + (1-t)*ell_{45}^2 on pentagons,
 * Hamiltonian vector fields, Poisson brackets, and the bending flow.
 *
 * Sign convention: df = omega(X_f, .), which gives
 *   X_{ell_I^2}|_i = 2 mu_I x rho_i   and   X_{ell_I}|_i = (mu_I x rho_i)/ell_I
 * for i in I (zero otherwise), with mu_I = sum_{i in I} rho_i. */

#include <initializer_list>
#include <vector>

#include "common.hpp"
#include "geometry.hpp"

namespace pentabend {

/** Sorted set of edge indices (0-based). */
struct IndexSet {
    std::vector<int> idx;

    IndexSet() = default;
    IndexSet(std::initializer_list<int> list);
    explicit IndexSet(std::vector<int> list);

    int size() const { return int(idx.size()); }
    bool contains(int i) const;
    /** Throws ContractViolation unless the set is a nonempty proper subset of
     * {0,...,n-1}. */
    void validate(int n) const;
};

/** mu_I = sum over the index set. */
Vec3 partial_sum(const Configuration& c, const IndexSet& I);

/** ell_I = |mu_I|. */
double ell(const Configuration& c, const IndexSet& I);

double ell_sq(const Configuration& c, const IndexSet& I);

/** H_t on pentagons: t*ell_{34}^2 + (1-t)*ell_{45}^2 in 1-based edge labels,
 * i.e. index sets {2,3} and {3,4}. Throws UnsupportedSize unless n = 5. */
double family_H(const Configuration& c, double t);

/** A scalar field with known Hamiltonian vector field and differential:
 * ell_I^2, ell_I or H_t. */
class Observable {
  public:
    static Observable length_sq(IndexSet I);
    static Observable length(IndexSet I);
    static Observable family(double t);

    double operator()(const Configuration& c) const;

    /** X_f under df = omega(X_f, .). For `length`, throws VanishingMoment
     * when ell_I vanishes (relative guard 1e-12 * perimeter). */
    TangentVector hamiltonian_vector_field(const Configuration& c) const;

    /** Analytic differential df(w). */
    double differential(const Configuration& c, const TangentVector& w) const;

  private:
    enum class Kind { LengthSq, Length, Family };
    Kind kind_;
    IndexSet set_;
    double t_ = 0;
};

/** {f,g} = omega(X_f, X_g). */
double poisson_bracket(const Configuration& c, const Observable& f,
                       const Observable& g);

/** Bending flow of ell_I for time theta: rotates rho_i, i in I, about the
 * axis mu_I by the angle theta. Throws VanishingMoment when ell_I vanishes. */
Configuration bending_rotate(const Configuration& c, const IndexSet& I, double theta);

} // namespace pentabend

#endif
