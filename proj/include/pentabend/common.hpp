#ifndef PENTABEND_COMMON_HPP
#define PENTABEND_COMMON_HPP

/** \file common.hpp
 * Error types and the deterministic random number generator shared by the
 * whole library. */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <Eigen/Dense>

namespace pentabend {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

/* Every failure mode of the library is a subclass of Error, so callers (and
 * the CLI) can distinguish "the input violates a documented precondition"
 * (exit code 2) from internal numerical trouble (exit code 1). */
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Input/contract violations. */
struct InvalidLengths : Error { using Error::Error; };      // non-positive or wrong count
struct HypothesisViolation : Error { using Error::Error; }; // theorem inequalities fail
struct EmptySpace : Error { using Error::Error; };          // polygon space is empty
struct LevelOutOfRange : Error { using Error::Error; };     // level outside moment interval
struct UnsupportedSize : Error { using Error::Error; };     // n out of supported range
struct ContractViolation : Error { using Error::Error; };   // caller broke a precondition

/* Mathematical "not applicable" conditions. */
struct VanishingMoment : Error { using Error::Error; };     // ell_I = 0 where 1/ell needed
struct NotSingular : Error { using Error::Error; };         // point is regular
struct NotRankZero : Error { using Error::Error; };
struct NotRankOne : Error { using Error::Error; };
struct NotOnFixedSurface : Error { using Error::Error; };
struct NotIntegrable : Error { using Error::Error; };       // local model with mu1 = mu2+mu3 = 0

/* Numerical failures. */
struct SamplingFailed : Error { using Error::Error; };      // rejection budget exhausted
struct NumericalFailure : Error { using Error::Error; };    // solver did not converge

/** Deterministic 64-bit generator (splitmix64).
 *
 * Used instead of <random> engines+distributions so that identical seeds give
 * bit-identical streams on every platform and — via fork() — independent
 * per-item streams that make parallel sampling order-independent. */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /** Uniform double in [0,1) with 53 random bits. */
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /** Uniformly distributed unit vector in R^3. */
    Vec3 unit_vector() {
        // rejection from the cube; expected < 2 draws
        for (;;) {
            Vec3 v(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
            double n2 = v.squaredNorm();
            if (n2 > 1e-12 && n2 <= 1.0) return v / std::sqrt(n2);
        }
    }

    /** Independent stream for item `index`; insensitive to call order. */
    Rng fork(std::uint64_t index) const {
        // mix the base seed and index through one splitmix round each
        Rng mixer(state_ ^ (0x632be59bd9b4e019ULL * (index + 1)));
        mixer.next_u64();
        return mixer;
    }

  private:
    std::uint64_t state_;
};

} // namespace pentabend

#endif
