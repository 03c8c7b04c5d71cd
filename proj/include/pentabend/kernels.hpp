#pragma once

#include <cstddef>
#include <vector>

#include "pentabend/common.hpp"
#include "pentabend/geometry.hpp"

namespace pentabend {

/// Execution policy for the bulk sampling kernels.  `Serial` is the
/// reference implementation used by the tests; `Parallel` distributes the
/// per-sample work across OpenMP threads.  Both policies derive the i-th
/// sample from an independent RNG stream forked off the master seed, so the
/// results are byte-identical regardless of policy or thread count.
enum class ExecPolicy { Serial, Parallel };

/// Number of worker threads the parallel policy will use.  Honors the
/// PENTABEND_THREADS environment variable when set to a positive integer,
/// otherwise falls back to the OpenMP default.  Always >= 1.
int max_threads();

/// Evaluations of the four observables of interest at one random
/// configuration: the diagonal length J = ell_{12}, the family value
/// H = H_t, and the two bending lengths entering the family.
struct MomentSample {
    double J = 0.0;
    double H = 0.0;
    double ell34 = 0.0;
    double ell45 = 0.0;
};

/// Draws `count` configurations uniformly (via the rejection/closure sampler
/// of `sample_configuration`) and evaluates the moment data at each.
/// Deterministic in (r, t, count, seed) independently of `policy`.
std::vector<MomentSample> moment_image_samples(const SideLengths& r, double t,
                                               std::size_t count,
                                               std::uint64_t seed,
                                               ExecPolicy policy = ExecPolicy::Parallel);

/// Vertices of the images of the two toric endpoint systems, listed
/// counterclockwise.  `vertices_34` is the image of (ell_{12}, ell_{34}),
/// `vertices_45` that of (ell_{12}, ell_{45}).  Requires the genericity
/// hypotheses to hold for r.
struct PredictedVertices {
    std::vector<Vec2> vertices_34;
    std::vector<Vec2> vertices_45;
};

PredictedVertices predicted_vertices(const TheoremHypotheses& h);

}  // namespace pentabend
