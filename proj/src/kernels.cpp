#include "pentabend/kernels.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pentabend/hamiltonians.hpp"

namespace pentabend {

int max_threads() {
    if (const char* env = std::getenv("PENTABEND_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (const std::exception&) {
            // fall through to the OpenMP default on unparsable values
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {

MomentSample evaluate_sample(const SideLengths& r, double t, Rng stream) {
    Configuration c = sample_configuration(r, stream);
    MomentSample s;
    s.J = ell(c, IndexSet{0, 1});
    s.ell34 = ell(c, IndexSet{2, 3});
    s.ell45 = ell(c, IndexSet{3, 4});
    s.H = t * s.ell34 * s.ell34 + (1.0 - t) * s.ell45 * s.ell45;
    return s;
}

}  // namespace

std::vector<MomentSample> moment_image_samples(const SideLengths& r, double t,
                                               std::size_t count,
                                               std::uint64_t seed,
                                               ExecPolicy policy) {
    if (r.size() != 5) throw UnsupportedSize("moment_image_samples: need n = 5");
    std::vector<MomentSample> out(count);
    const Rng master(seed);

    if (policy == ExecPolicy::Parallel) {
        const int threads = max_threads();
        // Each iteration draws from its own forked stream, so the schedule
        // cannot change the result; exceptions must not cross the omp region.
        bool failed = false;
        std::string what;
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
        for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(count); ++i) {
            if (failed) continue;
            try {
                out[std::size_t(i)] =
                    evaluate_sample(r, t, master.fork(std::uint64_t(i)));
            } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
                {
                    failed = true;
                    what = e.what();
                }
            }
        }
        if (failed) throw SamplingFailed("moment_image_samples: " + what);
    } else {
        for (std::size_t i = 0; i < count; ++i)
            out[i] = evaluate_sample(r, t, master.fork(i));
    }
    return out;
}

PredictedVertices predicted_vertices(const TheoremHypotheses& h) {
    const double r3 = h.r[2], r4 = h.r[3], r5 = h.r[4];
    PredictedVertices v;
    // Image of (ell_12, ell_34): ell_34 = |mu_12 + rho_5| together with the
    // quad bounds [r3-r4, r3+r4]; under the hypotheses the lower edge is flat
    // and the upper edge is c+r5 until it saturates at c = j.
    v.vertices_34 = {Vec2(h.J_min, r3 - r4), Vec2(h.J_max, r3 - r4),
                     Vec2(h.J_max, r3 + r4), Vec2(h.j, r3 + r4),
                     Vec2(h.J_min, r5 + h.J_min)};
    // Image of (ell_12, ell_45): upper edge flat at r4+r5, lower edge r3-c
    // until it saturates at c = j.
    v.vertices_45 = {Vec2(h.J_min, r3 - h.J_min), Vec2(h.j, r5 - r4),
                     Vec2(h.J_max, r5 - r4), Vec2(h.J_max, r4 + r5),
                     Vec2(h.J_min, r4 + r5)};
    return v;
}

}  // namespace pentabend
