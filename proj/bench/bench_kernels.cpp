// Compares the serial reference kernel against the OpenMP kernel on the
// moment-image sampling workload.  Reports best-of-3 wall times, the speedup,
// and whether the two policies produced identical samples (they must).
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#include "pentabend/kernels.hpp"

using namespace pentabend;

namespace {

double best_of_3_ms(ExecPolicy policy, const SideLengths& r, std::size_t count,
                    std::vector<MomentSample>& out) {
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        auto samples = moment_image_samples(r, 0.3, count, 20240814, policy);
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(
            best, std::chrono::duration<double, std::milli>(t1 - t0).count());
        out = std::move(samples);
    }
    return best;
}

}  // namespace

int main() {
    const SideLengths r({3, 1, 4, 2, 3});
    std::printf("moment-image sampling, r = (3,1,4,2,3), t = 0.3, %d thread(s)\n",
                max_threads());
    std::printf("%10s  %12s  %12s  %8s  %s\n", "samples", "serial ms",
                "parallel ms", "speedup", "identical");
    for (std::size_t count : {std::size_t(2000), std::size_t(20000)}) {
        std::vector<MomentSample> s, p;
        const double ms_serial = best_of_3_ms(ExecPolicy::Serial, r, count, s);
        const double ms_parallel = best_of_3_ms(ExecPolicy::Parallel, r, count, p);
        bool same = s.size() == p.size();
        for (std::size_t i = 0; same && i < s.size(); ++i)
            same = s[i].J == p[i].J && s[i].H == p[i].H &&
                   s[i].ell34 == p[i].ell34 && s[i].ell45 == p[i].ell45;
        std::printf("%10zu  %12.2f  %12.2f  %7.2fx  %s\n", count, ms_serial,
                    ms_parallel, ms_serial / ms_parallel, same ? "yes" : "NO");
    }
    return 0;
}
