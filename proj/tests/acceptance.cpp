// Acceptance gate: runs the twelve verification suites against the reference
// tuple (3,1,4,2,3) and prints one pass/fail line per criterion.  A suite
// that skips counts as a failure here -- the reference tuple satisfies the
// hypotheses, so nothing may skip.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "pentabend/verify.hpp"

int main() {
    using namespace pentabend;

    VerifyOptions opt;  // reference lengths, seed 20240814, default tolerances
    const std::vector<std::string>& names = verification_suite_names();

    int passed = 0;
    const int total = int(names.size());
    for (int i = 0; i < total; ++i) {
        SuiteResult res;
        try {
            res = run_suite(names[std::size_t(i)], opt);
        } catch (const std::exception& e) {
            res.name = names[std::size_t(i)];
            res.pass = false;
            res.message = std::string("exception: ") + e.what();
        }
        const bool ok = res.pass && !res.skipped;
        if (ok) ++passed;
        std::printf("[%s] criterion %2d (%s): %s (%.0f ms)\n",
                    ok ? "PASS" : "FAIL", i + 1, res.name.c_str(),
                    res.message.c_str(), res.ms);
        if (!ok) {
            for (const auto& [key, value] : res.metrics)
                std::printf("         %s = %.17g\n", key.c_str(), value);
        }
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", passed, total);
    return passed == total ? 0 : 1;
}
