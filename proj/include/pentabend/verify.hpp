#ifndef PENTABEND_VERIFY_HPP
#define PENTABEND_VERIFY_HPP

/** \file verify.hpp
 * The twelve verification suites: each one checks a documented invariant of
 * the library end to end and reports pass/fail with named residuals.  The
 * acceptance binary and the `verify` subcommand both run these.
 *
 * Suites that need the transition-theorem hypotheses for the configured side
 * lengths are skipped (not failed) when those hypotheses do not hold.
 * Frozen reference values are asserted whenever the configured lengths equal
 * the reference tuple (3,1,4,2,3). */

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "common.hpp"
#include "geometry.hpp"
#include "io.hpp"

namespace pentabend {

struct VerifyOptions {
    SideLengths r;                      ///< lengths under test; default reference
    std::uint64_t seed = 20240814;      ///< master seed for all random draws
    std::map<std::string, double> tol;  ///< tolerance overrides by name

    VerifyOptions();
    /** Default tolerances (criteria values); `name` must exist. */
    double tolerance(const std::string& name) const;
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::map<std::string, double> metrics;  ///< named residuals / counters
    std::string message;                    ///< one-line outcome
    double ms = 0;                          ///< wall-clock duration
};

/** The reference tuple (3,1,4,2,3). */
SideLengths reference_lengths();

/** Random side lengths satisfying the transition-theorem hypotheses
 * (rejection-sampled; throws SamplingFailed on budget exhaustion). */
SideLengths sample_hypothesis_tuple(Rng& rng);

/** Names of the twelve suites, in execution order. */
const std::vector<std::string>& verification_suite_names();

/** Runs one suite by name; throws ContractViolation for unknown names. */
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt);

/** Runs all twelve. */
std::vector<SuiteResult> run_all_suites(const VerifyOptions& opt);

/** True when every non-skipped suite passed. */
bool all_passed(const std::vector<SuiteResult>& results);

/** {schema, suites: [{name, pass, skipped, ms, message, metrics}...], pass}. */
Json suites_to_json(const std::vector<SuiteResult>& results);

} // namespace pentabend

#endif
