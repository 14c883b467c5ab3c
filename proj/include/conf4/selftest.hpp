#ifndef CONF4_SELFTEST_HPP
#define CONF4_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace conf4 {

struct SuiteResult {
    std::string name;
    bool passed;
    int trials;
    double worst;       // worst observed margin/error, suite-specific sense
    double tolerance;   // threshold it was compared against
    std::string detail;
};

/// Runs every randomized invariant suite across the modules with the
/// given seed. Deterministic per (seed, build).
std::vector<SuiteResult> run_selftest(uint64_t seed);

/// Summary JSON for the suite list.
std::string selftest_to_json(uint64_t seed, const std::vector<SuiteResult>& results);

}  // namespace conf4

#endif
