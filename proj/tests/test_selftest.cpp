#include <doctest.h>

#include "conf4/selftest.hpp"

using namespace conf4;

TEST_CASE("selftest suites all pass and are deterministic per seed") {
    const std::vector<SuiteResult> a = run_selftest(42);
    CHECK(a.size() == 24);
    for (const auto& r : a) {
        INFO(r.name, ": ", r.detail);
        CHECK(r.passed);
    }

    // Same seed reproduces the same worst values and the same JSON bytes.
    const std::vector<SuiteResult> b = run_selftest(42);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].worst == b[i].worst);
    CHECK(selftest_to_json(42, a) == selftest_to_json(42, b));

    // A different seed still passes.
    for (const auto& r : run_selftest(7)) {
        INFO(r.name, ": ", r.detail);
        CHECK(r.passed);
    }
}
