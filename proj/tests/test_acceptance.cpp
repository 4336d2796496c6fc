#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>

#include "majlab/verify.hpp"

using namespace majlab::verify;

// Acceptance gate: every criterion re-evaluated from scratch, one
// pass/fail line each.  Tolerances live inside the checks themselves.
TEST_CASE("acceptance criteria") {
    const std::vector<CriterionResult> results = run_suite("all");
    REQUIRE(results.size() == 11);

    bool all = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const CriterionResult& r = results[i];
        CHECK(r.id == static_cast<int>(i) + 1);
        std::cout << format_line(r) << '\n';
        CHECK_MESSAGE(r.passed, format_line(r));
        all = all && r.passed;
    }
    std::cout << (all ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << std::endl;
}

TEST_CASE("suite registry") {
    const auto names = suite_names();
    REQUIRE(names.size() == 7);
    CHECK(names.back() == "all");
    // Exercise the cheap suites only; "all" already ran above.
    CHECK(run_suite("exact").size() == 3);
    CHECK(run_suite("lowerbounds").size() == 2);
    CHECK_THROWS_AS(run_suite("nope"), std::invalid_argument);
}
