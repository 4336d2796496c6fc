#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace majlab::verify {

// One acceptance criterion: a named check with a pinned tolerance,
// evaluated from scratch on every run.  `detail` carries the measured
// numbers so a failure is diagnosable from the one-line report.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

CriterionResult check_worst_case_exact();       //  1: pairing worst case is N+1-w(N)
CriterionResult check_minimax_depths();         //  2: brute-force minimax matches it
CriterionResult check_certificate_bound();      //  3: divisibility bound matches it
CriterionResult check_cost_sandwich();          //  4: greedy cost vs prefix rerun
CriterionResult check_exact_expectations();     //  5: enumerated expectations, closed forms
CriterionResult check_counting_identities();    //  6: floor-sum and factorial valuation
CriterionResult check_balanced_concentration(); //  7: N=4096 balanced-class mean/spread
CriterionResult check_uniform_average();        //  8: N=4096 uniform-class mean
CriterionResult check_truncation_rate();        //  9: budgeted runs stay decisive
CriterionResult check_classical_gap();          // 10: bit-query error floor above 1/4
CriterionResult check_quantum_replay();         // 11: one oracle call per classical query

// Suites: "exact", "sandwich", "appendix", "lowerbounds", "quantum",
// "montecarlo", "all".  Unknown names throw.
std::vector<std::string> suite_names();
std::vector<CriterionResult> run_suite(std::string_view suite);

// Render "[PASS]/[FAIL] <id> <name>: <detail>".
std::string format_line(const CriterionResult& r);

} // namespace majlab::verify
