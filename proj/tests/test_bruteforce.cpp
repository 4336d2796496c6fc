#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstdint>
#include <vector>

#include "majlab/bitstring.hpp"
#include "majlab/bruteforce.hpp"

using namespace majlab;
using namespace majlab::bruteforce;

TEST_CASE("minimax depths for the pair-query family") {
    const std::vector<std::uint32_t> expect{1, 2, 2, 4, 4};
    for (std::uint32_t n = 1; n <= 5; ++n) {
        const std::uint32_t d = optimal_depth(n, QueryFamily::XorAndBits);
        CHECK(d == expect[n - 1]);
        CHECK(d == n + 1 - static_cast<std::uint32_t>(std::popcount(n)));
    }
    CHECK_THROWS_AS(optimal_depth(6, QueryFamily::XorAndBits), std::invalid_argument);
}

TEST_CASE("minimax depths with every parity available") {
    // Unrestricted parities buy nothing at these sizes.
    for (std::uint32_t n = 1; n <= 4; ++n)
        CHECK(optimal_depth(n, QueryFamily::AllParities) ==
              n + 1 - static_cast<std::uint32_t>(std::popcount(n)));
    CHECK_THROWS_AS(optimal_depth(5, QueryFamily::AllParities), std::invalid_argument);
}

TEST_CASE("minimax value ignores query enumeration order") {
    for (std::uint32_t n = 1; n <= 5; ++n) {
        DepthOptions reversed;
        reversed.reverse_query_order = true;
        CHECK(optimal_depth(n, QueryFamily::XorAndBits) ==
              optimal_depth(n, QueryFamily::XorAndBits, TargetMode::WeakMajority, reversed));
    }
}

TEST_CASE("three-way resolution never beats the weak target") {
    for (std::uint32_t n = 1; n <= 5; ++n)
        CHECK(optimal_depth(n, QueryFamily::XorAndBits, TargetMode::ThreeWay) >=
              optimal_depth(n, QueryFamily::XorAndBits, TargetMode::WeakMajority));
}

TEST_CASE("first-pass cancellation expectations") {
    CHECK(exact_first_phase_cancellations(1, 1) == Rational(1));
    CHECK(exact_first_phase_cancellations(2, 0) == Rational(0));
    CHECK(exact_first_phase_cancellations(0, 3) == Rational(0));
    CHECK(exact_first_phase_cancellations(2, 2) == Rational(4, 3));
    // Even N: AB/(N-1).
    CHECK(exact_first_phase_cancellations(5, 3) == Rational(15, 7));
    // Odd N leaves one position unpaired: AB/N.
    CHECK(exact_first_phase_cancellations(3, 2) == Rational(6, 5));
}

TEST_CASE("majority-cut distribution at pinned classes") {
    const MDistribution d31 = exact_M_distribution(3, 1);
    CHECK(d31.pmf[3] == Rational(1, 4));
    CHECK(d31.pmf[4] == Rational(3, 4));
    CHECK(d31.expected == Rational(15, 4));

    // Balanced classes put all mass at N.
    const MDistribution d22 = exact_M_distribution(2, 2);
    CHECK(d22.pmf[4] == Rational(1));
    CHECK(d22.expected == Rational(4));

    const MDistribution d10 = exact_M_distribution(1, 0);
    CHECK(d10.pmf[1] == Rational(1));

    // (4,2): the fourth one lands at position 4, 5, or 6.
    const MDistribution d42 = exact_M_distribution(4, 2);
    CHECK(d42.pmf[4] == Rational(1, 15));
    CHECK(d42.pmf[5] == Rational(4, 15));
    CHECK(d42.pmf[6] == Rational(10, 15));
    CHECK(d42.expected == Rational(28, 5));

    CHECK_THROWS_AS(exact_M_distribution(1, 2), std::invalid_argument);
}

TEST_CASE("majority-cut distributions are proper") {
    for (std::uint32_t n = 1; n <= 12; ++n) {
        for (std::uint32_t a = (n + 1) / 2; a <= n; ++a) {
            const MDistribution d = exact_M_distribution(a, n - a);
            Rational total(0), mean(0);
            for (std::uint32_t m = 0; m < d.pmf.size(); ++m) {
                total += d.pmf[m];
                mean += Rational(m) * d.pmf[m];
            }
            CHECK(total == Rational(1));
            CHECK(mean == d.expected);
        }
    }
}

TEST_CASE("prefix one-count expectations") {
    CHECK(exact_prefix_ones_expectation(2, 2, 0) == Rational(0));
    CHECK(exact_prefix_ones_expectation(2, 2, 2) == Rational(1));
    CHECK(exact_prefix_ones_expectation(3, 1, 2) == Rational(3, 2));
    CHECK(exact_prefix_ones_expectation(1, 3, 4) == Rational(1));
}

TEST_CASE("cost census over every length-4 input") {
    const CostCensus census = exhaustive_cost_census(4, Algorithm::Oblivious);
    // 1111: three merges; 0000 symmetric.
    CHECK(census.at({4, 0}).min_comparisons == 3);
    CHECK(census.at({4, 0}).max_comparisons == 3);
    CHECK(census.at({4, 0}).inputs == 1);
    // Balanced class: 2 or 3 comparisons, mean 7/3 over 6 arrangements.
    const CensusEntry& bal = census.at({2, 2});
    CHECK(bal.min_comparisons == 2);
    CHECK(bal.max_comparisons == 3);
    CHECK(bal.sum_comparisons == 14);
    CHECK(bal.inputs == 6);
    CHECK(bal.mean() == Rational(7, 3));

    std::uint64_t total_inputs = 0;
    for (const auto& [cls, entry] : census) {
        CHECK(entry.inputs == static_cast<std::uint64_t>(1) * entry.inputs);
        total_inputs += entry.inputs;
    }
    CHECK(total_inputs == 16);
}

TEST_CASE("census mean equals the rearranged-run expectation") {
    // A uniformly rearranged (a, b)-input is a uniform (a, b)-string, so
    // the census class mean must match the Monte Carlo mean of the
    // rearranged runs on one fixed representative.
    const CostCensus census = exhaustive_cost_census(8, Algorithm::Greedy);
    const CensusEntry& cls = census.at({4, 4});
    const Rational exact = cls.mean();
    const double want = static_cast<double>(exact.numerator()) /
                        static_cast<double>(exact.denominator());

    const BitString rep = BitString::parse("11110000");
    double sum = 0.0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t)
        sum += static_cast<double>(
            randomized(Algorithm::Greedy, rep, 31, static_cast<std::uint64_t>(t)).comparisons);
    CHECK(std::abs(sum / trials - want) < 0.1);
}

TEST_CASE("audited replays report their combine activity") {
    const BitString alternating = BitString::parse("010101");
    CountingOracle o1(alternating);
    ReplayAudit audit;
    const RunResult r1 = reference_oblivious(o1, &audit);
    CHECK(r1.verdict == Verdict::Tie);
    CHECK(audit.combines == 3);
    CHECK(audit.full_cancellations == 3);

    const BitString ones = BitString::parse("1111111");
    CountingOracle o2(ones);
    ReplayAudit audit2;
    const RunResult r2 = reference_oblivious(o2, &audit2);
    CHECK(r2.total_cost == 5);
    CHECK(audit2.combines == 4);
    CHECK(audit2.full_cancellations == 0);

    CountingOracle o3(ones);
    ReplayAudit audit3;
    const RunResult r3 = reference_greedy(o3, &audit3);
    CHECK(r3.total_cost == 4);
    CHECK(audit3.combines == 3);
}
