#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "majlab/algorithms.hpp"
#include "majlab/oracle.hpp"
#include "majlab/rational.hpp"

namespace majlab::bruteforce {

// ---------------------------------------------------------------------
// Exhaustive ground truth for small N.  Everything here is exact:
// expectations are rationals, depths come from full minimax search, and
// the reference replays recheck every structural invariant after every
// query.  Nothing in this module samples.
// ---------------------------------------------------------------------

// A set of inputs still consistent with the answers seen so far,
// as a bitset over all 2^N inputs (bit x = input mask x).  Canonical,
// hence directly usable as a memo key.
using KnowledgeState = std::uint64_t;

enum class QueryFamily : std::uint8_t { XorAndBits, AllParities };
enum class TargetMode : std::uint8_t { WeakMajority, ThreeWay };

struct DepthOptions {
    // Enumerate candidate queries high-to-low instead of low-to-high;
    // the minimax value must not depend on it.
    bool reverse_query_order = false;
};

// Worst-case query count of an optimal adversarial decision tree that
// pins down the majority label.  WeakMajority folds ties into One;
// ThreeWay demands the full label.  Memoized minimax over knowledge
// states; feasible for N <= 5 (XOR_AND_BITS) and N <= 4 (ALL_PARITIES).
std::uint32_t optimal_depth(std::uint32_t n, QueryFamily family,
                            TargetMode target = TargetMode::WeakMajority,
                            DepthOptions options = {});

// Expected number of cancelled pairs when the 2x2 pairing
// (0,1)(2,3)... is applied to a uniformly random string with a ones
// and b zeros.  Exact enumeration over all C(a+b, a) strings.
Rational exact_first_phase_cancellations(std::uint32_t a, std::uint32_t b);

// Distribution of the one-based position M by which a strict majority
// of ones has appeared (M = N when a == b).  Requires a >= b.
struct MDistribution {
    std::uint32_t n = 0;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::vector<Rational> pmf; // pmf[m], m = 0..n; entries below index 1 unused
    Rational expected;
};
MDistribution exact_M_distribution(std::uint32_t a, std::uint32_t b);

// Expected number of ones among the first k positions of a uniformly
// random (a, b)-string; equals k a / (a + b) and is enumerated, not
// assumed.
Rational exact_prefix_ones_expectation(std::uint32_t a, std::uint32_t b, std::uint32_t k);

// Comparison-count statistics of a deterministic algorithm over every
// input of length n, bucketed by input class (a, b).  The per-class
// mean equals the expected cost of the rearrangement-randomized run on
// any input of that class, since a uniformly rearranged (a, b)-string
// is a uniform (a, b)-string.
struct CensusEntry {
    std::uint64_t min_comparisons = ~std::uint64_t{0};
    std::uint64_t max_comparisons = 0;
    std::uint64_t sum_comparisons = 0;
    std::uint64_t inputs = 0;
    Rational mean() const {
        return Rational(static_cast<long long>(sum_comparisons), static_cast<long long>(inputs));
    }
};
using CostCensus = std::map<std::pair<std::uint32_t, std::uint32_t>, CensusEntry>;
CostCensus exhaustive_cost_census(std::uint32_t n, Algorithm algorithm);

// Slow-and-obvious replays of the two pairing algorithms, driven
// position by position through the audited block-list operations, with
// every structural invariant rechecked after every combine.  The fast
// implementations must match these query for query.
struct ReplayAudit {
    std::uint64_t full_cancellations = 0; // equal-size discards seen
    std::uint64_t combines = 0;
};
RunResult reference_oblivious(CountingOracle& oracle, ReplayAudit* audit = nullptr);
RunResult reference_greedy(CountingOracle& oracle, ReplayAudit* audit = nullptr);

} // namespace majlab::bruteforce
