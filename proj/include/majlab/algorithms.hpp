#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

#include "majlab/bitstring.hpp"
#include "majlab/blocks.hpp"
#include "majlab/oracle.hpp"

namespace majlab {

enum class Verdict : std::uint8_t { Zero, One, Tie, Unknown };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Zero: return "Zero";
        case Verdict::One: return "One";
        case Verdict::Tie: return "Tie";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

inline Verdict to_verdict(MajorityLabel label) {
    switch (label) {
        case MajorityLabel::Zero: return Verdict::Zero;
        case MajorityLabel::One: return Verdict::One;
        default: return Verdict::Tie;
    }
}

// Outcome of one majority computation.  comparisons counts XOR queries
// alone; total_cost counts every query of any kind.
struct RunResult {
    Verdict verdict = Verdict::Unknown;
    QueryLedger ledger;
    std::uint64_t comparisons = 0;
    std::uint64_t total_cost = 0;
};

namespace detail {
inline RunResult finish(Verdict v, const CountingOracle& oracle) {
    RunResult r;
    r.verdict = v;
    r.ledger = oracle.ledger();
    r.comparisons = r.ledger.xor_queries;
    r.total_cost = r.ledger.total();
    return r;
}
} // namespace detail

// Baseline: query single bits in index order, stopping as soon as the
// margin among seen bits exceeds the number of unseen bits.
inline RunResult trivial_majority(CountingOracle& oracle) {
    const std::uint64_t n = oracle.length();
    std::int64_t margin = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (static_cast<std::uint64_t>(std::llabs(margin)) > n - i) break;
        margin += oracle.query_bit(static_cast<std::uint32_t>(i)) ? 1 : -1;
    }
    const Verdict v = margin > 0 ? Verdict::One : margin < 0 ? Verdict::Zero : Verdict::Tie;
    return detail::finish(v, oracle);
}

// ---------------------------------------------------------------------
// Oblivious pairing.  Phase k sweeps the block list left to right and
// compares adjacent blocks of size 2^(k-1): equal bits merge in place,
// unequal bits discard both blocks.  The query positions never depend
// on answers, only the bookkeeping does.  After floor(log2 N) phases
// the surviving sizes are distinct powers of two, so the front block
// holds an outright majority and one bit query decides; an empty list
// means the input was balanced.
//
// The sweep below issues queries in exactly the order of repeatedly
// combining at the leftmost eligible pair; a single pass suffices
// because equal-size blocks sit contiguously in a nonincreasing list.
// ---------------------------------------------------------------------
template <class BlockT = FullBlock>
RunResult oblivious_pairing(CountingOracle& oracle) {
    const std::uint64_t n = oracle.length();
    std::vector<BlockT> cur;
    cur.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) cur.push_back(BlockT::singleton(i));

    std::vector<BlockT> next;
    next.reserve(n);
    const std::uint32_t phases = n >= 2 ? static_cast<std::uint32_t>(std::bit_width(n) - 1) : 0;
    for (std::uint32_t k = 1; k <= phases; ++k) {
        const std::uint64_t pair_size = std::uint64_t{1} << (k - 1);
        next.clear();
        std::optional<BlockT> pending;
        for (BlockT& blk : cur) {
            if (blk.size() == pair_size) {
                if (!pending) {
                    pending = std::move(blk);
                } else if (oracle.query_xor(pending->rep(), blk.rep()) == 0) {
                    pending->merge(std::move(blk));
                    next.push_back(std::move(*pending));
                    pending.reset();
                } else {
                    pending.reset();
                }
            } else {
                // Leftover from an earlier phase; pairs of the current
                // size are exhausted (sizes are nonincreasing).
                if (pending) {
                    next.push_back(std::move(*pending));
                    pending.reset();
                }
                next.push_back(std::move(blk));
            }
        }
        if (pending) next.push_back(std::move(*pending));
        cur.swap(next);
    }

    if (cur.empty()) return detail::finish(Verdict::Tie, oracle);
    const int value = oracle.query_bit(cur.front().rep());
    return detail::finish(value ? Verdict::One : Verdict::Zero, oracle);
}

// ---------------------------------------------------------------------
// Greedy pairing.  Grows a leading block until it outweighs everything
// else.  Writing s_1 for the 2-adic valuation of |S_1| and s_j for
// log2 |S_j| (j >= 2), each round combines at the smallest j with
// s_j = s_j+1 -- unless everything up to that j would already outweigh
// the rest even if it agreed, in which case the round combines S_1 with
// S_2 directly.  Mismatched combines at the front shrink S_1 instead of
// discarding it.  The exponent sequence is nonincreasing, so the scan
// for j only ever walks the strictly decreasing prefix: O(log N) per
// round.
// ---------------------------------------------------------------------
template <class BlockT = FullBlock>
RunResult greedy_pairing(CountingOracle& oracle) {
    const std::uint64_t n = oracle.length();
    auto list = BlockList<BlockT>::singletons(static_cast<std::uint32_t>(n));

    while (list.count() > 0) {
        const std::uint64_t front = list.size_at(1);
        if (2 * front > list.total_mass()) break;

        const std::uint64_t l = list.count();
        std::uint64_t chosen = 0;
        std::uint64_t prefix_mass = front;
        int s_prev = std::countr_zero(front);
        for (std::uint64_t j = 2; j <= l; ++j) {
            const std::uint64_t sz = list.size_at(j);
            const int s_cur = std::bit_width(sz) - 1;
            if (s_prev == s_cur) {
                chosen = j - 1;
                break;
            }
            s_prev = s_cur;
            prefix_mass += sz;
        }
        // A strictly decreasing exponent tail would sum below |S_1|,
        // contradicting the loop guard.
        if (chosen == 0) throw std::logic_error("greedy_pairing: no combinable pair in loop");
        if (2 * prefix_mass > list.total_mass()) chosen = 1;
        list.combine_general(chosen, oracle);
    }

    if (list.count() == 0) return detail::finish(Verdict::Tie, oracle);
    const int value = oracle.query_bit(list.at(1).rep());
    return detail::finish(value ? Verdict::One : Verdict::Zero, oracle);
}

enum class Algorithm : std::uint8_t { Trivial, Oblivious, Greedy };
enum class BlockStorage : std::uint8_t { Full, Compact };

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Trivial: return "trivial";
        case Algorithm::Oblivious: return "oblivious";
        case Algorithm::Greedy: return "greedy";
    }
    return "?";
}

inline RunResult run_algorithm(Algorithm a, CountingOracle& oracle,
                               BlockStorage storage = BlockStorage::Full) {
    switch (a) {
        case Algorithm::Trivial:
            return trivial_majority(oracle);
        case Algorithm::Oblivious:
            return storage == BlockStorage::Full ? oblivious_pairing<FullBlock>(oracle)
                                                 : oblivious_pairing<CompactBlock>(oracle);
        case Algorithm::Greedy:
            return storage == BlockStorage::Full ? greedy_pairing<FullBlock>(oracle)
                                                 : greedy_pairing<CompactBlock>(oracle);
    }
    throw std::invalid_argument("run_algorithm: unknown algorithm");
}

// Las Vegas wrapper: rearrange the input uniformly at random (stream
// (master_seed, stream) of the counter generator), then run the
// deterministic algorithm on the rearranged string.  The verdict is
// exact for the original input because rearranging preserves counts.
inline RunResult randomized(Algorithm a, const BitString& x, std::uint64_t master_seed,
                            std::uint64_t stream = 0, bool tracing = false,
                            BlockStorage storage = BlockStorage::Full) {
    CounterRng rng(master_seed, stream);
    auto [shuffled, pi] = permute_input(x, rng);
    CountingOracle oracle(shuffled, tracing);
    return run_algorithm(a, oracle, storage);
}

// Zero-sided-error truncation: run the randomized algorithm with a hard
// query budget.  If the budget runs out the result is Unknown at a cost
// of exactly `budget` (the aborted query is never issued); otherwise
// the run is unchanged.  A verdict, when given, is always correct.
inline RunResult truncated_zero_error(Algorithm a, const BitString& x, std::uint64_t master_seed,
                                      std::uint64_t stream, std::uint64_t budget,
                                      bool tracing = false,
                                      BlockStorage storage = BlockStorage::Full) {
    CounterRng rng(master_seed, stream);
    auto [shuffled, pi] = permute_input(x, rng);
    CountingOracle oracle(shuffled, tracing, budget);
    try {
        return run_algorithm(a, oracle, storage);
    } catch (const BudgetExhausted&) {
        return detail::finish(Verdict::Unknown, oracle);
    }
}

// Query budget that keeps the Unknown rate of the truncated greedy run
// below epsilon: ceil(2N/3 + d * sqrt(N * ln(log2(N) / epsilon))).
// Conventions: the log2 argument is clamped to >= 2, the ln term to
// >= 0, and at epsilon = 1 (every run may answer Unknown) the slack
// term is defined to vanish, leaving plain ceil(2N/3).
inline std::uint64_t default_budget(std::uint64_t n, double epsilon, double d) {
    if (n < 1) throw std::invalid_argument("default_budget: n must be >= 1");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("default_budget: epsilon must be in (0, 1]");
    if (!(d > 0.0)) throw std::invalid_argument("default_budget: d must be positive");
    double term = 0.0;
    if (epsilon < 1.0) {
        const double lg = std::log2(static_cast<double>(std::max<std::uint64_t>(n, 2)));
        term = std::max(std::log(lg / epsilon), 0.0);
    }
    const double cost = 2.0 * static_cast<double>(n) / 3.0 +
                        d * std::sqrt(static_cast<double>(n) * term);
    return static_cast<std::uint64_t>(std::ceil(cost));
}

} // namespace majlab
