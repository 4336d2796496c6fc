#include "majlab/bruteforce.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

#include "majlab/blocks.hpp"

namespace majlab::bruteforce {

namespace {

int parity_of(std::uint32_t input, std::uint32_t mask) {
    return std::popcount(input & mask) & 1;
}

struct DepthSearch {
    std::uint32_t n;
    std::uint64_t full_state;
    std::vector<std::uint64_t> answer_one;      // per query: inputs answering 1
    std::vector<std::uint64_t> label_members;   // per label: inputs with that label
    std::unordered_map<KnowledgeState, std::uint32_t> memo;
    bool reversed = false;

    bool terminal(KnowledgeState s) const {
        for (std::uint64_t members : label_members) {
            if ((s & ~members) == 0) return true;
        }
        return false;
    }

    std::uint32_t solve(KnowledgeState s) {
        if (terminal(s)) return 0;
        if (auto it = memo.find(s); it != memo.end()) return it->second;
        std::uint32_t best = ~std::uint32_t{0};
        const std::size_t q_count = answer_one.size();
        for (std::size_t step = 0; step < q_count; ++step) {
            const std::size_t q = reversed ? q_count - 1 - step : step;
            const KnowledgeState s1 = s & answer_one[q];
            const KnowledgeState s0 = s & ~answer_one[q];
            if (s0 == 0 || s1 == 0) continue; // answer forced, no information
            const std::uint32_t d = 1 + std::max(solve(s0), solve(s1));
            best = std::min(best, d);
        }
        if (best == ~std::uint32_t{0})
            throw std::logic_error("optimal_depth: non-terminal state with no informative query");
        memo.emplace(s, best);
        return best;
    }
};

} // namespace

std::uint32_t optimal_depth(std::uint32_t n, QueryFamily family, TargetMode target,
                            DepthOptions options) {
    if (n < 1) throw std::invalid_argument("optimal_depth: n must be >= 1");
    if (family == QueryFamily::XorAndBits && n > 5)
        throw std::invalid_argument("optimal_depth: XOR_AND_BITS search limited to n <= 5");
    if (family == QueryFamily::AllParities && n > 4)
        throw std::invalid_argument("optimal_depth: ALL_PARITIES search limited to n <= 4");

    DepthSearch search;
    search.n = n;
    search.reversed = options.reverse_query_order;
    const std::uint32_t inputs = 1u << n;
    search.full_state = inputs == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << inputs) - 1;

    // Queries are parity masks: single bits and pairs for XOR_AND_BITS,
    // every nonempty subset for ALL_PARITIES.
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const int pc = std::popcount(mask);
        if (family == QueryFamily::XorAndBits && pc > 2) continue;
        std::uint64_t ones = 0;
        for (std::uint32_t x = 0; x < inputs; ++x) {
            if (parity_of(x, mask)) ones |= std::uint64_t{1} << x;
        }
        search.answer_one.push_back(ones);
    }

    const auto label_of = [&](std::uint32_t x) -> int {
        const int a = std::popcount(x);
        const int b = static_cast<int>(n) - a;
        if (a > b) return 1;
        if (b > a) return 0;
        return target == TargetMode::WeakMajority ? 1 : 2;
    };
    search.label_members.assign(target == TargetMode::WeakMajority ? 2 : 3, 0);
    for (std::uint32_t x = 0; x < inputs; ++x)
        search.label_members[static_cast<std::size_t>(label_of(x))] |= std::uint64_t{1} << x;

    return search.solve(search.full_state);
}

Rational exact_first_phase_cancellations(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t n = a + b;
    if (n < 2 || n > 16) throw std::invalid_argument("exact_first_phase_cancellations: need 2 <= a+b <= 16");
    long long cancelled = 0;
    long long strings = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::uint32_t>(std::popcount(mask)) != a) continue;
        ++strings;
        for (std::uint32_t p = 0; 2 * p + 1 < n; ++p)
            cancelled += ((mask >> (2 * p)) ^ (mask >> (2 * p + 1))) & 1u;
    }
    return Rational(cancelled, strings);
}

MDistribution exact_M_distribution(std::uint32_t a, std::uint32_t b) {
    if (a < b) throw std::invalid_argument("exact_M_distribution: requires a >= b");
    const std::uint32_t n = a + b;
    if (n < 1 || n > 16) throw std::invalid_argument("exact_M_distribution: need 1 <= a+b <= 16");

    MDistribution out;
    out.n = n;
    out.a = a;
    out.b = b;
    std::vector<long long> counts(n + 1, 0);
    long long strings = 0;
    const std::uint32_t need = n / 2 + 1;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::uint32_t>(std::popcount(mask)) != a) continue;
        ++strings;
        if (a == b) {
            ++counts[n];
            continue;
        }
        std::uint32_t seen = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1u) {
                if (++seen == need) {
                    ++counts[i + 1];
                    break;
                }
            }
        }
    }
    out.pmf.assign(n + 1, Rational(0));
    out.expected = Rational(0);
    for (std::uint32_t m = 1; m <= n; ++m) {
        out.pmf[m] = Rational(counts[m], strings);
        out.expected += Rational(static_cast<long long>(m)) * out.pmf[m];
    }
    return out;
}

Rational exact_prefix_ones_expectation(std::uint32_t a, std::uint32_t b, std::uint32_t k) {
    const std::uint32_t n = a + b;
    if (n < 1 || n > 16) throw std::invalid_argument("exact_prefix_ones_expectation: need 1 <= a+b <= 16");
    if (k > n) throw std::invalid_argument("exact_prefix_ones_expectation: k must be <= a+b");
    const std::uint32_t prefix_mask = k == 32 ? ~0u : (1u << k) - 1;
    long long total = 0;
    long long strings = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::uint32_t>(std::popcount(mask)) != a) continue;
        ++strings;
        total += std::popcount(mask & prefix_mask);
    }
    return Rational(total, strings);
}

CostCensus exhaustive_cost_census(std::uint32_t n, Algorithm algorithm) {
    if (n > 14) throw std::invalid_argument("exhaustive_cost_census: limited to n <= 14");
    CostCensus census;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const BitString x = BitString::from_mask(mask, n);
        CountingOracle oracle(x);
        const RunResult r = run_algorithm(algorithm, oracle);
        const auto a = static_cast<std::uint32_t>(x.ones());
        auto& entry = census[{a, n - a}];
        entry.min_comparisons = std::min(entry.min_comparisons, r.comparisons);
        entry.max_comparisons = std::max(entry.max_comparisons, r.comparisons);
        entry.sum_comparisons += r.comparisons;
        entry.inputs += 1;
    }
    return census;
}

// ---------------------------------------------------------------------
// Audited replays.
// ---------------------------------------------------------------------

RunResult reference_oblivious(CountingOracle& oracle, ReplayAudit* audit) {
    const std::uint64_t n = oracle.length();
    auto list = BlockList<FullBlock>::singletons(static_cast<std::uint32_t>(n));
    std::uint64_t cancels = 0;

    const std::uint32_t phases = n >= 2 ? static_cast<std::uint32_t>(std::bit_width(n) - 1) : 0;
    for (std::uint32_t k = 1; k <= phases; ++k) {
        const std::uint64_t pair_size = std::uint64_t{1} << (k - 1);
        for (;;) {
            // Leftmost adjacent pair of blocks of the phase size.
            std::uint64_t found = 0;
            for (std::uint64_t j = 1; j + 1 <= list.count(); ++j) {
                if (list.size_at(j) == pair_size && list.size_at(j + 1) == pair_size) {
                    found = j;
                    break;
                }
            }
            if (found == 0) break;
            const CombineOutcome outcome = list.combine_equal(found, oracle);
            if (outcome == CombineOutcome::CancelledBoth) ++cancels;
            list.check_invariants(ListMode::oblivious_phase(k));
            // Query accounting in the equal-size regime: every combine
            // costs one comparison, so N - l - c must equal the count.
            if (oracle.ledger().xor_queries != n - list.count() - cancels)
                throw std::logic_error("reference_oblivious: query accounting broken");
            if (audit) ++audit->combines;
        }
    }
    if (audit) audit->full_cancellations = cancels;

    if (list.count() == 0) return detail::finish(Verdict::Tie, oracle);
    if (!list.dominant_block())
        throw std::logic_error("reference_oblivious: front block fails to dominate");
    const int value = oracle.query_bit(list.at(1).rep());
    return detail::finish(value ? Verdict::One : Verdict::Zero, oracle);
}

RunResult reference_greedy(CountingOracle& oracle, ReplayAudit* audit) {
    const std::uint64_t n = oracle.length();
    auto list = BlockList<FullBlock>::singletons(static_cast<std::uint32_t>(n));

    while (list.count() > 0) {
        const std::uint64_t l = list.count();
        std::uint64_t total = 0;
        for (std::uint64_t j = 1; j <= l; ++j) total += list.size_at(j);
        if (2 * list.size_at(1) > total) break;

        const auto exponent = [&](std::uint64_t j) {
            return j == 1 ? std::countr_zero(list.size_at(1))
                          : std::bit_width(list.size_at(j)) - 1;
        };
        std::uint64_t chosen = 0;
        for (std::uint64_t j = 1; j + 1 <= l; ++j) {
            if (exponent(j) == exponent(j + 1)) {
                chosen = j;
                break;
            }
        }
        if (chosen == 0) throw std::logic_error("reference_greedy: no combinable pair in loop");
        std::uint64_t prefix = 0;
        for (std::uint64_t j = 1; j <= chosen; ++j) prefix += list.size_at(j);
        if (2 * prefix > total) chosen = 1;

        const CombineOutcome outcome = list.combine_general(chosen, oracle);
        list.check_invariants(ListMode::greedy());
        if (audit) {
            ++audit->combines;
            if (outcome == CombineOutcome::CancelledBoth) ++audit->full_cancellations;
        }
    }

    if (list.count() == 0) return detail::finish(Verdict::Tie, oracle);
    const int value = oracle.query_bit(list.at(1).rep());
    return detail::finish(value ? Verdict::One : Verdict::Zero, oracle);
}

} // namespace majlab::bruteforce
