#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "majlab/bitstring.hpp"
#include "majlab/blocks.hpp"
#include "majlab/oracle.hpp"
#include "majlab/rng.hpp"

using namespace majlab;

TEST_CASE("singleton list starts in index order") {
    const auto list = BlockList<FullBlock>::singletons(5);
    CHECK(list.count() == 5);
    CHECK(list.total_mass() == 5);
    for (std::uint64_t pos = 1; pos <= 5; ++pos) {
        CHECK(list.size_at(pos) == 1);
        CHECK(list.at(pos).rep() == pos - 1);
    }
    list.check_invariants(ListMode::general());
}

TEST_CASE("equal combine merges on agreement") {
    const BitString x = BitString::parse("00");
    CountingOracle oracle(x);
    auto list = BlockList<FullBlock>::singletons(2);
    CHECK(list.combine_equal(1, oracle) == CombineOutcome::Merged);
    CHECK(list.count() == 1);
    CHECK(list.total_mass() == 2);
    CHECK(list.at(1).rep() == 0);
    CHECK(list.at(1).idx == std::vector<std::uint32_t>{0, 1});
    CHECK(oracle.ledger().xor_queries == 1);
    list.check_invariants(ListMode::general());
}

TEST_CASE("equal combine discards both on disagreement") {
    const BitString x = BitString::parse("01");
    CountingOracle oracle(x);
    auto list = BlockList<FullBlock>::singletons(2);
    CHECK(list.combine_equal(1, oracle) == CombineOutcome::CancelledBoth);
    CHECK(list.count() == 0);
    CHECK(list.total_mass() == 0);
    list.check_invariants(ListMode::general());
}

TEST_CASE("general combine shrinks the larger block") {
    const BitString x = BitString::parse("110");
    CountingOracle oracle(x);
    auto list = BlockList<FullBlock>::singletons(3);
    REQUIRE(list.combine_equal(1, oracle) == CombineOutcome::Merged); // {0,1}
    CHECK(list.sizes() == std::vector<std::uint64_t>{2, 1});
    CHECK(list.combine_general(1, oracle) == CombineOutcome::Shrunk); // vs {2}
    CHECK(list.sizes() == std::vector<std::uint64_t>{1});
    CHECK(list.total_mass() == 1);
    CHECK(list.at(1).rep() == 0); // the representative survives a shrink
    list.check_invariants(ListMode::general());
}

TEST_CASE("combine preconditions are enforced") {
    const BitString x = BitString::parse("000");
    CountingOracle oracle(x);
    auto list = BlockList<FullBlock>::singletons(3);
    REQUIRE(list.combine_equal(1, oracle) == CombineOutcome::Merged);
    // sizes now [2, 1]
    CHECK_THROWS_AS(list.combine_equal(1, oracle), std::logic_error);
    CHECK_THROWS_AS(list.combine_general(2, oracle), std::out_of_range);
    CHECK_THROWS_AS((void)list.at(0), std::out_of_range);
    CHECK_THROWS_AS((void)list.at(3), std::out_of_range);
}

TEST_CASE("dominant block requires an outright mass majority") {
    const BitString x = BitString::parse("0000");
    CountingOracle oracle(x);
    auto list = BlockList<FullBlock>::singletons(4);
    CHECK(!list.dominant_block().has_value()); // 1,1,1,1
    REQUIRE(list.combine_equal(1, oracle) == CombineOutcome::Merged);
    CHECK(!list.dominant_block().has_value()); // 2,1,1: 4 > 4 fails
    REQUIRE(list.combine_general(1, oracle) == CombineOutcome::Merged);
    CHECK(list.dominant_block() == 1); // 3,1
}

namespace {

// Positions where an equal-size combine is legal: the pair must match
// in size, and a merge (doubling S_pos) may not overtake the block in
// front of it, or the nonincreasing-size contract would break.
template <class BlockT>
std::vector<std::uint64_t> equal_pairs(const BlockList<BlockT>& list) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t pos = 1; pos + 1 <= list.count(); ++pos) {
        if (list.size_at(pos) != list.size_at(pos + 1)) continue;
        if (pos > 1 && list.size_at(pos - 1) < 2 * list.size_at(pos)) continue;
        out.push_back(pos);
    }
    return out;
}

} // namespace

TEST_CASE("random combine sequences keep every structural promise") {
    // Exhaustive over inputs up to N=8, several random combine orders
    // each: after every step the list invariants hold, the query count
    // obeys  xor = N - blocks - cancels,  surviving blocks are
    // homogeneous in the underlying string, and the discarded positions
    // always split evenly between ones and zeros.
    for (std::uint32_t n = 2; n <= 8; ++n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            const BitString x = BitString::from_mask(mask, n);
            for (std::uint64_t variant = 0; variant < 3; ++variant) {
                CounterRng rng(mask * 8 + variant, n);
                CountingOracle oracle(x);
                auto list = BlockList<FullBlock>::singletons(n);
                std::uint64_t cancels = 0;
                for (;;) {
                    const auto pairs = equal_pairs(list);
                    if (pairs.empty()) break;
                    const auto pos = pairs[rng.bounded(pairs.size())];
                    if (list.combine_equal(pos, oracle) == CombineOutcome::CancelledBoth)
                        ++cancels;
                    list.check_invariants(ListMode::general());
                    CHECK(oracle.ledger().xor_queries == n - list.count() - cancels);
                }
                std::set<std::uint32_t> survivors;
                for (std::uint64_t pos = 1; pos <= list.count(); ++pos) {
                    const FullBlock& blk = list.at(pos);
                    CHECK(blk.rep() == *std::min_element(blk.idx.begin(), blk.idx.end()));
                    for (std::uint32_t i : blk.idx) {
                        CHECK(x.bit(i) == x.bit(blk.rep())); // homogeneous
                        survivors.insert(i);
                    }
                }
                std::uint64_t discarded_ones = 0, discarded = 0;
                for (std::uint32_t i = 0; i < n; ++i) {
                    if (survivors.count(i)) continue;
                    ++discarded;
                    discarded_ones += static_cast<std::uint64_t>(x.bit(i));
                }
                CHECK(discarded == 2 * discarded_ones); // even split
            }
        }
    }
}

TEST_CASE("compact blocks mirror full blocks combine for combine") {
    // Same combine decisions, same representatives, same masses.
    for (std::uint64_t mask = 0; mask < (1u << 10); ++mask) {
        const BitString x = BitString::from_mask(mask, 10);
        CounterRng rng(mask, 99);
        CountingOracle of(x), oc(x);
        auto full = BlockList<FullBlock>::singletons(10);
        auto compact = BlockList<CompactBlock>::singletons(10);
        for (;;) {
            const auto pairs = equal_pairs(full);
            CHECK(pairs == equal_pairs(compact));
            if (pairs.empty()) break;
            const auto pos = pairs[rng.bounded(pairs.size())];
            CHECK(full.combine_equal(pos, of) == compact.combine_equal(pos, oc));
            CHECK(full.count() == compact.count());
            CHECK(full.total_mass() == compact.total_mass());
            for (std::uint64_t p = 1; p <= full.count(); ++p) {
                CHECK(full.at(p).rep() == compact.at(p).rep());
                CHECK(full.size_at(p) == compact.size_at(p));
            }
            compact.check_invariants(ListMode::general());
        }
    }
}

TEST_CASE("greedy-shape invariant flags a bad list") {
    // sizes [3, 2]: S_2 is a power of two but the exponent order
    // v2(3) = 0 < 1 = log2(2) violates the greedy shape.
    const BitString x = BitString::parse("00000");
    CountingOracle oracle(x);
    auto list = BlockList<FullBlock>::singletons(5);
    REQUIRE(list.combine_equal(1, oracle) == CombineOutcome::Merged);   // [2,1,1,1]
    list.check_invariants(ListMode::greedy());
    REQUIRE(list.combine_general(1, oracle) == CombineOutcome::Merged); // [3,1,1]
    list.check_invariants(ListMode::greedy());
    REQUIRE(list.combine_equal(2, oracle) == CombineOutcome::Merged);   // [3,2]
    CHECK_THROWS_AS(list.check_invariants(ListMode::greedy()), std::logic_error);
}

TEST_CASE("phase invariant rejects duplicate leftovers") {
    // Phase 2 tolerates at most one block of each size below 2: two
    // singletons must trip the audit.
    const auto list = BlockList<FullBlock>::singletons(2);
    list.check_invariants(ListMode::oblivious_phase(1));
    CHECK_THROWS_AS(list.check_invariants(ListMode::oblivious_phase(2)), std::logic_error);
}
