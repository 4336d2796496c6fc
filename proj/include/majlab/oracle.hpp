#pragma once

#include <cstdint>
#include <exception>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "majlab/bitstring.hpp"
#include "majlab/rng.hpp"

namespace majlab {

enum class QueryKind : std::uint8_t { Bit, Xor, Parity };

struct TraceEntry {
    QueryKind kind;
    std::vector<std::uint32_t> indices;
    int answer;
};

// Tally of queries charged so far.  Every query kind costs one unit.
// quantum_queries counts black-box unitary applications in the quantum
// replay layer; it is bookkept separately and never enters total().
struct QueryLedger {
    std::uint64_t bit_queries = 0;
    std::uint64_t xor_queries = 0;
    std::uint64_t parity_queries = 0;
    std::uint64_t quantum_queries = 0;
    bool tracing = false;
    std::vector<TraceEntry> trace;

    std::uint64_t total() const { return bit_queries + xor_queries + parity_queries; }
};

// Raised when a query would exceed the oracle's budget.  The query is
// not issued and not charged; the ledger stays at exactly the budget.
// A separate type (not logic_error) so callers can recover from budget
// exhaustion without masking genuine programming errors.
struct BudgetExhausted final : std::exception {
    const char* what() const noexcept override { return "query budget exhausted"; }
};

// Access point for an input bit string.  Algorithms see the input only
// through queries; every query is counted and, optionally, traced.
// The oracle borrows the input (caller keeps it alive) and a budget, if
// set, caps total() across all query kinds.
class CountingOracle {
public:
    explicit CountingOracle(const BitString& input,
                            bool tracing = false,
                            std::optional<std::uint64_t> budget = std::nullopt)
        : input_(&input), budget_(budget) {
        ledger_.tracing = tracing;
    }

    std::size_t length() const { return input_->length(); }
    const QueryLedger& ledger() const { return ledger_; }
    std::optional<std::uint64_t> budget() const { return budget_; }

    // Value of X_i.
    int query_bit(std::uint32_t i) {
        check_index(i);
        charge();
        ++ledger_.bit_queries;
        const int answer = input_->bit(i);
        record(QueryKind::Bit, {i}, answer);
        return answer;
    }

    // Value of X_i xor X_j, i != j.
    int query_xor(std::uint32_t i, std::uint32_t j) {
        check_index(i);
        check_index(j);
        if (i == j) throw std::invalid_argument("query_xor: indices must differ");
        charge();
        ++ledger_.xor_queries;
        const int answer = input_->bit(i) ^ input_->bit(j);
        record(QueryKind::Xor, {i, j}, answer);
        return answer;
    }

    // Parity of X over a nonempty set of distinct in-range indices.
    int query_parity(std::span<const std::uint32_t> indices) {
        if (indices.empty()) throw std::invalid_argument("query_parity: empty index set");
        for (std::size_t a = 0; a < indices.size(); ++a) {
            check_index(indices[a]);
            for (std::size_t b = a + 1; b < indices.size(); ++b) {
                if (indices[a] == indices[b])
                    throw std::invalid_argument("query_parity: repeated index");
            }
        }
        charge();
        ++ledger_.parity_queries;
        int answer = 0;
        for (std::uint32_t i : indices) answer ^= input_->bit(i);
        record(QueryKind::Parity, {indices.begin(), indices.end()}, answer);
        return answer;
    }

private:
    void check_index(std::uint32_t i) const {
        if (i >= input_->length()) throw std::out_of_range("oracle query: index out of range");
    }

    void charge() const {
        if (budget_ && ledger_.total() + 1 > *budget_) throw BudgetExhausted{};
    }

    void record(QueryKind kind, std::vector<std::uint32_t> indices, int answer) {
        if (ledger_.tracing) ledger_.trace.push_back({kind, std::move(indices), answer});
    }

    const BitString* input_;
    QueryLedger ledger_;
    std::optional<std::uint64_t> budget_;
};

// Uniformly random rearrangement of X.  Returns the permuted string X'
// and the permutation pi with X'_i = X_{pi(i)}.  Counts are preserved,
// so the majority label is too.  Deterministic for a given generator
// state; the convenience overload uses stream (seed, 0).
inline std::pair<BitString, std::vector<std::uint32_t>>
permute_input(const BitString& x, CounterRng& rng) {
    std::vector<std::uint32_t> pi(x.length());
    std::iota(pi.begin(), pi.end(), 0u);
    rng.shuffle(pi);
    std::vector<std::uint8_t> bits(x.length());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = static_cast<std::uint8_t>(x.bit(pi[i]));
    return {BitString(std::move(bits)), std::move(pi)};
}

inline std::pair<BitString, std::vector<std::uint32_t>>
permute_input(const BitString& x, std::uint64_t seed) {
    CounterRng rng(seed, 0);
    return permute_input(x, rng);
}

} // namespace majlab
