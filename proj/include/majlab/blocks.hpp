#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "majlab/oracle.hpp"

namespace majlab {

// ---------------------------------------------------------------------
// Homogeneous blocks.  A block is a set of input positions whose bits
// are known (through answered XOR queries) to be pairwise equal; its
// representative is its smallest position.  Two storage flavours share
// one interface:
//   FullBlock    keeps the whole index set (exact replay, audits).
//   CompactBlock keeps only (representative, size) for large-N runs.
// ---------------------------------------------------------------------

struct FullBlock {
    std::vector<std::uint32_t> idx; // sorted ascending

    static FullBlock singleton(std::uint32_t i) { return FullBlock{{i}}; }
    std::uint64_t size() const { return idx.size(); }
    std::uint32_t rep() const { return idx.front(); }

    void merge(FullBlock&& other) {
        const std::size_t mid = idx.size();
        idx.insert(idx.end(), other.idx.begin(), other.idx.end());
        std::inplace_merge(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(mid), idx.end());
    }

    // Drop the k largest positions (the ones cancelled against another
    // block); the representative always survives.
    void shrink(std::uint64_t k) { idx.resize(idx.size() - k); }
};

struct CompactBlock {
    std::uint32_t rep_ = 0;
    std::uint64_t size_ = 0;

    static CompactBlock singleton(std::uint32_t i) { return CompactBlock{i, 1}; }
    std::uint64_t size() const { return size_; }
    std::uint32_t rep() const { return rep_; }
    void merge(CompactBlock&& other) {
        rep_ = std::min(rep_, other.rep_);
        size_ += other.size_;
    }
    void shrink(std::uint64_t k) { size_ -= k; }
};

enum class CombineOutcome : std::uint8_t {
    Merged,        // bits equal: union replaced S_i
    CancelledBoth, // bits unequal, equal sizes: both blocks discarded
    Shrunk         // bits unequal, |S_i| > |S_i+1|: S_i+1 discarded with part of S_i
};

// Which structural invariant to enforce in check_invariants().
struct ListMode {
    enum Kind : std::uint8_t { General, Greedy, ObliviousPhase } kind = General;
    std::uint32_t phase = 0; // for ObliviousPhase: current phase k >= 1

    static ListMode general() { return {General, 0}; }
    static ListMode greedy() { return {Greedy, 0}; }
    static ListMode oblivious_phase(std::uint32_t k) { return {ObliviousPhase, k}; }
};

// Ordered list S_1, ..., S_l of disjoint nonempty blocks, sizes
// nonincreasing.  Positions are 1-based.  Stored back-to-front so that
// the combine activity near S_1 touches only the tail of the vector.
template <class BlockT>
class BlockList {
public:
    static BlockList singletons(std::uint32_t n) {
        BlockList list;
        list.rev_.reserve(n);
        for (std::uint32_t i = n; i > 0; --i) list.rev_.push_back(BlockT::singleton(i - 1));
        list.mass_ = n;
        return list;
    }

    std::uint64_t count() const { return rev_.size(); }
    std::uint64_t total_mass() const { return mass_; }

    const BlockT& at(std::uint64_t pos) const { return rev_[index_of(pos)]; }
    std::uint64_t size_at(std::uint64_t pos) const { return at(pos).size(); }

    // Sizes in list order, for tests and diagnostics.
    std::vector<std::uint64_t> sizes() const {
        std::vector<std::uint64_t> out;
        out.reserve(rev_.size());
        for (auto it = rev_.rbegin(); it != rev_.rend(); ++it) out.push_back(it->size());
        return out;
    }

    // Compare S_pos with S_pos+1 (one XOR query between representatives)
    // and merge or discard.  Equal-size flavour: a mismatch discards both
    // blocks.  Calling it on unequal sizes is a programming error.
    CombineOutcome combine_equal(std::uint64_t pos, CountingOracle& oracle) {
        check_pair(pos);
        const std::uint64_t size_a = size_at(pos);
        const std::uint64_t size_b = size_at(pos + 1);
        if (size_a != size_b)
            throw std::logic_error("combine_equal: blocks have different sizes");
        if (oracle.query_xor(at(pos).rep(), at(pos + 1).rep()) == 0) {
            BlockT b = take(pos + 1);
            rev_[index_of(pos)].merge(std::move(b));
            return CombineOutcome::Merged;
        }
        mass_ -= size_a + size_b;
        drop(pos + 1);
        drop(pos);
        return CombineOutcome::CancelledBoth;
    }

    // General flavour: on a mismatch with |S_pos| > |S_pos+1|, the
    // smaller block cancels one-for-one against the largest positions of
    // the bigger one, which stays in place.
    CombineOutcome combine_general(std::uint64_t pos, CountingOracle& oracle) {
        check_pair(pos);
        const std::uint64_t size_a = size_at(pos);
        const std::uint64_t size_b = size_at(pos + 1);
        if (size_a < size_b)
            throw std::logic_error("combine_general: sizes out of order");
        if (oracle.query_xor(at(pos).rep(), at(pos + 1).rep()) == 0) {
            BlockT b = take(pos + 1);
            rev_[index_of(pos)].merge(std::move(b));
            return CombineOutcome::Merged;
        }
        if (size_a == size_b) {
            mass_ -= size_a + size_b;
            drop(pos + 1);
            drop(pos);
            return CombineOutcome::CancelledBoth;
        }
        rev_[index_of(pos)].shrink(size_b);
        mass_ -= 2 * size_b;
        drop(pos + 1);
        return CombineOutcome::Shrunk;
    }

    // Position of a block holding an outright majority of the surviving
    // mass.  By the nonincreasing-size invariant only S_1 qualifies.
    std::optional<std::uint64_t> dominant_block() const {
        if (!rev_.empty() && 2 * rev_.back().size() > mass_) return 1;
        return std::nullopt;
    }

    // Structural audit; throws on violation.  Cost is linear, intended
    // for replay/debug paths, not for the Monte Carlo hot loop.
    void check_invariants(ListMode mode) const {
        std::uint64_t seen_mass = 0;
        std::vector<std::uint64_t> occupied;
        for (std::size_t i = rev_.size(); i > 0; --i) { // list order
            const BlockT& blk = rev_[i - 1];
            if (blk.size() == 0) throw std::logic_error("block list: empty block");
            if (i < rev_.size() && rev_[i].size() < blk.size())
                throw std::logic_error("block list: sizes increase");
            seen_mass += blk.size();
            collect_indices(blk, occupied);
        }
        if (seen_mass != mass_) throw std::logic_error("block list: stale mass cache");
        std::sort(occupied.begin(), occupied.end());
        if (std::adjacent_find(occupied.begin(), occupied.end()) != occupied.end())
            throw std::logic_error("block list: blocks overlap");

        if (mode.kind == ListMode::Greedy) {
            // All blocks after the first have power-of-two sizes and the
            // exponent sequence s_1 >= s_2 >= ... is nonincreasing, where
            // s_1 is the 2-adic valuation of |S_1|.
            for (std::uint64_t pos = 2; pos <= count(); ++pos) {
                if (!std::has_single_bit(size_at(pos)))
                    throw std::logic_error("greedy list: non-power-of-two block");
            }
            if (count() >= 2) {
                const int s1 = std::countr_zero(size_at(1));
                const int s2 = std::bit_width(size_at(2)) - 1;
                if (s1 < s2) throw std::logic_error("greedy list: exponent order violated");
            }
        } else if (mode.kind == ListMode::ObliviousPhase) {
            // During phase k every size is a power of two, at most 2^k,
            // and sizes below 2^(k-1) appear at most once each.
            std::vector<std::uint64_t> small_sizes;
            for (std::uint64_t pos = 1; pos <= count(); ++pos) {
                const std::uint64_t s = size_at(pos);
                if (!std::has_single_bit(s))
                    throw std::logic_error("oblivious list: non-power-of-two block");
                if (s > (std::uint64_t{1} << mode.phase))
                    throw std::logic_error("oblivious list: block too large for phase");
                if (mode.phase >= 1 && s < (std::uint64_t{1} << (mode.phase - 1)))
                    small_sizes.push_back(s);
            }
            std::sort(small_sizes.begin(), small_sizes.end());
            if (std::adjacent_find(small_sizes.begin(), small_sizes.end()) != small_sizes.end())
                throw std::logic_error("oblivious list: duplicate leftover size");
        }
    }

private:
    std::size_t index_of(std::uint64_t pos) const {
        if (pos < 1 || pos > rev_.size()) throw std::out_of_range("block list: bad position");
        return rev_.size() - static_cast<std::size_t>(pos);
    }

    void check_pair(std::uint64_t pos) const {
        if (pos + 1 > rev_.size()) throw std::out_of_range("block list: no successor block");
    }

    BlockT take(std::uint64_t pos) {
        const std::size_t i = index_of(pos);
        BlockT out = std::move(rev_[i]);
        rev_.erase(rev_.begin() + static_cast<std::ptrdiff_t>(i));
        return out;
    }

    void drop(std::uint64_t pos) { rev_.erase(rev_.begin() + static_cast<std::ptrdiff_t>(index_of(pos))); }

    static void collect_indices(const FullBlock& blk, std::vector<std::uint64_t>& out) {
        for (std::uint32_t i : blk.idx) out.push_back(i);
    }
    static void collect_indices(const CompactBlock& blk, std::vector<std::uint64_t>& out) {
        // Compact blocks carry no index sets; only the representative is
        // checkable for duplication.
        out.push_back(blk.rep());
    }

    std::vector<BlockT> rev_; // rev_.back() is S_1
    std::uint64_t mass_ = 0;
};

} // namespace majlab
