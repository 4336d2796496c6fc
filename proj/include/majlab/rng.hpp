#pragma once

#include <cstdint>
#include <vector>

namespace majlab {

// =====================================================================
// Counter-based pseudo-random generator (SplitMix64 core).
//
// Every consumer of randomness in this project draws from a CounterRng.
// A generator is identified by a (master_seed, stream) pair: output n of
// stream s is a pure function of (master_seed, s, n).  Experiments give
// trial t the stream (master_seed, t), so a trial's sample is the same
// no matter which thread runs it or in which order trials complete.
//
// Draw-order contracts (relied on for reproducibility, do not change):
//   * shuffle() walks i = n-1 .. 1 and swaps a[i] with a[bounded(i+1)].
//   * fill_bits() consumes one 64-bit word per 64 bits, LSB first.
// =====================================================================
class CounterRng {
public:
    CounterRng(std::uint64_t master_seed, std::uint64_t stream)
        : key_(mix64(mix64(master_seed + GOLDEN) ^ mix64(stream + LEAF))) {}

    // Next raw 64-bit output.  SplitMix64: a strong finalizer applied to
    // an affine counter, so the sequence is seekable and allocation-free.
    std::uint64_t next_u64() {
        counter_ += GOLDEN;
        return mix64(key_ + counter_);
    }

    // Uniform integer in [0, n).  Rejection threshold keeps it unbiased:
    // values below 2^64 mod n are discarded instead of wrapping.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool coin(double p) { return next_double() < p; }

    // Unbiased Fisher-Yates shuffle (see draw-order contract above).
    template <class T>
    void shuffle(std::vector<T>& a) {
        for (std::uint64_t i = a.size(); i > 1; --i) {
            const std::uint64_t j = bounded(i);
            std::swap(a[i - 1], a[j]);
        }
    }

    // n fair coin flips packed LSB-first from consecutive words.
    void fill_bits(std::vector<std::uint8_t>& out, std::uint64_t n) {
        out.resize(n);
        std::uint64_t word = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (i % 64 == 0) word = next_u64();
            out[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
        }
    }

private:
    static constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t LEAF = 0x6A09E667F3BCC909ULL;

    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace majlab
