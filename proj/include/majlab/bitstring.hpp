#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace majlab {

// Three-way majority label of a bit string.
enum class MajorityLabel : std::uint8_t { Zero, One, Tie };

// The weak convention used by the decision-tree lower bounds: a tie
// counts as One.  Callers opt in explicitly; nothing applies it silently.
inline MajorityLabel weak_label(MajorityLabel label) {
    return label == MajorityLabel::Tie ? MajorityLabel::One : label;
}

inline const char* to_string(MajorityLabel label) {
    switch (label) {
        case MajorityLabel::Zero: return "Zero";
        case MajorityLabel::One: return "One";
        case MajorityLabel::Tie: return "Tie";
    }
    return "?";
}

// Immutable bit string X_0 .. X_{N-1} with cached population counts.
// The empty string is legal and labels as a tie.
class BitString {
public:
    BitString() = default;

    explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        for (std::uint8_t b : bits_) {
            if (b > 1) throw std::invalid_argument("BitString: bits must be 0 or 1");
            ones_ += b;
        }
    }

    // "1101" parses with the leftmost character as X_0.
    static BitString parse(std::string_view text) {
        std::vector<std::uint8_t> bits;
        bits.reserve(text.size());
        for (char c : text) {
            if (c != '0' && c != '1') throw std::invalid_argument("BitString: expected '0'/'1'");
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        return BitString(std::move(bits));
    }

    // Bit i of mask becomes X_i.  Convenient for exhaustive sweeps.
    static BitString from_mask(std::uint64_t mask, std::size_t n) {
        if (n > 64) throw std::invalid_argument("BitString: mask form limited to 64 bits");
        std::vector<std::uint8_t> bits(n);
        for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((mask >> i) & 1u);
        return BitString(std::move(bits));
    }

    static BitString homogeneous(std::size_t n, int value) {
        return BitString(std::vector<std::uint8_t>(n, static_cast<std::uint8_t>(value ? 1 : 0)));
    }

    std::size_t length() const { return bits_.size(); }
    std::size_t ones() const { return ones_; }
    std::size_t zeros() const { return bits_.size() - ones_; }

    // |#ones - #zeros|
    std::size_t discrepancy() const {
        return ones() >= zeros() ? ones() - zeros() : zeros() - ones();
    }

    int bit(std::size_t i) const {
        if (i >= bits_.size()) throw std::out_of_range("BitString: index out of range");
        return bits_[i];
    }

    MajorityLabel majority() const {
        if (ones() > zeros()) return MajorityLabel::One;
        if (zeros() > ones()) return MajorityLabel::Zero;
        return MajorityLabel::Tie;
    }

    BitString prefix(std::size_t m) const {
        if (m > bits_.size()) throw std::out_of_range("BitString: prefix longer than string");
        return BitString(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + m));
    }

    std::string to_string() const {
        std::string s;
        s.reserve(bits_.size());
        for (std::uint8_t b : bits_) s.push_back(static_cast<char>('0' + b));
        return s;
    }

    const std::vector<std::uint8_t>& raw() const { return bits_; }

private:
    std::vector<std::uint8_t> bits_;
    std::size_t ones_ = 0;
};

// One-based cut position M: the first M bits of X already contain a
// strict majority of the whole string.  M is the position of the
// (floor(N/2)+1)-st bit equal to the majority value; for a balanced
// string (no strict majority) M is defined as N.
inline std::size_t majority_prefix_position(const BitString& x) {
    const std::size_t n = x.length();
    if (x.majority() == MajorityLabel::Tie) return n;
    const int maj = x.majority() == MajorityLabel::One ? 1 : 0;
    const std::size_t need = n / 2 + 1;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (x.bit(i) == maj && ++seen == need) return i + 1;
    }
    throw std::logic_error("majority_prefix_position: majority bit count out of sync");
}

} // namespace majlab
