#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace majlab {

// Exact rational arithmetic for the enumeration-based checks.  The
// counts involved stay far below 2^63 (string classes up to 2^16,
// index products up to ~10^12), so a 64-bit backbone suffices.
using Rational = boost::rational<long long>;

inline std::string to_string(const Rational& q) {
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

} // namespace majlab
