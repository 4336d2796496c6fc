#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "majlab/algorithms.hpp"
#include "majlab/bitstring.hpp"
#include "majlab/rational.hpp"
#include "majlab/rng.hpp"

namespace majlab::analysis {

using BigInt = boost::multiprecision::cpp_int;

inline std::uint32_t hamming_weight(std::uint64_t n) {
    return static_cast<std::uint32_t>(std::popcount(n));
}

// Both sides of the identity  sum_{k>=1} floor(N / 2^k) = N - w(N),
// each computed on its own.  Returned as (lhs, rhs) so callers can
// assert equality rather than trust it.
std::pair<std::uint64_t, std::uint64_t> floor_sum_identity(std::uint64_t n);

// 2-adic valuation of N!, accumulated term by term as
// sum_{i<=N} v2(i).  Deliberately independent of the floor-sum form.
std::uint64_t factorial_two_adic_valuation(std::uint64_t n);

// Number of N-bit strings with strictly more ones than zeros, N even:
// 2^(N-1) - binomial(N, N/2) / 2, with its 2-adic valuation.
struct StrictMajorityCount {
    BigInt count;
    std::uint64_t valuation;
};
StrictMajorityCount strict_majority_count(std::uint32_t n);

// Divisibility certificate for parity decision trees computing the weak
// majority. A tree of depth d splits the input cube into affine pieces
// of size 2^(N-d), so 2^(N-d) must divide the number of accepted
// inputs; a depth claim whose divisibility fails is impossible.  Odd N
// reduces to N-1 by fixing one input bit to zero.
enum class DepthVerdict : std::uint8_t { Impossible, NotExcluded };
DepthVerdict parity_tree_divisibility_certificate(std::uint32_t n, std::uint32_t claimed_depth);

// Smallest depth the certificate cannot rule out.
std::uint32_t parity_depth_lower_bound(std::uint32_t n);

// Closed-form large-N average cost of greedy pairing over uniformly
// random inputs: 2N/3 - sqrt(8N / (9 pi)).  The one intentionally
// floating-point quantity in this module.
double ars_average(std::uint64_t n);

// Exact worst-case error floor for black-box algorithms that query at
// most N-1 bits: with t = ceil(N/2), the floor is
// t (N - t + 1) / (N (N + 1)), which exceeds 1/4 for every N.
Rational classical_error_lower_bound(std::uint64_t n);

// The adversarial input mixture behind that floor: weight beta on the
// uniform class with t-1 ones, 1-beta on the class with t ones, where
// beta = t / (N+1) equalises the two failure directions.
struct BetaMixture {
    std::uint64_t n;
    std::uint64_t t;
    Rational beta;
};
BetaMixture beta_mixture(std::uint64_t n);

// The strategy that nearly meets the floor: query N-1 bits in random
// order; answer 0 if fewer than t-1 ones were seen, 1 if more, and flip
// a coin with P(answer 1) = bias on exactly t-1.  Always N-1 queries.
RunResult near_tight_classical_strategy(const BitString& x, std::uint64_t seed, double bias);

// Exact error of that strategy on the beta mixture, enumerated over
// every input of both classes and every query order, with the coin
// kept symbolic: error(bias) = constant + coin_coefficient * bias.
// Ties count as majority One, matching the weak target.
struct MixtureError {
    Rational constant;
    Rational coin_coefficient;
};
MixtureError near_tight_mixture_error(std::uint32_t n);

} // namespace majlab::analysis
