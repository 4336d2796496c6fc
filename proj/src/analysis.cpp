#include "majlab/analysis.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "majlab/oracle.hpp"

namespace majlab::analysis {

std::pair<std::uint64_t, std::uint64_t> floor_sum_identity(std::uint64_t n) {
    std::uint64_t lhs = 0;
    for (unsigned k = 1; k < 64 && (n >> k) > 0; ++k) lhs += n >> k;
    const std::uint64_t rhs = n - std::popcount(n);
    return {lhs, rhs};
}

std::uint64_t factorial_two_adic_valuation(std::uint64_t n) {
    std::uint64_t v = 0;
    for (std::uint64_t i = 2; i <= n; ++i) v += static_cast<std::uint64_t>(std::countr_zero(i));
    return v;
}

namespace {
BigInt central_binomial(std::uint32_t n) {
    BigInt b = 1;
    for (std::uint32_t k = 1; k <= n / 2; ++k) {
        b *= n - k + 1;
        b /= k; // exact: b is a binomial prefix
    }
    return b;
}
} // namespace

StrictMajorityCount strict_majority_count(std::uint32_t n) {
    if (n == 0 || n % 2 != 0)
        throw std::invalid_argument("strict_majority_count: n must be even and positive");
    const BigInt count = (BigInt(1) << (n - 1)) - central_binomial(n) / 2;
    const std::uint64_t valuation = boost::multiprecision::lsb(count);
    return {count, valuation};
}

DepthVerdict parity_tree_divisibility_certificate(std::uint32_t n, std::uint32_t claimed_depth) {
    if (n == 0) throw std::invalid_argument("divisibility certificate: n must be >= 1");
    std::uint32_t n_eff;
    std::uint64_t valuation;
    if (n == 1) {
        // A single input bit: one accepted input ("1"), valuation 0.
        n_eff = 1;
        valuation = 0;
    } else if (n % 2 == 0) {
        n_eff = n;
        valuation = strict_majority_count(n).valuation;
    } else {
        // Fix one bit to zero: a depth-d tree for N bits yields one for
        // N-1 bits, so impossibility at N-1 transfers to N.
        n_eff = n - 1;
        valuation = strict_majority_count(n - 1).valuation;
    }
    const bool divides = claimed_depth + valuation >= n_eff;
    return divides ? DepthVerdict::NotExcluded : DepthVerdict::Impossible;
}

std::uint32_t parity_depth_lower_bound(std::uint32_t n) {
    for (std::uint32_t d = 0;; ++d) {
        if (parity_tree_divisibility_certificate(n, d) == DepthVerdict::NotExcluded) return d;
    }
}

double ars_average(std::uint64_t n) {
    const double x = static_cast<double>(n);
    return 2.0 * x / 3.0 - std::sqrt(8.0 * x / (9.0 * std::numbers::pi));
}

Rational classical_error_lower_bound(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("classical_error_lower_bound: n must be >= 1");
    const long long nn = static_cast<long long>(n);
    const long long t = (nn + 1) / 2;
    return Rational(t * (nn - t + 1), nn * (nn + 1));
}

BetaMixture beta_mixture(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("beta_mixture: n must be >= 1");
    const long long nn = static_cast<long long>(n);
    const long long t = (nn + 1) / 2;
    return {n, static_cast<std::uint64_t>(t), Rational(t, nn + 1)};
}

RunResult near_tight_classical_strategy(const BitString& x, std::uint64_t seed, double bias) {
    const std::uint64_t n = x.length();
    if (n == 0) throw std::invalid_argument("near_tight_classical_strategy: empty input");
    CounterRng rng(seed, 0);
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(order);

    CountingOracle oracle(x);
    const std::uint64_t t = (n + 1) / 2;
    std::uint64_t seen_ones = 0;
    for (std::uint64_t i = 0; i + 1 < n; ++i) seen_ones += oracle.query_bit(order[i]);

    Verdict v;
    if (seen_ones + 1 < t)
        v = Verdict::Zero;
    else if (seen_ones + 1 > t)
        v = Verdict::One;
    else
        v = rng.coin(bias) ? Verdict::One : Verdict::Zero;
    return detail::finish(v, oracle);
}

namespace {
// Error polynomial (constant + coefficient * bias) of the strategy on
// one uniform input class, enumerated over all strings with the given
// count of ones and all n! query orders.
struct ClassError {
    Rational constant;
    Rational coefficient;
};

ClassError enumerate_class(std::uint32_t n, std::uint32_t ones, Verdict correct) {
    const std::uint64_t t = (n + 1) / 2;
    long long definite_wrong = 0;
    long long coin_cases = 0;
    long long total = 0;

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end());
    do {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (static_cast<std::uint32_t>(std::popcount(mask)) != ones) continue;
            ++total;
            std::uint64_t seen = 0;
            for (std::uint32_t i = 0; i + 1 < n; ++i) seen += (mask >> order[i]) & 1u;
            if (seen + 1 == t) {
                ++coin_cases;
            } else {
                const Verdict answer = seen + 1 < t ? Verdict::Zero : Verdict::One;
                if (answer != correct) ++definite_wrong;
            }
        }
    } while (std::next_permutation(order.begin(), order.end()));

    // On a coin case the strategy answers One with probability bias.
    const Rational coin_share(coin_cases, total);
    if (correct == Verdict::Zero) return {Rational(definite_wrong, total), coin_share};
    return {Rational(definite_wrong, total) + coin_share, -coin_share};
}
} // namespace

MixtureError near_tight_mixture_error(std::uint32_t n) {
    if (n < 1 || n > 8)
        throw std::invalid_argument("near_tight_mixture_error: enumeration supports 1 <= n <= 8");
    const BetaMixture mix = beta_mixture(n);
    const auto t = static_cast<std::uint32_t>(mix.t);
    // t-1 ones: strictly more zeros, correct answer Zero.
    // t ones: majority (or tie, weak convention) of ones, correct One.
    const ClassError lo = enumerate_class(n, t - 1, Verdict::Zero);
    const ClassError hi = enumerate_class(n, t, Verdict::One);
    const Rational beta = mix.beta;
    const Rational one_minus = Rational(1) - beta;
    return {beta * lo.constant + one_minus * hi.constant,
            beta * lo.coefficient + one_minus * hi.coefficient};
}

} // namespace majlab::analysis
