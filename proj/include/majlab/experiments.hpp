#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "majlab/algorithms.hpp"

namespace majlab::experiments {

// ---------------------------------------------------------------------
// Monte Carlo harness.  Trial t draws everything it needs from counter
// stream (master_seed, t), so results are a pure function of the
// config: same config, same numbers, regardless of thread count or
// scheduling.  Aggregation walks trials in index order.
// ---------------------------------------------------------------------

enum class InputClass : std::uint8_t {
    FixedCounts, // uniformly random arrangement of `ones` ones
    Balanced,    // FixedCounts with ones = n/2 (n even)
    UniformAll   // n fair coin flips
};

inline const char* to_string(InputClass c) {
    switch (c) {
        case InputClass::FixedCounts: return "fixed";
        case InputClass::Balanced: return "balanced";
        case InputClass::UniformAll: return "uniform";
    }
    return "?";
}

struct ExperimentConfig {
    std::uint32_t n = 0;
    InputClass input_class = InputClass::Balanced;
    std::uint32_t ones = 0; // FixedCounts only
    Algorithm algorithm = Algorithm::Greedy;
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
    double epsilon = 0.05;      // Unknown-rate target for budgeted runs
    double d = 3.0;             // slack constant for budgets and tail thresholds
    std::vector<double> r_values; // tail exceedance levels to evaluate
    std::uint32_t threads = 1;
};

// Distribution summary of per-trial comparison counts.
struct CostStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased sample variance
    std::uint64_t min = 0;
    std::uint64_t max = 0;
    std::uint64_t p50 = 0; // nearest-rank quantiles
    std::uint64_t p90 = 0;
    std::uint64_t p99 = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram; // value -> occurrences
};

// Empirical check of one exceedance bound: the probability of spending
// at least `threshold` comparisons is capped by `cap`, checked with
// sampling slack 3 * sqrt(cap/trials + 1/trials).
struct TailReport {
    double r = 0.0;
    double threshold = 0.0;
    double empirical = 0.0;
    double cap = 0.0;
    bool pass = false;
};

struct ExperimentResult {
    ExperimentConfig config;
    CostStats stats;
    std::vector<TailReport> tails;
    std::vector<std::uint32_t> samples; // per-trial comparisons, trial order
};

// Run the experiment described by the config.  Every trial's verdict is
// checked against the sampled input's true label; a mismatch throws.
// Tail reports are produced for the fixed-count classes only, where the
// exceedance bounds are stated.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Truncated runs under a hard query budget: counts Unknown outcomes.
// Any non-Unknown verdict must still be correct; wrong_verdicts is
// reported (and must be zero) rather than silently tolerated.
struct UnknownRateResult {
    std::uint64_t budget = 0;
    std::uint64_t trials = 0;
    std::uint64_t unknowns = 0;
    std::uint64_t wrong_verdicts = 0;
    double rate = 0.0;
};
UnknownRateResult unknown_rate_experiment(const ExperimentConfig& config, std::uint64_t budget);

// Fit the budget constant d on training sizes, then check the implied
// budgets on held-out sizes with fresh randomness.  Grid search over
// d in steps of 0.25; the fit targets margin * epsilon so the
// validation sizes have headroom.  Nothing about the result is baked
// into the library.
struct CalibrationPoint {
    std::uint32_t n = 0;
    std::uint64_t budget = 0;
    double rate = 0.0;
};
struct CalibrationReport {
    double d_star = 0.0;
    double margin = 0.0;
    std::vector<CalibrationPoint> training;
    std::vector<CalibrationPoint> validation;
    bool validated = false; // every validation rate <= epsilon
};
CalibrationReport calibrate_budget_constant(const std::vector<std::uint32_t>& training_sizes,
                                            const std::vector<std::uint32_t>& validation_sizes,
                                            Algorithm algorithm, double epsilon,
                                            std::uint64_t trials, std::uint64_t master_seed);

// ---------------------------------------------------------------------
// Serialization.  Both formats carry the same rows: one stats row per
// experiment (columns N,A,B,algorithm,trials,seed,mean,var,min,p50,
// p90,p99,max; A = B = -1 for the uniform class) and one row per tail
// report (threshold,empirical,cap,pass).  Floats are rounded to 9
// significant digits before emission, so parse(emit(x)) == x exactly;
// files end with a trailing newline.
// ---------------------------------------------------------------------

struct StatsRow {
    std::int64_t n = 0;
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::string algorithm;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double var = 0.0;
    std::uint64_t min = 0;
    std::uint64_t p50 = 0;
    std::uint64_t p90 = 0;
    std::uint64_t p99 = 0;
    std::uint64_t max = 0;
    bool operator==(const StatsRow&) const = default;
};
struct TailRow {
    double threshold = 0.0;
    double empirical = 0.0;
    double cap = 0.0;
    bool pass = false;
    bool operator==(const TailRow&) const = default;
};
struct ResultRows {
    std::vector<StatsRow> stats;
    std::vector<TailRow> tails;
    bool operator==(const ResultRows&) const = default;
};

double round_to_9_digits(double x);
ResultRows to_rows(const ExperimentResult& result);

std::string emit_csv(const ResultRows& rows);
ResultRows parse_csv(const std::string& text);
std::string emit_json(const ResultRows& rows);
ResultRows parse_json(const std::string& text);

// Convenience: write rows to a file in the named format ("csv"/"json").
void write_results(const ResultRows& rows, const std::string& path, const std::string& format);

} // namespace majlab::experiments
