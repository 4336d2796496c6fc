// Command-line front end: Monte Carlo runs, acceptance checks, exact
// small-N optima, the quantum replay demo, and a bounds table.
#include <cstdint>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "majlab/algorithms.hpp"
#include "majlab/analysis.hpp"
#include "majlab/bruteforce.hpp"
#include "majlab/experiments.hpp"
#include "majlab/quantum.hpp"
#include "majlab/verify.hpp"

namespace {

using namespace majlab;

Algorithm parse_algorithm(const std::string& s) {
    if (s == "trivial") return Algorithm::Trivial;
    if (s == "oblivious") return Algorithm::Oblivious;
    if (s == "greedy") return Algorithm::Greedy;
    throw CLI::ValidationError("--algorithm", "unknown algorithm " + s);
}

experiments::InputClass parse_class(const std::string& s) {
    if (s == "fixed") return experiments::InputClass::FixedCounts;
    if (s == "balanced") return experiments::InputClass::Balanced;
    if (s == "uniform") return experiments::InputClass::UniformAll;
    throw CLI::ValidationError("--class", "unknown input class " + s);
}

int run_simulate(const experiments::ExperimentConfig& config, bool zero_error,
                 std::uint64_t budget_override, bool budget_set, const std::string& out,
                 const std::string& format) {
    if (zero_error) {
        const std::uint64_t budget =
            budget_set ? budget_override : default_budget(config.n, config.epsilon, config.d);
        const auto u = experiments::unknown_rate_experiment(config, budget);
        if (format == "json") {
            nlohmann::ordered_json j;
            j["budget"] = u.budget;
            j["trials"] = u.trials;
            j["unknowns"] = u.unknowns;
            j["rate"] = experiments::round_to_9_digits(u.rate);
            j["wrong_verdicts"] = u.wrong_verdicts;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "budget=" << u.budget << "\ntrials=" << u.trials
                      << "\nunknowns=" << u.unknowns << "\nrate=" << u.rate
                      << "\nwrong_verdicts=" << u.wrong_verdicts << "\n";
        }
        return u.wrong_verdicts == 0 ? 0 : 1;
    }

    const auto result = experiments::run_experiment(config);
    const auto rows = experiments::to_rows(result);
    if (out.empty()) {
        std::cout << (format == "json" ? experiments::emit_json(rows)
                                       : experiments::emit_csv(rows));
    } else {
        experiments::write_results(rows, out, format);
        std::cerr << "wrote " << out << "\n";
    }
    return 0;
}

int run_verify(const std::string& suite) {
    const auto results = verify::run_suite(suite);
    bool all = true;
    for (const auto& r : results) {
        std::cout << verify::format_line(r) << "\n";
        all = all && r.passed;
    }
    std::cout << (all ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " (" << results.size()
              << " checked)\n";
    return all ? 0 : 1;
}

int run_optimal(std::uint32_t n, const std::string& family, const std::string& target) {
    const auto fam = family == "parity" ? bruteforce::QueryFamily::AllParities
                                        : bruteforce::QueryFamily::XorAndBits;
    const auto tgt =
        target == "three" ? bruteforce::TargetMode::ThreeWay : bruteforce::TargetMode::WeakMajority;
    const std::uint32_t depth = bruteforce::optimal_depth(n, fam, tgt);
    const std::uint32_t formula =
        n + 1 - static_cast<std::uint32_t>(std::popcount(std::uint64_t{n}));
    nlohmann::ordered_json j;
    j["N"] = n;
    j["family"] = family;
    j["target"] = target;
    j["depth"] = depth;
    j["pairing_formula"] = formula;
    j["matches_pairing_formula"] = depth == formula;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_quantum() {
    std::cout << "interference gadget, one oracle call per evaluation:\n";
    for (int x0 : {0, 1}) {
        for (int x1 : {0, 1}) {
            const auto g = quantum::xor_gadget(x0, x1);
            std::cout << "  x0=" << x0 << " x1=" << x1 << " -> answer " << g.answer << ", calls "
                      << g.oracle_calls << ", wrong probability " << g.wrong_probability << "\n";
            if (g.answer != (x0 ^ x1) || g.oracle_calls != 1) return 1;
        }
    }
    std::uint64_t runs = 0;
    for (std::uint32_t n = 1; n <= 8; ++n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            const BitString x = BitString::from_mask(mask, n);
            for (Algorithm a : {Algorithm::Trivial, Algorithm::Oblivious, Algorithm::Greedy}) {
                CountingOracle oracle(x, true);
                const RunResult r = run_algorithm(a, oracle);
                if (quantum::compile_run(r.ledger.trace, n) != r.total_cost) {
                    std::cout << "call-count mismatch: " << to_string(a) << " on " << x.to_string()
                              << "\n";
                    return 1;
                }
                ++runs;
            }
        }
    }
    std::cout << runs << " traced runs replayed, every one at one oracle call per query\n";
    return 0;
}

int run_bounds(std::uint32_t n_max, double epsilon, double d) {
    std::cout << "N,w,exact_cost,average_estimate,error_floor,budget\n";
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        const auto w = static_cast<std::uint32_t>(std::popcount(std::uint64_t{n}));
        char avg[32];
        std::snprintf(avg, sizeof avg, "%.9g", analysis::ars_average(n));
        std::cout << n << ',' << w << ',' << (n + 1 - w) << ',' << avg << ','
                  << to_string(analysis::classical_error_lower_bound(n)) << ','
                  << default_budget(n, epsilon, d) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"query-cost laboratory for majority under parity queries"};
    app.require_subcommand(1);

    // simulate
    experiments::ExperimentConfig config;
    config.trials = 1000;
    config.threads = std::max(1u, std::thread::hardware_concurrency());
    std::string cls = "balanced", algorithm = "greedy", out, format = "csv";
    bool zero_error = false;
    std::uint64_t budget_override = 0;
    auto* sim = app.add_subcommand("simulate", "sample inputs and tally query costs");
    sim->add_option("--n", config.n, "input length")->required();
    sim->add_option("--class", cls, "input class: fixed, balanced, uniform")
        ->check(CLI::IsMember({"fixed", "balanced", "uniform"}));
    sim->add_option("--ones", config.ones, "one-count for --class fixed");
    sim->add_option("--algorithm", algorithm, "trivial, oblivious, greedy")
        ->check(CLI::IsMember({"trivial", "oblivious", "greedy"}));
    sim->add_option("--trials", config.trials, "number of trials");
    sim->add_option("--seed", config.master_seed, "master seed")
        ->envname("MAJORITY_LAB_SEED");
    sim->add_option("--epsilon", config.epsilon, "Unknown-rate target for --zero-error");
    sim->add_option("--d", config.d, "slack constant for budgets and tail thresholds");
    sim->add_option("--r", config.r_values, "tail exceedance levels (repeatable)");
    sim->add_option("--threads", config.threads, "worker threads");
    sim->add_option("--out", out, "output path (default stdout)");
    sim->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sim->add_flag("--zero-error", zero_error, "truncate at a hard budget; report Unknown rate");
    auto* budget_opt = sim->add_option("--budget", budget_override,
                                       "query budget for --zero-error (default derived)");

    // verify
    std::string suite = "all";
    auto* ver = app.add_subcommand("verify", "run acceptance criteria");
    ver->add_option("--suite", suite, "exact, sandwich, appendix, lowerbounds, quantum, montecarlo, all");

    // optimal
    std::uint32_t opt_n = 3;
    std::string family = "xor", target = "weak";
    auto* opt = app.add_subcommand("optimal", "exact minimax depth for small N");
    opt->add_option("--n", opt_n, "input length")->required();
    opt->add_option("--family", family, "xor (bits and pairs) or parity (all subsets)")
        ->check(CLI::IsMember({"xor", "parity"}));
    opt->add_option("--target", target, "weak or three")->check(CLI::IsMember({"weak", "three"}));

    // quantum
    auto* qu = app.add_subcommand("quantum", "gadget table and traced-run replay");

    // bounds
    std::uint32_t n_max = 64;
    double b_epsilon = 0.05, b_d = 3.0;
    auto* bo = app.add_subcommand("bounds", "per-N cost table");
    bo->add_option("--n-max", n_max, "largest N in the table");
    bo->add_option("--epsilon", b_epsilon, "budget column epsilon");
    bo->add_option("--d", b_d, "budget column slack constant");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            config.input_class = parse_class(cls);
            config.algorithm = parse_algorithm(algorithm);
            return run_simulate(config, zero_error, budget_override, budget_opt->count() > 0, out,
                                format);
        }
        if (ver->parsed()) return run_verify(suite);
        if (opt->parsed()) return run_optimal(opt_n, family, target);
        if (qu->parsed()) return run_quantum();
        if (bo->parsed()) return run_bounds(n_max, b_epsilon, b_d);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
