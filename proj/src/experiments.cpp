#include "majlab/experiments.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace majlab::experiments {

namespace {

// Effective one-count of the sampled class; -1 when it varies (uniform).
std::int64_t class_ones(const ExperimentConfig& c) {
    switch (c.input_class) {
        case InputClass::FixedCounts: return static_cast<std::int64_t>(c.ones);
        case InputClass::Balanced: return static_cast<std::int64_t>(c.n / 2);
        case InputClass::UniformAll: return -1;
    }
    return -1;
}

void validate(const ExperimentConfig& c) {
    if (c.n < 1) throw std::invalid_argument("experiment: n must be >= 1");
    if (c.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (c.threads < 1) throw std::invalid_argument("experiment: threads must be >= 1");
    if (c.input_class == InputClass::Balanced && c.n % 2 != 0)
        throw std::invalid_argument("experiment: balanced class needs even n");
    if (c.input_class == InputClass::FixedCounts && c.ones > c.n)
        throw std::invalid_argument("experiment: ones exceeds n");
    for (double r : c.r_values)
        if (!(r > 0.0)) throw std::invalid_argument("experiment: r values must be positive");
}

// Draw one input for trial t.  The fixed-count classes shuffle the bit
// values of the canonical arrangement in place; this consumes exactly
// the same generator draws as rearranging indices and gathering, so a
// trial here sees the identical string the Las Vegas wrapper would.
BitString sample_input(const ExperimentConfig& c, CounterRng& rng) {
    if (c.input_class == InputClass::UniformAll) {
        std::vector<std::uint8_t> bits;
        rng.fill_bits(bits, c.n);
        return BitString(std::move(bits));
    }
    const auto a = static_cast<std::size_t>(class_ones(c));
    std::vector<std::uint8_t> bits(c.n, 0);
    std::fill(bits.begin(), bits.begin() + a, std::uint8_t{1});
    rng.shuffle(bits);
    return BitString(std::move(bits));
}

// Run fn(t) for t in [0, trials) across `threads` workers on contiguous
// chunks.  fn must write only to its own trial's slot; the first
// exception, if any, is rethrown after all workers join.
template <class Fn>
void parallel_trials(std::uint64_t trials, std::uint32_t threads, Fn&& fn) {
    const std::uint32_t workers =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(threads, trials));
    if (workers <= 1) {
        for (std::uint64_t t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
        const std::uint64_t lo = trials * w / workers;
        const std::uint64_t hi = trials * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] {
            try {
                for (std::uint64_t t = lo; t < hi; ++t) fn(t);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

CostStats summarize(const std::vector<std::uint32_t>& samples) {
    CostStats s;
    s.count = samples.size();
    if (samples.empty()) return s;

    double sum = 0.0;
    for (std::uint32_t v : samples) sum += v;
    s.mean = sum / static_cast<double>(s.count);
    double ss = 0.0;
    for (std::uint32_t v : samples) {
        const double d = static_cast<double>(v) - s.mean;
        ss += d * d;
    }
    s.variance = s.count > 1 ? ss / static_cast<double>(s.count - 1) : 0.0;

    std::vector<std::uint32_t> sorted(samples);
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    const auto nearest_rank = [&](double p) {
        std::uint64_t rank = static_cast<std::uint64_t>(
            std::ceil(p * static_cast<double>(sorted.size())));
        rank = std::clamp<std::uint64_t>(rank, 1, sorted.size());
        return static_cast<std::uint64_t>(sorted[rank - 1]);
    };
    s.p50 = nearest_rank(0.50);
    s.p90 = nearest_rank(0.90);
    s.p99 = nearest_rank(0.99);

    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        s.histogram.emplace_back(sorted[i], j - i);
        i = j;
    }
    return s;
}

double tail_threshold(Algorithm a, std::uint64_t n, std::uint64_t minority, double r, double d) {
    const double nn = static_cast<double>(n);
    const double m = static_cast<double>(minority);
    const double slack = d * std::sqrt(r * nn);
    switch (a) {
        case Algorithm::Oblivious: return nn - (2.0 / 3.0) * m + slack;
        case Algorithm::Greedy: return nn / 2.0 + m / 3.0 + slack;
        case Algorithm::Trivial: break;
    }
    throw std::invalid_argument("tail bound: stated for the pairing algorithms only");
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    validate(config);

    ExperimentResult result;
    result.config = config;
    result.samples.assign(config.trials, 0);

    parallel_trials(config.trials, config.threads, [&](std::uint64_t t) {
        CounterRng rng(config.master_seed, t);
        const BitString x = sample_input(config, rng);
        CountingOracle oracle(x);
        const RunResult r = run_algorithm(config.algorithm, oracle, BlockStorage::Compact);
        if (r.verdict != to_verdict(x.majority()))
            throw std::logic_error("experiment: verdict disagrees with sampled input");
        result.samples[t] = static_cast<std::uint32_t>(r.comparisons);
    });

    result.stats = summarize(result.samples);

    if (config.input_class != InputClass::UniformAll && !config.r_values.empty()) {
        const auto a = static_cast<std::uint64_t>(class_ones(config));
        const std::uint64_t minority = std::min<std::uint64_t>(a, config.n - a);
        const double trials = static_cast<double>(config.trials);
        for (double r : config.r_values) {
            TailReport report;
            report.r = r;
            report.threshold =
                tail_threshold(config.algorithm, config.n, minority, r, config.d);
            std::uint64_t exceed = 0;
            for (std::uint32_t v : result.samples)
                if (static_cast<double>(v) >= report.threshold) ++exceed;
            report.empirical = static_cast<double>(exceed) / trials;
            report.cap = std::exp2(-r) *
                         std::log2(static_cast<double>(std::max<std::uint32_t>(config.n, 2)));
            report.pass =
                report.empirical <= report.cap + 3.0 * std::sqrt(report.cap / trials + 1.0 / trials);
            result.tails.push_back(report);
        }
    }
    return result;
}

UnknownRateResult unknown_rate_experiment(const ExperimentConfig& config, std::uint64_t budget) {
    validate(config);

    // 0 = decided correctly, 1 = Unknown, 2 = decided wrongly.
    std::vector<std::uint8_t> outcome(config.trials, 0);
    parallel_trials(config.trials, config.threads, [&](std::uint64_t t) {
        CounterRng rng(config.master_seed, t);
        const BitString x = sample_input(config, rng);
        CountingOracle oracle(x, false, budget);
        Verdict v = Verdict::Unknown;
        try {
            v = run_algorithm(config.algorithm, oracle, BlockStorage::Compact).verdict;
        } catch (const BudgetExhausted&) {
            v = Verdict::Unknown;
        }
        if (v == Verdict::Unknown)
            outcome[t] = 1;
        else if (v != to_verdict(x.majority()))
            outcome[t] = 2;
    });

    UnknownRateResult r;
    r.budget = budget;
    r.trials = config.trials;
    for (std::uint8_t o : outcome) {
        if (o == 1) ++r.unknowns;
        if (o == 2) ++r.wrong_verdicts;
    }
    r.rate = static_cast<double>(r.unknowns) / static_cast<double>(config.trials);
    return r;
}

CalibrationReport calibrate_budget_constant(const std::vector<std::uint32_t>& training_sizes,
                                            const std::vector<std::uint32_t>& validation_sizes,
                                            Algorithm algorithm, double epsilon,
                                            std::uint64_t trials, std::uint64_t master_seed) {
    if (training_sizes.empty()) throw std::invalid_argument("calibration: no training sizes");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("calibration: epsilon must be in (0, 1]");

    CalibrationReport report;
    report.margin = 0.6;

    // One batch of unbudgeted total costs per training size; rates for
    // every candidate d are then read off the same batch.
    struct Batch {
        std::uint32_t n;
        std::vector<std::uint64_t> totals;
    };
    std::vector<Batch> batches;
    for (std::uint32_t n : training_sizes) {
        ExperimentConfig c;
        c.n = n;
        c.input_class = InputClass::Balanced;
        c.algorithm = algorithm;
        c.trials = trials;
        c.master_seed = master_seed;
        validate(c);
        Batch b;
        b.n = n;
        b.totals.assign(trials, 0);
        parallel_trials(c.trials, c.threads, [&](std::uint64_t t) {
            CounterRng rng(c.master_seed, t);
            const BitString x = sample_input(c, rng);
            CountingOracle oracle(x);
            b.totals[t] = run_algorithm(algorithm, oracle, BlockStorage::Compact).total_cost;
        });
        batches.push_back(std::move(b));
    }

    const auto rate_at = [&](const Batch& b, double d) {
        const std::uint64_t budget = default_budget(b.n, epsilon, d);
        std::uint64_t over = 0;
        for (std::uint64_t total : b.totals)
            if (total > budget) ++over;
        return static_cast<double>(over) / static_cast<double>(b.totals.size());
    };

    const double target = report.margin * epsilon;
    double d_star = 0.0;
    for (double d = 0.25; d <= 8.0 + 1e-9; d += 0.25) {
        bool ok = true;
        for (const Batch& b : batches)
            if (rate_at(b, d) > target) ok = false;
        if (ok) {
            d_star = d;
            break;
        }
    }
    if (d_star == 0.0) d_star = 8.0; // grid exhausted; validation will flag it
    report.d_star = d_star;

    for (const Batch& b : batches)
        report.training.push_back(
            {b.n, default_budget(b.n, epsilon, d_star), rate_at(b, d_star)});

    // Held-out check with fresh randomness and real truncation: the
    // budgeted runs themselves, not a replay of recorded totals.
    report.validated = true;
    const std::uint64_t held_out_seed = master_seed ^ 0x94D049BB133111EBULL;
    for (std::uint32_t n : validation_sizes) {
        ExperimentConfig c;
        c.n = n;
        c.input_class = InputClass::Balanced;
        c.algorithm = algorithm;
        c.trials = trials;
        c.master_seed = held_out_seed;
        const std::uint64_t budget = default_budget(n, epsilon, d_star);
        const UnknownRateResult u = unknown_rate_experiment(c, budget);
        if (u.wrong_verdicts != 0)
            throw std::logic_error("calibration: truncated run returned a wrong verdict");
        report.validation.push_back({n, budget, u.rate});
        if (u.rate > epsilon) report.validated = false;
    }
    return report;
}

// ---------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------

double round_to_9_digits(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return std::strtod(buf, nullptr);
}

namespace {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

constexpr const char* STATS_HEADER = "N,A,B,algorithm,trials,seed,mean,var,min,p50,p90,p99,max";
constexpr const char* TAIL_HEADER = "threshold,empirical,cap,pass";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

} // namespace

ResultRows to_rows(const ExperimentResult& result) {
    ResultRows rows;
    StatsRow s;
    s.n = static_cast<std::int64_t>(result.config.n);
    const std::int64_t a = class_ones(result.config);
    s.a = a;
    s.b = a < 0 ? -1 : static_cast<std::int64_t>(result.config.n) - a;
    s.algorithm = to_string(result.config.algorithm);
    s.trials = result.config.trials;
    s.seed = result.config.master_seed;
    s.mean = round_to_9_digits(result.stats.mean);
    s.var = round_to_9_digits(result.stats.variance);
    s.min = result.stats.min;
    s.p50 = result.stats.p50;
    s.p90 = result.stats.p90;
    s.p99 = result.stats.p99;
    s.max = result.stats.max;
    rows.stats.push_back(std::move(s));

    for (const TailReport& t : result.tails) {
        TailRow row;
        row.threshold = round_to_9_digits(t.threshold);
        row.empirical = round_to_9_digits(t.empirical);
        row.cap = round_to_9_digits(t.cap);
        row.pass = t.pass;
        rows.tails.push_back(row);
    }
    return rows;
}

std::string emit_csv(const ResultRows& rows) {
    std::ostringstream out;
    out << STATS_HEADER << '\n';
    for (const StatsRow& s : rows.stats) {
        out << s.n << ',' << s.a << ',' << s.b << ',' << s.algorithm << ',' << s.trials << ','
            << s.seed << ',' << format_double(s.mean) << ',' << format_double(s.var) << ','
            << s.min << ',' << s.p50 << ',' << s.p90 << ',' << s.p99 << ',' << s.max << '\n';
    }
    if (!rows.tails.empty()) {
        out << TAIL_HEADER << '\n';
        for (const TailRow& t : rows.tails) {
            out << format_double(t.threshold) << ',' << format_double(t.empirical) << ','
                << format_double(t.cap) << ',' << (t.pass ? "true" : "false") << '\n';
        }
    }
    return out.str();
}

ResultRows parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != STATS_HEADER)
        throw std::invalid_argument("parse_csv: missing stats header");

    ResultRows rows;
    bool in_tails = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line == TAIL_HEADER) {
            in_tails = true;
            continue;
        }
        const auto f = split_csv_line(line);
        if (!in_tails) {
            if (f.size() != 13) throw std::invalid_argument("parse_csv: bad stats row");
            StatsRow s;
            s.n = std::stoll(f[0]);
            s.a = std::stoll(f[1]);
            s.b = std::stoll(f[2]);
            s.algorithm = f[3];
            s.trials = std::stoull(f[4]);
            s.seed = std::stoull(f[5]);
            s.mean = std::strtod(f[6].c_str(), nullptr);
            s.var = std::strtod(f[7].c_str(), nullptr);
            s.min = std::stoull(f[8]);
            s.p50 = std::stoull(f[9]);
            s.p90 = std::stoull(f[10]);
            s.p99 = std::stoull(f[11]);
            s.max = std::stoull(f[12]);
            rows.stats.push_back(std::move(s));
        } else {
            if (f.size() != 4) throw std::invalid_argument("parse_csv: bad tail row");
            TailRow t;
            t.threshold = std::strtod(f[0].c_str(), nullptr);
            t.empirical = std::strtod(f[1].c_str(), nullptr);
            t.cap = std::strtod(f[2].c_str(), nullptr);
            if (f[3] == "true")
                t.pass = true;
            else if (f[3] == "false")
                t.pass = false;
            else
                throw std::invalid_argument("parse_csv: bad pass field");
            rows.tails.push_back(t);
        }
    }
    return rows;
}

std::string emit_json(const ResultRows& rows) {
    nlohmann::ordered_json doc;
    doc["stats"] = nlohmann::ordered_json::array();
    for (const StatsRow& s : rows.stats) {
        nlohmann::ordered_json j;
        j["N"] = s.n;
        j["A"] = s.a;
        j["B"] = s.b;
        j["algorithm"] = s.algorithm;
        j["trials"] = s.trials;
        j["seed"] = s.seed;
        j["mean"] = s.mean;
        j["var"] = s.var;
        j["min"] = s.min;
        j["p50"] = s.p50;
        j["p90"] = s.p90;
        j["p99"] = s.p99;
        j["max"] = s.max;
        doc["stats"].push_back(std::move(j));
    }
    doc["tails"] = nlohmann::ordered_json::array();
    for (const TailRow& t : rows.tails) {
        nlohmann::ordered_json j;
        j["threshold"] = t.threshold;
        j["empirical"] = t.empirical;
        j["cap"] = t.cap;
        j["pass"] = t.pass;
        doc["tails"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

ResultRows parse_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    ResultRows rows;
    for (const auto& j : doc.at("stats")) {
        StatsRow s;
        s.n = j.at("N").get<std::int64_t>();
        s.a = j.at("A").get<std::int64_t>();
        s.b = j.at("B").get<std::int64_t>();
        s.algorithm = j.at("algorithm").get<std::string>();
        s.trials = j.at("trials").get<std::uint64_t>();
        s.seed = j.at("seed").get<std::uint64_t>();
        s.mean = j.at("mean").get<double>();
        s.var = j.at("var").get<double>();
        s.min = j.at("min").get<std::uint64_t>();
        s.p50 = j.at("p50").get<std::uint64_t>();
        s.p90 = j.at("p90").get<std::uint64_t>();
        s.p99 = j.at("p99").get<std::uint64_t>();
        s.max = j.at("max").get<std::uint64_t>();
        rows.stats.push_back(std::move(s));
    }
    for (const auto& j : doc.at("tails")) {
        TailRow t;
        t.threshold = j.at("threshold").get<double>();
        t.empirical = j.at("empirical").get<double>();
        t.cap = j.at("cap").get<double>();
        t.pass = j.at("pass").get<bool>();
        rows.tails.push_back(t);
    }
    return rows;
}

void write_results(const ResultRows& rows, const std::string& path, const std::string& format) {
    std::string payload;
    if (format == "csv")
        payload = emit_csv(rows);
    else if (format == "json")
        payload = emit_json(rows);
    else
        throw std::invalid_argument("write_results: format must be csv or json");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_results: cannot open " + path);
    out << payload;
}

} // namespace majlab::experiments
