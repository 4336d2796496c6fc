#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "majlab/algorithms.hpp"
#include "majlab/bitstring.hpp"
#include "majlab/oracle.hpp"
#include "majlab/quantum.hpp"

using namespace majlab;
using namespace majlab::quantum;

namespace {

bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-12) {
    return std::abs(a - b) <= tol;
}

} // namespace

TEST_CASE("basis states are unit vectors") {
    const QuantumState s = basis_state(3, 5);
    CHECK(s.qubits == 3);
    REQUIRE(s.amp.size() == 8);
    CHECK(close(s.amp[5], {1.0, 0.0}));
    CHECK(s.norm() == doctest::Approx(1.0));

    CHECK_THROWS_AS(basis_state(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(basis_state(25, 0), std::invalid_argument);
    CHECK_THROWS_AS(basis_state(2, 4), std::invalid_argument);
}

TEST_CASE("hadamard squares to the identity") {
    QuantumState s = basis_state(2, 1);
    apply_hadamard(s, 0);
    const double r = std::numbers::sqrt2 / 2.0;
    CHECK(close(s.amp[0], {r, 0.0}));
    CHECK(close(s.amp[1], {-r, 0.0}));
    apply_hadamard(s, 0);
    CHECK(close(s.amp[0], {0.0, 0.0}));
    CHECK(close(s.amp[1], {1.0, 0.0}));
    CHECK_THROWS_AS(apply_hadamard(s, 2), std::invalid_argument);
}

TEST_CASE("pauli-x flips and squares to the identity") {
    QuantumState s = basis_state(1, 0);
    apply_pauli_x(s, 0);
    CHECK(close(s.amp[1], {1.0, 0.0}));
    apply_pauli_x(s, 0);
    CHECK(close(s.amp[0], {1.0, 0.0}));
}

TEST_CASE("oracle unitary maps basis states by table lookup") {
    const OracleUnitary oracle = OracleUnitary::for_input(BitString::parse("101"));
    CHECK(oracle.index_width == 2);
    CHECK(oracle.target_qubit() == 2);
    CHECK(oracle.min_qubits() == 3);

    QueryLedger ledger;
    const int expected_bits[] = {1, 0, 1};
    for (std::uint64_t i = 0; i < 3; ++i) {
        QuantumState s = basis_state(3, i);
        apply_oracle(s, oracle, ledger);
        const std::uint64_t want = i | (static_cast<std::uint64_t>(expected_bits[i]) << 2);
        CHECK(close(s.amp[want], {1.0, 0.0}));
    }
    // Index 3 addresses no input position: identity.
    QuantumState s = basis_state(3, 3);
    apply_oracle(s, oracle, ledger);
    CHECK(close(s.amp[3], {1.0, 0.0}));
    CHECK(ledger.quantum_queries == 4);

    QuantumState narrow = basis_state(2, 0);
    CHECK_THROWS_AS(apply_oracle(narrow, oracle, ledger), std::invalid_argument);
}

TEST_CASE("oracle unitary is self-inverse on a full superposition") {
    const OracleUnitary oracle = OracleUnitary::for_input(BitString::parse("101"));
    QuantumState s = basis_state(3, 0);
    for (std::uint32_t q = 0; q < 3; ++q) apply_hadamard(s, q);
    const std::vector<std::complex<double>> before = s.amp;

    QueryLedger ledger;
    apply_oracle(s, oracle, ledger);
    apply_oracle(s, oracle, ledger);
    CHECK(ledger.quantum_queries == 2);
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(close(s.amp[i], before[i]));
}

TEST_CASE("phase-kickback gadget computes the difference in one call") {
    for (int x0 = 0; x0 <= 1; ++x0) {
        for (int x1 = 0; x1 <= 1; ++x1) {
            const GadgetResult g = xor_gadget(x0, x1);
            CHECK(g.answer == (x0 ^ x1));
            CHECK(g.oracle_calls == 1);
            CHECK(g.wrong_probability >= 0.0);
            CHECK(g.wrong_probability <= 1e-18);
        }
    }
    CHECK_THROWS_AS(xor_gadget(2, 0), std::invalid_argument);
}

TEST_CASE("compiled replays spend one quantum query per classical query") {
    struct Pinned {
        Algorithm alg;
        const char* input;
        std::uint64_t cost;
    };
    const Pinned cases[] = {
        {Algorithm::Oblivious, "111", 2},
        {Algorithm::Trivial, "0101", 4},
        {Algorithm::Greedy, "1111111", 4},
    };
    for (const Pinned& c : cases) {
        const BitString x = BitString::parse(c.input);
        CountingOracle oracle(x, /*tracing=*/true);
        const RunResult r = run_algorithm(c.alg, oracle);
        CHECK(r.total_cost == c.cost);
        CHECK(compile_run(r.ledger.trace, static_cast<std::uint32_t>(x.length())) == c.cost);
    }
}

TEST_CASE("replay rejects what the black-box model cannot express") {
    std::vector<TraceEntry> parity{{QueryKind::Parity, {0, 1, 2}, 0}};
    CHECK_THROWS_AS(compile_run(parity, 4), std::invalid_argument);

    std::vector<TraceEntry> out_of_range{{QueryKind::Bit, {5}, 0}};
    CHECK_THROWS_AS(compile_run(out_of_range, 4), std::invalid_argument);
}
