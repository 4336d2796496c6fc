#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "majlab/bitstring.hpp"
#include "majlab/oracle.hpp"

namespace majlab::quantum {

// Dense state-vector simulator, sized for the handful of qubits the
// query-compilation checks need.  Qubit k corresponds to bit k of the
// basis index (LSB first).
struct QuantumState {
    std::uint32_t qubits = 0;
    std::vector<std::complex<double>> amp;

    double norm() const;
};

QuantumState basis_state(std::uint32_t qubits, std::uint64_t index);

// Single-qubit gates.  Every gate checks that the state norm stays
// within 1e-9 of 1; a violation is a simulator bug, not a caller error.
void apply_hadamard(QuantumState& state, std::uint32_t qubit);
void apply_pauli_x(QuantumState& state, std::uint32_t qubit);

// Black-box unitary |i, b, z> -> |i, b xor X_i, z>: qubits
// [0, index_width) hold the queried position, the next qubit is the
// answer target, anything above is untouched workspace.  Positions
// beyond the input length act as identity.  Self-inverse by
// construction.
struct OracleUnitary {
    BitString input;
    std::uint32_t index_width = 1;

    std::uint32_t target_qubit() const { return index_width; }
    std::uint32_t min_qubits() const { return index_width + 1; }

    // Width sized to address every position of x.
    static OracleUnitary for_input(BitString x);
};

// One application = one quantum query, charged to the ledger.
void apply_oracle(QuantumState& state, const OracleUnitary& oracle, QueryLedger& ledger);

// Phase-kickback circuit computing X_0 xor X_1 of a 2-bit oracle with
// a single query: index qubit in uniform superposition, target in
// (|0> - |1>)/sqrt(2), one oracle call, Hadamard, read the index.
// The outcome is deterministic; wrong_probability is reported so tests
// can pin it at <= 1e-18 instead of sampling.
struct GadgetResult {
    int answer = 0;
    std::uint64_t oracle_calls = 0;
    double wrong_probability = 0.0;
};
GadgetResult xor_gadget(int x0, int x1);

// Replay a classical query trace in the black-box model: each bit query
// becomes one oracle application, each XOR query one gadget run on the
// induced 2-bit oracle.  Every replayed outcome must reproduce the
// recorded answer exactly; parity entries are not compilable.  Returns
// the number of quantum queries spent, which equals the classical
// query count entry for entry.
std::uint64_t compile_run(const std::vector<TraceEntry>& trace, std::uint32_t n);

} // namespace majlab::quantum
