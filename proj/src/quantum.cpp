#include "majlab/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace majlab::quantum {

namespace {

constexpr double NORM_TOLERANCE = 1e-9;
constexpr double OUTCOME_TOLERANCE = 1e-18;

void check_norm(const QuantumState& state) {
    if (std::abs(state.norm() - 1.0) > NORM_TOLERANCE)
        throw std::logic_error("quantum state lost normalization");
}

std::uint64_t bit_mask(std::uint32_t qubit) { return std::uint64_t{1} << qubit; }

// Probability that measuring `qubit` yields 1.
double one_probability(const QuantumState& state, std::uint32_t qubit) {
    double p = 0.0;
    for (std::uint64_t s = 0; s < state.amp.size(); ++s) {
        if (s & bit_mask(qubit)) p += std::norm(state.amp[s]);
    }
    return p;
}

} // namespace

double QuantumState::norm() const {
    double sum = 0.0;
    for (const auto& a : amp) sum += std::norm(a);
    return std::sqrt(sum);
}

QuantumState basis_state(std::uint32_t qubits, std::uint64_t index) {
    if (qubits == 0 || qubits > 24) throw std::invalid_argument("basis_state: unsupported width");
    if (index >= (std::uint64_t{1} << qubits)) throw std::invalid_argument("basis_state: index too wide");
    QuantumState state;
    state.qubits = qubits;
    state.amp.assign(std::uint64_t{1} << qubits, {0.0, 0.0});
    state.amp[index] = {1.0, 0.0};
    return state;
}

void apply_hadamard(QuantumState& state, std::uint32_t qubit) {
    if (qubit >= state.qubits) throw std::invalid_argument("apply_hadamard: qubit out of range");
    const std::uint64_t mask = bit_mask(qubit);
    const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    for (std::uint64_t s = 0; s < state.amp.size(); ++s) {
        if (s & mask) continue;
        const auto lo = state.amp[s];
        const auto hi = state.amp[s | mask];
        state.amp[s] = (lo + hi) * inv_sqrt2;
        state.amp[s | mask] = (lo - hi) * inv_sqrt2;
    }
    check_norm(state);
}

void apply_pauli_x(QuantumState& state, std::uint32_t qubit) {
    if (qubit >= state.qubits) throw std::invalid_argument("apply_pauli_x: qubit out of range");
    const std::uint64_t mask = bit_mask(qubit);
    for (std::uint64_t s = 0; s < state.amp.size(); ++s) {
        if (!(s & mask)) std::swap(state.amp[s], state.amp[s | mask]);
    }
    check_norm(state);
}

OracleUnitary OracleUnitary::for_input(BitString x) {
    const std::size_t n = x.length();
    const std::uint32_t width =
        n <= 1 ? 1 : static_cast<std::uint32_t>(std::bit_width(std::uint64_t{n - 1}));
    return {std::move(x), width};
}

void apply_oracle(QuantumState& state, const OracleUnitary& oracle, QueryLedger& ledger) {
    if (state.qubits < oracle.min_qubits())
        throw std::invalid_argument("apply_oracle: state narrower than oracle registers");
    const std::uint64_t index_mask = (std::uint64_t{1} << oracle.index_width) - 1;
    const std::uint64_t target = bit_mask(oracle.target_qubit());
    for (std::uint64_t s = 0; s < state.amp.size(); ++s) {
        if (s & target) continue;
        const std::uint64_t i = s & index_mask;
        if (i < oracle.input.length() && oracle.input.bit(i) == 1)
            std::swap(state.amp[s], state.amp[s | target]);
    }
    ++ledger.quantum_queries;
    check_norm(state);
}

GadgetResult xor_gadget(int x0, int x1) {
    if ((x0 & ~1) || (x1 & ~1)) throw std::invalid_argument("xor_gadget: bits must be 0 or 1");
    const OracleUnitary oracle{
        BitString({static_cast<std::uint8_t>(x0), static_cast<std::uint8_t>(x1)}), 1};
    QueryLedger ledger;

    // (index, target) = |0>|1| -> H x H -> oracle (phase kickback)
    // -> H on index: the index register ends in |x0 xor x1> exactly.
    QuantumState state = basis_state(2, 0);
    apply_pauli_x(state, oracle.target_qubit());
    apply_hadamard(state, 0);
    apply_hadamard(state, oracle.target_qubit());
    apply_oracle(state, oracle, ledger);
    apply_hadamard(state, 0);

    const double p1 = one_probability(state, 0);
    GadgetResult result;
    result.answer = p1 > 0.5 ? 1 : 0;
    result.oracle_calls = ledger.quantum_queries;
    result.wrong_probability = std::max(result.answer ? 1.0 - p1 : p1, 0.0);
    if (result.wrong_probability > OUTCOME_TOLERANCE)
        throw std::logic_error("xor_gadget: outcome failed to concentrate");
    return result;
}

std::uint64_t compile_run(const std::vector<TraceEntry>& trace, std::uint32_t n) {
    QueryLedger ledger;
    for (const TraceEntry& entry : trace) {
        switch (entry.kind) {
            case QueryKind::Bit: {
                if (entry.indices.size() != 1 || entry.indices[0] >= n)
                    throw std::invalid_argument("compile_run: malformed bit entry");
                // Rebuild the one consulted bit and replay the unitary.
                std::vector<std::uint8_t> bits(n, 0);
                bits[entry.indices[0]] = static_cast<std::uint8_t>(entry.answer);
                const OracleUnitary oracle = OracleUnitary::for_input(BitString(std::move(bits)));
                QuantumState state =
                    basis_state(oracle.min_qubits(), entry.indices[0]);
                apply_oracle(state, oracle, ledger);
                const double p1 = one_probability(state, oracle.target_qubit());
                const double wrong = entry.answer ? 1.0 - p1 : p1;
                if (wrong > OUTCOME_TOLERANCE)
                    throw std::logic_error("compile_run: bit replay mismatch");
                break;
            }
            case QueryKind::Xor: {
                if (entry.indices.size() != 2 || entry.indices[0] >= n || entry.indices[1] >= n)
                    throw std::invalid_argument("compile_run: malformed xor entry");
                // Any 2-bit oracle with the recorded difference replays
                // identically; fix the first bit to zero.
                const GadgetResult g = xor_gadget(0, entry.answer);
                if (g.answer != entry.answer)
                    throw std::logic_error("compile_run: gadget replay mismatch");
                ledger.quantum_queries += g.oracle_calls;
                break;
            }
            case QueryKind::Parity:
                throw std::invalid_argument("compile_run: parity queries are not compilable");
        }
    }
    return ledger.quantum_queries;
}

} // namespace majlab::quantum
