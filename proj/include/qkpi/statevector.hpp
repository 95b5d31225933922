#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qkpi/circuit.hpp"
#include "qkpi/noise.hpp"
#include "qkpi/rng.hpp"

namespace qkpi {

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxStatevectorQubits = 26;

// Dense simulator for the non-Clifford period-finding circuits.
class StateVector {
  public:
    explicit StateVector(int n);  // |0...0>

    int num_qubits() const { return n_; }

    void apply(const Instruction& instr);  // unitary only
    // unitary, then the sampled Pauli fault of the instruction's channel (if any);
    // the owning circuit resolves noise tags
    void apply_with_noise(const Circuit& context, const Instruction& instr, const NoiseModel& m, Prng&);
    void apply_circuit(const Circuit& c);

    int measure_z(int q, Prng& rng);  // Born rule, collapse + renormalize
    // Measures the listed qubits in order; classical flips applied per model.
    std::vector<int> measure_subset(const std::vector<int>& qubits, const NoiseModel& m, Prng& rng);

    // Marginal distribution of the listed qubits (bit i of the outcome index
    // is qubits[i]); no collapse.
    std::vector<double> subset_probabilities(const std::vector<int>& qubits) const;

    double norm() const;
    std::complex<double> amplitude(uint64_t basis) const { return amps_[basis]; }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  private:
    int n_;
    std::vector<std::complex<double>> amps_;

    void apply_pauli(int q, uint8_t pauli);
    void check_qubit(int q) const;
};

// Textbook QFT / inverse QFT on qubits [0, t); qubit 0 is the most significant
// bit of the transformed integer. Controlled phases are emitted as the
// RZ/CNOT/RZ/CNOT decomposition so the gate set stays within the IR.
void append_qft(Circuit& c, int first, int t, bool inverse);

}  // namespace qkpi
