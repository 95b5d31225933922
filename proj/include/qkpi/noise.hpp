#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qkpi/circuit.hpp"
#include "qkpi/pauli.hpp"
#include "qkpi/rng.hpp"

namespace qkpi {

// Stochastic Pauli channel parameters. Depolarizing channels are realized by
// probabilistic Pauli insertion (Pauli twirl), identically on the tableau,
// frame and statevector backends.
struct NoiseModel {
    double p_1q = 0.0;       // after every single-qubit gate
    double p_2q = 0.0;       // after every two-qubit gate
    double p_init = 0.0;     // X flip after reset
    double p_meas = 0.0;     // classical flip of the recorded bit
    double p_idle = 0.0;     // data-qubit depolarizing, once per syndrome cycle
    double p_res_idle = 0.0; // data-qubit depolarizing during ancilla readout

    bool all_zero() const {
        return p_1q == 0 && p_2q == 0 && p_init == 0 && p_meas == 0 && p_idle == 0 && p_res_idle == 0;
    }
    void validate() const;
};

enum class NoiseScheme { SD6, SI1000, CUSTOM };

NoiseScheme parse_noise_scheme(const std::string& name);
const char* noise_scheme_name(NoiseScheme s);

// Table mapping of a single physical rate p onto the six channels.
NoiseModel scheme_to_model(NoiseScheme s, double p);

enum class ChannelKind {
    After1qGate,
    After2qGate,
    Init,
    BeforeMeasure,
    Idle,
    ResonatorIdle,
};

double channel_probability(ChannelKind kind, const NoiseModel& model);

// Compact fault for the hot paths: pauli[i] is 1=X, 2=Z, 3=Y on qubits[i].
struct Fault {
    int nq = 0;
    int qubits[2] = {-1, -1};
    uint8_t pauli[2] = {0, 0};
};

std::optional<Fault> sample_fault(ChannelKind kind, const int* qubits, int nq, const NoiseModel& model,
                                  Prng& rng);

// Spec-surface variant: uniform non-identity Pauli on the touched qubits as a
// full PauliString (measurement flips come back as X on the recorded qubit).
std::optional<PauliString> sample_pauli_fault(ChannelKind kind, const std::vector<int>& qubits, int n,
                                              const NoiseModel& model, Prng& rng);

// Channel attached to a circuit instruction under a noise model. Gates map to
// their arity channel, RESET to Init, MEASURE_Z to BeforeMeasure. Instructions
// tagged "ideal" get no channel.
std::optional<ChannelKind> instruction_channel(const Circuit& c, const Instruction& instr);

}  // namespace qkpi
