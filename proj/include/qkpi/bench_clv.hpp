#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qkpi/noise.hpp"
#include "qkpi/pauli.hpp"
#include "qkpi/report.hpp"
#include "qkpi/tableau.hpp"

namespace qkpi {

inline constexpr double kStabilizerThreshold = 0.36787944117144233;   // 1/e
inline constexpr double kDestabilizerThreshold = 0.18393972058572117; // 1/(2e)
inline constexpr uint64_t kClvMinShots = 512;

// Measurement of one signed Pauli observable by basis change + X layer +
// Z readout, estimated over L noisy shots (Pauli-frame propagation against
// the noiseless tableau reference).
struct ClvObservable {
    PauliString op;
    Estimate estimate;
};

struct ClvTrial {
    int qubits = 0;
    uint64_t shots = 0;  // L, per observable
    uint64_t seed = 0;
    struct PerClifford {
        std::string tableau_digest;
        std::string circuit_digest;
        size_t two_qubit_gates = 0;
        std::array<ClvObservable, 4> stabilizers;
        std::array<ClvObservable, 4> destabilizers;
    };
    std::array<PerClifford, 4> cliffords;
};

struct ClvVerdict {
    bool individual_stabilizer = false;
    bool individual_destabilizer = false;
    bool average_stabilizer = false;
    bool average_destabilizer = false;
    bool pass = false;
};

ClvTrial run_clv_trial(int qubits, uint64_t shots, const NoiseModel& model, uint64_t seed);
ClvVerdict evaluate_clv(const ClvTrial& trial);

enum class SearchStrategy { LinearUp, BinarySearch };

struct ClvScoreResult {
    int score = 0;  // largest passing N; 0 when none passed
    std::vector<std::pair<int, bool>> trace;
    std::vector<ClvTrial> trials;
};

ClvScoreResult clv_score(const NoiseModel& model, uint64_t shots, SearchStrategy strategy, uint64_t seed,
                         int n_max = 128);

// report assembly
json clv_trial_to_json(const ClvTrial& trial);
json clv_section(const ClvScoreResult& result);
ClvVerdict evaluate_clv_json(const json& trial);

// ---- shared expectation machinery (also used by the GHZ benchmark) ----

enum class ReferenceKind { PlusOne, Coin };

// prep + per-qubit basis change + X layer + full Z readout for observable p;
// the estimate is sign-corrected so that noiseless stabilizers read +1.
Circuit build_pauli_measurement_circuit(const Circuit& prep, const PauliString& p, bool x_layer = true);

Estimate estimate_pauli_expectation(const Circuit& prep, const PauliString& p, uint64_t shots,
                                    const NoiseModel& model, uint64_t master_seed, ReferenceKind ref);

}  // namespace qkpi
