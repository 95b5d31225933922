#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qkpi/decoder.hpp"
#include "qkpi/noise.hpp"
#include "qkpi/report.hpp"
#include "qkpi/surface.hpp"

namespace qkpi {

inline constexpr uint64_t kQecDefaultShotsPerBasis = 1000000;

// Error counts per measurement basis against the Phi+ correlation pattern
// (Z: equal bits, X: equal bits, Y: unequal bits). For the logical runs the
// random merge outcome is absorbed into the observable as a Pauli-frame
// update, so the pattern is Phi+ there as well.
struct BellOutcomeTally {
    std::array<uint64_t, 3> shots{};   // indexed Z, X, Y
    std::array<uint64_t, 3> errors{};
    std::string label = "phi+";
};

struct FidelityEstimate {
    double value = 0;
    double sigma = 0;
};

// Per-shot tableau simulation of the two-qubit Bell circuit under the full
// noise model (init, 1Q, CNOT, readout).
BellOutcomeTally physical_bell_tally(const NoiseModel& model, uint64_t shots_per_basis, uint64_t seed);

// Lattice-surgery logical Bell pair at distance d: detector sampling plus
// union-find decoding per basis.
BellOutcomeTally logical_bell_tally(int d, const NoiseModel& model, uint64_t shots_per_basis, uint64_t seed,
                                    int workers = 1);

// F = 1 - (1/2) sum_b err_b / N_b; reduces to 1 - (3/2) errors/measurements
// at equal basis counts.
FidelityEstimate bell_fidelity_from_tally(const BellOutcomeTally& tally);

// generic noisy tableau shot (used by the physical Bell experiment and tests)
std::vector<int> run_tableau_shot(const Circuit& circuit, const NoiseModel& model, uint64_t master_seed,
                                  uint64_t shot);

Circuit physical_bell_circuit(int basis);  // 0 = Z, 1 = X, 2 = Y

struct QScore {
    double physical_fidelity = 0;
    double physical_sigma = 0;
    double logical_fidelity = 0;
    double logical_sigma = 0;
    double q = 0;
    double q_sigma = 0;
    bool unbounded = false;  // 1 - F_logical at or below the statistical floor
};

QScore q_score(const std::vector<FidelityEstimate>& physical, const FidelityEstimate& logical);

struct QecRunResult {
    int distance = 0;
    BellOutcomeTally physical;
    BellOutcomeTally logical;
    QScore score;
    std::string layout_digest;
};

QecRunResult run_qec_benchmark(int d, const NoiseModel& model, uint64_t shots_per_basis, uint64_t seed,
                               int workers = 1);

json qec_section(const QecRunResult& result);

}  // namespace qkpi
