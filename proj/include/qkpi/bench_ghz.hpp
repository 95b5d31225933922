#pragma once

#include <cstdint>
#include <vector>

#include "qkpi/bench_clv.hpp"
#include "qkpi/circuit.hpp"
#include "qkpi/noise.hpp"
#include "qkpi/report.hpp"

namespace qkpi {

inline constexpr double kGhzEntanglementThreshold = 0.5;
inline constexpr uint64_t kGhzDefaultShots = 8192;

// H + binary-tree CNOT fan-out, two-qubit depth ceil(log2 N) (all-to-all).
Circuit build_ghz_circuit(int qubits);

struct GhzGenerators {
    // index 0: X^N; index k >= 1: Z_{k-1} Z_k
    std::vector<Estimate> mu;
};

// Two global settings: all-X (one estimate) and all-Z (N-1 correlators from
// the same shots).
GhzGenerators estimate_generators(int qubits, uint64_t shots, const NoiseModel& model, uint64_t seed);

double fidelity_lower_bound(const std::vector<double>& mu);
double fidelity_lower_bound_sigma(const std::vector<double>& sigmas);  // sqrt(1/4 sum sigma^2)
bool ghz_verdict(double f_min, double sigma_f);

struct GhzTrial {
    int qubits = 0;
    uint64_t shots = 0;
    GhzGenerators generators;
    double f_min = 0;
    double f_sigma = 0;
    bool pass = false;
};

GhzTrial run_ghz_trial(int qubits, uint64_t shots, const NoiseModel& model, uint64_t seed);

struct GhzScoreResult {
    int score = 0;
    std::vector<GhzTrial> trials;
};

// Incremental search: N -> N+1 until the first failure.
GhzScoreResult ghz_score(const NoiseModel& model, uint64_t shots, uint64_t seed, int n_cap = 256);

struct DfeEstimate {
    double epsilon = 0;
    double delta = 0;
    uint64_t budget = 0;  // T = ceil(8 ln(4/delta) / eps^2)
    double fidelity = 0;
    double sigma = 0;
};

uint64_t dfe_shot_budget(double epsilon, double delta);
DfeEstimate dfe_ghz(int qubits, double epsilon, double delta, const NoiseModel& model, uint64_t seed);

// Planning calculator for the populations-and-coherences route:
// T ~ N^2 log(1/delta) / eps^2 (order of magnitude, no hidden constant).
double pc_shot_budget(int qubits, double epsilon, double delta);

json ghz_section(const GhzScoreResult& result, const std::string& method);

}  // namespace qkpi
