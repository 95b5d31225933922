#pragma once

#include <cstdint>
#include <vector>

#include "qkpi/circuit.hpp"
#include "qkpi/gf2.hpp"
#include "qkpi/noise.hpp"
#include "qkpi/report.hpp"

namespace qkpi {

inline constexpr double kShorThreshold = 0.15;
inline constexpr int kShorSmallestMeaningfulScore = 4;
inline constexpr uint64_t kShorDefaultShots = 10000;

// Control-register padding c beyond the 2n+1 measured qubits. The measured
// top 2n+1 bits approximate s/r to the accuracy the continued-fraction
// recovery needs only when the register is padded; c = 6 puts the noiseless
// success probability within 0.3% of phi(r)/r (c = 1 leaves a 6-7% deficit).
inline constexpr int kShorDefaultRegisterPadding = 6;

struct PeriodInstance {
    int n = 0;                // bitstring length
    BinaryPolynomial poly;    // primitive polynomial of degree n
    BinaryMatrix m;           // its companion matrix (maximum-cycle)
    int t = 0;                // control-register size, >= 2n+1
    uint64_t r = 0;           // period 2^n - 1
    double p_s = 0;           // phi(r)/r
};

PeriodInstance make_period_instance(int n, int register_padding = kShorDefaultRegisterPadding);

// Hadamards on the t controls, target seeded at |0...01>, controlled
// permutations c-U_{M^(2^q)} as per-CNOT Toffolis, inverse QFT, measurement
// of the first (most significant) 2n+1 control qubits.
Circuit build_period_circuit(const PeriodInstance& inst);

// y interpreted as y / 2^(2n+1); returns the largest continued-fraction
// convergent denominator <= 2^n - 1.
uint64_t continued_fraction_period(uint64_t y, int n);

struct ShorTrial {
    PeriodInstance instance;
    uint64_t shots = 0;
    uint64_t successes = 0;
    double q_s = 0;
    double eta = 0;
    bool pass = false;
};

ShorTrial run_shor_trial(const PeriodInstance& inst, uint64_t shots, const NoiseModel& model, uint64_t seed);

// eta_tilde(n) = (1-p2q)^(12 n^3 / log2 n) * (1-pm)^(2n+1)
double shor_eta_estimate(int n, double p_2q, double p_m);
int analytic_score_estimate(double p_2q, double p_m, int n_max);

struct ShorScoreResult {
    int score = 0;
    bool meaningful = false;  // scores below 4 cannot beat a random-number generator
    bool capped = false;      // every n up to n_max passed
    std::vector<ShorTrial> trials;
};

ShorScoreResult shor_score(const NoiseModel& model, uint64_t shots, uint64_t seed, int n_max);

json shor_section(const ShorScoreResult& result, double p_2q, double p_m, int n_max);

}  // namespace qkpi
