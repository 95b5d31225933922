#pragma once

#include <cstdint>
#include <vector>

#include "qkpi/circuit.hpp"
#include "qkpi/noise.hpp"
#include "qkpi/rng.hpp"

namespace qkpi {

// Noise site detached from any instruction (idle windows in syndrome cycles).
// Sites are indexed after the instruction list in the substream derivation so
// that every fault remains a pure function of (seed, shot, site index).
struct NoiseSite {
    size_t after_instruction;  // applied after this instruction index
    ChannelKind kind;
    int qubit;
};

// Pauli frame: the Pauli difference between a noisy trajectory and the
// noiseless reference. Propagation through Clifford instructions is exact for
// stochastic Pauli noise with Z-basis measurements; signs are irrelevant.
struct PauliFrame {
    std::vector<uint64_t> x, z;

    explicit PauliFrame(int n) : x((n + 63) / 64, 0), z((n + 63) / 64, 0) {}
    void clear();
    bool x_bit(int q) const { return (x[q / 64] >> (q % 64)) & 1; }
    void toggle(int q, uint8_t pauli) {
        if (pauli & 1) x[q / 64] ^= uint64_t(1) << (q % 64);
        if (pauli & 2) z[q / 64] ^= uint64_t(1) << (q % 64);
    }
    void apply_gate(Gate g, const int* qs);
    bool any() const;
};

// One noisy shot over a fixed circuit: samples faults per (seed, shot, site),
// propagates the frame, and reports measurement-record flips relative to the
// noiseless reference. Identical in distribution to a per-shot noisy tableau
// run for Clifford circuits.
class FrameSampler {
  public:
    FrameSampler(const Circuit& circuit, const NoiseModel& model, uint64_t master_seed,
                 std::vector<NoiseSite> extra_sites = {});

    // flips[cbit] = 1 iff that recorded bit differs from the reference
    void run_shot(uint64_t shot_index, std::vector<uint8_t>& flips);

    struct Site {
        size_t instr_index;    // instruction it is anchored to
        uint64_t stream_item;  // substream item id
        ChannelKind kind;
        int qubits[2];
        int nq;
        int cbit;  // >= 0 when the site is the measurement itself
        double prob;
    };

    const std::vector<Site>& sites() const { return channels_; }

  private:
    const Circuit& circuit_;
    NoiseModel model_;
    uint64_t master_;
    std::vector<Site> channels_;  // in circuit order
    int nqubits_;
};

// Measurement flips caused by one Pauli inserted after the given instruction,
// propagated through the rest of the circuit (unit-fault propagation for the
// detector error model).
void propagate_unit_fault(const Circuit& circuit, size_t after_instruction, const Fault& fault,
                          std::vector<uint8_t>& flips);

}  // namespace qkpi
