#include "qkpi/frame.hpp"

#include <algorithm>
#include <stdexcept>

namespace qkpi {

void PauliFrame::clear() {
    std::fill(x.begin(), x.end(), 0);
    std::fill(z.begin(), z.end(), 0);
}

bool PauliFrame::any() const {
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] | z[i]) return true;
    return false;
}

void PauliFrame::apply_gate(Gate g, const int* qs) {
    auto getx = [&](int q) -> bool { return (x[q / 64] >> (q % 64)) & 1; };
    auto getz = [&](int q) -> bool { return (z[q / 64] >> (q % 64)) & 1; };
    auto setx = [&](int q, bool v) {
        uint64_t m = uint64_t(1) << (q % 64);
        x[q / 64] = v ? (x[q / 64] | m) : (x[q / 64] & ~m);
    };
    auto setz = [&](int q, bool v) {
        uint64_t m = uint64_t(1) << (q % 64);
        z[q / 64] = v ? (z[q / 64] | m) : (z[q / 64] & ~m);
    };
    switch (g) {
        case Gate::H: {
            bool a = getx(qs[0]), b = getz(qs[0]);
            setx(qs[0], b);
            setz(qs[0], a);
            break;
        }
        case Gate::S:
        case Gate::SDG:
            setz(qs[0], getz(qs[0]) ^ getx(qs[0]));
            break;
        case Gate::X:
        case Gate::Y:
        case Gate::Z:
            break;  // Pauli conjugation only changes signs
        case Gate::CNOT:
            setx(qs[1], getx(qs[1]) ^ getx(qs[0]));
            setz(qs[0], getz(qs[0]) ^ getz(qs[1]));
            break;
        case Gate::CZ:
            setz(qs[0], getz(qs[0]) ^ getx(qs[1]));
            setz(qs[1], getz(qs[1]) ^ getx(qs[0]));
            break;
        case Gate::SWAP: {
            bool xa = getx(qs[0]), za = getz(qs[0]), xb = getx(qs[1]), zb = getz(qs[1]);
            setx(qs[0], xb);
            setz(qs[0], zb);
            setx(qs[1], xa);
            setz(qs[1], za);
            break;
        }
        default:
            throw std::invalid_argument("frame propagation requires Clifford instructions");
    }
}

FrameSampler::FrameSampler(const Circuit& circuit, const NoiseModel& model, uint64_t master_seed,
                           std::vector<NoiseSite> extra_sites)
    : circuit_(circuit), model_(model), master_(master_seed), nqubits_(circuit.qubit_count) {
    model_.validate();
    std::stable_sort(extra_sites.begin(), extra_sites.end(),
                     [](const NoiseSite& a, const NoiseSite& b) { return a.after_instruction < b.after_instruction; });
    size_t ei = 0;
    for (size_t k = 0; k < circuit.instructions.size(); ++k) {
        const Instruction& instr = circuit.instructions[k];
        auto kind = instruction_channel(circuit, instr);
        bool is_measure = instr.gate == Gate::MEASURE_Z;
        double p = kind ? channel_probability(*kind, model_) : 0.0;
        if (is_measure || p > 0.0) {
            Site s;
            s.instr_index = k;
            s.stream_item = k;
            s.kind = kind.value_or(ChannelKind::BeforeMeasure);
            s.qubits[0] = instr.qubits[0];
            s.qubits[1] = instr.qubits[1];
            s.nq = instr.arity() == 2 ? 2 : 1;
            s.cbit = instr.cbit;
            s.prob = p;
            channels_.push_back(s);
        }
        while (ei < extra_sites.size() && extra_sites[ei].after_instruction == k) {
            double ps = channel_probability(extra_sites[ei].kind, model_);
            if (ps > 0.0) {
                Site s;
                s.instr_index = k;
                s.stream_item = circuit.instructions.size() + ei;
                s.kind = extra_sites[ei].kind;
                s.qubits[0] = extra_sites[ei].qubit;
                s.qubits[1] = -1;
                s.nq = 1;
                s.cbit = -1;
                s.prob = ps;
                channels_.push_back(s);
            }
            ++ei;
        }
    }
    if (ei != extra_sites.size()) throw std::invalid_argument("noise site anchored past end of circuit");
}

void propagate_unit_fault(const Circuit& circuit, size_t after_instruction, const Fault& fault,
                          std::vector<uint8_t>& flips) {
    flips.assign(circuit.cbit_count, 0);
    PauliFrame frame(circuit.qubit_count);
    for (int i = 0; i < fault.nq; ++i) frame.toggle(fault.qubits[i], fault.pauli[i]);
    for (size_t k = after_instruction + 1; k < circuit.instructions.size(); ++k) {
        const Instruction& instr = circuit.instructions[k];
        switch (instr.gate) {
            case Gate::MEASURE_Z:
                flips[instr.cbit] = static_cast<uint8_t>(frame.x_bit(instr.qubits[0]));
                frame.z[instr.qubits[0] / 64] &= ~(uint64_t(1) << (instr.qubits[0] % 64));
                break;
            case Gate::RESET: {
                int q = instr.qubits[0];
                frame.x[q / 64] &= ~(uint64_t(1) << (q % 64));
                frame.z[q / 64] &= ~(uint64_t(1) << (q % 64));
                break;
            }
            default:
                frame.apply_gate(instr.gate, instr.qubits.data());
        }
    }
}

void FrameSampler::run_shot(uint64_t shot_index, std::vector<uint8_t>& flips) {
    flips.assign(circuit_.cbit_count, 0);
    PauliFrame frame(nqubits_);
    size_t si = 0;
    const size_t nsites = channels_.size();
    for (size_t k = 0; k < circuit_.instructions.size(); ++k) {
        const Instruction& instr = circuit_.instructions[k];
        switch (instr.gate) {
            case Gate::MEASURE_Z:
                flips[instr.cbit] = static_cast<uint8_t>(frame.x_bit(instr.qubits[0]));
                // collapse: a residual Z difference on the measured qubit is unobservable
                frame.z[instr.qubits[0] / 64] &= ~(uint64_t(1) << (instr.qubits[0] % 64));
                break;
            case Gate::RESET: {
                int q = instr.qubits[0];
                frame.x[q / 64] &= ~(uint64_t(1) << (q % 64));
                frame.z[q / 64] &= ~(uint64_t(1) << (q % 64));
                break;
            }
            default:
                frame.apply_gate(instr.gate, instr.qubits.data());
        }
        // faults anchored at this instruction
        while (si < nsites && channels_[si].instr_index == k) {
            const Site& s = channels_[si];
            if (s.prob > 0.0) {
                Prng rng = substream_rng(master_, shot_index, s.stream_item);
                auto f = sample_fault(s.kind, s.qubits, s.nq, model_, rng);
                if (f) {
                    if (s.kind == ChannelKind::BeforeMeasure) {
                        flips[s.cbit] ^= 1;
                    } else {
                        for (int i = 0; i < f->nq; ++i) frame.toggle(f->qubits[i], f->pauli[i]);
                    }
                }
            }
            ++si;
        }
    }
}

}  // namespace qkpi
