#include "qkpi/noise.hpp"

#include <stdexcept>

namespace qkpi {

void NoiseModel::validate() const {
    for (double p : {p_1q, p_2q, p_init, p_meas, p_idle, p_res_idle})
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise probability out of [0,1]");
}

NoiseScheme parse_noise_scheme(const std::string& name) {
    if (name == "sd6" || name == "SD6") return NoiseScheme::SD6;
    if (name == "si1000" || name == "SI1000") return NoiseScheme::SI1000;
    if (name == "custom" || name == "CUSTOM") return NoiseScheme::CUSTOM;
    throw std::invalid_argument("unknown noise scheme '" + name + "'");
}

const char* noise_scheme_name(NoiseScheme s) {
    switch (s) {
        case NoiseScheme::SD6: return "sd6";
        case NoiseScheme::SI1000: return "si1000";
        case NoiseScheme::CUSTOM: return "custom";
    }
    return "?";
}

NoiseModel scheme_to_model(NoiseScheme s, double p) {
    if (!(p >= 0.0 && p <= 0.2)) throw std::invalid_argument("physical rate p must be in [0, 0.2]");
    NoiseModel m;
    switch (s) {
        case NoiseScheme::SD6:
            m.p_1q = m.p_2q = m.p_init = m.p_meas = m.p_idle = m.p_res_idle = p;
            break;
        case NoiseScheme::SI1000:
            m.p_2q = p;
            m.p_1q = p / 10;
            m.p_init = 2 * p;
            m.p_meas = 5 * p;
            m.p_idle = p / 10;
            m.p_res_idle = 2 * p;
            break;
        case NoiseScheme::CUSTOM:
            throw std::invalid_argument("CUSTOM scheme has no single-rate mapping");
    }
    return m;
}

double channel_probability(ChannelKind kind, const NoiseModel& model) {
    switch (kind) {
        case ChannelKind::After1qGate: return model.p_1q;
        case ChannelKind::After2qGate: return model.p_2q;
        case ChannelKind::Init: return model.p_init;
        case ChannelKind::BeforeMeasure: return model.p_meas;
        case ChannelKind::Idle: return model.p_idle;
        case ChannelKind::ResonatorIdle: return model.p_res_idle;
    }
    return 0.0;
}

std::optional<Fault> sample_fault(ChannelKind kind, const int* qubits, int nq, const NoiseModel& model,
                                  Prng& rng) {
    double p = channel_probability(kind, model);
    if (p <= 0.0) return std::nullopt;
    if (rng.next_double() >= p) return std::nullopt;

    Fault f;
    if (kind == ChannelKind::BeforeMeasure || kind == ChannelKind::Init) {
        // classical flip on the recorded bit / X flip after reset
        f.nq = 1;
        f.qubits[0] = qubits[0];
        f.pauli[0] = 1;
        return f;
    }
    if (kind == ChannelKind::After2qGate) {
        if (nq != 2) throw std::invalid_argument("two-qubit channel needs two qubits");
        uint64_t k = rng.next_below(15) + 1;  // 1..15, base-4 digits (p0, p1), not both zero
        f.nq = 2;
        f.qubits[0] = qubits[0];
        f.qubits[1] = qubits[1];
        f.pauli[0] = static_cast<uint8_t>(k & 3);
        f.pauli[1] = static_cast<uint8_t>(k >> 2);
        return f;
    }
    f.nq = 1;
    f.qubits[0] = qubits[0];
    f.pauli[0] = static_cast<uint8_t>(rng.next_below(3) + 1);
    return f;
}

std::optional<PauliString> sample_pauli_fault(ChannelKind kind, const std::vector<int>& qubits, int n,
                                              const NoiseModel& model, Prng& rng) {
    auto f = sample_fault(kind, qubits.data(), static_cast<int>(qubits.size()), model, rng);
    if (!f) return std::nullopt;
    PauliString p(n);
    for (int i = 0; i < f->nq; ++i) {
        p.set_x(f->qubits[i], f->pauli[i] & 1);
        p.set_z(f->qubits[i], (f->pauli[i] >> 1) & 1);
    }
    return p;
}

std::optional<ChannelKind> instruction_channel(const Circuit& c, const Instruction& instr) {
    if (instr.noise_tag >= 0 && c.noise_tags[instr.noise_tag] == "ideal") return std::nullopt;
    switch (instr.gate) {
        case Gate::MEASURE_Z: return ChannelKind::BeforeMeasure;
        case Gate::RESET: return ChannelKind::Init;
        case Gate::CCX: return std::nullopt;  // noise accounting is defined on the 6-CNOT decomposition
        default:
            return instr.arity() == 2 ? ChannelKind::After2qGate : ChannelKind::After1qGate;
    }
}

}  // namespace qkpi
