#include "qkpi/statevector.hpp"

#include <cmath>

namespace qkpi {

namespace {
const double kPi = std::acos(-1.0);
}

StateVector::StateVector(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("qubit count must be >= 1");
    if (n > kMaxStatevectorQubits)
        throw CapacityError("statevector capacity exceeded: " + std::to_string(n) + " qubits (cap " +
                            std::to_string(kMaxStatevectorQubits) + ")");
    amps_.assign(uint64_t(1) << n, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= n_) throw std::invalid_argument("qubit index out of range");
}

void StateVector::apply(const Instruction& instr) {
    using cd = std::complex<double>;
    const uint64_t dim = amps_.size();
    for (int i = 0; i < instr.arity(); ++i) check_qubit(instr.qubits[i]);

    auto one_qubit = [&](int q, cd u00, cd u01, cd u10, cd u11) {
        const uint64_t step = uint64_t(1) << q;
        for (uint64_t g = 0; g < dim; g += 2 * step) {
            for (uint64_t i = g; i < g + step; ++i) {
                cd a0 = amps_[i], a1 = amps_[i + step];
                amps_[i] = u00 * a0 + u01 * a1;
                amps_[i + step] = u10 * a0 + u11 * a1;
            }
        }
    };

    const cd I(0.0, 1.0);
    switch (instr.gate) {
        case Gate::H: {
            const double s = 1.0 / std::sqrt(2.0);
            one_qubit(instr.qubits[0], s, s, s, -s);
            break;
        }
        case Gate::S:
            one_qubit(instr.qubits[0], 1, 0, 0, I);
            break;
        case Gate::SDG:
            one_qubit(instr.qubits[0], 1, 0, 0, -I);
            break;
        case Gate::X:
            one_qubit(instr.qubits[0], 0, 1, 1, 0);
            break;
        case Gate::Y:
            one_qubit(instr.qubits[0], 0, -I, I, 0);
            break;
        case Gate::Z:
            one_qubit(instr.qubits[0], 1, 0, 0, -1);
            break;
        case Gate::T:
            one_qubit(instr.qubits[0], 1, 0, 0, std::polar(1.0, kPi / 4));
            break;
        case Gate::RZ:
            one_qubit(instr.qubits[0], std::polar(1.0, -instr.angle / 2), 0, 0,
                      std::polar(1.0, instr.angle / 2));
            break;
        case Gate::CNOT: {
            const uint64_t c = uint64_t(1) << instr.qubits[0], t = uint64_t(1) << instr.qubits[1];
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & c) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
            break;
        }
        case Gate::CZ: {
            const uint64_t a = uint64_t(1) << instr.qubits[0], b = uint64_t(1) << instr.qubits[1];
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & a) && (i & b)) amps_[i] = -amps_[i];
            break;
        }
        case Gate::SWAP: {
            const uint64_t a = uint64_t(1) << instr.qubits[0], b = uint64_t(1) << instr.qubits[1];
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & a) && !(i & b)) std::swap(amps_[i], amps_[(i & ~a) | b]);
            break;
        }
        case Gate::CCX: {
            const uint64_t a = uint64_t(1) << instr.qubits[0], b = uint64_t(1) << instr.qubits[1];
            const uint64_t t = uint64_t(1) << instr.qubits[2];
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & a) && (i & b) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
            break;
        }
        default:
            throw std::invalid_argument("apply() handles unitary instructions only");
    }
}

void StateVector::apply_pauli(int q, uint8_t pauli) {
    Instruction instr;
    instr.qubits[0] = q;
    switch (pauli) {
        case 1: instr.gate = Gate::X; break;
        case 2: instr.gate = Gate::Z; break;
        case 3: instr.gate = Gate::Y; break;
        default: return;
    }
    apply(instr);
}

void StateVector::apply_with_noise(const Circuit& context, const Instruction& instr, const NoiseModel& m,
                                   Prng& rng) {
    apply(instr);
    auto kind = instruction_channel(context, instr);
    if (!kind) return;
    auto f = sample_fault(*kind, instr.qubits.data(), instr.arity() == 2 ? 2 : 1, m, rng);
    if (f)
        for (int i = 0; i < f->nq; ++i) apply_pauli(f->qubits[i], f->pauli[i]);
}

void StateVector::apply_circuit(const Circuit& c) {
    if (c.qubit_count != n_) throw std::invalid_argument("qubit count mismatch");
    for (const auto& instr : c.instructions) apply(instr);
}

double StateVector::norm() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

int StateVector::measure_z(int q, Prng& rng) {
    check_qubit(q);
    const uint64_t mask = uint64_t(1) << q;
    double p1 = 0;
    for (uint64_t i = 0; i < amps_.size(); ++i)
        if (i & mask) p1 += std::norm(amps_[i]);
    int outcome = rng.next_double() < p1 ? 1 : 0;
    double keep = outcome ? p1 : 1.0 - p1;
    if (keep <= 0) throw std::logic_error("measurement collapse onto zero-probability branch");
    const double scale = 1.0 / std::sqrt(keep);
    for (uint64_t i = 0; i < amps_.size(); ++i) {
        if (((i & mask) != 0) == (outcome == 1))
            amps_[i] *= scale;
        else
            amps_[i] = 0.0;
    }
    return outcome;
}

std::vector<int> StateVector::measure_subset(const std::vector<int>& qubits, const NoiseModel& m, Prng& rng) {
    for (size_t i = 0; i < qubits.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (qubits[i] == qubits[j]) throw std::invalid_argument("repeated qubit in measurement subset");
    std::vector<int> bits;
    bits.reserve(qubits.size());
    for (int q : qubits) bits.push_back(measure_z(q, rng));
    if (m.p_meas > 0)
        for (auto& b : bits)
            if (rng.next_double() < m.p_meas) b ^= 1;
    return bits;
}

std::vector<double> StateVector::subset_probabilities(const std::vector<int>& qubits) const {
    for (int q : qubits) check_qubit(q);
    std::vector<double> out(uint64_t(1) << qubits.size(), 0.0);
    for (uint64_t i = 0; i < amps_.size(); ++i) {
        double p = std::norm(amps_[i]);
        if (p == 0.0) continue;
        uint64_t key = 0;
        for (size_t b = 0; b < qubits.size(); ++b) key |= ((i >> qubits[b]) & 1) << b;
        out[key] += p;
    }
    return out;
}

void append_qft(Circuit& c, int first, int t, bool inverse) {
    Circuit fwd(c.qubit_count);
    auto cphase = [&](int control, int target, double theta) {
        fwd.rz(control, theta / 2);
        fwd.rz(target, theta / 2);
        fwd.cnot(control, target);
        fwd.rz(target, -theta / 2);
        fwd.cnot(control, target);
    };
    // qubit first+0 is the most significant output bit
    for (int j = 0; j < t; ++j) {
        fwd.h(first + j);
        for (int m = j + 1; m < t; ++m) cphase(first + m, first + j, 2.0 * kPi / std::pow(2.0, m - j + 1));
    }
    for (int j = 0; j < t / 2; ++j) fwd.swap(first + j, first + t - 1 - j);

    if (!inverse) {
        for (const auto& instr : fwd.instructions) c.instructions.push_back(instr);
    } else {
        for (auto it = fwd.instructions.rbegin(); it != fwd.instructions.rend(); ++it) {
            Instruction instr = *it;
            if (instr.gate == Gate::RZ) instr.angle = -instr.angle;
            c.instructions.push_back(instr);
        }
    }
}

}  // namespace qkpi
