#pragma once

#include <complex>
#include <vector>

#include "qkpi/circuit.hpp"
#include "qkpi/pauli.hpp"
#include "qkpi/rng.hpp"
#include "qkpi/statevector.hpp"

namespace qkpi::test {

// Classical action of a CNOT-only circuit on a basis bitstring; independent
// oracle for the GF(2) synthesis checks.
inline uint64_t apply_cnot_circuit_to_bits(const Circuit& c, uint64_t bits) {
    for (const auto& instr : c.instructions) {
        if (instr.gate != Gate::CNOT) throw std::logic_error("expected CNOT-only circuit");
        if ((bits >> instr.qubits[0]) & 1) bits ^= uint64_t(1) << instr.qubits[1];
    }
    return bits;
}

// <psi|P|psi> computed directly from amplitudes.
inline double pauli_expectation(const std::vector<std::complex<double>>& amps, const PauliString& p) {
    std::complex<double> acc = 0.0;
    uint64_t xmask = 0, dim = amps.size();
    for (int q = 0; q < p.n; ++q)
        if (p.x_bit(q)) xmask |= uint64_t(1) << q;
    for (uint64_t i = 0; i < dim; ++i) {
        if (amps[i] == std::complex<double>(0.0, 0.0) && amps[i ^ xmask] == std::complex<double>(0.0, 0.0))
            continue;
        std::complex<double> c = p.sign;
        for (int q = 0; q < p.n; ++q) {
            bool bit = (i >> q) & 1;
            bool x = p.x_bit(q), z = p.z_bit(q);
            if (x && z) c *= std::complex<double>(0, 1) * (bit ? -1.0 : 1.0);  // Y
            else if (z && bit) c = -c;                                          // Z
        }
        // P|i> = c |i ^ xmask>
        acc += std::conj(amps[i ^ xmask]) * c * amps[i];
    }
    return acc.real();
}

inline std::vector<std::complex<double>> statevector_of(const Circuit& c) {
    StateVector sv(c.qubit_count);
    sv.apply_circuit(c);
    return sv.amplitudes();
}

inline PauliString random_pauli(int n, Prng& rng, bool allow_identity = false) {
    for (;;) {
        PauliString p(n);
        for (int q = 0; q < n; ++q) {
            uint64_t k = rng.next_below(4);
            p.set_x(q, k & 1);
            p.set_z(q, (k >> 1) & 1);
        }
        p.sign = rng.next_bool() ? -1 : +1;
        if (allow_identity || !p.is_identity_bits()) return p;
    }
}

inline Circuit random_clifford_gate_circuit(int n, int gates, Prng& rng) {
    Circuit c(n);
    for (int g = 0; g < gates; ++g) {
        switch (rng.next_below(n >= 2 ? 6 : 4)) {
            case 0: c.h(static_cast<int>(rng.next_below(n))); break;
            case 1: c.s(static_cast<int>(rng.next_below(n))); break;
            case 2: c.sdg(static_cast<int>(rng.next_below(n))); break;
            case 3: c.x(static_cast<int>(rng.next_below(n))); break;
            case 4: {
                int a = static_cast<int>(rng.next_below(n));
                int b = static_cast<int>(rng.next_below(n - 1));
                if (b >= a) ++b;
                c.cnot(a, b);
                break;
            }
            case 5: {
                int a = static_cast<int>(rng.next_below(n));
                int b = static_cast<int>(rng.next_below(n - 1));
                if (b >= a) ++b;
                c.cz(a, b);
                break;
            }
        }
    }
    return c;
}

}  // namespace qkpi::test
