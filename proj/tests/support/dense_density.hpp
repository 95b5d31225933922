#pragma once

#include <complex>
#include <vector>

#include "qkpi/circuit.hpp"
#include "qkpi/noise.hpp"

namespace qkpi::test {

// Exact density-matrix evolution under the same Pauli channels the production
// backends sample stochastically. Test-side oracle, n <= 6.
class DenseDensity {
  public:
    explicit DenseDensity(int n) : n_(n), dim_(uint64_t(1) << n), rho_(dim_ * dim_, {0, 0}) {
        rho_[0] = {1, 0};
    }

    // rho -> U rho U^dagger for a one- or two-qubit unitary instruction
    void apply(const Instruction& instr) {
        std::vector<std::complex<double>> u = unitary_of(instr);
        apply_matrix(u);
    }

    void bit_flip(int q, double p) {
        if (p <= 0) return;
        Instruction x;
        x.gate = Gate::X;
        x.qubits[0] = q;
        mix(unitary_of(x), p);
    }

    void depolarize_1q(int q, double p) {
        if (p <= 0) return;
        std::vector<std::vector<std::complex<double>>> paulis;
        for (Gate g : {Gate::X, Gate::Y, Gate::Z}) {
            Instruction i;
            i.gate = g;
            i.qubits[0] = q;
            paulis.push_back(unitary_of(i));
        }
        mix_many(paulis, p);
    }

    void depolarize_2q(int a, int b, double p) {
        if (p <= 0) return;
        std::vector<std::vector<std::complex<double>>> paulis;
        for (int pa = 0; pa < 4; ++pa)
            for (int pb = 0; pb < 4; ++pb) {
                if (pa == 0 && pb == 0) continue;
                std::vector<std::complex<double>> u = pauli_matrix(a, pa);
                std::vector<std::complex<double>> v = pauli_matrix(b, pb);
                paulis.push_back(matmul(u, v));
            }
        mix_many(paulis, p);
    }

    // Evolve through a circuit applying the model's gate/init channels exactly.
    void run(const Circuit& c, const NoiseModel& m) {
        for (const auto& instr : c.instructions) {
            switch (instr.gate) {
                case Gate::RESET:
                    bit_flip(instr.qubits[0], m.p_init);
                    break;
                case Gate::MEASURE_Z:
                    break;  // readout noise does not touch the state
                default:
                    apply(instr);
                    if (instr.arity() == 2)
                        depolarize_2q(instr.qubits[0], instr.qubits[1], m.p_2q);
                    else
                        depolarize_1q(instr.qubits[0], m.p_1q);
            }
        }
    }

    double ghz_fidelity() const {
        uint64_t top = dim_ - 1;
        std::complex<double> f =
            rho_[0] + rho_[top] + rho_[top * dim_] + rho_[top * dim_ + top];
        return 0.5 * f.real();
    }

    // Tr(rho P)
    double pauli_expectation(const PauliString& p) const {
        std::complex<double> acc = 0;
        for (uint64_t i = 0; i < dim_; ++i) {
            uint64_t j = i;
            std::complex<double> c = p.sign;
            for (int q = 0; q < n_; ++q) {
                bool bit = (i >> q) & 1;
                bool x = p.x_bit(q), z = p.z_bit(q);
                if (x) j ^= uint64_t(1) << q;
                if (x && z) c *= std::complex<double>(0, 1) * (bit ? -1.0 : 1.0);
                else if (z && bit) c = -c;
            }
            // P|i> = c|j>; contributes <j|rho|...>: Tr(rho P) = sum_i rho[i][j]*c
            acc += rho_[i * dim_ + j] * c;
        }
        return acc.real();
    }

  private:
    int n_;
    uint64_t dim_;
    std::vector<std::complex<double>> rho_;  // row-major dim x dim

    std::vector<std::complex<double>> pauli_matrix(int q, int pauli) const {
        Instruction i;
        i.qubits[0] = q;
        switch (pauli) {
            case 1: i.gate = Gate::X; break;
            case 2: i.gate = Gate::Y; break;
            case 3: i.gate = Gate::Z; break;
            default: {
                std::vector<std::complex<double>> id(dim_ * dim_, {0, 0});
                for (uint64_t k = 0; k < dim_; ++k) id[k * dim_ + k] = 1;
                return id;
            }
        }
        return unitary_of(i);
    }

    std::vector<std::complex<double>> unitary_of(const Instruction& instr) const {
        std::vector<std::complex<double>> u(dim_ * dim_, {0, 0});
        const std::complex<double> I(0, 1);
        auto set1q = [&](int q, std::complex<double> m00, std::complex<double> m01,
                         std::complex<double> m10, std::complex<double> m11) {
            for (uint64_t col = 0; col < dim_; ++col) {
                bool bit = (col >> q) & 1;
                uint64_t other = col ^ (uint64_t(1) << q);
                if (!bit) {
                    u[col * dim_ + col] += m00;
                    u[other * dim_ + col] += m10;
                } else {
                    u[col * dim_ + col] += m11;
                    u[other * dim_ + col] += m01;
                }
            }
        };
        switch (instr.gate) {
            case Gate::H: set1q(instr.qubits[0], 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), -1 / std::sqrt(2.0)); break;
            case Gate::S: set1q(instr.qubits[0], 1, 0, 0, I); break;
            case Gate::SDG: set1q(instr.qubits[0], 1, 0, 0, -I); break;
            case Gate::X: set1q(instr.qubits[0], 0, 1, 1, 0); break;
            case Gate::Y: set1q(instr.qubits[0], 0, -I, I, 0); break;
            case Gate::Z: set1q(instr.qubits[0], 1, 0, 0, -1); break;
            case Gate::CNOT:
                for (uint64_t col = 0; col < dim_; ++col) {
                    uint64_t row = col;
                    if ((col >> instr.qubits[0]) & 1) row = col ^ (uint64_t(1) << instr.qubits[1]);
                    u[row * dim_ + col] = 1;
                }
                break;
            case Gate::CZ:
                for (uint64_t col = 0; col < dim_; ++col) {
                    bool both = ((col >> instr.qubits[0]) & 1) && ((col >> instr.qubits[1]) & 1);
                    u[col * dim_ + col] = both ? -1 : 1;
                }
                break;
            default:
                throw std::logic_error("dense oracle: unsupported gate");
        }
        return u;
    }

    std::vector<std::complex<double>> matmul(const std::vector<std::complex<double>>& a,
                                             const std::vector<std::complex<double>>& b) const {
        std::vector<std::complex<double>> out(dim_ * dim_, {0, 0});
        for (uint64_t i = 0; i < dim_; ++i)
            for (uint64_t k = 0; k < dim_; ++k) {
                std::complex<double> aik = a[i * dim_ + k];
                if (aik == std::complex<double>(0, 0)) continue;
                for (uint64_t j = 0; j < dim_; ++j) out[i * dim_ + j] += aik * b[k * dim_ + j];
            }
        return out;
    }

    std::vector<std::complex<double>> conj_transpose(const std::vector<std::complex<double>>& a) const {
        std::vector<std::complex<double>> out(dim_ * dim_);
        for (uint64_t i = 0; i < dim_; ++i)
            for (uint64_t j = 0; j < dim_; ++j) out[j * dim_ + i] = std::conj(a[i * dim_ + j]);
        return out;
    }

    void apply_matrix(const std::vector<std::complex<double>>& u) {
        rho_ = matmul(matmul(u, rho_), conj_transpose(u));
    }

    void mix(const std::vector<std::complex<double>>& u, double p) {
        std::vector<std::complex<double>> flipped = matmul(matmul(u, rho_), conj_transpose(u));
        for (uint64_t k = 0; k < rho_.size(); ++k) rho_[k] = (1 - p) * rho_[k] + p * flipped[k];
    }

    void mix_many(const std::vector<std::vector<std::complex<double>>>& paulis, double p) {
        std::vector<std::complex<double>> acc(dim_ * dim_, {0, 0});
        for (const auto& u : paulis) {
            auto term = matmul(matmul(u, rho_), conj_transpose(u));
            for (uint64_t k = 0; k < acc.size(); ++k) acc[k] += term[k];
        }
        double w = p / static_cast<double>(paulis.size());
        for (uint64_t k = 0; k < rho_.size(); ++k) rho_[k] = (1 - p) * rho_[k] + w * acc[k];
    }
};

}  // namespace qkpi::test
