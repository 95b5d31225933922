#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkpi/circuit.hpp"
#include "qkpi/pauli.hpp"
#include "qkpi/rng.hpp"

namespace qkpi {

// Aaronson-Gottesman tableau: rows 0..n-1 destabilizers, n..2n-1 stabilizers.
// Zero-initialized it represents the state |0...0> (equivalently the identity
// Clifford: destabilizer i = X_i, stabilizer i = Z_i). Value type; cloning is
// cheap and shots never share a mutable tableau.
class StabilizerTableau {
  public:
    explicit StabilizerTableau(int n);

    int num_qubits() const { return n_; }

    void apply_gate(Gate g, const int* qubits, int nq);
    void apply_gate(Gate g, std::initializer_list<int> qubits);
    void apply_circuit(const Circuit& c);  // unitary instructions only
    void apply_pauli(const PauliString& p);

    // Z-basis measurement with collapse; outcome 0/1.
    int measure_z(int q, Prng& rng);

    PauliString destabilizer_row(int i) const;
    PauliString stabilizer_row(int i) const;

    // Product of the selected stabilizer generators, exact sign.
    PauliString stabilizer_group_element(const std::vector<uint8_t>& selector) const;

    // -1 / 0 / +1, exact.
    int exact_expectation(const PauliString& p) const;

    bool rows_form_symplectic_basis() const;
    std::string serialize() const;

  private:
    friend StabilizerTableau sample_random_clifford(int, Prng&);

    int n_;
    int words_;
    std::vector<uint64_t> x_, z_;  // 2n rows, words_ words each
    std::vector<uint8_t> sign_;   // 2n, 0 = +, 1 = -

    bool xbit(int r, int q) const { return (x_[r * words_ + q / 64] >> (q % 64)) & 1; }
    bool zbit(int r, int q) const { return (z_[r * words_ + q / 64] >> (q % 64)) & 1; }
    void rowsum(int target, int source);  // row_target *= row_source
    PauliString row(int r) const;
    void set_row(int r, const PauliString& p);
};

// Uniformly random element of the n-qubit Clifford group (mod global phase):
// uniform symplectic basis by rejection-projected Gram-Schmidt plus uniform
// row signs. Deterministic given the rng stream.
StabilizerTableau sample_random_clifford(int n, Prng& rng);

// Uniform non-identity Pauli outside the stabilizer group of t (sign +1).
PauliString sample_destabilizer(const StabilizerTableau& t, Prng& rng);

// {H,S,CNOT} circuit whose induced tableau matches t on stabilizer rows and
// phases (destabilizer rows are free).
Circuit synthesize_clifford_circuit(const StabilizerTableau& t);

}  // namespace qkpi
