#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkpi {

enum class Gate : uint8_t {
    H,
    S,
    SDG,
    X,
    Y,
    Z,
    CNOT,
    CZ,
    SWAP,
    T,
    CCX,
    RZ,
    MEASURE_Z,
    RESET,
};

int gate_arity(Gate g);
const char* gate_name(Gate g);

struct Instruction {
    Gate gate;
    std::array<int, 3> qubits{-1, -1, -1};
    double angle = 0.0;  // RZ only
    int cbit = -1;       // MEASURE_Z only
    int noise_tag = -1;  // index into Circuit::noise_tags, -1 = untagged

    int arity() const { return gate_arity(gate); }
};

// Gate-level circuit shared by the tableau, frame and statevector backends.
// Noise tags are simulation metadata; they never change QASM semantics.
struct Circuit {
    int qubit_count = 0;
    int cbit_count = 0;
    std::vector<Instruction> instructions;
    std::vector<std::string> noise_tags;

    explicit Circuit(int nq = 0) : qubit_count(nq) {}

    int declare_noise_tag(const std::string& name);

    void append(Gate g, std::initializer_list<int> qs, double angle = 0.0, int tag = -1);
    void h(int q) { append(Gate::H, {q}); }
    void s(int q) { append(Gate::S, {q}); }
    void sdg(int q) { append(Gate::SDG, {q}); }
    void x(int q) { append(Gate::X, {q}); }
    void y(int q) { append(Gate::Y, {q}); }
    void z(int q) { append(Gate::Z, {q}); }
    void t(int q) { append(Gate::T, {q}); }
    void rz(int q, double angle) { append(Gate::RZ, {q}, angle); }
    void cnot(int c, int t) { append(Gate::CNOT, {c, t}); }
    void cz(int a, int b) { append(Gate::CZ, {a, b}); }
    void swap(int a, int b) { append(Gate::SWAP, {a, b}); }
    void ccx(int a, int b, int t) { append(Gate::CCX, {a, b, t}); }
    void reset(int q) { append(Gate::RESET, {q}); }
    int measure(int q);  // returns the classical bit index

    bool structurally_equal(const Circuit& other) const;  // ignores noise tags
    size_t count_gate(Gate g) const;
};

// Replaces every CCX by the standard 6-CNOT network (2 H, 4 T, 3 RZ(-pi/4)).
Circuit decompose_toffoli(const Circuit& c);

// OpenQASM 2.0 subset. Emission is byte-deterministic.
std::string emit_qasm(const Circuit& c);

struct QasmError : std::runtime_error {
    int line;
    int column;
    QasmError(int line, int column, const std::string& msg);
};

Circuit parse_qasm(const std::string& text);

}  // namespace qkpi
