#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qkpi {

// Signed n-qubit Pauli operator. x/z bit-packed; only Hermitian (+/-1 phase)
// operators are exposed, phases are tracked mod 4 internally during products.
struct PauliString {
    int n = 0;
    std::vector<uint64_t> x, z;
    int sign = +1;  // +1 or -1

    PauliString() = default;
    explicit PauliString(int n) : n(n), x((n + 63) / 64, 0), z((n + 63) / 64, 0) {}

    static PauliString identity(int n) { return PauliString(n); }

    bool x_bit(int q) const { return (x[q / 64] >> (q % 64)) & 1; }
    bool z_bit(int q) const { return (z[q / 64] >> (q % 64)) & 1; }
    void set_x(int q, bool v);
    void set_z(int q, bool v);

    bool is_identity_bits() const;
    int weight() const;  // number of non-identity sites

    bool commutes_with(const PauliString& other) const;

    // Operator product this * other; throws if the result is not Hermitian.
    PauliString multiply(const PauliString& other) const;

    bool same_bits(const PauliString& other) const { return x == other.x && z == other.z; }
    std::string to_string() const;  // e.g. "-XIZY"
};

}  // namespace qkpi
