#include "qkpi/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace qkpi {

void PauliString::set_x(int q, bool v) {
    uint64_t m = uint64_t(1) << (q % 64);
    x[q / 64] = v ? (x[q / 64] | m) : (x[q / 64] & ~m);
}

void PauliString::set_z(int q, bool v) {
    uint64_t m = uint64_t(1) << (q % 64);
    z[q / 64] = v ? (z[q / 64] | m) : (z[q / 64] & ~m);
}

bool PauliString::is_identity_bits() const {
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] | z[i]) return false;
    return true;
}

int PauliString::weight() const {
    int w = 0;
    for (size_t i = 0; i < x.size(); ++i) w += std::popcount(x[i] | z[i]);
    return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
    if (n != other.n) throw std::invalid_argument("qubit count mismatch");
    int acc = 0;
    for (size_t i = 0; i < x.size(); ++i)
        acc ^= std::popcount((x[i] & other.z[i]) ^ (z[i] & other.x[i])) & 1;
    return acc == 0;
}

namespace {

// phase exponent of sigma(x1,z1) * sigma(x2,z2) relative to sigma(x1^x2, z1^z2),
// as a power of i, summed mod 4 over qubits (Aaronson-Gottesman g function).
int phase_exponent(const PauliString& a, const PauliString& b) {
    int g = 0;
    for (int q = 0; q < a.n; ++q) {
        int x1 = a.x_bit(q), z1 = a.z_bit(q), x2 = b.x_bit(q), z2 = b.z_bit(q);
        if (!x1 && !z1) continue;
        if (x1 && z1) g += z2 - x2;              // Y * P
        else if (x1) g += z2 * (2 * x2 - 1);     // X * P
        else g += x2 * (1 - 2 * z2);             // Z * P
    }
    return ((g % 4) + 4) % 4;
}

}  // namespace

PauliString PauliString::multiply(const PauliString& other) const {
    if (n != other.n) throw std::invalid_argument("qubit count mismatch");
    int g = phase_exponent(*this, other);
    int phase = ((sign < 0 ? 2 : 0) + (other.sign < 0 ? 2 : 0) + g) % 4;
    if (phase % 2 != 0) throw std::logic_error("non-Hermitian Pauli product");
    PauliString out(n);
    for (size_t i = 0; i < x.size(); ++i) {
        out.x[i] = x[i] ^ other.x[i];
        out.z[i] = z[i] ^ other.z[i];
    }
    out.sign = phase == 0 ? +1 : -1;
    return out;
}

std::string PauliString::to_string() const {
    std::string s = sign < 0 ? "-" : "+";
    for (int q = 0; q < n; ++q) {
        int b = x_bit(q) | (z_bit(q) << 1);
        s += "IXZY"[b];
    }
    return s;
}

}  // namespace qkpi
