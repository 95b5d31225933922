#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qkpi/circuit.hpp"

namespace qkpi {

// Square matrix over GF(2), bit-packed row-major.
struct BinaryMatrix {
    int n = 0;
    std::vector<uint64_t> bits;  // words_per_row() words per row

    BinaryMatrix() = default;
    explicit BinaryMatrix(int n);
    static BinaryMatrix identity(int n);

    int words_per_row() const { return (n + 63) / 64; }
    bool get(int r, int c) const { return (bits[r * words_per_row() + c / 64] >> (c % 64)) & 1; }
    void set(int r, int c, bool v) {
        uint64_t& w = bits[r * words_per_row() + c / 64];
        uint64_t m = uint64_t(1) << (c % 64);
        w = v ? (w | m) : (w & ~m);
    }
    bool operator==(const BinaryMatrix& o) const { return n == o.n && bits == o.bits; }
    bool is_identity() const;

    // y = M x (mod 2); x packed little-endian in a uint64 (n <= 64)
    uint64_t apply_to(uint64_t x) const;

    std::vector<std::vector<int>> to_rows() const;  // 0/1 entries, for bindings and tests
};

// p(x) = x^n + c_{n-1} x^{n-1} + ... + c_1 x + c_0 over GF(2); leading coefficient implicit.
struct BinaryPolynomial {
    std::vector<uint8_t> coeffs;  // c_0 .. c_{n-1}

    int degree() const { return static_cast<int>(coeffs.size()); }
};

BinaryMatrix companion_matrix(const BinaryPolynomial& p);
BinaryMatrix mat_mul_mod2(const BinaryMatrix& a, const BinaryMatrix& b);
BinaryMatrix mat_pow2_mod2(const BinaryMatrix& m, int q);       // M^(2^q) by q squarings
BinaryMatrix mat_pow_mod2(const BinaryMatrix& m, uint64_t e);   // square-and-multiply
bool is_invertible_mod2(const BinaryMatrix& m);

// ord(M) == 2^n - 1, given the prime factorization of 2^n - 1.
bool is_maximum_cycle(const BinaryMatrix& m, const std::vector<std::pair<uint64_t, int>>& factorization);

// CNOT-only circuit realizing b -> M b (mod 2). Gaussian elimination for small n,
// partitioned (Patel-Markov-Hayes) synthesis for n >= 8. Ties break toward the
// lowest-index pivot; the row-operation log is emitted in reverse.
Circuit synthesize_cnot_network(const BinaryMatrix& m);

// phi(2^n - 1) from the factorization product formula.
uint64_t euler_totient_of_mersenne(int n, const std::vector<std::pair<uint64_t, int>>& factorization);

// Trial division of 2^n - 1 (n <= 63; instant at desk scale).
std::vector<std::pair<uint64_t, int>> factor_mersenne(int n);

// Built-in primitive polynomial, one per degree 2..32.
BinaryPolynomial primitive_polynomial(int degree);

}  // namespace qkpi
