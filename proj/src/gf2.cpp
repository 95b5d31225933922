#include "qkpi/gf2.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace qkpi {

BinaryMatrix::BinaryMatrix(int n) : n(n), bits(static_cast<size_t>(n) * ((n + 63) / 64), 0) {
    if (n <= 0) throw std::invalid_argument("matrix dimension must be positive");
}

BinaryMatrix BinaryMatrix::identity(int n) {
    BinaryMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

bool BinaryMatrix::is_identity() const { return *this == identity(n); }

uint64_t BinaryMatrix::apply_to(uint64_t x) const {
    if (n > 64) throw std::invalid_argument("apply_to supports n <= 64");
    uint64_t y = 0;
    for (int r = 0; r < n; ++r) {
        uint64_t row = bits[r * words_per_row()];
        y |= uint64_t(std::popcount(row & x) & 1) << r;
    }
    return y;
}

std::vector<std::vector<int>> BinaryMatrix::to_rows() const {
    std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) rows[r][c] = get(r, c);
    return rows;
}

BinaryMatrix companion_matrix(const BinaryPolynomial& p) {
    int n = p.degree();
    if (n < 2) throw std::invalid_argument("companion matrix needs degree >= 2");
    BinaryMatrix m(n);
    for (int i = 0; i + 1 < n; ++i) m.set(i, i + 1, true);
    for (int j = 0; j < n; ++j) m.set(n - 1, j, p.coeffs[j] & 1);
    return m;
}

BinaryMatrix mat_mul_mod2(const BinaryMatrix& a, const BinaryMatrix& b) {
    if (a.n != b.n) throw std::invalid_argument("dimension mismatch");
    int n = a.n, w = a.words_per_row();
    BinaryMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            if (a.get(i, k)) {
                for (int j = 0; j < w; ++j) out.bits[i * w + j] ^= b.bits[k * w + j];
            }
        }
    }
    return out;
}

BinaryMatrix mat_pow2_mod2(const BinaryMatrix& m, int q) {
    if (q < 0) throw std::invalid_argument("exponent log must be >= 0");
    BinaryMatrix out = m;
    for (int i = 0; i < q; ++i) out = mat_mul_mod2(out, out);
    return out;
}

BinaryMatrix mat_pow_mod2(const BinaryMatrix& m, uint64_t e) {
    BinaryMatrix result = BinaryMatrix::identity(m.n);
    BinaryMatrix base = m;
    while (e) {
        if (e & 1) result = mat_mul_mod2(result, base);
        e >>= 1;
        if (e) base = mat_mul_mod2(base, base);
    }
    return result;
}

bool is_invertible_mod2(const BinaryMatrix& m) {
    BinaryMatrix a = m;
    int n = a.n, w = a.words_per_row();
    int rank = 0;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (a.get(r, col)) {
                pivot = r;
                break;
            }
        if (pivot < 0) return false;
        if (pivot != rank)
            for (int j = 0; j < w; ++j) std::swap(a.bits[pivot * w + j], a.bits[rank * w + j]);
        for (int r = 0; r < n; ++r) {
            if (r != rank && a.get(r, col))
                for (int j = 0; j < w; ++j) a.bits[r * w + j] ^= a.bits[rank * w + j];
        }
        ++rank;
    }
    return rank == n;
}

bool is_maximum_cycle(const BinaryMatrix& m, const std::vector<std::pair<uint64_t, int>>& factorization) {
    if (!is_invertible_mod2(m)) throw std::invalid_argument("matrix is singular");
    if (m.n >= 64) throw std::invalid_argument("maximum-cycle check supports n < 64");
    uint64_t order_target = (uint64_t(1) << m.n) - 1;
    uint64_t prod = 1;
    for (const auto& [p, a] : factorization)
        for (int i = 0; i < a; ++i) {
            if (prod > order_target / p) throw std::invalid_argument("factorization does not multiply to 2^n-1");
            prod *= p;
        }
    if (prod != order_target) throw std::invalid_argument("factorization does not multiply to 2^n-1");
    if (!mat_pow_mod2(m, order_target).is_identity()) return false;
    for (const auto& [p, a] : factorization) {
        (void)a;
        if (mat_pow_mod2(m, order_target / p).is_identity()) return false;
    }
    return true;
}

namespace {

// Records row operations "row target ^= row control" while reducing a copy of M
// to the identity; CNOT(control, target) has the same action on basis states.
struct RowOpLog {
    std::vector<std::pair<int, int>> ops;  // (control, target)
    void add(std::vector<uint64_t>& rows, int w, int control, int target) {
        for (int j = 0; j < w; ++j) rows[target * w + j] ^= rows[control * w + j];
        ops.emplace_back(control, target);
    }
};

bool bit(const std::vector<uint64_t>& rows, int w, int r, int c) {
    return (rows[r * w + c / 64] >> (c % 64)) & 1;
}

// Clears below the diagonal (forward elimination). `section` > 1 enables the
// partitioned duplicate-subrow elimination.
void lower_eliminate(std::vector<uint64_t>& rows, int n, int w, int section, RowOpLog& log) {
    for (int sec = 0; sec * section < n; ++sec) {
        int c0 = sec * section;
        int c1 = std::min(n, c0 + section);
        if (section > 1) {
            std::map<std::vector<uint64_t>, int> seen;
            for (int r = c0; r < n; ++r) {
                std::vector<uint64_t> sub((c1 - c0 + 63) / 64, 0);
                for (int c = c0; c < c1; ++c)
                    if (bit(rows, w, r, c)) sub[(c - c0) / 64] |= uint64_t(1) << ((c - c0) % 64);
                bool zero = true;
                for (uint64_t word : sub) zero &= word == 0;
                if (zero) continue;
                auto it = seen.find(sub);
                if (it == seen.end()) {
                    seen.emplace(std::move(sub), r);
                } else {
                    log.add(rows, w, it->second, r);
                }
            }
        }
        for (int col = c0; col < c1; ++col) {
            if (!bit(rows, w, col, col)) {
                int pivot = -1;
                for (int r = col + 1; r < n; ++r)
                    if (bit(rows, w, r, col)) {
                        pivot = r;
                        break;
                    }
                if (pivot < 0) throw std::invalid_argument("matrix is singular, not a permutation");
                log.add(rows, w, pivot, col);
            }
            for (int r = col + 1; r < n; ++r)
                if (bit(rows, w, r, col)) log.add(rows, w, col, r);
        }
    }
}

}  // namespace

Circuit synthesize_cnot_network(const BinaryMatrix& m) {
    if (!is_invertible_mod2(m)) throw std::invalid_argument("matrix is singular, not a permutation");
    int n = m.n, w = m.words_per_row();
    int section = 1;
    if (n >= 8) {
        int lg = 0;
        while ((1 << (lg + 1)) <= n) ++lg;
        section = std::max(2, lg / 2);
    }

    std::vector<uint64_t> rows = m.bits;
    RowOpLog log;
    lower_eliminate(rows, n, w, section, log);

    // transpose: clearing above the diagonal of an upper-triangular matrix is
    // lower elimination on the transpose, with control/target swapped.
    std::vector<uint64_t> tr(rows.size(), 0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (bit(rows, w, r, c)) tr[c * w + r / 64] |= uint64_t(1) << (r % 64);
    RowOpLog log2;
    lower_eliminate(tr, n, w, section, log2);

    // M = E(op_1)...E(op_p) * F_q^T...F_1^T, so gates run F-part first (transposed,
    // forward order) and the first elimination log reversed.
    Circuit circuit(n);
    for (const auto& op : log2.ops) circuit.cnot(op.second, op.first);
    for (auto it = log.ops.rbegin(); it != log.ops.rend(); ++it) circuit.cnot(it->first, it->second);
    return circuit;
}

uint64_t euler_totient_of_mersenne(int n, const std::vector<std::pair<uint64_t, int>>& factorization) {
    if (n < 1 || n > 63) throw std::invalid_argument("n out of range");
    uint64_t target = (uint64_t(1) << n) - 1;
    uint64_t prod = 1, phi = 1;
    for (const auto& [p, a] : factorization) {
        for (int i = 0; i < a; ++i) {
            if (prod > target / p) throw std::invalid_argument("inconsistent factorization");
            prod *= p;
            phi *= (i == 0) ? (p - 1) : p;
        }
    }
    if (prod != target) throw std::invalid_argument("inconsistent factorization");
    return phi;
}

std::vector<std::pair<uint64_t, int>> factor_mersenne(int n) {
    if (n < 1 || n > 63) throw std::invalid_argument("n out of range");
    uint64_t v = (uint64_t(1) << n) - 1;
    std::vector<std::pair<uint64_t, int>> factors;
    for (uint64_t p = 3; p * p <= v; p += 2) {
        if (v % p == 0) {
            int a = 0;
            while (v % p == 0) {
                v /= p;
                ++a;
            }
            factors.emplace_back(p, a);
        }
    }
    if (v > 1) factors.emplace_back(v, 1);
    return factors;
}

BinaryPolynomial primitive_polynomial(int degree) {
    // x^degree + x^k(+...) + 1; every entry is verified primitive by the test
    // suite via is_maximum_cycle on its companion matrix.
    static const std::vector<std::vector<int>> taps = {
        /* 2*/ {1},
        /* 3*/ {1},
        /* 4*/ {1},
        /* 5*/ {2},
        /* 6*/ {1},
        /* 7*/ {1},
        /* 8*/ {4, 3, 2},
        /* 9*/ {4},
        /*10*/ {3},
        /*11*/ {2},
        /*12*/ {6, 4, 1},
        /*13*/ {4, 3, 1},
        /*14*/ {10, 6, 1},
        /*15*/ {1},
        /*16*/ {12, 3, 1},
        /*17*/ {3},
        /*18*/ {7},
        /*19*/ {5, 2, 1},
        /*20*/ {3},
        /*21*/ {2},
        /*22*/ {1},
        /*23*/ {5},
        /*24*/ {7, 2, 1},
        /*25*/ {3},
        /*26*/ {6, 2, 1},
        /*27*/ {5, 2, 1},
        /*28*/ {3},
        /*29*/ {2},
        /*30*/ {6, 4, 1},
        /*31*/ {3},
        /*32*/ {22, 2, 1},
    };
    if (degree < 2 || degree > 32)
        throw std::invalid_argument("no built-in primitive polynomial for degree " + std::to_string(degree) +
                                    "; supply coefficients explicitly");
    BinaryPolynomial p;
    p.coeffs.assign(degree, 0);
    p.coeffs[0] = 1;
    for (int k : taps[degree - 2]) p.coeffs[k] = 1;
    return p;
}

}  // namespace qkpi
