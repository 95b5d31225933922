#include "qkpi/tableau.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qkpi {

StabilizerTableau::StabilizerTableau(int n) : n_(n), words_((n + 63) / 64) {
    if (n < 1) throw std::invalid_argument("qubit count must be >= 1");
    x_.assign(static_cast<size_t>(2 * n) * words_, 0);
    z_.assign(static_cast<size_t>(2 * n) * words_, 0);
    sign_.assign(2 * n, 0);
    for (int i = 0; i < n; ++i) {
        x_[i * words_ + i / 64] |= uint64_t(1) << (i % 64);        // destabilizer X_i
        z_[(n + i) * words_ + i / 64] |= uint64_t(1) << (i % 64);  // stabilizer Z_i
    }
}

void StabilizerTableau::apply_gate(Gate g, std::initializer_list<int> qubits) {
    std::vector<int> qs(qubits);
    apply_gate(g, qs.data(), static_cast<int>(qs.size()));
}

void StabilizerTableau::apply_gate(Gate g, const int* qubits, int nq) {
    if (nq != gate_arity(g)) throw std::invalid_argument("wrong qubit count for gate");
    for (int i = 0; i < nq; ++i) {
        if (qubits[i] < 0 || qubits[i] >= n_) throw std::invalid_argument("qubit index out of range");
        for (int j = 0; j < i; ++j)
            if (qubits[i] == qubits[j]) throw std::invalid_argument("repeated qubit index");
    }
    int rows = 2 * n_;
    auto xb = [&](int r, int q) -> bool { return xbit(r, q); };
    auto zb = [&](int r, int q) -> bool { return zbit(r, q); };
    auto setx = [&](int r, int q, bool v) {
        uint64_t& w = x_[r * words_ + q / 64];
        uint64_t m = uint64_t(1) << (q % 64);
        w = v ? (w | m) : (w & ~m);
    };
    auto setz = [&](int r, int q, bool v) {
        uint64_t& w = z_[r * words_ + q / 64];
        uint64_t m = uint64_t(1) << (q % 64);
        w = v ? (w | m) : (w & ~m);
    };

    switch (g) {
        case Gate::H: {
            int q = qubits[0];
            for (int r = 0; r < rows; ++r) {
                bool x = xb(r, q), z = zb(r, q);
                sign_[r] ^= static_cast<uint8_t>(x && z);
                setx(r, q, z);
                setz(r, q, x);
            }
            break;
        }
        case Gate::S: {
            int q = qubits[0];
            for (int r = 0; r < rows; ++r) {
                bool x = xb(r, q), z = zb(r, q);
                sign_[r] ^= static_cast<uint8_t>(x && z);
                setz(r, q, z ^ x);
            }
            break;
        }
        case Gate::SDG: {
            int q = qubits[0];
            for (int r = 0; r < rows; ++r) {
                bool x = xb(r, q), z = zb(r, q);
                sign_[r] ^= static_cast<uint8_t>(x && !z);
                setz(r, q, z ^ x);
            }
            break;
        }
        case Gate::X: {
            int q = qubits[0];
            for (int r = 0; r < rows; ++r) sign_[r] ^= static_cast<uint8_t>(zbit(r, q));
            break;
        }
        case Gate::Y: {
            int q = qubits[0];
            for (int r = 0; r < rows; ++r) sign_[r] ^= static_cast<uint8_t>(xbit(r, q) ^ zbit(r, q));
            break;
        }
        case Gate::Z: {
            int q = qubits[0];
            for (int r = 0; r < rows; ++r) sign_[r] ^= static_cast<uint8_t>(xbit(r, q));
            break;
        }
        case Gate::CNOT: {
            int c = qubits[0], t = qubits[1];
            for (int r = 0; r < rows; ++r) {
                bool xc = xb(r, c), zc = zb(r, c), xt = xb(r, t), zt = zb(r, t);
                sign_[r] ^= static_cast<uint8_t>(xc && zt && (xt == zc));
                setx(r, t, xt ^ xc);
                setz(r, c, zc ^ zt);
            }
            break;
        }
        case Gate::CZ: {
            int a = qubits[0], b = qubits[1];
            for (int r = 0; r < rows; ++r) {
                bool xa = xb(r, a), za = zb(r, a), xb2 = xb(r, b), zb2 = zb(r, b);
                sign_[r] ^= static_cast<uint8_t>(xa && xb2 && (za != zb2));
                setz(r, a, za ^ xb2);
                setz(r, b, zb2 ^ xa);
            }
            break;
        }
        case Gate::SWAP: {
            int a = qubits[0], b = qubits[1];
            for (int r = 0; r < rows; ++r) {
                bool xa = xb(r, a), za = zb(r, a), xb2 = xb(r, b), zb2 = zb(r, b);
                setx(r, a, xb2);
                setz(r, a, zb2);
                setx(r, b, xa);
                setz(r, b, za);
            }
            break;
        }
        default:
            throw std::invalid_argument(std::string("gate not supported on the tableau backend: ") + gate_name(g));
    }
}

void StabilizerTableau::apply_circuit(const Circuit& c) {
    if (c.qubit_count != n_) throw std::invalid_argument("qubit count mismatch");
    for (const auto& instr : c.instructions) {
        if (instr.gate == Gate::MEASURE_Z || instr.gate == Gate::RESET)
            throw std::invalid_argument("apply_circuit handles unitary instructions only");
        apply_gate(instr.gate, instr.qubits.data(), instr.arity());
    }
}

void StabilizerTableau::apply_pauli(const PauliString& p) {
    if (p.n != n_) throw std::invalid_argument("qubit count mismatch");
    // conjugation by a Pauli flips the sign of every anticommuting row
    for (int r = 0; r < 2 * n_; ++r) {
        int acc = 0;
        for (int w = 0; w < words_; ++w)
            acc ^= std::popcount((x_[r * words_ + w] & p.z[w]) ^ (z_[r * words_ + w] & p.x[w])) & 1;
        sign_[r] ^= static_cast<uint8_t>(acc);
    }
}

namespace {

int phase_exp_words(const uint64_t* xs, const uint64_t* zs, const uint64_t* xt, const uint64_t* zt, int n) {
    int g = 0;
    for (int q = 0; q < n; ++q) {
        int w = q / 64, b = q % 64;
        int x1 = (xs[w] >> b) & 1, z1 = (zs[w] >> b) & 1;
        int x2 = (xt[w] >> b) & 1, z2 = (zt[w] >> b) & 1;
        if (!x1 && !z1) continue;
        if (x1 && z1) g += z2 - x2;
        else if (x1) g += z2 * (2 * x2 - 1);
        else g += x2 * (1 - 2 * z2);
    }
    return ((g % 4) + 4) % 4;
}

}  // namespace

void StabilizerTableau::rowsum(int target, int source) {
    int g = phase_exp_words(&x_[source * words_], &z_[source * words_], &x_[target * words_],
                            &z_[target * words_], n_);
    int phase = (2 * sign_[source] + 2 * sign_[target] + g) % 4;
    if (phase % 2 != 0) throw std::logic_error("rowsum produced imaginary phase");
    sign_[target] = static_cast<uint8_t>(phase == 2);
    for (int w = 0; w < words_; ++w) {
        x_[target * words_ + w] ^= x_[source * words_ + w];
        z_[target * words_ + w] ^= z_[source * words_ + w];
    }
}

int StabilizerTableau::measure_z(int q, Prng& rng) {
    if (q < 0 || q >= n_) throw std::invalid_argument("qubit index out of range");
    int pivot = -1;
    for (int r = n_; r < 2 * n_; ++r)
        if (xbit(r, q)) {
            pivot = r;
            break;
        }
    if (pivot >= 0) {
        // random outcome; the pivot's destabilizer partner anticommutes with it
        // and is overwritten below rather than rowsummed
        for (int r = 0; r < 2 * n_; ++r)
            if (r != pivot && r != pivot - n_ && xbit(r, q)) rowsum(r, pivot);
        // destabilizer slot takes the old pivot row
        int d = pivot - n_;
        for (int w = 0; w < words_; ++w) {
            x_[d * words_ + w] = x_[pivot * words_ + w];
            z_[d * words_ + w] = z_[pivot * words_ + w];
        }
        sign_[d] = sign_[pivot];
        int outcome = rng.next_bool() ? 1 : 0;
        for (int w = 0; w < words_; ++w) {
            x_[pivot * words_ + w] = 0;
            z_[pivot * words_ + w] = 0;
        }
        z_[pivot * words_ + q / 64] |= uint64_t(1) << (q % 64);
        sign_[pivot] = static_cast<uint8_t>(outcome);
        return outcome;
    }
    // deterministic outcome: accumulate product of stabilizers whose destabilizer has x_q set
    std::vector<uint64_t> sx(words_, 0), sz(words_, 0);
    int ssign = 0;
    for (int i = 0; i < n_; ++i) {
        if (!xbit(i, q)) continue;
        int r = n_ + i;
        int g = phase_exp_words(&x_[r * words_], &z_[r * words_], sx.data(), sz.data(), n_);
        int phase = (2 * sign_[r] + 2 * ssign + g) % 4;
        if (phase % 2 != 0) throw std::logic_error("deterministic measurement phase error");
        ssign = phase == 2;
        for (int w = 0; w < words_; ++w) {
            sx[w] ^= x_[r * words_ + w];
            sz[w] ^= z_[r * words_ + w];
        }
    }
    return ssign;
}

PauliString StabilizerTableau::row(int r) const {
    PauliString p(n_);
    for (int w = 0; w < words_; ++w) {
        p.x[w] = x_[r * words_ + w];
        p.z[w] = z_[r * words_ + w];
    }
    p.sign = sign_[r] ? -1 : +1;
    return p;
}

void StabilizerTableau::set_row(int r, const PauliString& p) {
    for (int w = 0; w < words_; ++w) {
        x_[r * words_ + w] = p.x[w];
        z_[r * words_ + w] = p.z[w];
    }
    sign_[r] = static_cast<uint8_t>(p.sign < 0);
}

PauliString StabilizerTableau::destabilizer_row(int i) const {
    if (i < 0 || i >= n_) throw std::invalid_argument("row index out of range");
    return row(i);
}

PauliString StabilizerTableau::stabilizer_row(int i) const {
    if (i < 0 || i >= n_) throw std::invalid_argument("row index out of range");
    return row(n_ + i);
}

PauliString StabilizerTableau::stabilizer_group_element(const std::vector<uint8_t>& selector) const {
    if (static_cast<int>(selector.size()) != n_) throw std::invalid_argument("selector length mismatch");
    bool any = false;
    for (uint8_t b : selector) any |= b != 0;
    if (!any) throw std::invalid_argument("zero selector: identity is excluded");
    PauliString acc = PauliString::identity(n_);
    for (int i = 0; i < n_; ++i)
        if (selector[i]) acc = acc.multiply(stabilizer_row(i));
    return acc;
}

int StabilizerTableau::exact_expectation(const PauliString& p) const {
    if (p.n != n_) throw std::invalid_argument("qubit count mismatch");
    for (int i = 0; i < n_; ++i) {
        PauliString s = stabilizer_row(i);
        if (!p.commutes_with(s)) return 0;
    }
    // reduce p over an echelon form of the stabilizer rows, tracking signs
    std::vector<PauliString> echelon;
    std::vector<int> pivots;
    for (int i = 0; i < n_; ++i) {
        PauliString r = stabilizer_row(i);
        for (size_t e = 0; e < echelon.size(); ++e) {
            int pv = pivots[e];
            bool bit = pv < n_ ? r.x_bit(pv) : r.z_bit(pv - n_);
            if (bit) r = echelon[e].multiply(r);
        }
        int pv = -1;
        for (int q = 0; q < 2 * n_ && pv < 0; ++q) {
            bool bit = q < n_ ? r.x_bit(q) : r.z_bit(q - n_);
            if (bit) pv = q;
        }
        if (pv >= 0) {
            echelon.push_back(r);
            pivots.push_back(pv);
        }
    }
    PauliString acc = PauliString::identity(n_);
    PauliString residual = p;
    residual.sign = +1;
    for (size_t e = 0; e < echelon.size(); ++e) {
        int pv = pivots[e];
        bool bit = pv < n_ ? residual.x_bit(pv) : residual.z_bit(pv - n_);
        if (bit) {
            for (int w = 0; w < words_; ++w) {
                residual.x[w] ^= echelon[e].x[w];
                residual.z[w] ^= echelon[e].z[w];
            }
            acc = acc.multiply(echelon[e]);
        }
    }
    if (!residual.is_identity_bits()) throw std::logic_error("commuting Pauli not reducible to stabilizer group");
    return acc.sign * p.sign;
}

bool StabilizerTableau::rows_form_symplectic_basis() const {
    for (int i = 0; i < n_; ++i) {
        PauliString di = destabilizer_row(i), si = stabilizer_row(i);
        if (di.commutes_with(si)) return false;
        for (int j = 0; j < n_; ++j) {
            if (j == i) continue;
            PauliString dj = destabilizer_row(j), sj = stabilizer_row(j);
            if (!di.commutes_with(dj) || !di.commutes_with(sj) || !si.commutes_with(sj)) return false;
        }
    }
    return true;
}

std::string StabilizerTableau::serialize() const {
    std::string s;
    s.reserve(static_cast<size_t>(2 * n_) * (n_ + 2));
    for (int r = 0; r < 2 * n_; ++r) {
        s += sign_[r] ? '-' : '+';
        for (int q = 0; q < n_; ++q) s += "IXZY"[xbit(r, q) | (zbit(r, q) << 1)];
        s += ';';
    }
    return s;
}

namespace {

struct SympVec {
    std::vector<uint64_t> x, z;
};

int symp_product(const SympVec& a, const SympVec& b) {
    int acc = 0;
    for (size_t w = 0; w < a.x.size(); ++w)
        acc ^= std::popcount((a.x[w] & b.z[w]) ^ (a.z[w] & b.x[w])) & 1;
    return acc;
}

bool is_zero(const SympVec& v) {
    for (size_t w = 0; w < v.x.size(); ++w)
        if (v.x[w] | v.z[w]) return false;
    return true;
}

void xor_into(SympVec& dst, const SympVec& src) {
    for (size_t w = 0; w < dst.x.size(); ++w) {
        dst.x[w] ^= src.x[w];
        dst.z[w] ^= src.z[w];
    }
}

}  // namespace

StabilizerTableau sample_random_clifford(int n, Prng& rng) {
    if (n < 1) throw std::invalid_argument("qubit count must be >= 1");
    int words = (n + 63) / 64;
    uint64_t top_mask = (n % 64) ? ((uint64_t(1) << (n % 64)) - 1) : ~uint64_t(0);

    auto random_vec = [&]() {
        SympVec v;
        v.x.resize(words);
        v.z.resize(words);
        for (int w = 0; w < words; ++w) v.x[w] = rng.next_u64();
        for (int w = 0; w < words; ++w) v.z[w] = rng.next_u64();
        v.x[words - 1] &= top_mask;
        v.z[words - 1] &= top_mask;
        return v;
    };

    std::vector<SympVec> ds, ss;
    auto project = [&](SympVec& v) {
        for (size_t j = 0; j < ds.size(); ++j) {
            if (symp_product(v, ss[j])) xor_into(v, ds[j]);
            if (symp_product(v, ds[j])) xor_into(v, ss[j]);
        }
    };

    for (int i = 0; i < n; ++i) {
        SympVec d;
        for (;;) {
            d = random_vec();
            project(d);
            if (!is_zero(d)) break;
        }
        SympVec s;
        for (;;) {
            s = random_vec();
            project(s);
            if (symp_product(d, s) == 1) break;
        }
        ds.push_back(std::move(d));
        ss.push_back(std::move(s));
    }

    StabilizerTableau t(n);
    for (int i = 0; i < n; ++i) {
        for (int w = 0; w < words; ++w) {
            t.x_[i * words + w] = ds[i].x[w];
            t.z_[i * words + w] = ds[i].z[w];
            t.x_[(n + i) * words + w] = ss[i].x[w];
            t.z_[(n + i) * words + w] = ss[i].z[w];
        }
    }
    for (int r = 0; r < 2 * n; ++r) t.sign_[r] = static_cast<uint8_t>(rng.next_bool());
    return t;
}

PauliString sample_destabilizer(const StabilizerTableau& t, Prng& rng) {
    int n = t.num_qubits();
    std::vector<PauliString> stab_rows;
    stab_rows.reserve(n);
    for (int i = 0; i < n; ++i) stab_rows.push_back(t.stabilizer_row(i));
    int words = (n + 63) / 64;
    uint64_t top_mask = (n % 64) ? ((uint64_t(1) << (n % 64)) - 1) : ~uint64_t(0);
    for (;;) {
        PauliString p(n);
        for (int w = 0; w < words; ++w) p.x[w] = rng.next_u64();
        for (int w = 0; w < words; ++w) p.z[w] = rng.next_u64();
        p.x[words - 1] &= top_mask;
        p.z[words - 1] &= top_mask;
        if (p.is_identity_bits()) continue;
        bool anticommutes = false;
        for (const auto& s : stab_rows)
            if (!p.commutes_with(s)) {
                anticommutes = true;
                break;
            }
        if (anticommutes) return p;
    }
}

namespace {

// conjugate a working set of signed Pauli rows by a 1- or 2-qubit Clifford gate
void conj_rows(std::vector<PauliString>& rows, Gate g, int a, int b = -1) {
    for (auto& p : rows) {
        bool xa = p.x_bit(a), za = p.z_bit(a);
        switch (g) {
            case Gate::H:
                if (xa && za) p.sign = -p.sign;
                p.set_x(a, za);
                p.set_z(a, xa);
                break;
            case Gate::S:
                if (xa && za) p.sign = -p.sign;
                p.set_z(a, za ^ xa);
                break;
            case Gate::CNOT: {
                bool xb = p.x_bit(b), zb = p.z_bit(b);
                if (xa && zb && (xb == za)) p.sign = -p.sign;
                p.set_x(b, xb ^ xa);
                p.set_z(a, za ^ zb);
                break;
            }
            case Gate::CZ: {
                bool xb = p.x_bit(b), zb = p.z_bit(b);
                if (xa && xb && (za != zb)) p.sign = -p.sign;
                p.set_z(a, za ^ xb);
                p.set_z(b, zb ^ xa);
                break;
            }
            case Gate::Z:
                if (xa) p.sign = -p.sign;
                break;
            case Gate::X:
                if (za) p.sign = -p.sign;
                break;
            default:
                throw std::logic_error("unsupported conjugation gate");
        }
    }
}

struct ConjOp {
    Gate g;
    int a, b;
};

}  // namespace

Circuit synthesize_clifford_circuit(const StabilizerTableau& t) {
    int n = t.num_qubits();
    if (!t.rows_form_symplectic_basis()) throw std::invalid_argument("malformed tableau");
    std::vector<PauliString> rows;
    rows.reserve(n);
    for (int i = 0; i < n; ++i) rows.push_back(t.stabilizer_row(i));

    std::vector<ConjOp> ops;
    auto conj = [&](Gate g, int a, int b = -1) {
        conj_rows(rows, g, a, b);
        ops.push_back({g, a, b});
    };

    for (int i = 0; i < n; ++i) {
        // clear z bits at already-fixed columns by multiplying in Z_k rows
        for (int k = 0; k < i; ++k)
            if (rows[i].z_bit(k)) rows[i] = rows[k].multiply(rows[i]);

        // find a row with an x bit in the active region
        int xrow = -1, xcol = -1;
        for (int j = i; j < n && xrow < 0; ++j) {
            // rows j >= i may still carry z bits at columns < i; clear lazily when promoted
            for (int q = i; q < n; ++q)
                if (rows[j].x_bit(q)) {
                    xrow = j;
                    xcol = q;
                    break;
                }
        }
        if (xrow >= 0) {
            std::swap(rows[i], rows[xrow]);
            for (int k = 0; k < i; ++k)
                if (rows[i].z_bit(k)) rows[i] = rows[k].multiply(rows[i]);
            if (!rows[i].x_bit(i)) conj(Gate::CNOT, xcol, i);
            for (int q = 0; q < n; ++q)
                if (q != i && rows[i].x_bit(q)) conj(Gate::CNOT, i, q);
            if (rows[i].z_bit(i)) conj(Gate::S, i);
            for (int q = 0; q < n; ++q)
                if (q != i && rows[i].z_bit(q)) conj(Gate::CZ, i, q);
            if (rows[i].sign < 0) conj(Gate::Z, i);
            // row i is now +X_i; remaining rows commute with it, so z_i = 0 there
            for (int j = i + 1; j < n; ++j)
                if (rows[j].x_bit(i)) rows[j] = rows[i].multiply(rows[j]);
            conj(Gate::H, i);
        } else {
            int zrow = -1, zcol = -1;
            for (int j = i; j < n && zrow < 0; ++j)
                for (int q = i; q < n; ++q)
                    if (rows[j].z_bit(q)) {
                        zrow = j;
                        zcol = q;
                        break;
                    }
            if (zrow < 0) throw std::invalid_argument("malformed tableau: dependent stabilizer rows");
            std::swap(rows[i], rows[zrow]);
            for (int k = 0; k < i; ++k)
                if (rows[i].z_bit(k)) rows[i] = rows[k].multiply(rows[i]);
            if (!rows[i].z_bit(i)) conj(Gate::CNOT, i, zcol);
            for (int q = 0; q < n; ++q)
                if (q != i && rows[i].z_bit(q)) conj(Gate::CNOT, q, i);
            if (rows[i].sign < 0) conj(Gate::X, i);
            for (int j = i + 1; j < n; ++j)
                if (rows[j].z_bit(i)) rows[j] = rows[i].multiply(rows[j]);
        }
    }
    for (int i = 0; i < n; ++i) {
        bool ok = rows[i].sign > 0 && rows[i].z_bit(i) && !rows[i].x_bit(i);
        if (ok) {
            PauliString zi(n);
            zi.set_z(i, true);
            ok = rows[i].same_bits(zi);
        }
        if (!ok) throw std::logic_error("clifford synthesis failed to normalize rows");
    }

    // invert: reversed op sequence, each op expanded over {H,S,CNOT}
    Circuit circuit(n);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        switch (it->g) {
            case Gate::H:
                circuit.h(it->a);
                break;
            case Gate::CNOT:
                circuit.cnot(it->a, it->b);
                break;
            case Gate::S:  // S^-1 = SSS
                circuit.s(it->a);
                circuit.s(it->a);
                circuit.s(it->a);
                break;
            case Gate::CZ:
                circuit.h(it->b);
                circuit.cnot(it->a, it->b);
                circuit.h(it->b);
                break;
            case Gate::Z:
                circuit.s(it->a);
                circuit.s(it->a);
                break;
            case Gate::X:
                circuit.h(it->a);
                circuit.s(it->a);
                circuit.s(it->a);
                circuit.h(it->a);
                break;
            default:
                throw std::logic_error("unexpected synthesis op");
        }
    }
    return circuit;
}

}  // namespace qkpi
