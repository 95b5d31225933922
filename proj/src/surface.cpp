#include "qkpi/surface.hpp"

#include <algorithm>
#include <stdexcept>

namespace qkpi {

namespace {

// CNOT schedules, offsets from the ancilla. The last two steps of a Z check
// share a y coordinate and the last two of an X check share an x coordinate,
// so ancilla hook errors land perpendicular to the matching logical.
constexpr std::array<std::pair<int, int>, 4> kZOrder{{{-1, -1}, {+1, -1}, {-1, +1}, {+1, +1}}};
constexpr std::array<std::pair<int, int>, 4> kXOrder{{{-1, -1}, {-1, +1}, {+1, -1}, {+1, +1}}};

}  // namespace

std::string SurgeryLayout::digest() const {
    std::string s = "d=" + std::to_string(d) + ";q=" + std::to_string(qubit_count) + ";";
    for (const auto& c : checks_merged) {
        s += c.type;
        s += std::to_string(c.ancilla) + ":";
        for (int q : c.data) s += std::to_string(q) + ",";
        s += ";";
    }
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SurgeryLayout make_surgery_layout(int d) {
    if (d < 3 || d % 2 == 0) throw std::invalid_argument("code distance must be odd and >= 3");
    SurgeryLayout L;
    L.d = d;
    const int wa = 2 * d + 1;  // merged data columns: A columns, extra column, B columns

    auto add_qubit = [&](int x, int y) {
        auto key = std::make_pair(x, y);
        auto it = L.qubit_of.find(key);
        if (it != L.qubit_of.end()) return it->second;
        int id = L.qubit_count++;
        L.qubit_of.emplace(key, id);
        L.coord_of.push_back(key);
        return id;
    };

    // data qubits: x = 2i+1 for column i in [0, 2d], y = 2j+1 for row j in [0, d)
    for (int i = 0; i < wa; ++i)
        for (int j = 0; j < d; ++j) {
            int q = add_qubit(2 * i + 1, 2 * j + 1);
            if (i < d)
                L.data_a.push_back(q);
            else if (i == d)
                L.data_extra.push_back(q);
            else
                L.data_b.push_back(q);
        }

    // checks of a sub-patch spanning data columns [c0, c1)
    auto build_checks = [&](int c0, int c1) {
        std::vector<SurgeryCheck> checks;
        for (int a = c0; a <= c1; ++a) {
            for (int b = 0; b <= d; ++b) {
                char type = ((a + b) % 2 == 0) ? 'Z' : 'X';
                // boundary rules: top/bottom rows carry only Z checks, the
                // left/right (seam-facing) columns only X checks
                if ((b == 0 || b == d) && type != 'Z') continue;
                if ((a == c0 || a == c1) && type != 'X') continue;
                SurgeryCheck chk;
                chk.type = type;
                const auto& order = type == 'Z' ? kZOrder : kXOrder;
                int present = 0;
                for (int k = 0; k < 4; ++k) {
                    int x = 2 * a + order[k].first, y = 2 * b + order[k].second;
                    auto it = L.qubit_of.find({x, y});
                    bool in_range = x >= 2 * c0 + 1 && x <= 2 * c1 - 1 && y >= 1 && y <= 2 * d - 1;
                    if (in_range && it != L.qubit_of.end()) {
                        chk.data[k] = it->second;
                        ++present;
                    }
                }
                if (present < 2) continue;
                chk.ancilla = add_qubit(2 * a, 2 * b);
                checks.push_back(chk);
            }
        }
        return checks;
    };

    L.checks_a = build_checks(0, d);
    L.checks_b = build_checks(d + 1, wa);
    L.checks_merged = build_checks(0, wa);

    const size_t expected_patch = static_cast<size_t>(d) * d - 1;
    if (L.checks_a.size() != expected_patch || L.checks_b.size() != expected_patch)
        throw std::logic_error("patch stabilizer count mismatch");
    if (L.checks_merged.size() != 2 * expected_patch + static_cast<size_t>(d) + 1)
        throw std::logic_error("merged stabilizer count mismatch");

    // checks of the merged layout absent from both patches (all Z type)
    std::vector<int> patch_ancillas;
    for (const auto& c : L.checks_a) patch_ancillas.push_back(c.ancilla);
    for (const auto& c : L.checks_b) patch_ancillas.push_back(c.ancilla);
    std::sort(patch_ancillas.begin(), patch_ancillas.end());
    for (size_t k = 0; k < L.checks_merged.size(); ++k) {
        if (!std::binary_search(patch_ancillas.begin(), patch_ancillas.end(), L.checks_merged[k].ancilla)) {
            if (L.checks_merged[k].type != 'Z') throw std::logic_error("seam checks must be Z type");
            L.new_z_checks.push_back(static_cast<int>(k));
        }
    }
    if (L.new_z_checks.size() != static_cast<size_t>(d) + 1)
        throw std::logic_error("expected d+1 extra stabilizers");

    // logical supports: Zbar along the seam-adjacent columns, Xbar along the top row
    for (int j = 0; j < d; ++j) {
        L.zbar_a.push_back(L.qubit_of.at({2 * d - 1, 2 * j + 1}));
        L.zbar_b.push_back(L.qubit_of.at({2 * d + 3, 2 * j + 1}));
    }
    for (int i = 0; i < d; ++i) {
        L.xbar_a.push_back(L.qubit_of.at({2 * i + 1, 1}));
        L.xbar_b.push_back(L.qubit_of.at({2 * (d + 1 + i) + 1, 1}));
    }
    L.extra_top = L.qubit_of.at({2 * d + 1, 1});
    return L;
}

// The check subset S with prod_{q in patch} Y_q ~ Xbar(top row) Zbar(seam
// column) prod_{c in S} c, solved over GF(2). Returns indices into the
// patch's check list.
std::vector<int> y_product_check_subset(const SurgeryLayout& L, bool patch_a) {
    const auto& checks = patch_a ? L.checks_a : L.checks_b;
    const auto& data = patch_a ? L.data_a : L.data_b;
    const auto& xbar = patch_a ? L.xbar_a : L.xbar_b;
    const auto& zbar = patch_a ? L.zbar_a : L.zbar_b;

    const int bits = 2 * L.qubit_count;
    auto vec_of_check = [&](const SurgeryCheck& c) {
        std::vector<uint64_t> v((bits + 63) / 64, 0);
        for (int q : c.data) {
            if (q < 0) continue;
            int bit = c.type == 'X' ? q : L.qubit_count + q;
            v[bit / 64] |= uint64_t(1) << (bit % 64);
        }
        return v;
    };
    std::vector<uint64_t> target((bits + 63) / 64, 0);
    auto flip = [&](int bit) { target[bit / 64] ^= uint64_t(1) << (bit % 64); };
    for (int q : data) {
        flip(q);
        flip(L.qubit_count + q);
    }
    for (int q : xbar) flip(q);
    for (int q : zbar) flip(L.qubit_count + q);

    // Gaussian elimination with combination tracking
    std::vector<std::vector<uint64_t>> rows;
    std::vector<std::vector<uint64_t>> combos;
    const int ncombo = (static_cast<int>(checks.size()) + 63) / 64;
    for (size_t k = 0; k < checks.size(); ++k) {
        rows.push_back(vec_of_check(checks[k]));
        combos.emplace_back(ncombo, 0);
        combos.back()[k / 64] |= uint64_t(1) << (k % 64);
    }
    std::vector<int> pivot_of_row(rows.size(), -1);
    int rank = 0;
    for (int bit = 0; bit < bits && rank < static_cast<int>(rows.size()); ++bit) {
        int pick = -1;
        for (size_t r = rank; r < rows.size(); ++r)
            if ((rows[r][bit / 64] >> (bit % 64)) & 1) {
                pick = static_cast<int>(r);
                break;
            }
        if (pick < 0) continue;
        std::swap(rows[pick], rows[rank]);
        std::swap(combos[pick], combos[rank]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == rank) continue;
            if ((rows[r][bit / 64] >> (bit % 64)) & 1) {
                for (size_t w = 0; w < rows[r].size(); ++w) rows[r][w] ^= rows[rank][w];
                for (int w = 0; w < ncombo; ++w) combos[r][w] ^= combos[rank][w];
            }
        }
        pivot_of_row[rank] = bit;
        ++rank;
    }
    std::vector<uint64_t> combo(ncombo, 0);
    for (int r = 0; r < rank; ++r) {
        int bit = pivot_of_row[r];
        if ((target[bit / 64] >> (bit % 64)) & 1) {
            for (size_t w = 0; w < target.size(); ++w) target[w] ^= rows[r][w];
            for (int w = 0; w < ncombo; ++w) combo[w] ^= combos[r][w];
        }
    }
    for (uint64_t w : target)
        if (w) throw std::logic_error("transversal-Y product is not expressible over the patch checks");
    std::vector<int> subset;
    for (size_t k = 0; k < checks.size(); ++k)
        if ((combo[k / 64] >> (k % 64)) & 1) subset.push_back(static_cast<int>(k));
    return subset;
}

namespace {

struct Builder {
    const SurgeryLayout& L;
    AnnotatedCircuit out;
    int ideal_tag;
    // last measurement index of each check, keyed by ancilla qubit
    std::map<int, int> last_measurement;

    explicit Builder(const SurgeryLayout& layout) : L(layout), out{Circuit(layout.qubit_count), {}, {}, {}, {}} {
        ideal_tag = out.circuit.declare_noise_tag("ideal");
    }

    void gate(Gate g, std::initializer_list<int> qs, bool ideal) {
        out.circuit.append(g, qs, 0.0, ideal ? ideal_tag : -1);
    }

    int measure(int q, bool ideal) {
        int cbit = out.circuit.measure(q);
        if (ideal) out.circuit.instructions.back().noise_tag = ideal_tag;
        return cbit;
    }

    void idle_sites(const std::vector<int>& data, ChannelKind kind) {
        size_t anchor = out.circuit.instructions.size() - 1;
        for (int q : data) out.sites.push_back(NoiseSite{anchor, kind, q});
    }

    // one syndrome-extraction round; returns ancilla -> measurement index.
    // data qubits idle through the two single-qubit-gate windows and sit in
    // the resonator-idle window while the ancillas are read out
    std::map<int, int> round(const std::vector<const SurgeryCheck*>& checks, const std::vector<int>& idle_data,
                             bool ideal) {
        for (const auto* c : checks) gate(Gate::RESET, {c->ancilla}, ideal);
        for (const auto* c : checks)
            if (c->type == 'X') gate(Gate::H, {c->ancilla}, ideal);
        if (!ideal && !idle_data.empty()) idle_sites(idle_data, ChannelKind::Idle);
        for (int step = 0; step < 4; ++step) {
            for (const auto* c : checks) {
                int dq = c->data[step];
                if (dq < 0) continue;
                if (c->type == 'Z')
                    gate(Gate::CNOT, {dq, c->ancilla}, ideal);
                else
                    gate(Gate::CNOT, {c->ancilla, dq}, ideal);
            }
        }
        for (const auto* c : checks)
            if (c->type == 'X') gate(Gate::H, {c->ancilla}, ideal);
        if (!ideal && !idle_data.empty()) idle_sites(idle_data, ChannelKind::Idle);
        std::map<int, int> meas;
        for (const auto* c : checks) meas[c->ancilla] = measure(c->ancilla, ideal);
        if (!ideal && !idle_data.empty()) idle_sites(idle_data, ChannelKind::ResonatorIdle);
        return meas;
    }

    void detector(std::vector<int> meas_indices, char type) {
        out.detectors.push_back(std::move(meas_indices));
        out.detector_types.push_back(type);
    }
};

}  // namespace

AnnotatedCircuit build_surgery_circuit(const SurgeryLayout& L, LogicalBasis basis) {
    Builder b(L);

    std::vector<const SurgeryCheck*> patch_checks, merged_checks;
    for (const auto& c : L.checks_a) patch_checks.push_back(&c);
    for (const auto& c : L.checks_b) patch_checks.push_back(&c);
    for (const auto& c : L.checks_merged) merged_checks.push_back(&c);

    std::vector<int> patch_data = L.data_a;
    patch_data.insert(patch_data.end(), L.data_b.begin(), L.data_b.end());
    std::vector<int> all_data = patch_data;
    all_data.insert(all_data.end(), L.data_extra.begin(), L.data_extra.end());

    // merged-check support differs from the patch version of the same ancilla;
    // the detector bridging them needs the extra-column qubits of that check
    std::map<int, std::vector<int>> grown_extra;  // ancilla -> extra-column data
    {
        std::map<int, const SurgeryCheck*> patch_by_anc;
        for (const auto* c : patch_checks) patch_by_anc[c->ancilla] = c;
        std::vector<int> extra_sorted = L.data_extra;
        std::sort(extra_sorted.begin(), extra_sorted.end());
        for (const auto& c : L.checks_merged) {
            auto it = patch_by_anc.find(c.ancilla);
            if (it == patch_by_anc.end()) continue;
            std::vector<int> extra;
            for (int q : c.data)
                if (q >= 0 && std::binary_search(extra_sorted.begin(), extra_sorted.end(), q)) extra.push_back(q);
            if (!extra.empty()) grown_extra[c.ancilla] = extra;
        }
    }

    // fault-tolerant |+>|+> init: reset + H on all patch data, then one round
    for (int q : patch_data) b.gate(Gate::RESET, {q}, false);
    for (int q : patch_data) b.gate(Gate::H, {q}, false);
    std::map<int, int> prev = b.round(patch_checks, patch_data, false);
    for (const auto* c : patch_checks)
        if (c->type == 'X') b.detector({prev.at(c->ancilla)}, 'X');  // |+> init fixes X checks

    // merge: extra column in |+>, then d+1 rounds over the merged layout
    for (int q : L.data_extra) b.gate(Gate::RESET, {q}, false);
    for (int q : L.data_extra) b.gate(Gate::H, {q}, false);

    std::vector<int> first_new_z;  // the merge outcome m
    for (int r = 0; r < L.d + 1; ++r) {
        std::map<int, int> cur = b.round(merged_checks, all_data, false);
        for (size_t k = 0; k < L.checks_merged.size(); ++k) {
            const SurgeryCheck& c = L.checks_merged[k];
            if (r == 0 && !prev.count(c.ancilla)) continue;  // first value of a seam check: the merge outcome
            b.detector({cur.at(c.ancilla), prev.at(c.ancilla)}, c.type);
        }
        if (r == 0)
            for (int k : L.new_z_checks) first_new_z.push_back(cur.at(L.checks_merged[k].ancilla));
        prev = cur;
    }

    // split: read the extra column out in the X basis
    std::map<int, int> split_bits;
    for (int q : L.data_extra) b.gate(Gate::H, {q}, false);
    for (int q : L.data_extra) split_bits[q] = b.measure(q, false);

    auto grown_detector_tail = [&](int ancilla, std::vector<int>& dets) {
        auto it = grown_extra.find(ancilla);
        if (it == grown_extra.end()) return;
        for (int q : it->second) dets.push_back(split_bits.at(q));
    };

    // logical readout
    std::vector<int> obs;
    if (basis == LogicalBasis::Z) {
        std::map<int, int> data_bits;
        for (int q : patch_data) data_bits[q] = b.measure(q, false);
        for (const auto* c : patch_checks) {
            if (c->type != 'Z') continue;
            std::vector<int> dets{prev.at(c->ancilla)};
            for (int q : c->data)
                if (q >= 0) dets.push_back(data_bits.at(q));
            b.detector(std::move(dets), 'Z');
        }
        for (int q : L.zbar_a) obs.push_back(data_bits.at(q));
        for (int q : L.zbar_b) obs.push_back(data_bits.at(q));
        obs.insert(obs.end(), first_new_z.begin(), first_new_z.end());  // merge outcome m
    } else if (basis == LogicalBasis::X) {
        std::map<int, int> data_bits;
        for (int q : patch_data) b.gate(Gate::H, {q}, false);
        for (int q : patch_data) data_bits[q] = b.measure(q, false);
        for (const auto* c : patch_checks) {
            if (c->type != 'X') continue;
            std::vector<int> dets{prev.at(c->ancilla)};
            grown_detector_tail(c->ancilla, dets);
            for (int q : c->data)
                if (q >= 0) dets.push_back(data_bits.at(q));
            b.detector(std::move(dets), 'X');
        }
        for (int q : L.xbar_a) obs.push_back(data_bits.at(q));
        for (int q : L.xbar_b) obs.push_back(data_bits.at(q));
        obs.push_back(split_bits.at(L.extra_top));  // Xbar_merged reference
    } else {
        // perfect final round, then perfect transversal Y readout
        std::map<int, int> perfect = b.round(patch_checks, {}, /*ideal=*/true);
        for (const auto* c : patch_checks) {
            std::vector<int> dets{perfect.at(c->ancilla), prev.at(c->ancilla)};
            if (c->type == 'X') grown_detector_tail(c->ancilla, dets);
            b.detector(std::move(dets), c->type);
        }
        std::map<int, int> data_bits;
        for (int q : patch_data) {
            b.gate(Gate::SDG, {q}, true);
            b.gate(Gate::H, {q}, true);
        }
        for (int q : patch_data) data_bits[q] = b.measure(q, true);
        // prod_patch Y = i^.. Xbar(top row) Zbar(seam column) * (check subset);
        // Ybar_A Ybar_B then reduces to the Xbar_merged reference, the top split
        // bit and the merge outcome
        for (int q : patch_data) obs.push_back(data_bits.at(q));
        for (bool is_a : {true, false}) {
            for (int k : y_product_check_subset(L, is_a)) {
                const SurgeryCheck& c = is_a ? L.checks_a[k] : L.checks_b[k];
                obs.push_back(perfect.at(c.ancilla));
            }
        }
        obs.push_back(split_bits.at(L.extra_top));
        obs.insert(obs.end(), first_new_z.begin(), first_new_z.end());
    }
    b.out.observables.push_back(std::move(obs));
    return std::move(b.out);
}

std::string emit_surgery_qasm(const AnnotatedCircuit& annotated) {
    std::string qasm = emit_qasm(annotated.circuit);
    for (size_t k = 0; k < annotated.detectors.size(); ++k) {
        qasm += "// detector " + std::to_string(k) + " (" + annotated.detector_types[k] + "):";
        for (int m : annotated.detectors[k]) qasm += " m" + std::to_string(m);
        qasm += "\n";
    }
    for (size_t k = 0; k < annotated.observables.size(); ++k) {
        qasm += "// observable " + std::to_string(k) + ":";
        for (int m : annotated.observables[k]) qasm += " m" + std::to_string(m);
        qasm += "\n";
    }
    return qasm;
}

}  // namespace qkpi
