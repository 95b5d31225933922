#include "qkpi/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qkpi {

namespace {

struct MeasurementIndex {
    std::vector<std::vector<int>> detectors_of;  // cbit -> detector ids
    std::vector<uint32_t> obs_of;                // cbit -> observable mask
};

MeasurementIndex invert(const AnnotatedCircuit& annotated) {
    MeasurementIndex idx;
    idx.detectors_of.resize(annotated.circuit.cbit_count);
    idx.obs_of.assign(annotated.circuit.cbit_count, 0);
    for (size_t d = 0; d < annotated.detectors.size(); ++d)
        for (int m : annotated.detectors[d]) idx.detectors_of[m].push_back(static_cast<int>(d));
    for (size_t o = 0; o < annotated.observables.size(); ++o)
        for (int m : annotated.observables[o]) idx.obs_of[m] ^= uint32_t(1) << o;
    return idx;
}

DetectorModel::Signature signature_from_flips(const std::vector<uint8_t>& flips, const MeasurementIndex& idx,
                                              int num_detectors, std::vector<uint8_t>& scratch) {
    scratch.assign(num_detectors, 0);
    DetectorModel::Signature sig;
    for (size_t m = 0; m < flips.size(); ++m) {
        if (!flips[m]) continue;
        for (int d : idx.detectors_of[m]) scratch[d] ^= 1;
        sig.obs_mask ^= idx.obs_of[m];
    }
    for (int d = 0; d < num_detectors; ++d)
        if (scratch[d]) sig.detectors.push_back(static_cast<uint32_t>(d));
    return sig;
}

int weight_from_prob(double p) {
    if (p <= 0) return 50;
    if (p >= 0.5) return 1;
    return std::clamp(static_cast<int>(std::lround(2.0 * std::log((1.0 - p) / p))), 1, 50);
}

}  // namespace

DetectorModel build_detector_model(const AnnotatedCircuit& annotated, const NoiseModel& model) {
    model.validate();
    DetectorModel dem;
    dem.num_detectors = static_cast<int>(annotated.detectors.size());
    MeasurementIndex idx = invert(annotated);

    FrameSampler sampler(annotated.circuit, model, 0, annotated.sites);
    std::vector<uint8_t> flips, scratch;

    struct EdgeAcc {
        std::map<uint32_t, double> mask_probs;
    };
    std::map<std::pair<int, int>, EdgeAcc> edge_acc;

    auto accumulate_edge = [&](const DetectorModel::Signature& sig, double p) {
        if (sig.detectors.empty()) {
            if (sig.obs_mask != 0)
                throw std::logic_error("undetectable logical fault: observable or layout definition is wrong");
            return;
        }
        if (sig.detectors.size() > 2)
            throw std::logic_error("fault component flips more than two detectors: not a matchable graph");
        int u = static_cast<int>(sig.detectors[0]);
        int v = sig.detectors.size() == 2 ? static_cast<int>(sig.detectors[1]) : -1;
        if (v >= 0 && v < u) std::swap(u, v);
        auto& acc = edge_acc[{u, v}];
        double& slot = acc.mask_probs[sig.obs_mask];
        slot = slot * (1 - p) + p * (1 - slot);
    };

    for (const auto& site : sampler.sites()) {
        if (site.prob <= 0) continue;  // ideal-tagged measurements cannot fault
        DetectorModel::SiteRef ref;
        ref.stream_item = site.stream_item;
        ref.prob = site.prob;
        ref.first_signature = static_cast<uint32_t>(dem.signatures.size());
        switch (site.kind) {
            case ChannelKind::BeforeMeasure: {
                ref.nvariants = 1;
                std::vector<uint8_t> f(annotated.circuit.cbit_count, 0);
                f[site.cbit] = 1;
                auto sig = signature_from_flips(f, idx, dem.num_detectors, scratch);
                if (site.prob > 0) accumulate_edge(sig, site.prob);
                dem.signatures.push_back(std::move(sig));
                break;
            }
            case ChannelKind::Init: {
                ref.nvariants = 1;
                Fault fault;
                fault.nq = 1;
                fault.qubits[0] = site.qubits[0];
                fault.pauli[0] = 1;
                propagate_unit_fault(annotated.circuit, site.instr_index, fault, flips);
                auto sig = signature_from_flips(flips, idx, dem.num_detectors, scratch);
                if (site.prob > 0) accumulate_edge(sig, site.prob);
                dem.signatures.push_back(std::move(sig));
                break;
            }
            case ChannelKind::After2qGate: {
                ref.nvariants = 15;
                for (int k = 1; k <= 15; ++k) {
                    Fault fault;
                    fault.nq = 2;
                    fault.qubits[0] = site.qubits[0];
                    fault.qubits[1] = site.qubits[1];
                    fault.pauli[0] = static_cast<uint8_t>(k & 3);
                    fault.pauli[1] = static_cast<uint8_t>(k >> 2);
                    propagate_unit_fault(annotated.circuit, site.instr_index, fault, flips);
                    dem.signatures.push_back(signature_from_flips(flips, idx, dem.num_detectors, scratch));

                    // graph edges from per-qubit, per-axis components
                    if (site.prob > 0) {
                        double p = site.prob / 15.0;
                        for (int part = 0; part < 2; ++part) {
                            for (uint8_t axis : {uint8_t(1), uint8_t(2)}) {
                                if (!(fault.pauli[part] & axis)) continue;
                                Fault prim;
                                prim.nq = 1;
                                prim.qubits[0] = fault.qubits[part];
                                prim.pauli[0] = axis;
                                propagate_unit_fault(annotated.circuit, site.instr_index, prim, flips);
                                accumulate_edge(signature_from_flips(flips, idx, dem.num_detectors, scratch), p);
                            }
                        }
                    }
                }
                break;
            }
            default: {  // 1q gate / idle / resonator idle: uniform depolarizing
                ref.nvariants = 3;
                for (int k = 1; k <= 3; ++k) {
                    Fault fault;
                    fault.nq = 1;
                    fault.qubits[0] = site.qubits[0];
                    fault.pauli[0] = static_cast<uint8_t>(k);
                    propagate_unit_fault(annotated.circuit, site.instr_index, fault, flips);
                    dem.signatures.push_back(signature_from_flips(flips, idx, dem.num_detectors, scratch));
                    if (site.prob > 0) {
                        double p = site.prob / 3.0;
                        for (uint8_t axis : {uint8_t(1), uint8_t(2)}) {
                            if (!(k & axis)) continue;
                            Fault prim;
                            prim.nq = 1;
                            prim.qubits[0] = site.qubits[0];
                            prim.pauli[0] = axis;
                            propagate_unit_fault(annotated.circuit, site.instr_index, prim, flips);
                            accumulate_edge(signature_from_flips(flips, idx, dem.num_detectors, scratch), p);
                        }
                    }
                }
            }
        }
        dem.sites.push_back(ref);
    }

    bool any_noise = false;
    for (const auto& site : sampler.sites()) any_noise |= site.prob > 0;
    std::vector<uint8_t> covered(dem.num_detectors, any_noise ? 0 : 1);
    for (const auto& [key, acc] : edge_acc) {
        DetectorModel::Edge e;
        e.u = key.first;
        e.v = key.second;
        double best_p = -1;
        double total_p = 0;
        for (const auto& [mask, p] : acc.mask_probs) {
            total_p = total_p * (1 - p) + p * (1 - total_p);
            if (p > best_p) {
                best_p = p;
                e.obs_mask = mask;
            }
        }
        e.prob = total_p;
        e.weight = weight_from_prob(total_p);
        covered[e.u] = 1;
        if (e.v >= 0) covered[e.v] = 1;
        dem.edges.push_back(e);
    }
    for (int d = 0; d < dem.num_detectors; ++d)
        if (!covered[d] ) throw std::logic_error("disconnected detector graph: detector " + std::to_string(d) +
                                                 " is touched by no fault (layout bug)");
    return dem;
}

void DetectorModel::sample_shot(uint64_t master_seed, uint64_t shot, std::vector<uint32_t>& defects,
                                uint32_t& raw_obs, std::vector<uint8_t>& scratch) const {
    scratch.assign(num_detectors, 0);
    raw_obs = 0;
    for (const auto& site : sites) {
        if (site.prob <= 0) continue;
        Prng rng = substream_rng(master_seed, shot, site.stream_item);
        if (rng.next_double() >= site.prob) continue;
        uint32_t variant = 0;
        if (site.nvariants == 15)
            variant = static_cast<uint32_t>(rng.next_below(15));
        else if (site.nvariants == 3)
            variant = static_cast<uint32_t>(rng.next_below(3));
        const Signature& sig = signatures[site.first_signature + variant];
        for (uint32_t d : sig.detectors) scratch[d] ^= 1;
        raw_obs ^= sig.obs_mask;
    }
    defects.clear();
    for (int d = 0; d < num_detectors; ++d)
        if (scratch[d]) defects.push_back(static_cast<uint32_t>(d));
}

UnionFindDecoder::UnionFindDecoder(const DetectorModel& dem)
    : n_(dem.num_detectors), edges_(dem.edges) {
    incident_.resize(n_ + 1);
    for (size_t e = 0; e < edges_.size(); ++e) {
        incident_[edges_[e].u].push_back(static_cast<int>(e));
        incident_[edges_[e].v < 0 ? n_ : edges_[e].v].push_back(static_cast<int>(e));
    }
}

uint32_t UnionFindDecoder::decode(const std::vector<uint32_t>& defects) const {
    if (defects.empty()) return 0;

    std::vector<int> parent(n_ + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> rankv(n_ + 1, 0);
    std::vector<uint8_t> parity(n_ + 1, 0), boundary(n_ + 1, 0), is_defect(n_ + 1, 0);
    boundary[n_] = 1;
    for (uint32_t d : defects) {
        parity[d] = 1;
        is_defect[d] = 1;
    }

    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto union_roots = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rankv[a] < rankv[b]) std::swap(a, b);
        parent[b] = a;
        parity[a] ^= parity[b];
        boundary[a] |= boundary[b];
        if (rankv[a] == rankv[b]) ++rankv[a];
    };
    auto active = [&](int node) {
        int r = find(node);
        return parity[r] && !boundary[r];
    };

    std::vector<int> support(edges_.size(), 0);
    std::vector<uint8_t> grown(edges_.size(), 0);
    std::vector<int> grow_order;

    long max_rounds = 0;
    for (const auto& e : edges_) max_rounds += e.weight;
    for (long round = 0; round <= max_rounds; ++round) {
        bool any_active = false;
        for (uint32_t d : defects)
            if (active(d)) {
                any_active = true;
                break;
            }
        if (!any_active) break;
        for (size_t e = 0; e < edges_.size(); ++e) {
            if (grown[e]) continue;
            int u = edges_[e].u;
            int v = edges_[e].v < 0 ? n_ : edges_[e].v;
            int add = (active(u) ? 1 : 0) + (active(v) ? 1 : 0);
            if (!add) continue;
            support[e] += add;
            if (support[e] >= edges_[e].weight) {
                grown[e] = 1;
                grow_order.push_back(static_cast<int>(e));
                union_roots(u, v);
            }
        }
    }

    // peeling over a spanning forest of the grown edges, boundary as root
    std::vector<int> tree_parent(n_ + 1, -1), tree_edge(n_ + 1, -1), order;
    std::vector<uint8_t> visited(n_ + 1, 0);
    std::vector<std::vector<std::pair<int, int>>> adj(n_ + 1);  // (neighbor, edge)
    for (int e : grow_order) {
        int u = edges_[e].u;
        int v = edges_[e].v < 0 ? n_ : edges_[e].v;
        adj[u].emplace_back(v, e);
        adj[v].emplace_back(u, e);
    }
    auto bfs_from = [&](int root) {
        visited[root] = 1;
        std::vector<int> queue{root};
        for (size_t h = 0; h < queue.size(); ++h) {
            int cur = queue[h];
            order.push_back(cur);
            for (auto [nxt, e] : adj[cur]) {
                if (visited[nxt]) continue;
                visited[nxt] = 1;
                tree_parent[nxt] = cur;
                tree_edge[nxt] = e;
                queue.push_back(nxt);
            }
        }
    };
    bfs_from(n_);
    for (uint32_t d : defects)
        if (!visited[d]) bfs_from(find(d));

    uint32_t correction = 0;
    std::vector<uint8_t> residual(n_ + 1, 0);
    for (uint32_t d : defects) residual[d] ^= 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int node = *it;
        if (!residual[node] || tree_parent[node] < 0) continue;
        correction ^= edges_[tree_edge[node]].obs_mask;
        residual[node] = 0;
        residual[tree_parent[node]] ^= 1;
    }
    for (int node = 0; node < n_; ++node)
        if (residual[node] && tree_parent[node] < 0 && node != n_ && !boundary[find(node)])
            throw std::logic_error("union-find peeling left an unmatched defect");
    return correction;
}

DetectorRecords sample_detectors(const DetectorModel& dem, uint64_t shots, uint64_t master_seed) {
    DetectorRecords rec;
    rec.shots = shots;
    rec.defects.resize(shots);
    rec.raw_obs.resize(shots);
    std::vector<uint8_t> scratch;
    for (uint64_t s = 0; s < shots; ++s) dem.sample_shot(master_seed, s, rec.defects[s], rec.raw_obs[s], scratch);
    return rec;
}

uint64_t decode_and_count(const DetectorModel& dem, const DetectorRecords& records) {
    UnionFindDecoder decoder(dem);
    uint64_t errors = 0;
    for (uint64_t s = 0; s < records.shots; ++s) {
        uint32_t corrected = records.raw_obs[s] ^ decoder.decode(records.defects[s]);
        errors += corrected & 1;
    }
    return errors;
}

uint64_t sample_and_count_errors(const DetectorModel& dem, uint64_t shots, uint64_t master_seed,
                                 int workers) {
    UnionFindDecoder decoder(dem);
    auto count_range = [&](uint64_t begin, uint64_t end) {
        uint64_t errors = 0;
        std::vector<uint32_t> defects;
        std::vector<uint8_t> scratch;
        uint32_t raw = 0;
        for (uint64_t s = begin; s < end; ++s) {
            dem.sample_shot(master_seed, s, defects, raw, scratch);
            uint32_t corrected = raw ^ decoder.decode(defects);
            errors += corrected & 1;
        }
        return errors;
    };
    if (workers <= 1) return count_range(0, shots);
    uint64_t chunk = (shots + workers - 1) / workers;
    std::vector<std::future<uint64_t>> parts;
    for (uint64_t begin = 0; begin < shots; begin += chunk)
        parts.push_back(std::async(std::launch::async, count_range, begin, std::min(begin + chunk, shots)));
    uint64_t errors = 0;
    for (auto& p : parts) errors += p.get();
    return errors;
}

}  // namespace qkpi
