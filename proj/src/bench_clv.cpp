#include "qkpi/bench_clv.hpp"

#include <algorithm>
#include <set>

#include "qkpi/frame.hpp"

namespace qkpi {

namespace {

constexpr uint64_t kStreamSetup = 0x11;
constexpr uint64_t kStreamObservable = 0x12;
constexpr uint64_t kStreamTrialOfN = 0x13;
constexpr uint64_t kStreamConfirm = 0x14;
constexpr uint64_t kCoinItem = uint64_t(1) << 62;

std::string fnv_digest(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

Circuit build_pauli_measurement_circuit(const Circuit& prep, const PauliString& p, bool x_layer) {
    Circuit c = prep;
    for (int q = 0; q < c.qubit_count; ++q) {
        bool x = p.x_bit(q), z = p.z_bit(q);
        if (x && z) {  // Y -> Z via S^dagger, H
            c.sdg(q);
            c.h(q);
        } else if (x) {  // X -> Z via H
            c.h(q);
        }
    }
    if (x_layer)
        for (int q = 0; q < c.qubit_count; ++q) c.x(q);
    for (int q = 0; q < c.qubit_count; ++q) c.measure(q);
    return c;
}

Estimate estimate_pauli_expectation(const Circuit& prep, const PauliString& p, uint64_t shots,
                                    const NoiseModel& model, uint64_t master_seed, ReferenceKind ref) {
    Circuit c = build_pauli_measurement_circuit(prep, p);
    FrameSampler sampler(c, model, master_seed);
    std::vector<uint8_t> flips;
    int64_t total = 0;
    for (uint64_t shot = 0; shot < shots; ++shot) {
        sampler.run_shot(shot, flips);
        int parity = 0;
        for (int q = 0; q < p.n; ++q)
            if (p.x_bit(q) || p.z_bit(q)) parity ^= flips[q];
        int sample = parity ? -1 : +1;
        if (ref == ReferenceKind::Coin) {
            Prng coin = substream_rng(master_seed, shot, kCoinItem);
            if (coin.next_bool()) sample = -sample;
        }
        total += sample;
    }
    Estimate e;
    e.value = static_cast<double>(total) / static_cast<double>(shots);
    e.shots = shots;
    e.sigma = expectation_sigma(e.value, shots);
    e.derivation = ref == ReferenceKind::Coin ? "frame-shots/coin-reference" : "frame-shots/stabilizer-reference";
    return e;
}

ClvTrial run_clv_trial(int qubits, uint64_t shots, const NoiseModel& model, uint64_t seed) {
    if (qubits < 2) throw std::invalid_argument("CLV requires at least 2 qubits");
    if (shots < kClvMinShots)
        throw std::invalid_argument("protocol violation: CLV requires at least 512 shots per observable");
    model.validate();

    ClvTrial trial;
    trial.qubits = qubits;
    trial.shots = shots;
    trial.seed = seed;

    std::set<std::string> seen;  // "without replacement"
    for (int m = 0; m < 4; ++m) {
        Prng setup = substream_rng(seed, kStreamSetup, m);
        StabilizerTableau g = sample_random_clifford(qubits, setup);
        while (!seen.insert(g.serialize()).second) g = sample_random_clifford(qubits, setup);

        Circuit prep(qubits);
        for (int q = 0; q < qubits; ++q) prep.reset(q);
        Circuit clifford = synthesize_clifford_circuit(g);
        for (const auto& instr : clifford.instructions) prep.instructions.push_back(instr);

        auto& record = trial.cliffords[m];
        record.tableau_digest = fnv_digest(g.serialize());
        record.circuit_digest = fnv_digest(emit_qasm(clifford));
        record.two_qubit_gates = clifford.count_gate(Gate::CNOT) + clifford.count_gate(Gate::CZ);

        // four stabilizer-group elements (repeats allowed: N = 2 has only three)
        for (int i = 0; i < 4; ++i) {
            std::vector<uint8_t> sel(qubits, 0);
            bool nonzero = false;
            while (!nonzero)
                for (int q = 0; q < qubits; ++q) nonzero |= (sel[q] = static_cast<uint8_t>(setup.next_bool()));
            record.stabilizers[i].op = g.stabilizer_group_element(sel);
        }
        // four distinct Paulis outside the stabilizer group
        std::set<std::string> used;
        for (int i = 0; i < 4; ++i) {
            PauliString d(qubits);
            do {
                d = sample_destabilizer(g, setup);
            } while (!used.insert(d.to_string()).second);
            record.destabilizers[i].op = d;
        }

        for (int i = 0; i < 4; ++i) {
            uint64_t ms = substream(seed, kStreamObservable, (uint64_t(m) << 3) | i);
            record.stabilizers[i].estimate =
                estimate_pauli_expectation(prep, record.stabilizers[i].op, shots, model, ms, ReferenceKind::PlusOne);
            uint64_t md = substream(seed, kStreamObservable, (uint64_t(m) << 3) | i | 0x4);
            record.destabilizers[i].estimate =
                estimate_pauli_expectation(prep, record.destabilizers[i].op, shots, model, md, ReferenceKind::Coin);
        }
    }
    return trial;
}

namespace {

ClvVerdict evaluate_from_values(const std::array<std::array<double, 4>, 4>& s_val,
                                const std::array<std::array<double, 4>, 4>& s_sig,
                                const std::array<std::array<double, 4>, 4>& d_val,
                                const std::array<std::array<double, 4>, 4>& d_sig) {
    ClvVerdict v;
    v.individual_stabilizer = true;
    v.individual_destabilizer = true;
    v.average_stabilizer = true;
    v.average_destabilizer = true;
    for (int m = 0; m < 4; ++m) {
        double s_mean = 0, d_mean = 0;
        std::vector<double> ss, ds;
        for (int i = 0; i < 4; ++i) {
            v.individual_stabilizer &= s_val[m][i] - 2 * s_sig[m][i] >= kStabilizerThreshold;
            v.individual_destabilizer &= std::abs(d_val[m][i]) + 2 * d_sig[m][i] <= kDestabilizerThreshold;
            s_mean += s_val[m][i] / 4;
            d_mean += d_val[m][i] / 4;
            ss.push_back(s_sig[m][i]);
            ds.push_back(d_sig[m][i]);
        }
        // standard error of the 4-mean (aggregate RMS / 2)
        v.average_stabilizer &= s_mean - 5 * mean_sigma(ss) >= kStabilizerThreshold;
        v.average_destabilizer &= std::abs(d_mean) + 5 * mean_sigma(ds) <= kDestabilizerThreshold;
    }
    v.pass = v.individual_stabilizer && v.individual_destabilizer && v.average_stabilizer &&
             v.average_destabilizer;
    return v;
}

}  // namespace

ClvVerdict evaluate_clv(const ClvTrial& trial) {
    std::array<std::array<double, 4>, 4> sv{}, ss{}, dv{}, ds{};
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < 4; ++i) {
            sv[m][i] = trial.cliffords[m].stabilizers[i].estimate.value;
            ss[m][i] = trial.cliffords[m].stabilizers[i].estimate.sigma;
            dv[m][i] = trial.cliffords[m].destabilizers[i].estimate.value;
            ds[m][i] = trial.cliffords[m].destabilizers[i].estimate.sigma;
        }
    return evaluate_from_values(sv, ss, dv, ds);
}

ClvScoreResult clv_score(const NoiseModel& model, uint64_t shots, SearchStrategy strategy, uint64_t seed,
                         int n_max) {
    ClvScoreResult result;
    auto run = [&](int n, uint64_t stream) {
        ClvTrial t = run_clv_trial(n, shots, model, substream(seed, stream, n));
        bool pass = evaluate_clv(t).pass;
        result.trace.emplace_back(n, pass);
        result.trials.push_back(std::move(t));
        return pass;
    };

    if (strategy == SearchStrategy::LinearUp) {
        for (int n = 2; n <= n_max; ++n) {
            if (!run(n, kStreamTrialOfN)) break;
            result.score = n;
        }
        return result;
    }

    // doubling + bisection, then confirmation with fresh seeds
    int last_pass = 0, first_fail = n_max + 1;
    int n = 2;
    while (n <= n_max) {
        if (run(n, kStreamTrialOfN)) {
            last_pass = n;
            n *= 2;
        } else {
            first_fail = n;
            break;
        }
    }
    if (last_pass == 0) {
        result.score = 0;
        return result;
    }
    while (first_fail - last_pass > 1) {
        int mid = (last_pass + first_fail) / 2;
        if (run(mid, kStreamTrialOfN))
            last_pass = mid;
        else
            first_fail = mid;
    }
    // confirmation: candidate must re-pass and candidate+1 must re-fail
    for (int attempts = 0; attempts < 8 && last_pass > 0; ++attempts) {
        if (!run(last_pass, kStreamConfirm + attempts)) {
            --last_pass;
            continue;
        }
        if (last_pass + 1 > n_max || !run(last_pass + 1, kStreamConfirm + attempts)) break;
        ++last_pass;
    }
    result.score = last_pass;
    return result;
}

json clv_trial_to_json(const ClvTrial& trial) {
    ClvVerdict v = evaluate_clv(trial);
    json cliffords = json::array();
    for (int m = 0; m < 4; ++m) {
        const auto& rec = trial.cliffords[m];
        json stabs = json::array(), destabs = json::array();
        for (int i = 0; i < 4; ++i) {
            stabs.push_back(json{{"pauli", rec.stabilizers[i].op.to_string()},
                                 {"estimate", rec.stabilizers[i].estimate.to_json()}});
            destabs.push_back(json{{"pauli", rec.destabilizers[i].op.to_string()},
                                   {"estimate", rec.destabilizers[i].estimate.to_json()}});
        }
        cliffords.push_back(json{{"tableau_digest", rec.tableau_digest},
                                 {"circuit_digest", rec.circuit_digest},
                                 {"two_qubit_gates", rec.two_qubit_gates},
                                 {"stabilizers", stabs},
                                 {"destabilizers", destabs}});
    }
    return json{{"qubits", trial.qubits},
                {"shots_per_observable", trial.shots},
                {"seed", trial.seed},
                {"cliffords", cliffords},
                {"thresholds",
                 json{{"stabilizer", kStabilizerThreshold}, {"destabilizer", kDestabilizerThreshold}}},
                {"verdict", json{{"individual_stabilizer", v.individual_stabilizer},
                                 {"individual_destabilizer", v.individual_destabilizer},
                                 {"average_stabilizer", v.average_stabilizer},
                                 {"average_destabilizer", v.average_destabilizer},
                                 {"pass", v.pass}}}};
}

json clv_section(const ClvScoreResult& result) {
    json trials = json::array();
    for (const auto& t : result.trials) trials.push_back(clv_trial_to_json(t));
    json trace = json::array();
    for (const auto& [n, pass] : result.trace) trace.push_back(json{{"qubits", n}, {"pass", pass}});
    return json{{"trials", trials}, {"trace", trace}, {"score", result.score}};
}

ClvVerdict evaluate_clv_json(const json& trial) {
    std::array<std::array<double, 4>, 4> sv{}, ss{}, dv{}, ds{};
    for (int m = 0; m < 4; ++m) {
        const json& rec = trial.at("cliffords").at(m);
        for (int i = 0; i < 4; ++i) {
            sv[m][i] = rec.at("stabilizers").at(i).at("estimate").at("value").get<double>();
            ss[m][i] = rec.at("stabilizers").at(i).at("estimate").at("sigma").get<double>();
            dv[m][i] = rec.at("destabilizers").at(i).at("estimate").at("value").get<double>();
            ds[m][i] = rec.at("destabilizers").at(i).at("estimate").at("sigma").get<double>();
        }
    }
    return evaluate_from_values(sv, ss, dv, ds);
}

void verify_clv_section(const json& report, VerifyResult& out) {
    const json& sec = report.at("clv");
    int max_pass = 0;
    for (size_t t = 0; t < sec.at("trials").size(); ++t) {
        const json& trial = sec.at("trials").at(t);
        ClvVerdict v = evaluate_clv_json(trial);
        const json& stored = trial.at("verdict");
        auto check = [&](const char* key, bool recomputed) {
            if (stored.at(key).get<bool>() != recomputed)
                out.mismatches.push_back("clv: trial " + std::to_string(t) + " verdict field '" + key +
                                         "' does not match its estimates");
        };
        check("individual_stabilizer", v.individual_stabilizer);
        check("individual_destabilizer", v.individual_destabilizer);
        check("average_stabilizer", v.average_stabilizer);
        check("average_destabilizer", v.average_destabilizer);
        check("pass", v.pass);
        if (v.pass) max_pass = std::max(max_pass, trial.at("qubits").get<int>());
    }
    if (sec.at("score").get<int>() > max_pass)
        out.mismatches.push_back("clv: stored score exceeds the largest passing trial");
}

}  // namespace qkpi
