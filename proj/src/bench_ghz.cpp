#include "qkpi/bench_ghz.hpp"

#include <cmath>

#include "qkpi/frame.hpp"
#include "qkpi/tableau.hpp"

namespace qkpi {

namespace {
constexpr uint64_t kStreamXSetting = 0x21;
constexpr uint64_t kStreamZSetting = 0x22;
constexpr uint64_t kStreamTrialOfN = 0x23;
constexpr uint64_t kStreamDfe = 0x24;
}  // namespace

Circuit build_ghz_circuit(int qubits) {
    if (qubits < 2) throw std::invalid_argument("GHZ needs at least 2 qubits");
    Circuit c(qubits);
    for (int q = 0; q < qubits; ++q) c.reset(q);
    c.h(0);
    // binary tree: filled qubits fan out in parallel layers
    for (int span = 1; span < qubits; span *= 2)
        for (int q = 0; q < span && q + span < qubits; ++q) c.cnot(q, q + span);
    return c;
}

GhzGenerators estimate_generators(int qubits, uint64_t shots, const NoiseModel& model, uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    model.validate();
    Circuit prep = build_ghz_circuit(qubits);

    GhzGenerators out;
    out.mu.resize(qubits);

    // setting 1: all-X. X^N sample = parity of all recorded bits.
    {
        Circuit c = prep;
        for (int q = 0; q < qubits; ++q) c.h(q);
        for (int q = 0; q < qubits; ++q) c.measure(q);
        FrameSampler sampler(c, model, substream(seed, kStreamXSetting, 0));
        std::vector<uint8_t> flips;
        int64_t total = 0;
        for (uint64_t shot = 0; shot < shots; ++shot) {
            sampler.run_shot(shot, flips);
            int parity = 0;
            for (int q = 0; q < qubits; ++q) parity ^= flips[q];
            total += parity ? -1 : +1;
        }
        out.mu[0].value = static_cast<double>(total) / static_cast<double>(shots);
        out.mu[0].shots = shots;
        out.mu[0].sigma = expectation_sigma(out.mu[0].value, shots);
        out.mu[0].derivation = "all-X setting, full parity";
    }

    // setting 2: all-Z. every nearest-neighbor ZZ correlator from the same shots.
    {
        Circuit c = prep;
        for (int q = 0; q < qubits; ++q) c.measure(q);
        FrameSampler sampler(c, model, substream(seed, kStreamZSetting, 0));
        std::vector<uint8_t> flips;
        std::vector<int64_t> totals(qubits - 1, 0);
        for (uint64_t shot = 0; shot < shots; ++shot) {
            sampler.run_shot(shot, flips);
            for (int k = 0; k + 1 < qubits; ++k) totals[k] += (flips[k] ^ flips[k + 1]) ? -1 : +1;
        }
        for (int k = 0; k + 1 < qubits; ++k) {
            out.mu[k + 1].value = static_cast<double>(totals[k]) / static_cast<double>(shots);
            out.mu[k + 1].shots = shots;
            out.mu[k + 1].sigma = expectation_sigma(out.mu[k + 1].value, shots);
            out.mu[k + 1].derivation = "all-Z setting, neighbor parity";
        }
    }
    return out;
}

double fidelity_lower_bound(const std::vector<double>& mu) {
    double defect = 0;
    for (double m : mu) defect += 1.0 - m;
    return std::max(0.0, 1.0 - 0.5 * defect);
}

double fidelity_lower_bound_sigma(const std::vector<double>& sigmas) {
    double s = 0;
    for (double v : sigmas) s += v * v;
    return std::sqrt(0.25 * s);
}

bool ghz_verdict(double f_min, double sigma_f) {
    if (sigma_f < 0) throw std::invalid_argument("sigma must be >= 0");
    return f_min - 3.0 * sigma_f > kGhzEntanglementThreshold;
}

GhzTrial run_ghz_trial(int qubits, uint64_t shots, const NoiseModel& model, uint64_t seed) {
    GhzTrial t;
    t.qubits = qubits;
    t.shots = shots;
    t.generators = estimate_generators(qubits, shots, model, seed);
    std::vector<double> values, sigmas;
    for (const auto& e : t.generators.mu) {
        values.push_back(e.value);
        sigmas.push_back(e.sigma);
    }
    t.f_min = fidelity_lower_bound(values);
    t.f_sigma = fidelity_lower_bound_sigma(sigmas);
    t.pass = ghz_verdict(t.f_min, t.f_sigma);
    return t;
}

GhzScoreResult ghz_score(const NoiseModel& model, uint64_t shots, uint64_t seed, int n_cap) {
    GhzScoreResult result;
    for (int n = 2; n <= n_cap; ++n) {
        GhzTrial t = run_ghz_trial(n, shots, model, substream(seed, kStreamTrialOfN, n));
        bool pass = t.pass;
        result.trials.push_back(std::move(t));
        if (!pass) break;
        result.score = n;
    }
    return result;
}

uint64_t dfe_shot_budget(double epsilon, double delta) {
    if (!(epsilon > 0 && epsilon < 1 && delta > 0 && delta < 1))
        throw std::invalid_argument("epsilon and delta must lie in (0,1)");
    return static_cast<uint64_t>(std::ceil(8.0 * std::log(4.0 / delta) / (epsilon * epsilon)));
}

double pc_shot_budget(int qubits, double epsilon, double delta) {
    if (!(epsilon > 0 && epsilon < 1 && delta > 0 && delta < 1))
        throw std::invalid_argument("epsilon and delta must lie in (0,1)");
    return static_cast<double>(qubits) * qubits * std::log(1.0 / delta) / (epsilon * epsilon);
}

DfeEstimate dfe_ghz(int qubits, double epsilon, double delta, const NoiseModel& model, uint64_t seed) {
    DfeEstimate out;
    out.epsilon = epsilon;
    out.delta = delta;
    out.budget = dfe_shot_budget(epsilon, delta);
    model.validate();

    Circuit prep = build_ghz_circuit(qubits);
    StabilizerTableau ghz(qubits);
    ghz.apply_gate(Gate::H, {0});
    for (int span = 1; span < qubits; span *= 2)
        for (int q = 0; q < span && q + span < qubits; ++q) ghz.apply_gate(Gate::CNOT, {q, q + span});

    int64_t total = 0;
    for (uint64_t t = 0; t < out.budget; ++t) {
        Prng pick = substream_rng(seed, kStreamDfe, t);
        std::vector<uint8_t> sel(qubits, 0);
        bool nonzero = false;
        for (int q = 0; q < qubits; ++q) nonzero |= (sel[q] = static_cast<uint8_t>(pick.next_bool()));
        if (!nonzero) {
            total += 1;  // identity term: expectation exactly 1
            continue;
        }
        PauliString p = ghz.stabilizer_group_element(sel);
        Estimate one = estimate_pauli_expectation(prep, p, 1, model, substream(seed, kStreamDfe + 1, t),
                                                  ReferenceKind::PlusOne);
        total += one.value > 0 ? 1 : -1;
    }
    out.fidelity = static_cast<double>(total) / static_cast<double>(out.budget);
    out.sigma = expectation_sigma(out.fidelity, out.budget);
    return out;
}

json ghz_section(const GhzScoreResult& result, const std::string& method) {
    json trials = json::array();
    for (const auto& t : result.trials) {
        json gens = json::array();
        for (const auto& e : t.generators.mu) gens.push_back(e.to_json());
        trials.push_back(json{{"qubits", t.qubits},
                              {"shots_per_setting", t.shots},
                              {"generators", gens},
                              {"f_min", t.f_min},
                              {"f_sigma", t.f_sigma},
                              {"pass", t.pass},
                              {"circuit_qasm", emit_qasm(build_ghz_circuit(t.qubits))}});
    }
    return json{{"trials", trials},
                {"score", result.score},
                {"method", method},
                {"threshold", kGhzEntanglementThreshold},
                {"sigma_note", "Z-setting correlators share shots; sigma_F treats them as independent "
                               "(conservative)"}};
}

void verify_ghz_section(const json& report, VerifyResult& out) {
    const json& sec = report.at("ghz");
    int max_pass = 0;
    for (size_t t = 0; t < sec.at("trials").size(); ++t) {
        const json& trial = sec.at("trials").at(t);
        std::vector<double> values, sigmas;
        for (const auto& g : trial.at("generators")) {
            values.push_back(g.at("value").get<double>());
            sigmas.push_back(g.at("sigma").get<double>());
        }
        double f = fidelity_lower_bound(values);
        double fs = fidelity_lower_bound_sigma(sigmas);
        if (std::abs(f - trial.at("f_min").get<double>()) > 1e-12)
            out.mismatches.push_back("ghz: trial " + std::to_string(t) + " f_min does not match its generators");
        if (std::abs(fs - trial.at("f_sigma").get<double>()) > 1e-12)
            out.mismatches.push_back("ghz: trial " + std::to_string(t) + " f_sigma does not match its generators");
        bool pass = ghz_verdict(f, fs);
        if (pass != trial.at("pass").get<bool>())
            out.mismatches.push_back("ghz: trial " + std::to_string(t) + " verdict does not match its estimates");
        if (pass) max_pass = std::max(max_pass, trial.at("qubits").get<int>());
    }
    if (sec.at("score").get<int>() > max_pass)
        out.mismatches.push_back("ghz: stored score exceeds the largest passing trial");
}

}  // namespace qkpi
