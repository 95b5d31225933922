#include "qkpi/bench_shor.hpp"

#include <algorithm>
#include <cmath>

#include "qkpi/statevector.hpp"

namespace qkpi {

namespace {
constexpr uint64_t kMeasureItem = uint64_t(1) << 61;
}

PeriodInstance make_period_instance(int n, int register_padding) {
    if (n < 2) throw std::invalid_argument("period-finding needs n >= 2");
    if (register_padding < 1) throw std::invalid_argument("control register must exceed 2n+1");
    PeriodInstance inst;
    inst.n = n;
    inst.poly = primitive_polynomial(n);
    inst.m = companion_matrix(inst.poly);
    inst.t = 2 * n + register_padding;
    inst.r = (uint64_t(1) << n) - 1;
    auto factors = factor_mersenne(n);
    if (!is_maximum_cycle(inst.m, factors)) throw std::logic_error("companion matrix is not maximum-cycle");
    inst.p_s = static_cast<double>(euler_totient_of_mersenne(n, factors)) / static_cast<double>(inst.r);
    return inst;
}

Circuit build_period_circuit(const PeriodInstance& inst) {
    const int n = inst.n, t = inst.t;
    const int total = t + n;
    if (total > kMaxStatevectorQubits)
        throw CapacityError("period circuit needs " + std::to_string(total) + " qubits (cap " +
                            std::to_string(kMaxStatevectorQubits) + ")");
    Circuit c(total);
    for (int q = 0; q < total; ++q) c.reset(q);
    for (int j = 0; j < t; ++j) c.h(j);
    c.x(t + n - 1);  // target seed |0...01>: b_n = 1 lies on the long cycle

    // control qubit j (qubit 0 most significant) applies U_M^(2^(t-1-j))
    for (int j = 0; j < t; ++j) {
        BinaryMatrix power = mat_pow2_mod2(inst.m, t - 1 - j);
        Circuit network = synthesize_cnot_network(power);
        for (const auto& instr : network.instructions)
            c.ccx(j, t + instr.qubits[0], t + instr.qubits[1]);
    }
    append_qft(c, 0, t, /*inverse=*/true);
    for (int j = 0; j < 2 * n + 1; ++j) c.measure(j);
    return c;
}

uint64_t continued_fraction_period(uint64_t y, int n) {
    const uint64_t rmax = (uint64_t(1) << n) - 1;
    uint64_t num = y % (uint64_t(1) << (2 * n + 1));
    uint64_t den = uint64_t(1) << (2 * n + 1);
    // a0 = 0 with convergent denominator 1; the loop yields a1, a2, ...
    uint64_t rem = num;  // num - a0*den
    num = den;
    den = rem;
    uint64_t q_prev = 0, q_cur = 1;
    uint64_t best = 1;
    while (den != 0) {
        uint64_t a = num / den;
        rem = num - a * den;
        uint64_t q_next = a * q_cur + q_prev;
        if (q_next > rmax) break;  // denominators are nondecreasing
        best = std::max(best, q_next);
        q_prev = q_cur;
        q_cur = q_next;
        num = den;
        den = rem;
    }
    return best;
}

namespace {

// measured classical bits, cbit 0 most significant, to the integer y
uint64_t bits_to_y(const std::vector<int>& bits) {
    uint64_t y = 0;
    for (int b : bits) y = (y << 1) | static_cast<uint64_t>(b);
    return y;
}

}  // namespace

ShorTrial run_shor_trial(const PeriodInstance& inst, uint64_t shots, const NoiseModel& model, uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    model.validate();
    ShorTrial trial;
    trial.instance = inst;
    trial.shots = shots;

    Circuit circuit = build_period_circuit(inst);
    const int measured = 2 * inst.n + 1;

    if (model.all_zero()) {
        // one noiseless evolution, then exact sampling of the joint readout marginal
        StateVector sv(circuit.qubit_count);
        std::vector<int> measured_qubits;
        for (const auto& instr : circuit.instructions) {
            if (instr.gate == Gate::MEASURE_Z)
                measured_qubits.push_back(instr.qubits[0]);
            else if (instr.gate != Gate::RESET)
                sv.apply(instr);
        }
        std::vector<double> probs = sv.subset_probabilities(measured_qubits);
        std::vector<double> cdf(probs.size());
        double acc = 0;
        for (size_t i = 0; i < probs.size(); ++i) cdf[i] = (acc += probs[i]);
        for (uint64_t shot = 0; shot < shots; ++shot) {
            double u = substream_rng(seed, shot, kMeasureItem).next_double() * acc;
            size_t key = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
            if (key >= probs.size()) key = probs.size() - 1;
            uint64_t y = 0;
            for (int j = 0; j < measured; ++j) y |= ((key >> j) & 1) << (measured - 1 - j);
            if (continued_fraction_period(y, inst.n) == inst.r) ++trial.successes;
        }
    } else {
        Circuit noisy = (model.p_2q > 0 || model.p_1q > 0) ? decompose_toffoli(circuit) : circuit;

        // gate-fault-free shots evolve identically; cache that state's readout
        // distribution and only run the full statevector when a gate faults.
        // Fault decisions replay exactly (they are keyed on (seed, shot, k)).
        std::vector<size_t> gate_sites;
        std::vector<double> gate_probs;
        std::vector<int> measure_sites;
        for (size_t k = 0; k < noisy.instructions.size(); ++k) {
            const Instruction& instr = noisy.instructions[k];
            if (instr.gate == Gate::RESET) continue;
            if (instr.gate == Gate::MEASURE_Z) {
                measure_sites.push_back(static_cast<int>(k));
                continue;
            }
            auto kind = instruction_channel(noisy, instr);
            double p = kind ? channel_probability(*kind, model) : 0.0;
            if (p > 0) {
                gate_sites.push_back(k);
                gate_probs.push_back(p);
            }
        }
        std::vector<double> clean_cdf;
        std::vector<int> clean_qubits;
        {
            StateVector sv(noisy.qubit_count);
            for (const auto& instr : noisy.instructions) {
                if (instr.gate == Gate::MEASURE_Z)
                    clean_qubits.push_back(instr.qubits[0]);
                else if (instr.gate != Gate::RESET)
                    sv.apply(instr);
            }
            std::vector<double> probs = sv.subset_probabilities(clean_qubits);
            clean_cdf.resize(probs.size());
            double acc = 0;
            for (size_t i = 0; i < probs.size(); ++i) clean_cdf[i] = (acc += probs[i]);
        }

        for (uint64_t shot = 0; shot < shots; ++shot) {
            bool any_gate_fault = false;
            for (size_t s = 0; s < gate_sites.size() && !any_gate_fault; ++s) {
                Prng rng = substream_rng(seed, shot, gate_sites[s]);
                any_gate_fault = rng.next_double() < gate_probs[s];
            }
            std::vector<int> bits(measured, 0);
            if (!any_gate_fault) {
                // joint readout sample of the unfaulted state, then per-bit flips
                Prng mrng = substream_rng(seed, shot, kMeasureItem);
                double u = mrng.next_double() * clean_cdf.back();
                size_t key = std::lower_bound(clean_cdf.begin(), clean_cdf.end(), u) - clean_cdf.begin();
                if (key >= clean_cdf.size()) key = clean_cdf.size() - 1;
                for (int j = 0; j < measured; ++j) {
                    int b = static_cast<int>((key >> j) & 1);
                    if (model.p_meas > 0) {
                        Prng rng = substream_rng(seed, shot, measure_sites[j]);
                        if (rng.next_double() < model.p_meas) b ^= 1;
                    }
                    bits[noisy.instructions[measure_sites[j]].cbit] = b;
                }
            } else {
                StateVector sv(noisy.qubit_count);
                for (size_t k = 0; k < noisy.instructions.size(); ++k) {
                    const Instruction& instr = noisy.instructions[k];
                    Prng rng = substream_rng(seed, shot, k);
                    if (instr.gate == Gate::RESET) continue;  // fresh state per shot
                    if (instr.gate == Gate::MEASURE_Z) {
                        int b = sv.measure_z(instr.qubits[0], rng);
                        if (model.p_meas > 0 && rng.next_double() < model.p_meas) b ^= 1;
                        bits[instr.cbit] = b;
                    } else {
                        sv.apply_with_noise(noisy, instr, model, rng);
                    }
                }
            }
            uint64_t y = bits_to_y(bits);
            if (continued_fraction_period(y, inst.n) == inst.r) ++trial.successes;
        }
    }
    trial.q_s = static_cast<double>(trial.successes) / static_cast<double>(shots);
    trial.eta = trial.q_s / inst.p_s;
    trial.pass = trial.eta > kShorThreshold;
    return trial;
}

double shor_eta_estimate(int n, double p_2q, double p_m) {
    if (n < 2) throw std::invalid_argument("estimator needs n >= 2");
    double cnots = 12.0 * std::pow(n, 3) / std::log2(static_cast<double>(n));
    return std::pow(1.0 - p_2q, cnots) * std::pow(1.0 - p_m, 2.0 * n + 1.0);
}

int analytic_score_estimate(double p_2q, double p_m, int n_max) {
    if (!(p_2q >= 0 && p_2q < 1 && p_m >= 0 && p_m < 1))
        throw std::invalid_argument("error rates must lie in [0,1)");
    if (n_max < 4) throw std::invalid_argument("n_max must be >= 4");
    int score = 0;
    for (int n = 2; n <= n_max; ++n) {
        if (shor_eta_estimate(n, p_2q, p_m) > kShorThreshold)
            score = n;
        else
            break;  // eta_tilde is monotone decreasing in n
    }
    return score;
}

ShorScoreResult shor_score(const NoiseModel& model, uint64_t shots, uint64_t seed, int n_max) {
    ShorScoreResult result;
    result.capped = true;
    for (int n = 3; n <= n_max; ++n) {
        PeriodInstance inst = make_period_instance(n);
        ShorTrial t = run_shor_trial(inst, shots, model, substream(seed, 0x31, n));
        bool pass = t.pass;
        result.trials.push_back(std::move(t));
        if (!pass) {
            result.capped = false;
            break;
        }
        result.score = n;
    }
    result.meaningful = result.score >= kShorSmallestMeaningfulScore;
    return result;
}

json shor_section(const ShorScoreResult& result, double p_2q, double p_m, int n_max) {
    json trials = json::array();
    for (const auto& t : result.trials) {
        std::string poly = "x^" + std::to_string(t.instance.n);
        for (int k = t.instance.n - 1; k >= 0; --k)
            if (t.instance.poly.coeffs[k]) poly += k ? "+x^" + std::to_string(k) : "+1";
        trials.push_back(json{{"n", t.instance.n},
                              {"polynomial", poly},
                              {"control_register", t.instance.t},
                              {"shots", t.shots},
                              {"successes", t.successes},
                              {"q_s", t.q_s},
                              {"p_s", t.instance.p_s},
                              {"eta", t.eta},
                              {"pass", t.pass}});
    }
    json analytic = json::array();
    for (int n = 3; n <= n_max; ++n)
        analytic.push_back(json{{"n", n}, {"eta_estimate", shor_eta_estimate(n, p_2q, p_m)}});
    return json{{"trials", trials},
                {"score", result.score},
                {"meaningful", result.meaningful},
                {"capped", result.capped},
                {"threshold", kShorThreshold},
                {"analytic", json{{"grid", analytic}, {"score_estimate", analytic_score_estimate(p_2q, p_m, std::max(4, n_max))}}}};
}

void verify_shor_section(const json& report, VerifyResult& out) {
    const json& sec = report.at("shor");
    int max_prefix_pass = 0;
    bool broken = false;
    for (size_t t = 0; t < sec.at("trials").size(); ++t) {
        const json& trial = sec.at("trials").at(t);
        double qs = trial.at("q_s").get<double>();
        double ps = trial.at("p_s").get<double>();
        double eta = trial.at("eta").get<double>();
        if (std::abs(eta - qs / ps) > 1e-12)
            out.mismatches.push_back("shor: trial " + std::to_string(t) + " eta != q_s / p_s");
        bool pass = eta > kShorThreshold;
        if (pass != trial.at("pass").get<bool>())
            out.mismatches.push_back("shor: trial " + std::to_string(t) + " verdict does not match eta");
        if (!broken && pass)
            max_prefix_pass = trial.at("n").get<int>();
        else
            broken = true;
    }
    if (sec.at("score").get<int>() != max_prefix_pass)
        out.mismatches.push_back("shor: stored score does not match the passing prefix");
}

}  // namespace qkpi
