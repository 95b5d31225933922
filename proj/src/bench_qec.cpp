#include "qkpi/bench_qec.hpp"

#include <cmath>

#include "qkpi/tableau.hpp"

namespace qkpi {

namespace {
constexpr uint64_t kStreamPhysical = 0x41;
constexpr uint64_t kStreamLogical = 0x45;
}  // namespace

Circuit physical_bell_circuit(int basis) {
    Circuit c(2);
    c.reset(0);
    c.reset(1);
    c.h(0);
    c.cnot(0, 1);
    if (basis == 1) {  // X values: Hadamard both
        c.h(0);
        c.h(1);
    } else if (basis == 2) {  // Y values: S^dagger then Hadamard on both
        c.sdg(0);
        c.sdg(1);
        c.h(0);
        c.h(1);
    }
    c.measure(0);
    c.measure(1);
    return c;
}

std::vector<int> run_tableau_shot(const Circuit& circuit, const NoiseModel& model, uint64_t master_seed,
                                  uint64_t shot) {
    StabilizerTableau t(circuit.qubit_count);
    std::vector<int> bits(circuit.cbit_count, 0);
    for (size_t k = 0; k < circuit.instructions.size(); ++k) {
        const Instruction& instr = circuit.instructions[k];
        Prng rng = substream_rng(master_seed, shot, k);
        auto kind = instruction_channel(circuit, instr);
        switch (instr.gate) {
            case Gate::RESET: {
                if (t.measure_z(instr.qubits[0], rng)) t.apply_gate(Gate::X, {instr.qubits[0]});
                break;
            }
            case Gate::MEASURE_Z: {
                int b = t.measure_z(instr.qubits[0], rng);
                if (kind && model.p_meas > 0 && rng.next_double() < model.p_meas) b ^= 1;
                bits[instr.cbit] = b;
                continue;  // measurement noise already handled
            }
            default:
                t.apply_gate(instr.gate, instr.qubits.data(), instr.arity());
        }
        if (kind && instr.gate != Gate::MEASURE_Z) {
            auto f = sample_fault(*kind, instr.qubits.data(), instr.arity() == 2 ? 2 : 1, model, rng);
            if (f)
                for (int i = 0; i < f->nq; ++i) {
                    Gate g = f->pauli[i] == 1 ? Gate::X : f->pauli[i] == 2 ? Gate::Z : Gate::Y;
                    t.apply_gate(g, {f->qubits[i]});
                }
        }
    }
    return bits;
}

BellOutcomeTally physical_bell_tally(const NoiseModel& model, uint64_t shots_per_basis, uint64_t seed) {
    if (shots_per_basis < 1) throw std::invalid_argument("shots must be >= 1");
    model.validate();
    BellOutcomeTally tally;
    for (int basis = 0; basis < 3; ++basis) {
        Circuit c = physical_bell_circuit(basis);
        uint64_t stream = substream(seed, kStreamPhysical, basis);
        uint64_t errors = 0;
        for (uint64_t shot = 0; shot < shots_per_basis; ++shot) {
            std::vector<int> bits = run_tableau_shot(c, model, stream, shot);
            bool equal = bits[0] == bits[1];
            bool error = basis == 2 ? equal : !equal;  // Phi+: Z/X correlated, Y anticorrelated
            errors += error;
        }
        tally.shots[basis] = shots_per_basis;
        tally.errors[basis] = errors;
    }
    return tally;
}

BellOutcomeTally logical_bell_tally(int d, const NoiseModel& model, uint64_t shots_per_basis, uint64_t seed,
                                    int workers) {
    SurgeryLayout layout = make_surgery_layout(d);
    BellOutcomeTally tally;
    const LogicalBasis bases[3] = {LogicalBasis::Z, LogicalBasis::X, LogicalBasis::Y};
    for (int b = 0; b < 3; ++b) {
        AnnotatedCircuit annotated = build_surgery_circuit(layout, bases[b]);
        DetectorModel dem = build_detector_model(annotated, model);
        tally.shots[b] = shots_per_basis;
        tally.errors[b] = sample_and_count_errors(dem, shots_per_basis, substream(seed, kStreamLogical, b), workers);
    }
    return tally;
}

FidelityEstimate bell_fidelity_from_tally(const BellOutcomeTally& tally) {
    FidelityEstimate out;
    double defect = 0, var = 0;
    for (int b = 0; b < 3; ++b) {
        if (tally.shots[b] == 0) throw std::invalid_argument("every basis needs at least one shot");
        double n = static_cast<double>(tally.shots[b]);
        double p = static_cast<double>(tally.errors[b]) / n;
        defect += p;
        var += p * (1 - p) / n;
    }
    out.value = 1.0 - 0.5 * defect;
    out.sigma = 0.5 * std::sqrt(var);
    return out;
}

QScore q_score(const std::vector<FidelityEstimate>& physical, const FidelityEstimate& logical) {
    if (physical.empty()) throw std::invalid_argument("need at least one physical tally");
    QScore s;
    s.physical_fidelity = physical[0].value;
    s.physical_sigma = physical[0].sigma;
    for (const auto& f : physical)
        if (f.value > s.physical_fidelity) {
            s.physical_fidelity = f.value;
            s.physical_sigma = f.sigma;
        }
    s.logical_fidelity = logical.value;
    s.logical_sigma = logical.sigma;
    double phys_inf = 1.0 - s.physical_fidelity;
    double log_inf = 1.0 - s.logical_fidelity;
    if (log_inf <= s.logical_sigma || log_inf <= 0) {
        s.unbounded = true;
        s.q = 0;
        s.q_sigma = 0;
        return s;
    }
    s.q = phys_inf / log_inf;
    // first-order propagation
    double d_phys = s.physical_sigma / log_inf;
    double d_log = phys_inf * s.logical_sigma / (log_inf * log_inf);
    s.q_sigma = std::sqrt(d_phys * d_phys + d_log * d_log);
    return s;
}

QecRunResult run_qec_benchmark(int d, const NoiseModel& model, uint64_t shots_per_basis, uint64_t seed,
                               int workers) {
    QecRunResult result;
    result.distance = d;
    result.layout_digest = make_surgery_layout(d).digest();
    result.physical = physical_bell_tally(model, shots_per_basis, seed);
    result.logical = logical_bell_tally(d, model, shots_per_basis, seed, workers);
    FidelityEstimate fp = bell_fidelity_from_tally(result.physical);
    FidelityEstimate fl = bell_fidelity_from_tally(result.logical);
    result.score = q_score({fp}, fl);
    return result;
}

namespace {

json tally_to_json(const BellOutcomeTally& tally) {
    const char* names[3] = {"Z", "X", "Y"};
    json arr = json::array();
    for (int b = 0; b < 3; ++b)
        arr.push_back(json{{"basis", names[b]}, {"shots", tally.shots[b]}, {"errors", tally.errors[b]}});
    return arr;
}

}  // namespace

json qec_section(const QecRunResult& result) {
    FidelityEstimate fp = bell_fidelity_from_tally(result.physical);
    FidelityEstimate fl = bell_fidelity_from_tally(result.logical);
    return json{
        {"distance", result.distance},
        {"decoder", "union-find"},
        {"layout_digest", result.layout_digest},
        {"bell_label", "phi+ (merge outcome absorbed as a Pauli-frame update)"},
        {"physical",
         json{{"tally", tally_to_json(result.physical)}, {"fidelity", fp.value}, {"sigma", fp.sigma},
              {"pairs_note", "simulation provides one homogeneous pair; hardware users report max over pairs"}}},
        {"logical",
         json{{"tally", tally_to_json(result.logical)}, {"fidelity", fl.value}, {"sigma", fl.sigma}}},
        {"q_score", json{{"value", result.score.q},
                         {"sigma", result.score.q_sigma},
                         {"unbounded", result.score.unbounded}}}};
}

void verify_qec_section(const json& report, VerifyResult& out) {
    const json& sec = report.at("qec");
    auto tally_from = [&](const json& side) {
        BellOutcomeTally t;
        for (int b = 0; b < 3; ++b) {
            t.shots[b] = side.at("tally").at(b).at("shots").get<uint64_t>();
            t.errors[b] = side.at("tally").at(b).at("errors").get<uint64_t>();
        }
        return t;
    };
    FidelityEstimate fp = bell_fidelity_from_tally(tally_from(sec.at("physical")));
    FidelityEstimate fl = bell_fidelity_from_tally(tally_from(sec.at("logical")));
    if (std::abs(fp.value - sec.at("physical").at("fidelity").get<double>()) > 1e-12)
        out.mismatches.push_back("qec: physical fidelity does not match its tally");
    if (std::abs(fl.value - sec.at("logical").at("fidelity").get<double>()) > 1e-12)
        out.mismatches.push_back("qec: logical fidelity does not match its tally");
    QScore s = q_score({fp}, fl);
    if (s.unbounded != sec.at("q_score").at("unbounded").get<bool>())
        out.mismatches.push_back("qec: unbounded flag does not match the estimates");
    if (!s.unbounded && std::abs(s.q - sec.at("q_score").at("value").get<double>()) > 1e-9)
        out.mismatches.push_back("qec: Q does not match the stored fidelities");
}

}  // namespace qkpi
