#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qkpi/bench_clv.hpp"
#include "qkpi/bench_ghz.hpp"
#include "qkpi/bench_qec.hpp"
#include "qkpi/bench_shor.hpp"
#include "qkpi/report.hpp"
#include "qkpi/statevector.hpp"

namespace fs = std::filesystem;
using namespace qkpi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitInternal = 4;

struct RunConfig {
    std::string scheme = "custom";
    double p = -1;
    double p_2q = 0, p_1q = 0, p_init = 0, p_meas = 0, p_idle = 0, p_res_idle = 0;
    uint64_t shots = 0;  // 0: per-benchmark default
    uint64_t seed = 0;
    int n_max = 0;  // 0: per-benchmark default
    int distance = 3;
    int workers = 1;
    std::string out_dir = ".";
    std::string preset;
    std::string search = "linear";
    double dfe_epsilon = 0, dfe_delta = 0;
};

NoiseModel config_model(const RunConfig& cfg) {
    if (cfg.scheme != "custom") {
        if (cfg.p < 0) throw std::invalid_argument("--p is required for the sd6/si1000 schemes");
        return scheme_to_model(parse_noise_scheme(cfg.scheme), cfg.p);
    }
    NoiseModel m;
    m.p_2q = cfg.p_2q;
    m.p_1q = cfg.p_1q;
    m.p_init = cfg.p_init;
    m.p_meas = cfg.p_meas;
    m.p_idle = cfg.p_idle;
    m.p_res_idle = cfg.p_res_idle;
    m.validate();
    return m;
}

json noise_json(const RunConfig& cfg) {
    NoiseModel m = config_model(cfg);
    json j{{"scheme", cfg.scheme}, {"p_2q", m.p_2q},     {"p_1q", m.p_1q},
           {"p_init", m.p_init},   {"p_meas", m.p_meas}, {"p_idle", m.p_idle},
           {"p_res_idle", m.p_res_idle}};
    if (cfg.p >= 0) j["p"] = cfg.p;
    return j;
}

void write_csv(const fs::path& path, const std::string& header, const std::vector<std::string>& rows) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    f << header << "\n";
    for (const auto& r : rows) f << r << "\n";
    std::cout << "wrote " << path.string() << "\n";
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void worst_case(const ClvTrial& t, double& worst_s, double& s_sig, double& worst_d, double& d_sig) {
    worst_s = 1;
    s_sig = 0;
    worst_d = 0;
    d_sig = 0;
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < 4; ++i) {
            const auto& se = t.cliffords[m].stabilizers[i].estimate;
            const auto& de = t.cliffords[m].destabilizers[i].estimate;
            if (se.value < worst_s) {
                worst_s = se.value;
                s_sig = se.sigma;
            }
            if (std::abs(de.value) > worst_d) {
                worst_d = std::abs(de.value);
                d_sig = de.sigma;
            }
        }
}

// ---- benchmark runners -------------------------------------------------

void run_clv(const RunConfig& cfg, json& report, const fs::path& out) {
    NoiseModel m = config_model(cfg);
    uint64_t shots = cfg.shots ? cfg.shots : kClvMinShots;
    int cap = cfg.n_max ? cfg.n_max : 64;
    SearchStrategy strategy = cfg.search == "binary" ? SearchStrategy::BinarySearch : SearchStrategy::LinearUp;
    ClvScoreResult r = clv_score(m, shots, strategy, cfg.seed, cap);
    report["clv"] = clv_section(r);
    std::vector<std::string> rows;
    for (const auto& trial : r.trials) {
        double ws, ss, wd, ds;
        worst_case(trial, ws, ss, wd, ds);
        rows.push_back(std::to_string(trial.qubits) + "," + fmt(ws) + "," + fmt(ss) + "," + fmt(wd) + "," +
                       fmt(ds) + "," + (evaluate_clv(trial).pass ? "1" : "0"));
    }
    write_csv(out / "clv_curve.csv",
              "qubits,worst_stabilizer,stab_sigma,worst_destabilizer_abs,destab_sigma,pass", rows);
    std::cout << "CLV score: " << r.score << "\n";
}

void run_ghz(const RunConfig& cfg, json& report, const fs::path& out) {
    NoiseModel m = config_model(cfg);
    uint64_t shots = cfg.shots ? cfg.shots : kGhzDefaultShots;
    int cap = cfg.n_max ? cfg.n_max : 64;
    GhzScoreResult r = ghz_score(m, shots, cfg.seed, cap);
    report["ghz"] = ghz_section(r, "stabilizer-bound");
    if (cfg.dfe_epsilon > 0 && cfg.dfe_delta > 0) {
        // secondary, flag-enabled estimator at the certified size
        int n_dfe = std::max(2, r.score);
        DfeEstimate e = dfe_ghz(n_dfe, cfg.dfe_epsilon, cfg.dfe_delta, m, cfg.seed);
        report["ghz"]["dfe"] = json{{"qubits", n_dfe},     {"epsilon", e.epsilon}, {"delta", e.delta},
                                    {"shots_T", e.budget}, {"fidelity", e.fidelity}, {"sigma", e.sigma}};
        std::cout << "DFE at N=" << n_dfe << ": F = " << e.fidelity << " +/- " << e.sigma
                  << " (T = " << e.budget << ")\n";
    }
    std::vector<std::string> rows;
    for (const auto& t : r.trials)
        rows.push_back(std::to_string(t.qubits) + "," + fmt(t.f_min) + "," + fmt(t.f_sigma) + "," +
                       (t.pass ? "1" : "0"));
    write_csv(out / "ghz_curve.csv", "qubits,f_min,f_sigma,pass", rows);
    std::cout << "GHZ score: " << r.score << "\n";
}

void run_shor(const RunConfig& cfg, json& report, const fs::path& out) {
    NoiseModel m = config_model(cfg);
    uint64_t shots = cfg.shots ? cfg.shots : kShorDefaultShots;
    int cap = cfg.n_max ? cfg.n_max : 5;
    ShorScoreResult r = shor_score(m, shots, cfg.seed, cap);
    report["shor"] = shor_section(r, m.p_2q, m.p_meas, std::max(cap, 8));
    std::vector<std::string> rows;
    for (const auto& t : r.trials)
        rows.push_back(std::to_string(t.instance.n) + "," + fmt(t.q_s) + "," + fmt(t.instance.p_s) + "," +
                       fmt(t.eta) + "," + (t.pass ? "1" : "0"));
    write_csv(out / "shor_trials.csv", "n,q_s,p_s,eta,pass", rows);
    std::cout << "Shor score: " << r.score << (r.meaningful ? "" : " (below the meaningful floor of 4)")
              << (r.capped ? " (capped at n_max)" : "") << "\n";
}

void run_qec(const RunConfig& cfg, json& report, const fs::path& out) {
    NoiseModel m = config_model(cfg);
    uint64_t shots = cfg.shots ? cfg.shots : kQecDefaultShotsPerBasis;
    QecRunResult r = run_qec_benchmark(cfg.distance, m, shots, cfg.seed, cfg.workers);
    report["qec"] = qec_section(r);
    FidelityEstimate fp = bell_fidelity_from_tally(r.physical);
    FidelityEstimate fl = bell_fidelity_from_tally(r.logical);
    std::vector<std::string> rows{std::to_string(cfg.distance) + "," + fmt(1 - fp.value) + "," + fmt(fp.sigma) +
                                  "," + fmt(1 - fl.value) + "," + fmt(fl.sigma) + "," + fmt(r.score.q) + "," +
                                  fmt(r.score.q_sigma) + "," + (r.score.unbounded ? "1" : "0")};
    write_csv(out / "qec_run.csv",
              "distance,physical_infidelity,physical_sigma,logical_infidelity,logical_sigma,q,q_sigma,unbounded",
              rows);
    if (r.score.unbounded)
        std::cout << "Q score: unbounded (logical infidelity at the statistical floor)\n";
    else
        std::cout << "Q score: " << r.score.q << " +/- " << r.score.q_sigma << "\n";
}

// ---- figure presets ----------------------------------------------------

void preset_fig1(const RunConfig& cfg, const fs::path& out) {
    NoiseModel m;
    m.p_2q = 1e-3;
    m.p_meas = 1e-2;
    uint64_t shots = cfg.shots ? cfg.shots : kClvMinShots;
    std::vector<std::string> rows;
    for (int n = 2; n <= (cfg.n_max ? cfg.n_max : 100); n += 2) {
        ClvTrial t = run_clv_trial(n, shots, m, substream(cfg.seed, 0xF1, n));
        double ws, ss, wd, ds;
        worst_case(t, ws, ss, wd, ds);
        rows.push_back(std::to_string(n) + "," + fmt(ws) + "," + fmt(ss) + "," + fmt(wd) + "," + fmt(ds));
        if (ws < kStabilizerThreshold - 0.1) break;
    }
    write_csv(out / "fig1_clv_expectations.csv",
              "qubits,worst_stabilizer,stab_sigma,worst_destabilizer_abs,destab_sigma", rows);
}

void preset_fig2(const RunConfig& cfg, const fs::path& out) {
    uint64_t shots = cfg.shots ? cfg.shots : kClvMinShots;
    std::vector<std::string> rows;
    for (double p2q : {3e-4, 1e-3, 3e-3, 1e-2})
        for (double pm : {1e-3, 3e-3, 1e-2, 3e-2}) {
            NoiseModel m;
            m.p_2q = p2q;
            m.p_meas = pm;
            ClvScoreResult r =
                clv_score(m, shots, SearchStrategy::LinearUp, cfg.seed, cfg.n_max ? cfg.n_max : 64);
            rows.push_back(fmt(p2q) + "," + fmt(pm) + "," + std::to_string(r.score));
        }
    write_csv(out / "fig2_clv_scores.csv", "p_2q,p_meas,score", rows);
}

void preset_fig3(const RunConfig& cfg, const fs::path& out) {
    uint64_t shots = cfg.shots ? cfg.shots : kGhzDefaultShots;
    std::vector<std::string> rows;
    for (auto [p2q, pm] : {std::pair{1e-4, 1e-3}, {1e-3, 1e-3}, {1e-3, 1e-2}, {3e-3, 1e-2}}) {
        NoiseModel m;
        m.p_2q = p2q;
        m.p_meas = pm;
        GhzScoreResult r = ghz_score(m, shots, cfg.seed, cfg.n_max ? cfg.n_max : 64);
        for (const auto& t : r.trials)
            rows.push_back(fmt(p2q) + "," + fmt(pm) + "," + std::to_string(t.qubits) + "," + fmt(t.f_min) +
                           "," + fmt(t.f_sigma) + "," + (t.pass ? "1" : "0"));
    }
    write_csv(out / "fig3_ghz_fidelity.csv", "p_2q,p_meas,qubits,f_min,f_sigma,pass", rows);

    std::vector<std::string> grid;
    for (double p2q : {3e-4, 1e-3, 3e-3, 1e-2})
        for (double pm : {1e-3, 3e-3, 1e-2, 3e-2}) {
            NoiseModel m;
            m.p_2q = p2q;
            m.p_meas = pm;
            GhzScoreResult r = ghz_score(m, shots, cfg.seed, cfg.n_max ? cfg.n_max : 64);
            grid.push_back(fmt(p2q) + "," + fmt(pm) + "," + std::to_string(r.score));
        }
    write_csv(out / "fig3_ghz_scores.csv", "p_2q,p_meas,score", grid);
}

void preset_fig4(const RunConfig& cfg, const fs::path& out) {
    (void)cfg;
    std::vector<std::string> rows;
    for (double p2q : {1e-5, 3e-5, 1e-4, 3e-4, 1e-3, 3e-3})
        for (double pm : {1e-4, 1e-3, 1e-2, 1e-1})
            rows.push_back(fmt(p2q) + "," + fmt(pm) + "," +
                           std::to_string(analytic_score_estimate(p2q, pm, 4096)));
    write_csv(out / "fig4_shor_estimates.csv", "p_2q,p_meas,score_estimate", rows);
}

void preset_fig5(const RunConfig& cfg, const fs::path& out) {
    uint64_t shots = cfg.shots ? cfg.shots : 30000;
    std::vector<std::string> rows;
    for (auto scheme : {NoiseScheme::SD6, NoiseScheme::SI1000})
        for (int d : {3, 5})
            for (double p : {3e-4, 1e-3, 3e-3}) {
                NoiseModel m = scheme_to_model(scheme, p);
                QecRunResult r = run_qec_benchmark(d, m, shots, substream(cfg.seed, 0xF5, d));
                FidelityEstimate fp = bell_fidelity_from_tally(r.physical);
                FidelityEstimate fl = bell_fidelity_from_tally(r.logical);
                rows.push_back(std::string(noise_scheme_name(scheme)) + "," + std::to_string(d) + "," + fmt(p) +
                               "," + fmt(1 - fp.value) + "," + fmt(fp.sigma) + "," + fmt(1 - fl.value) + "," +
                               fmt(fl.sigma));
            }
    write_csv(out / "fig5_qec_infidelity.csv",
              "scheme,distance,p,physical_infidelity,physical_sigma,logical_infidelity,logical_sigma", rows);
}

void preset_fig6(const RunConfig& cfg, const fs::path& out) {
    uint64_t shots = cfg.shots ? cfg.shots : 20000;
    int d = cfg.distance;
    std::vector<std::string> rows;
    for (double p2q : {3e-4, 1e-3, 3e-3})
        for (double pm : {1e-3, 5e-3, 2.5e-2}) {
            NoiseModel m = scheme_to_model(NoiseScheme::SI1000, 1e-3);  // fixed baseline channels
            m.p_2q = p2q;
            m.p_meas = pm;
            QecRunResult r = run_qec_benchmark(d, m, shots, substream(cfg.seed, 0xF6, 1));
            rows.push_back(fmt(p2q) + "," + fmt(pm) + "," + fmt(r.score.q) + "," + fmt(r.score.q_sigma) + "," +
                           (r.score.unbounded ? "1" : "0"));
        }
    write_csv(out / "fig6_qec_qscores.csv", "p_2q,p_meas,q,q_sigma,unbounded", rows);
}

// ---- circuit export ----------------------------------------------------

void export_circuits(const std::string& bench, const RunConfig& cfg, const fs::path& out) {
    auto dump = [&](const std::string& name, const std::string& text) {
        std::ofstream f(out / name, std::ios::binary);
        f << text;
        std::cout << "wrote " << (out / name).string() << "\n";
    };
    if (bench == "clv") {
        int n = cfg.n_max ? cfg.n_max : 4;
        NoiseModel zero;
        ClvTrial t = run_clv_trial(n, kClvMinShots, zero, cfg.seed);
        for (int m = 0; m < 4; ++m) {
            Prng setup = substream_rng(cfg.seed, 0x11, m);
            StabilizerTableau g = sample_random_clifford(n, setup);
            Circuit clifford = synthesize_clifford_circuit(g);
            dump("clv_clifford_m" + std::to_string(m) + ".qasm", emit_qasm(clifford));
            Circuit prep(n);
            for (int q = 0; q < n; ++q) prep.reset(q);
            for (const auto& instr : clifford.instructions) prep.instructions.push_back(instr);
            for (int i = 0; i < 4; ++i) {
                dump("clv_m" + std::to_string(m) + "_s" + std::to_string(i) + ".qasm",
                     emit_qasm(build_pauli_measurement_circuit(prep, t.cliffords[m].stabilizers[i].op)));
                dump("clv_m" + std::to_string(m) + "_d" + std::to_string(i) + ".qasm",
                     emit_qasm(build_pauli_measurement_circuit(prep, t.cliffords[m].destabilizers[i].op)));
            }
        }
    } else if (bench == "ghz") {
        int n = cfg.n_max ? cfg.n_max : 8;
        Circuit prep = build_ghz_circuit(n);
        dump("ghz_prep.qasm", emit_qasm(prep));
        Circuit xset = prep;
        for (int q = 0; q < n; ++q) xset.h(q);
        for (int q = 0; q < n; ++q) xset.measure(q);
        dump("ghz_setting_x.qasm", emit_qasm(xset));
        Circuit zset = prep;
        for (int q = 0; q < n; ++q) zset.measure(q);
        dump("ghz_setting_z.qasm", emit_qasm(zset));
    } else if (bench == "shor") {
        int n = cfg.n_max ? cfg.n_max : 3;
        PeriodInstance inst = make_period_instance(n);
        dump("shor_period_n" + std::to_string(n) + ".qasm", emit_qasm(build_period_circuit(inst)));
    } else if (bench == "qec") {
        SurgeryLayout layout = make_surgery_layout(cfg.distance);
        const char* names[3] = {"z", "x", "y"};
        const LogicalBasis bases[3] = {LogicalBasis::Z, LogicalBasis::X, LogicalBasis::Y};
        for (int b = 0; b < 3; ++b)
            dump("qec_surgery_d" + std::to_string(cfg.distance) + "_" + names[b] + ".qasm",
                 emit_surgery_qasm(build_surgery_circuit(layout, bases[b])));
    } else {
        throw std::invalid_argument("unknown benchmark '" + bench + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qkpi: quantum KPI benchmark suite (Clifford volume, GHZ, period finding, QEC Bell benefit)"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("QKPI_OUT")) cfg.out_dir = env;
    std::string config_path;
    std::vector<CLI::Option*> opts;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; explicit flags override its values");
        opts.push_back(sub->add_option("--scheme", cfg.scheme, "noise scheme: sd6, si1000, custom"));
        opts.push_back(sub->add_option("--p", cfg.p, "single physical rate for sd6/si1000"));
        opts.push_back(sub->add_option("--p2q", cfg.p_2q, "two-qubit depolarizing probability"));
        opts.push_back(sub->add_option("--p1q", cfg.p_1q, "single-qubit depolarizing probability"));
        opts.push_back(sub->add_option("--pinit", cfg.p_init, "initialization flip probability"));
        opts.push_back(sub->add_option("--pm", cfg.p_meas, "measurement flip probability"));
        opts.push_back(sub->add_option("--pidle", cfg.p_idle, "idle depolarizing probability"));
        opts.push_back(sub->add_option("--presidle", cfg.p_res_idle, "data idle during readout"));
        opts.push_back(sub->add_option("--shots", cfg.shots, "shots (0 = benchmark default)"));
        opts.push_back(
            sub->add_option("--seed", cfg.seed, "master seed (required: runs must be reproducible)")->required());
        opts.push_back(sub->add_option("--nmax", cfg.n_max, "search cap / qubit count for exports"));
        opts.push_back(sub->add_option("--d", cfg.distance, "surface-code distance"));
        opts.push_back(sub->add_option("--workers", cfg.workers, "worker threads (never changes results)"));
        opts.push_back(sub->add_option("--out", cfg.out_dir, "output directory"));
        opts.push_back(sub->add_option("--search", cfg.search, "clv search strategy: linear | binary"));
        opts.push_back(sub->add_option("--dfe-epsilon", cfg.dfe_epsilon, "enable the DFE estimator: precision"));
        opts.push_back(sub->add_option("--dfe-delta", cfg.dfe_delta, "enable the DFE estimator: confidence"));
    };

    auto* run = app.add_subcommand("run", "run a benchmark and write report.json + CSV");
    std::string bench;
    run->add_option("benchmark", bench, "clv | ghz | shor | qec | all")->required();
    run->add_option("--preset", cfg.preset, "figure preset: fig1..fig6 (overrides the benchmark grid)");
    add_common(run);

    auto* exp = app.add_subcommand("export", "export benchmark circuits as OpenQASM 2.0");
    std::string exp_bench;
    exp->add_option("benchmark", exp_bench, "clv | ghz | shor | qec")->required();
    add_common(exp);

    auto* verify = app.add_subcommand("verify", "recompute every verdict of a report from its estimates");
    std::string report_path;
    verify->add_option("report", report_path, "path to report.json")->required();

    auto* presets = app.add_subcommand("presets", "list figure presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (!config_path.empty()) {
            // file fills in whatever the command line left at its default
            json j = read_report(config_path);
            auto unset = [&](const char* name) {
                for (auto* o : opts)
                    if (o->get_name() == name) return o->count() == 0;
                return true;
            };
            if (j.contains("scheme") && unset("--scheme")) cfg.scheme = j["scheme"].get<std::string>();
            if (j.contains("p") && unset("--p")) cfg.p = j["p"].get<double>();
            if (j.contains("p_2q") && unset("--p2q")) cfg.p_2q = j["p_2q"].get<double>();
            if (j.contains("p_1q") && unset("--p1q")) cfg.p_1q = j["p_1q"].get<double>();
            if (j.contains("p_init") && unset("--pinit")) cfg.p_init = j["p_init"].get<double>();
            if (j.contains("p_meas") && unset("--pm")) cfg.p_meas = j["p_meas"].get<double>();
            if (j.contains("p_idle") && unset("--pidle")) cfg.p_idle = j["p_idle"].get<double>();
            if (j.contains("p_res_idle") && unset("--presidle")) cfg.p_res_idle = j["p_res_idle"].get<double>();
            if (j.contains("shots") && unset("--shots")) cfg.shots = j["shots"].get<uint64_t>();
            if (j.contains("n_max") && unset("--nmax")) cfg.n_max = j["n_max"].get<int>();
            if (j.contains("distance") && unset("--d")) cfg.distance = j["distance"].get<int>();
            if (j.contains("workers") && unset("--workers")) cfg.workers = j["workers"].get<int>();
            if (j.contains("out") && unset("--out")) cfg.out_dir = j["out"].get<std::string>();
        }

        if (presets->parsed()) {
            std::cout << "fig1: CLV worst-case expectations vs N at p2q=1e-3, pm=1e-2\n"
                         "fig2: CLV score grid over (p2q, pm)\n"
                         "fig3: GHZ fidelity curves (four noise pairs) + score grid\n"
                         "fig4: period-finding analytic score grid\n"
                         "fig5: QEC Bell infidelity vs p for d in {3,5}, SD6 and SI1000\n"
                         "fig6: Q-score grid over (CNOT rate, measurement rate)\n";
            return kExitOk;
        }

        if (verify->parsed()) {
            json report = read_report(report_path);
            VerifyResult v = verify_report(report);
            if (v.ok) {
                std::cout << "PASS: all verdicts recomputable from stored estimates (digest "
                          << report_digest(report) << ")\n";
                return kExitOk;
            }
            std::cout << "FAIL:\n";
            for (const auto& msg : v.mismatches) std::cout << "  " << msg << "\n";
            return 1;
        }

        fs::create_directories(cfg.out_dir);
        fs::path out(cfg.out_dir);

        if (exp->parsed()) {
            export_circuits(exp_bench, cfg, out);
            return kExitOk;
        }

        json report = make_report_skeleton(cfg.seed, noise_json(cfg));
        if (!cfg.preset.empty()) {
            if (cfg.preset == "fig1") preset_fig1(cfg, out);
            else if (cfg.preset == "fig2") preset_fig2(cfg, out);
            else if (cfg.preset == "fig3") preset_fig3(cfg, out);
            else if (cfg.preset == "fig4") preset_fig4(cfg, out);
            else if (cfg.preset == "fig5") preset_fig5(cfg, out);
            else if (cfg.preset == "fig6") preset_fig6(cfg, out);
            else throw std::invalid_argument("unknown preset '" + cfg.preset + "'");
            return kExitOk;
        }

        if (bench != "clv" && bench != "ghz" && bench != "shor" && bench != "qec" && bench != "all")
            throw std::invalid_argument("unknown benchmark '" + bench + "'");
        if (bench == "clv" || bench == "all") run_clv(cfg, report, out);
        if (bench == "ghz" || bench == "all") run_ghz(cfg, report, out);
        if (bench == "shor" || bench == "all") run_shor(cfg, report, out);
        if (bench == "qec" || bench == "all") run_qec(cfg, report, out);

        validate_report(report);
        fs::path rp = out / "report.json";
        write_report(rp.string(), report);
        std::cout << "report written to " << rp.string() << " (digest " << report_digest(report) << ")\n";
        return kExitOk;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
