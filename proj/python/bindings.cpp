#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qkpi/bench_clv.hpp"
#include "qkpi/bench_ghz.hpp"
#include "qkpi/bench_qec.hpp"
#include "qkpi/bench_shor.hpp"
#include "qkpi/report.hpp"
#include "qkpi/statevector.hpp"
#include "qkpi/tableau.hpp"

namespace py = pybind11;
using namespace qkpi;

namespace {

py::object to_py(const json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

NoiseModel model_from_kwargs(double p_2q, double p_1q, double p_init, double p_meas, double p_idle,
                             double p_res_idle) {
    NoiseModel m;
    m.p_2q = p_2q;
    m.p_1q = p_1q;
    m.p_init = p_init;
    m.p_meas = p_meas;
    m.p_idle = p_idle;
    m.p_res_idle = p_res_idle;
    m.validate();
    return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "quantum KPI benchmark suite: Clifford volume, GHZ entanglement, "
              "period finding and the QEC Bell benefit";
    m.attr("__version__") = "0.1.0";

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init(&model_from_kwargs), py::arg("p_2q") = 0.0, py::arg("p_1q") = 0.0,
             py::arg("p_init") = 0.0, py::arg("p_meas") = 0.0, py::arg("p_idle") = 0.0,
             py::arg("p_res_idle") = 0.0)
        .def_readwrite("p_2q", &NoiseModel::p_2q)
        .def_readwrite("p_1q", &NoiseModel::p_1q)
        .def_readwrite("p_init", &NoiseModel::p_init)
        .def_readwrite("p_meas", &NoiseModel::p_meas)
        .def_readwrite("p_idle", &NoiseModel::p_idle)
        .def_readwrite("p_res_idle", &NoiseModel::p_res_idle)
        .def("__repr__", [](const NoiseModel& n) {
            return "NoiseModel(p_2q=" + std::to_string(n.p_2q) + ", p_meas=" + std::to_string(n.p_meas) +
                   ", ...)";
        });

    m.def(
        "scheme_to_model",
        [](const std::string& scheme, double p) { return scheme_to_model(parse_noise_scheme(scheme), p); },
        py::arg("scheme"), py::arg("p"), "Table mapping of a single physical rate onto the six channels");

    // GF(2) utilities
    m.def(
        "companion_matrix",
        [](const std::vector<int>& coeffs) {
            BinaryPolynomial p;
            for (int c : coeffs) p.coeffs.push_back(static_cast<uint8_t>(c & 1));
            return companion_matrix(p).to_rows();
        },
        py::arg("coeffs"), "Companion matrix rows of x^n + c_{n-1} x^{n-1} + ... + c_0");
    m.def(
        "primitive_polynomial",
        [](int degree) {
            BinaryPolynomial p = primitive_polynomial(degree);
            return std::vector<int>(p.coeffs.begin(), p.coeffs.end());
        },
        py::arg("degree"));
    m.def(
        "synthesize_cnot_network",
        [](const std::vector<std::vector<int>>& rows) {
            BinaryMatrix mtx(static_cast<int>(rows.size()));
            for (int r = 0; r < mtx.n; ++r)
                for (int c = 0; c < mtx.n; ++c) mtx.set(r, c, rows[r][c] != 0);
            return emit_qasm(synthesize_cnot_network(mtx));
        },
        py::arg("rows"), "CNOT-only circuit realizing b -> Mb (mod 2), as OpenQASM");

    // circuits
    m.def("ghz_circuit_qasm", [](int n) { return emit_qasm(build_ghz_circuit(n)); }, py::arg("qubits"));
    m.def(
        "period_circuit_qasm",
        [](int n, int padding) { return emit_qasm(build_period_circuit(make_period_instance(n, padding))); },
        py::arg("n"), py::arg("register_padding") = kShorDefaultRegisterPadding);
    m.def(
        "normalize_qasm", [](const std::string& text) { return emit_qasm(parse_qasm(text)); }, py::arg("qasm"),
        "parse + re-emit (canonical form of the supported subset)");

    // statistics
    m.def("expectation_sigma", &expectation_sigma, py::arg("value"), py::arg("shots"));
    m.def("aggregate_sigma", &aggregate_sigma, py::arg("sigmas"));
    m.def("dfe_shot_budget", &dfe_shot_budget, py::arg("epsilon"), py::arg("delta"));
    m.def("pc_shot_budget", &pc_shot_budget, py::arg("qubits"), py::arg("epsilon"), py::arg("delta"));
    m.def("continued_fraction_period", &continued_fraction_period, py::arg("y"), py::arg("n"));
    m.def("analytic_score_estimate", &analytic_score_estimate, py::arg("p_2q"), py::arg("p_meas"),
          py::arg("n_max"));

    // benchmark runners (JSON-shaped results)
    m.def(
        "run_clv",
        [](int n_max, uint64_t shots, const NoiseModel& model, uint64_t seed) {
            return to_py(clv_section(clv_score(model, shots, SearchStrategy::LinearUp, seed, n_max)));
        },
        py::arg("n_max"), py::arg("shots"), py::arg("model"), py::arg("seed"));
    m.def(
        "run_ghz",
        [](int n_cap, uint64_t shots, const NoiseModel& model, uint64_t seed) {
            return to_py(ghz_section(ghz_score(model, shots, seed, n_cap), "stabilizer-bound"));
        },
        py::arg("n_cap"), py::arg("shots"), py::arg("model"), py::arg("seed"));
    m.def(
        "run_shor",
        [](int n_max, uint64_t shots, const NoiseModel& model, uint64_t seed) {
            return to_py(shor_section(shor_score(model, shots, seed, n_max), model.p_2q, model.p_meas,
                                      std::max(n_max, 4)));
        },
        py::arg("n_max"), py::arg("shots"), py::arg("model"), py::arg("seed"));
    m.def(
        "run_qec",
        [](int distance, uint64_t shots_per_basis, const NoiseModel& model, uint64_t seed) {
            return to_py(qec_section(run_qec_benchmark(distance, model, shots_per_basis, seed)));
        },
        py::arg("distance"), py::arg("shots_per_basis"), py::arg("model"), py::arg("seed"));
    m.def(
        "dfe_ghz",
        [](int qubits, double epsilon, double delta, const NoiseModel& model, uint64_t seed) {
            DfeEstimate e = dfe_ghz(qubits, epsilon, delta, model, seed);
            return py::dict(py::arg("budget") = e.budget, py::arg("fidelity") = e.fidelity,
                            py::arg("sigma") = e.sigma, py::arg("epsilon") = e.epsilon,
                            py::arg("delta") = e.delta);
        },
        py::arg("qubits"), py::arg("epsilon"), py::arg("delta"), py::arg("model"), py::arg("seed"));

    // reports
    m.def(
        "verify_report_file",
        [](const std::string& path) {
            VerifyResult v = verify_report(read_report(path));
            return py::make_tuple(v.ok, v.mismatches);
        },
        py::arg("path"));
    m.def(
        "report_digest_file", [](const std::string& path) { return report_digest(read_report(path)); },
        py::arg("path"));
}
