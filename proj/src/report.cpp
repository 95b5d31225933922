#include "qkpi/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qkpi {

double expectation_sigma(double value, uint64_t shots) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    if (!(std::abs(value) <= 1.0)) throw std::invalid_argument("expectation magnitude exceeds 1");
    return std::sqrt((1.0 - value * value) / static_cast<double>(shots));
}

double aggregate_sigma(const std::vector<double>& sigmas) {
    if (sigmas.size() != 4) throw std::invalid_argument("aggregated sigma is defined for groups of 4");
    double s = 0;
    for (double v : sigmas) s += v * v;
    return std::sqrt(s / 4.0);
}

double mean_sigma(const std::vector<double>& sigmas) { return aggregate_sigma(sigmas) / 2.0; }

json Estimate::to_json() const {
    return json{{"value", value}, {"sigma", sigma}, {"shots", shots}, {"derivation", derivation}};
}

Estimate Estimate::from_json(const json& j) {
    Estimate e;
    e.value = j.at("value").get<double>();
    e.sigma = j.at("sigma").get<double>();
    e.shots = j.at("shots").get<uint64_t>();
    e.derivation = j.value("derivation", "");
    return e;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += static_cast<char>(ch);
                }
        }
    }
    out += '"';
}

void write_canonical(std::string& out, const json& v) {
    switch (v.type()) {
        case json::value_t::null:
            out += "null";
            break;
        case json::value_t::boolean:
            out += v.get<bool>() ? "true" : "false";
            break;
        case json::value_t::number_integer:
            out += std::to_string(v.get<int64_t>());
            break;
        case json::value_t::number_unsigned:
            out += std::to_string(v.get<uint64_t>());
            break;
        case json::value_t::number_float: {
            double d = v.get<double>();
            if (!std::isfinite(d)) throw std::invalid_argument("non-finite number in report");
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", d);
            out += buf;
            break;
        }
        case json::value_t::string:
            append_escaped(out, v.get<std::string>());
            break;
        case json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& item : v) {
                if (!first) out += ',';
                first = false;
                write_canonical(out, item);
            }
            out += ']';
            break;
        }
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {  // nlohmann objects iterate key-sorted
                if (!first) out += ',';
                first = false;
                append_escaped(out, it.key());
                out += ':';
                write_canonical(out, it.value());
            }
            out += '}';
            break;
        }
        default:
            throw std::invalid_argument("unsupported JSON value type in report");
    }
}

}  // namespace

std::string canonical_json(const json& doc) {
    std::string out;
    write_canonical(out, doc);
    out += '\n';
    return out;
}

std::string report_digest(const json& report) {
    json stripped = report;
    if (stripped.contains("meta") && stripped["meta"].contains("timestamp")) stripped["meta"]["timestamp"] = "";
    std::string canon = canonical_json(stripped);
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_report(const std::string& path, const json& report) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << canonical_json(report);
}

json read_report(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::stringstream ss;
    ss << f.rdbuf();
    return json::parse(ss.str());
}

namespace {

const json* walk(const json& root, const std::string& pointer) {
    return root.contains(json::json_pointer(pointer)) ? &root.at(json::json_pointer(pointer)) : nullptr;
}

void require(const json& root, const std::string& pointer, json::value_t type) {
    const json* v = walk(root, pointer);
    if (!v) throw SchemaError(pointer, "missing required field");
    bool ok = v->type() == type;
    // integer/float interchange: canonical numbers may parse back as integers
    if (!ok && type == json::value_t::number_float && v->is_number()) ok = true;
    if (!ok && type == json::value_t::number_unsigned && v->is_number_integer()) ok = true;
    if (!ok && type == json::value_t::number_integer && v->is_number_integer()) ok = true;
    if (!ok) throw SchemaError(pointer, std::string("expected ") + json(type).type_name());
}

void require_array(const json& root, const std::string& pointer, size_t min_size = 0) {
    const json* v = walk(root, pointer);
    if (!v) throw SchemaError(pointer, "missing required field");
    if (!v->is_array()) throw SchemaError(pointer, "expected array");
    if (v->size() < min_size)
        throw SchemaError(pointer, "expected at least " + std::to_string(min_size) + " entries");
}

void require_estimate(const json& root, const std::string& pointer) {
    require(root, pointer + "/value", json::value_t::number_float);
    require(root, pointer + "/sigma", json::value_t::number_float);
    require(root, pointer + "/shots", json::value_t::number_unsigned);
}

}  // namespace

void validate_report(const json& report) {
    require(report, "/meta/schema", json::value_t::string);
    require(report, "/meta/suite", json::value_t::string);
    require(report, "/meta/timestamp", json::value_t::string);
    require(report, "/meta/master_seed", json::value_t::number_unsigned);
    require(report, "/meta/noise", json::value_t::object);

    if (report.contains("clv")) {
        require_array(report, "/clv/trials", 1);
        const auto& trials = report.at("clv").at("trials");
        for (size_t t = 0; t < trials.size(); ++t) {
            std::string base = "/clv/trials/" + std::to_string(t);
            require(report, base + "/qubits", json::value_t::number_unsigned);
            require(report, base + "/shots_per_observable", json::value_t::number_unsigned);
            require_array(report, base + "/cliffords", 4);
            for (size_t m = 0; m < 4; ++m) {
                std::string cb = base + "/cliffords/" + std::to_string(m);
                for (const char* fam : {"/stabilizers", "/destabilizers"}) {
                    require_array(report, cb + fam, 4);
                    for (size_t i = 0; i < 4; ++i)
                        require_estimate(report, cb + fam + "/" + std::to_string(i) + "/estimate");
                }
            }
            require(report, base + "/verdict/pass", json::value_t::boolean);
        }
        require(report, "/clv/score", json::value_t::number_integer);
    }
    if (report.contains("ghz")) {
        require_array(report, "/ghz/trials", 1);
        const auto& trials = report.at("ghz").at("trials");
        for (size_t t = 0; t < trials.size(); ++t) {
            std::string base = "/ghz/trials/" + std::to_string(t);
            require(report, base + "/qubits", json::value_t::number_unsigned);
            require(report, base + "/f_min", json::value_t::number_float);
            require(report, base + "/f_sigma", json::value_t::number_float);
            require(report, base + "/pass", json::value_t::boolean);
            require_array(report, base + "/generators", 2);
        }
        require(report, "/ghz/score", json::value_t::number_integer);
        require(report, "/ghz/method", json::value_t::string);
    }
    if (report.contains("shor")) {
        require_array(report, "/shor/trials", 1);
        const auto& trials = report.at("shor").at("trials");
        for (size_t t = 0; t < trials.size(); ++t) {
            std::string base = "/shor/trials/" + std::to_string(t);
            require(report, base + "/n", json::value_t::number_unsigned);
            require(report, base + "/shots", json::value_t::number_unsigned);
            require(report, base + "/q_s", json::value_t::number_float);
            require(report, base + "/p_s", json::value_t::number_float);
            require(report, base + "/eta", json::value_t::number_float);
            require(report, base + "/pass", json::value_t::boolean);
        }
        require(report, "/shor/score", json::value_t::number_integer);
    }
    if (report.contains("qec")) {
        require(report, "/qec/distance", json::value_t::number_unsigned);
        for (const char* side : {"/qec/physical", "/qec/logical"}) {
            require(report, std::string(side) + "/fidelity", json::value_t::number_float);
            require(report, std::string(side) + "/sigma", json::value_t::number_float);
            require_array(report, std::string(side) + "/tally", 3);
        }
        require(report, "/qec/q_score/unbounded", json::value_t::boolean);
    }
}

// section verifiers live next to their benchmarks
void verify_clv_section(const json& report, VerifyResult& out);
void verify_ghz_section(const json& report, VerifyResult& out);
void verify_shor_section(const json& report, VerifyResult& out);
void verify_qec_section(const json& report, VerifyResult& out);

VerifyResult verify_report(const json& report) {
    validate_report(report);
    VerifyResult out;
    if (report.contains("clv")) verify_clv_section(report, out);
    if (report.contains("ghz")) verify_ghz_section(report, out);
    if (report.contains("shor")) verify_shor_section(report, out);
    if (report.contains("qec")) verify_qec_section(report, out);
    out.ok = out.mismatches.empty();
    return out;
}

json make_report_skeleton(uint64_t master_seed, const json& noise_config) {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    json report;
    report["meta"] = json{{"suite", "qkpi"},        {"schema", kReportSchemaVersion},
                          {"version", "0.1.0"},     {"timestamp", std::string(buf)},
                          {"master_seed", master_seed}, {"noise", noise_config}};
    return report;
}

}  // namespace qkpi
