#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qkpi {

using json = nlohmann::json;

inline constexpr const char* kReportSchemaVersion = "1";

// sigma of a +/-1 expectation estimate: sqrt((1 - v^2) / shots)
double expectation_sigma(double value, uint64_t shots);

// RMS of exactly four sigmas (the protocol's aggregated-sigma formula).
double aggregate_sigma(const std::vector<double>& sigmas);

// standard error of the mean of the four estimates behind those sigmas
double mean_sigma(const std::vector<double>& sigmas);

struct Estimate {
    double value = 0.0;
    double sigma = 0.0;
    uint64_t shots = 0;
    std::string derivation;

    json to_json() const;
    static Estimate from_json(const json& j);
};

// Canonical serialization: sorted keys, floats at 17 significant digits,
// byte-deterministic. Reports round-trip bit-exactly through it.
std::string canonical_json(const json& doc);

// FNV-1a 64 over the canonical form with the volatile "timestamp" meta field
// blanked; hex string.
std::string report_digest(const json& report);

void write_report(const std::string& path, const json& report);
json read_report(const std::string& path);

struct SchemaError : std::runtime_error {
    std::string pointer;
    SchemaError(std::string ptr, const std::string& msg)
        : std::runtime_error(ptr + ": " + msg), pointer(std::move(ptr)) {}
};

// Structural validation of a benchmark report; throws SchemaError with a
// JSON-pointer path on the first violation.
void validate_report(const json& report);

struct VerifyResult {
    bool ok = true;
    std::vector<std::string> mismatches;
};

// Recomputes every verdict and score in the report from its stored estimates.
VerifyResult verify_report(const json& report);

json make_report_skeleton(uint64_t master_seed, const json& noise_config);

}  // namespace qkpi
