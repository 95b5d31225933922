#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "qkpi/report.hpp"
#include "qkpi/rng.hpp"

using namespace qkpi;

TEST_SUITE_BEGIN("stats_report");

TEST_CASE("expectation_sigma plug-ins") {
    CHECK(expectation_sigma(1.0, 100) == 0.0);
    CHECK(expectation_sigma(0.0, 512) == doctest::Approx(1.0 / std::sqrt(512.0)));
    CHECK(expectation_sigma(0.5, 10000) == doctest::Approx(std::sqrt(0.75 / 10000.0)));
    CHECK_THROWS_AS(expectation_sigma(1.5, 100), std::invalid_argument);
    CHECK_THROWS_AS(expectation_sigma(0.5, 0), std::invalid_argument);
}

TEST_CASE("aggregate_sigma: RMS formula and arity") {
    CHECK(aggregate_sigma({0.2, 0.2, 0.2, 0.2}) == doctest::Approx(0.2));
    CHECK(aggregate_sigma({0, 0, 0, 0.2}) == doctest::Approx(0.1));
    CHECK_THROWS_AS(aggregate_sigma({0.1, 0.1}), std::invalid_argument);
}

TEST_CASE("mean_sigma matches a Monte-Carlo sigma of the 4-mean within 5%") {
    // four independent +/-1 estimators with different per-estimate sigmas
    const std::vector<double> values{0.2, 0.5, -0.3, 0.8};
    const uint64_t shots = 400;
    std::vector<double> sigmas;
    for (double v : values) sigmas.push_back(expectation_sigma(v, shots));

    Prng rng(424242);
    const int resamples = 100000;
    double sum = 0, sum2 = 0;
    for (int k = 0; k < resamples; ++k) {
        double mean4 = 0;
        for (double v : values) {
            double p_plus = (1 + v) / 2;
            int64_t plus = 0;
            for (uint64_t s = 0; s < shots; ++s) plus += rng.next_double() < p_plus;
            mean4 += (2.0 * plus / shots - 1.0) / 4.0;
        }
        sum += mean4;
        sum2 += mean4 * mean4;
    }
    double mc_sigma = std::sqrt(sum2 / resamples - (sum / resamples) * (sum / resamples));
    CHECK(std::abs(mean_sigma(sigmas) - mc_sigma) / mc_sigma < 0.05);
}

TEST_CASE("canonical JSON round-trips byte-exactly") {
    json doc;
    doc["meta"] = json{{"suite", "qkpi"}, {"schema", "1"}, {"timestamp", "2026-01-01T00:00:00Z"},
                       {"master_seed", 7}, {"noise", json::object()}};
    doc["zeta"] = json::array({1, 2.5, -3.25e-9, true, nullptr, "a\"b\\c\n"});
    doc["alpha"] = json{{"x", 0.1}, {"y", 1.0}, {"z", 123456789012345.0}};

    std::string first = canonical_json(doc);
    json parsed = json::parse(first);
    std::string second = canonical_json(parsed);
    CHECK(first == second);

    // keys are emitted sorted
    CHECK(first.find("\"alpha\"") < first.find("\"meta\""));
    CHECK(first.find("\"meta\"") < first.find("\"zeta\""));

    std::string path = (std::filesystem::temp_directory_path() / "qkpi_report_test.json").string();
    write_report(path, doc);
    json back = read_report(path);
    CHECK(canonical_json(back) == first);
    std::remove(path.c_str());
}

TEST_CASE("digest ignores the timestamp but nothing else") {
    json a = make_report_skeleton(1, json{{"scheme", "sd6"}});
    json b = a;
    b["meta"]["timestamp"] = "1999-01-01T00:00:00Z";
    CHECK(report_digest(a) == report_digest(b));
    b["meta"]["master_seed"] = 2;
    CHECK(report_digest(a) != report_digest(b));
}

TEST_CASE("schema violations carry JSON-pointer paths") {
    json report = make_report_skeleton(1, json{{"scheme", "sd6"}});
    CHECK_NOTHROW(validate_report(report));

    report["ghz"] = json{{"trials", json::array()}};
    try {
        validate_report(report);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.pointer == "/ghz/trials");
    }

    json broken = report;
    broken.erase("ghz");
    broken["meta"].erase("master_seed");
    try {
        validate_report(broken);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.pointer == "/meta/master_seed");
        CHECK(std::string(e.what()).find("missing") != std::string::npos);
    }
}

TEST_SUITE_END();
