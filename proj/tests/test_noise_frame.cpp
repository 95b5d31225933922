#include <doctest.h>

#include <array>
#include <cmath>

#include "qkpi/frame.hpp"
#include "qkpi/noise.hpp"
#include "qkpi/tableau.hpp"

using namespace qkpi;

TEST_SUITE_BEGIN("noise_frame");

TEST_CASE("scheme_to_model: SD6 and SI1000 rows") {
    NoiseModel sd6 = scheme_to_model(NoiseScheme::SD6, 1e-3);
    for (double p : {sd6.p_1q, sd6.p_2q, sd6.p_init, sd6.p_meas, sd6.p_idle, sd6.p_res_idle})
        CHECK(p == 1e-3);

    NoiseModel si = scheme_to_model(NoiseScheme::SI1000, 1e-3);
    CHECK(si.p_2q == 1e-3);
    CHECK(si.p_1q == 1e-4);
    CHECK(si.p_init == 2e-3);
    CHECK(si.p_meas == 5e-3);
    CHECK(si.p_idle == 1e-4);
    CHECK(si.p_res_idle == 2e-3);

    NoiseModel zero = scheme_to_model(NoiseScheme::SD6, 0.0);
    CHECK(zero.all_zero());
    CHECK_THROWS_AS(scheme_to_model(NoiseScheme::SD6, 0.3), std::invalid_argument);
}

TEST_CASE("all-zero model never faults") {
    NoiseModel zero;
    Prng rng(1);
    int qs[2] = {0, 1};
    for (int k = 0; k < 1000; ++k) CHECK(!sample_fault(ChannelKind::After2qGate, qs, 2, zero, rng));
}

TEST_CASE("two-qubit channel: rate within 3 sigma, uniform over the 15 Paulis") {
    NoiseModel m;
    m.p_2q = 0.15;
    Prng rng(404);
    int qs[2] = {3, 5};
    const int draws = 1000000;
    int faults = 0;
    std::array<int, 16> counts{};
    for (int k = 0; k < draws; ++k) {
        auto f = sample_fault(ChannelKind::After2qGate, qs, 2, m, rng);
        if (f) {
            ++faults;
            counts[f->pauli[0] | (f->pauli[1] << 2)]++;
        }
    }
    double sigma = std::sqrt(draws * 0.15 * 0.85);
    CHECK(std::abs(faults - draws * 0.15) <= 3 * sigma);

    CHECK(counts[0] == 0);
    double expected = faults / 15.0;
    double chi2 = 0;
    for (int k = 1; k < 16; ++k) chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
    CHECK(chi2 < 14 + 3.09 * std::sqrt(28.0));  // df = 14, significance 0.001
}

TEST_CASE("measurement channel is a classical flip on the record") {
    NoiseModel m;
    m.p_meas = 1.0;
    Prng rng(2);
    int q = 7;
    auto f = sample_fault(ChannelKind::BeforeMeasure, &q, 1, m, rng);
    REQUIRE(f.has_value());
    CHECK(f->nq == 1);
    CHECK(f->pauli[0] == 1);  // X on the recorded bit

    auto p = sample_pauli_fault(ChannelKind::BeforeMeasure, {7}, 9, m, rng);
    REQUIRE(p.has_value());
    CHECK(p->x_bit(7));
    CHECK_FALSE(p->z_bit(7));
}

TEST_CASE("faults are a pure function of (seed, shot, instruction)") {
    Circuit c(3);
    for (int q = 0; q < 3; ++q) c.reset(q);
    c.h(0);
    c.cnot(0, 1);
    c.cnot(1, 2);
    for (int q = 0; q < 3; ++q) c.measure(q);
    NoiseModel m = scheme_to_model(NoiseScheme::SI1000, 2e-2);

    FrameSampler a(c, m, 999), b(c, m, 999);
    std::vector<uint8_t> fa, fb;
    for (uint64_t shot : {0ull, 5ull, 123456ull}) {
        a.run_shot(shot, fa);
        b.run_shot(shot, fb);
        CHECK(fa == fb);
    }
}

TEST_CASE("frame statistics match literal noisy tableau shots (Bell ZZ)") {
    // Bell pair, CNOT depolarizing + readout flips; <ZZ> from frame flips must
    // match per-shot tableau simulation within 3 sigma.
    NoiseModel m;
    m.p_2q = 0.05;
    m.p_meas = 0.03;
    Circuit c(2);
    c.reset(0);
    c.reset(1);
    c.h(0);
    c.cnot(0, 1);
    c.measure(0);
    c.measure(1);

    const int shots = 200000;
    FrameSampler sampler(c, m, 31415);
    std::vector<uint8_t> flips;
    int64_t frame_total = 0;
    for (int shot = 0; shot < shots; ++shot) {
        sampler.run_shot(shot, flips);
        frame_total += (flips[0] ^ flips[1]) ? -1 : +1;
    }

    Prng rng(8888);
    int64_t tableau_total = 0;
    for (int shot = 0; shot < shots; ++shot) {
        StabilizerTableau t(2);
        t.apply_gate(Gate::H, {0});
        auto f1 = sample_pauli_fault(ChannelKind::After1qGate, {0}, 2, m, rng);
        if (f1) t.apply_pauli(*f1);
        t.apply_gate(Gate::CNOT, {0, 1});
        auto f2 = sample_pauli_fault(ChannelKind::After2qGate, {0, 1}, 2, m, rng);
        if (f2) t.apply_pauli(*f2);
        int b0 = t.measure_z(0, rng);
        int b1 = t.measure_z(1, rng);
        if (rng.next_double() < m.p_meas) b0 ^= 1;
        if (rng.next_double() < m.p_meas) b1 ^= 1;
        tableau_total += (b0 ^ b1) ? -1 : +1;
    }
    double vf = static_cast<double>(frame_total) / shots;
    double vt = static_cast<double>(tableau_total) / shots;
    double sigma = std::sqrt((1 - vf * vf) / shots) + std::sqrt((1 - vt * vt) / shots);
    CHECK(std::abs(vf - vt) <= 3 * sigma);
}

TEST_CASE("frame handles reset and mid-circuit measurement collapse") {
    // fault before a reset must not survive it
    Circuit c(1);
    c.h(0);
    c.reset(0);
    c.measure(0);
    NoiseModel m;
    m.p_1q = 1.0;  // always fault after H
    FrameSampler sampler(c, m, 7);
    std::vector<uint8_t> flips;
    for (int shot = 0; shot < 50; ++shot) {
        sampler.run_shot(shot, flips);
        CHECK(flips[0] == 0);
    }
}

TEST_SUITE_END();
