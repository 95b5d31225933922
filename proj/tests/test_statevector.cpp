#include <doctest.h>

#include <cmath>

#include "qkpi/statevector.hpp"
#include "qkpi/tableau.hpp"
#include "support/test_util.hpp"

using namespace qkpi;

TEST_SUITE_BEGIN("statevector");

TEST_CASE("H creates the equal superposition") {
    StateVector sv(1);
    Instruction h;
    h.gate = Gate::H;
    h.qubits[0] = 0;
    sv.apply(h);
    CHECK(std::abs(sv.amplitude(0) - std::complex<double>(1 / std::sqrt(2))) < 1e-12);
    CHECK(std::abs(sv.amplitude(1) - std::complex<double>(1 / std::sqrt(2))) < 1e-12);
}

TEST_CASE("inverse QFT maps the uniform superposition to |0...0>") {
    // the RZ-based controlled-phase decomposition is exact up to a global phase
    Circuit c(3);
    for (int q = 0; q < 3; ++q) c.h(q);
    append_qft(c, 0, 3, /*inverse=*/true);
    StateVector sv(3);
    sv.apply_circuit(c);
    CHECK(std::abs(std::abs(sv.amplitude(0)) - 1.0) < 1e-9);
}

TEST_CASE("QFT produces the expected phases from a basis state") {
    // |y> -> 2^{-t/2} sum_k e^{2 pi i y k / 2^t} |k>, qubit 0 = most significant,
    // compared up to one common global phase
    const int t = 4;
    const uint64_t y = 11;
    Circuit c(t);
    for (int j = 0; j < t; ++j)
        if ((y >> (t - 1 - j)) & 1) c.x(j);
    append_qft(c, 0, t, /*inverse=*/false);
    StateVector sv(t);
    sv.apply_circuit(c);
    std::complex<double> global = sv.amplitude(0) * 4.0;  // want[k=0] = 1/4
    CHECK(std::abs(std::abs(global) - 1.0) < 1e-9);
    for (uint64_t kidx = 0; kidx < (uint64_t(1) << t); ++kidx) {
        uint64_t k = 0;  // amplitude index bit j corresponds to qubit j (MSB first)
        for (int j = 0; j < t; ++j) k |= ((kidx >> j) & 1) << (t - 1 - j);
        std::complex<double> want =
            global * std::polar(1.0 / 4.0, 2 * std::acos(-1.0) * double(y) * double(k) / 16.0);
        CHECK(std::abs(sv.amplitude(kidx) - want) < 1e-9);
    }
}

TEST_CASE("QFT then inverse QFT is the identity on random states (n <= 10)") {
    Prng rng(55);
    for (int t : {2, 5, 10}) {
        Circuit randc(t);
        for (int g = 0; g < 40; ++g) {
            int q = static_cast<int>(rng.next_below(t));
            switch (rng.next_below(3)) {
                case 0: randc.h(q); break;
                case 1: randc.t(q); break;
                case 2: randc.rz(q, rng.next_double() * 3 - 1.5); break;
            }
        }
        StateVector a(t);
        a.apply_circuit(randc);
        StateVector b(t);
        Circuit both = randc;
        append_qft(both, 0, t, false);
        append_qft(both, 0, t, true);
        b.apply_circuit(both);
        double dist = 0;
        for (uint64_t i = 0; i < (uint64_t(1) << t); ++i) dist += std::abs(a.amplitude(i) - b.amplitude(i));
        CHECK(dist < 1e-9);
        CHECK(std::abs(b.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("norm is preserved by every gate of a random circuit") {
    Prng rng(66);
    Circuit c = test::random_clifford_gate_circuit(5, 40, rng);
    c.t(2);
    c.rz(4, 1.234);
    c.ccx(0, 1, 2);
    StateVector sv(5);
    for (const auto& instr : c.instructions) {
        sv.apply(instr);
        CHECK(std::abs(sv.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("Clifford-only circuits: statevector expectations match the tableau (n <= 8)") {
    Prng rng(77);
    for (int n : {2, 6, 8}) {
        Circuit c = test::random_clifford_gate_circuit(n, 12 * n, rng);
        StabilizerTableau t(n);
        t.apply_circuit(c);
        auto amps = test::statevector_of(c);
        for (int k = 0; k < 8; ++k) {
            PauliString p = test::random_pauli(n, rng);
            CHECK(test::pauli_expectation(amps, p) == doctest::Approx(t.exact_expectation(p)).epsilon(1e-8));
        }
    }
}

TEST_CASE("measurement basics") {
    NoiseModel zero;
    Prng rng(5);
    StateVector sv(3);
    auto bits = sv.measure_subset({0, 1, 2}, zero, rng);
    CHECK(bits == std::vector<int>{0, 0, 0});

    // Bell pair: perfectly correlated bits
    for (int shot = 0; shot < 200; ++shot) {
        StateVector bell(2);
        Instruction h;
        h.gate = Gate::H;
        h.qubits[0] = 0;
        bell.apply(h);
        Instruction cx;
        cx.gate = Gate::CNOT;
        cx.qubits[0] = 0;
        cx.qubits[1] = 1;
        bell.apply(cx);
        int a = bell.measure_z(0, rng);
        int b = bell.measure_z(1, rng);
        CHECK(a == b);
    }
    CHECK_THROWS_AS(sv.measure_subset({0, 0}, zero, rng), std::invalid_argument);
}

TEST_CASE("empirical 3-qubit measurement distribution matches amplitudes (chi^2)") {
    Prng build(31);
    Circuit c(3);
    c.h(0);
    c.t(0);
    c.cnot(0, 1);
    c.rz(1, 0.7);
    c.h(2);
    c.ccx(0, 2, 1);
    StateVector ref(3);
    ref.apply_circuit(c);
    std::vector<double> probs = ref.subset_probabilities({0, 1, 2});

    const int shots = 100000;
    std::vector<int> counts(8, 0);
    NoiseModel zero;
    for (int shot = 0; shot < shots; ++shot) {
        StateVector sv(3);
        sv.apply_circuit(c);
        Prng rng = substream_rng(1234, shot, 0);
        auto bits = sv.measure_subset({0, 1, 2}, zero, rng);
        counts[bits[0] | (bits[1] << 1) | (bits[2] << 2)]++;
    }
    double chi2 = 0;
    int df = 0;
    for (int k = 0; k < 8; ++k) {
        double expect = probs[k] * shots;
        if (expect < 5) {
            CHECK(counts[k] <= 5 + 10 * std::sqrt(expect + 1));
            continue;
        }
        chi2 += (counts[k] - expect) * (counts[k] - expect) / expect;
        ++df;
    }
    CHECK(chi2 < df + 3.29 * std::sqrt(2.0 * df) + 6);
}

TEST_CASE("capacity cap is enforced with a clear error") {
    CHECK_THROWS_AS(StateVector(27), CapacityError);
    CHECK_NOTHROW(StateVector(10));
}

TEST_SUITE_END();
