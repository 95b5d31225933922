#include <doctest.h>

#include <map>
#include <set>

#include "qkpi/tableau.hpp"
#include "support/test_util.hpp"

using namespace qkpi;

namespace {

StabilizerTableau ghz_tableau(int n) {
    StabilizerTableau t(n);
    t.apply_gate(Gate::H, {0});
    for (int q = 1; q < n; ++q) t.apply_gate(Gate::CNOT, {0, q});
    return t;
}

Circuit ghz_circuit(int n) {
    Circuit c(n);
    c.h(0);
    for (int q = 1; q < n; ++q) c.cnot(0, q);
    return c;
}

PauliString pauli_from(const std::string& s, int sign = +1) {
    PauliString p(static_cast<int>(s.size()));
    for (size_t q = 0; q < s.size(); ++q) {
        p.set_x(static_cast<int>(q), s[q] == 'X' || s[q] == 'Y');
        p.set_z(static_cast<int>(q), s[q] == 'Z' || s[q] == 'Y');
    }
    p.sign = sign;
    return p;
}

}  // namespace

TEST_SUITE_BEGIN("pauli_tableau");

TEST_CASE("pauli products and commutation") {
    PauliString x = pauli_from("X"), y = pauli_from("Y"), z = pauli_from("Z");
    CHECK_FALSE(x.commutes_with(z));
    CHECK(x.multiply(x).is_identity_bits());
    // X*Z = -iY and X*Y = iZ are non-Hermitian and must be rejected
    CHECK_THROWS_AS(x.multiply(z), std::logic_error);
    CHECK_THROWS_AS(x.multiply(y), std::logic_error);
}

TEST_CASE("pauli xx/zz products keep exact signs") {
    // (X ⊗ X)(Z ⊗ Z) = (XZ) ⊗ (XZ) = (-iY)(-iY) = -Y ⊗ Y
    PauliString xx = pauli_from("XX"), zz = pauli_from("ZZ");
    PauliString prod = xx.multiply(zz);
    CHECK(prod.same_bits(pauli_from("YY")));
    CHECK(prod.sign == -1);
}

TEST_CASE("H maps the Z0 stabilizer to X0; CNOT propagates X") {
    StabilizerTableau t(2);
    t.apply_gate(Gate::H, {0});
    CHECK(t.stabilizer_row(0).to_string() == "+XI");
    t.apply_gate(Gate::CNOT, {0, 1});
    CHECK(t.stabilizer_row(0).to_string() == "+XX");
    CHECK(t.stabilizer_row(1).to_string() == "+ZZ");  // GHZ_2 second generator
}

TEST_CASE("apply_gate validates indices") {
    StabilizerTableau t(2);
    CHECK_THROWS_AS(t.apply_gate(Gate::H, {5}), std::invalid_argument);
    CHECK_THROWS_AS(t.apply_gate(Gate::CNOT, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(t.apply_gate(Gate::T, {0}), std::invalid_argument);
}

TEST_CASE("random circuits: tableau expectations match the dense oracle") {
    Prng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        Circuit c = test::random_clifford_gate_circuit(4, 30, rng);
        StabilizerTableau t(4);
        t.apply_circuit(c);
        auto amps = test::statevector_of(c);
        for (int k = 0; k < 5; ++k) {
            PauliString p = test::random_pauli(4, rng);
            double dense = test::pauli_expectation(amps, p);
            CHECK(t.exact_expectation(p) == doctest::Approx(dense).epsilon(1e-9));
        }
        // every stabilizer row has expectation +1
        for (int i = 0; i < 4; ++i) CHECK(t.exact_expectation(t.stabilizer_row(i)) == 1);
    }
}

TEST_CASE("symplectic invariant preserved by gates") {
    Prng rng(17);
    StabilizerTableau t = sample_random_clifford(5, rng);
    REQUIRE(t.rows_form_symplectic_basis());
    Circuit c = test::random_clifford_gate_circuit(5, 60, rng);
    t.apply_circuit(c);
    CHECK(t.rows_form_symplectic_basis());
}

TEST_CASE("measure_z: deterministic and random outcomes") {
    Prng rng(1);
    StabilizerTableau t(2);
    CHECK(t.measure_z(0, rng) == 0);  // |00> is a Z eigenstate

    // Bell state: the two measurement results agree, marginal is 50/50
    int ones = 0;
    for (int shot = 0; shot < 500; ++shot) {
        StabilizerTableau bell(2);
        bell.apply_gate(Gate::H, {0});
        bell.apply_gate(Gate::CNOT, {0, 1});
        int a = bell.measure_z(0, rng);
        int b = bell.measure_z(1, rng);
        CHECK(a == b);
        ones += a;
    }
    CHECK(ones > 180);
    CHECK(ones < 320);
}

TEST_CASE("stabilizer_group_element selects generator products with signs") {
    StabilizerTableau t(2);
    CHECK(t.stabilizer_group_element({1, 0}).to_string() == "+ZI");
    CHECK(t.stabilizer_group_element({1, 1}).to_string() == "+ZZ");
    CHECK_THROWS_AS(t.stabilizer_group_element({0, 0}), std::invalid_argument);

    StabilizerTableau g = ghz_tableau(3);
    auto amps = test::statevector_of(ghz_circuit(3));
    std::vector<uint8_t> sel{1, 1, 1};
    PauliString prod = g.stabilizer_group_element(sel);
    CHECK(test::pauli_expectation(amps, prod) == doctest::Approx(1.0));
}

TEST_CASE("exact_expectation on GHZ_3") {
    StabilizerTableau g = ghz_tableau(3);
    CHECK(g.exact_expectation(pauli_from("XXX")) == 1);
    CHECK(g.exact_expectation(pauli_from("ZII")) == 0);
    CHECK(g.exact_expectation(pauli_from("ZZI")) == 1);
    CHECK(g.exact_expectation(pauli_from("ZZI", -1)) == -1);
    CHECK_THROWS_AS(g.exact_expectation(pauli_from("ZZ")), std::invalid_argument);
}

TEST_CASE("sample_destabilizer: anticommuting, outside the group, expectation 0") {
    Prng rng(23);
    StabilizerTableau t1(1);
    for (int k = 0; k < 200; ++k) {
        PauliString d = sample_destabilizer(t1, rng);
        bool is_x = d.same_bits(pauli_from("X")), is_y = d.same_bits(pauli_from("Y"));
        CHECK((is_x || is_y));
        CHECK(t1.exact_expectation(d) == 0);
    }

    StabilizerTableau t3 = ghz_tableau(3);
    std::set<std::string> group;
    for (int sel = 1; sel < 8; ++sel) {
        std::vector<uint8_t> bits{static_cast<uint8_t>(sel & 1), static_cast<uint8_t>((sel >> 1) & 1),
                                  static_cast<uint8_t>((sel >> 2) & 1)};
        PauliString p = t3.stabilizer_group_element(bits);
        p.sign = +1;
        group.insert(p.to_string());
    }
    for (int k = 0; k < 10000; ++k) {
        PauliString d = sample_destabilizer(t3, rng);
        CHECK(group.find(d.to_string()) == group.end());
        CHECK(t3.exact_expectation(d) == 0);
    }
}

TEST_CASE("sample_random_clifford is deterministic given the seed") {
    Prng a(99), b(99);
    CHECK(sample_random_clifford(4, a).serialize() == sample_random_clifford(4, b).serialize());
}

TEST_CASE("sample_random_clifford is uniform over the 24 single-qubit Cliffords") {
    // enumerate: (X image, Z image) anticommuting signed single-qubit Paulis
    std::map<std::string, int> counts;
    Prng rng(2024);
    const int samples = 24000;
    for (int k = 0; k < samples; ++k) counts[sample_random_clifford(1, rng).serialize()]++;
    REQUIRE(counts.size() == 24);
    double expected = samples / 24.0;
    double sigma = std::sqrt(samples * (1.0 / 24) * (23.0 / 24));
    for (const auto& [key, c] : counts) CHECK(std::abs(c - expected) <= 5 * sigma);
}

TEST_CASE("sample_random_clifford is uniform over the 11520 two-qubit Cliffords") {
    std::map<std::string, int> counts;
    Prng rng(77);
    const int samples = 1000000;
    for (int k = 0; k < samples; ++k) counts[sample_random_clifford(2, rng).serialize()]++;
    REQUIRE(counts.size() == 11520);
    double expected = samples / 11520.0;
    double chi2 = 0;
    for (const auto& [key, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
    // df = 11519; at significance 0.001 the threshold is df + 3.09*sqrt(2 df)
    double threshold = 11519 + 3.09 * std::sqrt(2.0 * 11519);
    CHECK(chi2 < threshold);
}

TEST_CASE("synthesize_clifford_circuit: identity and single-H roundtrips") {
    StabilizerTableau id(3);
    CHECK(synthesize_clifford_circuit(id).instructions.empty());

    StabilizerTableau h(1);
    h.apply_gate(Gate::H, {0});
    Circuit c = synthesize_clifford_circuit(h);
    REQUIRE(c.instructions.size() == 1);
    CHECK(c.instructions[0].gate == Gate::H);
}

TEST_CASE("synthesize_clifford_circuit: 500 random 5-qubit roundtrips") {
    Prng rng(31337);
    for (int trial = 0; trial < 500; ++trial) {
        StabilizerTableau t = sample_random_clifford(5, rng);
        Circuit c = synthesize_clifford_circuit(t);
        for (const auto& instr : c.instructions)
            CHECK((instr.gate == Gate::H || instr.gate == Gate::S || instr.gate == Gate::CNOT));
        StabilizerTableau replay(5);
        replay.apply_circuit(c);
        for (int i = 0; i < 5; ++i) {
            PauliString want = t.stabilizer_row(i);
            CHECK(replay.exact_expectation(want) == 1);
        }
    }
}

TEST_SUITE_END();
