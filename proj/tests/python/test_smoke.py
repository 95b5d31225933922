import math
import os

import pytest

import qkpi

GOLDEN = os.path.join(os.path.dirname(__file__), "..", "golden")


def test_version():
    assert qkpi.__version__


def test_noise_schemes():
    sd6 = qkpi.scheme_to_model("sd6", 1e-3)
    assert sd6.p_2q == sd6.p_meas == sd6.p_idle == 1e-3
    si = qkpi.scheme_to_model("si1000", 1e-3)
    assert si.p_1q == pytest.approx(1e-4)
    assert si.p_meas == pytest.approx(5e-3)
    with pytest.raises(ValueError):
        qkpi.scheme_to_model("sd6", 0.5)


def test_gf2_helpers():
    assert qkpi.companion_matrix([1, 1, 0]) == [[0, 1, 0], [0, 0, 1], [1, 1, 0]]
    assert qkpi.primitive_polynomial(3) == [1, 1, 0]
    qasm = qkpi.synthesize_cnot_network([[1, 0], [1, 1]])
    assert "cx q[0],q[1];" in qasm


def test_continued_fraction():
    assert qkpi.continued_fraction_period(55, 3) == 7
    assert qkpi.continued_fraction_period(64, 3) == 2
    assert qkpi.continued_fraction_period(0, 3) == 1


def test_qasm_normalization_roundtrip():
    qasm = qkpi.ghz_circuit_qasm(4)
    assert qkpi.normalize_qasm(qasm) == qasm
    assert "cx q[0],q[1];" in qasm


def test_statistics():
    assert qkpi.expectation_sigma(0.0, 512) == pytest.approx(1 / math.sqrt(512))
    assert qkpi.aggregate_sigma([0, 0, 0, 0.2]) == pytest.approx(0.1)
    assert qkpi.dfe_shot_budget(0.05, 0.05) == 14023
    assert qkpi.analytic_score_estimate(1e-3, 1e-2, 40) == 7


def test_ghz_noiseless_run():
    result = qkpi.run_ghz(6, 1024, qkpi.NoiseModel(), seed=3)
    assert result["score"] == 6
    assert all(t["f_min"] == 1.0 for t in result["trials"])


def test_clv_noiseless_run():
    result = qkpi.run_clv(3, 512, qkpi.NoiseModel(), seed=2)
    assert result["score"] == 3
    for trial in result["trials"]:
        for clif in trial["cliffords"]:
            assert all(s["estimate"]["value"] == 1.0 for s in clif["stabilizers"])


def test_shor_run():
    result = qkpi.run_shor(3, 400, qkpi.NoiseModel(), seed=5)
    trial = result["trials"][0]
    assert trial["p_s"] == pytest.approx(6 / 7)
    assert abs(trial["q_s"] - 6 / 7) < 0.06
    assert result["score"] == 3


def test_qec_run():
    model = qkpi.scheme_to_model("si1000", 2e-3)
    result = qkpi.run_qec(3, 1500, model, seed=9)
    assert result["distance"] == 3
    assert result["decoder"] == "union-find"
    assert 0 < result["logical"]["fidelity"] <= 1
    assert len(result["physical"]["tally"]) == 3


def test_golden_reports_verify():
    for name in ("golden_small.json", "golden_qec.json"):
        ok, mismatches = qkpi.verify_report_file(os.path.join(GOLDEN, name))
        assert ok, mismatches
        assert len(qkpi.report_digest_file(os.path.join(GOLDEN, name))) == 16
