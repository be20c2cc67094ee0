import math

import numpy as np
import pytest

import qdilemma as qd


def test_class_seven_profile():
    probs = qd.play("XIX")
    assert probs[5] == pytest.approx(1.0, abs=1e-12)
    assert qd.payoff(probs)["mean"] == pytest.approx(19 / 3, abs=1e-12)


def test_class_table_has_ten_rows():
    rows = qd.class_table()
    assert [r["label"] for r in rows] == ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X"]
    assert sum(r["size"] for r in rows) == 27
    assert rows[7]["mean"] == pytest.approx(6.33, abs=5e-3)


def test_equilibria_and_crossing():
    xc = qd.critical_corruption(1, 2, 9)
    assert xc == pytest.approx(13 / 30, abs=1e-12)
    assert qd.quantum_ne_payoff(1, 2, 9, xc) == pytest.approx(qd.classical_ne_payoff(1, 2, 9, xc), abs=1e-12)
    assert qd.critical_corruption(1, 5, 6) is None
    assert qd.dominance(1, 2, 9, 0.6) == "classical"


def test_sweep_matches_simulation():
    recs = qd.sweep("x", list(np.linspace(0, 1, 11)))
    assert len(recs) == 11
    for r in recs:
        assert r["sim_quantum_ne"] == pytest.approx(r["quantum_ne"], abs=1e-10)
    bad = qd.sweep("q", [1.0, 5.0, 9.0])
    assert [r["valid"] for r in bad] == [False, True, False]


def test_noise_circuit():
    for x in (0.0, 0.3, 1.0):
        np.testing.assert_allclose(qd.ancilla_prepare(x), qd.corrupted_input(x), atol=1e-12)
    assert qd.theta_for_x(0.5) == pytest.approx(math.pi / 2)


def test_decomposition():
    gates = qd.decompose_entangler()
    product = np.eye(8)
    for g in gates:
        product = g["matrix"] @ product
    np.testing.assert_allclose(product, qd.entangler(), atol=1e-12)


def test_tomography_round_trip_and_fidelity():
    rng = np.random.default_rng(1)
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi /= np.linalg.norm(psi)
    rho = np.outer(psi, psi.conj())
    t = qd.expectations(rho)
    assert t.shape == (4, 4, 4)
    np.testing.assert_allclose(qd.reconstruct(t), rho, atol=1e-12)

    appendix = qd.load_reference_state("class7_appendix")
    target = np.zeros((8, 8), dtype=complex)
    target[5, 5] = 1
    assert qd.fidelity(appendix, target) == pytest.approx(0.843, abs=1e-3)


def test_errors_become_value_errors():
    with pytest.raises(ValueError):
        qd.play("XYZ")
    with pytest.raises(ValueError):
        qd.critical_corruption(3, 2, 1)
