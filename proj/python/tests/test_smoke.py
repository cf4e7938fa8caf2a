import json

import numpy as np
import pytest

import conerate

A = np.array([[0.7, 0.3], [0.4, 0.6]])


def test_stochastic_coefficients():
    assert conerate.delta_doeblin(A) == pytest.approx(0.3, abs=1e-15)
    assert conerate.delta_dobrushin(A) == pytest.approx(0.3, abs=1e-15)
    assert conerate.consensus_contraction_bruteforce(A) == pytest.approx(0.3, abs=1e-15)
    assert conerate.birkhoff_bound(A) == pytest.approx(np.tanh(np.log(3.5) / 4), abs=1e-15)
    assert conerate.doeblin_state(A) == (0, pytest.approx(0.4))
    pi = conerate.estimate_invariant(A, 0.3)
    assert np.allclose(pi, [4 / 7, 3 / 7], atol=1e-10)


def test_validation_errors_surface():
    with pytest.raises(conerate.ValidationError, match="row 0"):
        conerate.delta_doeblin(np.array([[0.6, 0.3], [0.4, 0.6]]))
    with pytest.raises(conerate.ZeroEntry):
        conerate.birkhoff_bound(np.eye(2))
    with pytest.raises(conerate.NoContraction):
        conerate.estimate_invariant(A, 1.0)
    assert issubclass(conerate.ValidationError, conerate.ConerateError)


def test_depolarizing_channel():
    ops = conerate.depolarizing(0.3)
    est = conerate.contraction_norm(ops)
    assert est["lower_bound"] == pytest.approx(0.7, abs=1e-6)
    assert est["upper_bound_certified"] is False
    verdict = conerate.certify(ops)
    assert verdict["status"] == "CONVERGENT"
    assert verdict["dims"] == [1, 4]
    x = np.array([[1, 1j], [-1j, -1]])
    expected = 0.7 * x + 0.15 * np.trace(x) * np.eye(2)
    assert np.allclose(conerate.apply_psi(ops, x), expected, atol=1e-14)


def test_unitary_channel_is_not_convergent():
    ops = [np.array([[0, 1], [1, 0]], dtype=complex)]
    verdict = conerate.certify(ops)
    assert verdict["status"] == "NOT_CONVERGENT"
    assert verdict["witness"]["residual"] <= 1e-10
    assert conerate.zero_error_check(ops)["positive"]


def test_run_command(tmp_path):
    path = tmp_path / "a.json"
    path.write_text(json.dumps({"kind": "stochastic", "n": 2, "data": A.tolist()}))
    report = conerate.run("analyze-stochastic", path)
    assert report["command"] == "analyze-stochastic"
    assert report["results"]["delta_doeblin"] == pytest.approx(0.3, abs=1e-15)
    again = conerate.run("analyze-stochastic", path)
    assert again["results"] == report["results"]
