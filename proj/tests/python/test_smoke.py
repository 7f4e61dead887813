import math

import numpy as np
import pytest

import kicked_top as kt


def test_spectrum_is_folded_and_sorted():
    eps = kt.quasienergies(40)
    assert eps.shape == (81,)
    assert np.all(np.diff(eps) >= 0)
    assert eps.min() >= -math.pi and eps.max() < math.pi


def test_floquet_operator_is_unitary():
    f = kt.floquet_operator(5, 0.1, 0.2)
    assert np.allclose(f.conj().T @ f, np.eye(11), atol=1e-12)


def test_critical_points():
    pts = kt.critical_points()
    kinds = [p["kind"] for p in pts]
    assert kinds.count("maximum") == 2 and kinds.count("saddle") == 1
    saddle = next(p for p in pts if p["kind"] == "saddle")
    assert saddle["eps_folded"] == pytest.approx(4.0 - 2 * math.pi, abs=1e-9)
    assert saddle["A"] == pytest.approx(0.0396, rel=0.02)


def test_doqs_normalization():
    eps, rho, n = kt.doqs_histogram(bins=161)
    assert sum(rho) * 2 * math.pi / 161 == pytest.approx(1.0)
    assert n[-1] == pytest.approx(1.0)
    analytic = kt.analytic_doqs(eps)
    assert len(analytic) == 161


def test_effective_matches_exact_at_zero_twist():
    exact = kt.quasienergies(10, 0.1, 0.0)
    _, folded = kt.effective_quasienergies(10, 0.1, 0.0)
    assert np.allclose(np.sort(folded), exact, atol=1e-12)


def test_protocol_branch():
    rows = kt.protocol("S-m", j=10, points=4, K=100)
    assert len(rows) == 4
    assert math.isinf(rows[-1]["gamma"])


def test_errors_map_to_python_exceptions():
    with pytest.raises(kt.ConfigError):
        kt.quasienergies(2.3)
    with pytest.raises(ValueError):
        kt.protocol("S-m", kappa=0.05)
    with pytest.raises(kt.NumericalError):
        kt.effective_quasienergies(1, 0.1, 4 * math.pi)
