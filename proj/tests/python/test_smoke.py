import math

import numpy as np
import pytest

import kvnlab


def test_identities():
    for n in (1, 2):
        assert kvnlab.all_pass(kvnlab.grassmann_checks(n))
    assert kvnlab.all_pass(kvnlab.cartan_checks(1, ["p^2/2+q^2"]))
    assert kvnlab.all_pass(kvnlab.charge_checks(1, ["p^2/2+q^4"]))
    assert kvnlab.all_pass(kvnlab.bracket_checks(5))


def test_metrics():
    values, kind = kvnlab.metric_eigenvalues("genSymplectic", b=2.0)
    assert np.allclose(values, [-4, -2, 1, 2], atol=1e-10)
    assert kind == "indefinite"
    g = kvnlab.metric_matrix("svh")
    assert np.allclose(g, np.eye(4))
    assert kvnlab.hermiticity_residual("p^2/2+q^2/2", "svh") == 0.0
    assert kvnlab.hermiticity_residual("p^2/2+q^4", "svh") > 1e-10


def test_two_slit_minima():
    x, P = kvnlab.two_slit(0.5)
    assert len(x) == len(P)
    assert kvnlab.count_minima(P) == 6


def test_spectra():
    levels = kvnlab.landau_spectrum(1.0, 5)
    assert len(levels) == 9
    assert all(abs(v - round(v)) < 1e-12 for _, v, _ in levels)
    (level,), diff = kvnlab.ab_levels(0.1)
    assert level[2] == pytest.approx(3.696347888109, rel=1e-10)
    assert diff <= 1e-10
    assert kvnlab.bessel_zero(0.0, 1) == pytest.approx(2.404825557696, rel=1e-11)


def test_free_flight():
    qm, pm, qv, pv, norm = kvnlab.free_moments(p_i=2.0, t=2.0)
    assert qm == pytest.approx(4.0, rel=5e-3)
    assert qv == pytest.approx(0.5 + 2.0, rel=5e-3)
    assert norm == pytest.approx(1.0, abs=1e-6)


def test_errors():
    with pytest.raises(Exception):
        kvnlab.bessel_j(60.0, 1.0)
    with pytest.raises(Exception):
        kvnlab.two_slit(0.5, "sideways")
    assert math.isfinite(kvnlab.bessel_j(10.0, 30.0))
