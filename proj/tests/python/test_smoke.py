import math

import numpy as np
import pytest

import lcuwalk


def test_random_instance_is_hermitian():
    h = lcuwalk.random_sparse(2, 2, seed=3)
    m = h.entries
    assert m.shape == (4, 4)
    assert np.allclose(m, m.conj().T, atol=0)
    assert h.d == 2


def test_bessel_matches_scipy_free_reference():
    # J_0(1) and J_1(1) to 15 digits.
    row = lcuwalk.bessel_row(1.0, 1)
    assert row[1] == pytest.approx(0.7651976865579666, rel=1e-14)
    assert row[2] == pytest.approx(0.4400505857449335, rel=1e-14)
    c = lcuwalk.lcu_coefficients(-0.5, 5)
    assert sum(c["a"]) == pytest.approx(1.0, abs=1e-14)


def test_solve_s_l():
    assert lcuwalk.solve_s_l(2.0) == (pytest.approx(2.0), 1)
    assert lcuwalk.solve_s_l(5.0)[1] == 4


def test_walk_spectrum():
    mismatch, residual = lcuwalk.walk_spectrum(lcuwalk.random_sparse(2, 2, seed=5))
    assert mismatch < 1e-9 and residual < 1e-9


def test_simulate_meets_budget():
    h = lcuwalk.random_sparse(2, 2, seed=1)
    r = lcuwalk.simulate(h, 1.0, 1e-6)
    assert r["spectral_error"] <= 1e-6
    exact = lcuwalk.exact_evolution(h, 1.0)
    assert np.linalg.norm(r["effective"] - exact, 2) <= 1e-6
    assert r["oracle_queries"] == 2 * r["queries"]


def test_parity_path_transport():
    h = lcuwalk.parity_path("1011")
    u = lcuwalk.exact_evolution(h, math.pi / 2)
    # |0, 0> -> |N, parity(x)> with parity(1011) = 1; index 2i + j.
    assert abs(u[2 * 4 + 1, 0]) ** 2 > 1 - 1e-10


def test_errors_are_translated():
    with pytest.raises(lcuwalk._lcuwalk.ParameterError):
        lcuwalk.plan(lcuwalk.random_sparse(1, 1), 1.0, -1.0)
    with pytest.raises(lcuwalk._lcuwalk.LcuwalkError):
        lcuwalk.Hamiltonian.from_json("{")


def test_verify_bessel_suite():
    ok, text = lcuwalk.verify("bessel")
    assert ok, text
