import math

import numpy as np
import pytest

from twistharm._rational import Q, QQi
from twistharm.laguerre import (GeneralizedLaguerreSpec, TruncationError, eval_M,
                                eval_laguerre, eval_m_series, eval_phi,
                                eval_phi_radial, eval_phi_scaled,
                                generalized_recurrence_residuals, in_c_sharp,
                                laguerre_coeffs, laguerre_ode_residual_coeffs,
                                m_series_coeffs, phi_at_zero, phi_norm_sq,
                                poly_eval_exact, radial_projection_constant)
from twistharm.quadrature import radial_rule


def test_coeffs_base_cases():
    assert laguerre_coeffs(0, 5) == [Q(1)]
    assert laguerre_coeffs(1, 1) == [Q(2), Q(-1)]
    assert laguerre_coeffs(2, 0) == [Q(1), Q(-2), Q(1, 2)]


@pytest.mark.parametrize("k", [0, 1, 3, 7])
@pytest.mark.parametrize("order", ["0", "2", "1/2", "-1/3"])
def test_leading_coefficient(k, order):
    c = laguerre_coeffs(k, Q(order))
    assert c[-1] == Q((-1) ** k, math.factorial(k))
    assert len(c) == k + 1


def test_recursions_exact():
    for k in range(1, 13):
        for order in range(9):
            c = laguerre_coeffs(k, order)
            dc = [i * c[i] for i in range(1, k + 1)]
            assert dc == [-v for v in laguerre_coeffs(k - 1, order + 1)]
            lower = laguerre_coeffs(k - 1, order + 1) + [Q(0)]
            assert [a + b for a, b in zip(lower, c)] == laguerre_coeffs(k, order + 1)


def test_eval_laguerre_matches_exact_coeffs():
    xs = np.linspace(0.0, 20.0, 11)
    for k, order in ((3, 0), (5, 2), (4, 0.5)):
        coeffs = laguerre_coeffs(k, Q(str(order)) if order != 0.5 else Q(1, 2))
        direct = sum(float(c) * xs ** i for i, c in enumerate(coeffs))
        assert np.allclose(eval_laguerre(k, float(order), xs), direct, rtol=1e-12)


def test_phi_values():
    assert eval_phi(0, 2, np.zeros((1, 2), dtype=complex))[0] == 1.0
    z = np.array([[math.sqrt(2.0) + 0j]])
    assert abs(eval_phi(1, 1, z)[0]) < 1e-15  # L_1^0(1) = 0
    for k, n in ((3, 1), (2, 2), (4, 3)):
        assert eval_phi(k, n, np.zeros((1, n), dtype=complex))[0] == phi_at_zero(k, n)


def test_phi_radial_invariance():
    rng = np.random.default_rng(0)
    z = rng.normal(size=(1, 2)) + 1j * rng.normal(size=(1, 2))
    base = eval_phi(3, 2, z)
    for _ in range(16):
        theta = rng.uniform(0, 2 * np.pi, size=2)
        rot = z * np.exp(1j * theta)[None, :]
        assert abs(eval_phi(3, 2, rot)[0] - base[0]) < 1e-14


def test_phi_scaled():
    rng = np.random.default_rng(1)
    z = rng.normal(size=(100, 1)) + 1j * rng.normal(size=(100, 1))
    assert np.array_equal(eval_phi_scaled(2, 1, 1, z), eval_phi(2, 1, z))
    assert np.array_equal(eval_phi_scaled(2, 1, -1, z), eval_phi(2, 1, z))
    one = np.array([[1.0 + 0j]])
    assert abs(eval_phi_scaled(0, 1, 2, one)[0] - math.exp(-1.0)) < 1e-15
    with pytest.raises(ValueError):
        eval_phi_scaled(0, 1, 0, one)


def test_phi_norm_sq_values_and_quadrature():
    assert phi_norm_sq(0, 1) == 1
    assert phi_norm_sq(0, 2) == 2
    assert phi_norm_sq(2, 3) == 48
    rr = radial_rule()
    for k, gamma in ((2, 3), (5, 2), (0, 1)):
        quad = float(np.real(rr.integrate(eval_phi_radial(k, gamma, rr.r) ** 2, gamma)))
        assert abs(quad - float(phi_norm_sq(k, gamma))) < 1e-9 * float(phi_norm_sq(k, gamma)) + 1e-12


def test_radial_projection_constants():
    for n in (1, 2, 3):
        assert radial_projection_constant(0, n) == 1
    assert radial_projection_constant(1, 2) == Q(1, 2)


def test_c_sharp_membership():
    assert in_c_sharp(Q(1, 2))
    assert in_c_sharp(Q(-3, 2))
    assert not in_c_sharp(Q(-3))   # -a = 3 is a nonnegative integer
    assert not in_c_sharp(Q(0))
    assert not in_c_sharp(Q(3, 2))  # Re >= 1
    assert in_c_sharp(QQi(Q(1, 2), Q(1)))


def test_eval_M_integer_degree_is_laguerre():
    spec = GeneralizedLaguerreSpec(Q(-2), 1, trunc=10, integer_degree=True)
    val, tail = eval_M(spec, 0.0)
    assert val == 1.0 and tail == 0.0
    coeffs = laguerre_coeffs(2, 0)
    for x in (0.5, 1.0, 3.0):
        val, tail = eval_M(spec, x)
        assert tail == 0.0
        assert abs(val - float(poly_eval_exact(coeffs, Q(str(x))))) < 1e-12


def test_eval_M_series_value_at_zero():
    # only s = 0 survives: value = prod_{j=1}^{n-1}(j - a) / (n-1)!
    spec = GeneralizedLaguerreSpec(Q(1, 2), 3, trunc=20)
    val, tail = eval_M(spec, 0.0)
    expected = float((Q(1) - Q(1, 2)) * (Q(2) - Q(1, 2)) / 2)
    assert abs(val - expected) < 1e-15 and tail == 0.0


def test_eval_M_representations_agree():
    for x in (0.5, 1.0, 2.0):
        spec = GeneralizedLaguerreSpec(Q(1, 2), 2, trunc=40)
        v1, t1 = eval_M(spec, x)
        v2, t2 = eval_M(spec, x, representation="alternate")
        assert abs(v1 - v2) <= t1 + t2 + 1e-12


def test_eval_M_rejects_bad_degree_and_truncation():
    with pytest.raises(ValueError):
        GeneralizedLaguerreSpec(Q(-1), 2, trunc=10)
    with pytest.raises(ValueError):
        GeneralizedLaguerreSpec(Q(1, 2), 2, trunc=10, integer_degree=True)
    with pytest.raises(TruncationError):
        eval_m_series(Q(1, 2), 1, 50.0, 5)


def test_generalized_recurrences_sampled():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = Q(int(rng.integers(-8, 8)), int(rng.integers(2, 9)))
        if a >= 1:
            a -= 1
        n = int(rng.integers(1, 4))
        x = float(rng.uniform(0.1, 3.0))
        out = generalized_recurrence_residuals(a, n, x, trunc=40)
        assert out["residual_derivative"] <= out["tail_bound_derivative"] + 1e-12
        assert out["residual_additive"] <= out["tail_bound_additive"] + 1e-12


def test_recurrence_residual_quoted_point():
    out = generalized_recurrence_residuals(Q(1, 3), 1, 1.0, trunc=40)
    assert out["residual_additive"] <= out["tail_bound_additive"] + 1e-14


def test_confluent_ode_formal():
    for a in (Q(1, 2), Q(-5, 3)):
        for n in (1, 3):
            assert all(not c for c in laguerre_ode_residual_coeffs(a, n, 15))


def test_m_series_reduces_to_laguerre_coeffs():
    # a = -k termination: series coefficients equal the polynomial's
    c = m_series_coeffs(Q(-3), 2, 8)
    poly = laguerre_coeffs(3, 1)
    assert c[:4] == poly and all(not v for v in c[4:])
