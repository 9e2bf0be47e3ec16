import math

import numpy as np
import pytest

from twistharm._rational import Q, QQi
from twistharm.harmonics import (basis_from_json, basis_to_json,
                                 canonical_harmonic, dim_hpq, harmonic_basis,
                                 laplacian_kernel_dim, rotate_polynomial,
                                 sph_coefficients, sup_norm_bound_check)
from twistharm.laguerre import eval_phi
from twistharm.polynomials import BigradedPolynomial
from twistharm.quadrature import sphere_rule_for_degree


def test_dim_formula_base_cases():
    assert dim_hpq(2, 0, 0) == 1
    assert dim_hpq(2, 1, 1) == 3
    assert dim_hpq(2, 1, 0) == 2
    assert dim_hpq(3, 1, 1) == 8
    assert dim_hpq(1, 1, 1) == 0
    assert dim_hpq(1, 4, 0) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_dim_equals_kernel_rank_small(n):
    for p in range(4):
        for q in range(4):
            assert laplacian_kernel_dim(n, p, q) == dim_hpq(n, p, q)


def test_basis_structure():
    b = harmonic_basis(2, 1, 0)
    vals = sorted(sorted(e.coeffs) for e in b.elements)
    assert len(b) == 2  # spans {z1, z2}
    assert harmonic_basis(1, 1, 1).elements == []
    b11 = harmonic_basis(2, 1, 1)
    assert len(b11) == 3
    for e in b11.elements:
        assert e.laplacian().is_zero()
    # pairwise orthogonality in the coefficient inner product
    for i, e in enumerate(b11.elements):
        for f in b11.elements[i + 1:]:
            assert not e.coeff_inner(f)


@pytest.mark.parametrize("n,p,q", [(1, 2, 0), (2, 1, 0), (2, 2, 1), (3, 1, 1)])
def test_norm_ratio_constant(n, p, q):
    # kappa = mean_norm^2 / coeff_norm^2 = (n-1)! / (n-1+p+q)! on each H_{p,q}
    b = harmonic_basis(n, p, q)
    expected = Q(math.factorial(n - 1), math.factorial(n - 1 + p + q))
    assert b.kappa == expected


def test_canonical_harmonic():
    P = canonical_harmonic(2, 2, 1)
    assert P.laplacian().is_zero()
    with pytest.raises(ValueError):
        canonical_harmonic(1, 1, 1)


def test_rotation_exact_cases():
    z1 = BigradedPolynomial.unit_monomial(2, j_z=0)
    ident = [[1, 0], [0, 1]]
    assert rotate_polynomial(ident, z1) == z1
    phase = [[QQi(0, 1), 0], [0, 1]]   # sigma = diag(i, 1): z1 -> -i z1
    assert rotate_polynomial(phase, z1) == z1.scale(QQi(0, -1))
    swap = [[0, 1], [1, 0]]
    z1zb2 = BigradedPolynomial.monomial(2, (1, 0), (0, 1))
    z2zb1 = BigradedPolynomial.monomial(2, (0, 1), (1, 0))
    assert rotate_polynomial(swap, z1zb2) == z2zb1


def test_rotation_preserves_norm_and_harmonicity():
    P = canonical_harmonic(2, 2, 1)
    for sigma in ([[0, 1], [1, 0]], [[QQi(0, 1), 0], [0, QQi(0, -1)]]):
        r = rotate_polynomial(sigma, P)
        assert r.coeff_norm_sq() == P.coeff_norm_sq()
        assert r.laplacian().is_zero()


def test_rotation_float_and_rejection():
    theta = 0.3
    u = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]],
                 dtype=complex)
    P = canonical_harmonic(2, 1, 0)
    r = rotate_polynomial(u, P)
    pts = np.array([[0.2 + 0.4j, -0.7 + 0.1j]])
    assert np.allclose(r.eval(pts), P.eval(pts @ np.conj(u)), atol=1e-12)
    with pytest.raises(ValueError):
        rotate_polynomial(np.array([[1.0, 0.1], [0.0, 1.0]]), P)
    with pytest.raises(ValueError):
        rotate_polynomial([[1, 1], [0, 1]], P)


def test_sup_norm_bound():
    out = sup_norm_bound_check(canonical_harmonic(2, 1, 0))
    assert out["passed"] and abs(out["sup_estimate"] - 1.0) < 5e-3
    assert abs(out["bound"] - math.sqrt(2)) < 1e-12
    out = sup_norm_bound_check(canonical_harmonic(2, 1, 1))
    assert out["passed"] and abs(out["sup_estimate"] - 0.5) < 5e-3
    with pytest.raises(ValueError):
        sup_norm_bound_check(BigradedPolynomial.zero(2, 1, 1))


def test_sph_coefficients_radial_and_planted():
    radii = [0.5, 1.0, 1.7]
    f_rad = lambda z: eval_phi(0, 2, z)
    b00 = harmonic_basis(2, 0, 0)
    a00 = sph_coefficients(f_rad, 0, 0, b00, radii)
    assert np.allclose(a00[0], np.exp(-np.array(radii) ** 2 / 4.0), atol=1e-12)
    b10 = harmonic_basis(2, 1, 0)
    a10 = sph_coefficients(f_rad, 1, 0, b10, radii)
    assert np.max(np.abs(a10)) < 1e-12

    f = lambda z: z[..., 0] * np.exp(-np.sum(np.abs(z) ** 2, axis=-1) / 4.0)
    a = sph_coefficients(f, 1, 0, b10, radii)
    # against the basis element equal to z_1 the coefficient is rho e^{-rho^2/4}
    idx = [i for i, e in enumerate(b10.elements)
           if list(e.coeffs) == [((1, 0), (0, 0))]][0]
    expected = np.array(radii) * np.exp(-np.array(radii) ** 2 / 4.0)
    assert np.allclose(a[idx], expected, atol=1e-10)
    other = [i for i in range(2) if i != idx][0]
    assert np.max(np.abs(a[other])) < 1e-12
    z = sph_coefficients(lambda pts: np.zeros(pts.shape[:-1]), 1, 0, b10, radii)
    assert np.max(np.abs(z)) == 0.0


def test_sph_coefficients_linearity():
    radii = [0.8, 1.3]
    b = harmonic_basis(2, 1, 0)
    f1 = lambda z: z[..., 0] * np.exp(-np.sum(np.abs(z) ** 2, axis=-1) / 4.0)
    f2 = lambda z: z[..., 1] * np.exp(-np.sum(np.abs(z) ** 2, axis=-1) / 2.0)
    both = lambda z: 2.0 * f1(z) - 0.5j * f2(z)
    a = sph_coefficients(both, 1, 0, b, radii)
    a1 = sph_coefficients(f1, 1, 0, b, radii)
    a2 = sph_coefficients(f2, 1, 0, b, radii)
    assert np.allclose(a, 2.0 * a1 - 0.5j * a2, atol=1e-12)


def test_basis_json_roundtrip():
    for (n, p, q) in ((2, 1, 1), (2, 2, 0), (3, 1, 1)):
        b = harmonic_basis(n, p, q)
        b2 = basis_from_json(basis_to_json(b))
        assert b2.elements == b.elements
        assert b2.kappa == b.kappa


def test_nonfinite_sphere_samples_rejected():
    b = harmonic_basis(2, 0, 0)
    bad = lambda z: np.full(z.shape[:-1], np.nan)
    with pytest.raises(ValueError):
        sph_coefficients(bad, 0, 0, b, [1.0])
