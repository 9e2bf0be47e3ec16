"""Quadrature rules: Gauss-Legendre, weighted radial rules, sphere rules.

Radial integrals of Gaussian-weighted data use the substitution u = r^2/2,
so one node set serves every weight exponent r^{2 gamma - 1}:

    int_0^inf g(r) r^{2 gamma - 1} dr = int_0^U g(sqrt(2u)) (2u)^{gamma-1} du.

Sphere rules use torus coordinates w_j = r_j e^{i phi_j}; with u_j = r_j^2
the normalized surface measure is Lebesgue on the simplex {u_j >= 0,
sum u_j = 1} times independent uniform angles, which product Gauss-Legendre
x trapezoid rules integrate to spectral accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np


def gauss_legendre(npts: int, a: float, b: float) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(npts)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


@dataclass(frozen=True)
class RadialRule:
    """Nodes r_i with u-space weights; integrates g(r) r^{2 gamma - 1} dr."""

    u: np.ndarray
    wu: np.ndarray
    r: np.ndarray
    u_max: float

    def integrate(self, values: np.ndarray, gamma: int, extra_r_power: float = 0.0) -> complex:
        """sum of values(r_i) against r^{2 gamma - 1 + extra_r_power} dr."""
        w = self.wu * (2.0 * self.u) ** (gamma - 1)
        if extra_r_power:
            w = w * self.r ** extra_r_power
        return np.sum(values * w, axis=-1)

    def weights_for(self, gamma: int, extra_r_power: float = 0.0) -> np.ndarray:
        w = self.wu * (2.0 * self.u) ** (gamma - 1)
        if extra_r_power:
            w = w * self.r ** extra_r_power
        return w


@lru_cache(maxsize=32)
def radial_rule(npts: int = 220, u_max: float = 100.0) -> RadialRule:
    """Default rule: Gauss-Legendre in u on [0, u_max].

    u_max is sized for integrands up to u^25 e^{-u} (their mass beyond u=100
    is under 1e-20 of the peak), which covers the weighted Laguerre products
    used by the orthogonality and expansion checks.
    """
    u, wu = gauss_legendre(npts, 0.0, u_max)
    return RadialRule(u=u, wu=wu, r=np.sqrt(2.0 * u), u_max=u_max)


@dataclass(frozen=True)
class SphereRule:
    """Quadrature on the unit sphere S^{2n-1} in C^n, normalized measure."""

    n: int
    points: np.ndarray   # (N, n) complex, |w| = 1
    weights: np.ndarray  # (N,), sum = 1

    @property
    def count(self) -> int:
        return self.points.shape[0]


@lru_cache(maxsize=32)
def sphere_rule(n: int, order: int = 24) -> SphereRule:
    """Product rule exact (to roundoff) for polynomial integrands of degree <= 2*order.

    n=1: trapezoid on the circle; n=2,3: Gauss-Legendre on the u-simplex times
    uniform angle grids.
    """
    n_ang = 2 * order + 2
    theta = 2.0 * np.pi * np.arange(n_ang) / n_ang
    if n == 1:
        pts = np.exp(1j * theta)[:, None]
        w = np.full(n_ang, 1.0 / n_ang)
        return SphereRule(1, pts, w)
    if n == 2:
        u, wu = gauss_legendre(order, 0.0, 1.0)
        ph1, ph2 = theta, theta
        U, P1, P2 = np.meshgrid(u, ph1, ph2, indexing="ij")
        WU = np.broadcast_to(wu[:, None, None], U.shape)
        w1 = np.sqrt(1.0 - U) * np.exp(1j * P1)
        w2 = np.sqrt(U) * np.exp(1j * P2)
        pts = np.stack([w1.ravel(), w2.ravel()], axis=-1)
        w = (WU / n_ang ** 2).ravel()
        return SphereRule(2, pts, w)
    if n == 3:
        # simplex u1 + u2 <= 1 via u2 = (1 - u1) v, Jacobian (1 - u1)
        u1, w1q = gauss_legendre(order, 0.0, 1.0)
        v, wv = gauss_legendre(order, 0.0, 1.0)
        U1, V, P1, P2, P3 = np.meshgrid(u1, v, theta, theta, theta, indexing="ij")
        U2 = (1.0 - U1) * V
        U3 = 1.0 - U1 - U2
        jac = (1.0 - U1)
        WW = (np.broadcast_to(w1q[:, None, None, None, None], U1.shape)
              * np.broadcast_to(wv[None, :, None, None, None], U1.shape)) * jac
        # simplex area is 1/2; normalized measure is 2 * du1 du2 x angles
        WW = 2.0 * WW / n_ang ** 3
        wa = np.sqrt(U1) * np.exp(1j * P1)
        wb = np.sqrt(np.clip(U2, 0.0, None)) * np.exp(1j * P2)
        wc = np.sqrt(np.clip(U3, 0.0, None)) * np.exp(1j * P3)
        pts = np.stack([wa.ravel(), wb.ravel(), wc.ravel()], axis=-1)
        return SphereRule(3, pts, WW.ravel())
    raise ValueError("sphere_rule supports n in {1, 2, 3}")


def sphere_rule_for_degree(n: int, degree: int) -> SphereRule:
    """Rule safely exact for bigraded polynomial integrands of total degree <= degree."""
    return sphere_rule(n, order=max(10, degree + 2))


def sphere_monomial_moment(n: int, a: Tuple[int, ...], b: Tuple[int, ...]) -> float:
    """int w^a conj(w)^b dmu over S^{2n-1}: 0 unless a == b, else (n-1)! a! / (n-1+|a|)!."""
    if tuple(a) != tuple(b):
        return 0.0
    num = math.factorial(n - 1)
    for ai in a:
        num *= math.factorial(ai)
    return num / math.factorial(n - 1 + sum(a))


def grid_axis(extent: float, steps: int) -> np.ndarray:
    """Uniform half-open axis x_i = -L + i h, h = 2L/steps."""
    h = 2.0 * extent / steps
    return -extent + h * np.arange(steps)


def unitary_check(sigma: np.ndarray, tol: float = 1e-12) -> bool:
    sigma = np.asarray(sigma, dtype=complex)
    err = np.max(np.abs(sigma @ sigma.conj().T - np.eye(sigma.shape[0])))
    return bool(err <= tol)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish unitary from QR of a complex Gaussian matrix."""
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def integrate_radial_profile(fn: Callable[[np.ndarray], np.ndarray], gamma: int,
                             rule: RadialRule | None = None) -> complex:
    """int_0^inf fn(r) r^{2 gamma - 1} dr with the default rule."""
    rr = rule or radial_rule()
    return rr.integrate(np.asarray(fn(rr.r)), gamma)
