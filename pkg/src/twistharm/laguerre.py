"""Laguerre polynomials and Laguerre functions, exact and floating point.

Exact layer: coefficient lists over rationals for any rational order, weighted
L^2 norms, and truncated series for the generalized (non-integer degree)
Laguerre functions.  Float layer: stable three-term recurrence evaluation used
by the quadrature engines.

Conventions.  L_k^order has leading coefficient (-1)^k / k!.  The Laguerre
function of degree k and order gamma-1 on C^gamma is

    phi_k(z) = L_k^{gamma-1}(|z|^2 / 2) * exp(-|z|^2 / 4),

with weighted norm  int_0^inf phi_k(r)^2 r^{2 gamma - 1} dr
= 2^{gamma-1} (k + gamma - 1)! / k!.

The generalized function M_a^{n-1} (degree parameter a with -a not a
nonnegative integer and Re a < 1) is normalized so that M_{-k}^{n-1} is
exactly L_k^{n-1}; it satisfies d/dx M_a^n = -M_{a+1}^{n+1} and
M_{a+1}^{n+1} + M_a^n = M_a^{n+1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

import numpy as np

from ._rational import Q, QQi, as_q

Rational = Union[int, Q]
Scalar = Union[Q, QQi]


# ----------------------------------------------------------------------
# Exact coefficients
# ----------------------------------------------------------------------

def binom_product(order, top_shift: int, m: int):
    """binom(order + top_shift, m) via the product form, exact for rational order.

    Equals prod_{j=1}^{m} (order + top_shift - m + j) / j; no Gamma evaluation.
    """
    out = Q(1)
    for j in range(1, m + 1):
        out = out * (order + (top_shift - m + j)) / j
    return out


@lru_cache(maxsize=None)
def _laguerre_coeffs_cached(k: int, order_key: str) -> Tuple[Q, ...]:
    order = Q(order_key)
    coeffs = []
    for i in range(k + 1):
        c = binom_product(order, k, k - i) / math.factorial(i)
        if i % 2:
            c = -c
        coeffs.append(c)
    return tuple(coeffs)


def laguerre_coeffs(k: int, order) -> List[Q]:
    """Coefficients [c_0, ..., c_k] of L_k^order, c_i exact rational.

    c_i = (-1)^i binom(order + k, k - i) / i!.
    """
    if k < 0:
        raise ValueError("degree k must be >= 0")
    return list(_laguerre_coeffs_cached(k, str(as_q(order))))


def poly_eval_exact(coeffs: Sequence[Scalar], x):
    """Horner evaluation at an exact point."""
    out = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        out = out * x + c
    return out


# ----------------------------------------------------------------------
# Float evaluation
# ----------------------------------------------------------------------

def eval_laguerre(k: int, order: float, x) -> np.ndarray:
    """L_k^order(x) by the upward three-term recurrence (vectorized)."""
    x = np.asarray(x, dtype=float)
    a = float(order)
    if k == 0:
        return np.ones_like(x)
    prev = np.ones_like(x)
    cur = 1.0 + a - x
    for m in range(1, k):
        prev, cur = cur, ((2 * m + 1 + a - x) * cur - (m + a) * prev) / (m + 1)
    return cur


def eval_phi_radial(k: int, gamma: int, r) -> np.ndarray:
    """phi_k^{gamma-1}(r) = L_k^{gamma-1}(r^2/2) e^{-r^2/4} for radii r >= 0."""
    r = np.asarray(r, dtype=float)
    r2 = r * r
    return eval_laguerre(k, gamma - 1, r2 / 2.0) * np.exp(-r2 / 4.0)


def eval_phi(k: int, n: int, z) -> np.ndarray:
    """phi_k^{n-1}(z) for points z of shape (..., n) complex."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0 or z.shape[-1] != n:
        raise ValueError(f"points must have last axis of length n={n}")
    r2 = np.sum(np.abs(z) ** 2, axis=-1)
    return eval_laguerre(k, n - 1, r2 / 2.0) * np.exp(-r2 / 4.0)


def eval_phi_scaled(k: int, n: int, lam, z) -> np.ndarray:
    """phi_{k,lam}^{n-1}(z) = phi_k^{n-1}(|lam| z); rejects lam = 0."""
    lam = float(lam)
    if lam == 0.0:
        raise ValueError("scale lambda must be nonzero")
    return eval_phi(k, n, abs(lam) * np.asarray(z, dtype=complex))


def phi_at_zero(k: int, n: int) -> int:
    """phi_k^{n-1}(0) = binom(k + n - 1, k)."""
    return math.comb(k + n - 1, k)


def phi_norm_sq(k: int, gamma: int) -> Q:
    """Exact 2^{gamma-1} (k+gamma-1)!/k! = int phi_k^{gamma-1}(r)^2 r^{2 gamma - 1} dr."""
    if k < 0 or gamma < 1:
        raise ValueError("need k >= 0, gamma >= 1")
    return Q(2) ** (gamma - 1) * Q(math.factorial(k + gamma - 1), math.factorial(k))


def radial_projection_constant(k: int, n: int) -> Q:
    """B_k^n = k! (n-1)! / (n+k-1)!."""
    return Q(math.factorial(k) * math.factorial(n - 1), math.factorial(n + k - 1))


# ----------------------------------------------------------------------
# Domain types
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LaguerreSpec:
    """Degree k, rational order, nonzero rational scale lambda."""

    k: int
    order: Q
    lam: Q

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if not self.lam:
            raise ValueError("lambda must be nonzero")

    def coeffs(self) -> List[Q]:
        return laguerre_coeffs(self.k, self.order)


def in_c_sharp(a) -> bool:
    """Membership in {a : -a not in {0,1,2,...}, Re a < 1}."""
    re = a.re if isinstance(a, QQi) else as_q(a)
    im = a.im if isinstance(a, QQi) else Q(0)
    if re >= 1:
        return False
    if im == 0:
        neg = -re
        if neg >= 0 and neg.denominator == 1:
            return False
    return True


@dataclass(frozen=True)
class GeneralizedLaguerreSpec:
    """Degree parameter a, integer order superscript n-1, truncation N.

    The admissible-region check can be bypassed with integer_degree=True to
    represent a = -k, in which case the series terminates and reproduces
    L_k^{n-1} exactly.
    """

    a: Scalar
    n: int
    trunc: int
    integer_degree: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order parameter n must be >= 1")
        if self.trunc < 1:
            raise ValueError("truncation must be positive")
        if self.integer_degree:
            re = self.a.re if isinstance(self.a, QQi) else self.a
            im = self.a.im if isinstance(self.a, QQi) else 0
            if im != 0 or re > 0 or re.denominator != 1:
                raise ValueError("integer_degree requires a = -k with k >= 0")
        elif not in_c_sharp(self.a):
            raise ValueError(f"a={self.a} rejected: -a must not be a nonnegative "
                             "integer and Re(a) must be < 1")

    def series_coeffs(self) -> List[Scalar]:
        return m_series_coeffs(self.a, self.n, self.trunc)


@lru_cache(maxsize=None)
def _m_series_cached(a_key: str, im_key: str, n: int, trunc: int) -> Tuple[Scalar, ...]:
    a: Scalar = Q(a_key) if im_key == "0" else QQi(Q(a_key), Q(im_key))
    # prefactor Gamma(n-a)/Gamma(1-a) = prod_{j=1}^{n-1} (j - a)
    pref: Scalar = Q(1)
    for j in range(1, n):
        pref = pref * (j - a)
    coeffs: List[Scalar] = []
    poch: Scalar = Q(1)  # (a)_s
    for s in range(trunc + 1):
        coeffs.append(pref * poch / (math.factorial(n + s - 1) * math.factorial(s)))
        poch = poch * (a + s)
    return tuple(coeffs)


def m_series_coeffs(a, n: int, trunc: int) -> List[Scalar]:
    """Exact power-series coefficients of M_a^{n-1} through x^trunc.

    M_a^{n-1}(x) = [prod_{j=1}^{n-1} (j-a)] * sum_s (a)_s x^s / ((n+s-1)! s!),
    normalized so that M_{-k}^{n-1} = L_k^{n-1}.
    """
    if isinstance(a, QQi):
        return list(_m_series_cached(str(a.re), str(a.im), n, trunc))
    return list(_m_series_cached(str(as_q(a)), "0", n, trunc))


def m_alternate_coeffs(a, n: int, trunc: int) -> List[Scalar]:
    """Coefficients of the e^x-prefactored form of M_a^{n-1} through x^trunc.

    M_a^{n-1}(x) = e^x sum_i (-1)^i binom(n - a + i - 1, -a) x^i / i!.
    """
    a = a if isinstance(a, QQi) else as_q(a)
    coeffs: List[Scalar] = []
    for i in range(trunc + 1):
        # binom(n - a + i - 1, -a) = prod_{j=1}^{n+i-1} (j - a) / (n + i - 1)!
        num: Scalar = Q(1)
        for j in range(1, n + i):
            num = num * (j - a)
        c = num / (math.factorial(n + i - 1) * math.factorial(i))
        if i % 2:
            c = -c
        coeffs.append(c)
    return coeffs


class TruncationError(ValueError):
    """Raised when a series tail cannot be bounded at the requested truncation."""


def _scalar_complex(v) -> complex:
    if isinstance(v, QQi):
        return complex(v)
    return complex(float(v), 0.0)


def _series_value_and_tail(coeffs: Sequence[Scalar], x: float, n: int, abs_shift: float,
                           deriv: bool = False) -> Tuple[complex, float]:
    """Partial sum (optionally of the term-wise derivative) plus a tail bound.

    Tail domination: |term_{s+1}/term_s| <= (abs_shift + s) x / ((n + s)(s + 1)),
    doubled for the differentiated series; geometric closure requires the
    ratio bound at s = N to be < 3/4.
    """
    N = len(coeffs) - 1
    val = 0.0 + 0.0j
    xs = 1.0
    if deriv:
        for s in range(1, N + 1):
            val += s * _scalar_complex(coeffs[s]) * xs
            xs *= x
        last = max(N, 1) * abs(_scalar_complex(coeffs[N])) * x ** max(N - 1, 0)
    else:
        for c in coeffs:
            val += _scalar_complex(c) * xs
            xs *= x
        last = abs(_scalar_complex(coeffs[N])) * x ** N
    ratio = (abs_shift + N) * x / ((n + N) * (N + 1))
    if deriv:
        ratio *= 2.0
    if ratio >= 0.75:
        raise TruncationError(
            f"tail not dominated at truncation N={N}, x={x}: ratio bound {ratio:.3f}")
    return val, last * ratio / (1.0 - ratio)


def eval_m_series(a, n: int, x: float, trunc: int,
                  representation: str = "series") -> Tuple[complex, float]:
    """Evaluate M_a^{n-1}(x) for arbitrary rational a; returns (value, tail_bound).

    Low-level path without admissible-region checks (the series are entire in
    x); used by the recurrence and ladder verifications, which step a outside
    the admissible strip.
    """
    if x < 0:
        raise ValueError("x must be >= 0")
    if representation == "series":
        coeffs = m_series_coeffs(a, n, trunc)
        return _series_value_and_tail(coeffs, x, n, abs(_scalar_complex(a)))
    if representation == "alternate":
        coeffs = m_alternate_coeffs(a, n, trunc)
        val, tail = _series_value_and_tail(coeffs, x, n, abs(_scalar_complex(a)) + n)
        ex = math.exp(x)
        return ex * val, ex * tail
    raise ValueError(f"unknown representation {representation!r}")


def eval_M(spec: GeneralizedLaguerreSpec, x: float,
           representation: str = "series") -> Tuple[complex, float]:
    """Evaluate M from a validated spec; returns (value, tail_bound).

    For integer_degree specs the series terminates and the tail bound is 0;
    the value then equals L_k^{n-1}(x) exactly up to float rounding.
    """
    if spec.integer_degree:
        if representation != "series":
            raise ValueError("alternate form is undefined for a = -k")
        re = spec.a.re if isinstance(spec.a, QQi) else spec.a
        k = int(-re)
        if spec.trunc < k:
            raise TruncationError(f"truncation {spec.trunc} below terminating degree {k}")
        coeffs = m_series_coeffs(spec.a, spec.n, spec.trunc)
        val = 0.0 + 0.0j
        xs = 1.0
        for c in coeffs:
            val += _scalar_complex(c) * xs
            xs *= x
        return (val.real if not isinstance(spec.a, QQi) else val), 0.0
    val, tail = eval_m_series(spec.a, spec.n, x, spec.trunc, representation)
    if not isinstance(spec.a, QQi):
        return val.real, tail
    return val, tail


def generalized_recurrence_residuals(a, n: int, x: float, trunc: int) -> dict:
    """Residuals of the two M-function recurrences at a point, with tail bounds.

    residual_derivative:  d/dx M_a^{n} + M_{a+1}^{n+1}
    residual_additive:    M_{a+1}^{n+1} + M_a^{n} - M_a^{n+1}
    with the superscript as printed (M_a^{n} carries weight index n+1 here).
    """
    a = a if isinstance(a, QQi) else as_q(a)
    coeffs_n = m_series_coeffs(a, n + 1, trunc)
    d_val, d_tail = _series_value_and_tail(coeffs_n, x, n + 1,
                                           abs(_scalar_complex(a)), deriv=True)
    v_plus, t_plus = eval_m_series(a + 1, n + 2, x, trunc)
    v_an, t_an = eval_m_series(a, n + 1, x, trunc)
    v_an1, t_an1 = eval_m_series(a, n + 2, x, trunc)
    return {
        "residual_derivative": abs(d_val + v_plus),
        "residual_additive": abs(v_plus + v_an - v_an1),
        "tail_bound_derivative": d_tail + t_plus,
        "tail_bound_additive": t_plus + t_an + t_an1,
    }


def laguerre_ode_residual_coeffs(a, n: int, trunc: int) -> List[Scalar]:
    """Formal coefficients of  x G'' + (n - x) G' - a G  for G = M_a^{n-1}.

    Identically zero for the exact series; kept as an internal consistency
    check of the series normalization (the confluent equation pins it).
    """
    c = m_series_coeffs(a, n, trunc + 2)
    out: List[Scalar] = []
    a = a if isinstance(a, QQi) else as_q(a)
    for s in range(trunc + 1):
        val = (s + 1) * s * c[s + 1] + n * (s + 1) * c[s + 1] - s * c[s] - a * c[s]
        out.append(val)
    return out
