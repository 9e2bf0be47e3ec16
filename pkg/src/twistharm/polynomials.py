"""Bigraded polynomials on C^n with exact coefficients.

A bigraded polynomial of bidegree (p, q) is sum_{|alpha|=p, |beta|=q}
c_{alpha beta} z^alpha zbar^beta.  Coefficients are exact rationals (Q),
Gaussian rationals (QQi), or -- for rotated/float workflows only -- complex
floats; the exact invariant checks are run on exact inputs.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Dict, Iterator, Tuple

import numpy as np

from ._rational import Q, QQi, conj_scalar, scalar_to_complex

MultiIndex = Tuple[int, ...]
TermKey = Tuple[MultiIndex, MultiIndex]


@lru_cache(maxsize=None)
def compositions(total: int, nparts: int) -> Tuple[MultiIndex, ...]:
    """All multi-indices of nparts nonnegative ints summing to total (lex order)."""
    if nparts == 0:
        return ((),) if total == 0 else ()
    if nparts == 1:
        return ((total,),)
    out = []
    for first in range(total, -1, -1):
        for rest in compositions(total - first, nparts - 1):
            out.append((first,) + rest)
    return tuple(out)


def multi_factorial(idx: MultiIndex) -> int:
    out = 1
    for a in idx:
        out *= math.factorial(a)
    return out


def dim_poly_space(n: int, p: int, q: int) -> int:
    """Dimension of the bidegree-(p, q) polynomial space on C^n."""
    return math.comb(p + n - 1, n - 1) * math.comb(q + n - 1, n - 1)


def _conj_maybe(v):
    if isinstance(v, (QQi, complex)):
        return v.conjugate()
    return v


class BigradedPolynomial:
    """Immutable container for one element of the (p, q)-bigraded space."""

    __slots__ = ("n", "p", "q", "coeffs")

    def __init__(self, n: int, p: int, q: int, coeffs: Dict[TermKey, object]):
        if n < 1 or p < 0 or q < 0:
            raise ValueError("need n >= 1, p, q >= 0")
        clean = {}
        for (alpha, beta), c in coeffs.items():
            if len(alpha) != n or len(beta) != n:
                raise ValueError(f"index length mismatch for n={n}: {(alpha, beta)}")
            if sum(alpha) != p or sum(beta) != q:
                raise ValueError(f"inhomogeneous term {(alpha, beta)} for bidegree ({p},{q})")
            if c:
                clean[(tuple(alpha), tuple(beta))] = c
        self.n = n
        self.p = p
        self.q = q
        self.coeffs = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def monomial(n: int, alpha: MultiIndex, beta: MultiIndex, coeff=1) -> "BigradedPolynomial":
        c = coeff if isinstance(coeff, (QQi, complex)) else Q(coeff)
        return BigradedPolynomial(n, sum(alpha), sum(beta), {(tuple(alpha), tuple(beta)): c})

    @staticmethod
    def zero(n: int, p: int, q: int) -> "BigradedPolynomial":
        return BigradedPolynomial(n, p, q, {})

    @staticmethod
    def unit_monomial(n: int, j_z: int | None = None, j_zbar: int | None = None) -> "BigradedPolynomial":
        """z_j, zbar_j or (with both None) the constant 1."""
        alpha = [0] * n
        beta = [0] * n
        if j_z is not None:
            alpha[j_z] += 1
        if j_zbar is not None:
            beta[j_zbar] += 1
        return BigradedPolynomial.monomial(n, tuple(alpha), tuple(beta))

    # -- basic algebra ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> Iterator[Tuple[TermKey, object]]:
        return iter(sorted(self.coeffs.items()))

    def __add__(self, other: "BigradedPolynomial") -> "BigradedPolynomial":
        if (self.n, self.p, self.q) != (other.n, other.p, other.q):
            raise ValueError("bidegree mismatch in addition")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BigradedPolynomial(self.n, self.p, self.q, out)

    def __sub__(self, other: "BigradedPolynomial") -> "BigradedPolynomial":
        return self + (-other)

    def __neg__(self) -> "BigradedPolynomial":
        return BigradedPolynomial(self.n, self.p, self.q, {k: -v for k, v in self.coeffs.items()})

    def scale(self, s) -> "BigradedPolynomial":
        if not s:
            return BigradedPolynomial.zero(self.n, self.p, self.q)
        return BigradedPolynomial(self.n, self.p, self.q, {k: s * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, BigradedPolynomial):
            if self.n != other.n:
                raise ValueError("dimension mismatch in product")
            out: Dict[TermKey, object] = {}
            for (a1, b1), c1 in self.coeffs.items():
                for (a2, b2), c2 in other.coeffs.items():
                    key = (tuple(x + y for x, y in zip(a1, a2)),
                           tuple(x + y for x, y in zip(b1, b2)))
                    out[key] = out.get(key, 0) + c1 * c2
            return BigradedPolynomial(self.n, self.p + other.p, self.q + other.q, out)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedPolynomial):
            return NotImplemented
        return (self.n, self.p, self.q) == (other.n, other.p, other.q) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.p, self.q, tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0]))))

    def conj(self) -> "BigradedPolynomial":
        """Complex conjugate polynomial; lands in bidegree (q, p)."""
        return BigradedPolynomial(
            self.n, self.q, self.p,
            {(beta, alpha): _conj_maybe(c) for (alpha, beta), c in self.coeffs.items()})

    # -- analysis -----------------------------------------------------

    def laplacian(self) -> "BigradedPolynomial":
        """4 sum_j d^2/dz_j dzbar_j, exact; bidegree (p-1, q-1)."""
        if self.p == 0 or self.q == 0:
            return BigradedPolynomial.zero(self.n, max(self.p - 1, 0), max(self.q - 1, 0))
        out: Dict[TermKey, object] = {}
        for (alpha, beta), c in self.coeffs.items():
            for j in range(self.n):
                if alpha[j] and beta[j]:
                    a = list(alpha)
                    b = list(beta)
                    w = 4 * a[j] * b[j]
                    a[j] -= 1
                    b[j] -= 1
                    key = (tuple(a), tuple(b))
                    out[key] = out.get(key, 0) + w * c
        return BigradedPolynomial(self.n, self.p - 1, self.q - 1, out)

    def is_harmonic(self) -> bool:
        return self.laplacian().is_zero()

    def eval(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at complex points of shape (..., n)."""
        pts = np.asarray(points, dtype=complex)
        if pts.shape[-1] != self.n:
            raise ValueError(f"points must have last axis {self.n}")
        out = np.zeros(pts.shape[:-1], dtype=complex)
        conj_pts = np.conj(pts)
        for (alpha, beta), c in self.coeffs.items():
            term = np.full(pts.shape[:-1], scalar_to_complex(c) if not isinstance(c, complex) else c)
            for j in range(self.n):
                if alpha[j]:
                    term = term * pts[..., j] ** alpha[j]
                if beta[j]:
                    term = term * conj_pts[..., j] ** beta[j]
            out += term
        return out

    # -- inner products and norms ------------------------------------

    def coeff_norm_sq(self):
        """sum |c_{alpha beta}|^2 alpha! beta!  (exact; the coefficient norm)."""
        out = Q(0)
        for (alpha, beta), c in self.coeffs.items():
            if isinstance(c, complex):
                raise TypeError("coefficient norm requires exact coefficients")
            w = multi_factorial(alpha) * multi_factorial(beta)
            if isinstance(c, QQi):
                out = out + w * (c.re * c.re + c.im * c.im)
            else:
                out = out + w * c * c
        return out

    def coeff_inner(self, other: "BigradedPolynomial"):
        """<P, Q> = sum c conj(d) alpha! beta! over shared keys (exact)."""
        out = 0
        for key, c in self.coeffs.items():
            d = other.coeffs.get(key)
            if d is not None:
                w = multi_factorial(key[0]) * multi_factorial(key[1])
                out = out + w * (c * conj_scalar(d))
        return out if out else Q(0)

    def sphere_mean_inner(self, other: "BigradedPolynomial"):
        """<P, Q> in L^2 of the unit sphere with *normalized* measure, exact.

        Uses the monomial moment  int w^a wbar^b dmu = [a == b] (n-1)! a! / (n-1+|a|)!
        """
        n = self.n
        out = 0
        for (a1, b1), c in self.coeffs.items():
            for (a2, b2), d in other.coeffs.items():
                left = tuple(x + y for x, y in zip(a1, b2))
                right = tuple(x + y for x, y in zip(b1, a2))
                if left != right:
                    continue
                moment = Q(math.factorial(n - 1) * multi_factorial(left),
                           math.factorial(n - 1 + sum(left)))
                out = out + moment * (c * conj_scalar(d))
        return out if out else Q(0)

    def sphere_mean_norm_sq(self):
        return self.sphere_mean_inner(self)

    def __repr__(self):
        if not self.coeffs:
            return f"BigradedPolynomial({self.n}; {self.p},{self.q}; 0)"
        body = " + ".join(f"({c})*z^{a}zb^{b}" for (a, b), c in list(self.terms())[:4])
        more = "" if len(self.coeffs) <= 4 else f" + ... [{len(self.coeffs)} terms]"
        return f"BigradedPolynomial({self.n}; {self.p},{self.q}; {body}{more})"


def surface_area(n: int) -> float:
    """Surface measure of the unit sphere S^{2n-1} in C^n = R^{2n}."""
    return 2.0 * math.pi ** n / math.factorial(n - 1)
