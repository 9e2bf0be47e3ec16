"""Exact symbolic engine: Gaussian polynomials and the ladder operators.

A GaussianPolynomial is  f(z) = sum c_{alpha beta} z^alpha zbar^beta
* exp(-scale |z|^2 / 4)  with exact coefficients and positive rational scale.
The family is closed under d/dz_j, d/dzbar_j, multiplication by z_j / zbar_j,
hence under the first-order operators

    W_j(lam)  = d/dz_j    - (lam/4) zbar_j
    W+_j(lam) = d/dzbar_j + (lam/4) z_j

acting on functions of scale |lam|.  Everything here is exact: a residual is
either the empty polynomial or a bug.

Operator orderings.  For a symbol P = sum c_{alpha beta} z^alpha zbar^beta:

    weyl ordering   P(W):  sum c (W+)^alpha W^beta     (ladder identities)
    tau(P):                sum c (W+)^beta  W^alpha
    tau'(P):               sum c W^alpha  (W+)^beta

tau and tau' agree exactly on harmonic symbols and differ by contraction
terms otherwise ([W+_j, -W_j] = (lam/2) I).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from ._rational import Q, QQi, as_q, conj_scalar, scalar_to_complex
from .laguerre import laguerre_coeffs, m_series_coeffs
from .polynomials import BigradedPolynomial, MultiIndex, compositions

TermKey = Tuple[MultiIndex, MultiIndex]


class GaussianPolynomial:
    """Polynomial times exp(-scale |z|^2 / 4), exact coefficients."""

    __slots__ = ("n", "scale", "coeffs")

    def __init__(self, n: int, scale, coeffs: Dict[TermKey, object]):
        scale = as_q(scale)
        if scale <= 0:
            raise ValueError("Gaussian scale must be positive")
        self.n = n
        self.scale = scale
        self.coeffs = {k: v for k, v in coeffs.items() if v}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def ground_state(n: int, scale=1) -> "GaussianPolynomial":
        return GaussianPolynomial(n, scale, {((0,) * n, (0,) * n): Q(1)})

    @staticmethod
    def monomial(n: int, alpha: MultiIndex, beta: MultiIndex, coeff=1,
                 scale=1) -> "GaussianPolynomial":
        c = coeff if isinstance(coeff, QQi) else as_q(coeff)
        return GaussianPolynomial(n, scale, {(tuple(alpha), tuple(beta)): c})

    # -- ring operations -------------------------------------------------

    def _check(self, other: "GaussianPolynomial"):
        if self.n != other.n or self.scale != other.scale:
            raise ValueError("dimension/scale mismatch")

    def __add__(self, other: "GaussianPolynomial") -> "GaussianPolynomial":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return GaussianPolynomial(self.n, self.scale, out)

    def __sub__(self, other: "GaussianPolynomial") -> "GaussianPolynomial":
        return self + other.scale_by(-1)

    def scale_by(self, s) -> "GaussianPolynomial":
        if not s:
            return GaussianPolynomial(self.n, self.scale, {})
        return GaussianPolynomial(self.n, self.scale,
                                  {k: s * v for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussianPolynomial):
            return NotImplemented
        return (self.n, self.scale) == (other.n, other.scale) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.scale, tuple(sorted(self.coeffs))))

    def __repr__(self):
        return (f"GaussianPolynomial(n={self.n}, scale={self.scale}, "
                f"{len(self.coeffs)} terms)")

    # -- generators -------------------------------------------------------

    def mul_z(self, j: int) -> "GaussianPolynomial":
        out = {}
        for (a, b), c in self.coeffs.items():
            aa = list(a)
            aa[j] += 1
            out[(tuple(aa), b)] = c
        return GaussianPolynomial(self.n, self.scale, out)

    def mul_zbar(self, j: int) -> "GaussianPolynomial":
        out = {}
        for (a, b), c in self.coeffs.items():
            bb = list(b)
            bb[j] += 1
            out[(a, tuple(bb))] = c
        return GaussianPolynomial(self.n, self.scale, out)

    def dz(self, j: int) -> "GaussianPolynomial":
        """d/dz_j of the full Gaussian-weighted function."""
        out: Dict[TermKey, object] = {}
        s4 = self.scale / 4
        for (a, b), c in self.coeffs.items():
            if a[j]:
                aa = list(a)
                aa[j] -= 1
                key = (tuple(aa), b)
                out[key] = out.get(key, 0) + a[j] * c
            bb = list(b)
            bb[j] += 1
            key = (a, tuple(bb))
            out[key] = out.get(key, 0) - s4 * c
        return GaussianPolynomial(self.n, self.scale, out)

    def dzbar(self, j: int) -> "GaussianPolynomial":
        out: Dict[TermKey, object] = {}
        s4 = self.scale / 4
        for (a, b), c in self.coeffs.items():
            if b[j]:
                bb = list(b)
                bb[j] -= 1
                key = (a, tuple(bb))
                out[key] = out.get(key, 0) + b[j] * c
            aa = list(a)
            aa[j] += 1
            key = (tuple(aa), b)
            out[key] = out.get(key, 0) - s4 * c
        return GaussianPolynomial(self.n, self.scale, out)

    def laplacian(self) -> "GaussianPolynomial":
        """4 sum_j d^2/dz_j dzbar_j of the Gaussian-weighted function."""
        out = GaussianPolynomial(self.n, self.scale, {})
        for j in range(self.n):
            out = out + self.dz(j).dzbar(j).scale_by(4)
        return out

    def mul_abs2(self) -> "GaussianPolynomial":
        """Multiply by |z|^2 = sum_j z_j zbar_j."""
        out = GaussianPolynomial(self.n, self.scale, {})
        for j in range(self.n):
            out = out + self.mul_z(j).mul_zbar(j)
        return out

    def mul_bigraded(self, P: BigradedPolynomial) -> "GaussianPolynomial":
        if P.n != self.n:
            raise ValueError("dimension mismatch")
        out: Dict[TermKey, object] = {}
        for (a1, b1), c1 in P.coeffs.items():
            for (a2, b2), c2 in self.coeffs.items():
                key = (tuple(x + y for x, y in zip(a1, a2)),
                       tuple(x + y for x, y in zip(b1, b2)))
                out[key] = out.get(key, 0) + c1 * c2
        return GaussianPolynomial(self.n, self.scale, out)

    def eval(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=complex)
        r2 = np.sum(np.abs(pts) ** 2, axis=-1)
        out = np.zeros(pts.shape[:-1], dtype=complex)
        cpts = np.conj(pts)
        for (a, b), c in self.coeffs.items():
            term = np.full(pts.shape[:-1], scalar_to_complex(c))
            for j in range(self.n):
                if a[j]:
                    term = term * pts[..., j] ** a[j]
                if b[j]:
                    term = term * cpts[..., j] ** b[j]
            out += term
        return out * np.exp(-float(self.scale) * r2 / 4.0)


# ----------------------------------------------------------------------
# The operator family
# ----------------------------------------------------------------------

def _check_scale(f: GaussianPolynomial, lam) -> Q:
    lam = as_q(lam)
    if not lam:
        raise ValueError("lambda must be nonzero")
    if abs(lam) != f.scale:
        raise ValueError(f"operator scale |lambda|={abs(lam)} does not match "
                         f"Gaussian scale {f.scale}")
    return lam


def apply_W(j: int, lam, f: GaussianPolynomial) -> GaussianPolynomial:
    """(d/dz_j - (lam/4) zbar_j) f, exact."""
    lam = _check_scale(f, lam)
    return f.dz(j) + f.mul_zbar(j).scale_by(-lam / 4)


def apply_Wplus(j: int, lam, f: GaussianPolynomial) -> GaussianPolynomial:
    """(d/dzbar_j + (lam/4) z_j) f, exact."""
    lam = _check_scale(f, lam)
    return f.dzbar(j) + f.mul_z(j).scale_by(lam / 4)


def apply_word(word, lam, f: GaussianPolynomial) -> GaussianPolynomial:
    """Apply a right-to-left word of ('W'|'W+', j) generators."""
    out = f
    for kind, j in reversed(list(word)):
        out = apply_W(j, lam, out) if kind == "W" else apply_Wplus(j, lam, out)
    return out


def _apply_power(f: GaussianPolynomial, lam, kind: str, idx: MultiIndex) -> GaussianPolynomial:
    out = f
    for j, m in enumerate(idx):
        for _ in range(m):
            out = apply_W(j, lam, out) if kind == "W" else apply_Wplus(j, lam, out)
    return out


def apply_weyl_poly(P: BigradedPolynomial, lam, f: GaussianPolynomial) -> GaussianPolynomial:
    """P(W): sum c_{alpha beta} (W+)^alpha W^beta applied to f (exact)."""
    if P.n != f.n:
        raise ValueError("dimension mismatch between symbol and function")
    out = GaussianPolynomial(f.n, f.scale, {})
    for (alpha, beta), c in P.coeffs.items():
        g = _apply_power(f, lam, "W", beta)
        g = _apply_power(g, lam, "W+", alpha)
        out = out + g.scale_by(c)
    return out


def apply_tau(P: BigradedPolynomial, lam, f: GaussianPolynomial) -> GaussianPolynomial:
    """tau(P): sum c_{alpha beta} (W+)^beta W^alpha applied to f (exact)."""
    if P.n != f.n:
        raise ValueError("dimension mismatch between symbol and function")
    out = GaussianPolynomial(f.n, f.scale, {})
    for (alpha, beta), c in P.coeffs.items():
        g = _apply_power(f, lam, "W", alpha)
        g = _apply_power(g, lam, "W+", beta)
        out = out + g.scale_by(c)
    return out


def apply_tau_prime(P: BigradedPolynomial, lam, f: GaussianPolynomial) -> GaussianPolynomial:
    """tau'(P): sum c_{alpha beta} W^alpha (W+)^beta applied to f (exact)."""
    if P.n != f.n:
        raise ValueError("dimension mismatch between symbol and function")
    out = GaussianPolynomial(f.n, f.scale, {})
    for (alpha, beta), c in P.coeffs.items():
        g = _apply_power(f, lam, "W+", beta)
        g = _apply_power(g, lam, "W", alpha)
        out = out + g.scale_by(c)
    return out


def commutator_residual(j: int, lam, f: GaussianPolynomial) -> GaussianPolynomial:
    """[W+_j, -W_j] f - (lam/2) f; identically zero."""
    lam_q = as_q(lam)
    a = apply_Wplus(j, lam, apply_W(j, lam, f).scale_by(-1))
    b = apply_W(j, lam, apply_Wplus(j, lam, f)).scale_by(-1)
    return a - b - f.scale_by(lam_q / 2)


# ----------------------------------------------------------------------
# Laguerre functions as Gaussian polynomials
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def phi_profile_on(k: int, gamma: int, n: int) -> GaussianPolynomial:
    """phi_k^{gamma-1}(|z|) as an exact Gaussian polynomial on C^n (scale 1).

    L_k^{gamma-1}(t) with t = sum z_j zbar_j / 2, expanded multinomially;
    gamma = n gives phi_k^{n-1} itself, larger gamma the dimension-shifted
    radial profiles appearing on the right side of the ladder identities.
    """
    coeffs = laguerre_coeffs(k, gamma - 1)
    table: Dict[TermKey, object] = {}
    for m, c in enumerate(coeffs):
        if not c:
            continue
        scale_m = c / Q(2) ** m
        for alpha in compositions(m, n):
            w = Q(math.factorial(m))
            for a in alpha:
                w = w / math.factorial(a)
            key = (alpha, alpha)
            table[key] = table.get(key, 0) + scale_m * w
    return GaussianPolynomial(n, 1, table)


def phi_gaussian(k: int, n: int) -> GaussianPolynomial:
    """phi_k^{n-1} as an exact Gaussian polynomial (scale 1)."""
    return phi_profile_on(k, n, n)


def monomial_ladder_residual(p: int, q: int, k: int, n: int) -> GaussianPolynomial:
    """Residual of (W+_1)^p (W_2)^q phi_k = (-2)^{-p-q} z_1^p zbar_2^q phi_{k-p}
    at lambda = 1, including the vanishing branch k < p.  Exactly zero."""
    if q >= 1 and n < 2:
        raise ValueError("q >= 1 needs a second coordinate (n >= 2)")
    lhs = phi_gaussian(k, n)
    for _ in range(q):
        lhs = apply_W(1, 1, lhs)
    for _ in range(p):
        lhs = apply_Wplus(0, 1, lhs)
    if k < p:
        return lhs
    gamma = n + p + q
    prof = phi_profile_on(k - p, gamma, n)
    alpha = tuple([p] + [0] * (n - 1))
    beta = tuple([0, q] + [0] * (n - 2)) if n >= 2 else (q,)
    mono = BigradedPolynomial.monomial(n, alpha, beta)
    rhs = prof.mul_bigraded(mono).scale_by(Q(1, (-2) ** (p + q)))
    return lhs - rhs


def harmonic_ladder_residual(P: BigradedPolynomial, k: int, n: int, lam: int,
                             convention: str = "resolved") -> GaussianPolynomial:
    """Residual of P(W) phi_k = (-2)^{-p-q} P phi_{k-drop}^{n+p+q-1}, lambda = +-1.

    convention="resolved" (default): drop p for lam=+1, drop q for lam=-1,
    constant (-2)^{-(p+q)} for both signs.  convention="as-stated" keeps the
    alternative branch pairing (drop q for lam=+1, drop p for lam=-1) with
    constant (-2*lam)^{-(p+q)}; it is provided to demonstrate, in reports,
    which pairing actually verifies.
    """
    if lam not in (1, -1):
        raise ValueError("ladder identities are checked at lambda = +1 or -1")
    if not P.laplacian().is_zero():
        raise ValueError("symbol must be harmonic")
    p, q = P.p, P.q
    f = phi_gaussian(k, n)
    lhs = apply_weyl_poly(P, lam, f)
    if convention == "resolved":
        drop = p if lam == 1 else q
        const = Q(1, (-2) ** (p + q))
    elif convention == "as-stated":
        drop = q if lam == 1 else p
        const = Q(1, (-2 * lam) ** (p + q))
    else:
        raise ValueError(f"unknown convention {convention!r}")
    if k < drop:
        return lhs
    gamma = n + p + q
    prof = phi_profile_on(k - drop, gamma, n)
    rhs = prof.mul_bigraded(P).scale_by(const)
    return lhs - rhs


def rotate_gaussian(sigma, f: GaussianPolynomial) -> GaussianPolynomial:
    """z -> f(sigma^{-1} z) for exact unitary sigma (the Gaussian is radial).

    Splits the polynomial part by bidegree, reuses the exact bigraded
    substitution, and reassembles; coefficients stay exact.
    """
    from .harmonics import rotate_polynomial
    by_degree: Dict[Tuple[int, int], Dict[TermKey, object]] = {}
    for (a, b), c in f.coeffs.items():
        by_degree.setdefault((sum(a), sum(b)), {})[(a, b)] = c
    out = GaussianPolynomial(f.n, f.scale, {})
    for (p, q), coeffs in by_degree.items():
        piece = rotate_polynomial(sigma, BigradedPolynomial(f.n, p, q, coeffs))
        out = out + GaussianPolynomial(f.n, f.scale, piece.coeffs)
    return out


def special_hermite_residual(k: int, n: int, shift: int = 0) -> GaussianPolynomial:
    """(-Laplacian + |z|^2/4 - (2k + n + shift)) phi_k^{n-1}; zero for shift=0."""
    f = phi_gaussian(k, n)
    ev = Q(2 * k + n + shift)
    return f.laplacian().scale_by(-1) + f.mul_abs2().scale_by(Q(1, 4)) - f.scale_by(ev)


def neg_i_rotation(f: GaussianPolynomial) -> GaussianPolynomial:
    """-i N f with N the angular momentum sum_j (x_j d/dy_j - y_j d/dx_j).

    On z^alpha zbar^beta times a radial Gaussian this multiplies the term by
    |alpha| - |beta|.
    """
    return GaussianPolynomial(
        f.n, f.scale, {key: (sum(key[0]) - sum(key[1])) * v
                       for key, v in f.coeffs.items()})


def twisted_laplacian_residual(P: BigradedPolynomial, m: int, n: int,
                               k_target: int) -> GaussianPolynomial:
    """Residual of (-Delta + |z|^2/4 - iN) [P phi_m^{gamma-1}] = (2 k + n) (...).

    With gamma = n + p + q and m = k - p every layer of a spectral projection
    is an exact eigenfunction of the full twisted Laplacian; the rotation term
    -iN is what the rotation-free operator misses off the radial case.
    """
    gamma = n + P.p + P.q
    g = phi_profile_on(m, gamma, n).mul_bigraded(P)
    ev = Q(2 * k_target + n)
    return (g.laplacian().scale_by(-1) + g.mul_abs2().scale_by(Q(1, 4))
            + neg_i_rotation(g) - g.scale_by(ev))


# ----------------------------------------------------------------------
# Formal-series ladder for generalized degree
# ----------------------------------------------------------------------

def generalized_ladder_residuals(a, p: int, q: int, n: int, trunc: int) -> List:
    """Coefficient residuals of (W+_1)^p (W_2)^q phi_a = (-2)^{-p-q} z_1^p zbar_2^q phi_{a+p}.

    Works on truncated power series in t = |z|^2/2 with exact coefficients.
    Under the (alpha, beta, G)-calculus, W+_1 maps G to G'/2 (adding z_1) and
    W_2 maps G to (G' - G)/2 (adding zbar_2); the right side uses the series
    of M_{a+p}^{n+p+q-1}.  Returns residuals on orders unaffected by
    truncation; all exactly zero.
    """
    if trunc < p + q + 4:
        raise ValueError("truncation too small for the requested word")
    G = list(m_series_coeffs(a, n, trunc))

    def d_dt(series):
        return [(s + 1) * series[s + 1] for s in range(len(series) - 1)]

    for _ in range(q):
        dG = d_dt(G)
        G = [(dG[s] - G[s]) / 2 for s in range(len(dG))]
    for _ in range(p):
        dG = d_dt(G)
        G = [c / 2 for c in dG]
    gamma = n + p + q
    rhs = m_series_coeffs(a + p, gamma, trunc)
    const = Q(1, (-2) ** (p + q))
    safe = trunc - (p + q)
    return [G[s] - const * rhs[s] for s in range(safe + 1)]
