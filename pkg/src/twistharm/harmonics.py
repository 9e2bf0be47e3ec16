"""Bigraded solid harmonics H_{p,q} on C^n: exact bases and sphere analysis.

H_{p,q} is the kernel of the Laplacian (4 sum_j d^2/dz_j dzbar_j) acting from
the bidegree-(p,q) space to bidegree (p-1,q-1).  Bases are computed as exact
rational null spaces and orthogonalized under the alpha!beta!-weighted
coefficient inner product; each element also carries its exact mean-measure
sphere norm, and the two norms are proportional on each H_{p,q} (the ratio is
recorded and checked).

dim H_{p,q}(C^n) for n >= 2:

    d(p, q) = (p+q+n-1) (p+n-2)! (q+n-2)! / (p! q! (n-1)! (n-2)!)

For n = 1 the kernel is 1-dimensional when p*q = 0 and trivial otherwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from ._rational import Q, QQi, q_to_fraction
from .polynomials import (BigradedPolynomial, MultiIndex, compositions,
                          dim_poly_space, surface_area)
from .quadrature import SphereRule, sphere_rule_for_degree, unitary_check

_MODP = 2147483647  # 2^31 - 1, prime


def dim_hpq(n: int, p: int, q: int) -> int:
    """Dimension of H_{p,q}(C^n); exact integer."""
    if n < 1 or p < 0 or q < 0:
        raise ValueError("need n >= 1 and p, q >= 0")
    if n == 1:
        return 1 if p == 0 or q == 0 else 0
    num = (p + q + n - 1) * math.factorial(p + n - 2) * math.factorial(q + n - 2)
    den = (math.factorial(p) * math.factorial(q)
           * math.factorial(n - 1) * math.factorial(n - 2))
    d, rem = divmod(num, den)
    if rem:
        raise ArithmeticError("dimension formula returned a non-integer")
    return d


def monomial_keys(n: int, p: int, q: int) -> List[Tuple[MultiIndex, MultiIndex]]:
    return [(a, b) for a in compositions(p, n) for b in compositions(q, n)]


def laplacian_matrix_rows(n: int, p: int, q: int):
    """Integer matrix of the Laplacian in the monomial bases (rows x cols)."""
    cols = monomial_keys(n, p, q)
    rows = monomial_keys(n, p - 1, q - 1)
    row_index = {key: i for i, key in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for jcol, (alpha, beta) in enumerate(cols):
        for j in range(n):
            if alpha[j] and beta[j]:
                a = list(alpha)
                b = list(beta)
                w = 4 * a[j] * b[j]
                a[j] -= 1
                b[j] -= 1
                mat[row_index[(tuple(a), tuple(b))]][jcol] = w
    return mat, rows, cols


def laplacian_rank(n: int, p: int, q: int) -> int:
    """Exact rank of the Laplacian on the (p,q) space.

    Modular elimination gives rank mod p <= rank over Q; when the modular rank
    hits the row count it is a certificate of full row rank, hence exact.
    Otherwise falls back to exact rational elimination.
    """
    if p == 0 or q == 0:
        return 0
    mat, rows, cols = laplacian_matrix_rows(n, p, q)
    a = np.array(mat, dtype=np.int64) % _MODP
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if a[r, col]:
                piv = r
                break
        if piv is None:
            continue
        a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), _MODP - 2, _MODP)
        a[rank] = (a[rank] * inv) % _MODP
        mask = a[rank + 1:, col] != 0
        if mask.any():
            a[rank + 1:][mask] = (a[rank + 1:][mask]
                                  - np.outer(a[rank + 1:, col][mask], a[rank])) % _MODP
        rank += 1
        if rank == nrows:
            return nrows  # full row rank certified over Q
    # modular rank below row count: certify with exact arithmetic
    return _rank_exact(mat)


def _rank_exact(mat) -> int:
    rows = [[Q(v) for v in row] for row in mat]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pl = rows[rank][col]
        rows[rank] = [v / pl for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def laplacian_kernel_dim(n: int, p: int, q: int) -> int:
    """dim ker of the Laplacian on the (p,q) space, exact."""
    return dim_poly_space(n, p, q) - laplacian_rank(n, p, q)


def _nullspace_exact(mat, ncols: int) -> List[List[Q]]:
    """Exact rational null space basis (free-variable form) of an int matrix."""
    rows = [[Q(v) for v in row] for row in mat if any(row)]
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pl = rows[rank][col]
        rows[rank] = [v / pl for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Q(0)] * ncols
        vec[fc] = Q(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


@dataclass
class HarmonicBasis:
    """Exact orthogonal basis of H_{p,q}(C^n).

    elements are pairwise orthogonal under the coefficient inner product and
    (equivalently, by irreducibility) under the sphere mean measure; the
    proportionality ratio kappa = mean_norm_sq / coeff_norm_sq is constant
    across the space and stored once.
    """

    n: int
    p: int
    q: int
    elements: List[BigradedPolynomial]
    coeff_norms_sq: List[Q]
    mean_norms_sq: List[Q]
    kappa: Q

    def __len__(self):
        return len(self.elements)

    def eval_matrix(self, points: np.ndarray) -> np.ndarray:
        """Stack of element values at points (..., n) -> (len, ...)."""
        return np.stack([e.eval(points) for e in self.elements], axis=0)


@lru_cache(maxsize=None)
def harmonic_basis(n: int, p: int, q: int) -> HarmonicBasis:
    """Exact orthogonalized basis of H_{p,q}(C^n)."""
    keys = monomial_keys(n, p, q)
    if p == 0 or q == 0:
        vecs = [[Q(1) if i == j else Q(0) for i in range(len(keys))]
                for j in range(len(keys))]
    else:
        mat, _, cols = laplacian_matrix_rows(n, p, q)
        vecs = _nullspace_exact(mat, len(cols))
    polys = []
    for vec in vecs:
        coeffs = {keys[i]: vec[i] for i in range(len(keys)) if vec[i]}
        polys.append(BigradedPolynomial(n, p, q, coeffs))
    # exact Gram-Schmidt in the coefficient inner product (no normalization)
    ortho: List[BigradedPolynomial] = []
    norms: List[Q] = []
    for v in polys:
        w = v
        for u, nu in zip(ortho, norms):
            c = w.coeff_inner(u)
            if c:
                w = w - u.scale(c / nu)
        if not w.is_zero():
            ortho.append(w)
            norms.append(w.coeff_norm_sq())
    mean_norms = [e.sphere_mean_norm_sq() for e in ortho]
    expected = dim_hpq(n, p, q)
    if len(ortho) != expected:
        raise ArithmeticError(
            f"kernel rank {len(ortho)} != dimension formula {expected} for "
            f"(n,p,q)=({n},{p},{q})")
    if ortho:
        kappa = mean_norms[0] / norms[0]
        for mn, cn in zip(mean_norms, norms):
            if mn * norms[0] != mean_norms[0] * cn:
                raise ArithmeticError("sphere/coefficient norm ratio not constant on H_{p,q}")
    else:
        kappa = Q(0)
    return HarmonicBasis(n, p, q, ortho, norms, mean_norms, kappa)


def canonical_harmonic(n: int, p: int, q: int) -> BigradedPolynomial:
    """z_1^p zbar_2^q (n >= 2); for n = 1 requires p*q = 0."""
    if n == 1:
        if p and q:
            raise ValueError("H_{p,q}(C) is trivial for p, q >= 1")
        alpha, beta = (p,), (q,)
        return BigradedPolynomial.monomial(1, alpha, beta)
    alpha = tuple([p] + [0] * (n - 1))
    beta = tuple([0, q] + [0] * (n - 2))
    return BigradedPolynomial.monomial(n, alpha, beta)


# ----------------------------------------------------------------------
# Rotation and sup-norm estimates
# ----------------------------------------------------------------------

def _entry_is_exact(v) -> bool:
    return isinstance(v, (int, QQi)) or type(v).__name__ in ("mpq", "Fraction")


def rotate_polynomial(sigma, P: BigradedPolynomial) -> BigradedPolynomial:
    """Coefficients of z -> P(sigma^{-1} z) for unitary sigma.

    Exact when sigma has Gaussian-rational entries (sigma^{-1} = sigma^*);
    float entries produce complex-float coefficients after a unitarity check.
    """
    n = P.n
    rows = list(sigma) if not isinstance(sigma, np.ndarray) else [list(r) for r in sigma]
    exact = all(_entry_is_exact(v) for row in rows for v in row)
    if exact:
        inv = [[QQi.coerce(rows[j][i]).conjugate() for j in range(n)] for i in range(n)]
        ident = [[sum((QQi.coerce(rows[i][k]) * inv[k][j] for k in range(n)), QQi(0))
                  for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                if ident[i][j] != (1 if i == j else 0):
                    raise ValueError("matrix is not unitary (exact check)")
        sub_z = [[inv[i][j] for j in range(n)] for i in range(n)]
    else:
        arr = np.asarray(rows, dtype=complex)
        if not unitary_check(arr):
            raise ValueError("matrix is not unitary within 1e-12")
        inv_f = arr.conj().T
        sub_z = [[complex(inv_f[i, j]) for j in range(n)] for i in range(n)]

    one = Q(1) if exact else 1.0 + 0.0j

    def expand_linear(row, conj: bool):
        # (sum_j row[j] z_j)^m expansions are built by repeated multiplication
        coeffs = {}
        for j, cval in enumerate(row):
            c = cval.conjugate() if conj else cval
            if isinstance(c, QQi) and not c:
                continue
            if not isinstance(c, QQi) and c == 0:
                continue
            idx = [0] * n
            idx[j] = 1
            key = (tuple(idx), (0,) * n) if not conj else ((0,) * n, tuple(idx))
            coeffs[key] = c
        deg = (1, 0) if not conj else (0, 1)
        return BigradedPolynomial(n, deg[0], deg[1], coeffs)

    lin_z = [expand_linear([sub_z[i][j] for j in range(n)], conj=False) for i in range(n)]
    lin_zb = [expand_linear([sub_z[i][j] for j in range(n)], conj=True) for i in range(n)]

    out = BigradedPolynomial.zero(n, P.p, P.q)
    for (alpha, beta), c in P.coeffs.items():
        term = BigradedPolynomial.monomial(n, (0,) * n, (0,) * n, one)
        for i in range(n):
            for _ in range(alpha[i]):
                term = term * lin_z[i]
            for _ in range(beta[i]):
                term = term * lin_zb[i]
        out = out + term.scale(c)
    return out


def sup_norm_bound_check(P: BigradedPolynomial, samples: int = 10000,
                         seed: int = 7) -> dict:
    """Sampled sup over the sphere against sqrt(d(p,q)) * coefficient norm."""
    if P.is_zero():
        raise ValueError("sup-norm check requires a nonzero polynomial")
    n = P.n
    rng = np.random.default_rng(seed)
    if n <= 2:
        rule = sphere_rule_for_degree(n, max(P.p + P.q, 2) + 20)
        pts = rule.points
        if pts.shape[0] < samples:
            extra = rng.normal(size=(samples - pts.shape[0], n)) \
                + 1j * rng.normal(size=(samples - pts.shape[0], n))
            extra /= np.linalg.norm(extra, axis=1, keepdims=True)
            pts = np.concatenate([pts, extra], axis=0)
    else:
        pts = rng.normal(size=(samples, n)) + 1j * rng.normal(size=(samples, n))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    vals = np.abs(P.eval(pts))
    sup_est = float(np.max(vals))
    d = dim_hpq(n, P.p, P.q)
    bound = math.sqrt(d) * math.sqrt(float(P.coeff_norm_sq()))
    return {"sup_estimate": sup_est, "bound": bound, "passed": sup_est <= bound * (1 + 1e-12)}


# ----------------------------------------------------------------------
# Spherical harmonic coefficients of sampled functions
# ----------------------------------------------------------------------

def sph_coefficients(f: Callable[[np.ndarray], np.ndarray], p: int, q: int,
                     basis: HarmonicBasis, radii: Sequence[float],
                     rule: SphereRule | None = None) -> np.ndarray:
    """Table a_j^{p,q}(rho): projections of f onto the basis on each sphere.

    a_j(rho) = <f(rho .), Y_j>_mu / ||Y_j||_mu^2 with mu the normalized sphere
    measure, quadratured by `rule`.  Returns shape (len(basis), len(radii)).
    """
    rule = rule or sphere_rule_for_degree(basis.n, p + q + 12)
    radii = np.asarray(radii, dtype=float)
    pts = rule.points
    out = np.zeros((len(basis), len(radii)), dtype=complex)
    yvals = basis.eval_matrix(pts)
    wy = rule.weights[None, :] * np.conj(yvals)
    for i, rho in enumerate(radii):
        fv = np.asarray(f(rho * pts), dtype=complex)
        if not np.all(np.isfinite(fv)):
            raise ValueError(f"non-finite samples on sphere of radius {rho}")
        proj = wy @ fv
        out[:, i] = proj / np.array([float(m) for m in basis.mean_norms_sq])
    return out


# ----------------------------------------------------------------------
# JSON export / import
# ----------------------------------------------------------------------

def basis_to_json(basis: HarmonicBasis) -> str:
    elements = []
    for e in basis.elements:
        terms = []
        for (alpha, beta), c in e.terms():
            cq = QQi.coerce(c) if not isinstance(c, QQi) else c
            re = q_to_fraction(cq.re)
            im = q_to_fraction(cq.im)
            terms.append({
                "alpha": list(alpha), "beta": list(beta),
                "re_num": re.numerator, "re_den": re.denominator,
                "im_num": im.numerator, "im_den": im.denominator,
            })
        elements.append(terms)
    return json.dumps({"n": basis.n, "p": basis.p, "q": basis.q,
                       "elements": elements}, sort_keys=True)


def basis_from_json(text: str) -> HarmonicBasis:
    data = json.loads(text)
    n, p, q = data["n"], data["p"], data["q"]
    polys = []
    for terms in data["elements"]:
        coeffs = {}
        for t in terms:
            re = Q(t["re_num"], t["re_den"])
            im = Q(t["im_num"], t["im_den"])
            coeffs[(tuple(t["alpha"]), tuple(t["beta"]))] = QQi(re, im) if im else re
        polys.append(BigradedPolynomial(n, p, q, coeffs))
    norms = [e.coeff_norm_sq() for e in polys]
    means = [e.sphere_mean_norm_sq() for e in polys]
    kappa = means[0] / norms[0] if polys else Q(0)
    return HarmonicBasis(n, p, q, polys, norms, means, kappa)
