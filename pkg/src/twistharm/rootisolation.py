"""Exact real-root isolation for rational polynomials via Sturm sequences.

Coefficients are cleared to integers, chains are kept primitive to control
coefficient growth, and all interval endpoints are exact rationals, so the
"no common zero" verdicts are certificates rather than float heuristics.
Floating refinement only ever happens inside a certified isolating interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ._rational import Q
from .laguerre import laguerre_coeffs

Poly = Tuple[int, ...]  # dense, ascending powers, integer coefficients


def clear_denominators(coeffs: Sequence[Q]) -> Poly:
    """Scale a rational polynomial to primitive integer coefficients."""
    denoms = [int(c.denominator) for c in coeffs]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // math.gcd(lcm, d)
    ints = [int(c.numerator) * (lcm // int(c.denominator)) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    while ints and ints[-1] == 0:
        ints.pop()
    return tuple(ints)


def poly_eval(poly: Sequence[int], x: Q) -> Q:
    out = Q(0)
    for c in reversed(poly):
        out = out * x + c
    return out


def poly_derivative(poly: Sequence[int]) -> Poly:
    return tuple(i * c for i, c in enumerate(poly) if i >= 1)


def _poly_rem_q(a: List[Q], b: List[Q]) -> List[Q]:
    a = a[:]
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        if not a[-1]:
            a.pop()
            continue
        f = a[-1] / lb
        shift = da - db
        for i, c in enumerate(b):
            a[i + shift] = a[i + shift] - f * c
        a.pop()
    while a and not a[-1]:
        a.pop()
    return a


def _primitive(coeffs: List[Q]) -> Poly:
    return clear_denominators(coeffs)


def sturm_chain(poly: Poly) -> List[Poly]:
    """Sturm chain of an integer polynomial (primitive at every level)."""
    if len(poly) <= 1:
        return [poly] if poly else [(0,)]
    chain: List[Poly] = [poly, poly_derivative(poly)]
    while len(chain[-1]) > 1:
        a = [Q(c) for c in chain[-2]]
        b = [Q(c) for c in chain[-1]]
        r = _poly_rem_q(a, b)
        if not r:
            break
        chain.append(_primitive([-c for c in r]))
    return chain


def sign_variations(chain: Sequence[Poly], x: Q) -> int:
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    count = 0
    for a, b in zip(signs, signs[1:]):
        if a != b:
            count += 1
    return count


def count_roots(chain: Sequence[Poly], lo: Q, hi: Q) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    return sign_variations(chain, lo) - sign_variations(chain, hi)


@dataclass(frozen=True)
class RootInterval:
    lo: Q
    hi: Q

    @property
    def width(self) -> Q:
        return self.hi - self.lo

    def midpoint_float(self) -> float:
        return float((self.lo + self.hi) / 2)

    def overlaps(self, other: "RootInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


def isolate_roots(poly: Poly, lo: Q, hi: Q,
                  chain: Optional[List[Poly]] = None) -> List[RootInterval]:
    """Disjoint isolating intervals for all distinct roots of poly in (lo, hi]."""
    if chain is None:
        chain = sturm_chain(poly)
    out: List[RootInterval] = []
    stack = [(Q(lo), Q(hi))]
    while stack:
        a, b = stack.pop()
        c = count_roots(chain, a, b)
        if c == 0:
            continue
        if c == 1:
            out.append(RootInterval(a, b))
            continue
        mid = (a + b) / 2
        if poly_eval(poly, mid) == 0:
            out.append(RootInterval(mid, mid))
            # peel an exact rational root: shrink around it until the
            # remaining halves see one root fewer each
            eps = (b - a) / 4
            while count_roots(chain, mid - eps, mid + eps) > 1:
                eps = eps / 2
            stack.append((a, mid - eps))
            stack.append((mid + eps, b))
        else:
            stack.append((a, mid))
            stack.append((mid, b))
    out.sort(key=lambda iv: iv.lo)
    return out


def refine_interval(poly: Poly, iv: RootInterval, resolution: Q) -> RootInterval:
    """Bisect a certified isolating interval below the requested width."""
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        return iv
    flo = poly_eval(poly, lo)
    if flo == 0:
        return RootInterval(lo, lo)
    fhi = poly_eval(poly, hi)
    if fhi == 0:
        return RootInterval(hi, hi)
    slo = flo > 0
    while hi - lo > resolution:
        mid = (lo + hi) / 2
        fm = poly_eval(poly, mid)
        if fm == 0:
            return RootInterval(mid, mid)
        if (fm > 0) == slo:
            lo = mid
        else:
            hi = mid
    return RootInterval(lo, hi)


# ----------------------------------------------------------------------
# Laguerre-specific scans
# ----------------------------------------------------------------------

_chain_cache: dict = {}


def laguerre_int_poly(k: int, order) -> Poly:
    return clear_denominators(laguerre_coeffs(k, order))


def laguerre_roots_isolated(k: int, order, xmax, resolution) -> List[RootInterval]:
    """Certified isolating intervals (refined below resolution) on (0, xmax]."""
    key = (k, str(Q(order)), str(Q(xmax)), str(Q(resolution)))
    if key in _chain_cache:
        return _chain_cache[key]
    poly = laguerre_int_poly(k, order)
    chain = sturm_chain(poly)
    ivs = isolate_roots(poly, Q(0), Q(xmax), chain)
    refined = [refine_interval(poly, iv, Q(resolution)) for iv in ivs]
    _chain_cache[key] = refined
    return refined


def common_zero_scan(k1: int, k2: int, order, xmax, resolution) -> List[dict]:
    """Coincidence candidates between real zeros of L_{k1} and L_{k2}.

    Isolates all roots of both polynomials on (0, xmax] exactly, refines each
    isolating interval below `resolution`, and reports every overlapping pair.
    An empty list certifies the two polynomials share no real zero on the
    interval at that resolution.
    """
    if k1 == k2:
        raise ValueError("degrees must differ")
    xmax = Q(xmax)
    resolution = Q(resolution)
    r1 = laguerre_roots_isolated(k1, order, xmax, resolution)
    r2 = laguerre_roots_isolated(k2, order, xmax, resolution)
    hits = []
    for a in r1:
        for b in r2:
            if a.overlaps(b):
                hits.append({
                    "k1": k1, "k2": k2, "order": str(Q(order)),
                    "interval_1": [str(a.lo), str(a.hi)],
                    "interval_2": [str(b.lo), str(b.hi)],
                })
    return hits


def value_separated_from_roots(k: int, order, x0, resolution) -> dict:
    """Certificate that L_k^order(x0) is nonzero (or flag closeness to a root).

    Returns {"nonzero": bool, "exact_value_sign": -1|0|1, "nearest_gap": str}.
    x0 is an exact rational query point (e.g. R^2/2 for a sphere radius R).
    """
    x0 = Q(x0)
    poly = laguerre_int_poly(k, order)
    v = poly_eval(poly, x0)
    if v == 0:
        return {"nonzero": False, "exact_value_sign": 0, "nearest_gap": "0"}
    ivs = laguerre_roots_isolated(k, order, max(Q(2) * x0 + 10, Q(10)), resolution)
    gap = None
    for iv in ivs:
        if iv.lo - resolution <= x0 <= iv.hi + resolution:
            return {"nonzero": True, "exact_value_sign": 1 if v > 0 else -1,
                    "nearest_gap": str(resolution), "near_root": True}
        d = min(abs(x0 - iv.lo), abs(x0 - iv.hi))
        gap = d if gap is None or d < gap else gap
    return {"nonzero": True, "exact_value_sign": 1 if v > 0 else -1,
            "nearest_gap": str(gap) if gap is not None else "inf", "near_root": False}
