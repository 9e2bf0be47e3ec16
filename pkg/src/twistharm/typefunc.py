"""Type functions: radial profile times bigraded harmonic, with exact expansions.

A type function is f(z) = profile(|z|) P(z) with P in H_{p,q}.  Profiles of
the form (rational polynomial in x) * e^{-x/2}, x = r^2/2, have *exact*
finite expansions in the Laguerre functions of any order, obtained by a
triangular solve against the leading coefficients (-1)^j / j!.  That makes
planted mixtures of type functions exact oracles: their spectral projections
have closed forms with rational coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ._rational import Q, QQi
from .laguerre import eval_phi_radial, laguerre_coeffs
from .polynomials import BigradedPolynomial
from .harmonics import canonical_harmonic, harmonic_basis


@dataclass(frozen=True)
class RadialProfile:
    """p(x) e^{-x/2} with x = r^2/2 and exact rational coefficients of p."""

    poly_x: Tuple[Q, ...]

    @staticmethod
    def from_x_poly(coeffs: Sequence) -> "RadialProfile":
        return RadialProfile(tuple(Q(c) for c in coeffs))

    @staticmethod
    def gaussian() -> "RadialProfile":
        return RadialProfile((Q(1),))

    @staticmethod
    def phi(m: int, gamma: int) -> "RadialProfile":
        """The profile of phi_m^{gamma-1}."""
        return RadialProfile(tuple(laguerre_coeffs(m, gamma - 1)))

    def values(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        x = r * r / 2.0
        out = np.zeros_like(x)
        for c in reversed(self.poly_x):
            out = out * x + float(c)
        return out * np.exp(-x / 2.0)

    def degree(self) -> int:
        d = len(self.poly_x) - 1
        while d > 0 and not self.poly_x[d]:
            d -= 1
        return d

    def laguerre_expansion(self, gamma: int) -> List[Q]:
        """Exact coefficients d_j with p(x) = sum_j d_j L_j^{gamma-1}(x).

        Then profile(r) = sum_j d_j phi_j^{gamma-1}(r): the expansion of the
        profile in the weighted-orthogonal family of any order gamma.
        """
        work = list(self.poly_x)
        D = self.degree()
        work = work[:D + 1] + [Q(0)] * (D + 1 - len(work))
        out = [Q(0)] * (D + 1)
        for j in range(D, -1, -1):
            lead = Q((-1) ** j, math.factorial(j))
            d_j = work[j] / lead
            out[j] = d_j
            if d_j:
                for i, c in enumerate(laguerre_coeffs(j, gamma - 1)):
                    work[i] = work[i] - d_j * c
        assert all(not c for c in work), "triangular Laguerre solve left a remainder"
        return out


@dataclass(frozen=True)
class TypeComponent:
    """coeff * profile(|z|) * P(z) with P in H_{p,q}."""

    coeff: complex
    profile: RadialProfile
    P: BigradedPolynomial

    @property
    def p(self) -> int:
        return self.P.p

    @property
    def q(self) -> int:
        return self.P.q


@dataclass
class TypeFunction:
    """Finite mixture of type components on C^n."""

    n: int
    components: List[TypeComponent]
    label: str = ""

    def __call__(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        r = np.sqrt(np.sum(np.abs(z) ** 2, axis=-1))
        out = np.zeros(z.shape[:-1], dtype=complex)
        for c in self.components:
            out = out + c.coeff * c.profile.values(r) * c.P.eval(z)
        return out

    def max_pq(self) -> Tuple[int, int]:
        return (max((c.p for c in self.components), default=0),
                max((c.q for c in self.components), default=0))

    def planted_projection(self, k: int) -> List[Tuple[complex, BigradedPolynomial, int, int]]:
        """Closed form of f x phi_k^{n-1} as [(scalar, P, degree, gamma), ...].

        Each entry contributes scalar * P(z) * phi_degree^{gamma-1}(|z|); uses
        the exact Laguerre expansion of each profile.  Components with k < p
        drop out (the vanishing branch).
        """
        out = []
        for c in self.components:
            if k < c.p:
                continue
            gamma = self.n + c.p + c.q
            d = c.profile.laguerre_expansion(gamma)
            m = k - c.p
            if m < len(d) and d[m]:
                scalar = c.coeff * (2.0 * math.pi) ** self.n * float(d[m])
                out.append((scalar, c.P, m, gamma))
        return out

    def eval_planted_projection(self, k: int, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        r = np.sqrt(np.sum(np.abs(z) ** 2, axis=-1))
        out = np.zeros(z.shape[:-1], dtype=complex)
        for scalar, P, m, gamma in self.planted_projection(k):
            out = out + scalar * P.eval(z) * eval_phi_radial(m, gamma, r)
        return out

    def planted_norm_sq_projection(self, k: int) -> float:
        """||f x phi_k||_{L^2(C^n)}^2 from the closed form (exact layering)."""
        from .laguerre import phi_norm_sq
        from .polynomials import surface_area
        total = 0.0
        # group by (p, q, degree, gamma) summing polynomial parts first
        groups: Dict[Tuple[int, int, int, int], List[Tuple[complex, BigradedPolynomial]]] = {}
        for scalar, P, m, gamma in self.planted_projection(k):
            groups.setdefault((P.p, P.q, m, gamma), []).append((scalar, P))
        for (p, q, m, gamma), parts in groups.items():
            # mean-measure norm of the summed polynomial; exact via moments
            acc: Optional[BigradedPolynomial] = None
            for scalar, P in parts:
                term = P.scale(complex(scalar))
                acc = term if acc is None else acc + term
            mean_sq = 0.0
            for (a1, b1), c1 in acc.coeffs.items():
                for (a2, b2), c2 in acc.coeffs.items():
                    left = tuple(x + y for x, y in zip(a1, b2))
                    right = tuple(x + y for x, y in zip(b1, a2))
                    if left != right:
                        continue
                    mom = math.factorial(self.n - 1)
                    for v in left:
                        mom *= math.factorial(v)
                    mom /= math.factorial(self.n - 1 + sum(left))
                    mean_sq += (c1 * np.conj(c2)).real * mom
            total += surface_area(self.n) * mean_sq * float(phi_norm_sq(m, gamma))
        return total


# ----------------------------------------------------------------------
# Seeded corpus of planted mixtures
# ----------------------------------------------------------------------

def _rand_profile(rng: np.random.Generator, max_deg: int = 2) -> RadialProfile:
    deg = int(rng.integers(0, max_deg + 1))
    coeffs = [Q(int(rng.integers(-3, 4)), int(rng.integers(1, 4))) for _ in range(deg + 1)]
    if not any(coeffs):
        coeffs[0] = Q(1)
    return RadialProfile.from_x_poly(coeffs)


def corpus(seed: int = 20250810) -> List[TypeFunction]:
    """Ten seeded planted mixtures: six on C, four on C^2."""
    rng = np.random.default_rng(seed)
    out: List[TypeFunction] = []
    n1_pq = [[(0, 0)], [(1, 0)], [(0, 1), (0, 0)], [(2, 0), (1, 0)], [(0, 0), (3, 0)],
             [(0, 2)]]
    for i, pqs in enumerate(n1_pq):
        comps = []
        for (p, q) in pqs:
            coeff = complex(rng.normal(), rng.normal()) * 0.8
            comps.append(TypeComponent(coeff, _rand_profile(rng), canonical_harmonic(1, p, q)))
        out.append(TypeFunction(1, comps, label=f"n1-case{i}"))
    n2_pq = [[(0, 0)], [(1, 0)], [(1, 1), (0, 0)], [(1, 0), (0, 1), (2, 0)]]
    for i, pqs in enumerate(n2_pq):
        comps = []
        for (p, q) in pqs:
            coeff = complex(rng.normal(), rng.normal()) * 0.7
            basis = harmonic_basis(2, p, q)
            pick = int(rng.integers(0, len(basis)))
            comps.append(TypeComponent(coeff, _rand_profile(rng), basis.elements[pick]))
        out.append(TypeFunction(2, comps, label=f"n2-case{i}"))
    return out
