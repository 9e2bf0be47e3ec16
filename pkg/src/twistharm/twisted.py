"""Twisted convolution and twisted spherical mean numerics on C^n (n <= 2).

The twisted convolution is

    (f x_lam g)(z) = int f(z - w) g(w) exp((i lam / 2) Im(z . wbar)) dw

quadratured with uniform trapezoid weights on [-L, L]^{2n}; closed-form
factors are evaluated exactly via callables (preferred), sampled factors by
multilinear interpolation.  The twisted spherical mean pairs f against a
(possibly polynomial-weighted) normalized surface measure on a sphere.

Calibration: the weighted functional equation has the verified shape

    phi_k x nu_t (z) = s * t^{2(p+q)} phi_{k-q}^{gamma-1}(t) P(z) phi_{k-q}^{gamma-1}(z)

for weight P in H_{p,q}, gamma = n+p+q, with a scalar s = s(k,p,q,n) that the
source material leaves unspecified; `calibrate_tsm_constant` fits it from
quadrature data and validates stability across radii and probe sets, and the
Hecke-Bochner check consumes the fitted value rather than a guessed formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from .gridfn import GridDataError, GridDomainError, GridFunction, require_inside
from .laguerre import (eval_phi, eval_phi_radial, phi_at_zero, phi_norm_sq,
                       radial_projection_constant)
from .polynomials import BigradedPolynomial, surface_area
from .quadrature import (RadialRule, SphereRule, grid_axis, radial_rule,
                         random_unitary, sphere_rule, sphere_rule_for_degree)

Func = Union[GridFunction, Callable[[np.ndarray], np.ndarray]]


class DecayError(ValueError):
    """Input does not decay fast enough for the truncated grid."""


class CalibrationError(RuntimeError):
    """Fitted constant not stable across radii / probe sets."""


class GuardrailError(ValueError):
    """Requested grid exceeds the desk-scale guardrails."""


# ----------------------------------------------------------------------
# Convolution geometry
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ConvGeometry:
    """Truncated uniform grid on [-L, L]^{2n} used for twisted convolutions."""

    n: int
    extent: float
    steps: int

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValueError("convolution grids support n = 1 or 2")
        if self.steps % 2 or self.steps <= 0:
            raise ValueError("steps must be a positive even integer")

    @property
    def h(self) -> float:
        return 2.0 * self.extent / self.steps

    @property
    def cell(self) -> float:
        return self.h ** (2 * self.n)


def default_geometry(n: int) -> ConvGeometry:
    """L chosen so exp(-L^2/4) is far below the target tolerances."""
    return ConvGeometry(1, 12.0, 256) if n == 1 else ConvGeometry(2, 8.0, 48)


@lru_cache(maxsize=8)
def _w_points(n: int, extent: float, steps: int) -> np.ndarray:
    ax = grid_axis(extent, steps)
    grids = np.meshgrid(*([ax] * (2 * n)), indexing="ij")
    w = np.stack([grids[2 * j] + 1j * grids[2 * j + 1] for j in range(n)], axis=-1)
    return w.reshape(-1, n)


def _as_values(f: Func, pts: np.ndarray) -> np.ndarray:
    if isinstance(f, GridFunction):
        return f.interp(pts)
    return np.asarray(f(pts), dtype=complex)


def twisted_convolution(f: Func, g: Func, lam: float, eval_points,
                        geometry: Optional[ConvGeometry] = None,
                        check_domain: bool = True,
                        chunk: int = 1 << 20) -> np.ndarray:
    """(f x_lam g) at eval_points (shape (m, n) complex)."""
    if geometry is None:
        for cand in (f, g):
            if isinstance(cand, GridFunction):
                geometry = ConvGeometry(cand.n, cand.extent, cand.steps)
                break
        if geometry is None:
            raise ValueError("geometry required when both factors are callables")
    pts = np.atleast_2d(np.asarray(eval_points, dtype=complex))
    if pts.shape[-1] != geometry.n:
        raise ValueError(f"eval points must have last axis {geometry.n}")
    if check_domain:
        require_inside(pts, geometry.extent, geometry.n)

    w = _w_points(geometry.n, geometry.extent, geometry.steps)
    g_vals = _as_values(g, w)
    if not np.all(np.isfinite(g_vals)):
        raise GridDataError("right factor has non-finite samples")
    out = np.zeros(pts.shape[0], dtype=complex)
    nblocks = max(1, math.ceil(w.shape[0] / chunk))
    blocks = np.array_split(np.arange(w.shape[0]), nblocks)
    for m, z in enumerate(pts):
        acc = 0.0 + 0.0j
        for idx in blocks:
            wb = w[idx]
            fv = _as_values(f, z[None, :] - wb)
            arg = np.zeros(len(idx))
            for j in range(geometry.n):
                arg += z[j].imag * wb[:, j].real - z[j].real * wb[:, j].imag
            acc += np.sum(fv * g_vals[idx] * np.exp(0.5j * lam * arg))
        out[m] = acc * geometry.cell
    if not np.all(np.isfinite(out)):
        raise GridDataError("convolution produced non-finite values")
    return out


def phi_callable(k: int, n: int) -> Callable[[np.ndarray], np.ndarray]:
    return lambda z: eval_phi(k, n, z)


# ----------------------------------------------------------------------
# Twisted spherical means
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SphereMeasureSpec:
    """Sphere S_r(center) with normalized surface measure, optional weight P."""

    center: Tuple[complex, ...]
    radius: float
    node_order: int = 24
    weight: Optional[BigradedPolynomial] = None

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    @property
    def n(self) -> int:
        return len(self.center)


@dataclass
class TSMResult:
    value: complex
    status: str = "ok"


def _min_order(radius: float, weight_degree: int) -> int:
    # phase oscillation across the sphere grows with the radius
    return max(12, int(2 * radius) + weight_degree + 6)


def tsm_values(f: Func, spec: SphereMeasureSpec, z_points: np.ndarray,
               lam: float = 1.0, rule: Optional[SphereRule] = None) -> np.ndarray:
    """Vectorized weighted TSM at many points z (shape (m, n))."""
    n = spec.n
    rule = rule or sphere_rule(n, spec.node_order)
    w = np.asarray(spec.center, dtype=complex)[None, :] + spec.radius * rule.points
    pw = np.ones(rule.count, dtype=complex)
    if spec.weight is not None:
        pw = spec.weight.eval(w)
    zs = np.atleast_2d(np.asarray(z_points, dtype=complex))
    out = np.zeros(zs.shape[0], dtype=complex)
    for m, z in enumerate(zs):
        fv = _as_values(f, z[None, :] - w)
        arg = np.zeros(rule.count)
        for j in range(n):
            arg += z[j].imag * w[:, j].real - z[j].real * w[:, j].imag
        out[m] = np.sum(rule.weights * fv * pw * np.exp(0.5j * lam * arg))
    return out


def twisted_spherical_mean(f: Func, spec: SphereMeasureSpec, z,
                           lam: float = 1.0) -> TSMResult:
    """Weighted TSM  int f(z - w) P(w) e^{(i lam/2) Im(z.wbar)} dmu_r(w)."""
    deg = 0 if spec.weight is None else spec.weight.p + spec.weight.q
    status = "ok"
    if spec.node_order < _min_order(spec.radius, deg):
        status = "warning: under-resolved sphere rule for this radius"
    val = tsm_values(f, spec, np.asarray(z, dtype=complex)[None, :], lam)[0]
    return TSMResult(value=val, status=status)


# ----------------------------------------------------------------------
# Radial projection (spectral projection of a radial function)
# ----------------------------------------------------------------------

def assert_radial(f: Func, n: int, sample_radius: float = 1.3,
                  rotations: int = 16, seed: int = 5, tol: float = 1e-9) -> None:
    rng = np.random.default_rng(seed)
    base = np.zeros(n, dtype=complex)
    base[0] = sample_radius
    vals = []
    for _ in range(rotations):
        u = random_unitary(n, rng)
        vals.append(complex(_as_values(f, (u @ base)[None, :])[0]))
    spread = np.max(np.abs(np.diff(vals + [vals[0]])))
    scale = max(np.max(np.abs(vals)), 1e-30)
    if spread > tol * max(scale, 1.0):
        raise ValueError(f"input is not radial: rotation spread {spread:.3e}")


def radial_inner_phi(f_radial: Callable[[np.ndarray], np.ndarray], k: int, n: int,
                     rule: Optional[RadialRule] = None) -> complex:
    """<f, phi_k^{n-1}> over C^n for radial f given by its radial profile."""
    rr = rule or radial_rule()
    vals = np.asarray(f_radial(rr.r), dtype=complex) * eval_phi_radial(k, n, rr.r)
    return surface_area(n) * rr.integrate(vals, n)


def radial_profile_of(f: Func, n: int) -> Callable[[np.ndarray], np.ndarray]:
    def prof(r):
        r = np.asarray(r, dtype=float)
        pts = np.zeros(r.shape + (n,), dtype=complex)
        pts[..., 0] = r
        return _as_values(f, pts)
    return prof


def radial_projection_check(f: Func, k: int, n: int,
                            probes: Optional[np.ndarray] = None,
                            geometry: Optional[ConvGeometry] = None,
                            lam: float = 1.0) -> Dict:
    """Compare f x phi_k against B_k^n <f, phi_k> phi_k for radial f."""
    geometry = geometry or default_geometry(n)
    assert_radial(f, n)
    prof = radial_profile_of(f, n)
    rr = radial_rule()
    l2 = float(np.real(rr.integrate(np.abs(np.asarray(prof(rr.r))) ** 2, n)))
    if not math.isfinite(l2):
        raise ValueError("input is not square integrable on the grid")
    if probes is None:
        probes = _default_probes(n, count=8, seed=3)
    lhs = twisted_convolution(f, phi_callable(k, n), lam, probes, geometry)
    inner = radial_inner_phi(prof, k, n, rr)
    bkn = float(radial_projection_constant(k, n))
    rhs = bkn * inner * eval_phi(k, n, probes)
    scale = max(np.max(np.abs(rhs)), 1e-30)
    return {"lhs": lhs, "rhs": rhs, "inner": inner,
            "rel_err": float(np.max(np.abs(lhs - rhs)) / scale)}


def _default_probes(n: int, count: int, seed: int, rmin: float = 0.4,
                    rmax: float = 2.2) -> np.ndarray:
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    norms = np.linalg.norm(pts, axis=1, keepdims=True)
    radii = np.linspace(rmin, rmax, count)[:, None]
    return pts / norms * radii


# ----------------------------------------------------------------------
# Weighted functional equation and calibration
# ----------------------------------------------------------------------

def _tsm_model(P: BigradedPolynomial, k: int, n: int, t: float,
               z_points: np.ndarray) -> np.ndarray:
    p, q = P.p, P.q
    gamma = n + p + q
    if k < q:
        return np.zeros(z_points.shape[0], dtype=complex)
    radial_t = t ** (2 * (p + q)) * float(eval_phi_radial(k - q, gamma, t))
    return radial_t * P.eval(z_points) * eval_phi_radial(k - q, gamma,
                                                         np.linalg.norm(z_points, axis=-1))


def weighted_functional_check(P: BigradedPolynomial, k: int, t: float, n: int,
                              z_points: np.ndarray, lam: float = 1.0,
                              rule: Optional[SphereRule] = None) -> Dict:
    """Fit the single scalar in the weighted TSM functional equation at radius t.

    Returns the fitted constant, the relative fit residual, and the raw data.
    For k < q (vanishing branch) the constant is reported as 0 and the
    residual is the maximum |lhs|.
    """
    z_points = np.atleast_2d(np.asarray(z_points, dtype=complex))
    spec = SphereMeasureSpec(center=(0j,) * n, radius=t, weight=P,
                             node_order=_min_order(t, P.p + P.q))
    lhs = tsm_values(phi_callable(k, n), spec, z_points, lam, rule)
    if k < P.q:
        return {"constant": 0.0, "residual_rel": float(np.max(np.abs(lhs))),
                "lhs": lhs, "model": np.zeros_like(lhs), "vanishing_branch": True}
    model = _tsm_model(P, k, n, t, z_points)
    denom = float(np.sum(np.abs(model) ** 2))
    if denom < 1e-60:
        raise ValueError("degenerate probe set: weight polynomial vanishes at all probes")
    s = complex(np.sum(lhs * np.conj(model)) / denom)
    resid = float(np.max(np.abs(lhs - s * model)) / max(np.max(np.abs(lhs)), 1e-30))
    return {"constant": s, "residual_rel": resid, "lhs": lhs, "model": model,
            "vanishing_branch": False}


_calibration_cache: Dict = {}


def calibrate_tsm_constant(k: int, p: int, q: int, n: int,
                           radii: Sequence[float] = (0.8, 1.4, 2.1),
                           seed: int = 11, probes_per_set: int = 6,
                           scatter_tol: float = 1e-3) -> Dict:
    """Least-squares constant of the weighted functional equation.

    Fits s(k, p, q, n) independently at several radii and on two disjoint
    probe sets; fails if the relative scatter exceeds `scatter_tol`.  The
    fitted value is cached and reused by the Hecke-Bochner reduction.
    """
    if k < q:
        raise ValueError("calibration needs the nonvanishing branch k >= q")
    key = (k, p, q, n, tuple(radii), seed, probes_per_set)
    if key in _calibration_cache:
        return _calibration_cache[key]
    from .harmonics import canonical_harmonic
    P = canonical_harmonic(n, p, q)
    rng = np.random.default_rng(seed)
    sets = []
    for _ in range(2):
        pts = rng.normal(size=(probes_per_set, n)) + 1j * rng.normal(size=(probes_per_set, n))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        pts *= np.linspace(0.7, 1.9, probes_per_set)[:, None]
        sets.append(pts)
    fits = np.array([[complex(weighted_functional_check(P, k, t, n, pts)["constant"])
                      for t in radii] for pts in sets])
    mean = complex(np.mean(fits))
    spread = float(np.max(np.abs(fits - mean)) / abs(mean)) if abs(mean) > 0 else np.inf
    if spread > scatter_tol:
        raise CalibrationError(
            f"fitted constant scatter {spread:.2e} above {scatter_tol:.0e} "
            f"for (k,p,q,n)=({k},{p},{q},{n})")
    result = {"constant": mean, "uncertainty": spread,
              "per_radius": fits.tolist(), "radii": list(radii)}
    _calibration_cache[key] = result
    return result


# ----------------------------------------------------------------------
# Hecke-Bochner reduction check
# ----------------------------------------------------------------------

def check_profile_decay(profile: Callable[[np.ndarray], np.ndarray], extent: float,
                        degree: int, tol: float = 1e-4) -> None:
    """Refuse profiles whose tail would poison the truncated convolution.

    Proxy integrand g(r) = |profile(r)| r^degree e^{-(r-2)^2/4} models the
    type-function factor together with the kernel's Gaussian seen from a
    probe at |z| ~ 2; the edge value must stay below tol of the bulk peak.
    """
    r_edge = np.array([0.9 * extent, extent])
    r_bulk = np.linspace(0.0, extent, 128)

    def g(r):
        return (np.abs(np.asarray(profile(r))) * r ** degree
                * np.exp(-np.maximum(r - 2.0, 0.0) ** 2 / 4.0))

    edge = np.max(g(r_edge))
    peak = np.max(g(r_bulk))
    if peak == 0.0:
        return
    if edge > tol * peak:
        raise DecayError(
            f"profile mass at the grid edge ({edge / peak:.2e} of the weighted "
            f"peak) exceeds {tol:.0e}")


def hecke_bochner_check(profile: Callable[[np.ndarray], np.ndarray],
                        P: BigradedPolynomial, k: int, n: int,
                        probes: Optional[np.ndarray] = None,
                        geometry: Optional[ConvGeometry] = None,
                        lam: float = 1.0) -> Dict:
    """Type function (profile * P) convolved with phi_k versus its radial reduction.

    lhs: full 2n-dimensional twisted convolution at probe points.
    rhs: omega_{2n-1} * s_cal * P(z) phi_{k-p}^{gamma-1}(z) * int profile phi t^{2 gamma -1} dt,
    with s_cal the calibrated constant for the conjugate weight (in H_{q,p}).
    The k < p branch asserts lhs ~ 0.
    """
    geometry = geometry or default_geometry(n)
    p, q = P.p, P.q
    gamma = n + p + q
    check_profile_decay(profile, geometry.extent, p + q)

    def f(z):
        r = np.sqrt(np.sum(np.abs(np.asarray(z, dtype=complex)) ** 2, axis=-1))
        return np.asarray(profile(r)) * P.eval(z)

    if probes is None:
        probes = _default_probes(n, count=6, seed=9)
    lhs = twisted_convolution(f, phi_callable(k, n), lam, probes, geometry)
    if k < p:
        return {"lhs": lhs, "rhs": np.zeros_like(lhs),
                "abs_err": float(np.max(np.abs(lhs))), "rel_err": float("nan"),
                "vanishing_branch": True}
    cal = calibrate_tsm_constant(k, q, p, n)
    rr = radial_rule()
    integral = complex(rr.integrate(
        np.asarray(profile(rr.r), dtype=complex) * eval_phi_radial(k - p, gamma, rr.r),
        gamma))
    rhs = (surface_area(n) * cal["constant"] * integral
           * P.eval(probes) * eval_phi_radial(k - p, gamma, np.linalg.norm(probes, axis=-1)))
    scale = max(np.max(np.abs(rhs)), np.max(np.abs(lhs)), 1e-30)
    return {"lhs": lhs, "rhs": rhs, "vanishing_branch": False,
            "rel_err": float(np.max(np.abs(lhs - rhs)) / scale),
            "calibration": cal}


# ----------------------------------------------------------------------
# Heisenberg slice demo
# ----------------------------------------------------------------------

def heisenberg_slice_demo(f: Callable[[np.ndarray, np.ndarray], np.ndarray],
                          g: Callable[[np.ndarray, np.ndarray], np.ndarray],
                          lam: float = 1.0, z_extent: float = 4.0,
                          z_steps: int = 16, t_extent: float = 6.0,
                          t_steps: int = 13,
                          probes: Optional[np.ndarray] = None) -> Dict:
    """Group convolution on a C x R slice grid versus twisted convolution of slices.

    f, g are callables f(z, t) with z complex and t real (broadcastable).
    Computes (f * g)(z, .), takes the discrete Fourier transform in t at
    frequency lam, and compares with the twisted convolution of the
    lam-slices.  Returns the max pointwise residual over the probe set.
    """
    if z_steps > 32 or t_steps > 33:
        raise GuardrailError("slice demo limited to 32 z-nodes and 33 t-slices per axis")
    ax = grid_axis(z_extent, z_steps)
    X, Y = np.meshgrid(ax, ax, indexing="ij")
    W = (X + 1j * Y).ravel()
    ts = np.linspace(-t_extent, t_extent, t_steps)
    dt = ts[1] - ts[0]
    cell = (2.0 * z_extent / z_steps) ** 2

    if probes is None:
        probes = np.array([0.0 + 0.0j, 0.5 + 0.25j, -0.75 + 0.5j, 1.0 - 0.5j, 0.25 + 1.0j])

    g_grid = g(W[:, None], ts[None, :])  # (Nw, Nt)

    # group convolution, partial Fourier transform in t at frequency lam
    lhs = np.zeros(len(probes), dtype=complex)
    for m, z in enumerate(probes):
        twist = 0.5 * (z.imag * W.real - z.real * W.imag)  # Im(z.wbar)/2
        conv_t = np.zeros(len(ts), dtype=complex)
        for it, t in enumerate(ts):
            fv = f((z - W)[:, None], t - ts[None, :] - twist[:, None])
            conv_t[it] = np.sum(fv * g_grid) * cell * dt
        lhs[m] = np.sum(conv_t * np.exp(1j * lam * ts)) * dt

    # lam-slices and their twisted convolution
    g_lam = np.sum(g_grid * np.exp(1j * lam * ts)[None, :], axis=1) * dt
    rhs = np.zeros(len(probes), dtype=complex)
    for m, z in enumerate(probes):
        zw = z - W
        # interpolate f_lam at shifted points by direct re-evaluation
        fl = np.sum(f(zw[:, None], ts[None, :]) * np.exp(1j * lam * ts)[None, :], axis=1) * dt
        arg = z.imag * W.real - z.real * W.imag
        rhs[m] = np.sum(fl * g_lam * np.exp(0.5j * lam * arg)) * cell

    resid = float(np.max(np.abs(lhs - rhs)))
    return {"residual": resid, "lhs": lhs, "rhs": rhs,
            "z_steps": z_steps, "t_steps": t_steps}
