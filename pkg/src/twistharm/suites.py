"""Verification suites wired to the CLI: exact identities plus numeric checks.

Each suite returns a list of check rows {id, description, params, status,
detail}; a run passes iff every row has status "pass".  Exact checks report a
residual term count (zero terms = pass), numeric checks a residual against
their tolerance.  The optional `inject_fault` knob deliberately corrupts one
exact table inside the run so the failure path is testable end to end.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional

import numpy as np

from ._rational import Q
from .config import RunConfig
from .harmonics import (basis_from_json, basis_to_json, canonical_harmonic,
                        dim_hpq, harmonic_basis, laplacian_kernel_dim,
                        rotate_polynomial, sup_norm_bound_check)
from .laguerre import (eval_phi_radial, generalized_recurrence_residuals,
                       laguerre_coeffs, phi_norm_sq)
from .polynomials import BigradedPolynomial
from .quadrature import radial_rule
from .rootisolation import common_zero_scan
from .twisted import (calibrate_tsm_constant, default_geometry, hecke_bochner_check,
                      heisenberg_slice_demo, phi_callable, radial_projection_check,
                      twisted_convolution, weighted_functional_check, _default_probes)
from .typefunc import RadialProfile
from .weyl import (apply_tau, apply_tau_prime, commutator_residual,
                   generalized_ladder_residuals, harmonic_ladder_residual,
                   monomial_ladder_residual, phi_gaussian,
                   special_hermite_residual, twisted_laplacian_residual,
                   GaussianPolynomial)


def _row(check_id: str, description: str, params: dict, ok: bool, detail) -> dict:
    return {"id": check_id, "description": description, "params": params,
            "status": "pass" if ok else "fail", "detail": detail}


def _run_units(units: List[Callable[[], dict]], threads: int) -> List[dict]:
    if threads <= 1:
        return [u() for u in units]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(u) for u in units]
        return [f.result() for f in futures]


# ----------------------------------------------------------------------
# Symbolic suite
# ----------------------------------------------------------------------

def run_symbolic_suite(pq_max: int = 4, k_max: int = 6, n_max: int = 3,
                       branch: str = "resolved", threads: int = 1) -> List[dict]:
    units: List[Callable[[], dict]] = []

    def ladder_unit(n, p, q, k, lam):
        def work():
            basis = harmonic_basis(n, p, q)
            bad = 0
            for e in basis.elements:
                if not harmonic_ladder_residual(e, k, n, lam, convention=branch).is_zero():
                    bad += 1
            return _row("harmonic-ladder",
                        "P(W) phi_k = (-2)^-(p+q) P phi_{k-drop}^{n+p+q-1} on the "
                        "whole harmonic basis, including vanishing branches",
                        {"n": n, "p": p, "q": q, "k": k, "lambda": lam,
                         "branch": branch, "basis_size": len(basis)},
                        bad == 0, {"nonzero_residuals": bad})
        return work

    for n in range(1, n_max + 1):
        for p in range(pq_max + 1):
            for q in range(pq_max + 1 - p):
                if dim_hpq(n, p, q) == 0:
                    continue
                for k in range(k_max + 1):
                    for lam in (1, -1):
                        units.append(ladder_unit(n, p, q, k, lam))

    def mono_unit(n, p, q, k):
        def work():
            r = monomial_ladder_residual(p, q, k, n)
            return _row("monomial-ladder",
                        "(W+_1)^p (W_2)^q phi_k against the closed form",
                        {"n": n, "p": p, "q": q, "k": k}, r.is_zero(),
                        {"residual_terms": len(r.coeffs)})
        return work

    for n in range(1, n_max + 1):
        for p in range(pq_max + 1):
            for q in range(pq_max + 1 - p):
                if q >= 1 and n < 2:
                    continue
                units.append(mono_unit(n, p, q, min(k_max, 3)))

    def tau_unit(n, p, q):
        def work():
            basis = harmonic_basis(n, p, q)
            f = phi_gaussian(2, n)
            bad = sum(0 if (apply_tau(e, 1, f) - apply_tau_prime(e, 1, f)).is_zero()
                      else 1 for e in basis.elements)
            return _row("tau-order-independence",
                        "tau(P) = tau'(P) exactly on harmonic symbols",
                        {"n": n, "p": p, "q": q}, bad == 0, {"nonzero": bad})
        return work

    for n in range(1, n_max + 1):
        for p in range(pq_max + 1):
            for q in range(pq_max + 1 - p):
                if dim_hpq(n, p, q) == 0:
                    continue
                units.append(tau_unit(n, p, q))

    def counterexample_unit():
        P = BigradedPolynomial.monomial(1, (1,), (1,))
        f = GaussianPolynomial.ground_state(1)
        diff = apply_tau_prime(P, 1, f) - apply_tau(P, 1, f)
        ok = diff == f.scale_by(Q(1, 2))
        return _row("tau-counterexample",
                    "non-harmonic z zbar: tau' - tau = (lambda/2) identity",
                    {"n": 1, "lambda": 1}, ok, {})

    units.append(counterexample_unit)

    rng = np.random.default_rng(1234)

    def commutator_unit(lam_str):
        def work():
            lam = Q(lam_str)
            bad = 0
            for _ in range(20):
                n = int(rng.integers(1, 4))
                a = tuple(int(rng.integers(0, 3)) for _ in range(n))
                b = tuple(int(rng.integers(0, 3)) for _ in range(n))
                f = GaussianPolynomial.monomial(n, a, b, scale=abs(lam))
                for j in range(n):
                    if not commutator_residual(j, lam, f).is_zero():
                        bad += 1
            return _row("commutator",
                        "[W+_j, -W_j] = (lambda/2) I on seeded Gaussian monomials",
                        {"lambda": lam_str}, bad == 0, {"nonzero": bad})
        return work

    for lam_str in ("1", "-1", "2", "-2", "1/3"):
        units.append(commutator_unit(lam_str))

    def eigen_unit(k, n):
        def work():
            ok = special_hermite_residual(k, n).is_zero()
            ok &= not special_hermite_residual(k, n, shift=1).is_zero()
            return _row("hermite-eigenfunction",
                        "(-Delta + |z|^2/4) phi_k = (2k+n) phi_k, exact; "
                        "shifted eigenvalue must fail",
                        {"k": k, "n": n}, ok, {})
        return work

    for n in range(1, n_max + 1):
        for k in range(min(k_max, 8) + 1):
            units.append(eigen_unit(k, n))

    def generalized_unit(a_str, p, q, n):
        def work():
            res = generalized_ladder_residuals(Q(a_str), p, q, n, trunc=20 + p + q)
            ok = all(not r for r in res)
            return _row("generalized-ladder",
                        "formal-series ladder for non-integer degree, exact "
                        "coefficients on truncation-safe orders",
                        {"a": a_str, "p": p, "q": q, "n": n}, ok,
                        {"checked_orders": len(res)})
        return work

    for (a_str, p, q, n) in (("1/2", 1, 0, 1), ("1/3", 1, 1, 2), ("-3/4", 2, 1, 2),
                             ("2/5", 0, 2, 3)):
        units.append(generalized_unit(a_str, p, q, n))

    return _run_units(units, threads)


# ----------------------------------------------------------------------
# Laguerre suite
# ----------------------------------------------------------------------

def run_laguerre_suite(k_max: int = 12, order_max: int = 8,
                       zero_scan_k: int = 8, inject_fault: Optional[str] = None,
                       threads: int = 1) -> List[dict]:
    rows: List[dict] = []

    bad = 0
    for k in range(1, k_max + 1):
        for order in range(order_max + 1):
            c = list(laguerre_coeffs(k, order))
            if inject_fault == "laguerre-table" and (k, order) == (3, 2):
                c[1] = c[1] + 1
            dc = [i * c[i] for i in range(1, k + 1)]
            if dc != [-v for v in laguerre_coeffs(k - 1, order + 1)]:
                bad += 1
            top = laguerre_coeffs(k - 1, order + 1) + [Q(0)]
            if [a + b for a, b in zip(top, c)] != laguerre_coeffs(k, order + 1):
                bad += 1
    rows.append(_row("laguerre-recursions",
                     "derivative and additive three-term relations exact on "
                     "coefficient lists",
                     {"k_max": k_max, "order_max": order_max}, bad == 0,
                     {"failures": bad}))

    rr = radial_rule()
    worst = 0.0
    for gamma in range(1, 7):
        for j in range(9):
            for k in range(j, 9):
                val = float(np.real(rr.integrate(
                    eval_phi_radial(j, gamma, rr.r) * eval_phi_radial(k, gamma, rr.r),
                    gamma)))
                target = float(phi_norm_sq(k, gamma)) if j == k else 0.0
                worst = max(worst, abs(val - target) / max(float(phi_norm_sq(k, gamma)), 1.0))
    rows.append(_row("weighted-orthogonality",
                     "radial quadrature of phi_j phi_k r^{2 gamma - 1} against "
                     "the closed-form norms",
                     {"j,k": "<=8", "gamma": "<=6"}, worst < 1e-10,
                     {"worst_rel": worst}))

    rng = np.random.default_rng(7)
    worst_m = 0.0
    ok_m = True
    for _ in range(20):
        a = Q(int(rng.integers(-8, 8)), int(rng.integers(2, 9)))
        if a >= 1:
            a = a - 1
        n = int(rng.integers(1, 4))
        x = float(rng.uniform(0.1, 3.0))
        out = generalized_recurrence_residuals(a, n, x, trunc=40)
        ok_m &= out["residual_derivative"] <= out["tail_bound_derivative"] + 1e-12
        ok_m &= out["residual_additive"] <= out["tail_bound_additive"] + 1e-12
        worst_m = max(worst_m, out["residual_derivative"], out["residual_additive"])
    rows.append(_row("generalized-recurrences",
                     "non-integer-degree recurrences vanish within the series "
                     "tail bounds at sampled points",
                     {"samples": 20, "trunc": 40}, ok_m, {"worst": worst_m}))

    hits_all = []
    for order in range(0, 3):
        for k1 in range(1, zero_scan_k):
            hits_all.extend(common_zero_scan(k1, k1 + 1, order, 60, Q(1, 10 ** 9)))
    rows.append(_row("distinct-zeros-scan",
                     "no common real zeros between distinct-degree polynomials "
                     "(certified isolation)",
                     {"k": f"<{zero_scan_k}", "orders": "0..2"}, not hits_all,
                     {"coincidence_candidates": hits_all}))
    return rows


# ----------------------------------------------------------------------
# Harmonics suite
# ----------------------------------------------------------------------

def run_harmonics_suite(pq_max: int = 5, n_max: int = 3,
                        threads: int = 1) -> List[dict]:
    rows: List[dict] = []
    bad_dim = []
    bad_harm = 0
    for n in range(1, n_max + 1):
        for p in range(pq_max + 1):
            for q in range(pq_max + 1 - p):
                if laplacian_kernel_dim(n, p, q) != dim_hpq(n, p, q):
                    bad_dim.append((n, p, q))
                basis = harmonic_basis(n, p, q)
                bad_harm += sum(0 if e.laplacian().is_zero() else 1
                                for e in basis.elements)
    rows.append(_row("kernel-dimension",
                     "exact Laplacian kernel rank equals the closed-form d(p,q)",
                     {"n_max": n_max, "pq_max": pq_max}, not bad_dim,
                     {"mismatches": bad_dim}))
    rows.append(_row("basis-harmonicity",
                     "every basis element is annihilated by the Laplacian, exactly",
                     {"n_max": n_max, "pq_max": pq_max}, bad_harm == 0,
                     {"nonzero": bad_harm}))

    from ._rational import QQi
    P = canonical_harmonic(2, 2, 1)
    swap = [[0, 1], [1, 0]]
    phase = [[QQi(0, 1), 0], [0, 1]]
    ok_rot = True
    for sigma in (swap, phase):
        rp = rotate_polynomial(sigma, P)
        ok_rot &= rp.laplacian().is_zero()
        ok_rot &= rp.coeff_norm_sq() == P.coeff_norm_sq()
    rows.append(_row("rotation-invariance",
                     "permutation/phase rotations preserve harmonicity and the "
                     "coefficient norm exactly",
                     {"bidegree": [2, 1]}, ok_rot, {}))

    sup_ok = True
    for (n, p, q) in ((1, 3, 0), (2, 1, 0), (2, 1, 1), (2, 2, 2), (3, 1, 1)):
        for e in harmonic_basis(n, p, q).elements[:2]:
            out = sup_norm_bound_check(e)
            sup_ok &= out["passed"]
    rows.append(_row("sup-norm-bound",
                     "sampled sphere sup below sqrt(d(p,q)) times the "
                     "coefficient norm",
                     {}, sup_ok, {}))

    b = harmonic_basis(2, 1, 1)
    ok_json = basis_from_json(basis_to_json(b)).elements == b.elements
    rows.append(_row("basis-json-roundtrip",
                     "JSON export/import of the exact basis is lossless",
                     {"n": 2, "p": 1, "q": 1}, ok_json, {}))
    return rows


# ----------------------------------------------------------------------
# Numeric suite
# ----------------------------------------------------------------------

def run_numeric_suite(k_max: int = 3, orthogonality_only: bool = False,
                      geometry=None, probes_count: int = 5,
                      tol_orth: float = 1e-5, threads: int = 1) -> List[dict]:
    rows: List[dict] = []
    geom = geometry or default_geometry(1)
    probes = _default_probes(1, probes_count, seed=1)
    worst = 0.0
    for j in range(k_max + 1):
        for k in range(k_max + 1):
            vals = twisted_convolution(phi_callable(j, 1), phi_callable(k, 1), 1.0,
                                       probes, geom)
            target = (2 * math.pi if j == k else 0.0) * eval_phi_radial(
                k, 1, np.linalg.norm(probes, axis=-1))
            worst = max(worst, float(np.max(np.abs(vals - target))))
    rows.append(_row("twisted-orthogonality",
                     "phi_j x phi_k = (2 pi)^n delta_jk phi_k on probe points",
                     {"n": 1, "k_max": k_max, "grid": [geom.extent, geom.steps]},
                     worst <= tol_orth, {"max_residual": worst}))
    if orthogonality_only:
        return rows

    out = radial_projection_check(phi_callable(2, 1), 2, 1, geometry=geom)
    rows.append(_row("radial-projection",
                     "f x phi_k = B_k^n <f, phi_k> phi_k for radial f",
                     {"n": 1, "k": 2}, out["rel_err"] <= 1e-5,
                     {"rel_err": out["rel_err"]}))

    P = canonical_harmonic(1, 1, 0)
    hb = hecke_bochner_check(lambda r: eval_phi_radial(0, 2, r), P, 1, 1,
                             geometry=geom)
    rows.append(_row("hecke-bochner",
                     "type function x phi_k against its one-dimensional radial "
                     "reduction with the calibrated constant",
                     {"n": 1, "p": 1, "q": 0, "k": 1}, hb["rel_err"] <= 1e-4,
                     {"rel_err": hb["rel_err"]}))

    wf = weighted_functional_check(canonical_harmonic(1, 0, 1), 1, 1.3, 1,
                                   _default_probes(1, 6, seed=8))
    rows.append(_row("weighted-functional-fit",
                     "weighted TSM matches s * t^{2(p+q)} phi(t) P(z) phi(z); "
                     "single-scalar fit residual at quadrature level",
                     {"n": 1, "p": 0, "q": 1, "k": 1},
                     wf["residual_rel"] <= 1e-4, {"residual_rel": wf["residual_rel"]}))

    cal = calibrate_tsm_constant(1, 0, 1, 1)
    rows.append(_row("calibration-stability",
                     "fitted constant stable across radii and probe sets",
                     {"n": 1, "p": 0, "q": 1, "k": 1},
                     cal["uncertainty"] <= 1e-4, {"uncertainty": cal["uncertainty"]}))

    f2 = lambda z, t: np.exp(-np.abs(z) ** 2) * np.exp(-t ** 2)
    demo = heisenberg_slice_demo(f2, f2, 1.0)
    rows.append(_row("heisenberg-slice",
                     "group convolution slice transform equals twisted "
                     "convolution of slices at demo resolution",
                     {"z_steps": demo["z_steps"], "t_steps": demo["t_steps"]},
                     demo["residual"] <= 2e-2, {"residual": demo["residual"]}))
    return rows


SUITES = {
    "symbolic": run_symbolic_suite,
    "laguerre": run_laguerre_suite,
    "harmonics": run_harmonics_suite,
    "numeric": run_numeric_suite,
}
