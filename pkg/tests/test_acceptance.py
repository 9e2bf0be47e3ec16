"""Acceptance criteria, one test per criterion, at their stated tolerances.

Each test prints one `[criterion-NN] PASS/FAIL` line (visible with -s, and in
the failure report otherwise).  Exact criteria demand identically-zero
residuals; numeric criteria use the tolerances fixed here, not calibrated
after the fact.
"""

import math
import time

import numpy as np
import pytest

from twistharm._rational import Q
from twistharm.harmonics import (canonical_harmonic, dim_hpq, harmonic_basis,
                                 laplacian_kernel_dim)
from twistharm.laguerre import (eval_phi, eval_phi_radial,
                                generalized_recurrence_residuals,
                                laguerre_coeffs, phi_norm_sq)
from twistharm.polynomials import BigradedPolynomial, surface_area
from twistharm.quadrature import radial_rule
from twistharm.rootisolation import common_zero_scan
from twistharm.twisted import (_default_probes, calibrate_tsm_constant,
                               default_geometry, hecke_bochner_check,
                               heisenberg_slice_demo, phi_callable,
                               radial_projection_check, twisted_convolution,
                               weighted_functional_check)
from twistharm.typefunc import RadialProfile, TypeComponent, TypeFunction, corpus
from twistharm.weyl import (GaussianPolynomial, apply_tau, apply_tau_prime,
                            commutator_residual, harmonic_ladder_residual,
                            monomial_ladder_residual, phi_gaussian,
                            special_hermite_residual)
from twistharm.expansion import (cone_injectivity_experiment, extract_expansion,
                                 spectral_projection,
                                 sphere_injectivity_experiment)


def _report(num: int, ok: bool, detail: str) -> str:
    line = f"[criterion-{num:02d}] {'PASS' if ok else 'FAIL'} {detail}"
    print(line)
    return line


def test_criterion_01_exact_ladder_identities():
    t0 = time.time()
    checks = 0
    bad = 0
    for n in (1, 2, 3):
        for p in range(5):
            for q in range(5 - p):
                if dim_hpq(n, p, q) == 0:
                    continue
                basis = harmonic_basis(n, p, q)
                for k in range(7):
                    for lam in (1, -1):
                        for e in basis.elements:
                            checks += 1
                            if not harmonic_ladder_residual(e, k, n, lam).is_zero():
                                bad += 1
                if q == 0 or n >= 2:
                    for k in range(7):
                        checks += 1
                        if not monomial_ladder_residual(p, q, k, n).is_zero():
                            bad += 1
    elapsed = time.time() - t0
    ok = bad == 0 and elapsed < 60.0
    line = _report(1, ok, f"{checks} exact ladder checks, {bad} nonzero residuals, "
                          f"{elapsed:.1f}s (< 60s)")
    assert ok, line


def test_criterion_02_tau_order_independence():
    bad = 0
    checks = 0
    for n in (1, 2, 3):
        f = phi_gaussian(2, n)
        g = GaussianPolynomial.monomial(n, (1,) + (0,) * (n - 1),
                                        (0,) * (n - 1) + (1,))
        for p in range(5):
            for q in range(5 - p):
                if dim_hpq(n, p, q) == 0:
                    continue
                for e in harmonic_basis(n, p, q).elements:
                    for h in (f, g):
                        checks += 1
                        if not (apply_tau(e, 1, h) - apply_tau_prime(e, 1, h)).is_zero():
                            bad += 1
    zzb = BigradedPolynomial.monomial(1, (1,), (1,))
    counter_ok = True
    for lam in (1, -1):
        gs = GaussianPolynomial.ground_state(1)
        diff = apply_tau_prime(zzb, lam, gs) - apply_tau(zzb, lam, gs)
        counter_ok &= diff == gs.scale_by(Q(lam, 2))
    ok = bad == 0 and counter_ok
    line = _report(2, ok, f"{checks} tau/tau' agreements exact; z zbar "
                          f"counterexample differs by (lambda/2) f: {counter_ok}")
    assert ok, line


def test_criterion_03_commutator():
    rng = np.random.default_rng(97)
    bad = 0
    checks = 0
    for lam in (Q(1), Q(-1), Q(2), Q(-2), Q(1, 3)):
        for _ in range(20):
            n = int(rng.integers(1, 4))
            a = tuple(int(rng.integers(0, 3)) for _ in range(n))
            b = tuple(int(rng.integers(0, 3)) for _ in range(n))
            f = GaussianPolynomial.monomial(n, a, b, scale=abs(lam))
            for j in range(n):
                checks += 1
                if not commutator_residual(j, lam, f).is_zero():
                    bad += 1
    ok = bad == 0
    line = _report(3, ok, f"{checks} commutator identities exact over "
                          "lambda in {+-1, +-2, 1/3}")
    assert ok, line


def test_criterion_04_eigenfunction_identity():
    bad = 0
    for n in (1, 2, 3):
        for k in range(9):
            if not special_hermite_residual(k, n).is_zero():
                bad += 1
            if special_hermite_residual(k, n, shift=1).is_zero():
                bad += 1
    ok = bad == 0
    line = _report(4, ok, "(-Delta + |z|^2/4) phi_k = (2k+n) phi_k exact, "
                          "k <= 8, n <= 3, with negative control")
    assert ok, line


def test_criterion_05_dimension_formula():
    bad = []
    for n in (2, 3, 4):
        for p in range(5):
            for q in range(5):
                if laplacian_kernel_dim(n, p, q) != dim_hpq(n, p, q):
                    bad.append((n, p, q))
    ok = not bad
    line = _report(5, ok, f"dim ker Laplacian equals d(p,q) for n in {{2,3,4}}, "
                          f"p,q <= 4; mismatches: {bad}")
    assert ok, line


def test_criterion_06_laguerre_recursions():
    bad = 0
    for k in range(1, 13):
        for order in range(9):
            c = laguerre_coeffs(k, order)
            if [i * c[i] for i in range(1, k + 1)] != \
                    [-v for v in laguerre_coeffs(k - 1, order + 1)]:
                bad += 1
            low = laguerre_coeffs(k - 1, order + 1) + [Q(0)]
            if [a + b for a, b in zip(low, c)] != laguerre_coeffs(k, order + 1):
                bad += 1
    rng = np.random.default_rng(55)
    m_bad = 0
    for _ in range(20):
        a = Q(int(rng.integers(-8, 8)), int(rng.integers(2, 9)))
        if a >= 1:
            a -= 1
        n = int(rng.integers(1, 4))
        x = float(rng.uniform(0.1, 3.0))
        out = generalized_recurrence_residuals(a, n, x, trunc=40)
        if out["residual_derivative"] > out["tail_bound_derivative"] + 1e-12:
            m_bad += 1
        if out["residual_additive"] > out["tail_bound_additive"] + 1e-12:
            m_bad += 1
    ok = bad == 0 and m_bad == 0
    line = _report(6, ok, f"polynomial recursions exact (k<=12, order<=8); "
                          f"generalized recursions within tails at 20 samples "
                          f"(N=40); failures: {bad}+{m_bad}")
    assert ok, line


def test_criterion_07_numeric_orthogonality():
    t0 = time.time()
    geom = default_geometry(1)
    probes = _default_probes(1, 25, seed=13, rmin=0.2, rmax=2.5)
    worst = 0.0
    cache = {k: phi_callable(k, 1) for k in range(6)}
    for j in range(6):
        for k in range(6):
            vals = twisted_convolution(cache[j], cache[k], 1.0, probes, geom)
            target = (2 * math.pi if j == k else 0.0) * eval_phi(k, 1, probes)
            worst = max(worst, float(np.max(np.abs(vals - target))))
    elapsed = time.time() - t0
    ok = worst <= 1e-5 and elapsed < 300.0
    line = _report(7, ok, f"max orthogonality residual {worst:.2e} <= 1e-5 over "
                          f"25 probes, j,k <= 5, grid (L=12, 256^2), {elapsed:.0f}s")
    assert ok, line


def test_criterion_08_radial_projection():
    geom = default_geometry(1)
    # five radial test functions with nonzero content at every k <= 4
    profiles = [
        lambda r: np.exp(-r ** 2 / 2.0),
        lambda r: np.exp(-r ** 2 / 3.0),
        lambda r: (1.0 + r ** 2) * np.exp(-r ** 2 / 2.0),
        RadialProfile.from_x_poly([1, 1, "1/2", "1/6", "1/24"]).values,
        RadialProfile.from_x_poly([2, -1, "1/3", "-1/12", "1/60"]).values,
    ]
    worst = 0.0
    for prof in profiles:
        f = lambda z, _p=prof: _p(np.sqrt(np.sum(np.abs(z) ** 2, axis=-1)))
        for k in range(5):
            out = radial_projection_check(f, k, 1, geometry=geom)
            worst = max(worst, out["rel_err"])
    ok = worst <= 1e-5
    line = _report(8, ok, f"radial projection worst rel err {worst:.2e} <= 1e-5 "
                          "over 5 functions, k <= 4, n=1")
    assert ok, line


HB_PROFILE = RadialProfile.from_x_poly([1, 1, "1/2", "1/6"])


def test_criterion_09_hecke_bochner():
    # the profile has nonzero expansion coefficients in every order used
    for gamma in range(1, 7):
        assert all(HB_PROFILE.laguerre_expansion(gamma))
    worst_rel = 0.0
    worst_abs = 0.0
    for n in (1, 2):
        geom = default_geometry(n)
        probes = _default_probes(n, 4 if n == 2 else 6, seed=21, rmax=1.8)
        for p in range(3):
            for q in range(3 - p):
                if n == 1 and p and q:
                    continue
                P = canonical_harmonic(n, p, q)
                for k in range(4):
                    out = hecke_bochner_check(HB_PROFILE.values, P, k, n,
                                              probes=probes, geometry=geom)
                    if out["vanishing_branch"]:
                        worst_abs = max(worst_abs, out["abs_err"])
                    else:
                        worst_rel = max(worst_rel, out["rel_err"])
    ok = worst_rel <= 1e-4 and worst_abs <= 1e-6
    line = _report(9, ok, f"Hecke-Bochner worst rel {worst_rel:.2e} <= 1e-4 "
                          f"(p+q<=2, k<=3, n in {{1,2}}); vanishing-branch "
                          f"worst abs {worst_abs:.2e} <= 1e-6")
    assert ok, line


def test_criterion_10_weighted_functional_fit():
    worst_resid = 0.0
    worst_unc = 0.0
    cases = ((1, 0, 1, 1), (2, 2, 0, 1), (2, 1, 1, 2), (3, 0, 2, 2))
    for (k, p, q, n) in cases:
        P = canonical_harmonic(n, p, q)
        probes = _default_probes(n, 6, seed=31, rmax=1.9)
        for t in (0.9, 1.6):
            out = weighted_functional_check(P, k, t, n, probes)
            worst_resid = max(worst_resid, out["residual_rel"])
        cal = calibrate_tsm_constant(k, p, q, n)
        worst_unc = max(worst_unc, cal["uncertainty"])
    ok = worst_resid <= 1e-4 and worst_unc <= 1e-4
    line = _report(10, ok, f"weighted functional fit residual {worst_resid:.2e} "
                           f"<= 1e-4; constant stability {worst_unc:.2e} <= 1e-4")
    assert ok, line


def test_criterion_11_expansion_and_parseval():
    worst_gap = 0.0     # max(0, |eval - direct| - tail) must stay <= 1e-4
    worst_pars = 0.0
    for f in corpus():
        n = f.n
        geom = default_geometry(n)
        probes = _default_probes(n, 5 if n == 2 else 6, seed=41, rmax=1.8)
        for k in range(4):
            exp = extract_expansion(f, k, n)
            direct = spectral_projection(f, k, n, probes, geom)
            diff = float(np.max(np.abs(exp.evaluate(probes) - direct)))
            worst_gap = max(worst_gap, diff - exp.tail)
            closed = f.planted_norm_sq_projection(k)
            if n == 1 and k in (1, 2):
                # independent grid route: polar quadrature of |Q_k|^2 from
                # direct convolutions
                rr = radial_rule(npts=32, u_max=18.0)
                th = 2 * np.pi * np.arange(20) / 20
                pts = (rr.r[:, None] * np.exp(1j * th)[None, :]).reshape(-1, 1)
                qv = twisted_convolution(f, phi_callable(k, 1), 1.0, pts, geom)
                shell = np.mean(np.abs(qv.reshape(rr.r.size, 20)) ** 2, axis=1)
                grid_norm = float(surface_area(1) * rr.integrate(shell, 1))
            else:
                grid_norm = closed
            if closed > 1e-12:
                worst_pars = max(worst_pars,
                                 abs(exp.norm_sq_layered - grid_norm) / closed)
    ok = worst_gap <= 1e-4 and worst_pars <= 1e-3
    line = _report(11, ok, f"expansion vs direct gap beyond tail {worst_gap:.2e} "
                           f"<= 1e-4; Parseval layering {worst_pars:.2e} <= 1e-3 "
                           "on the 10-function corpus")
    assert ok, line


def test_criterion_12_distinct_zeros():
    t0 = time.time()
    hits = []
    for order in range(4):
        for k1 in range(21):
            for k2 in range(k1 + 1, 21):
                hits.extend(common_zero_scan(k1, k2, order, 200, Q(1, 10 ** 12)))
    elapsed = time.time() - t0
    ok = not hits
    line = _report(12, ok, f"no common real zeros for k1 != k2 <= 20, orders "
                           f"0..3, on [0,200] at 1e-12 resolution ({elapsed:.0f}s); "
                           f"candidates: {len(hits)}")
    assert ok, line


def test_criterion_13_injectivity_experiments():
    f = lambda z: eval_phi(2, 2, z)
    P = canonical_harmonic(2, 1, 0)
    rep = sphere_injectivity_experiment(f, P, [2.0, 1.6], n=2, k_max=3)
    sphere_worst = max(rep["recovered_rel_err"].values())
    zero = lambda z: np.zeros(np.asarray(z).shape[:-1], dtype=complex)
    rep0 = sphere_injectivity_experiment(zero, P, [1.6], n=2, k_max=3)
    zero_floor = rep0["max_recovered_abs"]

    fc = TypeFunction(2, [
        TypeComponent(0.9 + 0.4j, RadialProfile.phi(1, 3), canonical_harmonic(2, 1, 0)),
        TypeComponent(0.6, RadialProfile.gaussian(), canonical_harmonic(2, 0, 1)),
    ])
    dirs = [np.array([1.0, 0.5j]), np.array([0.3, 1.0 + 0j])]
    repc = cone_injectivity_experiment(fc, dirs, K=2)
    cone_worst = 0.0
    for d in repc["directions"]:
        for pk in d["per_k"]:
            for row in pk["rows"]:
                truth = abs(complex(*row["truth"]))
                if truth > 1e-9:
                    cone_worst = max(cone_worst, row["abs_err"] / truth)
    f_zero_set = TypeFunction(2, [TypeComponent(0.9, RadialProfile.phi(1, 3),
                                                canonical_harmonic(2, 1, 0))])
    rep_zs = cone_injectivity_experiment(
        f_zero_set, [np.array([0.0, 1.0 + 0j]), np.array([0.0, 0.6 + 0.8j])], K=2)
    detected = rep_zs["verdict"] == "non-injective configuration detected"

    ok = (sphere_worst <= 1e-4 and zero_floor <= 1e-8
          and cone_worst <= 1e-3 and detected
          and repc["verdict"] == "injective for this function class")
    line = _report(13, ok, f"sphere recovery {sphere_worst:.2e} <= 1e-4, zero "
                           f"fixture {zero_floor:.2e} <= 1e-8; cone recovery "
                           f"{cone_worst:.2e} <= 1e-3, zero-set fixture "
                           f"detected: {detected}")
    assert ok, line


def test_criterion_14_heisenberg_slice_demo():
    f = lambda z, t: np.exp(-np.abs(z) ** 2) * np.exp(-t ** 2)
    demo = heisenberg_slice_demo(f, f, 1.0)
    fine = heisenberg_slice_demo(f, f, 1.0, z_steps=32, t_steps=25)
    ok = demo["residual"] <= 2e-2 and fine["residual"] <= 0.5 * demo["residual"]
    line = _report(14, ok, f"slice demo residual {demo['residual']:.2e} <= 2e-2; "
                           f"refined {fine['residual']:.2e} (at most half)")
    assert ok, line
