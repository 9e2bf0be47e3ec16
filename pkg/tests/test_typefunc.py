import math

import numpy as np

from twistharm._rational import Q
from twistharm.harmonics import canonical_harmonic
from twistharm.laguerre import eval_phi_radial
from twistharm.typefunc import RadialProfile, TypeComponent, TypeFunction, corpus


def test_profile_expansion_exact_cases():
    # phi-profile in its own order is a delta in the expansion table
    p = RadialProfile.phi(2, 3)
    d = p.laguerre_expansion(3)
    assert d == [Q(0), Q(0), Q(1)]
    # hand case: 1 - 2x + x^2/2 over order gamma=2 (computed by triangular solve)
    d = RadialProfile.from_x_poly([1, -2, "1/2"]).laguerre_expansion(2)
    assert d == [Q(0), Q(-1), Q(1)]


def test_profile_expansion_reconstructs():
    prof = RadialProfile.from_x_poly([Q(1, 3), Q(-1, 2), Q(2, 7)])
    r = np.linspace(0.0, 6.0, 25)
    for gamma in (1, 2, 4):
        d = prof.laguerre_expansion(gamma)
        vals = sum(float(c) * eval_phi_radial(j, gamma, r) for j, c in enumerate(d))
        assert np.max(np.abs(vals - prof.values(r))) < 1e-13


def test_planted_projection_matches_direct(coarse_geom1):
    from twistharm.expansion import spectral_projection
    f = TypeFunction(1, [
        TypeComponent(0.8 - 0.2j, RadialProfile.from_x_poly([1, "1/2"]),
                      canonical_harmonic(1, 1, 0)),
        TypeComponent(0.5j, RadialProfile.gaussian(), canonical_harmonic(1, 0, 0)),
    ])
    rng = np.random.default_rng(4)
    probes = (rng.normal(size=(5, 1)) + 1j * rng.normal(size=(5, 1)))
    probes *= 0.9 / np.linalg.norm(probes, axis=1, keepdims=True)
    for k in range(3):
        direct = spectral_projection(f, k, 1, probes, coarse_geom1)
        planted = f.eval_planted_projection(k, probes)
        assert np.max(np.abs(direct - planted)) < 1e-7


def test_vanishing_branch_in_planted_projection():
    f = TypeFunction(2, [TypeComponent(1.0, RadialProfile.gaussian(),
                                       canonical_harmonic(2, 2, 0))])
    assert f.planted_projection(1) == []   # k=1 < p=2
    assert len(f.planted_projection(2)) == 1


def test_planted_norm_matches_polar_quadrature():
    from twistharm.quadrature import radial_rule, sphere_rule_for_degree
    f = TypeFunction(2, [TypeComponent(0.7 + 0.1j, RadialProfile.phi(1, 3),
                                       canonical_harmonic(2, 1, 0))])
    k = 1
    closed = f.planted_norm_sq_projection(k)
    rr = radial_rule(npts=80, u_max=40.0)
    rule = sphere_rule_for_degree(2, 8)
    pts = rr.r[:, None, None] * rule.points[None, :, :]
    vals = f.eval_planted_projection(k, pts)
    shell = np.sum(rule.weights[None, :] * np.abs(vals) ** 2, axis=1)
    quad = float(2 * math.pi ** 2 * rr.integrate(shell, 2))
    assert abs(closed - quad) < 1e-8 * max(closed, 1.0)


def test_corpus_is_seeded_and_well_formed():
    c1 = corpus(seed=123)
    c2 = corpus(seed=123)
    assert len(c1) == 10
    assert [f.label for f in c1] == [f.label for f in c2]
    for f1, f2 in zip(c1, c2):
        assert len(f1.components) == len(f2.components)
        for a, b in zip(f1.components, f2.components):
            assert a.coeff == b.coeff and a.profile == b.profile
    assert {f.n for f in c1} == {1, 2}
