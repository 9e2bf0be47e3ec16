import math

import pytest

from twistharm._rational import Q
from twistharm.laguerre import laguerre_coeffs
from twistharm.rootisolation import (RootInterval, clear_denominators,
                                     common_zero_scan, count_roots, isolate_roots,
                                     laguerre_roots_isolated, poly_eval,
                                     refine_interval, sturm_chain,
                                     value_separated_from_roots)


def test_clear_denominators():
    assert clear_denominators([Q(1, 2), Q(-1, 3)]) == (3, -2)
    assert clear_denominators([Q(2), Q(4)]) == (1, 2)


def test_sturm_counts_on_quadratic():
    poly = (-2, 0, 1)  # x^2 - 2
    chain = sturm_chain(poly)
    assert count_roots(chain, Q(0), Q(2)) == 1
    assert count_roots(chain, Q(-2), Q(0)) == 1
    assert count_roots(chain, Q(-2), Q(2)) == 2
    assert count_roots(chain, Q(2), Q(3)) == 0


def test_isolate_and_refine_l2():
    # roots of L_2^0 are 2 +- sqrt(2)
    poly = clear_denominators(laguerre_coeffs(2, 0))
    ivs = isolate_roots(poly, Q(0), Q(10))
    assert len(ivs) == 2
    refined = [refine_interval(poly, iv, Q(1, 10 ** 12)) for iv in ivs]
    roots = sorted(iv.midpoint_float() for iv in refined)
    assert abs(roots[0] - (2 - math.sqrt(2))) < 1e-11
    assert abs(roots[1] - (2 + math.sqrt(2))) < 1e-11
    for iv in refined:
        assert iv.width <= Q(1, 10 ** 12)


@pytest.mark.parametrize("k,order", [(4, 0), (6, 1), (5, 3)])
def test_all_roots_found(k, order):
    ivs = laguerre_roots_isolated(k, order, xmax=200, resolution=Q(1, 10 ** 9))
    assert len(ivs) == k


def test_common_zero_scan_trivial_and_hand_cases():
    assert common_zero_scan(0, 1, 0, 10, Q(1, 10 ** 6)) == []
    # zero of L_1^0 is x = 1; L_2^0(1) = 1 - 2 + 1/2 != 0
    assert common_zero_scan(1, 2, 0, 10, Q(1, 10 ** 9)) == []
    assert common_zero_scan(3, 4, 1, 30, Q(1, 10 ** 12)) == []
    with pytest.raises(ValueError):
        common_zero_scan(3, 3, 0, 10, Q(1, 10 ** 6))


def test_overlap_detection_on_constructed_pair():
    a = RootInterval(Q(1), Q(2))
    assert a.overlaps(RootInterval(Q(2), Q(3)))
    assert not a.overlaps(RootInterval(Q(5, 2), Q(3)))


def test_value_separation_certificates():
    # x = 2 is an exact root of L_2^2 (6 - 4x + x^2/2)
    out = value_separated_from_roots(2, 2, Q(2), Q(1, 10 ** 9))
    assert out["exact_value_sign"] == 0 and not out["nonzero"]
    out = value_separated_from_roots(2, 2, Q(1), Q(1, 10 ** 9))
    assert out["nonzero"] and not out["near_root"]


def test_poly_eval_exact_rational():
    poly = clear_denominators(laguerre_coeffs(3, 1))
    x = Q(7, 3)
    direct = sum(c * x ** i for i, c in enumerate(poly))
    assert poly_eval(poly, x) == direct
