from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from dormantops.fusion import FusionEngine
from dormantops.radii import xi_size
from dormantops.verlinde import CycloElem, poly_n3_g2, verlinde_count, verlinde_sum


def test_roots_of_unity_relations():
    one = CycloElem.one(7)
    z = CycloElem.root(7, 3)
    assert z ** 7 == one
    assert z ** 0 == one
    total = CycloElem.zero(7)
    for k in range(7):
        total = total + CycloElem.root(7, k)
    assert total.is_zero()


def test_power_basis_folding():
    """zeta^{p-1} rewrites through the minimal polynomial."""
    z = CycloElem.root(5, 1)
    top = z ** 4
    assert top.coeffs == (Fraction(-1),) * 4


def test_field_operations():
    a = CycloElem(7, tuple(Fraction(k * k - 3, 5) for k in range(6)))
    b = CycloElem.root(7, 2) - CycloElem.rational(7, 3)
    assert (a + b) - b == a
    assert a * b == b * a
    assert (a * b).inv() == a.inv() * b.inv()
    assert (a * a.inv()).as_rational() == 1
    assert -(-a) == a


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(max_denominator=6), min_size=4, max_size=4))
def test_inverse_round_trip(coeffs):
    a = CycloElem(5, tuple(coeffs))
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inv()
    else:
        assert (a * a.inv()) == CycloElem.one(5)


def test_as_rational_rejects_irrational_elements():
    with pytest.raises(ValueError):
        CycloElem.root(5, 1).as_rational()
    assert CycloElem.rational(5, Fraction(2, 3)).as_rational() == Fraction(2, 3)


def test_field_validation():
    with pytest.raises(ValueError):
        CycloElem(4, (Fraction(1),) * 3)
    with pytest.raises(ValueError):
        CycloElem(5, (Fraction(1),) * 3)
    with pytest.raises(ValueError):
        CycloElem.one(5) + CycloElem.one(7)


def _direct_sum(p, n, g):
    """Per-term evaluation straight from the closed form, no group-ring shortcut."""
    roots = [CycloElem.root(p, k) for k in range(p)]
    total = CycloElem.zero(p)
    e = (n - 1) * (g - 1)
    for S in combinations(range(p), n):
        num = CycloElem.one(p)
        for k in S:
            num = num * roots[k]
        num = num ** e
        den = CycloElem.one(p)
        for i in S:
            for j in S:
                if i != j:
                    den = den * (roots[i] - roots[j]) ** (g - 1)
        total = total + num * den.inv()
    return total.as_rational() * Fraction(p) ** ((n - 1) * (g - 1) - 1)


@pytest.mark.parametrize("p,n,g", [(3, 2, 2), (5, 2, 2), (5, 3, 2)])
def test_group_ring_path_matches_direct_evaluation(p, n, g):
    assert verlinde_sum(p, n, g) == _direct_sum(p, n, g)


@pytest.mark.parametrize("p,n,g,value", [
    (3, 2, 2, 1),
    (5, 4, 2, 1),
    (7, 4, 2, 56),
    (7, 5, 2, 14),
    (7, 6, 2, 1),
])
def test_sum_outside_the_validity_window(p, n, g, value):
    assert verlinde_sum(p, n, g) == value


@pytest.mark.parametrize("p,n,g,value", [
    (5, 2, 2, 5),
    (7, 2, 2, 14),
    (7, 3, 2, 56),
    (11, 2, 2, 55),
    (13, 2, 2, 91),
    (11, 3, 2, 1573),
    (13, 3, 2, 5577),
    (7, 2, 3, 98),
    (7, 2, 4, 833),
    (11, 2, 3, 1331),
    (7, 3, 3, 1372),
])
def test_counts_inside_the_validity_window(p, n, g, value):
    assert verlinde_count(p, n, g) == value


@pytest.mark.parametrize("p,n,g", [(7, 2, 3), (7, 3, 3), (11, 2, 2), (11, 2, 3)])
def test_count_matches_fusion_recursion(p, n, g):
    assert verlinde_count(p, n, g) == FusionEngine(p, n).count(g, [])


def test_validity_window_is_enforced():
    with pytest.raises(ValueError):
        verlinde_count(7, 3, 1)
    with pytest.raises(ValueError):
        verlinde_count(3, 2, 2)
    with pytest.raises(ValueError):
        verlinde_count(7, 4, 2)
    with pytest.raises(ValueError):
        verlinde_count(7, 3, 4)


def test_sum_validation():
    with pytest.raises(ValueError):
        verlinde_sum(9, 2, 2)
    with pytest.raises(ValueError):
        verlinde_sum(7, 0, 2)
    with pytest.raises(ValueError):
        verlinde_sum(7, 7, 2)
    with pytest.raises(ValueError):
        verlinde_sum(7, 3, 0)


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (5, 3), (7, 2), (7, 3), (7, 4), (11, 3)])
def test_genus_one_sum_counts_the_classes(p, n):
    assert verlinde_sum(p, n, 1) == xi_size(p, n)


def test_rank_three_genus_two_polynomial():
    assert poly_n3_g2(3) == Fraction(1, 9)
    assert poly_n3_g2(5) == 5
    assert poly_n3_g2(7) == 56
    assert poly_n3_g2(11) == 1573
    assert poly_n3_g2(13) == 5577
    assert verlinde_count(11, 3, 2) == poly_n3_g2(11)
