from decimal import Decimal, getcontext
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covertype.bounds import (
    NonOrientable,
    Orientable,
    Surface,
    bouquet_bounds,
    bouquet_ct,
    ceil_half_sqrt,
    chromatic_number,
    combined_lower_bound,
    cup_lower_bound,
    floor_half_sqrt,
    hd_lower_bound,
    lower_bound_from_profile,
    poincare_admits,
    poincare_lower_bound,
    surface_ct_bounds,
)
from covertype.complex import make_complex
from covertype.gallery import bouquet_graph, klein_8, rp2_hemidodec, sphere, torus_k7_triangulation
from covertype.homology import PoincarePolynomial
from covertype.linalg import GF2, QQ

getcontext().prec = 60


def decimal_half_sqrt(a, n):
    return (Decimal(a) + Decimal(n).sqrt()) / 2


@pytest.mark.parametrize("coeffs, expected", [((1, 1), 3), ((1, 2, 1), 4), ((2,), 2), ((1,), 1)])
def test_poincare_bound_examples(coeffs, expected):
    assert poincare_lower_bound(PoincarePolynomial(coeffs)) == expected


@pytest.mark.parametrize("m", range(1, 8))
def test_poincare_bound_of_sphere_profile(m):
    assert poincare_lower_bound([1] + [0] * (m - 1) + [1]) == m + 2


def test_homological_dimension_bounds(tetra_boundary):
    assert hd_lower_bound(tetra_boundary) == 4
    assert hd_lower_bound(make_complex([[0, 1, 2], [0, 2, 3]])) == 1
    K = klein_8().complex
    assert hd_lower_bound(K, GF2) == 4
    assert hd_lower_bound(K, QQ) == 3


def test_cup_bound_examples():
    assert cup_lower_bound(torus_k7_triangulation()) == 6
    assert cup_lower_bound(rp2_hemidodec().complex) == 6
    assert cup_lower_bound(bouquet_graph(5).complex) is None


def test_combined_bounds():
    assert combined_lower_bound(make_complex([[0], [1], [2]])).lower == 3
    assert combined_lower_bound(torus_k7_triangulation()).lower == 6
    assert lower_bound_from_profile([PoincarePolynomial((1, 6, 1))], cup_nonzero=True) == 6


@pytest.mark.parametrize("h, n", [(0, 1), (1, 3), (2, 4), (3, 4), (6, 5), (7, 6), (8, 6), (9, 6), (10, 6), (11, 7)])
def test_bouquet_values(h, n):
    assert bouquet_ct(h) == n
    assert bouquet_bounds(h).as_dict()["lower"] == n


def test_chromatic_numbers():
    assert chromatic_number(Orientable(0)) == 4
    assert chromatic_number(Orientable(1)) == 7
    assert chromatic_number(NonOrientable(1)) == 6
    assert chromatic_number(NonOrientable(2)) == 6


@pytest.mark.parametrize("text, pair", [
    ("g=0", (4, 4)), ("g=1", (7, 7)), ("g=2", (6, 10)), ("g=3", (6, 10)),
    ("q=1", (6, 6)), ("q=2", (7, 8)), ("q=3", (7, 9)), ("q=4", (7, 9)),
])
def test_surface_bounds_table(text, pair):
    r = surface_ct_bounds(Surface.parse(text))
    assert (r.lower, r.upper) == pair


def test_surface_parsing_errors():
    for bad in ("g=-1", "q=0", "x=2", "g="):
        with pytest.raises(ValueError):
            Surface.parse(bad)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10_000))
def test_bouquet_ct_matches_binomial_window(h):
    n = bouquet_ct(h)
    assert comb(n - 2, 2) < h <= comb(n - 1, 2)
    assert n == poincare_lower_bound((1, h))


@settings(max_examples=300, deadline=None)
@given(st.integers(-20, 20), st.integers(0, 10**12))
def test_integer_square_root_formulas(a, n):
    exact = decimal_half_sqrt(a, n)
    assert floor_half_sqrt(a, n) == int(exact.to_integral_value(rounding="ROUND_FLOOR"))
    assert ceil_half_sqrt(a, n) == int(exact.to_integral_value(rounding="ROUND_CEILING"))


@settings(max_examples=200, deadline=None)
@given(st.booleans(), st.integers(1, 1000))
def test_lower_never_exceeds_upper(orientable, genus):
    r = surface_ct_bounds(Surface(orientable, genus))
    assert r.lower <= r.upper


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=5), st.integers(0, 4), st.integers(1, 3))
def test_poincare_bound_is_monotone(coeffs, k, bump):
    coeffs = [max(1, coeffs[0])] + coeffs[1:]
    bigger = list(coeffs) + [0] * max(0, k + 1 - len(coeffs))
    bigger[k] += bump
    assert poincare_lower_bound(coeffs) <= poincare_lower_bound(bigger)
    n = poincare_lower_bound(coeffs)
    assert poincare_admits(coeffs, n) and (n == 1 or not poincare_admits(coeffs, n - 1))


@pytest.mark.parametrize("m", range(0, 5))
def test_spheres_sandwich(m):
    assert combined_lower_bound(sphere(m).complex).lower == m + 2


def test_bouquet_formula_agreement_up_to_ten_thousand():
    for h in range(1, 10_001):
        n = bouquet_ct(h)
        assert comb(n - 2, 2) < h <= comb(n - 1, 2)
        assert n == poincare_lower_bound((1, h))
