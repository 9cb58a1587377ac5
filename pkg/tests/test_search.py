import random

import pytest
from hypothesis import given, settings

from covertype.complex import connected_components, make_complex
from covertype.covers import Cover, PreconditionError, verify_good_cover
from covertype.homology import betti_numbers
from covertype.search import (
    SearchConfig,
    ThreeCoverType,
    Universe,
    Verdict,
    classify_three_covers,
    element_universe,
    strict_ct_search,
)

from .conftest import connected_complexes


def test_hollow_triangle_needs_three(hollow_triangle):
    none = strict_ct_search(hollow_triangle, SearchConfig(2, Universe.ALL_SUBCOMPLEXES))
    assert none.verdict is Verdict.NO_GOOD_COVER_UP_TO and none.size == 2
    found = strict_ct_search(hollow_triangle, SearchConfig(3, Universe.ALL_SUBCOMPLEXES))
    assert found.verdict is Verdict.FOUND_GOOD_COVER and found.size == 3
    assert verify_good_cover(found.cover).good


def test_tetrahedron_boundary_needs_four(tetra_boundary):
    out = strict_ct_search(tetra_boundary, SearchConfig(3, Universe.ALL_SUBCOMPLEXES))
    assert out.verdict is Verdict.NO_GOOD_COVER_UP_TO and out.size == 3
    out = strict_ct_search(tetra_boundary, SearchConfig(4, Universe.ALL_SUBCOMPLEXES))
    assert out.verdict is Verdict.FOUND_GOOD_COVER and out.size == 4


def test_simplex_needs_one():
    out = strict_ct_search(make_complex([[0, 1, 2]]))
    assert out.verdict is Verdict.FOUND_GOOD_COVER and out.size == 1


def test_two_points_need_two():
    out = strict_ct_search(make_complex([[0], [1]]), SearchConfig(2))
    assert out.size == 2


def test_restricted_universe_never_claims_exhaustiveness(tetra_boundary):
    out = strict_ct_search(tetra_boundary, SearchConfig(3, Universe.INDUCED_BY_VERTEX_SETS))
    assert out.verdict is Verdict.INCONCLUSIVE and "not exhaustive" in out.reason
    out = strict_ct_search(tetra_boundary, SearchConfig(4, Universe.UNIONS_OF_FACETS))
    assert out.verdict is Verdict.FOUND_GOOD_COVER


def test_default_universe_for_larger_complexes(tetra_boundary):
    assert strict_ct_search(tetra_boundary, SearchConfig(1)).universe is Universe.INDUCED_BY_VERTEX_SETS


def test_expired_budget_is_inconclusive(tetra_boundary):
    out = strict_ct_search(tetra_boundary, SearchConfig(3, Universe.ALL_SUBCOMPLEXES, time_budget_ms=0))
    assert out.verdict is Verdict.INCONCLUSIVE and "budget" in out.reason


def test_search_is_deterministic(tetra_boundary):
    config = SearchConfig(4, Universe.ALL_SUBCOMPLEXES)
    a, b = strict_ct_search(tetra_boundary, config), strict_ct_search(tetra_boundary, config)
    assert a.cover == b.cover and a.explored == b.explored


def test_universe_enumeration_is_canonical(hollow_triangle):
    elems = element_universe(hollow_triangle, Universe.ALL_SUBCOMPLEXES)
    assert len(elems) == len(set(elems))
    assert elems[0] == frozenset({(0,)})


def test_universe_names_parse():
    assert Universe.parse("AllSubcomplexes") is Universe.ALL_SUBCOMPLEXES
    assert Universe.parse("induced") is Universe.INDUCED_BY_VERTEX_SETS
    with pytest.raises(ValueError):
        Universe.parse("everything")
    with pytest.raises(ValueError):
        SearchConfig(0)


def test_circle_three_cover_is_circle_like(hollow_triangle):
    cover = Cover(hollow_triangle, tuple((f"e{i}", make_complex([f])) for i, f in enumerate(hollow_triangle.facets)))
    assert classify_three_covers(cover) is ThreeCoverType.CIRCLE_LIKE


def test_disk_three_cover_is_contractible():
    K = make_complex([[0, 1, 2]])
    cover = Cover(K, (("t", K), ("e", make_complex([[0, 1]])), ("v", make_complex([[2]]))))
    assert classify_three_covers(cover) is ThreeCoverType.CONTRACTIBLE


def test_classification_preconditions(hollow_triangle):
    with pytest.raises(PreconditionError):
        classify_three_covers(Cover(hollow_triangle, (("all", hollow_triangle),)))


@settings(max_examples=25, deadline=None)
@given(connected_complexes(max_vertices=5, max_dim=1, max_facets=6))
def test_three_cover_classification_matches_first_betti(K):
    out = strict_ct_search(K, SearchConfig(3, Universe.ALL_SUBCOMPLEXES))
    if out.verdict is not Verdict.FOUND_GOOD_COVER:
        return
    cover = out.cover
    while len(cover) < 3:
        # pad with a vertex so that there are exactly three elements
        v = K.sorted_vertices()[0]
        cover = Cover(K, cover.elements + ((f"pad{len(cover)}", make_complex([[v]])),))
    if not verify_good_cover(cover).good:
        return
    b = betti_numbers(K)
    b1 = b[1] if len(b) > 1 else 0
    expected = ThreeCoverType.CIRCLE_LIKE if b1 == 1 else ThreeCoverType.CONTRACTIBLE
    assert classify_three_covers(cover) is expected
