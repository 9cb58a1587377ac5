import random

import pytest
from hypothesis import strategies as st

from covertype.complex import connected_components, make_complex

HOLLOW_TRIANGLE = [[0, 1], [1, 2], [0, 2]]
TETRA_BOUNDARY = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]


@pytest.fixture
def hollow_triangle():
    return make_complex(HOLLOW_TRIANGLE)


@pytest.fixture
def tetra_boundary():
    return make_complex(TETRA_BOUNDARY)


@st.composite
def complexes(draw, max_vertices=6, max_dim=2, max_facets=8):
    n = draw(st.integers(1, max_vertices))
    simplex = st.lists(st.integers(0, n - 1), min_size=1, max_size=max_dim + 1, unique=True)
    facets = draw(st.lists(simplex, min_size=1, max_size=max_facets))
    return make_complex(facets)


@st.composite
def connected_complexes(draw, **kw):
    K = draw(complexes(**kw))
    return max(connected_components(K), key=lambda C: (len(C.faces), sorted(C.faces)))


def random_connected_complex(rng: random.Random, max_vertices=8, max_dim=2):
    """Connected complex on at most max_vertices vertices, grown by attaching random simplices."""
    n = rng.randint(2, max_vertices)
    facets = []
    reached = {0}
    while len(reached) < n:
        size = rng.randint(2, max_dim + 1)
        anchor = rng.choice(sorted(reached))
        others = rng.sample(range(n), min(n, size + 1))
        s = sorted({anchor, *others[: size - 1]})
        facets.append(s)
        reached.update(s)
    for _ in range(rng.randint(0, n)):
        facets.append(sorted(rng.sample(range(n), rng.randint(2, min(n, max_dim + 1)))))
    return make_complex(facets)
