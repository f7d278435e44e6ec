import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from zkmorse.complex import SimplicialComplex, from_facets

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def complexes(draw, min_m=1, max_m=6, all_vertices=False):
    m = draw(st.integers(min_m, max_m))
    masks = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=1, max_size=6))
    if all_vertices:
        masks += [1 << i for i in range(m)]
    return SimplicialComplex(m, masks)


@pytest.fixture
def fig1():
    return from_facets(4, [[1, 3], [2, 4]])


@pytest.fixture
def four_gon():
    return from_facets(4, [[1, 3], [1, 4], [2, 3], [2, 4]])


@pytest.fixture
def link_example():
    # the link complex from the worked example on six vertices
    return from_facets(5, [[1, 2, 5], [1, 3, 4], [1, 4, 5], [2, 3, 4], [2, 3, 5]])
