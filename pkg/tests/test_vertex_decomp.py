from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complexes
from zkmorse.complex import (
    Graph,
    alexander_dual,
    deletion,
    flag_of_graph,
    from_facets,
    full_simplex,
    is_chordal,
    is_flag,
    link,
    shifted_random,
    skeleton_complex,
)
from zkmorse.corpus import all_complexes
from zkmorse.errors import BudgetExceeded
from zkmorse.vertex_decomp import (
    clear_cache,
    is_decomposing_vertex,
    is_shedding_vertex,
    is_vertex_decomposable,
    replay_certificate,
    shedding_sequence,
    sheds_literally,
    verify_shedding_sequence,
)

CYCLE = from_facets(4, [[1, 2], [1, 4], [2, 3], [3, 4]])


def test_shedding_vertex_examples():
    assert is_shedding_vertex(CYCLE, 4)
    path = from_facets(3, [[1, 2], [2, 3]])
    assert not is_shedding_vertex(path, 2)


def test_shedding_vertex_edge_cases():
    assert is_shedding_vertex(full_simplex(3), 2)
    assert not sheds_literally(full_simplex(3), 2)
    assert not is_shedding_vertex(from_facets(3, [[1], [2]]), 3)
    with pytest.raises(ValueError):
        is_shedding_vertex(CYCLE, 5)


def test_vd_examples():
    assert is_vertex_decomposable(CYCLE)
    assert not is_vertex_decomposable(from_facets(4, [[1, 2], [3, 4]]))
    assert is_vertex_decomposable(from_facets(2, [], void=True))
    assert is_vertex_decomposable(from_facets(3, [[]]))


@pytest.mark.parametrize("m", range(2, 7))
def test_skeleton_duals_are_vd(m):
    for k in range(1, m + 1):
        assert is_vertex_decomposable(alexander_dual(skeleton_complex(m, k)))


def test_sequence_verification():
    assert verify_shedding_sequence(CYCLE, (1, 2, 3, 4))
    assert not verify_shedding_sequence(CYCLE, (1, 3, 2, 4))
    assert verify_shedding_sequence(full_simplex(3), ())
    with pytest.raises(ValueError):
        verify_shedding_sequence(CYCLE, (1, 1))
    with pytest.raises(ValueError):
        verify_shedding_sequence(CYCLE, (0,))


def test_strict_and_lax_modes_differ():
    K = from_facets(3, [[1], [2, 3]])
    assert verify_shedding_sequence(K, (1, 2), strict=False)
    assert not verify_shedding_sequence(K, (1, 2), strict=True)


def test_certificate_is_deterministic():
    clear_cache()
    first = shedding_sequence(CYCLE)
    clear_cache()
    assert shedding_sequence(CYCLE) == first
    # vertex 1 is shed first, then 2, leaving the edge 34
    assert first.order == (2, 1)
    assert verify_shedding_sequence(CYCLE, first.order)
    assert shedding_sequence(from_facets(4, [[1, 2], [3, 4]])) is None


def test_budget():
    clear_cache()
    with pytest.raises(BudgetExceeded):
        is_vertex_decomposable(alexander_dual(skeleton_complex(6, 3)), budget=3)
    clear_cache()


@given(complexes(max_m=6))
def test_certificates_replay_and_verify(K):
    cert = shedding_sequence(K)
    assert (cert is not None) == is_vertex_decomposable(K)
    if cert is not None:
        assert replay_certificate(K, cert.tree)
        assert verify_shedding_sequence(K, cert.order, strict=True)


def _link_and_deletion_duals_decompose(K):
    D = alexander_dual(K)
    if not is_vertex_decomposable(D):
        return True
    for v in range(1, K.m + 1):
        if is_decomposing_vertex(D, v):
            if not is_vertex_decomposable(alexander_dual(link(K, v))):
                return False
            if not is_vertex_decomposable(alexander_dual(deletion(K, v))):
                return False
    return True


@pytest.mark.parametrize("m", range(1, 6))
def test_link_and_deletion_duals_exhaustive(m):
    assert all(_link_and_deletion_duals_decompose(K) for K in all_complexes(m))


def test_facet_condition_alone_does_not_decompose_duals():
    # dual is two hollow triangles glued at 5; 5 meets the facet condition
    # but deleting it leaves two disjoint edges
    K = from_facets(5, [[1, 2], [1, 3, 5], [1, 4, 5], [2, 3, 5], [2, 4, 5], [3, 4]])
    D = alexander_dual(K)
    assert D.facet_lists() == [[1, 2], [1, 5], [2, 5], [3, 4], [3, 5], [4, 5]]
    assert is_vertex_decomposable(D)
    assert sheds_literally(D, 5) and not is_decomposing_vertex(D, 5)
    assert not is_vertex_decomposable(alexander_dual(link(K, 5)))


@given(complexes(min_m=6, max_m=6, all_vertices=True))
def test_link_and_deletion_duals_random_six(K):
    assert _link_and_deletion_duals_decompose(K)


@given(st.integers(1, 7), st.integers(0, 10**6))
def test_shifted_has_vd_dual(m, seed):
    assert is_vertex_decomposable(alexander_dual(shifted_random(m, seed)))


@pytest.mark.parametrize("m", range(1, 6))
def test_flag_chordal_has_vd_dual(m):
    pairs = list(combinations(range(1, m + 1), 2))
    for r in range(1 << len(pairs)):
        G = Graph.from_edges(m, [e for i, e in enumerate(pairs) if r >> i & 1])
        if is_chordal(G):
            K = flag_of_graph(G)
            assert is_flag(K)
            assert is_vertex_decomposable(alexander_dual(K)), G


@given(st.data())
def test_flag_chordal_has_vd_dual_six(data):
    pairs = list(combinations(range(1, 7), 2))
    G = Graph.from_edges(6, data.draw(st.lists(st.sampled_from(pairs), unique=True)))
    if is_chordal(G):
        assert is_vertex_decomposable(alexander_dual(flag_of_graph(G)))
