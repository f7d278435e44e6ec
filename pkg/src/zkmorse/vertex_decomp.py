"""Vertex decomposability in the non-pure sense, with shedding certificates.

The search tries candidate shedding vertices in increasing order and keeps
the first one that works, so every answer here is reproducible. Results are
memoized on the exact labelled complex.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence

from .complex import SimplicialComplex, deletion, link
from .errors import BudgetExceeded


@dataclass(frozen=True)
class SheddingNode:
    """One recursion step: ``vertex`` (an original label) and the two subtrees.

    A ``None`` subtree marks the base case (a simplex, ``{∅}`` or void).
    """

    vertex: int
    deletion: "SheddingNode | None"
    link: "SheddingNode | None"


@dataclass(frozen=True)
class SheddingCertificate:
    order: tuple[int, ...]
    tree: SheddingNode | None


# complex -> 0 for the base case, v > 0 for the chosen shedding vertex, -1 if not VD
_memo: dict[SimplicialComplex, int] = {}
_memo_lock = threading.Lock()


def clear_cache() -> None:
    with _memo_lock:
        _memo.clear()


def default_budget(m: int) -> int:
    # A memoized search meets each (deleted, linked) vertex-set pair at most once.
    return 3 ** m + 1


def is_shedding_vertex(K: SimplicialComplex, v: int) -> bool:
    """No facet of ``link_K(v)`` is a facet of ``K ∖ v``.

    A simplex (or the void complex) is already decomposable by the base case,
    so every vertex counts as shedding there. Otherwise a vertex that is not
    in ``K`` is never shedding.
    """
    if not 1 <= v <= K.m:
        raise ValueError(f"vertex {v} out of range 1..{K.m}")
    if K.void or K.is_simplex:
        return True
    if (1 << (v - 1)) not in K:
        return False
    return not (link(K, v).facets & deletion(K, v).facets)


def sheds_literally(K: SimplicialComplex, v: int) -> bool:
    """The facet condition alone, without the simplex short-circuit.

    On a simplex this is false for every vertex, since the link and the
    deletion share their single facet.
    """
    if not 1 <= v <= K.m:
        raise ValueError(f"vertex {v} out of range 1..{K.m}")
    if K.void or (1 << (v - 1)) not in K:
        return False
    return not (link(K, v).facets & deletion(K, v).facets)


def _decide(K: SimplicialComplex, counter: list[int], budget: int) -> int:
    hit = _memo.get(K)
    if hit is not None:
        return hit
    counter[0] += 1
    if counter[0] > budget:
        raise BudgetExceeded(f"vertex decomposability search exceeded {budget} nodes")
    if K.void or K.is_simplex:
        result = 0
    else:
        result = -1
        for v in range(1, K.m + 1):
            if not is_shedding_vertex(K, v):
                continue
            if _decide(deletion(K, v), counter, budget) >= 0 and _decide(link(K, v), counter, budget) >= 0:
                result = v
                break
    with _memo_lock:
        _memo[K] = result
    return result


def is_decomposing_vertex(K: SimplicialComplex, v: int, budget: int | None = None) -> bool:
    """``v`` sheds literally and both its deletion and its link are decomposable.

    This is the vertex that witnesses decomposability, which is what results
    about "a shedding vertex of a decomposable complex" actually use.
    """
    return (
        sheds_literally(K, v)
        and is_vertex_decomposable(deletion(K, v), budget)
        and is_vertex_decomposable(link(K, v), budget)
    )


def is_vertex_decomposable(K: SimplicialComplex, budget: int | None = None) -> bool:
    """Decide vertex decomposability; the void complex counts as decomposable."""
    if budget is None:
        budget = default_budget(K.m)
    return _decide(K, [0], budget) >= 0


def _tree(K: SimplicialComplex, labels: Sequence[int]) -> SheddingNode | None:
    v = _memo[K]
    if v == 0:
        return None
    rest = [u for i, u in enumerate(labels, start=1) if i != v]
    return SheddingNode(labels[v - 1], _tree(deletion(K, v), rest), _tree(link(K, v), rest))


def shedding_sequence(K: SimplicialComplex, budget: int | None = None) -> SheddingCertificate | None:
    """Certificate for a vertex-decomposable ``K``, or None.

    ``order`` is ``(v_1, ..., v_l)`` where ``v_l`` is shed from ``K`` first,
    ``v_{l-1}`` from ``K ∖ v_l`` and so on until a simplex remains.
    """
    if not is_vertex_decomposable(K, budget):
        return None
    tree = _tree(K, list(range(1, K.m + 1)))
    chain = []
    node = tree
    while node is not None:
        chain.append(node.vertex)
        node = node.deletion
    return SheddingCertificate(tuple(reversed(chain)), tree)


def replay_certificate(K: SimplicialComplex, tree: SheddingNode | None) -> bool:
    """Re-derive vertex decomposability from a certificate tree, without search."""

    def walk(C: SimplicialComplex, labels: list[int], node: SheddingNode | None) -> bool:
        if node is None:
            return C.void or C.is_simplex
        if node.vertex not in labels:
            return False
        v = labels.index(node.vertex) + 1
        if not is_shedding_vertex(C, v):
            return False
        rest = labels[: v - 1] + labels[v:]
        return walk(deletion(C, v), rest, node.deletion) and walk(link(C, v), rest, node.link)

    return walk(K, list(range(1, K.m + 1)), tree)


def verify_shedding_sequence(K: SimplicialComplex, order: Sequence[int], strict: bool = True) -> bool:
    """Check ``order = (v_1, ..., v_l)`` against the shedding-sequence definition.

    ``v_k`` must be a shedding vertex of ``K ∖ v_l ∖ ... ∖ v_{k+1}`` for
    ``k < l`` and the full deletion must be a simplex. In strict mode ``v_l``
    must also be a shedding vertex of ``K`` itself.
    """
    order = list(order)
    if len(set(order)) != len(order):
        raise ValueError(f"repeated vertex in {order}")
    for v in order:
        if not 1 <= v <= K.m:
            raise ValueError(f"vertex {v} out of range 1..{K.m}")
    labels = list(range(1, K.m + 1))
    C = K
    for k in range(len(order), 0, -1):
        v = labels.index(order[k - 1]) + 1
        if (k < len(order) or strict) and not is_shedding_vertex(C, v):
            return False
        C = deletion(C, v)
        del labels[v - 1]
    return C.is_simplex
