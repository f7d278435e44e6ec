"""Exhaustive and random families of small complexes used by the test corpus."""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from .complex import SimplicialComplex, mask_of, random_complex
from .complex import alexander_dual
from .vertex_decomp import is_vertex_decomposable


def all_complexes(m: int, all_vertices: bool = True) -> Iterator[SimplicialComplex]:
    """Every simplicial complex on ``[m]``, each facet set exactly once.

    With ``all_vertices`` only complexes containing every singleton are
    produced; otherwise vertices may be missing (the void complex is skipped).
    """
    higher = [mask_of(c) for k in range(2, m + 1) for c in combinations(range(1, m + 1), k)]
    singles = [1 << i for i in range(m)]

    def extend(idx: int, faces: set[int]) -> Iterator[set[int]]:
        if idx == len(higher):
            yield faces
            return
        s = higher[idx]
        yield from extend(idx + 1, faces)
        if all(s & ~(1 << i) in faces for i in range(m) if s >> i & 1):
            faces.add(s)
            yield from extend(idx + 1, faces)
            faces.discard(s)

    if all_vertices:
        bases = [set(singles) | {0}]
    else:
        bases = []
        for r in range(1 << m):
            bases.append({0} | {b for b in singles if r & b})
    for base in bases:
        for faces in extend(0, set(base)):
            yield SimplicialComplex(m, faces)


def vd_dual_corpus(max_m: int = 5) -> list[SimplicialComplex]:
    """Complexes with every singleton a face and a vertex-decomposable dual."""
    return [K for m in range(1, max_m + 1) for K in all_complexes(m) if is_vertex_decomposable(alexander_dual(K))]


def random_corpus(count: int, max_m: int = 6, seed: int = 0) -> list[SimplicialComplex]:
    """Random complexes on 2..max_m vertices, deterministic in ``seed``.

    Every other entry is the Alexander dual of a random complex, so that the
    dual side is random too and often not vertex decomposable. Void duals
    (of a full simplex) are replaced by the complex itself.
    """
    out = []
    for i in range(count):
        m = 2 + (i % (max_m - 1))
        R = random_complex(m, seed=seed * 1_000_003 + i, density=0.5)
        K = alexander_dual(R) if i % 2 else R
        out.append(R if K.void else K)
    return out
