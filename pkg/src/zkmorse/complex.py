"""Finite simplicial complexes on the ground set [m].

Faces are stored as int bitmasks: vertex ``i`` (1-based) is bit ``i - 1``.
A complex is held as its facet antichain; the full face list is built on
demand and cached.

Two degenerate values are kept apart on purpose:

* the *void* complex has no faces at all (not even the empty set);
* the *irrelevant* complex ``{∅}`` has the single facet ``∅``.

The void complex shows up as the Alexander dual of a full simplex and as the
link of a non-vertex, so recursions must be able to carry it around.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 24


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def full_mask(m: int) -> int:
    return (1 << m) - 1


def subsets_of(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def maximal_sets(masks: Iterable[int]) -> frozenset[int]:
    """Inclusion-maximal elements of a family of masks (duplicates dropped)."""
    kept: list[int] = []
    for s in sorted(set(masks), key=lambda x: -x.bit_count()):
        if not any(s & ~k == 0 for k in kept):
            kept.append(s)
    return frozenset(kept)


def minimal_sets(masks: Iterable[int]) -> frozenset[int]:
    kept: list[int] = []
    for s in sorted(set(masks), key=int.bit_count):
        if not any(k & ~s == 0 for k in kept):
            kept.append(s)
    return frozenset(kept)


def drop_vertex(mask: int, v: int) -> int:
    """Renumber ``mask`` after removing vertex ``v``: labels above ``v`` shift down."""
    low = mask & ((1 << (v - 1)) - 1)
    return low | ((mask >> v) << (v - 1))


def renumbering(m: int, v: int) -> dict[int, int]:
    """Old label -> new label map used by :func:`link` and :func:`deletion`."""
    return {u: (u if u < v else u - 1) for u in range(1, m + 1) if u != v}


class SimplicialComplex:
    """An immutable simplicial complex on ``[m]``, given by its facets.

    ``facets`` is a frozenset of bitmasks. Construct through
    :func:`from_facets` when the input is user data (1-based vertex lists).
    """

    __slots__ = ("m", "facets", "void", "_faces", "_lock")

    def __init__(self, m: int, facets: Iterable[int] = (), void: bool = False):
        if not 0 <= m <= MAX_VERTICES:
            raise ValueError(f"ground set size must be in [0, {MAX_VERTICES}], got {m}")
        masks = frozenset(facets)
        bad = [f for f in masks if f < 0 or f >> m]
        if bad:
            raise ValueError(f"faces outside [{m}]: {[list(vertices_of(b)) for b in bad]}")
        if void:
            if masks:
                raise ValueError("the void complex has no facets")
        elif not masks:
            raise ValueError("empty facet list: pass void=True, or facets=[0] for {∅}")
        self.m = m
        self.facets = maximal_sets(masks)
        self.void = void
        self._faces: frozenset[int] | None = None
        self._lock = threading.Lock()

    @classmethod
    def from_masks(cls, m: int, masks: Iterable[int]) -> "SimplicialComplex":
        """Downward closure of ``masks``; an empty family gives the void complex."""
        masks = list(masks)
        return cls(m, masks, void=not masks)

    @property
    def faces(self) -> frozenset[int]:
        if self._faces is None:
            with self._lock:
                if self._faces is None:
                    out: set[int] = set()
                    for f in self.facets:
                        if f not in out:
                            out.update(subsets_of(f))
                    self._faces = frozenset(out)
        return self._faces

    def __contains__(self, face: int) -> bool:
        return any(face & ~f == 0 for f in self.facets)

    @property
    def vertex_mask(self) -> int:
        out = 0
        for f in self.facets:
            out |= f
        return out

    @property
    def is_simplex(self) -> bool:
        """True for ``2^σ`` with any σ ⊆ [m], including ``{∅}``."""
        return not self.void and len(self.facets) == 1

    @property
    def dim(self) -> int:
        if self.void:
            raise ValueError("the void complex has no dimension")
        return max(f.bit_count() for f in self.facets) - 1

    def facet_lists(self) -> list[list[int]]:
        return sorted(list(vertices_of(f)) for f in self.facets)

    def _key(self):
        return (self.m, self.facets, self.void)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.void:
            return f"SimplicialComplex(m={self.m}, void=True)"
        return f"SimplicialComplex(m={self.m}, facets={self.facet_lists()})"

    def __getstate__(self):
        return self._key()

    def __setstate__(self, state):
        m, facets, void = state
        self.m, self.facets, self.void = m, facets, void
        self._faces = None
        self._lock = threading.Lock()


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..m``; edges are ``(i, j)`` with i < j."""

    m: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            i, j = sorted(e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if i < 1 or j > self.m:
                raise ValueError(f"edge {e} outside vertex range 1..{self.m}")
            norm.add((i, j))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(m, frozenset(tuple(e) for e in edges))

    def neighbors(self) -> dict[int, set[int]]:
        nb: dict[int, set[int]] = {v: set() for v in range(1, self.m + 1)}
        for i, j in self.edges:
            nb[i].add(j)
            nb[j].add(i)
        return nb


# ---------------------------------------------------------------------------
# construction and basic queries


def from_facets(m: int, faces: Iterable[Iterable[int]], void: bool = False) -> SimplicialComplex:
    """Build a complex from 1-based vertex lists, keeping inclusion-maximal ones."""
    if not isinstance(m, int) or m <= 0 or m > MAX_VERTICES:
        raise ValueError(f"ground set size must be in [1, {MAX_VERTICES}], got {m!r}")
    masks = []
    for face in faces:
        face = list(face)
        for v in face:
            if not isinstance(v, int) or not 1 <= v <= m:
                raise ValueError(f"vertex {v!r} out of range 1..{m}")
        masks.append(mask_of(face))
    if void and masks:
        raise ValueError("a void complex cannot list facets")
    return SimplicialComplex(m, masks, void=void)


def all_faces(K: SimplicialComplex) -> list[int]:
    """Every face of ``K`` as a mask, sorted by (size, mask)."""
    return sorted(K.faces, key=lambda f: (f.bit_count(), f))


def full_simplex(m: int) -> SimplicialComplex:
    return SimplicialComplex(m, [full_mask(m)])


def boundary_of_simplex(m: int) -> SimplicialComplex:
    """``2^[m] ∖ {[m]}``."""
    if m == 0:
        return SimplicialComplex(0, void=True)
    return SimplicialComplex(m, [full_mask(m) ^ (1 << i) for i in range(m)])


def minimal_nonfaces(K: SimplicialComplex) -> list[int]:
    """Inclusion-minimal non-faces, sorted by (size, mask).

    A set is a non-face iff it meets the complement of every facet, so the
    minimal non-faces are the minimal transversals of those complements
    (Berge's incremental algorithm).
    """
    full = full_mask(K.m)
    transversals = {0}
    for f in sorted(K.facets):
        edge = full & ~f
        nxt = set()
        for t in transversals:
            if t & edge:
                nxt.add(t)
            else:
                e = edge
                while e:
                    low = e & -e
                    nxt.add(t | low)
                    e ^= low
        transversals = set(minimal_sets(nxt))
    return sorted(transversals, key=lambda f: (f.bit_count(), f))


def alexander_dual(K: SimplicialComplex) -> SimplicialComplex:
    """``K° = {σ ⊆ [m] : [m]∖σ ∉ K}``; the dual of a full simplex is void."""
    full = full_mask(K.m)
    return SimplicialComplex.from_masks(K.m, [full & ~n for n in minimal_nonfaces(K)])


def restriction(K: SimplicialComplex, M: int) -> SimplicialComplex:
    """``K_M``: faces of ``K`` inside ``M``. The ground set stays ``[m]``."""
    if K.void:
        return K
    return SimplicialComplex(K.m, [f & M for f in K.facets])


def deletion(K: SimplicialComplex, v: int) -> SimplicialComplex:
    """``K ∖ v``, renumbered onto ``[m-1]`` (see :func:`renumbering`)."""
    _check_vertex(K, v)
    if K.void:
        return SimplicialComplex(K.m - 1, void=True)
    bit = 1 << (v - 1)
    return SimplicialComplex(K.m - 1, [drop_vertex(f & ~bit, v) for f in K.facets])


def link(K: SimplicialComplex, v: int) -> SimplicialComplex:
    """``link_K(v)``, renumbered onto ``[m-1]``; void when ``{v} ∉ K``."""
    _check_vertex(K, v)
    bit = 1 << (v - 1)
    masks = [drop_vertex(f & ~bit, v) for f in K.facets if f & bit]
    return SimplicialComplex.from_masks(K.m - 1, masks)


def link_face(K: SimplicialComplex, A: int) -> SimplicialComplex:
    """``{σ : σ ∩ A = ∅, σ ∪ A ∈ K}`` on the same ground set; void when ``A ∉ K``."""
    return SimplicialComplex.from_masks(K.m, [f & ~A for f in K.facets if A & ~f == 0])


def star(K: SimplicialComplex, v: int) -> SimplicialComplex:
    """Closed star of ``v`` on the same ground set; void when ``{v} ∉ K``."""
    _check_vertex(K, v)
    bit = 1 << (v - 1)
    return SimplicialComplex.from_masks(K.m, [f for f in K.facets if f & bit])


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """``K1 ⋆ K2`` with ``K2`` relabelled onto ``m1+1 .. m1+m2``."""
    m = K1.m + K2.m
    if K1.void or K2.void:
        return SimplicialComplex(m, void=True)
    return SimplicialComplex(m, [f1 | (f2 << K1.m) for f1 in K1.facets for f2 in K2.facets])


def _check_vertex(K: SimplicialComplex, v: int) -> None:
    if not 1 <= v <= K.m:
        raise ValueError(f"vertex {v} out of range 1..{K.m}")


# ---------------------------------------------------------------------------
# structural predicates


def one_skeleton(K: SimplicialComplex) -> Graph:
    edges = set()
    for f in K.facets:
        for i, j in combinations(vertices_of(f), 2):
            edges.add((i, j))
    return Graph(K.m, frozenset(edges))


def is_flag(K: SimplicialComplex) -> bool:
    return all(n.bit_count() == 2 for n in minimal_nonfaces(K))


def perfect_elimination_ordering(G: Graph) -> list[int] | None:
    """Greedy simplicial-vertex elimination, smallest label first; None if not chordal."""
    nb = G.neighbors()
    alive = set(nb)
    order = []
    while alive:
        for v in sorted(alive):
            rest = nb[v] & alive
            if all(b in nb[a] for a, b in combinations(sorted(rest), 2)):
                break
        else:
            return None
        order.append(v)
        alive.discard(v)
    return order


def is_chordal(G: Graph) -> bool:
    return perfect_elimination_ordering(G) is not None


def is_shifted(K: SimplicialComplex) -> bool:
    """Closed under swapping a vertex for a smaller one (natural order on [m])."""
    if K.void:
        return True
    for f in K.facets:
        for i in vertices_of(f):
            for j in range(1, i):
                jb = 1 << (j - 1)
                if f & jb:
                    continue
                if (f & ~(1 << (i - 1))) | jb not in K:
                    return False
    return True


# ---------------------------------------------------------------------------
# generators


def skeleton_complex(m: int, k: int) -> SimplicialComplex:
    """The ``(k-1)``-skeleton of the simplex on ``[m]``: facets are all k-subsets."""
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    return SimplicialComplex(m, [mask_of(c) for c in combinations(range(1, m + 1), k)])


def flag_of_graph(G: Graph) -> SimplicialComplex:
    """Clique complex of ``G`` (Bron–Kerbosch on maximal cliques)."""
    nb = G.neighbors()
    cliques: list[int] = []

    def expand(r: int, p: set[int], x: set[int]) -> None:
        if not p and not x:
            cliques.append(r)
            return
        pivot = max(p | x, key=lambda u: len(nb[u] & p))
        for v in sorted(p - nb[pivot]):
            expand(r | (1 << (v - 1)), p & nb[v], x & nb[v])
            p = p - {v}
            x = x | {v}

    if G.m:
        expand(0, set(nb), set())
    return SimplicialComplex(G.m, cliques or [0])


def random_complex(
    m: int, seed: int | None = None, max_facets: int | None = None, density: float | None = None
) -> SimplicialComplex:
    """A random complex on ``[m]``; some vertices may be missing.

    Generating faces have a uniform size, or with ``density`` contain each
    vertex independently with that probability.
    """
    rng = random.Random(seed)
    count = rng.randint(1, max_facets or m + 2)
    masks = []
    for _ in range(count):
        if density is None:
            masks.append(mask_of(rng.sample(range(1, m + 1), rng.randint(0, m))))
        else:
            masks.append(mask_of(v for v in range(1, m + 1) if rng.random() < density))
    return SimplicialComplex(m, masks)


def shifted_random(m: int, seed: int | None = None) -> SimplicialComplex:
    """Shifted closure of a few random generating faces."""
    rng = random.Random(seed)
    gens = [mask_of(rng.sample(range(1, m + 1), rng.randint(0, m))) for _ in range(rng.randint(1, 3))]
    seen = set(gens)
    stack = list(gens)
    while stack:
        f = stack.pop()
        for i in vertices_of(f):
            ib = 1 << (i - 1)
            cands = [f & ~ib]
            cands += [(f & ~ib) | (1 << (j - 1)) for j in range(1, i) if not f >> (j - 1) & 1]
            for g in cands:
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
    return SimplicialComplex(m, seen)
