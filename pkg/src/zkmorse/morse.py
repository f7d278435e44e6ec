"""The inductive acyclic matching on Z_K(D^n, S^{n-1}) and its critical cells.

On one disk the matching pairs ``e_-^{i+1}`` with ``e_+^i`` (``i <= n-2``)
and ``e_•^n`` with ``e_+^{n-1}``, leaving ``e_-^0`` alone. On the product it
is built one coordinate at a time: stage k pairs two still-unmatched cells
that differ only in coordinate k by a disk pair.

Critical cells only use ``e_-^0``, ``e_+^{n-1}`` and ``e_•^n``, so they are
written as sign vectors: strings over ``'-'``, ``'+'`` and ``'*'`` (for •),
coordinate 1 leftmost. The sign-vector set does not depend on n; only the
dimensions do.

Sign-vector positions returned by :func:`sgn_min` and :func:`pivot_plus` are 1-based,
and ``None`` stands for "absent".
"""

from __future__ import annotations

import functools
import warnings
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .chains import ChainComplex
from .complex import (
    SimplicialComplex,
    alexander_dual,
    deletion,
    full_mask,
    link,
    mask_of,
    minimal_nonfaces,
    vertices_of,
)
from .cw import (
    DEFAULT_CELL_BUDGET,
    ProductCell,
    enumerate_cells,
    product_boundary,
    support,
)
from .errors import HypothesisError, HypothesisNotMet, TheoremViolation
from .vertex_decomp import is_decomposing_vertex, is_vertex_decomposable

MINUS, PLUS, BULLET = "-", "+", "*"


class MatchEdge(NamedTuple):
    source: ProductCell  # the higher-dimensional cell
    target: ProductCell
    coordinate: int  # 1-based


@dataclass(frozen=True)
class Matching:
    n: int
    edges: tuple[MatchEdge, ...]

    @functools.cached_property
    def partner(self) -> dict[ProductCell, ProductCell]:
        out: dict[ProductCell, ProductCell] = {}
        for e in self.edges:
            out[e.source] = e.target
            out[e.target] = e.source
        return out

    def is_matching(self) -> bool:
        seen: set[ProductCell] = set()
        for e in self.edges:
            if e.source in seen or e.target in seen:
                return False
            seen.add(e.source)
            seen.add(e.target)
        return True


# ---------------------------------------------------------------------------
# the direct route: build the matching on the full cell poset


def _inductive_matching(cells: Iterable[ProductCell], n: int, m: int) -> list[MatchEdge]:
    """Stage-by-stage matching on any face-closed set of product cells."""
    cells = list(cells)
    present = set(cells)
    matched: set[ProductCell] = set()
    edges = []
    for k in range(m):
        for c in cells:
            code = c[k]
            # e_-^{i+1} -> e_+^i and e_•^n -> e_+^{n-1}: even codes >= 2 pair down by one
            if code < 2 or code & 1 or c in matched:
                continue
            t = c[:k] + (code - 1,) + c[k + 1:]
            if t in matched or t not in present:
                continue
            matched.add(c)
            matched.add(t)
            edges.append(MatchEdge(c, t, k + 1))
    return edges


def build_matching(K: SimplicialComplex, n: int, budget: int = DEFAULT_CELL_BUDGET) -> Matching:
    cells = enumerate_cells(K, n, budget)
    m = Matching(n, tuple(_inductive_matching(cells, n, K.m)))
    if not m.is_matching():
        raise AssertionError("inductive construction produced a non-matching")
    return m


def gradient_edges(matching: Matching, cells: Iterable[ProductCell]) -> Iterator[tuple[ProductCell, ProductCell, bool]]:
    """Edges of the modified Hasse diagram as ``(tail, head, reversed)``.

    Hasse edges point from a cell to its codimension-one faces; matched
    edges are flipped to point upward.
    """
    partner = matching.partner
    for c in cells:
        for f, _ in product_boundary(c, matching.n):
            if partner.get(c) == f:
                yield f, c, True
            else:
                yield c, f, False


def verify_acyclic(matching: Matching, cells: Iterable[ProductCell]) -> bool:
    """Kahn's algorithm on the modified Hasse diagram."""
    cells = list(cells)
    cellset = set(cells)
    for e in matching.edges:
        if e.source not in cellset or e.target not in cellset:
            raise ValueError("matching edge outside the given cells")
    out: dict[ProductCell, list[ProductCell]] = {c: [] for c in cells}
    indeg: Counter = Counter()
    for u, v, _ in gradient_edges(matching, cells):
        out[u].append(v)
        indeg[v] += 1
    queue = deque(c for c in cells if indeg[c] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return seen == len(cells)


def l_value(cell: ProductCell) -> int:
    """Sum of coordinate dimensions plus the number of plus-cells."""
    return sum(c // 2 + (c & 1) for c in cell)


def l_monotone(matching: Matching, cells: Iterable[ProductCell], strict: bool = False) -> bool:
    """``l`` is constant along flipped edges and never increases along Hasse edges.

    With ``strict`` every Hasse edge must drop ``l`` by 1 or 2. That fails in
    general: an unmatched edge from a minus cell (or the bullet) to a plus
    cell keeps ``l`` fixed.
    """
    allowed = (1, 2) if strict else (0, 1, 2)
    for u, v, flipped in gradient_edges(matching, cells):
        drop = l_value(u) - l_value(v)
        if flipped and drop != 0:
            return False
        if not flipped and drop not in allowed:
            return False
    return True


def cell_to_sign_vector(cell: ProductCell, n: int) -> str:
    out = []
    for c in cell:
        if c == 0:
            out.append(MINUS)
        elif c == 2 * n - 1:
            out.append(PLUS)
        elif c == 2 * n:
            out.append(BULLET)
        else:
            raise ValueError(f"cell {cell} has a coordinate outside {{e_-^0, e_+^(n-1), e_•^n}}")
    return "".join(out)


def sign_vector_to_cell(c: str, n: int) -> ProductCell:
    table = {MINUS: 0, PLUS: 2 * n - 1, BULLET: 2 * n}
    return tuple(table[s] for s in c)


def critical_cells(matching: Matching, cells: Iterable[ProductCell]) -> list[ProductCell]:
    partner = matching.partner
    return [c for c in cells if c not in partner]


def critical_direct(K: SimplicialComplex, n: int, budget: int = DEFAULT_CELL_BUDGET) -> set[str]:
    """Unmatched cells of the explicit matching, as sign vectors."""
    cells = enumerate_cells(K, n, budget)
    matching = Matching(n, tuple(_inductive_matching(cells, n, K.m)))
    return {cell_to_sign_vector(c, n) for c in critical_cells(matching, cells)}


# ---------------------------------------------------------------------------
# the recursive route: sign vectors only


@functools.lru_cache(maxsize=1 << 16)
def _crit(K: SimplicialComplex) -> frozenset[str]:
    if K.void:
        return frozenset()
    if K.m == 0:
        return frozenset({""})
    prev = _crit(deletion(K, K.m))
    lk = _crit(link(K, K.m))
    out = {c + MINUS for c in prev}
    out |= {c + PLUS for c in prev - lk}
    out |= {c + BULLET for c in lk - prev}
    return frozenset(out)


def critical_recursive(K: SimplicialComplex) -> frozenset[str]:
    """Critical sign vectors from the last-vertex recursion.

    With ``A = Crit(K ∖ m)`` and ``B = Crit(link_K(m))``:
    ``Crit(K) = A·'-'  ∪  (A ∖ B)·'+'  ∪  (B ∖ A)·'*'``.
    """
    return _crit(K)


def sign_vector_dim(c: str, n: int) -> int:
    return (n - 1) * c.count(PLUS) + n * c.count(BULLET)


def sign_vector_support(c: str) -> int:
    return mask_of(i for i, s in enumerate(c, start=1) if s == BULLET)


def morse_betti(K: SimplicialComplex, n: int) -> dict[int, int]:
    """Number of critical cells per dimension."""
    counts = Counter(sign_vector_dim(c, n) for c in critical_recursive(K))
    return dict(sorted(counts.items()))


# ---------------------------------------------------------------------------
# structure of critical cells


def sgn_min(c: str, sgn: str) -> int | None:
    i = c.find(sgn)
    return None if i < 0 else i + 1


def pivot_plus(c: str) -> int | None:
    """Last plus before the first bullet (or the last plus, without bullets)."""
    first_bullet = c.find(BULLET)
    head = c if first_bullet < 0 else c[:first_bullet]
    i = head.rfind(PLUS)
    return None if i < 0 else i + 1


def tilde(c: str) -> str:
    """Keep minus, bullet and the plus at ``pivot_plus(c)``; every other plus becomes minus."""
    j = pivot_plus(c)
    return "".join(MINUS if s == PLUS and i != j else s for i, s in enumerate(c, start=1))


def bullet_at_J(c: str) -> str:
    """``c`` with the entry at ``pivot_plus(c)`` replaced by a bullet."""
    j = pivot_plus(c)
    if j is None:
        raise ValueError(f"{c!r} has no plus entry")
    return c[: j - 1] + BULLET + c[j:]


def _sub_complex(K: SimplicialComplex, I: int) -> SimplicialComplex:
    """``K_I`` renumbered onto ``[|I|]`` in increasing label order."""
    C = K
    for v in sorted(set(range(1, K.m + 1)) - set(vertices_of(I)), reverse=True):
        C = deletion(C, v)
    return C


def simplex_boundary_test(K: SimplicialComplex, c: str) -> tuple[bool, bool]:
    """Both sides of the single-plus criterion.

    Returns ``(c ∈ Crit(K), K_I == 2^I∖{I} and c_I ∈ Crit(K_I))`` with
    ``I = {c(+)} ∪ supp(c)``; the two must agree.
    """
    if c.count(PLUS) != 1:
        raise ValueError(f"{c!r} must have exactly one plus entry")
    if len(c) != K.m:
        raise ValueError(f"sign vector length {len(c)} does not match m={K.m}")
    I = sign_vector_support(c) | (1 << (c.index(PLUS)))
    left = c in critical_recursive(K)
    KI = _sub_complex(K, I)
    cI = "".join(c[i - 1] for i in vertices_of(I))
    boundary = set(KI.faces) == set(range(full_mask(KI.m))) and not KI.void
    right = boundary and cI in critical_recursive(KI)
    return left, right


def theorem_hypothesis(K: SimplicialComplex) -> bool:
    """Every singleton is a face and the Alexander dual is vertex decomposable."""
    return all(1 << i in K for i in range(K.m)) and is_vertex_decomposable(alexander_dual(K))


@functools.lru_cache(maxsize=1 << 16)
def shedding_compatible(K: SimplicialComplex) -> bool:
    """Whether the last-vertex recursion follows a shedding order of the dual.

    True when ``K°`` is void or a simplex, or when m is a decomposing
    vertex of ``K°`` and both ``K ∖ m`` and ``link_K(m)`` are again shedding compatible. The
    coordinate order of the matching is fixed, so results that argue by
    removing vertex m need this labelling, not just a decomposable dual.
    """
    dual = alexander_dual(K)
    if dual.void or dual.is_simplex:
        return True
    if not is_decomposing_vertex(dual, K.m):
        return False
    return shedding_compatible(deletion(K, K.m)) and shedding_compatible(link(K, K.m))


def nonface_certificate(K: SimplicialComplex, c: str) -> int:
    """``{pivot_plus(c)} ∪ supp(c)`` as a mask.

    For a critical ``c`` with a bullet and a vertex-decomposable dual this is
    a minimal non-face. Outside that hypothesis the set is still returned and
    a :class:`HypothesisNotMet` warning is issued.
    """
    if BULLET not in c:
        raise ValueError(f"{c!r} has no bullet entry")
    j = pivot_plus(c)
    if j is None:
        raise ValueError(f"{c!r} has no plus entry before its first bullet")
    if not is_vertex_decomposable(alexander_dual(K)):
        warnings.warn("Alexander dual is not vertex decomposable", HypothesisNotMet, stacklevel=2)
    elif c not in critical_recursive(K):
        warnings.warn(f"{c!r} is not a critical cell", HypothesisNotMet, stacklevel=2)
    return sign_vector_support(c) | (1 << (j - 1))


def is_minimal_nonface(K: SimplicialComplex, N: int) -> bool:
    return N in minimal_nonfaces(K)


class SheddingSplit(NamedTuple):
    minus: frozenset[str]  # Crit(K ∖ m) with '-' appended
    plus: frozenset[str]  # Crit(K ∖ m) with '+' appended
    bullet: frozenset[str]  # Crit(link_K(m)) with '*' appended


def shedding_split(K: SimplicialComplex) -> SheddingSplit:
    """Three-part decomposition of ``Crit(K)`` when m sheds from the dual.

    Requires ``{m} ∈ K`` and m a shedding vertex of a vertex-decomposable
    ``K°``. Raises :class:`TheoremViolation` if the union, minus the two
    cells ``(-,...,-,+)`` and ``(-,...,-,*)``, differs from ``Crit(K)``.
    """
    m = K.m
    if m < 1:
        raise HypothesisError("need at least one vertex")
    dual = alexander_dual(K)
    if 1 << (m - 1) not in K:
        raise HypothesisError(f"{{{m}}} is not a face")
    if not is_decomposing_vertex(dual, m):
        raise HypothesisError(f"{m} is not a decomposing shedding vertex of the Alexander dual")
    prev = critical_recursive(deletion(K, m))
    lk = critical_recursive(link(K, m))
    split = SheddingSplit(
        frozenset(c + MINUS for c in prev),
        frozenset(c + PLUS for c in prev),
        frozenset(c + BULLET for c in lk),
    )
    base = MINUS * (m - 1)
    union = (split.minus | split.plus | split.bullet) - {base + PLUS, base + BULLET}
    if union != critical_recursive(K):
        raise TheoremViolation(f"shedding split fails for {K!r}")
    return split


# ---------------------------------------------------------------------------
# the contractible subcomplex around the link


class ContractibleHull(NamedTuple):
    cells: list[ProductCell]
    is_subcomplex: bool
    critical: list[ProductCell]
    acyclic: bool


def contractible_subcomplex(K: SimplicialComplex, n: int) -> ContractibleHull:
    """The hull of the link model inside the ``K ∖ m`` model.

    The hull is the link model plus ``c^•`` (the entry at ``pivot_plus(c)``
    made a bullet) for every critical ``c ≠ (-,...,-)`` of ``link_K(m)``.
    Reports whether it is a subcomplex of the ``K ∖ m`` model, and the
    critical cells of its own inductive matching.
    """
    m = K.m
    L = link(K, m)
    D = deletion(K, m)
    cells = set(enumerate_cells(L, n))
    extra = [sign_vector_to_cell(bullet_at_J(c), n) for c in critical_recursive(L) if c != MINUS * (m - 1)]
    cells.update(extra)
    ordered = sorted(cells, key=lambda c: (sum(x // 2 for x in c), c))
    closed = all(f in cells for c in ordered for f, _ in product_boundary(c, n))
    in_d = all(support(c, n) in D for c in ordered)
    matching = Matching(n, tuple(_inductive_matching(ordered, n, m - 1)))
    crit = critical_cells(matching, ordered)
    return ContractibleHull(ordered, closed and in_d, crit, verify_acyclic(matching, ordered) if closed else False)


def chain_complex_of(cells: list[ProductCell], n: int) -> ChainComplex:
    """Cellular chain complex on a face-closed, dimension-sorted cell list."""
    index = {c: i for i, c in enumerate(cells)}
    dims = [sum(x // 2 for x in c) for c in cells]
    return ChainComplex(dims, [[(index[f], s) for f, s in product_boundary(c, n)] for c in cells], labels=cells)
