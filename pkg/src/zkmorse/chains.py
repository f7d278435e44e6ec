"""Finite chain complexes over prime fields and their Betti numbers.

Cells are indexed ``0..N-1`` in a filtration order (dimensions never
decrease), and the boundary of cell ``j`` is a sparse list of
``(row, coefficient)`` pairs. Ranks come from plain column reduction with
"lowest nonzero row" pivots, processed from the top dimension down with the
clearing shortcut: a cell that is the pivot row of a reduced ``(d+1)``-column
has a boundary column that reduces to zero, so it is skipped.

Columns are packed into Python ints for GF(2) (one bit per row) and into a
pair of ints for GF(3) (rows holding 1 and rows holding 2); other primes use
dict columns.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Column = Sequence[tuple[int, int]]

SUPPORTED_PRIMES = (2, 3, 5, 7)


def check_prime(p: int) -> None:
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")


def _pack_gf2(col: Column, offset: int) -> int:
    x = 0
    for r, c in col:
        if c & 1:
            x ^= 1 << (r - offset)
    return x


def _pack_gf3(col: Column, offset: int) -> tuple[int, int]:
    acc: dict[int, int] = {}
    for r, c in col:
        acc[r] = (acc.get(r, 0) + c) % 3
    ones = twos = 0
    for r, c in acc.items():
        if c == 1:
            ones |= 1 << (r - offset)
        elif c == 2:
            twos |= 1 << (r - offset)
    return ones, twos


def _pack_gfp(col: Column, offset: int, p: int) -> dict[int, int]:
    x: dict[int, int] = {}
    for r, c in col:
        v = (x.get(r - offset, 0) + c) % p
        if v:
            x[r - offset] = v
        else:
            x.pop(r - offset, None)
    return x


def _reduce_gf2(columns: Iterable[int]) -> set[int]:
    pivots: dict[int, int] = {}
    for x in columns:
        while x:
            low = x.bit_length() - 1
            q = pivots.get(low)
            if q is None:
                pivots[low] = x
                break
            x ^= q
    return set(pivots)


def _gf3_add(x1: int, x2: int, y1: int, y2: int) -> tuple[int, int]:
    t = (x1 | y2) ^ (x2 | y1)
    return (x2 | y2) ^ t, (x1 | y1) ^ t


def _reduce_gf3(columns: Iterable[tuple[int, int]]) -> set[int]:
    pivots: dict[int, tuple[int, int]] = {}
    for ones, twos in columns:
        while ones | twos:
            low = (ones | twos).bit_length() - 1
            q = pivots.get(low)
            if q is None:
                pivots[low] = (ones, twos)
                break
            q1, q2 = q
            # equal leading coefficients: subtract q, otherwise add it
            if (ones >> low & 1) == (q1 >> low & 1):
                ones, twos = _gf3_add(ones, twos, q2, q1)
            else:
                ones, twos = _gf3_add(ones, twos, q1, q2)
    return set(pivots)


def _reduce_gfp(columns: Iterable[dict[int, int]], p: int) -> set[int]:
    pivots: dict[int, dict[int, int]] = {}
    for x in columns:
        x = dict(x)
        while x:
            low = max(x)
            q = pivots.get(low)
            if q is None:
                pivots[low] = x
                break
            f = x[low] * pow(q[low], -1, p) % p
            for r, c in q.items():
                v = (x.get(r, 0) - f * c) % p
                if v:
                    x[r] = v
                else:
                    x.pop(r, None)
    return set(pivots)


def pack_column(col: Column, p: int, offset: int = 0):
    """Pack a sparse column for :func:`reduce_columns`, shifting rows by ``-offset``."""
    if p == 2:
        return _pack_gf2(col, offset)
    if p == 3:
        return _pack_gf3(col, offset)
    return _pack_gfp(col, offset, p)


def reduce_columns(columns: Iterable, p: int) -> set[int]:
    """Pivot rows of the column-reduced matrix over GF(p); its size is the rank.

    Columns must already be packed with :func:`pack_column` for the same p.
    """
    if p == 2:
        return _reduce_gf2(columns)
    if p == 3:
        return _reduce_gf3(columns)
    check_prime(p)
    return _reduce_gfp(columns, p)


def rank_over(columns: Iterable[Column], p: int) -> int:
    """Rank over GF(p) of a matrix given by sparse ``(row, coefficient)`` columns."""
    return len(reduce_columns((pack_column(c, p) for c in columns), p))


@dataclass(frozen=True)
class BettiTable:
    """Ranks of homology over GF(p), keyed by dimension (zeros omitted)."""

    p: int
    ranks: dict[int, int]
    reduced: bool = False
    cells_per_dim: dict[int, int] = field(default_factory=dict)

    def __getitem__(self, d: int) -> int:
        return self.ranks.get(d, 0)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * r for d, r in self.ranks.items())

    def as_reduced(self) -> "BettiTable":
        if self.reduced:
            return self
        ranks = dict(self.ranks)
        ranks[0] = ranks.get(0, 0) - 1
        if ranks[0] == 0:
            del ranks[0]
        return BettiTable(self.p, ranks, True, self.cells_per_dim)


class ChainComplex:
    """A based chain complex with cells in filtration order.

    ``dims[j]`` is the dimension of cell ``j``; ``boundary[j]`` lists
    ``(i, coefficient)`` with ``dims[i] == dims[j] - 1``.
    """

    def __init__(self, dims: Sequence[int], boundary: Sequence[Column], labels: Sequence | None = None):
        if len(dims) != len(boundary):
            raise ValueError("dims and boundary must have the same length")
        for j in range(1, len(dims)):
            if dims[j] < dims[j - 1]:
                raise ValueError("cells must be sorted by dimension")
        for j, col in enumerate(boundary):
            for i, _ in col:
                if dims[i] != dims[j] - 1:
                    raise ValueError(f"boundary of cell {j} hits cell {i} of the wrong dimension")
        self.dims = list(dims)
        self.boundary = [tuple(col) for col in boundary]
        self.labels = list(labels) if labels is not None else None
        self._dim_start: dict[int, int] = {}
        for j, d in enumerate(self.dims):
            self._dim_start.setdefault(d, j)
        self._packed_cache: dict[int, list] = {}

    def __len__(self) -> int:
        return len(self.dims)

    @property
    def cells_per_dim(self) -> dict[int, int]:
        return dict(sorted(Counter(self.dims).items()))

    def boundary_squared_is_zero(self, p: int | None = None) -> bool:
        """Check ``∂∘∂ = 0`` exactly over Z, or over GF(p) when ``p`` is given."""
        for col in self.boundary:
            acc: dict[int, int] = {}
            for i, c in col:
                for k, e in self.boundary[i]:
                    acc[k] = acc.get(k, 0) + c * e
            for v in acc.values():
                if (v % p if p else v) != 0:
                    return False
        return True

    def _packed(self, p: int) -> list:
        cached = self._packed_cache.get(p)
        if cached is None:
            cached = [pack_column(col, p, self._dim_start[self.dims[j] - 1]) if col else None
                      for j, col in enumerate(self.boundary)]
            self._packed_cache[p] = cached
        return cached

    def betti(self, p: int = 2, keep: Sequence[int] | None = None) -> BettiTable:
        """Betti numbers over GF(p).

        ``keep`` selects a face-closed subcomplex by sorted cell indices;
        its boundary is read off this complex without rebuilding anything.
        """
        check_prime(p)
        packed = self._packed(p)
        cells = range(len(self.dims)) if keep is None else keep
        by_dim: dict[int, list[int]] = {}
        for j in cells:
            by_dim.setdefault(self.dims[j], []).append(j)
        rank: dict[int, int] = {}
        cleared: set[int] = set()
        for d in sorted(by_dim, reverse=True):
            cols = (packed[j] for j in by_dim[d] if j not in cleared and packed[j] is not None)
            pivots = reduce_columns(cols, p)
            rank[d] = len(pivots)
            start = self._dim_start.get(d - 1, 0)
            cleared = {start + r for r in pivots}
        ranks = {}
        for d, js in by_dim.items():
            b = len(js) - rank.get(d, 0) - rank.get(d + 1, 0)
            if b:
                ranks[d] = b
        per_dim = {d: len(js) for d, js in sorted(by_dim.items())}
        return BettiTable(p, dict(sorted(ranks.items())), False, per_dim)
