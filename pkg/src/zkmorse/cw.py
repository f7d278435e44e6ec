"""The regular CW model of Z_K(D^n, S^{n-1}) and its cellular homology.

Disk cells are encoded as small ints, for a fixed ``n``:

======================  =========  =========
cell                    code       dimension
======================  =========  =========
``e_-^i`` (minus, i<n)  ``2i``     ``i``
``e_+^i`` (plus, i<n)   ``2i+1``   ``i``
``e_•^n`` (bullet)      ``2n``     ``n``
======================  =========  =========

so ``code // 2`` is always the dimension. A product cell is an m-tuple of
codes; it lies in the model iff its bullet positions form a face of K.

Boundary signs: ``∂e_±^i = e_+^{i-1} - e_-^{i-1}`` for ``i >= 1``,
``∂e_•^n = e_+^{n-1} - e_-^{n-1}``, extended to products by the Leibniz rule
with sign ``(-1)^(dimension of the preceding factors)``.
"""

from __future__ import annotations

import functools
from collections import defaultdict
from itertools import product

from .chains import BettiTable, ChainComplex, check_prime
from .complex import SimplicialComplex, alexander_dual, full_mask, restriction, subsets_of, vertices_of
from .errors import BudgetExceeded

DEFAULT_CELL_BUDGET = 5_000_000

ProductCell = tuple[int, ...]


def minus(i: int) -> int:
    return 2 * i


def plus(i: int) -> int:
    return 2 * i + 1


def bullet(n: int) -> int:
    return 2 * n


def cell_dim(code: int) -> int:
    return code // 2


def disk_cell_name(code: int, n: int) -> str:
    if code == 2 * n:
        return f"e•^{n}"
    return f"e{'+' if code & 1 else '-'}^{code // 2}"


def disk_cells(n: int) -> list[int]:
    return list(range(2 * n + 1))


def disk_boundary(code: int, n: int) -> list[tuple[int, int]]:
    """Signed boundary of one disk cell as ``[(code, sign), ...]``."""
    if not 0 <= code <= 2 * n:
        raise ValueError(f"no disk cell with code {code} for n={n}")
    d = code // 2
    if d == 0:
        return []
    return [(plus(d - 1), 1), (minus(d - 1), -1)]


@functools.lru_cache(maxsize=None)
def _check_disk(n: int) -> None:
    for code in disk_cells(n):
        acc: dict[int, int] = defaultdict(int)
        for face, s in disk_boundary(code, n):
            for ff, t in disk_boundary(face, n):
                acc[ff] += s * t
        if any(acc.values()):
            raise AssertionError(f"disk boundary does not square to zero for n={n}")


def cell_dimension(cell: ProductCell) -> int:
    return sum(c // 2 for c in cell)


def support(cell: ProductCell, n: int) -> int:
    """Mask of coordinates holding the bullet cell."""
    b = 2 * n
    mask = 0
    for i, c in enumerate(cell):
        if c == b:
            mask |= 1 << i
    return mask


def product_boundary(cell: ProductCell, n: int) -> list[tuple[ProductCell, int]]:
    """Leibniz boundary of a product cell as ``[(face, sign), ...]``."""
    out = []
    before = 0
    for j, c in enumerate(cell):
        d = c // 2
        if d:
            s = -1 if before & 1 else 1
            head, tail = cell[:j], cell[j + 1:]
            out.append((head + (2 * d - 1,) + tail, s))
            out.append((head + (2 * d - 2,) + tail, -s))
            before += d
    return out


def cell_count(K: SimplicialComplex, n: int) -> int:
    """Closed form ``Σ_{σ∈K} (2n)^(m-|σ|)``."""
    return sum((2 * n) ** (K.m - f.bit_count()) for f in K.faces)


def enumerate_cells(K: SimplicialComplex, n: int, budget: int = DEFAULT_CELL_BUDGET) -> list[ProductCell]:
    """All cells of the model, sorted by (dimension, coordinate tuple)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    total = cell_count(K, n)
    if total > budget:
        raise BudgetExceeded(f"model has {total} cells, budget is {budget}")
    sphere = range(2 * n)
    b = (2 * n,)
    cells = []
    for face in K.faces:
        choices = [b if face >> i & 1 else sphere for i in range(K.m)]
        cells.extend(product(*choices))
    cells.sort(key=lambda c: (cell_dimension(c), c))
    return cells


def moment_angle_chain_complex(
    K: SimplicialComplex, n: int, budget: int = DEFAULT_CELL_BUDGET, check: bool = False
) -> ChainComplex:
    """Cellular chain complex of the model; ``check`` also verifies ``∂∘∂ = 0`` cell by cell."""
    _check_disk(n)
    cells = enumerate_cells(K, n, budget)
    index = {c: i for i, c in enumerate(cells)}
    dims = [cell_dimension(c) for c in cells]
    boundary = []
    for c in cells:
        try:
            boundary.append([(index[f], s) for f, s in product_boundary(c, n)])
        except KeyError as exc:  # the model must be closed under faces
            raise AssertionError(f"face {exc} of {c} is missing from the model") from None
    cc = ChainComplex(dims, boundary, labels=cells)
    if check and not cc.boundary_squared_is_zero():
        raise AssertionError("cellular boundary does not square to zero")
    return cc


UNIVERSE_LIMIT = 20_000


class _Universe:
    """Every product cell for a given (m, n); a model for K is a face-closed selection."""

    def __init__(self, m: int, n: int):
        full = SimplicialComplex(m, [full_mask(m)]) if m else SimplicialComplex(0, [0])
        self.complex = moment_angle_chain_complex(full, n, budget=UNIVERSE_LIMIT, check=True)
        self.supports = [support(c, n) for c in self.complex.labels]

    def keep(self, K: SimplicialComplex) -> list[int]:
        faces = K.faces
        return [j for j, s in enumerate(self.supports) if s in faces]


@functools.lru_cache(maxsize=64)
def _universe(m: int, n: int) -> _Universe:
    return _Universe(m, n)


def betti_moment_angle(
    K: SimplicialComplex, n: int, p: int = 2, budget: int = DEFAULT_CELL_BUDGET, check: bool = False
) -> BettiTable:
    """Unreduced Betti numbers of Z_K(D^n, S^{n-1}) over GF(p), by brute force.

    Small cases read the model off a cached product of full disks, whose
    boundary is checked once; larger ones build the model for K directly.
    """
    check_prime(p)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    total = cell_count(K, n)
    if total > budget:
        raise BudgetExceeded(f"model has {total} cells, budget is {budget}")
    if (2 * n + 1) ** K.m <= UNIVERSE_LIMIT and not check:
        uni = _universe(K.m, n)
        table = uni.complex.betti(p, keep=uni.keep(K))
    else:
        table = moment_angle_chain_complex(K, n, budget, check).betti(p)
    chi_cells = sum((-1) ** d * k for d, k in table.cells_per_dim.items())
    if chi_cells != table.euler_characteristic:
        raise AssertionError("Euler characteristic of cells and homology disagree")
    return table


# ---------------------------------------------------------------------------
# simplicial side


def simplicial_chain_complex(K: SimplicialComplex) -> ChainComplex:
    """Augmented simplicial chain complex: the empty face sits in dimension -1."""
    faces = sorted(K.faces, key=lambda f: (f.bit_count(), f))
    index = {f: i for i, f in enumerate(faces)}
    dims = [f.bit_count() - 1 for f in faces]
    boundary = []
    for f in faces:
        col = []
        for k, v in enumerate(vertices_of(f)):
            col.append((index[f & ~(1 << (v - 1))], -1 if k & 1 else 1))
        boundary.append(col if f else [])
    return ChainComplex(dims, boundary, labels=faces)


@functools.lru_cache(maxsize=1 << 16)
def _reduced_betti(K: SimplicialComplex, p: int) -> BettiTable:
    table = simplicial_chain_complex(K).betti(p)
    return BettiTable(p, table.ranks, True, table.cells_per_dim)


def simplicial_betti(K: SimplicialComplex, M: int, p: int = 2) -> BettiTable:
    """Reduced homology ranks of ``K_M`` over GF(p).

    ``{∅}`` has rank one in dimension -1; the void complex has no homology.
    """
    check_prime(p)
    return _reduced_betti(restriction(K, M), p)


def wedge_formula(K: SimplicialComplex, n: int, p: int = 2) -> dict[int, int]:
    """Sphere counts ``i -> Σ_{M∉K} dim H̃_{i-(n-1)|M|-1}(K_M)``.

    Meaningful as a homotopy statement only when every singleton is a face
    and the Alexander dual is vertex decomposable; it is evaluated for any K.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    counts: dict[int, int] = defaultdict(int)
    for M in subsets_of(full_mask(K.m)):
        if M in K:
            continue
        size = M.bit_count()
        for d, r in simplicial_betti(K, M, p).ranks.items():
            counts[d + (n - 1) * size + 1] += r
    return {i: c for i, c in sorted(counts.items()) if c}


def support_partition_check(K: SimplicialComplex) -> bool:
    """Set-level identity behind Z_{K°}(X,A) = X^m ∖ Z_K(X, X∖A).

    For every I ⊆ [m] (the coordinates lying in A): I contains the complement
    of a face of K° iff I meets the complement of every face of K iff I ∉ K.
    """
    full = full_mask(K.m)
    dual = alexander_dual(K)
    for I in range(full + 1):
        in_dual_side = any((full & ~t) & ~I == 0 for t in dual.facets)
        avoids_k_side = all(I & (full & ~s) for s in K.facets)
        not_face = I not in K
        if not in_dual_side == avoids_k_side == not_face:
            return False
    return True
