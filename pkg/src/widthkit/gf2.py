"""Binary matrices over GF(2) and the cut functions built on them."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

from .errors import Budget, InvalidArgument
from .graph import Graph, bits, mask_of


@dataclass(frozen=True)
class BinaryMatrix:
    """Row-major bit matrix; bit ``j`` of ``rows[i]`` is entry ``(i, j)``."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        limit = 1 << self.ncols
        for r in self.rows:
            if not 0 <= r < limit:
                raise InvalidArgument(f"row {r:b} does not fit in {self.ncols} columns")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "BinaryMatrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != ncols:
                raise InvalidArgument("ragged matrix")
            packed.append(sum(1 << j for j, x in enumerate(row) if x))
        return cls(tuple(packed), ncols)

    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> "BinaryMatrix":
        """Rows written left to right, e.g. ``["110", "011"]``."""
        return cls.from_lists([[int(c) for c in row] for row in rows])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def transpose(self) -> "BinaryMatrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in bits(r):
                cols[j] |= 1 << i
        return BinaryMatrix(tuple(cols), len(self.rows))

    def __str__(self):
        return "\n".join("".join(str(x) for x in row) for row in self.to_lists())


def rank_of_rows(rows: Iterable[int]) -> int:
    """GF(2) rank of integer bit rows (xor basis keyed by leading bit)."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = r
                break
            r ^= b
    return len(basis)


def rank_gf2(m: BinaryMatrix) -> int:
    return rank_of_rows(m.rows)


def distinct_rows(m: BinaryMatrix) -> int:
    return len(set(m.rows))


def distinct_nonzero_rows(m: BinaryMatrix) -> int:
    return len(set(m.rows) - {0})


def _as_mask(g: Graph, x) -> int:
    if isinstance(x, int):
        if x < 0 or x >> g.n:
            raise InvalidArgument(f"vertex mask {x:b} out of range for n={g.n}")
        return x
    m = 0
    for v in x:
        if not 0 <= v < g.n:
            raise InvalidArgument(f"vertex {v} out of range for n={g.n}")
        m |= 1 << v
    return m


def bipartite_adjacency(g: Graph, x) -> BinaryMatrix:
    """Matrix of ``G<X>``: rows are the vertices outside ``X``, columns those in
    ``X``, both in ascending order.  ``x`` is a vertex iterable or a bitmask."""
    xm = _as_mask(g, x)
    cols = list(bits(xm))
    rows = []
    for v in bits(g.full_mask & ~xm):
        row = g.adj[v] & xm
        rows.append(sum(1 << j for j, c in enumerate(cols) if (row >> c) & 1))
    return BinaryMatrix(tuple(rows), len(cols))


def _outside_rows(g: Graph, xm: int) -> list[int]:
    # neighbourhoods inside X of the vertices outside X, uncompressed
    return [g.adj[v] & xm for v in bits(g.full_mask & ~xm)]


def cutrank(g: Graph, x) -> int:
    return rank_of_rows(_outside_rows(g, _as_mask(g, x)))


def lambda_of_set(g: Graph, x) -> int:
    """Number of distinct neighbourhoods in ``X`` among the vertices outside ``X``.

    With no outside vertices the count is 0; with ``X`` empty every outside
    vertex has the empty neighbourhood, so the count is 1.
    """
    return len(set(_outside_rows(g, _as_mask(g, x))))


def c_of_set(g: Graph, x) -> int:
    return len(set(_outside_rows(g, _as_mask(g, x))) - {0})


def lambda_of_k(g: Graph, k: int, budget=None) -> int:
    """Max of :func:`lambda_of_set` over all ``X`` with ``|X| <= k``."""
    if k < 0:
        raise InvalidArgument("k must be non-negative")
    budget = Budget.coerce(budget, "lambda_G(k) sweep")
    best = lambda_of_set(g, 0)
    for size in range(1, min(k, g.n) + 1):
        for xs in combinations(range(g.n), size):
            budget.tick()
            val = lambda_of_set(g, mask_of(xs))
            if val > best:
                best = val
    return best


def lambda_table(g: Graph) -> list[int]:
    """``table[k] == lambda_of_k(g, k)`` for ``0 <= k <= n`` in one sweep."""
    per_size = [0] * (g.n + 1)
    for xm in range(1 << g.n):
        size = xm.bit_count()
        val = lambda_of_set(g, xm)
        if val > per_size[size]:
            per_size[size] = val
    out = []
    best = 0
    for val in per_size:
        best = max(best, val)
        out.append(best)
    return out


def cutrank_table(g: Graph) -> list[int]:
    """``table[X] == cutrank(g, X)`` for every vertex bitmask ``X``."""
    n = g.n
    full = g.full_mask
    table = [0] * (1 << n)
    adj = g.adj
    for xm in range(1, 1 << (n - 1)) if n else ():
        rows = [adj[v] & xm for v in bits(full & ~xm)]
        r = rank_of_rows(rows)
        table[xm] = r
        table[full ^ xm] = r
    return table
