"""Hypergraphs, incidence graphs, and the hyperedge-count bounds."""

from __future__ import annotations

import random
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .bounds import genus_hyperedge_bound, nabla1_hyperedge_bound, krr_hyperedge_bound
from .containment import has_krr_subgraph, is_planar, nabla1
from .errors import ClassViolation, InvalidArgument
from .gf2 import BinaryMatrix
from .graph import Graph, bits


def _edge_key(e: frozenset) -> tuple:
    return (len(e), tuple(sorted(e)))


class Hypergraph:
    """Vertices ``0..n-1`` and a set of distinct hyperedges (vertex subsets).

    Hyperedges are kept sorted by size, then lexicographically.
    """

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise InvalidArgument("vertex count must be non-negative")
        unique = set()
        for e in edges:
            fe = frozenset(e)
            if any(not 0 <= v < n for v in fe):
                raise InvalidArgument(f"hyperedge {sorted(fe)} has vertices outside 0..{n - 1}")
            unique.add(fe)
        self.n = n
        self.edges = tuple(sorted(unique, key=_edge_key))

    @property
    def m(self) -> int:
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Hypergraph(n={self.n}, edges={[sorted(e) for e in self.edges]})"

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [" ".join(str(v) for v in sorted(e)) for e in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph":
        """First line ``n m``, then one hyperedge per line; an empty line is the empty hyperedge."""
        lines = text.split("\n")
        head = lines[0].split()
        if len(head) != 2:
            raise InvalidArgument("hypergraph file must start with an 'n m' header")
        try:
            n, m = int(head[0]), int(head[1])
            body = lines[1:1 + m]
            body += [""] * (m - len(body))
            edges = [[int(tok) for tok in line.split()] for line in body]
        except ValueError as exc:
            raise InvalidArgument(f"non-integer in hypergraph file: {exc}") from exc
        if any(line.strip() for line in lines[1 + m:]):
            raise InvalidArgument(f"more than {m} hyperedge lines")
        h = cls(n, edges)
        if h.m != m:
            raise InvalidArgument("hypergraph file repeats a hyperedge")
        return h


def incidence_graph(h: Hypergraph) -> Graph:
    """Bipartite graph: vertices ``0..n-1``, then one vertex per hyperedge in stored order."""
    edges = []
    for k, e in enumerate(h.edges):
        edges += [(v, h.n + k) for v in e]
    return Graph(h.n + h.m, edges)


def stacked_triangulation(n: int, rng: random.Random | None = None) -> tuple[Graph, list[tuple[int, int, int]]]:
    """A stacked (Apollonian) triangulation on ``n >= 3`` vertices and its faces.

    Vertex ``k >= 3`` is placed inside a face (chosen by ``rng``, or the first
    face when ``rng`` is None) and joined to its three corners.
    """
    if n < 3:
        raise InvalidArgument("a triangulation needs at least 3 vertices")
    faces = [(0, 1, 2), (0, 1, 2)]
    edges = [(0, 1), (0, 2), (1, 2)]
    for k in range(3, n):
        idx = rng.randrange(len(faces)) if rng is not None else 0
        a, b, c = faces.pop(idx)
        faces += [(a, b, k), (a, c, k), (b, c, k)]
        edges += [(a, k), (b, k), (c, k)]
    return Graph(n, edges), faces


def triangulation_hypergraph(g: Graph, faces: Iterable[Iterable[int]]) -> Hypergraph:
    """The empty set, all singletons, all edges, and one triple per face."""
    faces = [tuple(sorted(f)) for f in faces]
    n = g.n
    if n < 3 or g.m != 3 * n - 6 or len(faces) != 2 * n - 4:
        raise InvalidArgument("input is not a triangulation with its face list")
    seen: dict[tuple[int, int], int] = {}
    for f in faces:
        if len(f) != 3 or len(set(f)) != 3:
            raise InvalidArgument(f"face {f} is not a triangle")
        a, b, c = f
        for u, v in ((a, b), (a, c), (b, c)):
            if not g.has_edge(u, v):
                raise InvalidArgument(f"face {f} uses the non-edge ({u}, {v})")
            seen[(u, v)] = seen.get((u, v), 0) + 1
    if len(seen) != g.m or any(count != 2 for count in seen.values()):
        raise InvalidArgument("every edge of a triangulation borders exactly two faces")
    edges = [()] + [(v,) for v in range(n)] + g.edges() + faces
    return Hypergraph(n, edges)


def hypergraph_from_matrix_rows(mat: BinaryMatrix) -> Hypergraph:
    """Columns become vertices and each row the hyperedge of its 1-positions."""
    if len(set(mat.rows)) != len(mat.rows):
        raise InvalidArgument("matrix has identical rows")
    return Hypergraph(mat.ncols, [list(bits(r)) for r in mat.rows])


@dataclass(frozen=True)
class HyperedgeReport:
    count: int
    bound: Fraction
    satisfied: bool
    membership_checked: bool


def hyperedge_bound_check(h: Hypergraph, kind: str, r: int, budget=None) -> HyperedgeReport:
    """Compare ``|E(H)|`` with the bound for the class ``kind(r)``.

    ``kind`` is ``"genus"``, ``"nabla1"`` or ``"krr"``.  Membership is decided
    where possible and raises :class:`ClassViolation` when it fails.  For
    genus ``r > 0`` only a planar incidence graph certifies membership;
    otherwise the genus is taken on trust and ``membership_checked`` is False.
    """
    inc = incidence_graph(h)
    checked = True
    if kind == "genus":
        if r < 0:
            raise InvalidArgument("genus must be non-negative")
        if h.n <= 2:
            raise InvalidArgument("the genus bound needs n > 2")
        planar = is_planar(inc, budget)
        if r == 0 and not planar:
            raise ClassViolation("incidence graph is not planar")
        checked = planar
        bound = Fraction(genus_hyperedge_bound(h.n, r))
    elif kind == "nabla1":
        if r < 1:
            raise InvalidArgument("the nabla_1 bound needs r >= 1")
        if nabla1(inc, budget) > r:
            raise ClassViolation(f"nabla_1 of the incidence graph exceeds {r}")
        bound = Fraction(nabla1_hyperedge_bound(h.n, r))
    elif kind == "krr":
        if r < 2:
            raise InvalidArgument("the K_{r,r} bound needs r >= 2")
        if has_krr_subgraph(inc, r, budget):
            raise ClassViolation(f"incidence graph contains K_{{{r},{r}}}")
        bound = krr_hyperedge_bound(h.n, r)
    else:
        raise InvalidArgument(f"unknown hypergraph class {kind!r}")
    return HyperedgeReport(h.m, bound, h.m <= bound, checked)
