"""Simple undirected graphs stored as adjacency bitmasks, plus local surgery.

Vertices are ``0..n-1``; ``adj[v]`` is an int whose bit ``u`` is set iff
``{u, v}`` is an edge.  Graphs are immutable and hashable so that solver
results can be cached per graph.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .errors import InvalidArgument


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidArgument("vertex count must be non-negative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidArgument(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidArgument(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        self._hash = None

    @classmethod
    def from_adjacency(cls, adj: Iterable[int]) -> "Graph":
        """Build from bitmask rows; the rows must be symmetric and loop-free."""
        g = cls.__new__(cls)
        g.adj = tuple(adj)
        g.n = len(g.adj)
        g._hash = None
        full = (1 << g.n) - 1
        for v, row in enumerate(g.adj):
            if row & ~full or (row >> v) & 1:
                raise InvalidArgument(f"bad adjacency row for vertex {v}")
            for u in bits(row):
                if not (g.adj[u] >> v) & 1:
                    raise InvalidArgument(f"adjacency not symmetric at ({v}, {u})")
        return g

    @classmethod
    def _trusted(cls, adj) -> "Graph":
        g = cls.__new__(cls)
        g.adj = tuple(adj)
        g.n = len(g.adj)
        g._hash = None
        return g

    # basic queries

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph._trusted(full & ~row & ~(1 << v) for v, row in enumerate(self.adj))

    def relabel(self, order: Iterable[int]) -> "Graph":
        """Return the graph whose vertex ``i`` is ``order[i]`` of this graph."""
        order = list(order)
        if sorted(order) != list(range(self.n)):
            raise InvalidArgument("order must be a permutation of the vertices")
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        adj = []
        for v in order:
            adj.append(mask_of(pos[u] for u in bits(self.adj[v])))
        return Graph._trusted(adj)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj == other.adj

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.adj)
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    def __getstate__(self):
        return self.adj

    def __setstate__(self, adj):
        self.adj = adj
        self.n = len(adj)
        self._hash = None


# standard families

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(full & ~(1 << v) for v in range(n))


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidArgument("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def subdivide(g: Graph) -> Graph:
    """Subdivide every edge once; new vertices follow the originals in edge order."""
    edges = g.edges()
    new_edges = []
    for k, (u, v) in enumerate(edges):
        w = g.n + k
        new_edges += [(u, w), (w, v)]
    return Graph(g.n + len(edges), new_edges)


# surgery

def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise InvalidArgument(f"vertex {v} out of range for n={g.n}")


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``G[S]`` and the index map (new index -> original vertex).

    Vertices of the subgraph keep the relative order they had in ``g``.
    """
    s = sorted(set(s))
    for v in s:
        _check_vertex(g, v)
    pos = {v: i for i, v in enumerate(s)}
    smask = mask_of(s)
    adj = [mask_of(pos[u] for u in bits(g.adj[v] & smask)) for v in s]
    return Graph._trusted(adj), s


def delete_vertex(g: Graph, v: int) -> Graph:
    _check_vertex(g, v)
    return induced_subgraph(g, [u for u in range(g.n) if u != v])[0]


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise InvalidArgument(f"({u}, {v}) is not an edge")
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return Graph._trusted(adj)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise InvalidArgument("loops are not allowed")
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph._trusted(adj)


def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Contract ``e = (x, y)``.

    The remaining vertices keep their relative order and the merged vertex is
    appended last, adjacent to ``(N(x) | N(y)) - {x, y}``.
    """
    x, y = e
    if not (0 <= x < g.n and 0 <= y < g.n) or x == y or not g.has_edge(x, y):
        raise InvalidArgument(f"({x}, {y}) is not an edge")
    keep = [v for v in range(g.n) if v != x and v != y]
    pos = {v: i for i, v in enumerate(keep)}
    merged = len(keep)
    joint = (g.adj[x] | g.adj[y]) & ~((1 << x) | (1 << y))
    adj = []
    for v in keep:
        row = mask_of(pos[u] for u in bits(g.adj[v]) if u in pos)
        if (joint >> v) & 1:
            row |= 1 << merged
        adj.append(row)
    adj.append(mask_of(pos[u] for u in bits(joint)))
    return Graph._trusted(adj)


def dissolve(g: Graph, v: int) -> Graph:
    """Join the two neighbours of the degree-2 vertex ``v`` and remove ``v``."""
    _check_vertex(g, v)
    if g.degree(v) != 2:
        raise InvalidArgument(f"vertex {v} has degree {g.degree(v)}, not 2")
    a, b = g.neighbors(v)
    return delete_vertex(add_edge(g, a, b), v)


def is_twin_pair(g: Graph, x: int, y: int) -> bool:
    _check_vertex(g, x)
    _check_vertex(g, y)
    if x == y:
        raise InvalidArgument("twins must be distinct vertices")
    drop = ~((1 << x) | (1 << y))
    return g.adj[x] & drop == g.adj[y] & drop


def degeneracy(g: Graph) -> int:
    """Smallest d such that every subgraph has a vertex of degree <= d."""
    alive = g.full_mask
    deg = g.degrees()
    best = 0
    for _ in range(g.n):
        v = min(bits(alive), key=deg.__getitem__)
        best = max(best, deg[v])
        alive &= ~(1 << v)
        for u in bits(g.adj[v] & alive):
            deg[u] -= 1
    return best


def degeneracy_order(g: Graph) -> list[int]:
    alive = g.full_mask
    deg = g.degrees()
    order = []
    for _ in range(g.n):
        v = min(bits(alive), key=deg.__getitem__)
        order.append(v)
        alive &= ~(1 << v)
        for u in bits(g.adj[v] & alive):
            deg[u] -= 1
    return order


def clique_counts(g: Graph) -> list[int]:
    """``counts[k]`` is the number of cliques of size k; ``counts[0] == 1``."""
    counts = [1]
    adj = g.adj

    def grow(cand: int, size: int) -> None:
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if len(counts) <= size:
                counts.append(0)
            counts[size] += 1
            grow(cand & adj[v], size + 1)

    grow(g.full_mask, 1)
    return counts


def count_cliques(g: Graph, k: int | None = None) -> int:
    """Number of cliques, the empty clique included; with ``k``, only size-k ones."""
    counts = clique_counts(g)
    if k is None:
        return sum(counts)
    if k < 0:
        raise InvalidArgument("clique size must be non-negative")
    return counts[k] if k < len(counts) else 0


def clique_number(g: Graph) -> int:
    return len(clique_counts(g)) - 1


def connected_components(g: Graph, within: int | None = None) -> list[int]:
    """Components of ``g[within]`` as bitmasks, ordered by smallest vertex."""
    left = g.full_mask if within is None else within
    comps = []
    while left:
        low = left & -left
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= left & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        left &= ~comp
    return comps


def is_connected_set(g: Graph, s: int) -> bool:
    if not s:
        return False
    low = s & -s
    comp = low
    frontier = low
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= s & ~comp
        comp |= nxt
        frontier = nxt
    return comp == s
