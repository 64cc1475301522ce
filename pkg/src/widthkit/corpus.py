"""Graph corpora: canonical forms, exhaustive enumeration and seeded sampling."""

from __future__ import annotations

import random
import re
from collections.abc import Callable, Iterator
from dataclasses import dataclass

from .containment import has_krr_subgraph, has_minor, has_topological_minor, is_planar, nabla1
from .errors import InvalidArgument
from .graph import Graph, bits, mask_of
from .hypergraph import stacked_triangulation


# canonical labelling by individualization-refinement

def _refine(adj, cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbour counts into other cells until the partition is equitable."""
    while True:
        for splitter in cells:
            smask = mask_of(splitter)
            out = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
                if len(groups) > 1:
                    split = True
                    out.extend(groups[k] for k in sorted(groups))
                else:
                    out.append(cell)
            if split:
                cells = out
                break
        else:
            return cells


def _twin_reps(adj, cell: list[int]) -> list[int]:
    """One vertex per class of the twin relation inside ``cell``.

    Swapping two twins is an automorphism fixing everything else, so their
    branches yield the same leaves.
    """
    reps = []
    for v in cell:
        for w in reps:
            if adj[v] & ~(1 << w) == adj[w] & ~(1 << v):
                break
        else:
            reps.append(v)
    return reps


def _certificate(adj, order: list[int]) -> int:
    n = len(order)
    code = 0
    for i in range(1, n):
        row = adj[order[i]]
        for j in range(i):
            code = (code << 1) | ((row >> order[j]) & 1)
    return code


def canonical_order(g: Graph) -> list[int]:
    """A vertex order such that ``g.relabel(order)`` is the same for all isomorphic graphs."""
    adj = g.adj
    if g.n == 0:
        return []
    best_code = -1
    best_order: list[int] = []
    stack = [_refine(adj, [list(range(g.n))])]
    while stack:
        cells = stack.pop()
        target = None
        for i, cell in enumerate(cells):
            if len(cell) > 1 and (target is None or len(cell) < len(cells[target])):
                target = i
        if target is None:
            order = [cell[0] for cell in cells]
            code = _certificate(adj, order)
            if code > best_code:
                best_code, best_order = code, order
            continue
        cell = cells[target]
        for v in reversed(_twin_reps(adj, cell)):
            rest = [w for w in cell if w != v]
            stack.append(_refine(adj, cells[:target] + [[v], rest] + cells[target + 1:]))
    return best_order


def canonical_form(g: Graph) -> Graph:
    return g.relabel(canonical_order(g))


# graph classes

_CLASS_RE = re.compile(r"^([a-z0-9_]+)(?:\((\d+)\)|:(\d+))?$")


@dataclass(frozen=True)
class GraphClass:
    """A subgraph-closed graph class with an exact membership test."""

    kind: str
    r: int | None = None

    KINDS = ("all", "planar", "minor_free", "topminor_free", "krr_free", "nabla1_le")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise InvalidArgument(f"unknown graph class {self.kind!r}")
        needs_r = self.kind not in ("all", "planar")
        if needs_r and self.r is None:
            raise InvalidArgument(f"class {self.kind} needs a parameter r")
        if not needs_r and self.r is not None:
            raise InvalidArgument(f"class {self.kind} takes no parameter")

    @classmethod
    def parse(cls, text: str, r: int | None = None) -> "GraphClass":
        """Accepts ``planar``, ``krr_free(2)`` or ``krr_free:2``."""
        m = _CLASS_RE.match(text.strip())
        if not m:
            raise InvalidArgument(f"cannot parse graph class {text!r}")
        inline = m.group(2) or m.group(3)
        if inline is not None and r is not None and int(inline) != r:
            raise InvalidArgument("class parameter given twice with different values")
        return cls(m.group(1), int(inline) if inline is not None else r)

    def __str__(self):
        return self.kind if self.r is None else f"{self.kind}({self.r})"

    def contains(self, g: Graph, budget=None) -> bool:
        k, r = self.kind, self.r
        if k == "all":
            return True
        if k == "planar":
            return is_planar(g, budget)
        if k == "minor_free":
            return not has_minor(g, r, budget)
        if k == "topminor_free":
            return not has_topological_minor(g, r, budget)
        if k == "krr_free":
            return not has_krr_subgraph(g, r, budget)
        return nabla1(g, budget) <= r if g.n else True


# exhaustive enumeration

def enumerate_graphs(n_max: int, accept: Callable[[Graph], bool] | None = None,
                     n_min: int = 0) -> Iterator[Graph]:
    """All graphs on ``n_min..n_max`` vertices up to isomorphism, in canonical form.

    Graphs on ``n`` vertices come from those on ``n - 1`` by adding a vertex
    with every possible neighbourhood.  ``accept`` must describe a class
    closed under vertex deletion; rejected graphs are not extended.
    Within each ``n`` graphs are yielded by edge count, then canonical code.
    """
    level = [Graph(0)]
    for n in range(n_max + 1):
        if n > 0:
            seen: dict[tuple, Graph] = {}
            for h in level:
                base = list(h.adj) + [0]
                for nb in range(1 << (n - 1)):
                    adj = base[:]
                    adj[n - 1] = nb
                    for u in bits(nb):
                        adj[u] |= 1 << (n - 1)
                    g = Graph._trusted(adj)
                    c = canonical_form(g)
                    if c.adj not in seen:
                        seen[c.adj] = c
            level = [c for c in seen.values() if accept is None or accept(c)]
        level.sort(key=lambda c: (c.m, _certificate(c.adj, list(range(c.n)))))
        if n >= n_min:
            yield from level


def graph_census(n_max: int) -> list[int]:
    counts = [0] * (n_max + 1)
    for g in enumerate_graphs(n_max):
        counts[g.n] += 1
    return counts


# seeded sampling

def random_graph(n: int, rng: random.Random) -> Graph:
    """G(n, p) with the density ``p`` itself drawn uniformly from [0, 1]."""
    p = rng.random()
    return Graph(n, [(u, v) for v in range(n) for u in range(v) if rng.random() < p])


def random_planar_graph(n: int, rng: random.Random) -> Graph:
    """A random stacked triangulation with a random fraction of edges removed."""
    if n < 3:
        return random_graph(n, rng)
    tri, _ = stacked_triangulation(n, rng)
    keep = rng.random()
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [(perm[u], perm[v]) for u, v in tri.edges() if rng.random() < keep]
    return Graph(n, edges)


@dataclass
class Sample:
    graphs: list[Graph]
    attempts: int
    complete: bool


def sample_class(cls: GraphClass, n_min: int, n_max: int, count: int, seed: int,
                 max_attempts: int | None = None) -> Sample:
    """Draw ``count`` graphs of ``cls`` deterministically from ``seed``.

    ``planar`` samples directly; other classes reject draws from ``all``.
    Stops early (``complete=False``) after ``max_attempts`` draws.
    """
    if not 0 <= n_min <= n_max:
        raise InvalidArgument("need 0 <= n_min <= n_max")
    if max_attempts is None:
        max_attempts = 1000 * max(count, 1)
    rng = random.Random(seed)
    out: list[Graph] = []
    attempts = 0
    while len(out) < count and attempts < max_attempts:
        attempts += 1
        n = rng.randint(n_min, n_max)
        if cls.kind == "planar":
            g = random_planar_graph(n, rng)
        else:
            g = random_graph(n, rng)
        if cls.kind in ("all", "planar") or cls.contains(g):
            out.append(g)
    return Sample(out, attempts, len(out) == count)
