"""Rank- and tree-decomposition records, their validators, widths and JSON form."""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import InvalidArgument, ValidationError
from .gf2 import c_of_set, cutrank
from .graph import Graph

SCHEMA = 1


def _adjacency(nodes: Iterable[int], edges: Iterable[tuple[int, int]]) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in nodes}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    return adj


def _tree_problems(adj: Mapping[int, list[int]], n_edges: int) -> list[str]:
    problems = []
    if not adj:
        return ["tree has no nodes"]
    if any(a == b for a, nbrs in adj.items() for b in nbrs):
        problems.append("tree has a loop")
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(adj):
        problems.append("tree is not connected")
    if n_edges != len(adj) - 1:
        problems.append("tree is not acyclic (edge count != node count - 1)")
    return problems


@dataclass(frozen=True)
class RankDecomposition:
    """Ternary tree plus a bijection from graph vertices to its leaves.

    Graphs with at most one vertex use the empty tree.
    """

    tree_edges: tuple[tuple[int, int], ...]
    leaf_map: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "tree_edges", tuple(tuple(e) for e in self.tree_edges))
        object.__setattr__(self, "leaf_map", dict(self.leaf_map))

    def nodes(self) -> list[int]:
        out = set(self.leaf_map.values())
        for a, b in self.tree_edges:
            out.update((a, b))
        return sorted(out)

    def adjacency(self) -> dict[int, list[int]]:
        adj = _adjacency(self.nodes(), self.tree_edges)
        for v in adj:
            adj[v].sort()
        return adj

    def violations(self, g: Graph) -> list[str]:
        problems = []
        if sorted(self.leaf_map) != list(range(g.n)):
            problems.append("leaf map is not defined on exactly the graph's vertices")
        if g.n <= 1:
            if self.tree_edges:
                problems.append("a graph with at most one vertex has no rank-decomposition tree")
            return problems
        adj = self.adjacency()
        problems += _tree_problems(adj, len(self.tree_edges))
        bad = [v for v, nb in adj.items() if len(nb) not in (1, 3)]
        if bad:
            problems.append(f"tree is not ternary (nodes {bad} have degree not in {{1, 3}})")
        leaves = sorted(v for v, nb in adj.items() if len(nb) == 1)
        images = sorted(self.leaf_map.values())
        if images != leaves:
            problems.append("leaf map is not a bijection onto the leaves")
        return problems

    def validate(self, g: Graph) -> None:
        problems = self.violations(g)
        if problems:
            raise ValidationError(problems)

    def edge_cuts(self) -> list[tuple[tuple[int, int], int]]:
        """Each tree edge with the vertex bitmask on its child side.

        The tree is rooted at its smallest node; the edge is reported as
        ``(parent, child)``.
        """
        if not self.tree_edges:
            return []
        adj = self.adjacency()
        leaf_vertex = {leaf: v for v, leaf in self.leaf_map.items()}
        root = min(adj)
        order = []
        parent = {root: None}
        stack = [root]
        while stack:
            v = stack.pop()
            order.append(v)
            for w in adj[v]:
                if w not in parent:
                    parent[w] = v
                    stack.append(w)
        below = {}
        for v in reversed(order):
            m = 1 << leaf_vertex[v] if v in leaf_vertex else 0
            for w in adj[v]:
                if parent.get(w) == v:
                    m |= below[w]
            below[v] = m
        return [((parent[v], v), below[v]) for v in order if parent[v] is not None]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "tree_edges": [list(e) for e in self.tree_edges],
            "leaf_map": {str(v): self.leaf_map[v] for v in sorted(self.leaf_map)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: Mapping) -> "RankDecomposition":
        try:
            edges = tuple((int(a), int(b)) for a, b in data["tree_edges"])
            leaf_map = {int(v): int(leaf) for v, leaf in data["leaf_map"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgument(f"malformed rank-decomposition document: {exc}") from exc
        return cls(edges, leaf_map)

    @classmethod
    def from_json(cls, text: str) -> "RankDecomposition":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Mapping[int, frozenset]
    tree_edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bags", {int(k): frozenset(v) for k, v in self.bags.items()})
        object.__setattr__(self, "tree_edges", tuple(tuple(e) for e in self.tree_edges))

    def width(self) -> int:
        return treedec_width(self)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "nodes": [{"id": k, "bag": sorted(self.bags[k])} for k in sorted(self.bags)],
            "edges": [list(e) for e in self.tree_edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: Mapping) -> "TreeDecomposition":
        try:
            bags = {int(node["id"]): frozenset(int(v) for v in node["bag"]) for node in data["nodes"]}
            edges = tuple((int(a), int(b)) for a, b in data["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgument(f"malformed tree-decomposition document: {exc}") from exc
        return cls(bags, edges)

    @classmethod
    def from_json(cls, text: str) -> "TreeDecomposition":
        return cls.from_dict(json.loads(text))


def validate_treedec(g: Graph, d: TreeDecomposition) -> list[str]:
    """Return the violated conditions (empty list when ``d`` is valid for ``g``)."""
    problems = []
    for a, b in d.tree_edges:
        if a not in d.bags or b not in d.bags:
            problems.append(f"tree edge ({a}, {b}) references a node without a bag")
    if problems:
        return problems
    adj = _adjacency(d.bags, d.tree_edges)
    problems += _tree_problems(adj, len(d.tree_edges))
    for node, bag in d.bags.items():
        stray = [v for v in bag if not 0 <= v < g.n]
        if stray:
            problems.append(f"bag {node} contains non-vertices {sorted(stray)}")
    for u, v in g.edges():
        if not any(u in bag and v in bag for bag in d.bags.values()):
            problems.append(f"T1: edge ({u}, {v}) is in no bag")
    for v in range(g.n):
        holders = {node for node, bag in d.bags.items() if v in bag}
        if not holders:
            problems.append(f"T3: vertex {v} is in no bag")
            continue
        start = next(iter(holders))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in holders and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != holders:
            problems.append(f"T2: nodes containing vertex {v} do not induce a subtree")
    return problems


def treedec_width(d: TreeDecomposition) -> int:
    if not d.bags:
        raise InvalidArgument("empty tree decomposition has no width")
    return max(len(bag) for bag in d.bags.values()) - 1


def rankdec_width(g: Graph, d: RankDecomposition) -> int:
    d.validate(g)
    return max((cutrank(g, m) for _, m in d.edge_cuts()), default=0)


def beta(g: Graph, d: RankDecomposition) -> int:
    """Max over tree edges of the distinct nonzero row counts on both sides."""
    d.validate(g)
    full = g.full_mask
    return max((max(c_of_set(g, m), c_of_set(g, full ^ m)) for _, m in d.edge_cuts()), default=0)
