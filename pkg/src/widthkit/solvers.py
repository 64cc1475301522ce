"""Exact exponential-time solvers for tree-width and rank-width."""

from __future__ import annotations

from functools import lru_cache

from .decompositions import RankDecomposition, TreeDecomposition
from .errors import ResourceLimit
from .gf2 import cutrank_table
from .graph import Graph, bits, degeneracy

TREEWIDTH_LIMIT = 18
RANKWIDTH_LIMIT = 12


# tree-width

def ordering_decomposition(g: Graph, order: list[int]) -> TreeDecomposition:
    """Tree decomposition induced by an elimination ordering.

    Node ``v`` holds ``v`` plus its later neighbours in the filled graph and
    hangs below the earliest of those neighbours.
    """
    n = g.n
    pos = {v: i for i, v in enumerate(order)}
    nb = list(g.adj)
    bags = {}
    edges = []
    done = 0
    for i, v in enumerate(order):
        done |= 1 << v
        later = nb[v] & ~done
        bags[v] = frozenset([v, *bits(later)])
        for u in bits(later):
            nb[u] |= later & ~(1 << u)
        if later:
            parent = min(bits(later), key=pos.__getitem__)
            edges.append((v, parent))
        elif i + 1 < n:
            edges.append((v, order[i + 1]))
    return TreeDecomposition(bags, tuple(edges))


def ordering_width(g: Graph, order: list[int]) -> int:
    nb = list(g.adj)
    done = 0
    width = -1
    for v in order:
        done |= 1 << v
        later = nb[v] & ~done
        width = max(width, later.bit_count())
        for u in bits(later):
            nb[u] |= later & ~(1 << u)
    return width


def min_fill_ordering(g: Graph) -> list[int]:
    nb = list(g.adj)
    alive = g.full_mask
    order = []
    while alive:
        best = None
        for v in bits(alive):
            row = nb[v] & alive
            fill = 0
            for u in bits(row):
                fill += (row & ~nb[u] & ~(1 << u)).bit_count()
            key = (fill, row.bit_count(), v)
            if best is None or key < best:
                best = key
        v = best[2]
        row = nb[v] & alive
        for u in bits(row):
            nb[u] |= row & ~(1 << u)
        alive &= ~(1 << v)
        order.append(v)
    return order


def contraction_degeneracy_bound(g: Graph) -> int:
    """Minor-min-width lower bound on tree-width (min-degree contraction)."""
    nb = {v: set(g.neighbors(v)) for v in range(g.n)}
    best = 0
    while len(nb) > 1:
        v = min(nb, key=lambda x: (len(nb[x]), x))
        best = max(best, len(nb[v]))
        if not nb[v]:
            del nb[v]
            continue
        u = min(nb[v], key=lambda x: (len(nb[x]), x))
        for w in nb[v]:
            nb[w].discard(v)
            if w != u:
                nb[w].add(u)
                nb[u].add(w)
        del nb[v]
    return best


def _treewidth_dp(g: Graph, upper: int) -> tuple[int, list[int]] | None:
    """Subset DP over eliminated sets; only widths below ``upper`` are kept.

    Returns ``None`` when no ordering beats ``upper``.
    """
    n = g.n
    adj = g.adj
    full = g.full_mask
    inf = n + 1
    tw = [inf] * (1 << n)
    choice = [0] * (1 << n)
    tw[0] = -1
    for s in range(1 << n):
        cur = tw[s]
        if cur >= upper:
            continue
        # components of G[S] with their outside neighbourhoods
        comps = []
        left = s
        while left:
            comp = frontier = left & -left
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= adj[v]
                nxt &= left & ~comp
                comp |= nxt
                frontier = nxt
            left &= ~comp
            out = 0
            for v in bits(comp):
                out |= adj[v]
            comps.append((comp, out & ~s))
        for v in bits(full & ~s):
            vb = 1 << v
            q = adj[v]
            for comp, out in comps:
                if adj[v] & comp:
                    q |= out
            val = q & ~s & ~vb
            val = val.bit_count()
            if val < cur:
                val = cur
            t = s | vb
            if val < tw[t] and val < upper:
                tw[t] = val
                choice[t] = v
    if tw[full] >= upper:
        return None
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    return tw[full], order


def exact_treewidth(g: Graph, limit: int = TREEWIDTH_LIMIT) -> tuple[int, TreeDecomposition]:
    """Exact tree-width with a witness decomposition.

    The min-fill ordering gives an upper bound and minor-min-width a lower
    bound; when they differ, a subset DP over elimination orderings settles
    the value.  Raises :class:`ResourceLimit` when ``n > limit``.
    """
    if g.n > limit:
        raise ResourceLimit(f"exact tree-width is limited to {limit} vertices, got {g.n}")
    return _exact_treewidth(g)


@lru_cache(maxsize=1 << 16)
def _exact_treewidth(g: Graph) -> tuple[int, TreeDecomposition]:
    if g.n == 0:
        return -1, TreeDecomposition({0: frozenset()})
    order = min_fill_ordering(g)
    upper = ordering_width(g, order)
    lower = max(degeneracy(g), contraction_degeneracy_bound(g))
    if lower < upper:
        found = _treewidth_dp(g, upper)
        if found is not None:
            upper, order = found
    return upper, ordering_decomposition(g, order)


# rank-width

def _rankwidth_dp(g: Graph) -> tuple[list[int], list[int]]:
    n = g.n
    cr = cutrank_table(g)
    size = 1 << n
    f = [0] * size
    split = [0] * size
    big = n + 1
    for s in range(1, size):
        if s & (s - 1) == 0:
            continue
        low = s & -s
        rest = s ^ low
        best = big
        best_a = 0
        sub = 0
        # ascending submasks, so the first optimum has the smallest A
        while sub != rest:
            a = low | sub
            b = s ^ a
            val = f[a]
            if f[b] > val:
                val = f[b]
            if cr[a] > val:
                val = cr[a]
            if cr[b] > val:
                val = cr[b]
            if val < best:
                best = val
                best_a = a
                if val == 0:
                    break
            sub = (sub - rest) & rest
        f[s] = best
        split[s] = best_a
    return f, split


def exact_rankwidth(g: Graph, limit: int = RANKWIDTH_LIMIT) -> tuple[int, RankDecomposition]:
    """Exact rank-width with a witness rank-decomposition.

    ``f(S)`` is the least width of a rooted binary tree on ``S`` where each
    non-root node ``A`` costs ``cutrank(G, A)``; the split of ``V(G)`` at the
    root becomes one tree edge after unrooting.  Among optimal splits the one
    whose part containing the lowest vertex is the smallest bitmask wins.
    """
    if g.n > limit:
        raise ResourceLimit(f"exact rank-width is limited to {limit} vertices, got {g.n}")
    return _exact_rankwidth(g)


@lru_cache(maxsize=1 << 16)
def _exact_rankwidth(g: Graph) -> tuple[int, RankDecomposition]:
    n = g.n
    if n <= 1:
        return 0, RankDecomposition((), {v: v for v in range(n)})
    f, split = _rankwidth_dp(g)
    full = g.full_mask
    edges = []
    next_id = n

    def build(s: int) -> int:
        nonlocal next_id
        if s & (s - 1) == 0:
            return s.bit_length() - 1
        node = next_id
        next_id += 1
        a = split[s]
        for part in (a, s ^ a):
            edges.append((node, build(part)))
        return node

    a = split[full]
    left = build(a)
    right = build(full ^ a)
    edges.append((left, right))
    return f[full], RankDecomposition(tuple(edges), {v: v for v in range(n)})
