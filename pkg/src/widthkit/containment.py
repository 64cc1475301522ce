"""Containment tests for complete and complete-bipartite patterns, star-minor
density, and planarity.

Everything here is exhaustive and meant for small graphs; every search counts
its nodes against a :class:`~widthkit.errors.Budget`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import Budget, InvalidArgument
from .graph import Graph, bits, clique_number, connected_components, is_connected_set


def _check_r(r: int) -> None:
    if r < 1:
        raise InvalidArgument(f"pattern size must be >= 1, got {r}")


def _connected_supersets(adj, start: int, allowed: int, budget: Budget):
    """Yield every connected vertex set inside ``allowed`` that contains ``start``."""
    stack = [(1 << start, 0)]
    while stack:
        s, excluded = stack.pop()
        budget.tick()
        yield s
        nb = 0
        for v in bits(s):
            nb |= adj[v]
        nb &= allowed & ~s & ~excluded
        blocked = excluded
        for u in bits(nb):
            stack.append((s | (1 << u), blocked))
            blocked |= 1 << u


# minors

def has_minor(g: Graph, r: int, budget=None) -> bool:
    """True iff ``K_r`` is a minor of ``g``.

    Inside a connected graph a ``K_r`` model can always be grown until its
    branch sets cover every vertex, so the search ranges over partitions of a
    component into ``r`` connected, pairwise adjacent parts.
    """
    _check_r(r)
    budget = Budget.coerce(budget, "K_r minor search")
    if r == 1:
        return g.n >= 1
    if g.n < r or g.m < comb(r, 2):
        return False
    if clique_number(g) >= r:
        return True
    adj = g.adj
    for comp in connected_components(g):
        size = comp.bit_count()
        if size < r:
            continue
        edges = sum((adj[v] & comp).bit_count() for v in bits(comp)) // 2
        if edges < comb(r, 2):
            continue
        if _partition_search(adj, comp, [], r, budget):
            return True
    return False


def _neighborhood(adj, s: int) -> int:
    nb = 0
    for v in bits(s):
        nb |= adj[v]
    return nb & ~s


def _partition_search(adj, remaining: int, parts: list[int], r: int, budget: Budget) -> bool:
    budget.tick()
    need = r - len(parts)
    if need == 1:
        nb = _neighborhood(adj, remaining)
        return all(nb & p for p in parts)
    v = (remaining & -remaining).bit_length() - 1
    max_size = remaining.bit_count() - (need - 1)
    part_nbs = [_neighborhood(adj, p) for p in parts]
    for block in _connected_supersets(adj, v, remaining, budget):
        if block.bit_count() > max_size:
            continue
        if not all(pn & block for pn in part_nbs):
            continue
        rest = remaining & ~block
        if not _is_connected(adj, rest):
            continue
        if not all(pn & rest for pn in part_nbs) or not _neighborhood(adj, block) & rest:
            continue
        parts.append(block)
        found = _partition_search(adj, rest, parts, r, budget)
        parts.pop()
        if found:
            return True
    return False


def _is_connected(adj, s: int) -> bool:
    if not s:
        return False
    comp = frontier = s & -s
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= s & ~comp
        comp |= nxt
        frontier = nxt
    return comp == s


# topological minors

def biconnected_components(g: Graph) -> list[int]:
    """Blocks with at least two vertices, as vertex bitmasks."""
    n = g.n
    adj = g.adj
    disc = [-1] * n
    low = [0] * n
    blocks = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack = []
        stack = [(root, -1, iter(bits(adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(bits(adj[w]))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    block = 0
                    while True:
                        a, b = edge_stack.pop()
                        block |= (1 << a) | (1 << b)
                        if (a, b) == (parent, v):
                            break
                    blocks.append(block)
    return blocks


def _induced_path_interiors(adj, s: int, t: int, avail: int, budget: Budget) -> list[int]:
    """Interior vertex sets of the induced s-t paths through ``avail``.

    Every inclusion-minimal interior is the interior of an induced path, and a
    smaller interior never hurts the remaining routing, so these suffice.
    """
    if (adj[s] >> t) & 1:
        return [0]
    found = set()
    stack = [(s, 1 << s, 0)]
    tbit = 1 << t
    while stack:
        last, path, interior = stack.pop()
        budget.tick()
        for w in bits(adj[last] & avail & ~path):
            if adj[w] & path != 1 << last:
                continue
            if adj[w] & tbit:
                found.add(interior | (1 << w))
            else:
                stack.append((w, path | (1 << w), interior | (1 << w)))
    return sorted(found, key=lambda m: (m.bit_count(), m))


def _route(adj, full: int, branch, pattern_edges, budget: Budget) -> bool:
    failed = set()
    branch_mask = 0
    for b in branch:
        branch_mask |= 1 << b

    def go(i: int, used: int) -> bool:
        if i == len(pattern_edges):
            return True
        if (i, used) in failed:
            return False
        p, q = pattern_edges[i]
        for interior in _induced_path_interiors(adj, branch[p], branch[q], full & ~used, budget):
            if go(i + 1, used | interior):
                return True
        failed.add((i, used))
        return False

    return go(0, branch_mask)


def _complete_pattern(r: int) -> list[tuple[int, int]]:
    return list(combinations(range(r), 2))


def has_topological_minor(g: Graph, r: int, budget=None) -> bool:
    """True iff ``g`` contains a subdivision of ``K_r``."""
    _check_r(r)
    budget = Budget.coerce(budget, "K_r topological minor search")
    if r == 1:
        return g.n >= 1
    if r == 2:
        return g.m >= 1
    if g.n < r or g.m < comb(r, 2):
        return False
    pattern = _complete_pattern(r)
    for block in biconnected_components(g):
        if block.bit_count() < r:
            continue
        adj = [row & block for row in g.adj]
        cand = [v for v in bits(block) if adj[v].bit_count() >= r - 1]
        for branch in combinations(cand, r):
            budget.tick()
            if _route(adj, block, branch, pattern, budget):
                return True
    return False


_K33_PATTERN = [(a, b) for a in range(3) for b in range(3, 6)]


def has_k33_subdivision(g: Graph, budget=None) -> bool:
    """True iff ``g`` contains a subdivision of ``K_{3,3}``."""
    budget = Budget.coerce(budget, "K33 subdivision search")
    for block in biconnected_components(g):
        if block.bit_count() < 6:
            continue
        adj = [row & block for row in g.adj]
        cand = [v for v in bits(block) if adj[v].bit_count() >= 3]
        for six in combinations(cand, 6):
            first, rest = six[0], six[1:]
            for pair in combinations(rest, 2):
                side_a = (first,) + pair
                side_b = tuple(v for v in rest if v not in pair)
                budget.tick()
                if _route(adj, block, side_a + side_b, _K33_PATTERN, budget):
                    return True
    return False


def has_krr_subgraph(g: Graph, r: int, budget=None) -> bool:
    """True iff ``g`` has a (not necessarily induced) ``K_{r,r}`` subgraph."""
    _check_r(r)
    budget = Budget.coerce(budget, "K_{r,r} subgraph search")
    adj = g.adj
    cand = [v for v in range(g.n) if adj[v].bit_count() >= r]

    def extend(start: int, chosen: int, common: int) -> bool:
        budget.tick()
        if chosen == r:
            return True
        for i in range(start, len(cand)):
            nxt = common & adj[cand[i]]
            if nxt.bit_count() >= r and extend(i + 1, chosen + 1, nxt):
                return True
        return False

    return extend(0, 0, g.full_mask)


# star-minor density

def _star_blocks(adj, v: int, remaining: int) -> set[int]:
    """Star-shaped subsets of ``remaining`` that contain ``v``."""
    out = set()
    vb = 1 << v
    own = adj[v] & remaining
    for sub in _submasks(own):
        out.add(vb | sub)
    for c in bits(own):
        leaves = adj[c] & remaining & ~vb
        for sub in _submasks(leaves):
            out.add(vb | (1 << c) | sub)
    return out


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _densest(qadj: list[int]) -> tuple[int, int]:
    """Max of e(S)/|S| over nonempty vertex subsets, as (edges, vertices)."""
    p = len(qadj)
    edges = [0] * (1 << p)
    best = (0, 1)
    for s in range(1, 1 << p):
        low = s & -s
        v = low.bit_length() - 1
        rest = s ^ low
        e = edges[rest] + (qadj[v] & rest).bit_count()
        edges[s] = e
        k = s.bit_count()
        if e * best[1] > best[0] * k:
            best = (e, k)
    return best


def nabla1(g: Graph, budget=None) -> Fraction:
    """Maximum edge density ``|E(H)|/|V(H)|`` over the star minors ``H`` of ``g``.

    Star minors are taken with vertex and edge deletion allowed, so the value
    is the densest subgraph of a quotient by vertex-disjoint stars.
    """
    if g.n == 0:
        raise InvalidArgument("density is undefined for the empty graph")
    budget = Budget.coerce(budget, "star-minor search")
    adj = g.adj
    best = _densest(list(adj))
    parts: list[int] = []

    def quotient() -> list[int]:
        owner = {}
        for i, part in enumerate(parts):
            for v in bits(part):
                owner[v] = i
        q = [0] * len(parts)
        for i, part in enumerate(parts):
            nb = 0
            for v in bits(part):
                nb |= adj[v]
            nb &= ~part
            for u in bits(nb):
                q[i] |= 1 << owner[u]
        return q

    def search(remaining: int) -> None:
        nonlocal best
        budget.tick()
        if not remaining:
            p = len(parts)
            # a p-vertex graph has density at most (p-1)/2
            if (p - 1) * best[1] <= 2 * best[0]:
                return
            cand = _densest(quotient())
            if cand[0] * best[1] > best[0] * cand[1]:
                best = cand
            return
        bound = len(parts) + remaining.bit_count()
        if (bound - 1) * best[1] <= 2 * best[0]:
            return
        v = (remaining & -remaining).bit_length() - 1
        for block in sorted(_star_blocks(adj, v, remaining)):
            parts.append(block)
            search(remaining & ~block)
            parts.pop()

    search(g.full_mask)
    return Fraction(best[0], best[1])


# planarity

def is_planar(g: Graph, budget=None) -> bool:
    """Planarity by blocks: Euler-formula filters, then path addition.

    A block with fewer than 5 vertices or with ``m - n <= 2`` is planar (both
    Kuratowski graphs have ``m - n >= 3`` and subdividing preserves it); a block
    with ``m > 3n - 6`` is not.  Remaining blocks go through the
    Demoucron-Malgrange-Pertuiset embedding procedure.
    """
    budget = Budget.coerce(budget, "planarity test")
    if g.n < 5:
        return True
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return False
    for block in biconnected_components(g):
        n = block.bit_count()
        if n < 5:
            continue
        adj = [row & block for row in g.adj]
        m = sum(adj[v].bit_count() for v in bits(block)) // 2
        if m - n <= 2:
            continue
        if m > 3 * n - 6:
            return False
        if not _embed_block(adj, block, m, budget):
            return False
    return True


def _find_cycle(adj, block: int) -> list[int]:
    u = (block & -block).bit_length() - 1
    w = (adj[u] & -adj[u]).bit_length() - 1
    # shortest u-w path avoiding the edge uw
    parent = {u: None}
    frontier = [u]
    while w not in parent:
        nxt = []
        for x in frontier:
            for y in bits(adj[x]):
                if y in parent or (x == u and y == w):
                    continue
                parent[y] = x
                nxt.append(y)
        frontier = nxt
    cycle = []
    x = w
    while x is not None:
        cycle.append(x)
        x = parent[x]
    return cycle


def _embed_block(adj, block: int, total_edges: int, budget: Budget) -> bool:
    cycle = _find_cycle(adj, block)
    h_mask = 0
    h_edges = set()
    for i, v in enumerate(cycle):
        h_mask |= 1 << v
        a, b = v, cycle[(i + 1) % len(cycle)]
        h_edges.add((min(a, b), max(a, b)))
    faces = [list(cycle), list(cycle)]
    face_masks = [h_mask, h_mask]
    while len(h_edges) < total_edges:
        budget.tick()
        fragments = []
        for u in bits(h_mask):
            for w in bits(adj[u] & h_mask & ~((2 << u) - 1)):
                if (u, w) not in h_edges:
                    fragments.append((None, (1 << u) | (1 << w), (u, w)))
        outside = block & ~h_mask
        while outside:
            comp = frontier = outside & -outside
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= adj[v]
                nxt &= outside & ~comp
                comp |= nxt
                frontier = nxt
            outside &= ~comp
            attach = 0
            for v in bits(comp):
                attach |= adj[v]
            fragments.append((comp, attach & h_mask, None))
        chosen = None
        for frag in fragments:
            admissible = [i for i, fm in enumerate(face_masks) if frag[1] & ~fm == 0]
            if not admissible:
                return False
            if chosen is None or len(admissible) == 1 and len(chosen[1]) > 1:
                chosen = (frag, admissible)
        (comp, attach, chord), admissible = chosen
        if chord is not None:
            path = list(chord)
        else:
            path = _fragment_path(adj, comp, attach)
        idx = admissible[0]
        face = faces[idx]
        i, j = face.index(path[0]), face.index(path[-1])
        k = len(face)
        seg1 = [face[(i + t) % k] for t in range((j - i) % k + 1)]
        seg2 = [face[(j + t) % k] for t in range((i - j) % k + 1)]
        inner = path[1:-1]
        new1 = seg1 + inner[::-1]
        new2 = seg2 + inner
        faces[idx] = new1
        face_masks[idx] = sum(1 << v for v in new1)
        faces.append(new2)
        face_masks.append(sum(1 << v for v in new2))
        for a, b in zip(path, path[1:]):
            h_edges.add((min(a, b), max(a, b)))
            h_mask |= (1 << a) | (1 << b)
    return True


def _fragment_path(adj, comp: int, attach: int) -> list[int]:
    """A path from one attachment through ``comp`` to a different attachment."""
    a = (attach & -attach).bit_length() - 1
    others = attach & ~(1 << a)
    starts = list(bits(adj[a] & comp))
    parent = {s: None for s in starts}
    frontier = starts
    while frontier:
        nxt = []
        for x in frontier:
            if adj[x] & others:
                b = (adj[x] & others & -(adj[x] & others)).bit_length() - 1
                path = [b]
                y = x
                while y is not None:
                    path.append(y)
                    y = parent[y]
                path.append(a)
                return path[::-1]
            for y in bits(adj[x] & comp):
                if y not in parent:
                    parent[y] = x
                    nxt.append(y)
        frontier = nxt
    raise AssertionError("fragment of a biconnected block has a single attachment")
