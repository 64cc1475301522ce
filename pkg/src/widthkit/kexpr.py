"""Clique-width expressions: AST, text syntax, evaluation, and compilation from
rank-decompositions.

Concrete syntax (whitespace is ignored between tokens)::

    expr := "v(" INT ")"
          | "rel(" INT "," INT "," expr ")"
          | "join(" INT "," INT "," expr ")"
          | "u(" expr "," expr ")"

optionally prefixed by a ``k=INT;`` header.  Evaluation, parsing and
serialization are iterative so deep expressions do not hit the recursion
limit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union as _U

from .decompositions import RankDecomposition, beta
from .errors import InvalidArgument, KExprError
from .graph import Graph, bits


@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class Relabel:
    src: int
    dst: int
    child: "Node"


@dataclass(frozen=True)
class Join:
    a: int
    b: int
    child: "Node"


@dataclass(frozen=True)
class Union:
    left: "Node"
    right: "Node"


Node = _U[Leaf, Relabel, Join, Union]


def _children(node: Node) -> tuple:
    if isinstance(node, Leaf):
        return ()
    if isinstance(node, Union):
        return (node.left, node.right)
    return (node.child,)


def _postorder(root: Node):
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        stack.append((node, True))
        for child in reversed(_children(node)):
            stack.append((child, False))


def _node_labels(node: Node) -> tuple[int, ...]:
    if isinstance(node, Leaf):
        return (node.label,)
    if isinstance(node, Relabel):
        return (node.src, node.dst)
    if isinstance(node, Join):
        return (node.a, node.b)
    return ()


def labels_used(root: Node) -> set[int]:
    out: set[int] = set()
    for node in _postorder(root):
        out.update(_node_labels(node))
    return out


@dataclass(frozen=True)
class KExpression:
    """An expression tree with its declared label bound ``k``.

    ``k`` defaults to the largest label referenced.
    """

    root: Node
    k: int | None = None

    def __post_init__(self):
        used = labels_used(self.root)
        if self.k is None:
            object.__setattr__(self, "k", max(used))
        for node in _postorder(self.root):
            for lbl in _node_labels(node):
                if not 1 <= lbl <= self.k:
                    raise KExprError(f"label {lbl} outside 1..{self.k}")
            if isinstance(node, (Relabel, Join)) and _node_labels(node)[0] == _node_labels(node)[1]:
                raise KExprError(f"i=j: {type(node).__name__.lower()} requires distinct labels")


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: tuple[int, ...]


# evaluation

def eval_kexpr(e: KExpression | Node) -> LabeledGraph:
    """Evaluate bottom-up; a union lists its left operand's vertices first."""
    root = e.root if isinstance(e, KExpression) else e
    values: list[tuple[list[int], list[int]]] = []
    for node in _postorder(root):
        if isinstance(node, Leaf):
            values.append(([0], [node.label]))
        elif isinstance(node, Union):
            radj, rlab = values.pop()
            ladj, llab = values.pop()
            shift = len(ladj)
            values.append((ladj + [row << shift for row in radj], llab + rlab))
        elif isinstance(node, Relabel):
            adj, lab = values[-1]
            values[-1] = (adj, [node.dst if x == node.src else x for x in lab])
        else:
            adj, lab = values[-1]
            ma = sum(1 << v for v, x in enumerate(lab) if x == node.a)
            mb = sum(1 << v for v, x in enumerate(lab) if x == node.b)
            if ma and mb:
                adj = list(adj)
                for v in bits(ma):
                    adj[v] |= mb
                for v in bits(mb):
                    adj[v] |= ma
            values[-1] = (adj, lab)
    adj, lab = values.pop()
    return LabeledGraph(Graph._trusted(adj), tuple(lab))


def kexpr_width(e: KExpression | Node) -> int:
    """Number of distinct labels referenced anywhere in the expression."""
    root = e.root if isinstance(e, KExpression) else e
    return len(labels_used(root))


# text form

_TOKEN = re.compile(rb"\s*(?:(\d+)|([a-z]+)|([(),=;]))")

_SHAPES = {
    "v": ("(", "INT", ")"),
    "rel": ("(", "INT", ",", "INT", ",", "EXPR", ")"),
    "join": ("(", "INT", ",", "INT", ",", "EXPR", ")"),
    "u": ("(", "EXPR", ",", "EXPR", ")"),
}
_STARTS = frozenset(_SHAPES)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    data = text.encode("utf-8")
    tokens = []
    pos = 0
    while pos < len(data):
        m = _TOKEN.match(data, pos)
        if m is None or m.end() == pos:
            rest = data[pos:]
            if not rest.strip():
                break
            skip = len(rest) - len(rest.lstrip())
            raise KExprError("unexpected character", pos + skip)
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1).decode(), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("WORD", m.group(2).decode(), m.start(2)))
        else:
            tokens.append(("SYM", m.group(3).decode(), m.start(3)))
        pos = m.end()
    tokens.append(("EOF", "", len(data)))
    return tokens


def parse_kexpr(text: str) -> KExpression:
    tokens = _tokenize(text)
    i = 0
    declared = None
    if tokens[0] == ("WORD", "k", tokens[0][2]):
        for want in ("=", "INT", ";"):
            kind, val, off = tokens[i + 1]
            if want == "INT":
                if kind != "INT":
                    raise KExprError("bad header", off, {"INT"})
                declared = int(val)
            elif (kind, val) != ("SYM", want):
                raise KExprError("bad header", off, {want})
            i += 1
        i += 1
        if declared < 1:
            raise KExprError("k must be at least 1", tokens[2][2])

    # frames: [keyword, offset, shape position, ints, children]
    result = None
    stack: list[list] = []
    expect_expr = True
    while True:
        kind, val, off = tokens[i]
        if expect_expr:
            if kind != "WORD" or val not in _STARTS:
                raise KExprError("expected an expression", off, _STARTS)
            stack.append([val, off, 0, [], []])
            i += 1
            expect_expr = False
        frame = stack[-1]
        shape = _SHAPES[frame[0]]
        if frame[2] == len(shape):
            node = _build(frame)
            stack.pop()
            if not stack:
                result = node
                break
            stack[-1][4].append(node)
            continue
        want = shape[frame[2]]
        kind, val, off = tokens[i]
        if want == "EXPR":
            frame[2] += 1
            expect_expr = True
            continue
        if want == "INT":
            if kind != "INT":
                raise KExprError("expected a label", off, {"INT"})
            frame[3].append((int(val), off))
        elif (kind, val) != ("SYM", want):
            raise KExprError("unexpected token", off, {want})
        frame[2] += 1
        i += 1
    kind, val, off = tokens[i]
    if kind != "EOF":
        raise KExprError("trailing input", off, {"end of input"})
    try:
        return KExpression(result, declared)
    except KExprError as exc:
        raise KExprError(str(exc)) from None


def _build(frame) -> Node:
    word, off, _, ints, kids = frame
    for lbl, loff in ints:
        if lbl < 1:
            raise KExprError("labels start at 1", loff)
    if word == "v":
        return Leaf(ints[0][0])
    if word == "u":
        return Union(kids[0], kids[1])
    (i, _), (j, joff) = ints
    if i == j:
        raise KExprError(f"i=j: {word} requires distinct labels, got {i} and {j}", joff)
    return Relabel(i, j, kids[0]) if word == "rel" else Join(i, j, kids[0])


def serialize_kexpr(e: KExpression) -> str:
    """Canonical text: no whitespace, header only when ``k`` exceeds the max label."""
    root = e.root
    parts: list[str] = []
    stack: list = [root]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif isinstance(item, Leaf):
            parts.append(f"v({item.label})")
        elif isinstance(item, Union):
            stack += [")", item.right, ",", item.left]
            parts.append("u(")
        elif isinstance(item, Relabel):
            stack += [")", item.child]
            parts.append(f"rel({item.src},{item.dst},")
        else:
            stack += [")", item.child]
            parts.append(f"join({item.a},{item.b},")
    body = "".join(parts)
    if e.k != max(labels_used(root)):
        return f"k={e.k};{body}"
    return body


# compilation from a rank-decomposition

def rankdec_to_kexpr(g: Graph, d: RankDecomposition, check: bool = False) -> KExpression:
    """A ``(2C+1)``-expression for ``g`` where ``C = beta(g, d)``."""
    return compile_rankdec(g, d, check)[0]


def compile_rankdec(g: Graph, d: RankDecomposition, check: bool = False) -> tuple[KExpression, list[int]]:
    """Compile ``d`` into a k-expression; also return the vertex order.

    ``order[i]`` is the vertex of ``g`` that becomes vertex ``i`` of the
    evaluated expression, so ``eval_kexpr(e).graph == g.relabel(order)``.

    The tree is rooted at its smallest internal node.  Each node's expression
    labels its vertices from ``1..C`` plus ``2C+1`` so that equal labels mean
    equal neighbourhoods outside the node's vertex set and vertices without
    outside neighbours carry ``2C+1``.  With ``check`` both invariants are
    asserted at every node.
    """
    c = beta(g, d)
    n = g.n
    if n == 0:
        raise InvalidArgument("the empty graph has no k-expression")
    if n == 1:
        return KExpression(Leaf(1)), [0]
    if n == 2:
        pair = Union(Leaf(1), Leaf(2 if g.m else 1))
        return KExpression(Join(1, 2, pair) if g.m else pair), [0, 1]

    top = 2 * c + 1
    adj = g.adj
    full = g.full_mask
    tree = d.adjacency()
    leaf_vertex = {leaf: v for v, leaf in d.leaf_map.items()}
    root = min(v for v, nb in tree.items() if len(nb) == 3)

    def assert_invariants(lab: dict[int, int], dmask: int) -> None:
        out = full & ~dmask
        seen: dict[int, int] = {}
        for x, lx in lab.items():
            nbh = adj[x] & out
            if not nbh and lx != top:
                raise AssertionError(f"vertex {x} has no outside neighbour but label {lx}")
            if lx != top and not 1 <= lx <= c:
                raise AssertionError(f"label {lx} outside 1..{c}")
            if seen.setdefault(lx, nbh) != nbh:
                raise AssertionError(f"label {lx} shared by vertices with different outside neighbourhoods")

    def leaf_part(v):
        x = leaf_vertex[v]
        lbl = 1 if adj[x] else top
        return Leaf(lbl), {x: lbl}, 1 << x, [x]

    def combine(left, right):
        e1, lab1, d1, order1 = left
        e2, lab2, d2, order2 = right
        dmask = d1 | d2
        out = full & ~dmask
        for lbl in sorted(set(lab2.values()) - {top}, reverse=True):
            e2 = Relabel(lbl, lbl + c, e2)
        lab = dict(lab1)
        for x, lx in lab2.items():
            lab[x] = lx if lx == top else lx + c
        e = Union(e1, e2)
        pairs = set()
        for x in bits(d1):
            for y in bits(adj[x] & d2):
                pairs.add((lab1[x], lab2[y]))
        for i, j in sorted(pairs):
            e = Join(i, j + c, e)
        isolated = sorted({lab[x] for x in lab if lab[x] != top and not adj[x] & out})
        for i in isolated:
            e = Relabel(i, top, e)
        gone = set(isolated)
        for x in lab:
            if lab[x] in gone:
                lab[x] = top
        groups: dict[int, set[int]] = {}
        for x, lx in lab.items():
            if lx != top:
                groups.setdefault(adj[x] & out, set()).add(lx)
        rename = {}
        for members in sorted(groups.values(), key=min):
            keep = min(members)
            for other in sorted(members - {keep}):
                e = Relabel(other, keep, e)
                rename[other] = keep
        present = set()
        for x in lab:
            lab[x] = rename.get(lab[x], lab[x])
            present.add(lab[x])
        present.discard(top)
        high = sorted(lbl for lbl in present if lbl > c)
        free = [j for j in range(1, c + 1) if j not in present]
        if len(high) > len(free):
            raise AssertionError("more than C live labels after merging")
        compact = dict(zip(high, free))
        for i, j in compact.items():
            e = Relabel(i, j, e)
        for x in lab:
            lab[x] = compact.get(lab[x], lab[x])
        if check:
            assert_invariants(lab, dmask)
        return e, lab, dmask, order1 + order2

    expr, _, _, order = _build_iterative(tree, root, leaf_part, combine)
    return KExpression(expr, top), order


def _build_iterative(tree, root, leaf_part, combine):
    """Post-order over the rooted tree; children in ascending node order."""
    results = {}
    stack = [(root, None, False)]
    while stack:
        v, parent, expanded = stack.pop()
        kids = [w for w in tree[v] if w != parent]
        if not kids:
            results[v] = leaf_part(v)
            continue
        if not expanded:
            stack.append((v, parent, True))
            for w in reversed(kids):
                stack.append((w, v, False))
            continue
        acc = combine(results.pop(kids[0]), results.pop(kids[1]))
        for w in kids[2:]:
            acc = combine(acc, results.pop(w))
        results[v] = acc
    return results[root]
