"""Partial sets: graphs whose nodes are bottom or sets, under the Egli-Milner order.

Bottom sits below everything and no set lies below bottom.  For sets,
``S <= T`` when every member of ``S`` is below some member of ``T`` and every
member of ``T`` is above some member of ``S``; on graphs the order is the
greatest relation closed under these clauses.  Total (bottom-free) partial
sets are exactly the rational sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import hfcore, rational
from .errors import NotTotalError, PreconditionError
from .hfcore import HfSet
from .rational import PointedGraph, RationalSet

BOTTOM = None
BOTTOM_TEXT = "_|_"


@dataclass(frozen=True)
class PartialSet:
    """Canonical pointed graph; ``nodes[v]`` is None for bottom or a tuple of child ids."""

    nodes: tuple
    root: int

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"PartialSet({to_text(self)})"


def _relation(a: Sequence, b: Sequence) -> set[tuple[int, int]]:
    """Greatest Egli-Milner relation between the nodes of two graphs."""
    rel = set()
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if x is BOTTOM or y is not BOTTOM:
                rel.add((i, j))
    changed = True
    while changed:
        changed = False
        for i, j in list(rel):
            x, y = a[i], b[j]
            if x is BOTTOM:
                continue
            ok = all(any((c, d) in rel for d in y) for c in x) and all(any((c, d) in rel for c in x) for d in y)
            if not ok:
                rel.discard((i, j))
                changed = True
    return rel


def _reachable(nodes: Sequence, root: int) -> list[int]:
    return rational.reachable([n or () for n in nodes], root)


def canonical(nodes: Sequence, root: int) -> PartialSet:
    """Canonical representative of the Egli-Milner equivalence class.

    Nodes are merged when each is below the other; each set node then keeps
    only its minimal and maximal members, since any member squeezed between
    two others is redundant.
    """
    keep = _reachable(nodes, root)
    index = {v: i for i, v in enumerate(keep)}
    g = [None if nodes[v] is BOTTOM else tuple(index[c] for c in nodes[v]) for v in keep]
    rel = _relation(g, g)
    n = len(g)
    cls = list(range(n))
    for i in range(n):
        for j in range(i):
            if cls[j] == j and (i, j) in rel and (j, i) in rel:
                cls[i] = j
                break
    reps = sorted(set(cls))
    pruned: dict[int, object] = {}
    for r in reps:
        if g[r] is BOTTOM:
            pruned[r] = BOTTOM
            continue
        kids = sorted({cls[c] for c in g[r]})
        lower = [c for c in kids if not any(d != c and (d, c) in rel for d in kids)]
        upper = [c for c in kids if not any(d != c and (c, d) in rel for d in kids)]
        pruned[r] = tuple(sorted(set(lower) | set(upper)))
    # renumber the representatives, drop what pruning disconnected, then order canonically
    order = {r: i for i, r in enumerate(reps)}
    compact = [None if pruned[r] is BOTTOM else tuple(order[c] for c in pruned[r]) for r in reps]
    croot = order[cls[index[root]]]
    live = _reachable(compact, croot)
    lidx = {v: i for i, v in enumerate(live)}
    compact = [None if compact[v] is BOTTOM else tuple(lidx[c] for c in compact[v]) for v in live]
    croot = lidx[croot]
    labels = [0 if x is BOTTOM else 1 for x in compact]
    block = rational.refine([x or () for x in compact], labels)
    out: list = [None] * (max(block) + 1)
    for v, b in enumerate(block):
        out[b] = None if compact[v] is BOTTOM else tuple(sorted({block[c] for c in compact[v]}))
    return PartialSet(tuple(out), block[croot])


def bottom() -> PartialSet:
    return canonical([BOTTOM], 0)


def make(children: Sequence[PartialSet]) -> PartialSet:
    """The partial set whose members are ``children``."""
    nodes: list = [()]
    kids = []
    for c in children:
        off = len(nodes)
        nodes.extend(None if x is BOTTOM else tuple(i + off for i in x) for x in c.nodes)
        kids.append(c.root + off)
    nodes[0] = tuple(kids)
    return canonical(nodes, 0)


def embed_partial(x: HfSet | PointedGraph) -> PartialSet:
    g = rational.as_rational(x)
    return canonical(list(g.children), g.root)


def em_leq(p: PartialSet, q: PartialSet) -> bool:
    return (p.root, q.root) in _relation(p.nodes, q.nodes)


def em_equiv(p: PartialSet, q: PartialSet) -> bool:
    return em_leq(p, q) and em_leq(q, p)


def is_total(p: PartialSet) -> bool:
    return all(p.nodes[v] is not BOTTOM for v in _reachable(p.nodes, p.root))


def to_rational(p: PartialSet) -> RationalSet:
    if not is_total(p):
        raise NotTotalError(f"{to_text(p)} contains bottom")
    return rational.minimize(PointedGraph.of(p.nodes, p.root))


def bot_trunc(k: int, g: HfSet | PointedGraph) -> PartialSet:
    """Unroll ``g`` to depth ``k`` and replace everything at depth ``k`` by bottom."""
    g = rational.as_rational(g)
    ids: dict[tuple[int, int], int] = {}
    nodes: list = []

    def visit(v: int, d: int) -> int:
        key = (v, d)
        if key in ids:
            return ids[key]
        i = len(nodes)
        ids[key] = i
        nodes.append(BOTTOM)
        if d < k:
            nodes[i] = tuple(visit(c, d + 1) for c in g.children[v])
        return i

    return canonical(nodes, visit(g.root, 0))


def maximality_check(t: PartialSet, pool: Sequence[PartialSet]) -> bool:
    """True iff nothing in ``pool`` lies strictly above ``t``."""
    if not is_total(t):
        raise PreconditionError(f"{to_text(t)} is not total")
    return all(em_leq(p, t) for p in pool if em_leq(t, p))


def is_maximal_in(p: PartialSet, pool: Sequence[PartialSet]) -> bool:
    """Like :func:`maximality_check` without the totality precondition."""
    return all(em_leq(q, p) for q in pool if em_leq(p, q))


def enum_partial(depth: int) -> list[PartialSet]:
    """All partial sets built from bottom by ``depth`` rounds of finite subsets.

    ``E_0 = [bottom]`` and ``E_{d+1}`` is bottom plus every subset of
    ``E_d``; duplicates up to Egli-Milner equivalence are dropped.
    """
    level = [bottom()]
    for _ in range(depth):
        items = {bottom(): None}
        for r in range(len(level) + 1):
            for combo in combinations(level, r):
                items[make(combo)] = None
        level = list(items)
    return sorted(level, key=to_text)


def to_text(p: PartialSet) -> str:
    """Brace text with ``_|_`` for bottom; cyclic parts become ``x0={...}; ...``."""
    nodes = p.nodes
    cyc = rational._cyclic_nodes([x or () for x in nodes])
    inline: dict[int, str] = {}

    def text(v: int) -> str:
        s = inline.get(v)
        if s is None:
            x = nodes[v]
            s = BOTTOM_TEXT if x is BOTTOM else "{" + ",".join(sorted(text(c) for c in x)) + "}"
            inline[v] = s
        return s

    if p.root not in cyc:
        return text(p.root)
    names = {p.root: "x0"}
    for v in sorted(cyc):
        if v not in names:
            names[v] = f"x{len(names)}"
    eqs = []
    for v in sorted(names, key=lambda v: int(names[v][1:])):
        kids = nodes[v]
        flat = sorted(text(c) for c in kids if c not in cyc)
        rec = sorted((names[c] for c in kids if c in cyc), key=lambda s: int(s[1:]))
        eqs.append(f"{names[v]}={{{','.join(flat + rec)}}}")
    return "; ".join(eqs)
