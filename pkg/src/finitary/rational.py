"""Rational (finitely presentable, possibly cyclic) finitary sets.

A rational set is a finite pointed graph in which an edge ``u -> v`` means
``v`` is a member of ``u``.  Graphs are kept minimal (no two bisimilar
nodes) and canonically numbered, so equal rational sets are structurally
identical ``RationalSet`` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from . import hfcore
from .errors import CapExceededError, DefinitionError, GuardednessError, NonWellFoundedError
from .hfcore import INF, HfSet, Level


@dataclass(frozen=True)
class PointedGraph:
    """Arbitrary finite pointed graph; ``children[v]`` lists the members of node ``v``."""

    children: tuple
    root: int

    @classmethod
    def of(cls, children: Sequence[Sequence[int]], root: int = 0) -> "PointedGraph":
        return cls(tuple(tuple(c) for c in children), root)

    @property
    def size(self) -> int:
        return len(self.children)


@dataclass(frozen=True)
class RationalSet(PointedGraph):
    """Minimal, canonically numbered pointed graph.

    Only :func:`minimize` should construct these; structural equality then
    coincides with bisimilarity.
    """

    def __str__(self):
        return canonical_text(self)

    def __repr__(self):
        return f"RationalSet({canonical_text(self)})"


# -- partition refinement -------------------------------------------------


def refine(children: Sequence[Sequence[int]], labels: Sequence[int] | None = None, rounds: list | None = None) -> list[int]:
    """Signature refinement to the coarsest stable partition.

    Blocks are numbered deterministically: a block's new index is its rank
    among the sorted ``(old block, sorted child blocks)`` signatures.  When
    ``labels`` is None every node starts in block 0, so after round ``k``
    the partition is exactly stratified bisimilarity ``~_k``.  If ``rounds``
    is given, each round's block list is appended to it (round 0 first).
    """
    n = len(children)
    if labels is None:
        block = [0] * n
    else:
        ranks = {lab: i for i, lab in enumerate(sorted(set(labels)))}
        block = [ranks[lab] for lab in labels]
    count = len(set(block))
    if rounds is not None:
        rounds.append(block)
    while True:
        sigs = [(block[v], tuple(sorted({block[c] for c in children[v]}))) for v in range(n)]
        order = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [order[sig] for sig in sigs]
        if len(order) == count:
            return new
        block, count = new, len(order)
        if rounds is not None:
            rounds.append(block)


def reachable(children: Sequence[Sequence[int]], root: int) -> list[int]:
    seen = {root}
    stack = [root]
    out = []
    while stack:
        v = stack.pop()
        out.append(v)
        for c in children[v]:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return sorted(out)


def minimize(g: PointedGraph) -> RationalSet:
    """Quotient by the largest bisimulation, with canonical numbering."""
    keep = reachable(g.children, g.root)
    index = {v: i for i, v in enumerate(keep)}
    children = [[index[c] for c in g.children[v]] for v in keep]
    block = refine(children)
    m = max(block) + 1
    quotient: list = [None] * m
    for v, b in enumerate(block):
        if quotient[b] is None:
            quotient[b] = tuple(sorted({block[c] for c in children[v]}))
    return RationalSet(tuple(quotient), block[index[g.root]])


class _Builder:
    """Accumulates a disjoint union of graphs plus fresh nodes."""

    def __init__(self):
        self.children: list[list[int]] = []

    def node(self, kids=()) -> int:
        self.children.append(list(kids))
        return len(self.children) - 1

    def add(self, g: PointedGraph) -> int:
        offset = len(self.children)
        for kids in g.children:
            self.children.append([c + offset for c in kids])
        return g.root + offset

    def graph(self, root: int) -> PointedGraph:
        return PointedGraph.of(self.children, root)

    def build(self, root: int) -> RationalSet:
        return minimize(self.graph(root))


def _joint(g: PointedGraph, h: PointedGraph, rounds=None):
    b = _Builder()
    rg, rh = b.add(g), b.add(h)
    return b, refine(b.children, rounds=rounds), rg, rh


def bisim(g: PointedGraph, h: PointedGraph) -> bool:
    _, block, rg, rh = _joint(g, h)
    return block[rg] == block[rh]


def strat_level(g: PointedGraph, h: PointedGraph) -> Level:
    """Least round at which joint refinement separates the two roots."""
    rounds: list = []
    _, _, rg, rh = _joint(g, h, rounds)
    for k, block in enumerate(rounds):
        if block[rg] != block[rh]:
            return k
    return INF


def member(g: PointedGraph, h: PointedGraph) -> bool:
    b, block, rg, rh = _joint(g, h)
    return any(block[c] == block[rg] for c in b.children[rh])


def unfold(h: PointedGraph) -> list[RationalSet]:
    out = {}
    for c in h.children[h.root]:
        r = minimize(PointedGraph(h.children, c))
        out[r] = None
    return sorted(out, key=order_key)


def fold(items: Sequence[PointedGraph]) -> RationalSet:
    b = _Builder()
    roots = [b.add(g) for g in items]
    return b.build(b.node(roots))


def empty() -> RationalSet:
    return fold([])


def union(g: PointedGraph, h: PointedGraph) -> RationalSet:
    b = _Builder()
    rg, rh = b.add(g), b.add(h)
    return b.build(b.node(b.children[rg] + b.children[rh]))


def singleton(g: PointedGraph) -> RationalSet:
    return fold([g])


def pair(g: PointedGraph, h: PointedGraph) -> RationalSet:
    return fold([g, h])


def bigunion(g: PointedGraph) -> RationalSet:
    b = _Builder()
    r = b.add(g)
    kids = [x for c in b.children[r] for x in b.children[c]]
    return b.build(b.node(kids))


def powerset(g: PointedGraph) -> RationalSet:
    g = minimize(g)
    kids = g.children[g.root]
    if len(kids) > hfcore.POWERSET_CAP:
        raise CapExceededError(f"powerset of a {len(kids)}-member set exceeds cap {hfcore.POWERSET_CAP}")
    b = _Builder()
    r = b.add(g)
    kids = b.children[r]
    subsets = [b.node(c) for n in range(len(kids) + 1) for c in combinations(kids, n)]
    return b.build(b.node(subsets))


# -- HF sets inside rational sets -----------------------------------------


def embed(s: HfSet) -> RationalSet:
    index: dict[int, int] = {}
    children: list = []

    def visit(x: HfSet) -> int:
        v = index.get(x.handle)
        if v is None:
            kids = [visit(m) for m in x.members]
            v = len(children)
            children.append(kids)
            index[x.handle] = v
        return v

    return minimize(PointedGraph.of(children, visit(s)))


def _cyclic_nodes(children: Sequence[Sequence[int]]) -> set[int]:
    """Nodes from which some cycle is reachable."""
    n = len(children)
    # a node is well-founded once all its children are; iterate to fixpoint
    wf = [False] * n
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if not wf[v] and all(wf[c] for c in children[v]):
                wf[v] = True
                changed = True
    return {v for v in range(n) if not wf[v]}


def is_well_founded(g: PointedGraph) -> bool:
    keep = reachable(g.children, g.root)
    cyc = _cyclic_nodes(g.children)
    return not any(v in cyc for v in keep)


def to_hf(g: PointedGraph) -> HfSet:
    cyc = _cyclic_nodes(g.children)
    if g.root in cyc:
        raise NonWellFoundedError("non-well-founded: the set has an infinite descending membership chain")
    memo: dict[int, HfSet] = {}

    def build(v: int) -> HfSet:
        s = memo.get(v)
        if s is None:
            s = hfcore.make(build(c) for c in g.children[v])
            memo[v] = s
        return s

    return build(g.root)


def trunc_hf(k: int, g: PointedGraph) -> HfSet:
    """Depth-``k`` truncation of a (possibly cyclic) graph, as an HF set."""
    memo: dict[tuple[int, int], HfSet] = {}

    def cut(j: int, v: int) -> HfSet:
        if j == 0:
            return hfcore.empty()
        key = (j, v)
        s = memo.get(key)
        if s is None:
            s = hfcore.make(cut(j - 1, c) for c in g.children[v])
            memo[key] = s
        return s

    return cut(k, g.root)


def as_rational(x: HfSet | PointedGraph) -> RationalSet:
    if isinstance(x, RationalSet):
        return x
    if isinstance(x, HfSet):
        return embed(x)
    return minimize(x)


# -- canonical order and text ---------------------------------------------


def _key_lt(a, b):
    if a[0] != b[0]:
        return a[0] < b[0]
    if a[0] == 0:
        return a[1] < b[1]
    return a[2] < b[2]


class _OrderKey:
    """Sort key: HF sets first (in hfcore order), then cyclic sets by
    canonical text."""

    __slots__ = ("k",)

    def __init__(self, g):
        self.k = _raw_key(g)

    def __lt__(self, other):
        return _key_lt(self.k, other.k)

    def __eq__(self, other):
        return not _key_lt(self.k, other.k) and not _key_lt(other.k, self.k)


def _raw_key(g: RationalSet):
    if is_well_founded(g):
        return (0, hfcore._sort_key(to_hf(g)), "")
    return (1, None, canonical_text(g))


order_key = _OrderKey


def compare(g: RationalSet, h: RationalSet) -> int:
    a, b = _OrderKey(g), _OrderKey(h)
    return -1 if a < b else (1 if b < a else 0)


def canonical_text(g: PointedGraph) -> str:
    """Deterministic text: brace notation for HF sets, otherwise a system of
    equations ``x0={...}; x1={...}`` with the root as ``x0`` and
    well-founded subsets written inline."""
    g = as_rational(g)
    cyc = _cyclic_nodes(g.children)
    if g.root not in cyc:
        return hfcore.to_text(to_hf(g))
    names = {g.root: "x0"}
    for v in sorted(cyc):
        if v not in names:
            names[v] = f"x{len(names)}"
    hf_memo: dict[int, HfSet] = {}

    def hf(v):
        s = hf_memo.get(v)
        if s is None:
            s = hfcore.make(hf(c) for c in g.children[v])
            hf_memo[v] = s
        return s

    eqs = []
    for v in sorted(names, key=lambda v: int(names[v][1:])):
        kids = g.children[v]
        inline = sorted((hf(c) for c in kids if c not in cyc), key=hfcore._sort_key)
        rec = sorted((names[c] for c in kids if c in cyc), key=lambda s: int(s[1:]))
        parts = [hfcore.to_text(s) for s in inline] + rec
        eqs.append(f"{names[v]}={{{','.join(parts)}}}")
    return "; ".join(eqs)


def to_dot(g: PointedGraph, name: str = "set") -> str:
    g = as_rational(g)
    lines = [f"digraph {name} {{", "  node [shape=circle, label=\"\"];"]
    for v in range(len(g.children)):
        attrs = ' [shape=doublecircle, label="root"]' if v == g.root else ""
        lines.append(f"  n{v}{attrs};")
    for v, kids in enumerate(g.children):
        for c in kids:
            lines.append(f"  n{v} -> n{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- guarded equation systems ---------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Braces:
    items: tuple


@dataclass(frozen=True)
class UnionExpr:
    parts: tuple


@dataclass(frozen=True)
class EqSystem:
    """Ordered ``name = expression`` equations."""

    equations: tuple

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.equations]


def _walk(expr, guard: int, out: list):
    if isinstance(expr, Var):
        out.append((expr.name, guard))
    elif isinstance(expr, Braces):
        for item in expr.items:
            _walk(item, guard + 1, out)
    elif isinstance(expr, UnionExpr):
        for part in expr.parts:
            _walk(part, guard, out)
    else:
        raise TypeError(f"not a set expression: {expr!r}")


def check_guarded(system: EqSystem, env: Mapping[str, PointedGraph] | None = None) -> None:
    """Raise unless every recursion variable occurs inside braces.

    Duplicate and undefined names raise :class:`DefinitionError`; unguarded
    occurrences raise :class:`GuardednessError` naming variable and equation.
    Names bound in ``env`` are constants and need no guard.
    """
    env = env or {}
    seen = set()
    for name, _ in system.equations:
        if name in seen:
            raise DefinitionError(f"duplicate definition of {name!r}")
        seen.add(name)
    if not seen:
        raise DefinitionError("empty equation system")
    for name, rhs in system.equations:
        occ: list = []
        _walk(rhs, 0, occ)
        for var, guard in occ:
            if var not in seen and var not in env:
                raise DefinitionError(f"undefined name {var!r} in equation for {name!r}")
            if var in seen and guard == 0:
                raise GuardednessError(var, name)


def build_graph(system: EqSystem, env: Mapping[str, PointedGraph] | None = None) -> tuple[PointedGraph, dict[str, int]]:
    """Unminimized presentation: one node per variable and per brace subterm."""
    env = env or {}
    check_guarded(system, env)
    b = _Builder()
    var_node = {name: b.node() for name, _ in system.equations}
    imported: dict[str, int] = {}
    # union nodes inside braces copy members of variables; resolved last
    deferred: list[tuple[int, list[str]]] = []

    def lit(name: str) -> int:
        if name not in imported:
            imported[name] = b.add(as_rational(env[name]))
        return imported[name]

    def top_members(expr, var_refs: list[str]) -> list[int]:
        if isinstance(expr, Braces):
            return [member_node(item) for item in expr.items]
        if isinstance(expr, UnionExpr):
            return [m for part in expr.parts for m in top_members(part, var_refs)]
        if expr.name in var_node:
            var_refs.append(expr.name)
            return []
        return list(b.children[lit(expr.name)])

    def member_node(expr) -> int:
        if isinstance(expr, Var):
            return var_node[expr.name] if expr.name in var_node else lit(expr.name)
        refs: list[str] = []
        v = b.node(top_members(expr, refs))
        if refs:
            deferred.append((v, refs))
        return v

    for name, rhs in system.equations:
        refs: list[str] = []
        b.children[var_node[name]] = top_members(rhs, refs)
        assert not refs  # excluded by check_guarded
    for v, refs in deferred:
        for r in refs:
            b.children[v].extend(b.children[var_node[r]])
    return b.graph(var_node[system.equations[0][0]]), var_node


def solve(system: EqSystem, env: Mapping[str, PointedGraph] | None = None) -> dict[str, RationalSet]:
    """Unique solution of a guarded system, one rational set per variable."""
    g, var_node = build_graph(system, env)
    return {name: minimize(PointedGraph(g.children, v)) for name, v in var_node.items()}


def solve_root(system: EqSystem, env=None) -> RationalSet:
    """Solution for the first equation's variable."""
    return solve(system, env)[system.equations[0][0]]


def omega() -> RationalSet:
    """The set satisfying ``x = {x}``."""
    return minimize(PointedGraph.of([[0]], 0))
