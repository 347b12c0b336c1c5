"""Closed modal-K formulas evaluated over finitary sets.

A set satisfies ``<>phi`` when some member does and ``[]phi`` when every
member does.  Formulas have no propositional atoms, so a formula of modal
depth ``k`` only sees the depth-``k`` truncation of a set; validity is
therefore decided by evaluating on every element of the finite level space
``D_k``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import hfcore, rational
from .errors import CapExceededError, PreconditionError
from .hfcore import INF, HfSet, Level
from .rational import PointedGraph

DEFAULT_CAP = 4

TRUE, FALSE, NOT, AND, OR, IMP, BOX, DIA = "true", "false", "not", "and", "or", "imp", "box", "dia"
_ARITY = {TRUE: 0, FALSE: 0, NOT: 1, BOX: 1, DIA: 1, AND: 2, OR: 2, IMP: 2}


class Formula:
    """Interned formula node: structurally equal formulas are the same object."""

    __slots__ = ("op", "args", "modal_depth", "_hash")
    _table: dict = {}
    _lock = threading.Lock()

    def __new__(cls, op: str, *args: "Formula"):
        if _ARITY.get(op) != len(args):
            raise ValueError(f"bad formula node {op!r} with {len(args)} arguments")
        key = (op,) + tuple(id(a) for a in args)
        node = cls._table.get(key)
        if node is not None:
            return node
        with cls._lock:
            node = cls._table.get(key)
            if node is None:
                node = object.__new__(cls)
                node.op = op
                node.args = args
                inner = max((a.modal_depth for a in args), default=0)
                node.modal_depth = inner + 1 if op in (BOX, DIA) else inner
                node._hash = hash(key)
                cls._table[key] = node
        return node

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other

    def __repr__(self):
        return f"Formula({to_text(self)})"

    def __str__(self):
        return to_text(self)

    def __reduce__(self):
        return (Formula, (self.op,) + self.args)


TOP = Formula(TRUE)
BOT = Formula(FALSE)


def Not(a):
    return Formula(NOT, a)


def And(a, b):
    return Formula(AND, a, b)


def Or(a, b):
    return Formula(OR, a, b)


def Implies(a, b):
    return Formula(IMP, a, b)


def Box(a):
    return Formula(BOX, a)


def Dia(a):
    return Formula(DIA, a)


def Iff(a, b):
    return And(Implies(a, b), Implies(b, a))


def big_and(items: Sequence[Formula]) -> Formula:
    items = list(items)
    if not items:
        return TOP
    out = items[0]
    for f in items[1:]:
        out = And(out, f)
    return out


def big_or(items: Sequence[Formula]) -> Formula:
    items = list(items)
    if not items:
        return BOT
    out = items[0]
    for f in items[1:]:
        out = Or(out, f)
    return out


def modal_depth(f: Formula) -> int:
    return f.modal_depth


# -- rendering -------------------------------------------------------------

_PREC = {IMP: 1, OR: 2, AND: 3}
_SYM = {IMP: "->", OR: "|", AND: "&", NOT: "~", BOX: "[]", DIA: "<>"}


def _prec(f: Formula) -> int:
    return _PREC.get(f.op, 4)


def to_text(f: Formula) -> str:
    """Render in the ``true false ~ & | -> [] <>`` syntax with minimal parentheses.

    ``&`` and ``|`` associate to the left and ``->`` to the right, so the
    output parses back to the identical formula.
    """
    if f.op == TRUE:
        return "true"
    if f.op == FALSE:
        return "false"
    if f.op in (NOT, BOX, DIA):
        inner = to_text(f.args[0])
        if _prec(f.args[0]) < 4:
            inner = f"({inner})"
        return _SYM[f.op] + inner
    p = _PREC[f.op]
    left, right = f.args
    lt, rt = to_text(left), to_text(right)
    if f.op == IMP:
        if _prec(left) <= p:
            lt = f"({lt})"
        if _prec(right) < p:
            rt = f"({rt})"
    else:
        if _prec(left) < p:
            lt = f"({lt})"
        if _prec(right) <= p:
            rt = f"({rt})"
    return f"{lt} {_SYM[f.op]} {rt}"


# -- satisfaction ----------------------------------------------------------


def _evaluate(node, f: Formula, kids, memo: dict) -> bool:
    op = f.op
    if op == TRUE:
        return True
    if op == FALSE:
        return False
    key = (node, f)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if op == NOT:
        out = not _evaluate(node, f.args[0], kids, memo)
    elif op == AND:
        out = _evaluate(node, f.args[0], kids, memo) and _evaluate(node, f.args[1], kids, memo)
    elif op == OR:
        out = _evaluate(node, f.args[0], kids, memo) or _evaluate(node, f.args[1], kids, memo)
    elif op == IMP:
        out = (not _evaluate(node, f.args[0], kids, memo)) or _evaluate(node, f.args[1], kids, memo)
    elif op == BOX:
        out = all(_evaluate(m, f.args[0], kids, memo) for m in kids(node))
    else:
        out = any(_evaluate(m, f.args[0], kids, memo) for m in kids(node))
    memo[key] = out
    return out


def _hf_kids(s: HfSet):
    return s.members


class Evaluator:
    """Evaluates many formulas on one structure, sharing a memo table."""

    def __init__(self, s: HfSet | PointedGraph):
        self.memo: dict = {}
        if isinstance(s, HfSet):
            self.root, self.kids = s, _hf_kids
        else:
            children = s.children
            self.root, self.kids = s.root, children.__getitem__

    def __call__(self, f: Formula, node=None) -> bool:
        return _evaluate(self.root if node is None else node, f, self.kids, self.memo)


def sat(s: HfSet | PointedGraph, f: Formula) -> bool:
    """``s |= f``; on cyclic graphs this terminates since modal depth drops."""
    return Evaluator(s)(f)


# -- master and characteristic formulas -------------------------------------

_master_cache: dict[int, Formula] = {}


def master(s: HfSet) -> Formula:
    """Formula satisfied exactly by the sets bisimilar to ``s``."""
    f = _master_cache.get(s.handle)
    if f is None:
        if not s.members:
            f = Box(BOT)
        else:
            subs = [master(m) for m in s.members]
            f = And(Box(big_or(subs)), big_and([Dia(x) for x in subs]))
        _master_cache[s.handle] = f
    return f


_char_cache: dict[tuple[int, int], Formula] = {}


def char_formula(k: int, e: HfSet) -> Formula:
    """Formula true of ``s`` iff ``trunc(k, s) == e`` (``e`` must lie in ``D_k``)."""
    if e.depth > k:
        raise PreconditionError(f"{hfcore.to_text(e)} has depth {e.depth} > {k}, so it is not in D_{k}")
    if k == 0:
        return TOP
    key = (k, e.handle)
    f = _char_cache.get(key)
    if f is None:
        if not e.members:
            f = Box(BOT)
        else:
            subs = [char_formula(k - 1, m) for m in e.members]
            f = And(Box(big_or(subs)), big_and([Dia(x) for x in subs]))
        _char_cache[key] = f
    return f


# -- level spaces ----------------------------------------------------------

_levels: list[list[HfSet]] = []
_level_index: list[dict[int, int]] = []
_levels_lock = threading.Lock()


def level_size(k: int) -> int:
    """``|D_k|`` by the tower ``|D_0| = 1``, ``|D_{k+1}| = 2**|D_k|``."""
    n = 1
    for _ in range(k):
        n = 2**n
    return n


def _check_cap(k: int, cap: int | None):
    cap = DEFAULT_CAP if cap is None else cap
    if k > cap:
        raise CapExceededError(f"level space D_{k} exceeds the depth cap {cap}")


def enum_level(k: int, cap: int | None = None) -> list[HfSet]:
    """All values of ``trunc(k, .)``, in canonical order.

    Elements of ``D_{k+1}`` are the subsets of ``D_k``; with ``D_k`` sorted,
    the canonical order on subsets is the numeric order of their bitmasks,
    so each level is generated already sorted.
    """
    _check_cap(k, cap)
    with _levels_lock:
        if not _levels:
            _levels.append([hfcore.empty()])
            _level_index.append({hfcore.empty().handle: 0})
        while len(_levels) <= k:
            prev = _levels[-1]
            n = len(prev)
            nxt = []
            for mask in range(1 << n):
                nxt.append(hfcore.make_sorted(tuple(prev[i] for i in range(n) if mask >> i & 1)))
            _levels.append(nxt)
            _level_index.append({s.handle: i for i, s in enumerate(nxt)})
        return _levels[k]


def level_index(k: int, e: HfSet) -> int:
    enum_level(k, cap=max(k, DEFAULT_CAP))
    return _level_index[k][e.handle]


# -- normal forms and the decision procedure --------------------------------


@dataclass(frozen=True)
class NormalForm:
    """Denotation of a formula as a set of indices into ``D_depth``."""

    depth: int
    indices: frozenset

    @property
    def size(self) -> int:
        return level_size(self.depth)

    def elements(self) -> list[HfSet]:
        space = enum_level(self.depth, cap=max(self.depth, DEFAULT_CAP))
        return [space[i] for i in sorted(self.indices)]

    def is_full(self) -> bool:
        return len(self.indices) == self.size

    def is_empty(self) -> bool:
        return not self.indices


def normal_form(f: Formula, depth: int | None = None, cap: int | None = None) -> NormalForm:
    """Evaluate ``f`` on every element of ``D_k`` (``k`` = modal depth by default)."""
    k = f.modal_depth if depth is None else depth
    if k < f.modal_depth:
        raise ValueError(f"depth {k} is below the modal depth {f.modal_depth}")
    space = enum_level(k, cap)
    memo: dict = {}
    idx = frozenset(i for i, e in enumerate(space) if _evaluate(e, f, _hf_kids, memo))
    return NormalForm(k, idx)


def lift(nf: NormalForm, k: int, cap: int | None = None) -> NormalForm:
    """Re-express a normal form at a deeper level via truncation."""
    if k < nf.depth:
        raise ValueError("can only lift to a deeper level")
    if k == nf.depth:
        return nf
    space = enum_level(k, cap)
    base = enum_level(nf.depth, cap)
    index = {e.handle: i for i, e in enumerate(base)}
    idx = frozenset(i for i, e in enumerate(space) if index[hfcore.trunc(nf.depth, e).handle] in nf.indices)
    return NormalForm(k, idx)


def _common(f: Formula, g: Formula, cap):
    k = max(f.modal_depth, g.modal_depth)
    return lift(normal_form(f, cap=cap), k, cap), lift(normal_form(g, cap=cap), k, cap)


def valid(f: Formula, cap: int | None = None) -> bool:
    return normal_form(f, cap=cap).is_full()


def satisfiable(f: Formula, cap: int | None = None) -> bool:
    return not normal_form(f, cap=cap).is_empty()


def equiv(f: Formula, g: Formula, cap: int | None = None) -> bool:
    a, b = _common(f, g, cap)
    return a.indices == b.indices


def entails(f: Formula, g: Formula, cap: int | None = None) -> bool:
    a, b = _common(f, g, cap)
    return a.indices <= b.indices


# -- the free modal algebra --------------------------------------------------


def algebra_size(k: int) -> int:
    """Size of the depth-``k`` fragment of the free modal algebra, ``2**|D_k|``."""
    if k > 4:
        raise CapExceededError(f"algebra_size({k}) = {algebra_size_text(k)} has no usable integer value")
    return 2 ** level_size(k)


def algebra_size_text(k: int) -> str:
    """Decimal for small ``k``, otherwise a power tower of 2s."""
    if k <= 3:
        return str(2 ** level_size(k))
    if k == 4:
        return f"2^{level_size(4)}"
    if k == 5:
        return f"2^(2^{level_size(4)})"
    raise CapExceededError(f"algebra size is only tabulated up to k = 5, got {k}")


def atoms(k: int, cap: int | None = None) -> list[Formula]:
    """One characteristic formula per element of ``D_k``; each denotes a single point."""
    return [char_formula(k, e) for e in enum_level(k, cap)]


def formula_level(s: HfSet | PointedGraph, t: HfSet | PointedGraph) -> Level:
    """Least ``k`` such that a depth-``k`` formula tells ``s`` and ``t`` apart.

    The candidate separator at depth ``k`` is the characteristic formula of
    the depth-``k`` truncation of ``s``.  Graphs of ``n`` nodes in total that
    agree up to depth ``n`` agree everywhere.
    """
    bound = _bound(s) + _bound(t)
    ev = Evaluator(t)
    for k in range(bound + 1):
        if not ev(char_formula(k, _truncate(k, s))):
            return k
    return INF


def _bound(x) -> int:
    return x.depth + 1 if isinstance(x, HfSet) else len(x.children)


def _truncate(k: int, x) -> HfSet:
    return hfcore.trunc(k, x) if isinstance(x, HfSet) else rational.trunc_hf(k, x)


def separating_formula(s, t) -> Formula | None:
    """A formula true of ``s`` and false of ``t``, or None if they are bisimilar."""
    k = formula_level(s, t)
    if k == INF:
        return None
    return char_formula(k, _truncate(k, s))


def interdefinable(a: Formula) -> Formula:
    """``[]a <-> ~<>~a``, the box/diamond duality instance."""
    return Iff(Box(a), Not(Dia(Not(a))))


def ma_instances(pool: Iterable[Formula]) -> list[Formula]:
    """Instances of the modal-algebra and Vietoris axioms over ``pool``."""
    pool = list(pool)
    out = [Iff(Dia(BOT), BOT), Iff(Box(TOP), TOP)]
    for a, b in combinations(pool, 2):
        out.extend(_pair_instances(a, b))
    for a in pool:
        out.extend(_pair_instances(a, a))
        out.append(interdefinable(a))
    return out


def _pair_instances(a: Formula, b: Formula) -> list[Formula]:
    return [
        Iff(Dia(Or(a, b)), Or(Dia(a), Dia(b))),
        Iff(Box(And(a, b)), And(Box(a), Box(b))),
        Implies(Box(Or(a, b)), Or(Box(a), Dia(b))),
        Implies(And(Dia(a), Box(b)), Dia(And(a, b))),
    ]
