"""Hereditarily finite sets with hash-consing.

Every HF set lives in a single process-wide append-only store.  A node is
identified by its sorted tuple of child handles, so two sets are equal
exactly when they are the same Python object.  Distances are reported as
integer *levels*: level ``k`` stands for the distance ``2**-k`` and
``INF`` for distance 0.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, Union

from .errors import CapExceededError

INF = math.inf
Level = Union[int, float]

LT, EQ, GT = -1, 0, 1

POWERSET_CAP = 20


class HfSet:
    __slots__ = ("handle", "members", "depth", "_text")

    def __init__(self, handle: int, members: tuple, depth: int):
        self.handle = handle
        self.members = members
        self.depth = depth
        self._text = None

    def __repr__(self):
        return f"HfSet({to_text(self)})"

    def __str__(self):
        return to_text(self)

    def __hash__(self):
        return self.handle

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, item):
        return is_member(item, self)


class _Store:
    def __init__(self):
        self.nodes: list[HfSet] = []
        self.index: dict[tuple, HfSet] = {}
        self.lock = threading.Lock()

    def intern(self, members: tuple) -> HfSet:
        key = tuple(m.handle for m in members)
        node = self.index.get(key)
        if node is not None:
            return node
        with self.lock:
            node = self.index.get(key)
            if node is None:
                depth = 1 + max(m.depth for m in members) if members else 0
                node = HfSet(len(self.nodes), members, depth)
                self.nodes.append(node)
                self.index[key] = node
        return node

    def __len__(self):
        return len(self.nodes)


_store = _Store()
_cmp_cache: dict[tuple[int, int], int] = {}


def store_size() -> int:
    return len(_store)


def empty() -> HfSet:
    return _store.intern(())


def compare(s: HfSet, t: HfSet) -> int:
    """Canonical strict total order on HF sets.

    Member lists are compared largest-first, lexicographically; a list that
    is a proper prefix of the other is smaller.  This coincides with the
    Ackermann coding order, so a deeper set is always larger.
    """
    if s is t:
        return EQ
    if s.depth != t.depth:
        return LT if s.depth < t.depth else GT
    key = (s.handle, t.handle)
    cached = _cmp_cache.get(key)
    if cached is not None:
        return cached
    result = EQ
    a, b = s.members, t.members
    i, j = len(a) - 1, len(b) - 1
    while i >= 0 and j >= 0:
        c = compare(a[i], b[j])
        if c != EQ:
            result = c
            break
        i -= 1
        j -= 1
    else:
        # common prefix; handles differ so the lengths must too
        result = LT if i < j else GT
    _cmp_cache[key] = result
    _cmp_cache[(t.handle, s.handle)] = -result
    return result


_sort_key = cmp_to_key(compare)


def make(members: Iterable[HfSet]) -> HfSet:
    """The set whose members are ``members`` (order and repeats ignored)."""
    unique = {m.handle: m for m in members}
    ordered = sorted(unique.values(), key=_sort_key)
    return _store.intern(tuple(ordered))


def make_sorted(members: tuple) -> HfSet:
    """Like :func:`make` for a tuple already strictly increasing in canonical order."""
    return _store.intern(members)


def members(s: HfSet) -> list[HfSet]:
    return list(s.members)


def is_member(a: HfSet, b: HfSet) -> bool:
    if a.depth >= b.depth:
        return False
    return any(m is a for m in b.members)


def depth(s: HfSet) -> int:
    return s.depth


_trunc_cache: dict[tuple[int, int], HfSet] = {}


def trunc(k: int, s: HfSet) -> HfSet:
    """Depth-``k`` projection: cut every branch after ``k`` membership steps."""
    if k < 0:
        raise ValueError("truncation depth must be non-negative")
    if k >= s.depth:
        return s
    if k == 0:
        return empty()
    key = (k, s.handle)
    out = _trunc_cache.get(key)
    if out is None:
        out = make(trunc(k - 1, m) for m in s.members)
        _trunc_cache[key] = out
    return out


_strat_cache: dict[tuple[int, int, int], bool] = {}


def strat_eq(k: int, s: HfSet, t: HfSet) -> bool:
    """Stratified bisimilarity ``s ~_k t`` by its inductive clauses."""
    if k == 0 or s is t:
        return True
    key = (k, s.handle, t.handle)
    cached = _strat_cache.get(key)
    if cached is not None:
        return cached
    result = all(any(strat_eq(k - 1, a, b) for b in t.members) for a in s.members) and all(
        any(strat_eq(k - 1, a, b) for a in s.members) for b in t.members
    )
    _strat_cache[key] = result
    return result


def level(s: HfSet, t: HfSet) -> Level:
    """Least ``k`` with ``s`` and ``t`` not ``~_k``-equivalent, or ``INF``."""
    if s is t:
        return INF
    k = 1
    while strat_eq(k, s, t):
        k += 1
    return k


dist = level


_haus_cache: dict[tuple[int, int], Level] = {}


def dist_hausdorff(s: HfSet, t: HfSet) -> Level:
    """Distance level computed by the recursive Hausdorff rules.

    Halving a distance adds one to its level; sup/inf of distances become
    min/max of levels.
    """
    if s is t:
        return INF
    if not s.members or not t.members:
        return 1
    key = (s.handle, t.handle)
    cached = _haus_cache.get(key)
    if cached is not None:
        return cached
    forward = min(max(dist_hausdorff(a, b) for b in t.members) for a in s.members)
    backward = min(max(dist_hausdorff(a, b) for a in s.members) for b in t.members)
    result = 1 + min(forward, backward)
    _haus_cache[key] = result
    return result


def distance(lv: Level) -> Fraction:
    """Exact distance ``2**-lv`` (0 for ``INF``)."""
    if lv == INF:
        return Fraction(0)
    return Fraction(1, 2 ** int(lv))


def distance_text(lv: Level) -> str:
    if lv == INF:
        return "0"
    return f"1/{2 ** int(lv)}"


def union(s: HfSet, t: HfSet) -> HfSet:
    return make(s.members + t.members)


def singleton(s: HfSet) -> HfSet:
    return make((s,))


def pair(s: HfSet, t: HfSet) -> HfSet:
    return make((s, t))


def bigunion(s: HfSet) -> HfSet:
    return make(x for m in s.members for x in m.members)


def powerset(s: HfSet) -> HfSet:
    n = len(s.members)
    if n > POWERSET_CAP:
        raise CapExceededError(f"powerset of a {n}-member set exceeds cap {POWERSET_CAP}")
    return make(make(c) for r in range(n + 1) for c in combinations(s.members, r))


def to_text(s: HfSet) -> str:
    """Brace notation with members in canonical order, e.g. ``{{},{{}}}``."""
    if s._text is None:
        s._text = "{" + ",".join(to_text(m) for m in s.members) + "}"
    return s._text


def from_nested(obj) -> HfSet:
    """Build an HF set from nested Python iterables (handy in tests)."""
    if isinstance(obj, HfSet):
        return obj
    return make(from_nested(x) for x in obj)


def von_neumann(n: int) -> HfSet:
    s = empty()
    for _ in range(n):
        s = union(s, singleton(s))
    return s
