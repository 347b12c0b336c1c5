"""Limit points of the completion, presented as fast Cauchy streams of HF sets.

A :class:`CauchyPoint` maps ``k`` to an approximant ``S_k`` with
``level(S_k, S_{k+1}) >= k + 1``.  The limit then agrees with ``S_k`` up to
depth ``k``, which makes every query below answerable with a certificate at
each finite resolution.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Optional

from . import hfcore, modal, rational, terms
from .errors import CapExceededError, PreconditionError
from .hfcore import INF, HfSet, Level
from .rational import PointedGraph

MODULUS_BOUND = 8


class CauchyPoint:
    """Stream ``k -> S_k`` of HF approximants with a fast convergence modulus.

    ``limit`` is the largest index that can be materialised (None for no
    limit).  ``member_oracle(k, x)`` may decide ``x in trunc(k, S_k)``
    without building ``S_k``.
    """

    def __init__(
        self,
        name: str,
        approximant: Callable[[int], HfSet],
        limit: Optional[int] = None,
        member_oracle: Optional[Callable[[int, HfSet], bool]] = None,
    ):
        self.name = name
        self._fn = approximant
        self.limit = limit
        self.member_oracle = member_oracle
        self._memo: dict[int, HfSet] = {}
        self._lock = threading.Lock()

    def approx(self, k: int) -> HfSet:
        if k < 0:
            raise ValueError("approximant index must be non-negative")
        if self.limit is not None and k > self.limit:
            raise CapExceededError(f"approximant {k} of {self.name} is beyond its materialisable limit {self.limit}")
        with self._lock:
            s = self._memo.get(k)
            if s is None:
                s = self._fn(k)
                self._memo[k] = s
        return s

    __getitem__ = approx

    def __repr__(self):
        return f"CauchyPoint({self.name})"


def check_modulus(p: CauchyPoint, bound: int = MODULUS_BOUND) -> bool:
    """Verify ``level(S_k, S_{k+1}) >= k + 1`` for every ``k < bound`` that fits."""
    if p.limit is not None:
        bound = min(bound, p.limit)
    return all(hfcore.level(p.approx(k), p.approx(k + 1)) >= k + 1 for k in range(bound))


def from_rational(g: PointedGraph) -> CauchyPoint:
    """The point of a rational set, approximated by its depth-``k`` truncations."""
    g = rational.as_rational(g)
    return CauchyPoint(rational.canonical_text(g), lambda k: rational.trunc_hf(k, g))


def from_hf(s: HfSet) -> CauchyPoint:
    return CauchyPoint(hfcore.to_text(s), lambda k: hfcore.trunc(k, s))


# -- guarded iteration --------------------------------------------------------


@dataclass(frozen=True)
class Step:
    value: HfSet
    level: Optional[Level]  # distance level to the previous value; None for the start


def iterate_guarded(step: terms.Term, start: HfSet, n: int) -> list[Step]:
    """``S_0 = start``, ``S_{i+1} = step(S_i)``, with consecutive levels.

    The step must be guarded in ``v``.  The returned levels are checked to
    increase strictly until the sequence becomes stationary, which is the
    contraction property that makes the limit unique.
    """
    terms.check_guarded(step)
    out = [Step(start, None)]
    cur = start
    for _ in range(n):
        nxt = terms.evaluate_hf(step, cur)
        out.append(Step(nxt, hfcore.level(cur, nxt)))
        cur = nxt
    levels = [s.level for s in out[1:]]
    for a, b in zip(levels, levels[1:]):
        if not (b > a or b == INF):
            raise PreconditionError(f"step {terms.to_text(step)} is not contractive here: levels {levels}")
    return out


def iterate_point(step: terms.Term, start: HfSet, name: Optional[str] = None) -> CauchyPoint:
    """Limit of guarded iteration; strictly increasing levels give the fast modulus."""
    terms.check_guarded(step)
    seq = [start]

    def nth(k: int) -> HfSet:
        while len(seq) <= k:
            seq.append(terms.evaluate_hf(step, seq[-1]))
        return seq[k]

    return CauchyPoint(name or f"lim {terms.to_text(step)}", nth)


# -- built-in points ------------------------------------------------------------


def _omega_approx(k: int) -> HfSet:
    s = hfcore.empty()
    for _ in range(k):
        s = hfcore.singleton(s)
    return s


def _infinity_approx(k: int) -> HfSet:
    s = hfcore.empty()
    zero_set = hfcore.singleton(hfcore.empty())
    for _ in range(k):
        s = hfcore.union(zero_set, hfcore.make(hfcore.singleton(y) for y in s.members))
    return s


UNIVERSE_LIMIT = modal.DEFAULT_CAP + 1


def _universe_approx(k: int) -> HfSet:
    if k == 0:
        return hfcore.empty()
    return hfcore.make_sorted(tuple(modal.enum_level(k - 1)))


def _universe_member(k: int, x: HfSet) -> bool:
    # trunc(k, V_k) = V_k, whose members are exactly the sets of depth <= k - 1
    return k >= 1 and x.depth <= k - 1


def omega_point() -> CauchyPoint:
    """Limit of the iterated singletons of the empty set: the set equal to its own singleton."""
    return CauchyPoint("omega", _omega_approx)


def infinity_point() -> CauchyPoint:
    """Solution of ``x = {0} | {{y} | y in x}``: approximants 0, {0}, {0,{0}}, ..."""
    return CauchyPoint("infinity", _infinity_approx)


def universe_point() -> CauchyPoint:
    """The universal set; ``V_k`` has every element of ``D_{k-1}`` as a member."""
    return CauchyPoint("universe", _universe_approx, limit=UNIVERSE_LIMIT, member_oracle=_universe_member)


BUILTIN_POINTS = {"omega": omega_point, "infinity": infinity_point, "universe": universe_point}


def builtin(name: str) -> CauchyPoint:
    try:
        return BUILTIN_POINTS[name]()
    except KeyError:
        raise KeyError(f"unknown point {name!r}; choose from {', '.join(BUILTIN_POINTS)}") from None


# -- approximate queries -----------------------------------------------------------


@dataclass(frozen=True)
class DistBound:
    """Either an exact level or the lower bound ``level >= level``."""

    level: int
    exact: bool

    def __str__(self):
        if self.exact:
            return hfcore.distance_text(self.level)
        return f"<= {hfcore.distance_text(self.level)}"


def approx_dist(p: CauchyPoint, q: CauchyPoint, k: int) -> DistBound:
    """Exact level ``j < k`` at which the limits differ, else the bound ``>= k``.

    The limits agree up to depth ``j`` iff ``trunc(j, P_j) == trunc(j, Q_j)``.
    """
    for j in range(1, k):
        if hfcore.trunc(j, p.approx(j)) is not hfcore.trunc(j, q.approx(j)):
            return DistBound(j, True)
    return DistBound(k, False)


def approx_member(p: CauchyPoint, q: CauchyPoint, k: int) -> bool:
    """Membership of ``p`` in ``q`` observed at resolution ``k``.

    True means ``trunc(k-1, P_{k-1})`` is a member of ``trunc(k, Q_k)``.  True
    membership of the limits implies True at every ``k``; a True answer at a
    single ``k`` is evidence, not proof.
    """
    if k < 1:
        raise ValueError("membership resolution must be at least 1")
    x = hfcore.trunc(k - 1, p.approx(k - 1))
    if q.member_oracle is not None:
        return q.member_oracle(k, x)
    return hfcore.is_member(x, hfcore.trunc(k, q.approx(k)))


def member_text(answer: bool, k: int) -> str:
    return f"{'yes' if answer else 'no'}-at-{k}"
