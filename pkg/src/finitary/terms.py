"""Unary set terms in the variable ``v``.

Terms denote continuous maps on finitary sets and are built from ``v``,
brace lists (HF literals are brace lists without ``v``), union ``|``,
big union ``U t``, powerset ``P t``, separation ``sep(t, formula)`` and the
image ``map(t, body)``, which is ``{body[v := y] | y in t}``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import hfcore, modal, rational
from .errors import GuardednessError
from .hfcore import INF, HfSet, Level
from .rational import RationalSet


class Term:
    pass


@dataclass(frozen=True)
class V(Term):
    pass


@dataclass(frozen=True)
class Brace(Term):
    items: tuple


@dataclass(frozen=True)
class Join(Term):
    parts: tuple


@dataclass(frozen=True)
class BigUnion(Term):
    arg: Term


@dataclass(frozen=True)
class Power(Term):
    arg: Term


@dataclass(frozen=True)
class Sep(Term):
    arg: Term
    formula: modal.Formula


@dataclass(frozen=True)
class Map(Term):
    source: Term
    body: Term


VAR = V()


def literal(s: HfSet) -> Term:
    return Brace(tuple(literal(m) for m in s.members))


def evaluate(t: Term, x: RationalSet) -> RationalSet:
    """Apply ``t`` to a rational set."""
    if isinstance(t, V):
        return x
    if isinstance(t, Brace):
        return rational.fold([evaluate(i, x) for i in t.items])
    if isinstance(t, Join):
        out = rational.empty()
        for p in t.parts:
            out = rational.union(out, evaluate(p, x))
        return out
    if isinstance(t, BigUnion):
        return rational.bigunion(evaluate(t.arg, x))
    if isinstance(t, Power):
        return rational.powerset(evaluate(t.arg, x))
    if isinstance(t, Sep):
        src = evaluate(t.arg, x)
        return rational.fold([y for y in rational.unfold(src) if modal.sat(y, t.formula)])
    if isinstance(t, Map):
        return rational.fold([evaluate(t.body, y) for y in rational.unfold(evaluate(t.source, x))])
    raise TypeError(f"not a term: {t!r}")


def evaluate_hf(t: Term, s: HfSet) -> HfSet:
    """Apply ``t`` to an HF set, staying inside hfcore."""
    if isinstance(t, V):
        return s
    if isinstance(t, Brace):
        return hfcore.make(evaluate_hf(i, s) for i in t.items)
    if isinstance(t, Join):
        return hfcore.make(m for p in t.parts for m in evaluate_hf(p, s).members)
    if isinstance(t, BigUnion):
        return hfcore.bigunion(evaluate_hf(t.arg, s))
    if isinstance(t, Power):
        return hfcore.powerset(evaluate_hf(t.arg, s))
    if isinstance(t, Sep):
        return hfcore.make(y for y in evaluate_hf(t.arg, s).members if modal.sat(y, t.formula))
    if isinstance(t, Map):
        return hfcore.make(evaluate_hf(t.body, y) for y in evaluate_hf(t.source, s).members)
    raise TypeError(f"not a term: {t!r}")


def mentions_var(t: Term) -> bool:
    if isinstance(t, V):
        return True
    if isinstance(t, (Brace, Join)):
        return any(mentions_var(i) for i in (t.items if isinstance(t, Brace) else t.parts))
    if isinstance(t, (BigUnion, Power, Sep)):
        return mentions_var(t.arg)
    if isinstance(t, Map):
        return mentions_var(t.source)
    raise TypeError(f"not a term: {t!r}")


def surely_nonempty(t: Term) -> bool:
    """True when ``t`` is nonempty whatever the argument."""
    if isinstance(t, Brace):
        return bool(t.items)
    if isinstance(t, Join):
        return any(surely_nonempty(p) for p in t.parts)
    if isinstance(t, Power):
        return True
    if isinstance(t, Map):
        return surely_nonempty(t.source)
    return False


def agreement(t: Term, n: Level) -> Level:
    """Depth to which ``t(x)`` and ``t(y)`` surely agree when ``x`` and ``y`` agree to depth ``n``.

    Agreement to depth 0 carries no information, so a union with a surely
    nonempty part still agrees to depth 1 and an image needs its source to
    agree to depth at least 1.
    """
    if not mentions_var(t):
        return INF
    if isinstance(t, V):
        return n
    if isinstance(t, Brace):
        return 1 + min(agreement(i, n) for i in t.items)
    if isinstance(t, Join):
        m = min(agreement(p, n) for p in t.parts)
        return max(m, 1) if surely_nonempty(t) else m
    if isinstance(t, BigUnion):
        return max(agreement(t.arg, n) - 1, 0)
    if isinstance(t, Power):
        return agreement(t.arg, n) + 1
    if isinstance(t, Sep):
        # members agreeing to the formula's depth get the same verdict
        m = agreement(t.arg, n)
        return m if m - 1 >= t.formula.modal_depth else 0
    if isinstance(t, Map):
        m = agreement(t.source, n)
        if m == 0:
            return 0
        return 1 + agreement(t.body, m - 1)
    raise TypeError(f"not a term: {t!r}")


def _horizon(t: Term) -> int:
    """Inputs agreeing beyond this depth show the asymptotic behaviour of :func:`agreement`."""
    if isinstance(t, V):
        return 1
    if isinstance(t, (Brace, Join)):
        return 1 + sum(_horizon(i) for i in (t.items if isinstance(t, Brace) else t.parts))
    if isinstance(t, Sep):
        return 2 + _horizon(t.arg) + t.formula.modal_depth
    if isinstance(t, (BigUnion, Power)):
        return 1 + _horizon(t.arg)
    if isinstance(t, Map):
        return 1 + _horizon(t.source) + _horizon(t.body)
    raise TypeError(f"not a term: {t!r}")


def contraction(t: Term) -> Level:
    """Least gain ``agreement(t, n) - n`` over all ``n``; at least 1 means contractive."""
    return min(agreement(t, n) - n for n in range(_horizon(t) + 1))


def check_guarded(t: Term, name: str = "step") -> None:
    """Raise :class:`GuardednessError` unless ``t`` is a contraction in ``v``."""
    if contraction(t) < 1:
        raise GuardednessError("v", name, f"{to_text(t)!r} is not a contraction in v")


def to_text(t: Term) -> str:
    if isinstance(t, V):
        return "v"
    if isinstance(t, Brace):
        return "{" + ",".join(to_text(i) for i in t.items) + "}"
    if isinstance(t, Join):
        return " | ".join(_atom_text(p) for p in t.parts)
    if isinstance(t, BigUnion):
        return "U " + _atom_text(t.arg)
    if isinstance(t, Power):
        return "P " + _atom_text(t.arg)
    if isinstance(t, Sep):
        return f"sep({to_text(t.arg)}, {modal.to_text(t.formula)})"
    if isinstance(t, Map):
        return f"map({to_text(t.source)}, {to_text(t.body)})"
    raise TypeError(f"not a term: {t!r}")


def _atom_text(t: Term) -> str:
    return f"({to_text(t)})" if isinstance(t, Join) else to_text(t)


def compose(outer: Term, inner: Term) -> Term:
    """Substitute ``inner`` for ``v`` in ``outer`` (``outer`` after ``inner``)."""
    if isinstance(outer, V):
        return inner
    if isinstance(outer, Brace):
        return Brace(tuple(compose(i, inner) for i in outer.items))
    if isinstance(outer, Join):
        return Join(tuple(compose(p, inner) for p in outer.parts))
    if isinstance(outer, BigUnion):
        return BigUnion(compose(outer.arg, inner))
    if isinstance(outer, Power):
        return Power(compose(outer.arg, inner))
    if isinstance(outer, Sep):
        return Sep(compose(outer.arg, inner), outer.formula)
    if isinstance(outer, Map):
        # the body binds its own v
        return Map(compose(outer.source, inner), outer.body)
    raise TypeError(f"not a term: {outer!r}")
