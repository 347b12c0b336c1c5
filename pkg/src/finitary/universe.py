"""Positive set-theory axioms over rational sets.

Predicates for separation are closed modal formulas, which denote clopen
classes, and the functions for replacement and choice are unary terms
(:mod:`finitary.terms`).  Every result is again a finite graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import completion, hfcore, modal, rational, sampling, terms
from .errors import PreconditionError
from .rational import RationalSet


def separation(x: RationalSet, phi: modal.Formula) -> RationalSet:
    """``{y in x | y |= phi}``."""
    return rational.fold([y for y in rational.unfold(x) if modal.sat(y, phi)])


def replacement(x: RationalSet, f: terms.Term) -> RationalSet:
    """``{f(y) | y in x}``."""
    return rational.fold([terms.evaluate(f, y) for y in rational.unfold(x)])


def choice(x: RationalSet, f: terms.Term) -> RationalSet:
    """Pick the canonically least member of ``f(z)`` for every member ``z`` of ``x``.

    Raises :class:`PreconditionError` naming ``z`` when ``f(z)`` is empty.
    """
    picks = []
    for z in rational.unfold(x):
        options = rational.unfold(terms.evaluate(f, z))
        if not options:
            raise PreconditionError(f"f({rational.canonical_text(z)}) is empty, nothing to choose")
        picks.append(min(options, key=rational.order_key))
    y = rational.fold(picks)
    if not choice_postcondition(x, f, y):
        raise AssertionError("choice postcondition failed")  # pragma: no cover
    return y


def choice_postcondition(x: RationalSet, f: terms.Term, y: RationalSet) -> bool:
    """Every ``f(z)`` meets ``y``, and every member of ``y`` lies in some ``f(z)``."""
    images = [terms.evaluate(f, z) for z in rational.unfold(x)]
    ys = rational.unfold(y)
    meets = all(any(rational.member(w, y) for w in rational.unfold(img)) for img in images)
    covered = all(any(rational.member(w, img) for img in images) for w in ys)
    return meets and covered


# -- the axiom suite ---------------------------------------------------------------


@dataclass
class AxiomResult:
    name: str
    passed: bool
    checked: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" {self.detail}" if self.detail else ""
        return f"{status} {self.name} checked={self.checked}{extra}"


@dataclass
class SuiteReport:
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def text(self) -> str:
        return "\n".join(r.line() for r in self.results) + "\n"


SAMPLE_TERMS = ["v", "{v}", "U v", "P v", "{v,{}}", "sep(v, <>true)", "map(v, {v})", "U v | {v}"]


def _members(x):
    return set(rational.unfold(x))


def _check(name, items, pred) -> AxiomResult:
    bad = None
    count = 0
    for item in items:
        count += 1
        if not pred(item):
            bad = item
            break
    detail = "" if bad is None else f"counterexample={bad!r}"
    return AxiomResult(name, bad is None, count, detail)


def axiom_suite(seed: int = 0, pairs: int = 200, samples: int = 100, resolution: int = 6) -> SuiteReport:
    """Run the closure, extensionality, powerset, separation, replacement,
    choice, infinity and universal-set checks on seeded random inputs."""
    from .dsl import parse_term  # parsing lives in the dsl layer

    rng = random.Random(seed)
    pool = [sampling.random_rational(rng, max_nodes=4, width=3) for _ in range(samples)]
    report = SuiteReport()
    add = report.results.append

    e = rational.empty()
    add(_check("empty", [e], lambda x: rational.unfold(x) == [] and rational.is_well_founded(x)))
    add(_check("singleton", pool, lambda x: rational.unfold(rational.singleton(x)) == [x]))
    add(
        _check(
            "union",
            zip(pool, pool[1:]),
            lambda p: _members(rational.union(*p)) == _members(p[0]) | _members(p[1]),
        )
    )
    add(
        _check(
            "bigunion",
            pool,
            lambda x: _members(rational.bigunion(x)) == set().union(*(_members(m) for m in rational.unfold(x))),
        )
    )
    small = [x for x in pool if len(rational.unfold(x)) <= 6]
    add(
        _check(
            "powerset",
            small,
            lambda x: len(rational.unfold(rational.powerset(x))) == 2 ** len(rational.unfold(x))
            and all(_members(s) <= _members(x) for s in rational.unfold(rational.powerset(x))),
        )
    )

    def extensional(p):
        x, y = p
        return (_members(x) == _members(y)) == rational.bisim(x, y)

    ext_pairs = []
    for _ in range(pairs):
        x = rng.choice(pool)
        if rng.random() < 0.3:
            # a second presentation of the same members
            y = rational.fold(list(reversed(rational.unfold(x))) + rational.unfold(x)[:1])
        else:
            y = rng.choice(pool)
        ext_pairs.append((x, y))
    add(_check("extensionality", ext_pairs, extensional))

    formulas = [sampling.random_formula(rng, 2, 4) for _ in range(samples)]
    add(
        _check(
            "separation",
            zip(pool, formulas),
            lambda p: _members(separation(*p)) == {y for y in _members(p[0]) if modal.sat(y, p[1])},
        )
    )
    fns = [parse_term(t) for t in SAMPLE_TERMS]
    cases = [(x, rng.choice(fns)) for x in small]
    add(
        _check(
            "replacement",
            cases,
            lambda p: _members(replacement(*p)) == {terms.evaluate(p[1], y) for y in _members(p[0])}
            and len(rational.unfold(replacement(*p))) <= len(rational.unfold(p[0])),
        )
    )

    def choice_ok(p):
        x, f = p
        if any(not rational.unfold(terms.evaluate(f, z)) for z in rational.unfold(x)):
            try:
                choice(x, f)
            except PreconditionError:
                return True
            return False
        y = choice(x, f)
        return choice_postcondition(x, f, y) and choice(x, f) == y

    add(_check("choice", cases, choice_ok))

    inf = completion.infinity_point()
    zero = completion.from_hf(hfcore.empty())
    one = completion.from_hf(hfcore.singleton(hfcore.empty()))
    ks = range(1, resolution + 1)
    add(
        _check(
            "infinity",
            [(p, k) for p in (zero, one) for k in ks],
            lambda pk: completion.approx_member(pk[0], inf, pk[1]),
        )
    )
    uni = completion.universe_point()
    add(_check("universe-self-membership", ks, lambda k: completion.approx_member(uni, uni, k)))
    omega = rational.omega()
    add(_check("anti-foundation", [omega], lambda x: rational.member(x, x)))
    return report
