import random
from itertools import product

import pytest

from finitary import hfcore as h
from finitary import partial as p
from finitary import rational as r
from finitary.dsl import parse_partial
from finitary.errors import NotTotalError, PreconditionError
from finitary.sampling import random_rational

E = h.empty()
ONE = h.singleton(E)
TWO = h.make([E, ONE])
OMEGA = r.omega()
BOT = p.bottom()


def pool(depth=2):
    return p.enum_partial(depth)


def test_bottom_is_least():
    for x in pool():
        assert p.em_leq(BOT, x)
        if x != BOT:
            assert not p.em_leq(x, BOT)


def test_order_examples():
    assert p.em_leq(parse_partial("{_|_,{},{_|_,{}}}"), parse_partial("{{},{{}}}"))
    assert not p.em_leq(parse_partial("{{}}"), parse_partial("{{},_|_}"))
    assert p.em_leq(parse_partial("{_|_}"), parse_partial("{{}}"))
    assert not p.em_leq(parse_partial("{}"), parse_partial("{_|_}"))


def test_totality():
    assert not p.is_total(parse_partial("{_|_,{}}"))
    assert p.is_total(p.embed_partial(OMEGA))
    assert p.to_rational(p.embed_partial(ONE)) == r.embed(ONE)
    with pytest.raises(NotTotalError):
        p.to_rational(parse_partial("{_|_}"))


def test_bot_trunc_examples():
    assert p.bot_trunc(0, TWO) == BOT
    assert p.bot_trunc(1, TWO) == parse_partial("{_|_}")
    assert p.to_text(p.bot_trunc(3, OMEGA)) == "{{{_|_}}}"
    assert p.to_text(p.embed_partial(OMEGA)) == "x0={x0}"


def test_canonical_forms_collapse_equivalents():
    # {_|_} sits between the members _|_ and {{}}, so it is redundant
    a = parse_partial("{_|_,{_|_},{{}}}")
    b = parse_partial("{_|_,{{}}}")
    assert p.em_equiv(a, b)
    assert a == b
    assert not p.em_equiv(parse_partial("{_|_,{},{_|_,{}}}"), parse_partial("{_|_,{}}"))
    assert parse_partial("x = {x, _|_}") == parse_partial("y = {{y, _|_}, _|_}")


def test_enumeration_size():
    assert len(pool(0)) == 1
    assert len(pool(1)) == 3
    assert len(set(pool(2))) == len(pool(2))


def test_preorder_exhaustively():
    items = pool()
    leq = {(a, b): p.em_leq(a, b) for a, b in product(items, items)}
    for a in items:
        assert leq[a, a]
    for a, b, c in product(items, items, items):
        if leq[a, b] and leq[b, c]:
            assert leq[a, c]
    # distinct canonical forms are never equivalent
    for a, b in product(items, items):
        if a != b:
            assert not (leq[a, b] and leq[b, a])


def test_equivalence_of_totals_is_bisimilarity():
    rng = random.Random(3)
    sets = [random_rational(rng, max_nodes=3) for _ in range(30)]
    for g, k in product(sets, sets[:10]):
        assert p.em_equiv(p.embed_partial(g), p.embed_partial(k)) == r.bisim(g, k)


def test_bot_trunc_chains():
    rng = random.Random(9)
    for _ in range(50):
        g = random_rational(rng)
        top = p.embed_partial(g)
        chain = [p.bot_trunc(k, g) for k in range(7)]
        for a, b in zip(chain, chain[1:]):
            assert p.em_leq(a, b)
        assert all(p.em_leq(a, top) for a in chain)


def test_maximality():
    items = pool()
    assert p.maximality_check(p.embed_partial(ONE), items)
    for x in items:
        if p.is_total(x):
            assert p.maximality_check(x, items)
    omega = p.embed_partial(OMEGA)
    approx = [p.bot_trunc(k, OMEGA) for k in range(6)]
    assert p.maximality_check(omega, approx + [omega])
    # {_|_} is not maximal: {{}} lies strictly above it
    assert not p.is_maximal_in(parse_partial("{_|_}"), items)
    with pytest.raises(PreconditionError):
        p.maximality_check(parse_partial("{_|_}"), items)


def test_make_builds_members():
    x = p.make([BOT, p.embed_partial(E)])
    assert p.to_text(x) == "{_|_,{}}"
    assert p.to_text(p.make([])) == "{}"


def test_text_round_trip():
    for x in pool():
        assert parse_partial(p.to_text(x)) == x
    for text in ["x0={_|_,x0}", "x0={{},x1}; x1={x1}"]:
        assert p.to_text(parse_partial(text)) == text


def _random_partial_graph(rng, n):
    nodes = []
    for _ in range(n):
        if rng.random() < 0.25:
            nodes.append(p.BOTTOM)
        else:
            nodes.append(tuple(rng.randrange(n) for _ in range(rng.randint(0, 3))))
    return nodes


def test_canonical_form_is_complete_invariant():
    rng = random.Random(21)
    graphs = [_random_partial_graph(rng, rng.randint(1, 4)) for _ in range(80)]
    canon = [p.canonical(g, 0) for g in graphs]
    for g, cg in zip(graphs, canon):
        # canonicalization stays in the same class
        raw = p._relation(g, cg.nodes)
        back = p._relation(cg.nodes, g)
        assert (0, cg.root) in raw and (cg.root, 0) in back
    for (g, cg), (k, ck) in product(list(zip(graphs, canon))[:40], repeat=2):
        equiv = (0, 0) in p._relation(g, k) and (0, 0) in p._relation(k, g)
        assert equiv == (cg == ck)
