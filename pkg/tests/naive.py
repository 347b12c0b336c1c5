"""Slow reference implementations on plain frozensets, used as test oracles."""

from itertools import combinations

from finitary import hfcore, modal

E = frozenset()


def fs(s):
    """HfSet -> nested frozenset."""
    return frozenset(fs(m) for m in s.members)


def depth(a):
    return 1 + max((depth(m) for m in a), default=-1)


def trunc(k, a):
    if k == 0:
        return E
    return frozenset(trunc(k - 1, m) for m in a)


def level(a, b):
    """Least k with different depth-k truncations, or None when a == b."""
    if a == b:
        return None
    k = 1
    while trunc(k, a) == trunc(k, b):
        k += 1
    return k


def ackermann(a):
    return sum(2 ** ackermann(m) for m in a)


def subsets(items):
    items = list(items)
    return [frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r)]


def level_space(k):
    space = [E]
    for _ in range(k):
        space = subsets(space)
    return space


def sat(a, f):
    """Direct recursive satisfaction on a frozenset."""
    op, args = f.op, f.args
    if op == modal.TRUE:
        return True
    if op == modal.FALSE:
        return False
    if op == modal.NOT:
        return not sat(a, args[0])
    if op == modal.AND:
        return sat(a, args[0]) and sat(a, args[1])
    if op == modal.OR:
        return sat(a, args[0]) or sat(a, args[1])
    if op == modal.IMP:
        return not sat(a, args[0]) or sat(a, args[1])
    if op == modal.BOX:
        return all(sat(m, args[0]) for m in a)
    if op == modal.DIA:
        return any(sat(m, args[0]) for m in a)
    raise ValueError(op)


def to_hf(a):
    return hfcore.from_nested(a)


def unroll(children, v, k):
    """Depth-k truncation of the set presented by node v, as a frozenset."""
    if k == 0:
        return E
    return frozenset(unroll(children, c, k - 1) for c in children[v])


def bisimilar(ga, ra, gb, rb):
    """Greatest bisimulation between two graphs by naive fixpoint iteration."""
    rel = {(i, j) for i in range(len(ga)) for j in range(len(gb))}
    changed = True
    while changed:
        changed = False
        for i, j in list(rel):
            fwd = all(any((c, d) in rel for d in gb[j]) for c in ga[i])
            back = all(any((c, d) in rel for c in ga[i]) for d in gb[j])
            if not (fwd and back):
                rel.discard((i, j))
                changed = True
    return (ra, rb) in rel


def graph_level(ga, ra, gb, rb, bound):
    """Least k <= bound where the unrollings differ, else None."""
    for k in range(1, bound + 1):
        if unroll(ga, ra, k) != unroll(gb, rb, k):
            return k
    return None
