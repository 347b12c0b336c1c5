"""Seeded random generators for HF sets, rational sets and formulas."""

from __future__ import annotations

import random

from . import hfcore, modal, rational
from .hfcore import HfSet
from .rational import PointedGraph, RationalSet


def random_hf(rng: random.Random, depth: int, width: int = 3) -> HfSet:
    """Random HF set of depth at most ``depth``."""
    if depth == 0 or rng.random() < 0.15:
        return hfcore.empty()
    n = rng.randint(0, width)
    return hfcore.make(random_hf(rng, rng.randint(0, depth - 1), width) for _ in range(n))


def random_graph(rng: random.Random, nodes: int, width: int = 3) -> PointedGraph:
    """Random pointed graph; cycles are likely once ``nodes > 1``."""
    children = [[rng.randrange(nodes) for _ in range(rng.randint(0, width))] for _ in range(nodes)]
    return PointedGraph.of(children, 0)


def random_rational(rng: random.Random, max_nodes: int = 5, width: int = 3) -> RationalSet:
    if rng.random() < 0.4:
        return rational.embed(random_hf(rng, rng.randint(0, 4), width))
    return rational.minimize(random_graph(rng, rng.randint(1, max_nodes), width))


def random_formula(rng: random.Random, depth: int, size: int = 4) -> modal.Formula:
    """Random closed formula of modal depth at most ``depth``."""
    if size <= 0:
        return rng.choice([modal.TOP, modal.BOT])
    r = rng.random()
    if r < 0.15:
        return rng.choice([modal.TOP, modal.BOT])
    if r < 0.45 and depth > 0:
        op = rng.choice([modal.Box, modal.Dia])
        return op(random_formula(rng, depth - 1, size - 1))
    if r < 0.55:
        return modal.Not(random_formula(rng, depth, size - 1))
    op = rng.choice([modal.And, modal.Or, modal.Implies])
    return op(random_formula(rng, depth, size // 2), random_formula(rng, depth, size // 2))
