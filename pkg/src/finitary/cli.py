"""Command-line front end.

Every verb prints canonical text on stdout.  A set, formula or term argument
may be given inline, as ``@path`` to read a file, or as ``-`` to read stdin
(stdin is read once, so ``-`` may appear more than once).

Exit codes: 0 success, 1 domain error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys

from . import completion, dsl, hfcore, modal, partial, rational, terms, universe
from .errors import FinitaryError, ParseError


class _Inputs:
    def __init__(self, stdin):
        self._stdin = stdin
        self._cached = None

    def read(self, arg: str) -> str:
        if arg == "-":
            if self._cached is None:
                self._cached = self._stdin.read()
            return self._cached.strip()
        if arg.startswith("@"):
            with open(arg[1:], encoding="utf-8") as fh:
                return fh.read().strip()
        return arg


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _text(x) -> str:
    return rational.canonical_text(x)


# -- verbs --------------------------------------------------------------------


def cmd_eval(a, io):
    return _text(dsl.parse_rational(io.read(a.set)))


def cmd_bisim(a, io):
    return _bool(rational.bisim(dsl.parse_rational(io.read(a.left)), dsl.parse_rational(io.read(a.right))))


def cmd_dist(a, io):
    lv = rational.strat_level(dsl.parse_rational(io.read(a.left)), dsl.parse_rational(io.read(a.right)))
    return hfcore.distance_text(lv)


def cmd_member(a, io):
    return _bool(rational.member(dsl.parse_rational(io.read(a.elem)), dsl.parse_rational(io.read(a.set))))


def cmd_solve(a, io):
    system = dsl.parse_system(io.read(a.system))
    sol = rational.solve(system)
    if a.all:
        return "\n".join(f"{name}: {_text(sol[name])}" for name in system.names)
    name = a.var or system.names[0]
    if name not in sol:
        raise FinitaryError(f"no equation for {name!r}")
    return _text(sol[name])


def cmd_minimize(a, io):
    text = io.read(a.system)
    if "=" in text:
        g, _ = rational.build_graph(dsl.parse_system(text))
    else:
        g = rational.embed(dsl.parse_set(text))
    m = rational.minimize(g)
    out = _text(m)
    if a.stats:
        out += f"\nnodes: {g.size} -> {m.size}"
    return out


def cmd_trunc(a, io):
    return hfcore.to_text(rational.trunc_hf(a.k, dsl.parse_rational(io.read(a.set))))


def cmd_sat(a, io):
    return _bool(modal.sat(dsl.parse_rational(io.read(a.set)), dsl.parse_formula(io.read(a.formula))))


def cmd_master(a, io):
    return modal.to_text(modal.master(rational.to_hf(dsl.parse_rational(io.read(a.set)))))


def cmd_nf(a, io):
    nf = modal.normal_form(dsl.parse_formula(io.read(a.formula)), depth=a.depth)
    lines = [f"depth {nf.depth}: {len(nf.indices)} of {nf.size}"]
    lines.extend(hfcore.to_text(e) for e in nf.elements())
    return "\n".join(lines)


def cmd_valid(a, io):
    return _bool(modal.valid(dsl.parse_formula(io.read(a.formula))))


def cmd_satisfiable(a, io):
    return _bool(modal.satisfiable(dsl.parse_formula(io.read(a.formula))))


def cmd_levels(a, io):
    if not a.list:
        return str(modal.level_size(a.k))
    return "\n".join(hfcore.to_text(e) for e in modal.enum_level(a.k))


def cmd_algebra_size(a, io):
    return modal.algebra_size_text(a.k)


def cmd_atoms(a, io):
    return "\n".join(modal.to_text(f) for f in modal.atoms(a.k, cap=min(a.k, 3)))


def cmd_sep(a, io):
    return _text(universe.separation(dsl.parse_rational(io.read(a.set)), dsl.parse_formula(io.read(a.formula))))


def cmd_replace(a, io):
    return _text(universe.replacement(dsl.parse_rational(io.read(a.set)), dsl.parse_term(io.read(a.term))))


def cmd_choice(a, io):
    return _text(universe.choice(dsl.parse_rational(io.read(a.set)), dsl.parse_term(io.read(a.term))))


def cmd_em_leq(a, io):
    return _bool(partial.em_leq(dsl.parse_partial(io.read(a.left)), dsl.parse_partial(io.read(a.right))))


def cmd_bot_trunc(a, io):
    return partial.to_text(partial.bot_trunc(a.k, dsl.parse_rational(io.read(a.set))))


def _point(text: str) -> completion.CauchyPoint:
    if text in completion.BUILTIN_POINTS:
        return completion.builtin(text)
    return completion.from_rational(dsl.parse_rational(text))


def cmd_point(a, io):
    if a.name not in completion.BUILTIN_POINTS:
        raise _Usage(f"unknown point {a.name!r}; choose from {', '.join(completion.BUILTIN_POINTS)}")
    p = completion.builtin(a.name)
    if a.member is not None:
        x = _point(io.read(a.member))
        return completion.member_text(completion.approx_member(x, p, a.k), a.k)
    if a.dist is not None:
        return str(completion.approx_dist(p, _point(io.read(a.dist)), a.k))
    return hfcore.to_text(p.approx(a.k))


def cmd_iterate(a, io):
    step = dsl.parse_term(io.read(a.term))
    start = dsl.parse_set(io.read(a.start))
    lines = []
    for i, s in enumerate(completion.iterate_guarded(step, start, a.n)):
        d = "" if s.level is None else f"  d={hfcore.distance_text(s.level)}"
        lines.append(f"S{i} = {hfcore.to_text(s.value)}{d}")
    return "\n".join(lines)


def cmd_process(a, io):
    return hfcore.to_text(dsl.process_to_set(dsl.parse_process(io.read(a.term))))


def cmd_dot(a, io):
    return rational.to_dot(dsl.parse_rational(io.read(a.set)), a.name).rstrip("\n")


def cmd_suite(a, io):
    report = universe.axiom_suite(seed=a.seed, pairs=a.pairs, samples=a.samples)
    if not report.passed:
        raise _SuiteFailed(report.text().rstrip("\n"))
    return report.text().rstrip("\n")


class _Usage(Exception):
    pass


class _SuiteFailed(FinitaryError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finitary", description="Finitary sets, rational sets and modal K.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, func, help, *args):
        p = sub.add_parser(name, help=help)
        for arg in args:
            p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    verb("eval", cmd_eval, "canonical text of a set", "set")
    verb("bisim", cmd_bisim, "are two sets bisimilar", "left", "right")
    verb("dist", cmd_dist, "ultrametric distance", "left", "right")
    verb("member", cmd_member, "is ELEM a member of SET", "elem", "set")
    p = verb("solve", cmd_solve, "solve a guarded equation system", "system")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--var", help="variable to report (default: the first)")
    group.add_argument("--all", action="store_true", help="report every variable")
    p = verb("minimize", cmd_minimize, "bisimulation-minimal graph", "system")
    p.add_argument("--stats", action="store_true", help="also print node counts")

    p = sub.add_parser("trunc", help="depth-K truncation")
    p.add_argument("k", type=int)
    p.add_argument("set")
    p.set_defaults(func=cmd_trunc)

    verb("sat", cmd_sat, "does SET satisfy FORMULA", "set", "formula")
    verb("master", cmd_master, "master formula of an HF set", "set")
    p = verb("nf", cmd_nf, "normal form of a formula over a level space", "formula")
    p.add_argument("--depth", type=int, default=None)
    verb("valid", cmd_valid, "is FORMULA valid", "formula")
    verb("satisfiable", cmd_satisfiable, "is FORMULA satisfiable", "formula")

    p = sub.add_parser("levels", help="size of the level space D_K")
    p.add_argument("k", type=int)
    p.add_argument("--list", action="store_true", help="list the elements instead")
    p.set_defaults(func=cmd_levels)
    for name, func, helptext in (
        ("algebra-size", cmd_algebra_size, "size of the depth-K free modal algebra"),
        ("atoms", cmd_atoms, "atoms of the depth-K free modal algebra"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("k", type=int)
        p.set_defaults(func=func)

    verb("sep", cmd_sep, "separation by a formula", "set", "formula")
    verb("replace", cmd_replace, "image of a set under a term", "set", "term")
    verb("choice", cmd_choice, "choice set for a term", "set", "term")
    verb("em-leq", cmd_em_leq, "Egli-Milner order on partial sets", "left", "right")

    p = sub.add_parser("bot-trunc", help="depth-K partial approximation")
    p.add_argument("k", type=int)
    p.add_argument("set")
    p.set_defaults(func=cmd_bot_trunc)

    p = sub.add_parser("point", help="approximants and queries on built-in limit points")
    p.add_argument("name", help=", ".join(completion.BUILTIN_POINTS))
    p.add_argument("--k", type=int, required=True, help="resolution")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--member", metavar="X", help="is X (a point name or set) a member, at resolution k")
    group.add_argument("--dist", metavar="X", help="distance to X (a point name or set), up to resolution k")
    p.set_defaults(func=cmd_point)

    p = verb("iterate", cmd_iterate, "iterate a guarded term", "term")
    p.add_argument("--start", default="{}")
    p.add_argument("-n", type=int, default=3)

    verb("process", cmd_process, "set denotation of a process term", "term")
    p = verb("dot", cmd_dot, "Graphviz rendering", "set")
    p.add_argument("--name", default="set")

    p = sub.add_parser("suite", help="run the axiom suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args, _Inputs(stdin))
    except (ParseError, _Usage) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except _SuiteFailed as exc:
        print(exc, file=stdout)
        return 1
    except (FinitaryError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    print(out, file=stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
