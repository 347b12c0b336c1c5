"""Recursive-descent parsers for the text grammars, plus one-action process terms.

    set      := '{' [set (',' set)*] '}'            partial sets add '_|_'
    system   := (ident '=' setexpr ';')+            the last ';' may be omitted
    setexpr  := brace-term-with-idents | setexpr '|' setexpr
    formula  := 'true' | 'false' | '~'f | f'&'f | f'|'f | f'->'f | '[]'f | '<>'f | '('f')'
    term     := atom ('|' atom)*
    atom     := '{' [term (',' term)*] '}' | 'v' | 'U' atom | 'P' atom
              | 'sep(' term ',' formula ')' | 'map(' term ',' term ')' | '(' term ')'
    process  := '0' | p '+' p | 'e.' p | '(' p ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import hfcore, modal, partial, rational, terms
from .errors import ParseError
from .hfcore import HfSet
from .rational import Braces, EqSystem, RationalSet, UnionExpr, Var

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_KEYWORDS = {"true", "false"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise ParseError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        n = len(self.text)
        while self.pos < n and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token: str) -> bool:
        self.skip()
        return self.text.startswith(token, self.pos)

    def accept(self, token: str) -> bool:
        if self.peek(token):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.accept(token):
            found = self.text[self.pos : self.pos + 8] or "end of input"
            self.error(f"expected {token!r}, found {found!r}")

    def ident(self) -> str | None:
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        if m is None:
            return None
        self.pos = m.end()
        return m.group()

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def finish(self):
        if not self.at_end():
            self.error(f"unexpected trailing input {self.text[self.pos:self.pos + 8]!r}")

    # -- sets ---------------------------------------------------------------

    def hf(self) -> HfSet:
        self.expect("{")
        items = []
        if not self.accept("}"):
            items.append(self.hf())
            while self.accept(","):
                items.append(self.hf())
            self.expect("}")
        return hfcore.make(items)

    # -- equation systems -----------------------------------------------------

    def setexpr(self, bottom: bool):
        parts = [self.setatom(bottom)]
        while self.accept("|"):
            parts.append(self.setatom(bottom))
        return parts[0] if len(parts) == 1 else UnionExpr(tuple(parts))

    def setatom(self, bottom: bool):
        if bottom and self.accept(partial.BOTTOM_TEXT):
            return _Bottom
        if self.accept("{"):
            items = []
            if not self.accept("}"):
                items.append(self.setexpr(bottom))
                while self.accept(","):
                    items.append(self.setexpr(bottom))
                self.expect("}")
            return Braces(tuple(items))
        if self.accept("("):
            inner = self.setexpr(bottom)
            self.expect(")")
            return inner
        start = self.pos
        name = self.ident()
        if name is None:
            self.error("expected a set, a name or '{'")
        if name in _KEYWORDS:
            self.error(f"{name!r} is reserved", start)
        return Var(name)

    def system(self, bottom: bool = False) -> EqSystem:
        eqs = []
        while not self.at_end():
            start = self.pos
            name = self.ident()
            if name is None:
                self.error("expected a variable name")
            if name in _KEYWORDS:
                self.error(f"{name!r} is reserved", start)
            self.expect("=")
            eqs.append((name, self.setexpr(bottom)))
            if not self.accept(";"):
                if not self.at_end():
                    self.error("expected ';'")
        if not eqs:
            self.error("empty equation system")
        return EqSystem(tuple(eqs))

    # -- formulas --------------------------------------------------------------

    def formula(self) -> modal.Formula:
        left = self.disj()
        if self.accept("->"):
            return modal.Implies(left, self.formula())
        return left

    def disj(self):
        out = self.conj()
        while self.accept("|"):
            out = modal.Or(out, self.conj())
        return out

    def conj(self):
        out = self.unary()
        while self.accept("&"):
            out = modal.And(out, self.unary())
        return out

    def unary(self):
        if self.accept("~"):
            return modal.Not(self.unary())
        if self.accept("[]"):
            return modal.Box(self.unary())
        if self.accept("<>"):
            return modal.Dia(self.unary())
        if self.accept("("):
            inner = self.formula()
            self.expect(")")
            return inner
        start = self.pos
        word = self.ident()
        if word == "true":
            return modal.TOP
        if word == "false":
            return modal.BOT
        self.error("expected a formula", start)

    # -- unary terms ---------------------------------------------------------------

    def term(self) -> terms.Term:
        parts = [self.term_atom()]
        while self.accept("|"):
            parts.append(self.term_atom())
        return parts[0] if len(parts) == 1 else terms.Join(tuple(parts))

    def term_atom(self) -> terms.Term:
        if self.accept("{"):
            items = []
            if not self.accept("}"):
                items.append(self.term())
                while self.accept(","):
                    items.append(self.term())
                self.expect("}")
            return terms.Brace(tuple(items))
        if self.accept("("):
            inner = self.term()
            self.expect(")")
            return inner
        start = self.pos
        word = self.ident()
        if word == "v":
            return terms.VAR
        if word == "U":
            return terms.BigUnion(self.term_atom())
        if word == "P":
            return terms.Power(self.term_atom())
        if word == "sep":
            self.expect("(")
            arg = self.term()
            self.expect(",")
            phi = self.formula()
            self.expect(")")
            return terms.Sep(arg, phi)
        if word == "map":
            self.expect("(")
            src = self.term()
            self.expect(",")
            body = self.term()
            self.expect(")")
            return terms.Map(src, body)
        self.error("expected a term", start)

    # -- processes ---------------------------------------------------------------------

    def process(self):
        out = self.prefix()
        while self.accept("+"):
            out = Plus(out, self.prefix())
        return out

    def prefix(self):
        if self.accept("0"):
            return NIL
        if self.accept("e."):
            return Prefix(self.prefix())
        if self.accept("e·"):
            return Prefix(self.prefix())
        if self.accept("("):
            inner = self.process()
            self.expect(")")
            return inner
        self.error("expected '0', 'e.' or '('")


class _BottomMarker:
    pass


_Bottom = _BottomMarker()


def _run(text: str, method: str, *args):
    p = _Parser(text)
    out = getattr(p, method)(*args)
    p.finish()
    return out


def parse_set(text: str) -> HfSet:
    return _run(text, "hf")


def parse_system(text: str) -> EqSystem:
    return _run(text, "system")


def parse_formula(text: str) -> modal.Formula:
    return _run(text, "formula")


def parse_term(text: str) -> terms.Term:
    return _run(text, "term")


def parse_rational(text: str, env=None) -> RationalSet:
    """Brace text for an HF set, or an equation system (the first variable is the result)."""
    if "=" in text:
        return rational.solve_root(parse_system(text), env)
    return rational.embed(parse_set(text))


def parse_partial(text: str) -> partial.PartialSet:
    """Brace text with ``_|_``, or a system of ``name = {...}`` equations with ``_|_``."""
    if "=" not in text:
        return _partial_from_expr(_run(text, "setatom", True), {}, text)
    system = _run(text, "system", True)
    rational.check_guarded(EqSystem(tuple((n, _strip_bottom(e)) for n, e in system.equations)))
    nodes: list = []
    index = {}
    for name, _ in system.equations:
        index[name] = len(nodes)
        nodes.append(())
    for name, rhs in system.equations:
        if not isinstance(rhs, Braces):
            raise ParseError("partial-set equations must have a single brace term on the right", text, 0)
        nodes[index[name]] = tuple(_partial_node(item, nodes, index, text) for item in rhs.items)
    return partial.canonical(nodes, 0)


def _strip_bottom(expr):
    if expr is _Bottom:
        return Braces(())
    if isinstance(expr, Braces):
        return Braces(tuple(_strip_bottom(i) for i in expr.items))
    if isinstance(expr, UnionExpr):
        return UnionExpr(tuple(_strip_bottom(p) for p in expr.parts))
    return expr


def _partial_node(expr, nodes: list, index: dict, text: str) -> int:
    if expr is _Bottom:
        nodes.append(partial.BOTTOM)
        return len(nodes) - 1
    if isinstance(expr, Var):
        return index[expr.name]
    if isinstance(expr, Braces):
        i = len(nodes)
        nodes.append(())
        nodes[i] = tuple(_partial_node(item, nodes, index, text) for item in expr.items)
        return i
    raise ParseError("unions are not supported in partial sets", text, 0)


def _partial_from_expr(expr, index, text) -> partial.PartialSet:
    if isinstance(expr, Var):
        raise ParseError(f"unbound name {expr.name!r}", text, 0)
    nodes: list = []
    root = _partial_node(expr, nodes, index, text)
    return partial.canonical(nodes, root)


# -- one-action processes ------------------------------------------------------------


class Process:
    pass


@dataclass(frozen=True)
class Nil(Process):
    pass


@dataclass(frozen=True)
class Plus(Process):
    left: Process
    right: Process


@dataclass(frozen=True)
class Prefix(Process):
    body: Process


NIL = Nil()


def parse_process(text: str) -> Process:
    return _run(text, "process")


def process_to_set(p: Process) -> HfSet:
    """``0`` is the empty set, ``+`` is union and ``e.P`` is ``{P}``."""
    if isinstance(p, Nil):
        return hfcore.empty()
    if isinstance(p, Plus):
        return hfcore.union(process_to_set(p.left), process_to_set(p.right))
    if isinstance(p, Prefix):
        return hfcore.singleton(process_to_set(p.body))
    raise TypeError(f"not a process: {p!r}")


def process_text(p: Process) -> str:
    if isinstance(p, Nil):
        return "0"
    if isinstance(p, Plus):
        right = process_text(p.right)
        if isinstance(p.right, Plus):
            right = f"({right})"
        return f"{process_text(p.left)} + {right}"
    body = process_text(p.body)
    if isinstance(p.body, Plus):
        body = f"({body})"
    return f"e.{body}"


def set_to_process(s: HfSet) -> Process:
    """A process whose denotation is ``s``."""
    out = None
    for m in s.members:
        term = Prefix(set_to_process(m))
        out = term if out is None else Plus(out, term)
    return NIL if out is None else out
