"""Text syntax for trees and linear combinations of trees.

Trees::

    leaf ::= positive integer ['@' color]
    node ::= genname '(' expr (',' expr)* ')'

e.g. ``g(g(1,2),3)``. A well-formed tree of arity n uses each of 1..n once.
Leaf colors are inferred from the parent vertex; the ``@color`` suffix is only
needed for a bare identity tree of a non-default color.

Combinations::

    combo ::= ['+'|'-'] term (('+'|'-') term)*
    term  ::= [coeff ['*']] tree
    coeff ::= integer ['/' integer]

e.g. ``g(g(1,2),3) - g(1,g(2,3))`` or ``1/2 * b(1,2) + 1/2 b(2,1)``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import OperadError, ParseError
from .trees import DEFAULT_COLOR, Leaf, Node, PlanarTree, Signature

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[(),+\-*/@]))")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if m is None:
                rest = text[pos:]
                if rest.strip():
                    off = pos + len(rest) - len(rest.lstrip())
                    raise ParseError(f"unexpected character {text[off]!r}", *self.where(off))
                break
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def where(self, offset: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, col

    def peek(self, ahead: int = 0):
        j = self.i + ahead
        return self.toks[j] if j < len(self.toks) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", *self.where(len(self.text)))
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.next()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", *self.where(tok[2]))
        return tok

    def error(self, message: str, tok=None):
        off = tok[2] if tok is not None else len(self.text)
        return ParseError(message, *self.where(off))


def _node(tk: _Tokens, sig: Signature, expected_color: str | None):
    tok = tk.next()
    kind, value, off = tok
    if kind == "int":
        label = int(value)
        if label < 1:
            raise tk.error("leaf labels start at 1", tok)
        color = expected_color or DEFAULT_COLOR
        nxt = tk.peek()
        if nxt is not None and nxt[1] == "@":
            tk.next()
            ctok = tk.next()
            if ctok[0] not in ("name", "int"):
                raise tk.error("expected a color after '@'", ctok)
            if expected_color is not None and ctok[1] != expected_color:
                raise tk.error(f"leaf {label} colored {ctok[1]!r} where {expected_color!r} is expected", ctok)
            color = ctok[1]
        return Leaf(label, color)
    if kind != "name":
        raise tk.error(f"expected a leaf or generator, found {value!r}", tok)
    try:
        g = sig.generator(value)
    except OperadError:
        raise tk.error(f"unknown generator {value!r}", tok) from None
    if expected_color is not None and g.out_color != expected_color:
        raise tk.error(f"{g.name} outputs {g.out_color!r} where {expected_color!r} is expected", tok)
    tk.expect("(")
    children = [_node(tk, sig, g.in_colors[0])]
    while tk.peek() is not None and tk.peek()[1] == ",":
        tk.next()
        if len(children) >= g.arity:
            raise tk.error(f"{g.name} has arity {g.arity} but got more arguments", tok)
        children.append(_node(tk, sig, g.in_colors[len(children)]))
    tk.expect(")")
    if len(children) != g.arity:
        raise tk.error(f"{g.name} has arity {g.arity} but got {len(children)} arguments", tok)
    return Node(g, tuple(children))


def parse_tree(text: str, sig: Signature) -> PlanarTree:
    tk = _Tokens(text)
    root = _node(tk, sig, None)
    extra = tk.peek()
    if extra is not None:
        raise tk.error(f"trailing input {extra[1]!r}", extra)
    try:
        return PlanarTree(root)
    except OperadError as exc:
        raise ParseError(str(exc), *tk.where(0)) from None


def _is_coefficient(tk: _Tokens) -> bool:
    tok = tk.peek()
    if tok is None or tok[0] != "int":
        return False
    nxt = tk.peek(1)
    return nxt is not None and (nxt[1] in ("/", "*") or nxt[0] in ("int", "name"))


def parse_combination(text: str, sig: Signature) -> list[tuple[Fraction, PlanarTree]]:
    """Parse a signed sum of (optionally scaled) trees into (coefficient, tree) pairs."""
    tk = _Tokens(text)
    terms = []
    if tk.peek() is None:
        return terms
    first = True
    while tk.peek() is not None:
        sign = 1
        tok = tk.peek()
        if tok[1] in ("+", "-"):
            tk.next()
            sign = -1 if tok[1] == "-" else 1
        elif not first:
            raise tk.error(f"expected '+' or '-', found {tok[1]!r}", tok)
        first = False
        coeff = Fraction(1)
        if _is_coefficient(tk):
            num = int(tk.next()[1])
            den = 1
            if tk.peek() is not None and tk.peek()[1] == "/":
                tk.next()
                dtok = tk.next()
                if dtok[0] != "int" or int(dtok[1]) == 0:
                    raise tk.error("expected a nonzero integer denominator", dtok)
                den = int(dtok[1])
            coeff = Fraction(num, den)
            if tk.peek() is not None and tk.peek()[1] == "*":
                tk.next()
        start = tk.peek()
        root = _node(tk, sig, None)
        try:
            tree = PlanarTree(root)
        except OperadError as exc:
            raise ParseError(str(exc), *tk.where(start[2])) from None
        terms.append((sign * coeff, tree))
    return terms
