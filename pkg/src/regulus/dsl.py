"""Recursive descent parser for the construction language.

    expr  := IDENT [ "(" [ arg { ("," | "over") arg } ] ")" ] | INT | STRING
    arg   := expr

``Free(2 over Zn(4))`` and ``Free(2, Zn(4))`` parse to the same tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .config import RegulusError

ARITY = {
    # rings
    "Zn": 1, "Prod": 2, "Mat": 2, "GroupRing": 2, "Op": 1, "Corner": 2,
    "TableRing": 1, "End": 1, "CtxRing": 1,
    # groups
    "Cyclic": 1, "Sym": 1, "Klein4": 0,
    # modules
    "Free": 2, "Zero": 1, "Sum": 2, "Ideal": 2, "TableModule": 2,
    # extensions
    "MatExt": 2, "GroupRingExt": 2,
    # Morita contexts
    "StdCtx": 1, "ZeroCtx": 2, "TableCtx": 1,
}


class ParseError(RegulusError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


Arg = Union["Node", int, str]


@dataclass(frozen=True)
class Node:
    ctor: str
    args: tuple[Arg, ...] = ()

    def __str__(self):
        return to_text(self)


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"(?:[^"\\]|\\.)*")
  | (?P<punct>[(),])
""", re.VERBOSE)


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expr(self) -> Arg:
        kind, value, pos = self.take()
        if kind == "int":
            return int(value)
        if kind == "str":
            return re.sub(r"\\(.)", r"\1", value[1:-1])
        if kind != "ident" or value == "over":
            what = "end of input" if kind == "end" else repr(value)
            raise ParseError(f"expected an expression, found {what}", pos)
        if value not in ARITY:
            raise ParseError(f"unknown constructor {value!r}", pos)
        args: list[Arg] = []
        if self.peek()[1] == "(":
            self.take()
            if self.peek()[1] != ")":
                args.append(self.expr())
                while self.peek()[1] in (",", "over"):
                    self.take()
                    args.append(self.expr())
            kind2, value2, pos2 = self.take()
            if value2 != ")":
                what = "end of input" if kind2 == "end" else repr(value2)
                raise ParseError(f"expected ',' or ')', found {what}", pos2)
        if len(args) != ARITY[value]:
            raise ParseError(f"{value} takes {ARITY[value]} argument(s), got {len(args)}", pos)
        return Node(value, tuple(args))


def parse(text: str) -> Arg:
    """Parse one construction expression; raises :class:`ParseError` with an offset."""
    p = _Parser(text)
    node = p.expr()
    kind, value, pos = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input {value!r}", pos)
    return node


def to_text(node: Arg) -> str:
    if isinstance(node, bool):
        raise TypeError("booleans are not expressions")
    if isinstance(node, int):
        return str(node)
    if isinstance(node, str):
        return '"' + node.replace("\\", "\\\\").replace('"', '\\"') + '"'
    parts = [to_text(a) for a in node.args]
    if node.ctor == "Free" and len(parts) == 2:
        return f"Free({parts[0]} over {parts[1]})"
    return f"{node.ctor}({', '.join(parts)})"
