"""Line-oriented text formats for hand-written rings, modules and contexts.

Ring::

    ring 4
    one 1              # optional, found from the tables when absent
    labels 0 1 a b     # optional
    add
    0 1 2 3
    ...
    mul
    ...

Module (over a ring supplied separately; ``action`` has one row per ring element)::

    module 2
    add
    ...
    action
    ...

Context: ``context`` followed by six sections ``R``, ``S``, ``M``, ``N``, ``phi``,
``psi``. ``R`` and ``S`` hold ring blocks, ``M`` and ``N`` hold module blocks
extended by a ``right`` section (|carrier| rows, one column per element of the
right ring). ``phi`` is |M| x |N| into R and ``psi`` is |N| x |M| into S.
``#`` starts a comment.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

import numpy as np

from .config import StructureError
from .finmod import FiniteModule, check_module_axioms
from .finring import FiniteRing, check_ring_axioms, ring_from_tables

FIXTURE_DIR = Path(__file__).parent / "fixtures"


class TableFormatError(StructureError):
    pass


def resolve(path: Union[str, Path]) -> Path:
    """A readable path: as given, else relative to the bundled fixture directory."""
    p = Path(path)
    if p.is_file():
        return p
    q = FIXTURE_DIR / p
    if q.is_file():
        return q
    raise FileNotFoundError(f"no table file {str(path)!r} (also looked in {FIXTURE_DIR})")


class _Lines:
    def __init__(self, text: str):
        self.lines = []
        for no, raw in enumerate(text.splitlines(), 1):
            body = raw.split("#", 1)[0].split()
            if body:
                self.lines.append((no, body))
        self.i = 0

    def done(self) -> bool:
        return self.i >= len(self.lines)

    def peek(self) -> list[str]:
        return self.lines[self.i][1] if not self.done() else []

    def next(self) -> tuple[int, list[str]]:
        if self.done():
            raise TableFormatError("unexpected end of table file")
        self.i += 1
        return self.lines[self.i - 1]

    def keyword(self, word: str, nargs: int = 0) -> list[str]:
        no, toks = self.next()
        if toks[0] != word or len(toks) != nargs + 1:
            raise TableFormatError(f"line {no}: expected '{word}'" + (f" with {nargs} value(s)" if nargs else ""))
        return toks[1:]

    def rows(self, nrows: int, ncols: int, bound: int) -> np.ndarray:
        out = np.empty((nrows, ncols), dtype=np.int64)
        for i in range(nrows):
            no, toks = self.next()
            try:
                vals = [int(t) for t in toks]
            except ValueError:
                raise TableFormatError(f"line {no}: non-integer entry") from None
            if len(vals) != ncols:
                raise TableFormatError(f"line {no}: expected {ncols} entries, got {len(vals)}")
            if min(vals) < 0 or max(vals) >= bound:
                raise TableFormatError(f"line {no}: entry out of range [0, {bound})")
            out[i] = vals
        return out


def _int(tok: str, no: int = 0) -> int:
    try:
        return int(tok)
    except ValueError:
        raise TableFormatError(f"expected an integer, got {tok!r}") from None


def _read_ring(lines: _Lines, name: str) -> FiniteRing:
    (n,) = lines.keyword("ring", 1)
    n = _int(n)
    one: Optional[int] = None
    labels = None
    while lines.peek() and lines.peek()[0] in ("one", "labels"):
        no, toks = lines.next()
        if toks[0] == "one":
            one = _int(toks[1])
        else:
            labels = toks[1:]
            if len(labels) != n:
                raise TableFormatError(f"line {no}: {len(labels)} labels for {n} elements")
    lines.keyword("add")
    add = lines.rows(n, n, n)
    lines.keyword("mul")
    mul = lines.rows(n, n, n)
    try:
        ring = ring_from_tables(add, mul, one, labels, name)
    except StructureError as exc:
        raise TableFormatError(str(exc)) from None
    report = check_ring_axioms(ring.add, ring.mul, ring.one)
    if not report:
        raise TableFormatError(f"ring axiom {report.axiom!r} fails at {report.witness}")
    return ring


def _read_module(lines: _Lines, ring: FiniteRing, name: str) -> FiniteModule:
    (n,) = lines.keyword("module", 1)
    n = _int(n)
    labels = None
    if lines.peek()[:1] == ["labels"]:
        labels = tuple(lines.next()[1][1:])
    lines.keyword("add")
    add = lines.rows(n, n, n)
    lines.keyword("action")
    action = lines.rows(ring.order, n, n)
    if add[0].tolist() != list(range(n)):
        raise TableFormatError("element 0 must be the zero of the module")
    report = check_module_axioms(ring, add, action)
    if not report:
        raise TableFormatError(f"module axiom {report.axiom!r} fails at {report.witness}")
    return FiniteModule(ring, add, action, labels or tuple(str(i) for i in range(n)), name)


def read_ring(path: Union[str, Path]) -> FiniteRing:
    p = resolve(path)
    lines = _Lines(p.read_text())
    ring = _read_ring(lines, p.stem)
    if not lines.done():
        raise TableFormatError(f"trailing content after ring tables in {p}")
    return ring


def read_module(path: Union[str, Path], ring: FiniteRing) -> FiniteModule:
    p = resolve(path)
    lines = _Lines(p.read_text())
    m = _read_module(lines, ring, p.stem)
    if not lines.done():
        raise TableFormatError(f"trailing content after module tables in {p}")
    return m


def read_context(path: Union[str, Path]):
    from .morita import Bimodule, MoritaContext

    p = resolve(path)
    lines = _Lines(p.read_text())
    lines.keyword("context")
    lines.keyword("R")
    R = _read_ring(lines, f"{p.stem}.R")
    lines.keyword("S")
    S = _read_ring(lines, f"{p.stem}.S")
    lines.keyword("M")
    Mc = _read_module(lines, R, f"{p.stem}.M")
    lines.keyword("right")
    M = Bimodule(Mc, S, lines.rows(Mc.order, S.order, Mc.order))
    lines.keyword("N")
    Nc = _read_module(lines, S, f"{p.stem}.N")
    lines.keyword("right")
    N = Bimodule(Nc, R, lines.rows(Nc.order, R.order, Nc.order))
    lines.keyword("phi")
    phi = lines.rows(M.order, N.order, R.order)
    lines.keyword("psi")
    psi = lines.rows(N.order, M.order, S.order)
    if not lines.done():
        raise TableFormatError(f"trailing content after context tables in {p}")
    return MoritaContext(R, S, M, N, phi, psi, p.stem)


def _rows(table: np.ndarray) -> list[str]:
    return [" ".join(str(int(v)) for v in row) for row in np.asarray(table)]


def dump_ring(ring: FiniteRing) -> str:
    out = [f"ring {ring.order}", f"one {ring.one}", "labels " + " ".join(l.replace(" ", "") for l in ring.labels)]
    out += ["add", *_rows(ring.add), "mul", *_rows(ring.mul)]
    return "\n".join(out) + "\n"


def dump_module(m: FiniteModule) -> str:
    out = [f"module {m.order}", "add", *_rows(m.add), "action", *_rows(m.action)]
    return "\n".join(out) + "\n"


def dump_context(ctx) -> str:
    out = ["context", "R", dump_ring(ctx.R).rstrip("\n"), "S", dump_ring(ctx.S).rstrip("\n")]
    out += ["M", dump_module(ctx.M.carrier).rstrip("\n"), "right", *_rows(ctx.M.right)]
    out += ["N", dump_module(ctx.N.carrier).rstrip("\n"), "right", *_rows(ctx.N.right)]
    out += ["phi", *_rows(ctx.phi), "psi", *_rows(ctx.psi)]
    return "\n".join(out) + "\n"
