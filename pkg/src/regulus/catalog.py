"""Evaluation of construction expressions and the named instance corpora."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .config import Limits, RegulusError, limits
from .dsl import Arg, Node, parse, to_text
from .extensions import ExtensionDescriptor, group_ring_extension, matrix_extension
from .finmod import FiniteModule, Submodule, direct_sum, free_module, regular_left_module, zero_module
from .finring import (
    FiniteGroup,
    FiniteRing,
    corner_ring,
    cyclic_group,
    cyclic_ring,
    group_ring,
    klein_four,
    matrix_ring,
    opposite_ring,
    product_ring,
    symmetric_group,
)
from .morita import MoritaContext, context_ring, endo_ring, standard_context, zero_context
from . import tables


class EvaluationError(RegulusError):
    """An expression is well formed but names the wrong kind of object or an invalid one."""


Instance = Union[FiniteRing, FiniteGroup, FiniteModule, ExtensionDescriptor, MoritaContext]

KIND = {
    FiniteRing: "ring", FiniteGroup: "group", FiniteModule: "module",
    ExtensionDescriptor: "extension", MoritaContext: "context",
}


def kind_of(obj) -> str:
    for cls, name in KIND.items():
        if isinstance(obj, cls):
            return name
    return "integer" if isinstance(obj, int) else "string"


def _as_node(expr: Union[str, Arg]) -> Arg:
    return parse(expr) if isinstance(expr, str) else expr


def evaluate(expr: Union[str, Arg]) -> Instance:
    """Build the instance named by an expression (text or parsed tree)."""
    return _evaluate(_as_node(expr))


def _evaluate(node: Arg):
    # caps are part of the cache key, so lowering one cannot be bypassed by a cached build
    return _evaluate_under(node, limits())


@lru_cache(maxsize=512)
def _evaluate_under(node: Arg, _limits: Limits):
    if isinstance(node, int):
        return node
    if isinstance(node, str):
        raise EvaluationError(f"a string literal is only allowed as a file argument: {node!r}")
    text = to_text(node)
    a = node.args
    c = node.ctor
    if c == "Zn":
        return _named(cyclic_ring(_int(a[0], c, 1)), text)
    if c == "Prod":
        return _named(product_ring(_ring(a[0]), _ring(a[1])), text)
    if c == "Mat":
        return _named(matrix_ring(_ring(a[1]), _int(a[0], c, 1)), text)
    if c == "GroupRing":
        return _named(group_ring(_ring(a[0]), _group(a[1])), text)
    if c == "Op":
        return _named(opposite_ring(_ring(a[0])), text)
    if c == "Corner":
        R = _ring(a[0])
        e = _element(R, a[1], c)
        if R.times(e, e) != e:
            raise EvaluationError(f"Corner: element {e} is not idempotent")
        return _named(corner_ring(R, e), text)
    if c == "TableRing":
        return _named(tables.read_ring(_str(a[0], c)), text)
    if c == "End":
        return _named(endo_ring(_module(a[0])).ring, text)
    if c == "CtxRing":
        return _named(context_ring(_context(a[0])).ring, text)
    if c == "Cyclic":
        return cyclic_group(_int(a[0], c, 1))
    if c == "Sym":
        if _int(a[0], c, 1) != 3:
            raise EvaluationError("Sym: only Sym(3) is available")
        return symmetric_group(3)
    if c == "Klein4":
        return klein_four()
    if c == "Free":
        return _named_module(free_module(_ring(a[1]), _int(a[0], c, 1)), text)
    if c == "Zero":
        return _named_module(zero_module(_ring(a[0])), text)
    if c == "Sum":
        m1, m2 = _module(a[0]), _module(a[1])
        if m1.ring != m2.ring:
            raise EvaluationError("Sum: summands live over different rings")
        return _named_module(direct_sum(m1, m2).module, text)
    if c == "Ideal":
        R = _ring(a[0])
        e = _element(R, a[1], c)
        reg = regular_left_module(R)
        return _named_module(Submodule(reg, np.unique(R.mul[:, e]).tolist()).as_module(), text)
    if c == "TableModule":
        return _named_module(tables.read_module(_str(a[0], c), _ring(a[1])), text)
    if c == "MatExt":
        return matrix_extension(_ring(a[1]), _int(a[0], c, 1))
    if c == "GroupRingExt":
        return group_ring_extension(_ring(a[0]), _group(a[1]))
    if c == "StdCtx":
        return standard_context(_ring(a[0]))
    if c == "ZeroCtx":
        return zero_context(_ring(a[0]), _ring(a[1]))
    if c == "TableCtx":
        return tables.read_context(_str(a[0], c))
    raise EvaluationError(f"no evaluator for {c}")  # pragma: no cover - ARITY and this table agree


def _named(ring: FiniteRing, text: str) -> FiniteRing:
    return FiniteRing(ring.add, ring.mul, ring.one, ring.labels, text, ring.codec, ring.embedding)


def _named_module(m: FiniteModule, text: str) -> FiniteModule:
    return FiniteModule(m.ring, m.add, m.action, m.labels, text)


def _expect(node: Arg, cls, what: str):
    obj = _evaluate(node)
    if not isinstance(obj, cls):
        shown = to_text(node) if isinstance(node, (Node, int, str)) else node
        raise EvaluationError(f"expected a {what}, got {kind_of(obj)} {shown}")
    return obj


def _ring(node: Arg) -> FiniteRing:
    return _expect(node, FiniteRing, "ring")


def _group(node: Arg) -> FiniteGroup:
    return _expect(node, FiniteGroup, "group")


def _context(node: Arg) -> MoritaContext:
    return _expect(node, MoritaContext, "Morita context")


def _module(node: Arg) -> FiniteModule:
    """A module expression; a bare ring stands for its regular module."""
    obj = _evaluate(node)
    if isinstance(obj, FiniteRing):
        return regular_left_module(obj)
    if not isinstance(obj, FiniteModule):
        raise EvaluationError(f"expected a module, got {kind_of(obj)} {to_text(node)}")
    return obj


def _int(node: Arg, ctor: str, low: int) -> int:
    if not isinstance(node, int) or isinstance(node, bool):
        raise EvaluationError(f"{ctor}: expected an integer, got {to_text(node)}")
    if node < low:
        raise EvaluationError(f"{ctor}: integer argument must be at least {low}, got {node}")
    return node


def _str(node: Arg, ctor: str) -> str:
    if not isinstance(node, str):
        raise EvaluationError(f"{ctor}: expected a quoted file name, got {to_text(node)}")
    return node


def _element(ring: FiniteRing, node: Arg, ctor: str) -> int:
    e = _int(node, ctor, 0)
    if e >= ring.order:
        raise EvaluationError(f"{ctor}: element index {e} out of range for a ring of order {ring.order}")
    return e


def as_ring(expr) -> FiniteRing:
    return _ring(_as_node(expr))


def as_module(expr) -> FiniteModule:
    return _module(_as_node(expr))


def as_context(expr) -> MoritaContext:
    return _context(_as_node(expr))


def as_extension(expr) -> ExtensionDescriptor:
    """An extension; ``Mat(n, R)`` and ``GroupRing(R, G)`` stand for their canonical descriptors."""
    node = _as_node(expr)
    if isinstance(node, Node) and node.ctor == "Mat":
        node = Node("MatExt", node.args)
    elif isinstance(node, Node) and node.ctor == "GroupRing":
        node = Node("GroupRingExt", node.args)
    return _expect(node, ExtensionDescriptor, "ring extension")


# -- corpora ----------------------------------------------------------------


@dataclass(frozen=True)
class Corpus:
    """Expressions grouped by the checks they feed."""

    name: str
    rings: tuple[str, ...]
    modules: tuple[str, ...]  # paired with each other when they share a base ring
    extensions: tuple[str, ...]
    extension_modules: tuple[tuple[str, str], ...]
    contexts: tuple[str, ...]
    peirce_rings: tuple[str, ...]
    progenerators: tuple[str, ...]
    progenerator_pairs: tuple[tuple[str, str, str], ...]
    pair_order: int = 16


def _sums(*parts: str) -> str:
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = f"Sum({p}, {out})"
    return out


def _default_modules() -> tuple[str, ...]:
    mods: list[str] = []

    def add(ring: str, extra: list[str] = ()):
        mods.extend([f"Zero({ring})", f"Free(1 over {ring})", *extra])

    z = lambda n: f"Zn({n})"
    tm = lambda f, ring: f'TableModule("{f}", {ring})'
    add(z(1))
    add(z(2), ["Free(2 over Zn(2))", "Free(3 over Zn(2))"])
    add(z(3), ["Free(2 over Zn(3))"])
    z2o4 = tm("z2_over_z4.mod", z(4))
    add(z(4), ["Free(2 over Zn(4))", z2o4, _sums(z2o4, z2o4), _sums(z2o4, z(4)), _sums(z2o4, z2o4, z2o4),
               _sums(z2o4, z2o4, z(4))])
    add(z(5))
    z2o6, z3o6 = tm("z2_over_z6.mod", z(6)), tm("z3_over_z6.mod", z(6))
    add(z(6), [z2o6, z3o6, _sums(z2o6, z3o6), _sums(z2o6, z2o6), _sums(z3o6, z3o6), _sums(z2o6, z(6))])
    add(z(7))
    z2o8, z4o8 = tm("z2_over_z8.mod", z(8)), tm("z4_over_z8.mod", z(8))
    add(z(8), [z2o8, z4o8, _sums(z2o8, z2o8), _sums(z2o8, z4o8), _sums(z4o8, z4o8), _sums(z2o8, z(8))])
    p = "Prod(Zn(2), Zn(2))"
    first, second = tm("z2xz2_first.mod", p), tm("z2xz2_second.mod", p)
    add(p, [first, second, _sums(first, first), _sums(first, second), _sums(p, first), f"Free(2 over {p})"])
    add("Mat(2, Zn(2))", ["Ideal(Mat(2, Zn(2)), 8)", "Sum(Ideal(Mat(2, Zn(2)), 8), Ideal(Mat(2, Zn(2)), 8))"])
    add("Mat(2, Zn(3))", ["Ideal(Mat(2, Zn(3)), 27)"])
    add("Mat(2, Zn(4))", ["Ideal(Mat(2, Zn(4)), 64)"])
    g2 = "GroupRing(Zn(2), Cyclic(2))"
    t2 = tm("trivial_z2c2.mod", g2)
    add(g2, [t2, _sums(t2, t2), _sums(g2, t2), f"Free(2 over {g2})", tm("socle_quotient_z2c2.mod", g2)])
    g3 = "GroupRing(Zn(3), Cyclic(2))"
    t3, s3 = tm("trivial_z3c2.mod", g3), tm("sign_z3c2.mod", g3)
    add(g3, [t3, s3, _sums(t3, s3), _sums(t3, t3), _sums(s3, s3)])
    f4 = 'TableRing("f4.ring")'
    add(f4, [f"Free(2 over {f4})"])
    return tuple(mods)


_EXT_MODULES = (
    ("MatExt(1, Zn(4))", ["Zero(Zn(4))", "Free(1 over Zn(4))", 'TableModule("z2_over_z4.mod", Zn(4))']),
    ("MatExt(2, Zn(2))", ["Zero(Mat(2, Zn(2)))", "Free(1 over Mat(2, Zn(2)))", "Ideal(Mat(2, Zn(2)), 8)",
                          "Sum(Ideal(Mat(2, Zn(2)), 8), Ideal(Mat(2, Zn(2)), 8))"]),
    ("MatExt(2, Zn(3))", ["Zero(Mat(2, Zn(3)))", "Ideal(Mat(2, Zn(3)), 27)", "Free(1 over Mat(2, Zn(3)))"]),
    ("MatExt(2, Zn(4))", ["Zero(Mat(2, Zn(4)))", "Ideal(Mat(2, Zn(4)), 64)"]),
    ("GroupRingExt(Zn(2), Cyclic(2))", ["Zero(GroupRing(Zn(2), Cyclic(2)))", "Free(1 over GroupRing(Zn(2), Cyclic(2)))",
                                        'TableModule("trivial_z2c2.mod", GroupRing(Zn(2), Cyclic(2)))',
                                        'TableModule("socle_quotient_z2c2.mod", GroupRing(Zn(2), Cyclic(2)))']),
    ("GroupRingExt(Zn(3), Cyclic(2))", ["Zero(GroupRing(Zn(3), Cyclic(2)))", "Free(1 over GroupRing(Zn(3), Cyclic(2)))",
                                        'TableModule("trivial_z3c2.mod", GroupRing(Zn(3), Cyclic(2)))',
                                        'TableModule("sign_z3c2.mod", GroupRing(Zn(3), Cyclic(2)))',
                                        "Free(2 over GroupRing(Zn(3), Cyclic(2)))"]),
    ("GroupRingExt(Zn(5), Cyclic(2))", ["Free(1 over GroupRing(Zn(5), Cyclic(2)))"]),
    ("GroupRingExt(Zn(2), Cyclic(3))", ["Free(1 over GroupRing(Zn(2), Cyclic(3)))"]),
)

DEFAULT = Corpus(
    name="default",
    rings=("Zn(1)", "Zn(2)", "Zn(3)", "Zn(4)", "Zn(5)", "Zn(6)", "Zn(7)", "Zn(8)", "Zn(9)", "Zn(10)", "Zn(11)",
           "Zn(12)", "Prod(Zn(2), Zn(2))", "Prod(Zn(2), Zn(3))", "Mat(2, Zn(2))", "Mat(2, Zn(3))", "Mat(2, Zn(4))",
           "GroupRing(Zn(2), Cyclic(2))", "GroupRing(Zn(3), Cyclic(2))", 'TableRing("f4.ring")'),
    modules=_default_modules(),
    extensions=("MatExt(1, Zn(4))", "MatExt(2, Zn(2))", "MatExt(2, Zn(3))", "MatExt(2, Zn(4))", "MatExt(2, Zn(6))",
                "GroupRingExt(Zn(2), Cyclic(2))", "GroupRingExt(Zn(3), Cyclic(2))", "GroupRingExt(Zn(5), Cyclic(2))",
                "GroupRingExt(Zn(2), Cyclic(3))"),
    extension_modules=tuple((e, m) for e, ms in _EXT_MODULES for m in ms),
    contexts=("StdCtx(Zn(2))", "StdCtx(Zn(3))", "StdCtx(Zn(4))", "ZeroCtx(Zn(2), Zn(3))", 'TableCtx("row_col.ctx")'),
    peirce_rings=("Mat(2, Zn(2))", "Prod(Zn(2), Zn(3))", "Zn(6)", "Zn(4)", "GroupRing(Zn(3), Cyclic(2))"),
    progenerators=("Free(1 over Zn(2))", "Free(2 over Zn(2))", "Free(2 over Zn(4))", "Ideal(Mat(2, Zn(2)), 8)",
                   'TableModule("z2_over_z4.mod", Zn(4))'),
    progenerator_pairs=tuple(
        [("Free(2 over Zn(2))", u, m) for u in ("Zero(Zn(2))", "Zn(2)", "Free(2 over Zn(2))")
         for m in ("Zero(Zn(2))", "Zn(2)", "Free(2 over Zn(2))", "Free(3 over Zn(2))")]
        + [("Free(2 over Zn(4))", u, m)
           for u in ("Zero(Zn(4))", "Zn(4)", 'TableModule("z2_over_z4.mod", Zn(4))')
           for m in ("Zero(Zn(4))", "Zn(4)", 'TableModule("z2_over_z4.mod", Zn(4))',
                     'Sum(TableModule("z2_over_z4.mod", Zn(4)), Zn(4))')]
        + [("Ideal(Mat(2, Zn(2)), 8)", u, m) for u in ("Ideal(Mat(2, Zn(2)), 8)", "Mat(2, Zn(2))")
           for m in ("Zero(Mat(2, Zn(2)))", "Ideal(Mat(2, Zn(2)), 8)", "Mat(2, Zn(2))")]
    ),
)

QUICK = Corpus(
    name="quick",
    rings=("Zn(2)", "Zn(4)", "Zn(6)", "Prod(Zn(2), Zn(2))", "Mat(2, Zn(2))", "GroupRing(Zn(2), Cyclic(2))"),
    modules=("Zero(Zn(4))", "Zn(4)", 'TableModule("z2_over_z4.mod", Zn(4))', "Zn(6)",
             'TableModule("z2_over_z6.mod", Zn(6))', 'TableModule("z3_over_z6.mod", Zn(6))'),
    extensions=("MatExt(2, Zn(2))", "GroupRingExt(Zn(2), Cyclic(2))", "GroupRingExt(Zn(3), Cyclic(2))"),
    extension_modules=(("MatExt(2, Zn(2))", "Ideal(Mat(2, Zn(2)), 8)"),
                       ("GroupRingExt(Zn(2), Cyclic(2))", 'TableModule("trivial_z2c2.mod", GroupRing(Zn(2), Cyclic(2)))'),
                       ("GroupRingExt(Zn(3), Cyclic(2))", "Free(1 over GroupRing(Zn(3), Cyclic(2)))")),
    contexts=("StdCtx(Zn(2))", "ZeroCtx(Zn(2), Zn(3))"),
    peirce_rings=("Mat(2, Zn(2))", "Zn(6)"),
    progenerators=("Free(2 over Zn(2))", 'TableModule("z2_over_z4.mod", Zn(4))'),
    progenerator_pairs=(("Free(2 over Zn(2))", "Zn(2)", "Free(2 over Zn(2))"),),
)

CORPORA = {c.name: c for c in (DEFAULT, QUICK)}


def get_corpus(name: str) -> Corpus:
    try:
        return CORPORA[name]
    except KeyError:
        raise EvaluationError(f"unknown corpus {name!r}; available: {', '.join(sorted(CORPORA))}") from None
