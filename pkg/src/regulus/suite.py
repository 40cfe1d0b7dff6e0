"""Run every verifier over a corpus, in corpus order."""

from __future__ import annotations

import time
from collections import OrderedDict
from typing import Callable, Iterator, Optional

from . import commands as C
from .catalog import Corpus, as_context, as_extension, as_module, as_ring
from .config import BudgetExceeded, CapExceeded, RegulusError
from .extensions import verify_free_normalizing
from .finmod import check_module_axioms
from .finring import check_ring_axioms
from .morita import check_context, context_ring

KINDS = ("axioms", "vnr", "prop1.2", "cor2.3", "thm2.2", "lem3.3", "thm3.4", "thm3.2", "lem3.1")


def _axioms(kind: str, expr: str) -> C.Outcome:
    """Structure checks for one corpus entry; ``ring`` also covers the ambient ring."""
    if kind == "ring":
        R = as_ring(expr)
        rep = check_ring_axioms(R.add, R.mul, R.one, R.labels)
        found, extra = (rep.ok, rep.axiom, rep.witness), {}
    elif kind == "module":
        M = as_module(expr)
        rep = check_module_axioms(M.ring, M.add, M.action)
        found = (rep.ok, rep.axiom, rep.witness)
        extra = {"ring": check_ring_axioms(M.ring.add, M.ring.mul, M.ring.one).ok}
    elif kind == "extension":
        d = as_extension(expr)
        rep = verify_free_normalizing(d.embedding, d.basis)
        found = (rep.ok, rep.clause, rep.witness)
        extra = {"ring": check_ring_axioms(d.big.add, d.big.mul, d.big.one).ok}
    else:
        ctx = as_context(expr)
        rep = check_context(ctx)
        found = (rep.ok, rep.clause, rep.witness)
        T = context_ring(ctx, check=False)
        extra = {"ring": check_ring_axioms(T.ring.add, T.ring.mul, T.ring.one).ok}
    ok, axiom, witness = found
    res = {"what": kind, "ok": ok, "axiom": axiom, "witness": list(witness) if witness else None, **extra}
    return C.Outcome(C.OK if ok and all(extra.values()) else C.FAIL, res)


def _pairs(corpus: Corpus) -> list[tuple[str, str]]:
    """Ordered (U, M) pairs over a common ring, both of order at most ``pair_order``, duplicates dropped."""
    groups: "OrderedDict[object, list[tuple[str, object]]]" = OrderedDict()
    for expr in corpus.modules:
        try:
            m = as_module(expr)
        except CapExceeded:
            continue
        if m.order > corpus.pair_order:
            continue
        bucket = groups.setdefault(m.ring, [])
        if all(m != other for _, other in bucket):
            bucket.append((expr, m))
    return [(u, m) for bucket in groups.values() for u, _ in bucket for m, _ in bucket]


def plan(corpus: Corpus) -> Iterator[tuple[str, dict, Callable[[], C.Outcome]]]:
    """(kind, args, thunk) for every corpus item, in a fixed order."""
    for r in corpus.rings:
        yield "axioms", {"ring": r}, lambda r=r: _axioms("ring", r)
    for m in corpus.modules:
        yield "axioms", {"module": m}, lambda m=m: _axioms("module", m)
    for e in corpus.extensions:
        yield "axioms", {"extension": e}, lambda e=e: _axioms("extension", e)
    for c in corpus.contexts:
        yield "axioms", {"context": c}, lambda c=c: _axioms("context", c)
    for r in corpus.rings:
        yield "vnr", {"expr": r}, lambda r=r: C.triple_agreement(r)
    for u, m in _pairs(corpus):
        yield "prop1.2", {"module": m, "relator": u}, lambda u=u, m=m: C.verify_prop12(m, u, detail=False)
    for e in corpus.extensions:
        yield "cor2.3", {"extension": e}, lambda e=e: C.verify_cor23(e)
    for e, m in corpus.extension_modules:
        yield "thm2.2", {"extension": e, "module": m}, lambda e=e, m=m: C.verify_thm22(e, m)
    for r in corpus.peirce_rings:
        yield "lem3.3", {"expr": r}, lambda r=r: C.verify_lem33(r)
    for c in corpus.contexts:
        yield "thm3.4", {"context": c}, lambda c=c: C.verify_thm34(c)
    for p in corpus.progenerators:
        yield "thm3.2", {"progenerator": p}, lambda p=p: C.verify_thm32(p)
    for p, u, m in corpus.progenerator_pairs:
        yield "lem3.1", {"progenerator": p, "u": u, "m": m}, lambda p=p, u=u, m=m: C.verify_lem31(p, u, m)


def run(corpus: Corpus, kinds: Optional[set[str]] = None) -> tuple[dict, dict]:
    """Run the corpus; returns (comparable result, timing by kind)."""
    items = []
    timing: dict[str, float] = {}
    for kind, args, thunk in plan(corpus):
        if kinds is not None and kind not in kinds:
            continue
        canon = {k: C.canonical(v) for k, v in args.items()}
        t0 = time.perf_counter()
        try:
            out = thunk()
            item = {"kind": kind, "args": canon, "status": out.status, "result": out.result}
        except (CapExceeded, BudgetExceeded) as exc:
            item = {"kind": kind, "args": canon, "status": "skipped", "reason": str(exc), "result": None}
        except RegulusError as exc:
            item = {"kind": kind, "args": canon, "status": "error", "reason": str(exc), "result": None}
        timing[kind] = timing.get(kind, 0.0) + time.perf_counter() - t0
        items.append(item)
    summary = OrderedDict()
    for kind in KINDS:
        group = [i for i in items if i["kind"] == kind]
        if not group:
            continue
        counts = OrderedDict((s, 0) for s in ("ok", "fail", "non-probative", "skipped", "error"))
        for i in group:
            counts[i["status"]] += 1
        summary[kind] = {"total": len(group), **counts}
    torsion = [i["args"] for i in items if i["kind"] == "thm2.2" and i["result"] is not None
               and i["result"]["regular"] and not i["result"]["basis_torsion_free"]
               and not i["result"]["restricted_regular"]]
    result = {
        "corpus": corpus.name,
        "summary": summary,
        "torsion_necessity_witnesses": torsion,
        "items": items,
    }
    return result, {k: round(v, 3) for k, v in timing.items()}


def status_of(result: dict) -> str:
    """fail if any item failed or errored; otherwise ok (skips and non-probative items are reported, not fatal)."""
    bad = any(i["status"] in ("fail", "error") for i in result["items"])
    return "fail" if bad else "ok"
