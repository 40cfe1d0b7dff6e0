"""Verification commands producing plain, JSON-ready results.

Every command returns a :class:`Outcome`: a status (``ok``, ``fail`` or
``non-probative``) and a result dict built in a fixed key order. Witness
tables are lists of element indices so a report can be replayed later.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .catalog import EvaluationError, as_context, as_extension, as_module, as_ring
from .dsl import parse, to_text
from .extensions import (
    ExtensionDescriptor,
    ProjectivityStatus,
    basis_torsion_free,
    left_projectivity_bounded_check,
    verify_corollary_2_3,
    verify_theorem_2_2,
)
from .finmod import FiniteModule, is_direct_summand, is_hom, regular_left_module
from .finring import FiniteRing, complete_orthogonal_families, corner_ring, find_ring_isomorphism
from .morita import (
    check_context,
    check_full_faithful,
    context_ring,
    endo_ring,
    hom_functor,
    is_strict,
    matrix_witness_identity,
    progenerator_check,
    verify_lemma_3_3,
)
from .regularity import (
    is_regular_module,
    is_relative_regular,
    relative_regular_via_summands,
    vnr_check,
    zelmanowitz_check,
)

OK, FAIL, NON_PROBATIVE = "ok", "fail", "non-probative"


@dataclass(frozen=True)
class Outcome:
    status: str
    result: dict


def canonical(expr: str) -> str:
    """Normalized expression text, so reports do not depend on spacing."""
    return to_text(parse(expr))


def _ints(xs) -> list[int]:
    return [int(x) for x in xs]


def _ring_info(expr: str, ring: FiniteRing) -> dict:
    return {"expr": canonical(expr), "kind": "ring", "order": ring.order}


def _module_info(expr: str, m: FiniteModule) -> dict:
    return {"expr": canonical(expr), "kind": "module", "order": m.order, "ring_order": m.ring.order}


def _verdict(flag: bool) -> str:
    return "regular" if flag else "non-regular"


# -- regularity -----------------------------------------------------------------


def check_vnr(expr: str) -> Outcome:
    R = as_ring(expr)
    cert = vnr_check(R)
    res = {
        "instance": _ring_info(expr, R),
        "verdict": _verdict(cert.regular),
        "witnesses": _ints(cert.witnesses) if cert.regular else None,
        "counterexample": cert.counterexample,
        "counterexample_label": None if cert.regular else R.labels[cert.counterexample],
    }
    return Outcome(OK, res)


def _module_over(module: str, over: Optional[str]) -> FiniteModule:
    M = as_module(module)
    if over is not None and M.ring != as_ring(over):
        raise EvaluationError(f"{canonical(module)} is not a module over {canonical(over)}")
    return M


def check_regular(module: str, over: str, relative_to: Optional[str] = None, detail: bool = True) -> Outcome:
    M = _module_over(module, over)
    U = _module_over(relative_to, over) if relative_to else regular_left_module(M.ring)
    cert = is_relative_regular(M, U)
    res = {
        "instance": _module_info(module, M),
        "relator": _module_info(relative_to, U) if relative_to else {"expr": canonical(over), "kind": "regular module",
                                                                     "order": U.order, "ring_order": U.ring.order},
        "verdict": _verdict(cert.regular),
        "hom_count": cert.hom_count,
        "failure": list(cert.failure) if cert.failure is not None else None,
        "pairs": [[list(f), list(g)] for f, g in cert.pairs] if detail else None,
    }
    return Outcome(OK, res)


def verify_prop12(module: str, relator: str, detail: bool = True) -> Outcome:
    M, U = as_module(module), as_module(relator)
    if M.ring != U.ring:
        raise EvaluationError("module and relator must share a base ring")
    d = is_relative_regular(M, U)
    s = relative_regular_via_summands(M, U)
    entries = None
    if detail:
        entries = [{
            "hom": list(e.hom),
            "kernel": list(e.kernel.submodule.elements),
            "kernel_idempotent": list(e.kernel.idempotent.map) if e.kernel.idempotent is not None else None,
            "image": list(e.image.submodule.elements),
            "image_idempotent": list(e.image.idempotent.map) if e.image.idempotent is not None else None,
        } for e in s.entries]
    res = {
        "instance": _module_info(module, M),
        "relator": _module_info(relator, U),
        "definitional": _verdict(d.regular),
        "summands": _verdict(s.regular),
        "agree": d.regular == s.regular,
        "hom_count": d.hom_count,
        "definitional_failure": list(d.failure) if d.failure is not None else None,
        "summand_failure": list(s.failure) if s.failure is not None else None,
        "pairs": [[list(f), list(g)] for f, g in d.pairs] if detail else None,
        "summand_entries": entries,
    }
    return Outcome(OK if res["agree"] else FAIL, res)


def triple_agreement(expr: str) -> Outcome:
    """vnr_check, regularity of the regular module, and the cyclic-summand route."""
    R = as_ring(expr)
    reg = regular_left_module(R)
    a = vnr_check(R)
    b = is_regular_module(reg)
    c = zelmanowitz_check(reg)
    res = {
        "instance": _ring_info(expr, R),
        "vnr": _verdict(a.regular),
        "module": _verdict(b.regular),
        "cyclic_summands": _verdict(c.regular),
        "agree": a.regular == b.regular == c.regular,
        "counterexample": a.counterexample,
        "counterexample_label": None if a.regular else R.labels[a.counterexample],
        "witnesses": _ints(a.witnesses) if a.regular else None,
    }
    return Outcome(OK if res["agree"] else FAIL, res)


# -- extensions -----------------------------------------------------------------


def _projectivity(desc: ExtensionDescriptor) -> tuple[ExtensionDescriptor, dict]:
    """Unchecked descriptors get the bounded check; a pass makes them probative."""
    info = {"status": desc.projectivity_status.value, "checked": [], "skipped": [], "counterexample": None}
    if desc.projectivity_status != ProjectivityStatus.UNCHECKED:
        return desc, info
    rep = left_projectivity_bounded_check(desc)
    desc = rep.descriptor
    info = {
        "status": desc.projectivity_status.value,
        "checked": list(rep.checked),
        "skipped": list(rep.skipped),
        "counterexample": [rep.counterexample[0], list(rep.counterexample[1])] if rep.counterexample else None,
    }
    return desc, info


def _extension_info(expr: str, desc: ExtensionDescriptor) -> dict:
    return {"expr": canonical(expr), "kind": "extension", "small_order": desc.small.order,
            "big_order": desc.big.order, "basis": list(desc.basis)}


def verify_thm22(extension: str, module: str) -> Outcome:
    desc = as_extension(extension)
    M = as_module(module)
    if M.ring != desc.big:
        raise EvaluationError(f"{canonical(module)} is not a module over the extension ring")
    desc, proj = _projectivity(desc)
    rep = verify_theorem_2_2(desc, M)
    tor = basis_torsion_free(desc, M)
    res = {
        "extension": _extension_info(extension, desc),
        "instance": _module_info(module, M),
        "projectivity": proj,
        "restricted_regular": rep.restricted_regular,
        "regular": rep.regular,
        "basis_torsion_free": rep.torsion_free,
        "torsion_counterexample": [tor.counterexample[0], list(tor.counterexample[1])] if tor.counterexample else None,
        "forward_holds": rep.forward_holds,
        "converse_holds": rep.converse_holds,
        "probative": rep.probative,
    }
    if not rep.probative:
        return Outcome(NON_PROBATIVE, res)
    return Outcome(OK if rep.holds else FAIL, res)


def verify_cor23(extension: str) -> Outcome:
    desc = as_extension(extension)
    desc, proj = _projectivity(desc)
    rep = verify_corollary_2_3(desc)
    res = {
        "extension": _extension_info(extension, desc),
        "projectivity": proj,
        "small": _verdict(rep.small.regular),
        "big": _verdict(rep.big.regular),
        "agree": rep.agree,
        "small_counterexample": rep.small.counterexample,
        "big_counterexample": rep.big.counterexample,
        "projections": [{"r": p.r, "s": p.s, "coordinates": list(p.coordinates), "holds": p.holds}
                        for p in rep.projections],
        "probative": rep.probative,
    }
    if not rep.probative:
        return Outcome(NON_PROBATIVE, res)
    return Outcome(OK if rep.holds else FAIL, res)


# -- Morita ----------------------------------------------------------------------


def _progenerator_info(p) -> dict:
    if not p:
        return {"progenerator": False, "reason": p.reason}
    return {
        "progenerator": True,
        "k": p.k,
        "projective_idempotent": list(p.projective_idempotent.map),
        "projective_iso": list(p.projective_iso.map),
        "j": p.j,
        "generator_idempotent": list(p.generator_idempotent.map),
        "generator_element": int(p.generator_element),
    }


def verify_lem31(progenerator: str, u: str, m: str) -> Outcome:
    P, U, M = as_module(progenerator), as_module(u), as_module(m)
    if not (P.ring == U.ring == M.ring):
        raise EvaluationError("P, U and M must share a base ring")
    prog = progenerator_check(P)
    res = {
        "progenerator": _module_info(progenerator, P),
        "u": _module_info(u, U),
        "m": _module_info(m, M),
        "witness": _progenerator_info(prog),
    }
    if not prog:
        return Outcome(NON_PROBATIVE, res)
    F = hom_functor(P)
    FU, _ = F.on_module(U)
    FM, _ = F.on_module(M)
    a = is_relative_regular(M, U).regular
    b = is_relative_regular(FM, FU).regular
    ff = check_full_faithful(F, U, M)
    res.update({
        "endo_order": F.endo.ring.order,
        "image_orders": [FU.order, FM.order],
        "regular": _verdict(a),
        "transported": _verdict(b),
        "agree": a == b,
        "full": ff.full,
        "faithful": ff.faithful,
    })
    return Outcome(OK if a == b and bool(ff) else FAIL, res)


def verify_thm32(progenerator: str) -> Outcome:
    P = as_module(progenerator)
    prog = progenerator_check(P)
    res = {"progenerator": _module_info(progenerator, P), "witness": _progenerator_info(prog)}
    if not prog:
        return Outcome(NON_PROBATIVE, res)
    E = endo_ring(P).ring
    a, b = vnr_check(P.ring), vnr_check(E)
    res.update({
        "endo_order": E.order,
        "vnr_ring": _verdict(a.regular),
        "vnr_endo": _verdict(b.regular),
        "agree": a.regular == b.regular,
    })
    return Outcome(OK if res["agree"] else FAIL, res)


def verify_lem33(expr: str, max_size: int = 2) -> Outcome:
    R = as_ring(expr)
    fams = []
    for k in range(1, max_size + 1):
        for fam in complete_orthogonal_families(R, k):
            rep = verify_lemma_3_3(R, fam)
            fams.append({
                "family": list(fam),
                "peirce": _verdict(rep.peirce_regular),
                "vnr": _verdict(rep.vnr_regular),
                "agree": rep.agree,
                "witnesses": [list(w) for w in rep.witnesses],
                "failure": list(rep.failure) if rep.failure else None,
            })
    sizes = sorted({len(f["family"]) for f in fams})
    res = {"instance": _ring_info(expr, R), "family_sizes": sizes, "families": fams,
           "agree": all(f["agree"] for f in fams)}
    return Outcome(OK if res["agree"] else FAIL, res)


def verify_thm34(context: str) -> Outcome:
    ctx = as_context(context)
    rep = check_context(ctx)
    if not rep:
        raise EvaluationError(f"invalid Morita context: {rep.clause} fails at {list(rep.witness)}")
    T = context_ring(ctx)
    eTe = corner_ring(T.ring, T.e)
    fTf = corner_ring(T.ring, T.complement)
    iso_r = find_ring_isomorphism(eTe, ctx.R)
    iso_s = find_ring_isomorphism(fTf, ctx.S)
    strict = is_strict(ctx)
    v = {
        "T": vnr_check(T.ring).regular,
        "R": vnr_check(ctx.R).regular,
        "S": vnr_check(ctx.S).regular,
        "M_left": is_regular_module(ctx.M.carrier).regular,
        "M_right": is_regular_module(ctx.M.as_right_module()).regular,
        "N_left": is_regular_module(ctx.N.carrier).regular,
        "N_right": is_regular_module(ctx.N.as_right_module()).regular,
    }
    d1 = (not v["T"]) or all(v[k] for k in ("R", "S", "M_left", "M_right", "N_left", "N_right"))
    hyp2 = strict.strict and v["R"] and v["S"] and v["M_left"] and v["N_left"]
    d2 = (not hyp2) or v["T"]
    identity = all(matrix_witness_identity(ctx, T, m, n) for m in range(ctx.M.order) for n in range(ctx.N.order))
    res = {
        "context": {"expr": canonical(context), "kind": "context", "orders": [ctx.R.order, ctx.M.order, ctx.N.order,
                                                                            ctx.S.order]},
        "context_ring_order": T.ring.order,
        "e": T.e,
        "verdicts": v,
        "strict": strict.strict,
        "direction1": d1,
        "direction2": d2,
        "direction2_vacuous": not hyp2,
        "corner_R": list(iso_r) if iso_r is not None else None,
        "corner_S": list(iso_s) if iso_s is not None else None,
        "matrix_witness_identity": identity,
    }
    ok = d1 and d2 and iso_r is not None and iso_s is not None and identity
    return Outcome(OK if ok else FAIL, res)


def summand_replay_ok(m: FiniteModule, elements, idempotent) -> bool:
    """An idempotent endomorphism of M with image exactly ``elements``."""
    if idempotent is None:
        return not is_direct_summand(elements, m)
    e = np.asarray(idempotent)
    return is_hom(m, m, e) and bool((e[e] == e).all()) and sorted(set(e.tolist())) == sorted(elements)
