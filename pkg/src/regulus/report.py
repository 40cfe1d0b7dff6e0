"""Report envelopes, deterministic JSON, and witness replay."""

from __future__ import annotations

import json
from typing import Any, Optional

import numpy as np

from . import __version__
from .catalog import as_context, as_extension, as_module, as_ring
from .extensions import basis_coordinates
from .finmod import is_hom
from .finring import corner_ring, is_ring_isomorphism
from .morita import context_ring
from .regularity import element_witness

SCHEMA = 1
EXIT_CODES = {"ok": 0, "fail": 1, "usage": 2, "cap": 3, "non-probative": 4}


def envelope(command: list[str], status: str, result: Optional[dict] = None,
             error: Optional[dict] = None, seconds: Optional[float] = None) -> dict:
    """The report: comparable fields first, wall-clock timing isolated under ``timing``."""
    rep = {
        "schema": SCHEMA,
        "tool": {"name": "regulus", "version": __version__},
        "command": list(command),
        "status": status,
        "exit_code": EXIT_CODES[status],
        "result": result,
        "error": error,
    }
    rep["timing"] = {"seconds": None if seconds is None else round(seconds, 3)}
    return rep


def comparable(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}


def _plain(x: Any):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    return x


def dumps(report: dict) -> str:
    """Insertion-ordered JSON; every builder emits keys in a fixed order."""
    return json.dumps(_plain(report), indent=2, ensure_ascii=False) + "\n"


# -- replay ---------------------------------------------------------------------


def _rel_pairs_ok(u, m, pairs) -> bool:
    for f, g in pairs:
        fa, ga = np.asarray(f), np.asarray(g)
        if not (is_hom(u, m, fa) and is_hom(m, u, ga) and (fa[ga[fa]] == fa).all()):
            return False
    return True


def _no_companion(u, m, f) -> bool:
    from .finmod import hom_array

    fa = np.asarray(f)
    if not is_hom(u, m, fa):
        return False
    gs = hom_array(m, u)
    return not (fa[gs[:, fa]] == fa).all(axis=1).any()


def _summand_ok(m, elements, idem) -> bool:
    from .commands import summand_replay_ok

    return summand_replay_ok(m, elements, idem)


def replay_result(kind: str, args: dict, res: dict) -> list[tuple[str, bool]]:
    """Re-verify every witness in one command result against rebuilt instances."""
    out: list[tuple[str, bool]] = []
    if kind in ("check vnr", "vnr"):
        R = as_ring(args["expr"])
        if res.get("witnesses") is not None:
            out.append(("witnesses", all(R.mul3(x, s, x) == x for x, s in enumerate(res["witnesses"]))
                        and len(res["witnesses"]) == R.order))
        if res.get("counterexample") is not None:
            out.append(("counterexample", element_witness(R, res["counterexample"]) is None))
    elif kind == "check regular":
        M = as_module(args["module"])
        U = as_module(args["relative_to"]) if args.get("relative_to") else as_module(args["over"])
        if res.get("pairs") is not None:
            out.append(("pairs", _rel_pairs_ok(U, M, res["pairs"])))
        if res.get("failure") is not None:
            out.append(("failure", _no_companion(U, M, res["failure"])))
    elif kind == "prop1.2":
        M, U = as_module(args["module"]), as_module(args["relator"])
        if res.get("pairs") is not None:
            out.append(("pairs", _rel_pairs_ok(U, M, res["pairs"])))
        if res.get("definitional_failure") is not None:
            out.append(("failure", _no_companion(U, M, res["definitional_failure"])))
        for e in res.get("summand_entries") or []:
            ok = _summand_ok(U, e["kernel"], e["kernel_idempotent"]) and _summand_ok(M, e["image"], e["image_idempotent"])
            out.append((f"summands of {e['hom']}", ok))
    elif kind == "cor2.3":
        desc = as_extension(args["extension"])
        R, S = desc.small, desc.big
        for p in res.get("projections", []):
            r_in_s = int(desc.embedding.array[p["r"]])
            ok = (S.mul3(r_in_s, p["s"], r_in_s) == r_in_s
                  and list(basis_coordinates(desc, p["s"])) == p["coordinates"]
                  and R.mul3(p["r"], p["coordinates"][0], p["r"]) == p["r"])
            out.append((f"projection r={p['r']}", ok))
    elif kind == "thm2.2":
        desc = as_extension(args["extension"])
        M = as_module(args["module"])
        ce = res.get("torsion_counterexample")
        if ce is not None:
            x, coeffs = ce
            terms = [int(desc.terms[r, i]) for i, r in enumerate(coeffs)]
            total = 0
            for t in terms:
                total = desc.big.plus(total, t)
            ok = M.act(total, x) == 0 and any(M.act(t, x) != 0 for t in terms)
            out.append(("torsion counterexample", ok))
    elif kind == "lem3.3":
        R = as_ring(args["expr"])
        for fam in res.get("families", []):
            es = fam["family"]
            ok = True
            for i, j, x, y in fam["witnesses"]:
                in_ij = R.mul3(es[i], x, es[j]) == x
                in_ji = R.mul3(es[j], y, es[i]) == y
                ok = ok and in_ij and in_ji and R.mul3(x, y, x) == x
            out.append((f"family {es}", ok))
    elif kind == "thm3.4":
        ctx = as_context(args["context"])
        T = context_ring(ctx)
        for label, e, ring in (("corner_R", T.e, ctx.R), ("corner_S", T.complement, ctx.S)):
            if res.get(label) is not None:
                out.append((label, is_ring_isomorphism(corner_ring(T.ring, e), ring, res[label])))
    elif kind in ("thm3.2", "lem3.1"):
        w = res.get("witness") or {}
        if w.get("progenerator"):
            from .finmod import direct_power, regular_left_module

            P = as_module(args["progenerator"])
            F = direct_power(regular_left_module(P.ring), w["k"])
            e, sigma = np.asarray(w["projective_idempotent"]), np.asarray(w["projective_iso"])
            ok = (is_hom(F, F, e) and (e[e] == e).all() and is_hom(P, F, sigma)
                  and np.unique(sigma).size == P.order and set(e.tolist()) == set(sigma.tolist()))
            out.append(("projectivity", bool(ok)))
            Pj = direct_power(P, w["j"])
            g = np.asarray(w["generator_idempotent"])
            orbit = Pj.action[:, w["generator_element"]]
            ok = (is_hom(Pj, Pj, g) and (g[g] == g).all() and np.unique(orbit).size == P.ring.order
                  and set(g.tolist()) == set(orbit.tolist()))
            out.append(("generator", bool(ok)))
    return out


def replay_report(report: dict) -> list[tuple[str, bool]]:
    """Replay a single-command report or every item of a suite report."""
    res = report.get("result")
    if res is None:
        return []
    if "items" in res:
        out = []
        for item in res["items"]:
            if item.get("result") is not None:
                out += [(f"{item['kind']} {item['args']}: {w}", ok)
                        for w, ok in replay_result(item["kind"], item["args"], item["result"])]
        return out
    return replay_result(res["kind"], res["args"], res)
