"""Command line entry point.

Exit codes: 0 all asserted implications hold, 1 assertion failure, 2 usage or
parse error, 3 cap or budget exceeded, 4 hypotheses unmet (non-probative).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__
from . import commands as C
from .catalog import EvaluationError, get_corpus
from .config import BudgetExceeded, CapExceeded, RegulusError
from .dsl import ParseError
from .report import EXIT_CODES, dumps, envelope
from . import suite


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CODES["usage"], f"{self.prog}: error: {message}\n")


def _json_opt(p: argparse.ArgumentParser):
    p.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="regulus", description="Exact checks of regularity facts on small finite rings and modules.")
    ap.add_argument("--version", action="version", version=f"regulus {__version__}")
    top = ap.add_subparsers(dest="group", required=True, parser_class=_Parser)

    check = top.add_parser("check", help="regularity checks").add_subparsers(dest="cmd", required=True)
    p = check.add_parser("vnr", help="von Neumann regularity of a ring")
    p.add_argument("expr")
    _json_opt(p)
    p = check.add_parser("regular", help="(relative) regularity of a module")
    p.add_argument("--module", required=True)
    p.add_argument("--over", required=True)
    p.add_argument("--relative-to", dest="relative_to")
    p.add_argument("--witnesses", action="store_true", help="include every (f, g) pair in the report")
    _json_opt(p)

    verify = top.add_parser("verify", help="theorem verifiers").add_subparsers(dest="cmd", required=True)
    p = verify.add_parser("prop1.2", help="definitional vs kernel/image-summand regularity")
    p.add_argument("--module", required=True)
    p.add_argument("--relator", required=True)
    p.add_argument("--witnesses", action="store_true")
    _json_opt(p)
    p = verify.add_parser("thm2.2", help="regularity over an extension and its subring")
    p.add_argument("--extension", required=True)
    p.add_argument("--module", required=True)
    _json_opt(p)
    p = verify.add_parser("cor2.3", help="regularity of R and of its extension S")
    p.add_argument("--extension", required=True)
    _json_opt(p)
    p = verify.add_parser("lem3.1", help="relative regularity transported by Hom(P, -)")
    p.add_argument("--progenerator", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--m", required=True)
    _json_opt(p)
    p = verify.add_parser("thm3.2", help="regularity of R and End(P)")
    p.add_argument("--progenerator", required=True)
    _json_opt(p)
    p = verify.add_parser("lem3.3", help="Peirce-block criterion vs brute force")
    p.add_argument("expr")
    p.add_argument("--max-family", type=int, default=2, help="largest idempotent family size (default 2)")
    _json_opt(p)
    p = verify.add_parser("thm3.4", help="regularity of a Morita context ring")
    p.add_argument("--context", required=True)
    _json_opt(p)

    s = top.add_parser("suite", help="corpus runs").add_subparsers(dest="cmd", required=True)
    p = s.add_parser("run", help="run every verifier over a corpus")
    p.add_argument("--corpus", default="default")
    p.add_argument("--only", action="append", choices=suite.KINDS, help="restrict to some item kinds")
    _json_opt(p)
    return ap


def _dispatch(a) -> tuple[C.Outcome, str, dict]:
    """(outcome, report kind, canonical args)."""
    key = (a.group, a.cmd)
    if key == ("check", "vnr"):
        return C.check_vnr(a.expr), "check vnr", {"expr": a.expr}
    if key == ("check", "regular"):
        args = {"module": a.module, "over": a.over, "relative_to": a.relative_to}
        return C.check_regular(a.module, a.over, a.relative_to, detail=a.witnesses), "check regular", args
    if key == ("verify", "prop1.2"):
        return C.verify_prop12(a.module, a.relator, detail=a.witnesses), "prop1.2", \
            {"module": a.module, "relator": a.relator}
    if key == ("verify", "thm2.2"):
        return C.verify_thm22(a.extension, a.module), "thm2.2", {"extension": a.extension, "module": a.module}
    if key == ("verify", "cor2.3"):
        return C.verify_cor23(a.extension), "cor2.3", {"extension": a.extension}
    if key == ("verify", "lem3.1"):
        return C.verify_lem31(a.progenerator, a.u, a.m), "lem3.1", {"progenerator": a.progenerator, "u": a.u, "m": a.m}
    if key == ("verify", "thm3.2"):
        return C.verify_thm32(a.progenerator), "thm3.2", {"progenerator": a.progenerator}
    if key == ("verify", "lem3.3"):
        return C.verify_lem33(a.expr, a.max_family), "lem3.3", {"expr": a.expr}
    if key == ("verify", "thm3.4"):
        return C.verify_thm34(a.context), "thm3.4", {"context": a.context}
    raise AssertionError(key)  # pragma: no cover


def _summary_lines(kind: str, status: str, res: dict) -> list[str]:
    lines = [f"{kind}: {status}"]
    for key, value in res.items():
        if key in ("kind", "args") or isinstance(value, list) and len(value) > 8:
            continue
        if isinstance(value, dict) and key == "summary":
            for k, counts in value.items():
                lines.append(f"  {k}: " + ", ".join(f"{c}={n}" for c, n in counts.items()))
            continue
        if key == "items":
            continue
        lines.append(f"  {key}: {value}")
    return lines


def _emit(report: dict, json_target: Optional[str], lines: list[str]):
    if json_target == "-":
        sys.stdout.write(dumps(report))
        return
    if json_target:
        Path(json_target).write_text(dumps(report))
    stream = sys.stderr if report["error"] is not None else sys.stdout
    print("\n".join(lines), file=stream)


def run_command(argv: list[str]) -> tuple[int, dict]:
    """Parse and run one command; returns (exit code, report)."""
    a = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        if a.group == "suite":
            res, timing = suite.run(get_corpus(a.corpus), set(a.only) if a.only else None)
            status = suite.status_of(res)
            rep = envelope(argv, status, res, seconds=time.perf_counter() - t0)
            rep["timing"]["by_kind"] = timing
            lines = _summary_lines(f"suite {a.corpus}", status, res)
        else:
            out, kind, args = _dispatch(a)
            canon = {k: (C.canonical(v) if isinstance(v, str) else v) for k, v in args.items()}
            res = {"kind": kind, "args": canon, **out.result}
            rep = envelope(argv, out.status, res, seconds=time.perf_counter() - t0)
            lines = _summary_lines(kind, out.status, res)
    except ParseError as exc:
        rep = envelope(argv, "usage", error={"type": "parse", "message": exc.message, "offset": exc.offset},
                       seconds=time.perf_counter() - t0)
        lines = [f"parse error: {exc}"]
    except (CapExceeded, BudgetExceeded) as exc:
        rep = envelope(argv, "cap", error={"type": type(exc).__name__, "message": str(exc)},
                       seconds=time.perf_counter() - t0)
        lines = [f"limit exceeded: {exc}"]
    except (EvaluationError, RegulusError, FileNotFoundError, ValueError) as exc:
        rep = envelope(argv, "usage", error={"type": type(exc).__name__, "message": str(exc)},
                       seconds=time.perf_counter() - t0)
        lines = [f"error: {exc}"]
    _emit(rep, getattr(a, "json", None), lines)
    return rep["exit_code"], rep


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, _ = run_command(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
