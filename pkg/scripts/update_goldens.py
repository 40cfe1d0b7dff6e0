"""Regenerate the golden CLI reports in tests/golden.

Run after an intentional change to report contents, then review the diff.
"""
import argparse
import json
import subprocess
import sys
from pathlib import Path

from regulus.report import comparable, dumps

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"

sys.path.insert(0, str(ROOT / "tests"))
from test_cli import GOLDEN_CASES  # noqa: E402


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="compare only, exit 1 on any difference")
    args = ap.parse_args(argv)
    stale = []
    for name, (cmd, code) in sorted(GOLDEN_CASES.items()):
        out = subprocess.run([sys.executable, "-m", "regulus", *cmd, "--json", "-"],
                             capture_output=True, text=True)
        if out.returncode != code:
            print(f"{name}: exit {out.returncode}, expected {code}", file=sys.stderr)
            return 1
        text = dumps(comparable(json.loads(out.stdout)))
        path = GOLDEN / f"{name}.json"
        if path.exists() and path.read_text() == text:
            continue
        stale.append(name)
        if not args.check:
            path.write_text(text)
    print(("stale: " if args.check else "updated: ") + (", ".join(stale) or "none"))
    return 1 if args.check and stale else 0


if __name__ == "__main__":
    sys.exit(main())
