"""Search for a module that is S-regular, not basis-torsion-free and not R-regular.

    python3 scripts/torsion_search.py [--json PATH]

For every extension descriptor of the default corpus, every S-submodule and
every quotient of S and of S+S (within the lattice cap) is classified by
p = regular over R, q = regular over S, t = basis-torsion-free. Counts per
descriptor and any q and not t and not p witness are printed.
"""

import argparse
import json
import sys
from collections import Counter

from regulus.catalog import DEFAULT, as_extension
from regulus.config import BudgetExceeded, CapExceeded, limits
from regulus.extensions import basis_torsion_free, restrict_scalars
from regulus.finmod import direct_sum, quotient_module, regular_left_module, submodules
from regulus.regularity import is_regular_module


def candidates(desc):
    reg = regular_left_module(desc.big)
    cap = limits().lattice_order
    family = [("S", reg)] if reg.order <= cap else []
    if reg.order ** 2 <= cap:
        family.append(("S+S", direct_sum(reg, reg).module))
    for label, m in family:
        for sub in submodules(m):
            yield f"{label} sub {list(sub.elements)}", sub.as_module()
            yield f"{label} / {list(sub.elements)}", quotient_module(sub)


def search(extensions=DEFAULT.extensions):
    rows, witnesses = [], []
    for expr in extensions:
        desc = as_extension(expr)
        counts, seen = Counter(), []
        for label, m in candidates(desc):
            if any(m == other for other in seen):
                continue
            seen.append(m)
            try:
                p = bool(is_regular_module(restrict_scalars(desc, m)))
                q = bool(is_regular_module(m))
            except (CapExceeded, BudgetExceeded):
                counts["skipped"] += 1
                continue
            t = bool(basis_torsion_free(desc, m))
            counts["".join(k if v else "-" for k, v in (("p", p), ("q", q), ("t", t)))] += 1
            if q and not t and not p:
                witnesses.append({"extension": expr, "module": label})
        rows.append({"extension": expr, "probative": desc.probative, "distinct_modules": len(seen),
                     "classes": dict(sorted(counts.items()))})
    return rows, witnesses


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", help="also write the result as JSON")
    a = ap.parse_args(argv)
    rows, witnesses = search()
    for r in rows:
        tag = "" if r["probative"] else " (non-probative)"
        print(f"{r['extension']}{tag}: {r['distinct_modules']} modules, classes {r['classes']}")
    print(f"q and not t and not p witnesses: {len(witnesses)}")
    for w in witnesses:
        print(f"  {w['extension']}: {w['module']}")
    if a.json:
        with open(a.json, "w") as fh:
            json.dump({"rows": rows, "witnesses": witnesses}, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
