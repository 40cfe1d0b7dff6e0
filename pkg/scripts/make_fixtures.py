"""Regenerate the bundled table fixtures in src/regulus/fixtures.

    python3 scripts/make_fixtures.py [--check]

With ``--check`` nothing is written; the script exits non-zero if any file on
disk differs from what it would generate.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from regulus.finmod import FiniteModule, pullback_module, quotient_module, regular_left_module, span
from regulus.finring import cyclic_group, cyclic_ring, group_ring, matrix_ring, product_ring, ring_from_tables
from regulus.morita import Bimodule, MoritaContext, check_context
from regulus.tables import FIXTURE_DIR, dump_context, dump_module, dump_ring


def f4():
    # a + b*w with w^2 = w + 1, index a + 2b
    def mul(x, y):
        a, b = x & 1, x >> 1
        c, d = y & 1, y >> 1
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd(w + 1)
        return ((a * c + b * d) % 2) | (((a * d + b * c + b * d) % 2) << 1)

    add = np.array([[x ^ y for y in range(4)] for x in range(4)])
    tab = np.array([[mul(x, y) for y in range(4)] for x in range(4)])
    return ring_from_tables(add, tab, 1, ["0", "1", "w", "w+1"], "F4")


def cyclic_over(d, n):
    """Z/d as a module over Z/n (d divides n)."""
    small = regular_left_module(cyclic_ring(d))
    return pullback_module(small, cyclic_ring(n), [r % d for r in range(n)], f"Z{d}_over_Z{n}")


def component(k):
    """Z/2 x Z/2 acting on Z/2 through coordinate k."""
    R = product_ring(cyclic_ring(2), cyclic_ring(2))
    small = regular_left_module(cyclic_ring(2))
    ring_map = [divmod(r, 2)[k] for r in range(R.order)]
    return pullback_module(small, R, ring_map, f"Z2_coord{k}")


def group_ring_character(p, sign):
    """Z/p with g acting by +1 or -1, over (Z/p)[C2]."""
    S = group_ring(cyclic_ring(p), cyclic_group(2))
    coords = S.codec.all_coords  # (a, b) for a + b*g
    g = -1 if sign else 1
    action = np.array([[(int(c[0]) + g * int(c[1])) * v % p for v in range(p)] for c in coords])
    add = np.array([[(a + b) % p for b in range(p)] for a in range(p)])
    return FiniteModule(S, add, action, tuple(str(v) for v in range(p)), "sign" if sign else "trivial")


def socle_quotient():
    """S/xS for S = (Z/2)[C2] and x = 1 + g."""
    S = group_ring(cyclic_ring(2), cyclic_group(2))
    x = S.codec.encode([1, 1])
    reg = regular_left_module(S)
    return quotient_module(span(reg, [x]), "S_mod_xS")


def row_column_context():
    """F2 and M2(F2) paired through row vectors, column vectors, and the two products."""
    R = cyclic_ring(2)
    S = matrix_ring(R, 2)
    vecs = [(a, b) for a in range(2) for b in range(2)]  # index 2a + b
    idx = {v: i for i, v in enumerate(vecs)}
    mats = [S.codec.decode(i) for i in range(S.order)]
    add = np.array([[idx[((u[0] + v[0]) % 2, (u[1] + v[1]) % 2)] for v in vecs] for u in vecs])
    scal = np.array([[idx[(r * v[0] % 2, r * v[1] % 2)] for v in vecs] for r in range(2)])
    labels = tuple(f"{a}{b}" for a, b in vecs)
    rows = FiniteModule(R, add, scal, labels, "rows")
    cols = FiniteModule(S, add, np.array([[idx[tuple(int(t) % 2 for t in A @ np.array(v))] for v in vecs] for A in mats]),
                        labels, "cols")
    row_right = np.array([[idx[tuple(int(t) % 2 for t in np.array(v) @ A)] for A in mats] for v in vecs])
    M = Bimodule(rows, S, row_right)
    N = Bimodule(cols, R, scal.T.copy())
    phi = np.array([[(m[0] * n[0] + m[1] * n[1]) % 2 for n in vecs] for m in vecs])
    psi = np.array([[S.codec.encode((np.outer(n, m) % 2).ravel()) for m in vecs] for n in vecs])
    ctx = MoritaContext(R, S, M, N, phi, psi, "row_col")
    rep = check_context(ctx)
    assert rep, rep
    return ctx


def build() -> dict[str, str]:
    files = {"f4.ring": dump_ring(f4())}
    for d, n in [(2, 4), (2, 6), (3, 6), (2, 8), (4, 8)]:
        files[f"z{d}_over_z{n}.mod"] = dump_module(cyclic_over(d, n))
    files["z2xz2_first.mod"] = dump_module(component(0))
    files["z2xz2_second.mod"] = dump_module(component(1))
    files["trivial_z3c2.mod"] = dump_module(group_ring_character(3, False))
    files["sign_z3c2.mod"] = dump_module(group_ring_character(3, True))
    files["trivial_z2c2.mod"] = dump_module(group_ring_character(2, False))
    files["socle_quotient_z2c2.mod"] = dump_module(socle_quotient())
    files["row_col.ctx"] = dump_context(row_column_context())
    return files


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare instead of writing")
    ap.add_argument("--out", type=Path, default=FIXTURE_DIR)
    args = ap.parse_args(argv)
    stale = []
    for name, text in build().items():
        path = args.out / name
        if args.check:
            if not path.is_file() or path.read_text() != text:
                stale.append(name)
        else:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            print(f"wrote {path}")
    if stale:
        print("stale fixtures: " + ", ".join(stale))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
