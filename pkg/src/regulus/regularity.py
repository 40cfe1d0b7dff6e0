"""Von Neumann regularity of rings and relative regularity of modules.

Three independent routes decide whether a module is regular:

* :func:`is_relative_regular` searches, for every f: U -> M, a companion
  g: M -> U with f∘g∘f = f;
* :func:`relative_regular_via_summands` asks instead that every kernel be a
  summand of U and every image a summand of M;
* :func:`zelmanowitz_check` asks that every cyclic submodule be projective and a
  summand.

All searches are exhaustive and return the least witness in lexicographic table
order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .finmod import (
    FiniteModule,
    ModuleHom,
    SummandCertificate,
    Submodule,
    cyclic_submodule,
    hom_array,
    image,
    is_direct_summand,
    kernel,
    regular_left_module,
)
from .finring import FiniteRing


@dataclass(frozen=True)
class VnrCertificate:
    ring: FiniteRing
    regular: bool
    witnesses: Optional[tuple[int, ...]] = None
    counterexample: Optional[int] = None

    def __bool__(self):
        return self.regular

    def replay(self) -> bool:
        r = self.ring
        if self.regular:
            if self.witnesses is None or len(self.witnesses) != r.order:
                return False
            return all(r.mul3(x, s, x) == x for x, s in enumerate(self.witnesses))
        x = self.counterexample
        return x is not None and element_witness(r, x) is None


def element_witness(ring: FiniteRing, r: int) -> Optional[int]:
    """Least s with r*s*r = r, or None."""
    hits = np.nonzero(ring.mul[ring.mul[r], r] == r)[0]
    return int(hits[0]) if hits.size else None


def vnr_check(ring: FiniteRing) -> VnrCertificate:
    """Scan every element for a von Neumann witness."""
    # rsr for all (r, s) at once: mul[mul[r, s], r]
    rs = ring.mul
    rsr = ring.mul[rs, np.arange(ring.order)[:, None]]
    good = rsr == np.arange(ring.order)[:, None]
    has = good.any(axis=1)
    if not has.all():
        return VnrCertificate(ring, False, counterexample=int(np.argmin(has)))
    return VnrCertificate(ring, True, witnesses=tuple(int(s) for s in np.argmax(good, axis=1)))


@dataclass(frozen=True)
class RelativeRegularityCertificate:
    """Verdict of the definitional U-regularity search.

    On success ``pairs`` lists every f: U -> M with its least companion g. On
    failure ``failure`` is the least f with no companion and ``pairs`` holds
    the companions found for the homs before it.
    """

    module: FiniteModule
    relator: FiniteModule
    regular: bool
    pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()
    failure: Optional[tuple[int, ...]] = None
    hom_count: int = 0

    def __bool__(self):
        return self.regular

    def replay(self) -> bool:
        """Re-verify every (f, g) pair by table composition."""
        from .finmod import is_hom

        for f, g in self.pairs:
            f_arr, g_arr = np.array(f), np.array(g)
            if not is_hom(self.relator, self.module, f) or not is_hom(self.module, self.relator, g):
                return False
            if not (f_arr[g_arr[f_arr]] == f_arr).all():
                return False
        if self.regular:
            return len(self.pairs) == self.hom_count
        return self.failure is not None and is_hom(self.relator, self.module, self.failure)


def is_relative_regular(m: FiniteModule, u: FiniteModule, budget: Optional[int] = None) -> RelativeRegularityCertificate:
    """Decide whether M is U-regular: every f: U -> M has g: M -> U with f∘g∘f = f."""
    fs = hom_array(u, m, budget)
    gs = hom_array(m, u, budget)
    pairs = []
    for f in fs:
        # (f∘g∘f)(x) = f[g[f[x]]] for every g at once
        fgf = f[gs[:, f]]
        ok = (fgf == f).all(axis=1)
        if not ok.any():
            return RelativeRegularityCertificate(m, u, False, tuple(pairs), tuple(f.tolist()), fs.shape[0])
        pairs.append((tuple(f.tolist()), tuple(gs[int(np.argmax(ok))].tolist())))
    return RelativeRegularityCertificate(m, u, True, tuple(pairs), None, fs.shape[0])


@dataclass(frozen=True)
class SummandEntry:
    hom: tuple[int, ...]
    kernel: SummandCertificate
    image: SummandCertificate


@dataclass(frozen=True)
class SummandRegularityReport:
    """Kernel/image summand verdicts for every f: U -> M."""

    module: FiniteModule
    relator: FiniteModule
    regular: bool
    entries: tuple[SummandEntry, ...] = ()
    failure: Optional[tuple[int, ...]] = None

    def __bool__(self):
        return self.regular

    def replay(self) -> bool:
        return all(e.kernel.replay() and e.image.replay() for e in self.entries)


def relative_regular_via_summands(m: FiniteModule, u: FiniteModule,
                                  budget: Optional[int] = None) -> SummandRegularityReport:
    """Decide U-regularity by asking that every kernel and image be a direct summand."""
    cache: dict[tuple, SummandCertificate] = {}

    def summand(sub: Submodule) -> SummandCertificate:
        key = (id(sub.parent), sub.elements)
        if key not in cache:
            cache[key] = is_direct_summand(sub, budget=budget)
        return cache[key]

    entries = []
    for row in hom_array(u, m, budget):
        f = ModuleHom(u, m, row)
        k = summand(kernel(f))
        i = summand(image(f))
        entries.append(SummandEntry(f.map, k, i))
        if not (k and i):
            return SummandRegularityReport(m, u, False, tuple(entries), f.map)
    return SummandRegularityReport(m, u, True, tuple(entries), None)


def is_regular_module(m: FiniteModule, budget: Optional[int] = None) -> RelativeRegularityCertificate:
    """M is regular iff it is R-regular for its base ring R."""
    return is_relative_regular(m, regular_left_module(m.ring), budget)


@dataclass(frozen=True)
class CyclicProjectivity:
    element: int
    projective: bool
    evaluation: ModuleHom
    kernel_summand: SummandCertificate

    def __bool__(self):
        return self.projective


def cyclic_projective(m: FiniteModule, x: int, budget: Optional[int] = None) -> CyclicProjectivity:
    """Is Rx projective? True iff the kernel of r -> r*x is a summand of R."""
    reg = regular_left_module(m.ring)
    ev = ModuleHom(reg, m, m.action[:, x])
    cert = is_direct_summand(kernel(ev), budget=budget)
    return CyclicProjectivity(int(x), cert.is_summand, ev, cert)


@dataclass(frozen=True)
class ZelmanowitzReport:
    module: FiniteModule
    regular: bool
    failure: Optional[int] = None
    reason: Optional[str] = None
    certificates: dict = field(default_factory=dict, compare=False, repr=False)

    def __bool__(self):
        return self.regular


def zelmanowitz_check(m: FiniteModule, budget: Optional[int] = None) -> ZelmanowitzReport:
    """Every cyclic submodule projective and a direct summand of M."""
    done: dict[tuple, tuple] = {}
    for x in range(m.order):
        sub = cyclic_submodule(m, x)
        if sub.elements in done:
            continue
        proj = cyclic_projective(m, x, budget)
        if not proj:
            return ZelmanowitzReport(m, False, x, "cyclic submodule not projective", done)
        summ = is_direct_summand(sub, budget=budget)
        if not summ:
            return ZelmanowitzReport(m, False, x, "cyclic submodule not a direct summand", done)
        done[sub.elements] = (proj, summ)
    return ZelmanowitzReport(m, True, None, None, done)
