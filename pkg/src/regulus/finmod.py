"""Finite left modules over finite rings, their homomorphisms and summands."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import _search
from .config import StructureError, check_lattice_order, check_module_order, limits
from .finring import AxiomReport, FiniteRing, _TableEquality, _digest, _frozen_table, _least, scan_triples


@dataclass(frozen=True, eq=False)
class FiniteModule(_TableEquality):
    """A finite left module: ``action[r, m]`` is the index of r*m."""

    ring: FiniteRing
    add: np.ndarray
    action: np.ndarray
    labels: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        add = _frozen_table(self.add, "add")
        act = _frozen_table(self.action, "action")
        n = add.shape[0]
        if add.shape != (n, n) or n < 1:
            raise StructureError(f"module addition table must be square, got {add.shape}")
        if act.shape != (self.ring.order, n):
            raise StructureError(f"action table must have shape {(self.ring.order, n)}, got {act.shape}")
        if add.min() < 0 or add.max() >= n or act.min() < 0 or act.max() >= n:
            raise StructureError("table entries out of range")
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise StructureError(f"expected {n} labels, got {len(labels)}")
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "action", act)
        object.__setattr__(self, "labels", labels)

    def _key(self) -> str:
        return _digest(self.add, self.action, extra=("module", self.ring._cached_key))

    def __repr__(self):
        return f"FiniteModule({self.name or '?'}, order={self.order}, over {self.ring.name or '?'})"

    @property
    def order(self) -> int:
        return self.add.shape[0]

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == 0, axis=1)

    def plus(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def act(self, r: int, m: int) -> int:
        return int(self.action[r, m])


@dataclass(frozen=True, eq=False)
class ModuleHom:
    """A homomorphism stored as its full table of images."""

    source: FiniteModule
    target: FiniteModule
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if len(self.map) != self.source.order:
            raise StructureError("hom table length must equal the source order")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other):
        if not isinstance(other, ModuleHom):
            return NotImplemented
        return self.map == other.map and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.map)

    def __lt__(self, other: "ModuleHom"):
        return self.map < other.map

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.map, dtype=np.int64)

    def is_valid(self) -> bool:
        return is_hom(self.source, self.target, self.map)


def is_hom(source: FiniteModule, target: FiniteModule, table: Sequence[int]) -> bool:
    f = np.asarray(table, dtype=np.int64)
    if f.shape != (source.order,) or f.min() < 0 or f.max() >= target.order:
        return False
    if f[0] != 0:
        return False
    if not (f[source.add] == target.add[f[:, None], f[None, :]]).all():
        return False
    return bool((f[source.action] == target.action[:, f]).all())


def compose(f: ModuleHom, g: ModuleHom) -> ModuleHom:
    """f after g."""
    if g.target != f.source:
        raise StructureError("composition needs g.target == f.source")
    return ModuleHom(g.source, f.target, f.array[g.array])


def identity_hom(m: FiniteModule) -> ModuleHom:
    return ModuleHom(m, m, range(m.order))


def zero_hom(source: FiniteModule, target: FiniteModule) -> ModuleHom:
    return ModuleHom(source, target, [0] * source.order)


@dataclass(frozen=True, eq=False)
class Submodule:
    parent: FiniteModule
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted({int(x) for x in self.elements})))

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.elements == other.elements and self.parent == other.parent

    def __hash__(self):
        return hash(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return int(x) in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64)

    def is_valid(self) -> bool:
        a = self.array
        if a.size == 0 or a[0] != 0:
            return False
        sums = self.parent.add[a[:, None], a[None, :]]
        prods = self.parent.action[:, a]
        return bool(np.isin(sums, a).all() and np.isin(prods, a).all())

    def as_module(self, name: str = "") -> FiniteModule:
        """The submodule as a module in its own right, elements renumbered ascending."""
        a = self.array
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[a] = np.arange(a.size)
        add = pos[self.parent.add[np.ix_(a, a)]]
        act = pos[self.parent.action[:, a]]
        labels = tuple(self.parent.labels[x] for x in a)
        return FiniteModule(self.parent.ring, add, act, labels, name or f"sub({self.parent.name})")

    def inclusion(self, name: str = "") -> ModuleHom:
        return ModuleHom(self.as_module(name), self.parent, self.elements)


def check_module_axioms(ring: FiniteRing, add, action) -> AxiomReport:
    """Exhaustive scan of the left module axioms on candidate tables."""
    add = np.asarray(add, dtype=np.int64)
    act = np.asarray(action, dtype=np.int64)
    if add.ndim != 2 or act.ndim != 2:
        raise StructureError("tables must be two-dimensional")
    n = add.shape[0]
    if add.shape != (n, n) or act.shape != (ring.order, n) or n == 0:
        raise StructureError(f"dimension mismatch: add {add.shape}, action {act.shape}, ring order {ring.order}")
    if add.min() < 0 or add.max() >= n or act.min() < 0 or act.max() >= n:
        raise StructureError("table entries out of range")
    idx = np.arange(n)
    w = scan_triples(n, lambda a: add[add[a][:, :, None], idx[None, None, :]]
                     != add[a[:, None, None], add[None, :, :]])
    if w is not None:
        return AxiomReport(False, "additive associativity", w)
    w = _least(add != add.T)
    if w is not None:
        return AxiomReport(False, "additive commutativity", w)
    w = _least(add[0] != idx)
    if w is not None:
        return AxiomReport(False, "additive identity", w)
    w = _least(~(add == 0).any(axis=1))
    if w is not None:
        return AxiomReport(False, "additive inverses", w)
    # r(m + m') = rm + rm'
    w = _least(act[:, add] != add[act[:, :, None], act[:, None, :]])
    if w is not None:
        return AxiomReport(False, "r(m+m')=rm+rm'", w)
    # (r + r')m = rm + r'm
    w = _least(act[ring.add] != add[act[:, None, :], act[None, :, :]])
    if w is not None:
        return AxiomReport(False, "(r+r')m=rm+r'm", w)
    # (rr')m = r(r'm)
    w = _least(act[ring.mul] != act[:, act])
    if w is not None:
        return AxiomReport(False, "(rr')m=r(r'm)", w)
    w = _least(act[ring.one] != idx)
    if w is not None:
        return AxiomReport(False, "1m=m", w)
    return AxiomReport(True)


@lru_cache(maxsize=None)
def regular_left_module(ring: FiniteRing) -> FiniteModule:
    return FiniteModule(ring, ring.add, ring.mul, ring.labels, f"{ring.name or 'R'}")


def zero_module(ring: FiniteRing) -> FiniteModule:
    return FiniteModule(ring, [[0]], np.zeros((ring.order, 1), dtype=np.int64), ("0",), "0")


@dataclass(frozen=True, eq=False)
class DirectSum:
    """M1 (+) M2 with its four canonical maps; element (a, b) has index a*|M2| + b."""

    module: FiniteModule
    inclusions: tuple[ModuleHom, ModuleHom]
    projections: tuple[ModuleHom, ModuleHom]


def direct_sum(m1: FiniteModule, m2: FiniteModule) -> DirectSum:
    if m1.ring != m2.ring:
        raise StructureError("direct sum needs modules over the same ring")
    n2 = m2.order
    n = m1.order * n2
    check_module_order(n, "direct sum")
    a, b = np.divmod(np.arange(n), n2)
    add = m1.add[a[:, None], a[None, :]] * n2 + m2.add[b[:, None], b[None, :]]
    act = m1.action[:, a] * n2 + m2.action[:, b]
    labels = tuple(f"({m1.labels[x]},{m2.labels[y]})" for x, y in zip(a, b))
    s = FiniteModule(m1.ring, add, act, labels, f"{m1.name}+{m2.name}")
    inc = (ModuleHom(m1, s, np.arange(m1.order) * n2), ModuleHom(m2, s, np.arange(n2)))
    proj = (ModuleHom(s, m1, a), ModuleHom(s, m2, b))
    return DirectSum(s, inc, proj)


def direct_power(m: FiniteModule, k: int) -> FiniteModule:
    if k < 0:
        raise ValueError("power must be non-negative")
    if k == 0:
        return zero_module(m.ring)
    out = m
    for _ in range(k - 1):
        out = direct_sum(out, m).module
    return FiniteModule(m.ring, out.add, out.action, out.labels, f"{m.name}^{k}")


def free_module(ring: FiniteRing, k: int) -> FiniteModule:
    return direct_power(regular_left_module(ring), k)


def pullback_module(m: FiniteModule, ring: FiniteRing, ring_map: Sequence[int], name: str = "") -> FiniteModule:
    """M viewed over ``ring`` through a unital ring map ``ring -> m.ring``."""
    ring_map = np.asarray(ring_map, dtype=np.int64)
    if ring_map.shape != (ring.order,):
        raise StructureError("ring map must have one entry per element")
    return FiniteModule(ring, m.add, m.action[ring_map], m.labels, name or m.name)


def quotient_module(n: "Submodule", name: str = "") -> FiniteModule:
    """M/N; cosets are numbered by their least representative, so 0 stays the zero."""
    m = n.parent
    els = np.asarray(n.elements, dtype=np.int64)
    label = np.full(m.order, -1, dtype=np.int64)
    reps = []
    for x in range(m.order):
        if label[x] < 0:
            label[m.add[x, els]] = len(reps)
            reps.append(x)
    reps = np.array(reps, dtype=np.int64)
    add = label[m.add[reps[:, None], reps[None, :]]]
    action = label[m.action[:, reps]]
    labels = tuple(f"{m.labels[x]}+N" for x in reps)
    return FiniteModule(m.ring, add, action, labels, name or f"{m.name}/N")


def span(m: FiniteModule, elements: Iterable[int]) -> Submodule:
    return Submodule(m, _search.closure(m.add, m.action, list(elements)).tolist())


def minimal_generators(m: FiniteModule) -> list[int]:
    """Greedy generating set: repeatedly add the least element outside the span."""
    return _search.greedy_generators(m.add, m.action)


def _hom_budget(budget: Optional[int]) -> int:
    return limits().hom_budget if budget is None else budget


def _same_ring(u: FiniteModule, m: FiniteModule):
    if u.ring != m.ring:
        raise StructureError("modules must share a base ring")


@lru_cache(maxsize=4096)
def _hom_array(u: FiniteModule, m: FiniteModule, budget: int) -> np.ndarray:
    gens = minimal_generators(u)
    choices = [range(m.order)] * len(gens)
    maps = _search.extend_maps(u.add, u.action, m.add, m.action, gens, choices, budget=budget)
    maps = _search.sort_rows(maps)
    maps.setflags(write=False)
    return maps


def hom_array(u: FiniteModule, m: FiniteModule, budget: Optional[int] = None) -> np.ndarray:
    """All homs U -> M as rows of an array, in lexicographic table order."""
    _same_ring(u, m)
    # checked outside the cache so a lowered cap still applies to cached pairs
    check_module_order(u.order)
    check_module_order(m.order)
    return _hom_array(u, m, _hom_budget(budget))


def enumerate_homs(u: FiniteModule, m: FiniteModule, budget: Optional[int] = None) -> list[ModuleHom]:
    """Every homomorphism U -> M, least table first.

    Raises :class:`BudgetExceeded` when |M|^(number of generators of U) exceeds
    the budget.
    """
    return [ModuleHom(u, m, row) for row in hom_array(u, m, budget)]


def kernel(f: ModuleHom) -> Submodule:
    return Submodule(f.source, np.nonzero(f.array == 0)[0].tolist())


def image(f: ModuleHom) -> Submodule:
    return Submodule(f.target, np.unique(f.array).tolist())


def cyclic_submodule(m: FiniteModule, x: int) -> Submodule:
    """The submodule R*x."""
    return Submodule(m, np.unique(m.action[:, x]).tolist())


@dataclass(frozen=True)
class SummandCertificate:
    """Whether a submodule is a direct summand, with an idempotent endomorphism as witness."""

    submodule: Submodule
    is_summand: bool
    idempotent: Optional[ModuleHom] = None

    def __bool__(self):
        return self.is_summand

    def replay(self) -> bool:
        """Re-verify the witness from scratch."""
        if not self.is_summand:
            return self.idempotent is None
        e = self.idempotent
        if e is None or not e.is_valid() or e.source != self.submodule.parent:
            return False
        arr = e.array
        return bool((arr[arr] == arr).all()) and tuple(np.unique(arr).tolist()) == self.submodule.elements


def _as_submodule(n: Union[Submodule, Iterable[int]], m: Optional[FiniteModule]) -> Submodule:
    if isinstance(n, Submodule):
        if m is not None and n.parent != m:
            raise StructureError("submodule belongs to a different module")
        return n
    if m is None:
        raise StructureError("an element set needs its parent module")
    return Submodule(m, n)


def retractions(n: Submodule, budget: Optional[int] = None) -> np.ndarray:
    """All endomorphisms of the parent that fix N pointwise and map into N.

    These are exactly the idempotent endomorphisms with image N. Rows are in
    lexicographic order.
    """
    m = n.parent
    check_module_order(m.order)
    # generators of N first, then extend to a generating set of M
    n_gens = _greedy_within(m, n)
    gens = _search.greedy_generators(m.add, m.action, n_gens)
    choices = [[g] for g in n_gens] + [n.elements] * (len(gens) - len(n_gens))
    maps = _search.extend_maps(m.add, m.action, m.add, m.action, gens, choices, budget=_hom_budget(budget))
    return _search.sort_rows(maps)


def _greedy_within(m: FiniteModule, n: Submodule) -> list[int]:
    gens: list[int] = []
    current = np.zeros(1, dtype=np.int64)
    for x in n.elements:
        if len(current) == len(n):
            break
        if x in set(current.tolist()):
            continue
        gens.append(x)
        current = _search.grow_span(m.add, m.action, current, x)
    return gens


def is_direct_summand(n: Union[Submodule, Iterable[int]], m: Optional[FiniteModule] = None,
                      budget: Optional[int] = None) -> SummandCertificate:
    """Decide whether N is a direct summand of M.

    Searches the endomorphisms of M for an idempotent with image exactly N and
    returns the least one. The search is restricted to maps fixing N and landing
    in N, which is the same set of idempotents.
    """
    n = _as_submodule(n, m)
    rows = retractions(n, budget)
    if rows.shape[0] == 0:
        return SummandCertificate(n, False)
    return SummandCertificate(n, True, ModuleHom(n.parent, n.parent, rows[0]))


def submodules(m: FiniteModule) -> list[Submodule]:
    """The full submodule lattice, ordered by size then elements."""
    check_lattice_order(m.order)
    cyclic = {tuple(np.unique(m.action[:, x]).tolist()) for x in range(m.order)}
    found = set(cyclic) | {(0,)}
    frontier = list(found)
    cyclic = sorted(cyclic)
    while frontier:
        nxt = []
        for a in frontier:
            arr = np.array(a)
            aset = set(a)
            for c in cyclic:
                if set(c) <= aset:
                    continue
                joined = tuple(np.unique(m.add[arr[:, None], np.array(c)[None, :]]).tolist())
                if joined not in found:
                    found.add(joined)
                    nxt.append(joined)
        frontier = nxt
    return [Submodule(m, s) for s in sorted(found, key=lambda s: (len(s), s))]


def find_complement(n: Union[Submodule, Iterable[int]], m: Optional[FiniteModule] = None) -> Optional[Submodule]:
    """A submodule N' with N ∩ N' = 0 and N + N' = M, or None.

    Independent of the idempotent search: tries complements generated by at most
    three elements first, then falls back to the full submodule lattice.
    """
    n = _as_submodule(n, m)
    m = n.parent
    if len(n) == m.order:
        return Submodule(m, [0])
    target = m.order // len(n)
    if target * len(n) != m.order:
        return None
    in_n = np.zeros(m.order, dtype=bool)
    in_n[n.array] = True

    def complements(sub: np.ndarray) -> bool:
        if sub.size != target:
            return False
        return int(in_n[sub].sum()) == 1  # only 0 shared; sizes force N + N' = M

    free = [x for x in range(1, m.order) if int(in_n[np.unique(m.action[:, x])].sum()) == 1]
    seen: set[tuple] = set()
    for size, limit in ((1, None), (2, 64), (3, 24)):
        if limit is not None and len(free) > limit:
            break
        for combo in itertools.combinations(free, size):
            sub = _search.closure(m.add, m.action, combo)
            key = tuple(sub.tolist())
            if key in seen:
                continue
            seen.add(key)
            if complements(sub):
                return Submodule(m, key)
    for sub in submodules(m):
        if complements(sub.array):
            return sub
    return None


def find_module_isomorphism(m1: FiniteModule, m2: FiniteModule,
                            budget: Optional[int] = None) -> Optional[ModuleHom]:
    """Least bijective homomorphism M1 -> M2, or None after exhaustive search."""
    _same_ring(m1, m2)
    if m1.order != m2.order:
        return None
    gens = minimal_generators(m1)
    choices = [range(m2.order)] * len(gens)
    maps = _search.extend_maps(m1.add, m1.action, m2.add, m2.action, gens, choices,
                               prune=_search.injective_rows, budget=_hom_budget(budget))
    if maps.shape[0] == 0:
        return None
    return ModuleHom(m1, m2, _search.sort_rows(maps)[0])


def element_annihilator(m: FiniteModule, x: int) -> list[int]:
    return np.nonzero(m.action[:, x] == 0)[0].tolist()
