"""Free normalizing and excellent extensions R ⊆ S of finite rings."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .config import limits
from .finmod import (
    FiniteModule,
    direct_sum,
    is_direct_summand,
    regular_left_module,
    submodules,
)
from .finring import FiniteGroup, FiniteRing, group_ring, matrix_ring
from .regularity import VnrCertificate, is_regular_module, vnr_check


class ProjectivityStatus(str, enum.Enum):
    ASSUMED = "assumed-by-construction"
    BOUNDED = "bounded-checked"
    UNCHECKED = "unchecked"


@dataclass(frozen=True, eq=False)
class RingEmbedding:
    small: FiniteRing
    big: FiniteRing
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.map, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class ExtensionDescriptor:
    """An embedding R -> S with a normalizing basis a_1 = 1, ..., a_n of S."""

    embedding: RingEmbedding
    basis: tuple[int, ...]
    projectivity_status: ProjectivityStatus
    projectivity_budget: Optional[int] = None
    name: str = ""

    @property
    def small(self) -> FiniteRing:
        return self.embedding.small

    @property
    def big(self) -> FiniteRing:
        return self.embedding.big

    @property
    def probative(self) -> bool:
        return self.projectivity_status != ProjectivityStatus.UNCHECKED

    @cached_property
    def terms(self) -> np.ndarray:
        """terms[r, i] = ι(r)·a_i."""
        S = self.big
        return S.mul[self.embedding.array[:, None], np.array(self.basis)[None, :]]

    @cached_property
    def combinations(self) -> np.ndarray:
        """For each coefficient tuple (mixed radix, a_1 slowest) the element Σ ι(r_i)·a_i."""
        return _sum_tuples(self.big, self.terms)

    @cached_property
    def coordinates(self) -> np.ndarray:
        """coordinates[s] = (s_1, ..., s_n) with s = Σ ι(s_i)·a_i."""
        R = self.small
        n = len(self.basis)
        combos = self.combinations
        if np.unique(combos).size != combos.size or combos.size != self.big.order:
            raise ValueError("basis is not left free; coordinates are undefined")
        tuples = np.array(list(itertools.product(range(R.order), repeat=n)), dtype=np.int64).reshape(-1, n)
        out = np.empty((self.big.order, n), dtype=np.int64)
        out[combos] = tuples
        return out


def _sum_tuples(S: FiniteRing, terms: np.ndarray) -> np.ndarray:
    """Σ_i terms[r_i, i] over every tuple (r_1..r_n), first coordinate slowest."""
    acc = np.zeros(1, dtype=np.int64)
    for i in range(terms.shape[1]):
        acc = S.add[acc[:, None], terms[:, i][None, :]].ravel()
    return acc


@dataclass(frozen=True)
class ExtensionReport:
    ok: bool
    clause: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def verify_free_normalizing(embedding: RingEmbedding, basis: Sequence[int]) -> ExtensionReport:
    """Check the embedding and every normalizing-basis clause exhaustively."""
    R, S, iota = embedding.small, embedding.big, embedding.array
    if iota.shape != (R.order,) or iota.min() < 0 or iota.max() >= S.order:
        return ExtensionReport(False, "embedding table", None)
    if np.unique(iota).size != R.order:
        return ExtensionReport(False, "injective", None)
    bad = np.argwhere(iota[R.add] != S.add[iota[:, None], iota[None, :]])
    if bad.size:
        return ExtensionReport(False, "additive", tuple(int(x) for x in bad[0]))
    bad = np.argwhere(iota[R.mul] != S.mul[iota[:, None], iota[None, :]])
    if bad.size:
        return ExtensionReport(False, "multiplicative", tuple(int(x) for x in bad[0]))
    if iota[R.one] != S.one:
        return ExtensionReport(False, "unital", None)
    basis = [int(a) for a in basis]
    if not basis or basis[0] != S.one:
        return ExtensionReport(False, "a_1=1", None)
    for i, a in enumerate(basis):
        right = set(S.mul[a, iota].tolist())
        left = set(S.mul[iota, a].tolist())
        if left != right:
            return ExtensionReport(False, "a_iR=Ra_i", (i,))
    left_terms = S.mul[iota[:, None], np.array(basis)[None, :]]
    right_terms = S.mul[np.array(basis)[None, :], iota[:, None]]
    for clause, terms in (("left free", left_terms), ("right free", right_terms)):
        combos = _sum_tuples(S, terms)
        if combos.size != S.order or np.unique(combos).size != S.order:
            return ExtensionReport(False, clause, None)
    return ExtensionReport(True)


def matrix_extension(ring: FiniteRing, n: int) -> ExtensionDescriptor:
    """R embedded as scalar matrices in M_n(R); basis 1 and the units e_ij, (i,j) != (1,1)."""
    S = matrix_ring(ring, n)
    codec = S.codec
    scalars = []
    for r in range(ring.order):
        c = np.zeros((n, n), dtype=np.int64)
        np.fill_diagonal(c, r)
        scalars.append(codec.encode(c))
    basis = [S.one]
    for i in range(n):
        for j in range(n):
            if (i, j) == (0, 0):
                continue
            c = np.zeros((n, n), dtype=np.int64)
            c[i, j] = ring.one
            basis.append(codec.encode(c))
    emb = RingEmbedding(ring, S, scalars)
    return ExtensionDescriptor(emb, tuple(basis), ProjectivityStatus.ASSUMED, name=f"MatExt({n},{ring.name})")


def group_ring_extension(ring: FiniteRing, group: FiniteGroup) -> ExtensionDescriptor:
    """R embedded as multiples of the identity in R[G]; basis the group elements, identity first.

    Excellence is assumed only when |G| is a unit of R.
    """
    S = group_ring(ring, group)
    codec = S.codec
    m = group.order
    scalars = []
    for r in range(ring.order):
        c = np.zeros(m, dtype=np.int64)
        c[0] = r
        scalars.append(codec.encode(c))
    basis = []
    for g in range(m):
        c = np.zeros(m, dtype=np.int64)
        c[g] = ring.one
        basis.append(codec.encode(c))
    size = ring.multiple(m, ring.one)
    invertible = bool((ring.mul[size] == ring.one).any())
    status = ProjectivityStatus.ASSUMED if invertible else ProjectivityStatus.UNCHECKED
    return ExtensionDescriptor(RingEmbedding(ring, S, scalars), tuple(basis), status,
                               name=f"GroupRingExt({ring.name},{group.name})")


def restrict_scalars(desc: ExtensionDescriptor, m: FiniteModule) -> FiniteModule:
    """The same carrier viewed over R: r·x := ι(r)·x."""
    if m.ring != desc.big:
        raise ValueError("module is not over the extension ring")
    return FiniteModule(desc.small, m.add, m.action[desc.embedding.array], m.labels, f"{m.name}|R")


def basis_coordinates(desc: ExtensionDescriptor, s: int) -> tuple[int, ...]:
    """The unique (s_1..s_n) in R^n with s = Σ ι(s_i)·a_i."""
    return tuple(int(x) for x in desc.coordinates[s])


@dataclass(frozen=True)
class TorsionReport:
    torsion_free: bool
    counterexample: Optional[tuple[int, tuple[int, ...]]] = None

    def __bool__(self):
        return self.torsion_free


def basis_torsion_free(desc: ExtensionDescriptor, m: FiniteModule) -> TorsionReport:
    """For all m and (r_i): (Σ ι(r_i)a_i)·m = 0 forces every ι(r_i)a_i·m = 0.

    The counterexample is the least element m, then the least coefficient tuple.
    """
    R = desc.small
    n = len(desc.basis)
    combos = desc.combinations  # indexed by tuple number
    tuples = np.array(list(itertools.product(range(R.order), repeat=n)), dtype=np.int64).reshape(-1, n)
    term_elems = desc.terms[tuples, np.arange(n)[None, :]]  # (T, n) elements of S
    for x in range(m.order):
        total_zero = m.action[combos, x] == 0
        term_nonzero = (m.action[term_elems, x] != 0).any(axis=1)
        bad = np.nonzero(total_zero & term_nonzero)[0]
        if bad.size:
            return TorsionReport(False, (x, tuple(int(v) for v in tuples[bad[0]])))
    return TorsionReport(True)


@dataclass(frozen=True)
class CyclicDecomposition:
    element: int
    direct: bool
    equals_cyclic: bool
    pieces: tuple[tuple[int, ...], ...]
    pairwise_trivial: bool

    def __bool__(self):
        return self.direct and self.equals_cyclic


def decompose_cyclic(desc: ExtensionDescriptor, m: FiniteModule, x: int) -> CyclicDecomposition:
    """Check that Sx is the internal direct sum of the R-submodules ι(R)a_i·x."""
    pieces = [tuple(np.unique(m.action[desc.terms[:, i], x]).tolist()) for i in range(len(desc.basis))]
    acc = np.zeros(1, dtype=np.int64)
    for p in pieces:
        acc = np.unique(m.add[acc[:, None], np.array(p)[None, :]])
    product = int(np.prod([len(p) for p in pieces], dtype=object))
    sx = np.unique(m.action[:, x])
    pairwise = all(set(p) & set(q) == {0} for p, q in itertools.combinations(pieces, 2))
    return CyclicDecomposition(int(x), acc.size == product, np.array_equal(acc, sx), tuple(pieces), pairwise)


@dataclass(frozen=True)
class ProjectivityReport:
    ok: bool
    descriptor: ExtensionDescriptor
    checked: tuple[str, ...] = ()
    skipped: tuple[str, ...] = ()
    counterexample: Optional[tuple[str, tuple[int, ...]]] = None

    def __bool__(self):
        return self.ok


def default_family(desc: ExtensionDescriptor) -> list[tuple[str, FiniteModule]]:
    reg = regular_left_module(desc.big)
    return [("S", reg), ("S+S", direct_sum(reg, reg).module)]


def left_projectivity_bounded_check(desc: ExtensionDescriptor,
                                    family: Optional[Sequence[tuple[str, FiniteModule]]] = None) -> ProjectivityReport:
    """Every S-submodule that is an R-summand must be an S-summand, over a finite family.

    Members above the lattice cap are skipped and listed. A pass upgrades an
    unchecked descriptor to bounded-checked; a failure carries the offending
    (module name, submodule elements).
    """
    family = default_family(desc) if family is None else list(family)
    cap = limits().lattice_order
    checked, skipped = [], []
    for label, m in family:
        if m.order > cap:
            skipped.append(label)
            continue
        m_r = restrict_scalars(desc, m)
        for sub in submodules(m):
            if is_direct_summand(sub.elements, m_r) and not is_direct_summand(sub):
                return ProjectivityReport(False, desc, tuple(checked), tuple(skipped), (label, sub.elements))
        checked.append(label)
    new = desc
    if desc.projectivity_status == ProjectivityStatus.UNCHECKED and checked:
        budget = sum(m.order for label, m in family if label in checked)
        new = replace(desc, projectivity_status=ProjectivityStatus.BOUNDED, projectivity_budget=budget)
    return ProjectivityReport(True, new, tuple(checked), tuple(skipped))


@dataclass(frozen=True)
class Theorem22Report:
    """Raw verdicts p = R-regular, q = S-regular, t = basis-torsion-free and both implications."""

    restricted_regular: bool
    regular: bool
    torsion_free: bool
    forward_holds: bool
    converse_holds: bool
    probative: bool

    @property
    def holds(self) -> bool:
        return self.forward_holds and self.converse_holds


def verify_theorem_2_2(desc: ExtensionDescriptor, m: FiniteModule) -> Theorem22Report:
    """Check R-regular ⇒ S-regular, and (S-regular ∧ basis-torsion-free) ⇒ R-regular."""
    p = bool(is_regular_module(restrict_scalars(desc, m)))
    q = bool(is_regular_module(m))
    t = bool(basis_torsion_free(desc, m))
    return Theorem22Report(p, q, t, (not p) or q, (not (q and t)) or p, desc.probative)


@dataclass(frozen=True)
class Projection:
    r: int
    s: int
    coordinates: tuple[int, ...]
    holds: bool


@dataclass(frozen=True)
class Corollary23Report:
    small: VnrCertificate
    big: VnrCertificate
    agree: bool
    projections: tuple[Projection, ...]
    probative: bool

    @property
    def holds(self) -> bool:
        return self.agree and all(p.holds for p in self.projections)


def verify_corollary_2_3(desc: ExtensionDescriptor) -> Corollary23Report:
    """Compare VNR of R and S; for each r project its S-witness s onto the a_1 coordinate.

    With s = Σ ι(s_i)·a_i, the first coefficient satisfies r = r·s_1·r.
    """
    R = desc.small
    cr, cs = vnr_check(R), vnr_check(desc.big)
    projections = []
    if cs.regular:
        for r in range(R.order):
            s = cs.witnesses[int(desc.embedding.array[r])]
            coords = basis_coordinates(desc, s)
            projections.append(Projection(r, s, coords, R.mul3(r, coords[0], r) == r))
    return Corollary23Report(cr, cs, cr.regular == cs.regular, tuple(projections), desc.probative)
