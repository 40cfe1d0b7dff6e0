"""Morita contexts, their generalized matrix rings, and progenerator equivalences.

Right modules are handled as left modules over the opposite ring. Endomorphism
rings use the multiplication s·s' = s'∘s, so that Hom(P, M) is a left module
under s·h = h∘s.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import StructureError, check_ring_order, limits
from .finmod import (
    FiniteModule,
    ModuleHom,
    Submodule,
    direct_power,
    hom_array,
    image,
    is_direct_summand,
    regular_left_module,
    zero_module,
)
from .finring import (
    FiniteRing,
    check_ring_axioms,
    corner_ring,
    find_ring_isomorphism,
    is_idempotent_family,
    opposite_ring,
)
from .regularity import is_regular_module, is_relative_regular, vnr_check


@dataclass(frozen=True, eq=False)
class Bimodule:
    """An R-S bimodule: a left R-module with a right S-action ``right[m, s]``."""

    carrier: FiniteModule
    right_ring: FiniteRing
    right: np.ndarray

    def __post_init__(self):
        right = np.array(self.right, dtype=np.int64)
        if right.shape != (self.carrier.order, self.right_ring.order):
            raise StructureError(f"right action must have shape {(self.carrier.order, self.right_ring.order)}")
        right.setflags(write=False)
        object.__setattr__(self, "right", right)

    @property
    def left_ring(self) -> FiniteRing:
        return self.carrier.ring

    @property
    def order(self) -> int:
        return self.carrier.order

    def as_right_module(self) -> FiniteModule:
        """The right S-module as a left module over S^op."""
        return FiniteModule(opposite_ring(self.right_ring), self.carrier.add, self.right.T.copy(),
                            self.carrier.labels, f"{self.carrier.name}_S")


def regular_bimodule(ring: FiniteRing) -> Bimodule:
    return Bimodule(regular_left_module(ring), ring, ring.mul)


def zero_bimodule(left: FiniteRing, right: FiniteRing) -> Bimodule:
    return Bimodule(zero_module(left), right, np.zeros((1, right.order), dtype=np.int64))


@dataclass(frozen=True, eq=False)
class MoritaContext:
    R: FiniteRing
    S: FiniteRing
    M: Bimodule  # R-S
    N: Bimodule  # S-R
    phi: np.ndarray  # |M| x |N| -> R
    psi: np.ndarray  # |N| x |M| -> S
    name: str = ""

    def __post_init__(self):
        for label, t, shape, top in (("phi", self.phi, (self.M.order, self.N.order), self.R.order),
                                     ("psi", self.psi, (self.N.order, self.M.order), self.S.order)):
            arr = np.array(t, dtype=np.int64)
            if arr.shape != shape or arr.min() < 0 or arr.max() >= top:
                raise StructureError(f"{label} table must have shape {shape} with entries below {top}")
            arr.setflags(write=False)
            object.__setattr__(self, label, arr)
        if self.M.left_ring != self.R or self.M.right_ring != self.S:
            raise StructureError("M must be an R-S bimodule")
        if self.N.left_ring != self.S or self.N.right_ring != self.R:
            raise StructureError("N must be an S-R bimodule")


@dataclass(frozen=True)
class ContextReport:
    ok: bool
    clause: Optional[str] = None
    witness: Optional[tuple[int, ...]] = None
    failed: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def _first(bad: np.ndarray) -> Optional[tuple[int, ...]]:
    hits = np.argwhere(bad)
    return tuple(int(x) for x in hits[0]) if hits.size else None


def _bimodule_clauses(name: str, b: Bimodule) -> list[tuple[str, Optional[tuple]]]:
    from .finmod import check_module_axioms

    out = []
    rep = check_module_axioms(b.left_ring, b.carrier.add, b.carrier.action)
    out.append((f"{name} left module ({rep.axiom})" if not rep else f"{name} left module", rep.witness))
    rm = b.as_right_module()
    rep = check_module_axioms(rm.ring, rm.add, rm.action)
    out.append((f"{name} right module ({rep.axiom})" if not rep else f"{name} right module", rep.witness))
    # (r m) s = r (m s), indexed (r, m, s)
    bad = b.right[b.carrier.action] != b.carrier.action[:, b.right]
    out.append((f"{name} (rm)s=r(ms)", _first(bad)))
    return out


def check_context(ctx: MoritaContext) -> ContextReport:
    """Exhaustively check bimodule axioms, bilinearity, balancedness and Eqs. (3)-(4).

    The report names the first failing clause with its least witness and lists
    every failing clause.
    """
    R, S, M, N, phi, psi = ctx.R, ctx.S, ctx.M, ctx.N, ctx.phi, ctx.psi
    Ma, Na = M.carrier, N.carrier
    rR, rS = np.arange(R.order), np.arange(S.order)
    clauses = _bimodule_clauses("M", M) + _bimodule_clauses("N", N)
    clauses += [
        # phi(m+m', n) = phi(m,n) + phi(m',n), indexed (m, m', n)
        ("phi additive in M", _first(phi[Ma.add] != R.add[phi[:, None, :], phi[None, :, :]])),
        # indexed (m, n, n')
        ("phi additive in N", _first(phi[:, Na.add] != R.add[phi[:, :, None], phi[:, None, :]])),
        # phi(r m, n) = r phi(m, n), indexed (r, m, n)
        ("phi left R-linear", _first(phi[Ma.action] != R.mul[rR[:, None, None], phi[None]])),
        # phi(m, n r) = phi(m, n) r, indexed (m, n, r)
        ("phi right R-linear", _first(phi[:, N.right] != R.mul[phi[:, :, None], rR[None, None, :]])),
        # phi(m s, n) = phi(m, s n), indexed (m, s, n)
        ("phi S-balanced", _first(phi[M.right] != phi[:, Na.action])),
        ("psi additive in N", _first(psi[Na.add] != S.add[psi[:, None, :], psi[None, :, :]])),
        ("psi additive in M", _first(psi[:, Ma.add] != S.add[psi[:, :, None], psi[:, None, :]])),
        ("psi left S-linear", _first(psi[Na.action] != S.mul[rS[:, None, None], psi[None]])),
        ("psi right S-linear", _first(psi[:, M.right] != S.mul[psi[:, :, None], rS[None, None, :]])),
        # psi(n r, m) = psi(n, r m), indexed (n, r, m)
        ("psi R-balanced", _first(psi[N.right] != psi[:, Ma.action])),
    ]
    # phi(m, n) m' = m psi(n, m'), indexed (m, n, m')
    lhs = Ma.action[phi[:, :, None], np.arange(M.order)[None, None, :]]
    rhs = M.right[np.arange(M.order)[:, None, None], psi[None, :, :]]
    clauses.append(("phi(m,n)m'=m psi(n,m')", _first(lhs != rhs)))
    # psi(n, m) n' = n phi(m, n'), indexed (n, m, n')
    lhs = Na.action[psi[:, :, None], np.arange(N.order)[None, None, :]]
    rhs = N.right[np.arange(N.order)[:, None, None], phi[None, :, :]]
    clauses.append(("psi(n,m)n'=n phi(m,n')", _first(lhs != rhs)))
    failed = [(c, w) for c, w in clauses if w is not None]
    if failed:
        return ContextReport(False, failed[0][0], failed[0][1], tuple(c for c, _ in failed))
    return ContextReport(True)


def standard_context(ring: FiniteRing) -> MoritaContext:
    """(R, R, R, R) with both pairings given by ring multiplication."""
    b = regular_bimodule(ring)
    return MoritaContext(ring, ring, b, b, ring.mul, ring.mul, f"StdCtx({ring.name})")


def zero_context(r: FiniteRing, s: FiniteRing) -> MoritaContext:
    return MoritaContext(r, s, zero_bimodule(r, s), zero_bimodule(s, r),
                         np.zeros((1, 1), dtype=np.int64), np.zeros((1, 1), dtype=np.int64),
                         f"ZeroCtx({r.name},{s.name})")


@dataclass(frozen=True, eq=False)
class ContextRing:
    """The generalized matrix ring T with element (r, m, n, s) at index ((r|M| + m)|N| + n)|S| + s."""

    context: MoritaContext
    ring: FiniteRing
    e: int

    def encode(self, r: int, m: int, n: int, s: int) -> int:
        c = self.context
        return ((r * c.M.order + m) * c.N.order + n) * c.S.order + s

    def decode(self, t: int) -> tuple[int, int, int, int]:
        c = self.context
        t, s = divmod(int(t), c.S.order)
        t, n = divmod(t, c.N.order)
        r, m = divmod(t, c.M.order)
        return r, m, n, s

    @property
    def complement(self) -> int:
        """1 - e."""
        return self.ring.minus(self.ring.one, self.e)


class ContextError(StructureError):
    def __init__(self, report: ContextReport):
        super().__init__(f"invalid Morita context: {report.clause} at {report.witness}")
        self.report = report


def context_ring(ctx: MoritaContext, check: bool = True) -> ContextRing:
    """Build T = [[R, M], [N, S]] with multiplication induced by phi and psi.

    Refuses contexts failing :func:`check_context`; the result is also
    re-checked against the ring axioms.
    """
    if check:
        rep = check_context(ctx)
        if not rep:
            raise ContextError(rep)
    R, S, M, N = ctx.R, ctx.S, ctx.M, ctx.N
    nm, nn = M.order, N.order
    order = R.order * nm * nn * S.order
    check_ring_order(order, "context ring")
    idx = np.arange(order)
    t, s = np.divmod(idx, S.order)
    t, n = np.divmod(t, nn)
    r, m = np.divmod(t, nm)
    Ma, Na = M.carrier, N.carrier

    def enc(r_, m_, n_, s_):
        return ((r_ * nm + m_) * nn + n_) * S.order + s_

    A = (slice(None), None)
    B = (None, slice(None))
    add = enc(R.add[r[A], r[B]], Ma.add[m[A], m[B]], Na.add[n[A], n[B]], S.add[s[A], s[B]])
    # (r,m,n,s)(r',m',n',s') = (rr' + phi(m,n'), rm' + ms', nr' + sn', psi(n,m') + ss')
    mul = enc(
        R.add[R.mul[r[A], r[B]], ctx.phi[m[A], n[B]]],
        Ma.add[Ma.action[r[A], m[B]], M.right[m[A], s[B]]],
        Na.add[N.right[n[A], r[B]], Na.action[s[A], n[B]]],
        S.add[ctx.psi[n[A], m[B]], S.mul[s[A], s[B]]],
    )
    labels = []
    for k in idx:
        labels.append(f"[{R.labels[r[k]]},{Ma.labels[m[k]]};{Na.labels[n[k]]},{S.labels[s[k]]}]")
    T = FiniteRing(add, mul, int(enc(R.one, 0, 0, S.one)), tuple(labels), f"T({ctx.name or 'ctx'})")
    if check:
        rep = check_ring_axioms(T.add, T.mul, T.one)
        if not rep:
            raise StructureError(f"context ring fails {rep.axiom} at {rep.witness}")
    return ContextRing(ctx, T, int(enc(R.one, 0, 0, 0)))


def _additive_span(ring: FiniteRing, values) -> set[int]:
    vals = sorted(set(int(v) for v in np.ravel(values)))
    acc = {0}
    frontier = set(acc)
    while frontier:
        new = {int(ring.add[a, v]) for a in frontier for v in vals} - acc
        acc |= new
        frontier = new
    return acc


@dataclass(frozen=True)
class StrictnessReport:
    strict: bool
    phi_onto: bool
    psi_onto: bool

    def __bool__(self):
        return self.strict


def is_strict(ctx: MoritaContext) -> StrictnessReport:
    """Both pairings onto: the additive spans of their values are all of R and S."""
    a = len(_additive_span(ctx.R, ctx.phi)) == ctx.R.order
    b = len(_additive_span(ctx.S, ctx.psi)) == ctx.S.order
    return StrictnessReport(a and b, a, b)


def matrix_witness_identity(ctx: MoritaContext, T: ContextRing, m: int, n: int) -> bool:
    """x = (0,m,0,0), y = (0,0,n,0): (x·y·x = x) == (phi(m,n)·m = m)."""
    x = T.encode(0, m, 0, 0)
    y = T.encode(0, 0, n, 0)
    lhs = T.ring.mul3(x, y, x) == x
    rhs = ctx.M.carrier.act(int(ctx.phi[m, n]), m) == m
    return lhs == rhs


@dataclass(frozen=True)
class PeirceReport:
    family: tuple[int, ...]
    peirce_regular: bool
    vnr_regular: bool
    witnesses: tuple[tuple[int, int, int, int], ...] = ()  # (i, j, x, y)
    failure: Optional[tuple[int, int, int]] = None  # (i, j, x)

    @property
    def agree(self) -> bool:
        return self.peirce_regular == self.vnr_regular


def verify_lemma_3_3(ring: FiniteRing, family: Sequence[int]) -> PeirceReport:
    """Peirce criterion: every x in e_iRe_j has y in e_jRe_i with x = xyx; compared to VNR."""
    family = tuple(int(e) for e in family)
    if not is_idempotent_family(ring, family):
        raise ValueError(f"{family} is not a complete orthogonal idempotent family")
    vnr = vnr_check(ring).regular
    blocks = {}
    for i, ei in enumerate(family):
        for j, ej in enumerate(family):
            blocks[i, j] = np.unique(ring.mul[ring.mul[ei], ej])
    witnesses = []
    for i in range(len(family)):
        for j in range(len(family)):
            ys = blocks[j, i]
            for x in blocks[i, j]:
                ok = ring.mul[ring.mul[x, ys], x] == x
                if not ok.any():
                    return PeirceReport(family, False, vnr, tuple(witnesses), (i, j, int(x)))
                witnesses.append((i, j, int(x), int(ys[np.argmax(ok)])))
    return PeirceReport(family, True, vnr, tuple(witnesses))


@dataclass(frozen=True)
class Theorem34Report:
    vnr_T: bool
    vnr_R: bool
    vnr_S: bool
    M_left: bool
    M_right: bool
    N_left: bool
    N_right: bool
    strict: bool
    corner_R: bool
    corner_S: bool

    @property
    def direction1(self) -> bool:
        """vnr(T) ⇒ R, S regular rings and M, N regular on both sides."""
        return (not self.vnr_T) or all((self.vnr_R, self.vnr_S, self.M_left, self.M_right, self.N_left, self.N_right))

    @property
    def direction2(self) -> bool:
        """strict ∧ vnr(R) ∧ vnr(S) ∧ M, N left regular ⇒ vnr(T)."""
        hyp = self.strict and self.vnr_R and self.vnr_S and self.M_left and self.N_left
        return (not hyp) or self.vnr_T

    @property
    def holds(self) -> bool:
        return self.direction1 and self.direction2 and self.corner_R and self.corner_S


def verify_theorem_3_4(ctx: MoritaContext) -> Theorem34Report:
    T = context_ring(ctx)
    eTe = corner_ring(T.ring, T.e)
    fTf = corner_ring(T.ring, T.complement)
    return Theorem34Report(
        vnr_T=vnr_check(T.ring).regular,
        vnr_R=vnr_check(ctx.R).regular,
        vnr_S=vnr_check(ctx.S).regular,
        M_left=is_regular_module(ctx.M.carrier).regular,
        M_right=is_regular_module(ctx.M.as_right_module()).regular,
        N_left=is_regular_module(ctx.N.carrier).regular,
        N_right=is_regular_module(ctx.N.as_right_module()).regular,
        strict=is_strict(ctx).strict,
        corner_R=find_ring_isomorphism(eTe, ctx.R) is not None,
        corner_S=find_ring_isomorphism(fTf, ctx.S) is not None,
    )


# -- progenerators -----------------------------------------------------------


@dataclass(frozen=True)
class Progenerator:
    """P with witnesses: an idempotent of R^k with image ≅ P, and one of P^j with image ≅ R."""

    module: FiniteModule
    k: int
    projective_idempotent: ModuleHom
    projective_iso: ModuleHom  # P -> image of the idempotent, as a map into R^k
    j: int
    generator_idempotent: ModuleHom
    generator_element: int  # p in P^j with r -> r p an isomorphism R -> image

    def replay(self) -> bool:
        e, sigma = self.projective_idempotent, self.projective_iso
        if not (e.is_valid() and sigma.is_valid()):
            return False
        ea, sa = e.array, sigma.array
        if not (ea[ea] == ea).all() or np.unique(sa).size != sa.size:
            return False
        if set(np.unique(ea).tolist()) != set(sa.tolist()):
            return False
        g = self.generator_idempotent
        ga = g.array
        if not g.is_valid() or not (ga[ga] == ga).all():
            return False
        orbit = g.source.action[:, self.generator_element]
        return np.unique(orbit).size == g.source.ring.order and set(np.unique(ga).tolist()) == set(orbit.tolist())


@dataclass(frozen=True)
class ProgeneratorFailure:
    module: FiniteModule
    reason: str

    def __bool__(self):
        return False


def progenerator_check(p: FiniteModule):
    """Return a :class:`Progenerator` with witnesses, or a :class:`ProgeneratorFailure`."""
    R = p.ring
    reg = regular_left_module(R)
    cap = limits()
    proj = None
    for k in range(1, cap.power_cap + 1):
        F = direct_power(reg, k)
        if F.order > cap.module_order:
            break
        for row in hom_array(p, F):
            if np.unique(row).size != p.order:
                continue
            sigma = ModuleHom(p, F, row)
            cert = is_direct_summand(image(sigma))
            if cert:
                proj = (k, cert.idempotent, sigma)
                break
        if proj:
            break
    if proj is None:
        return ProgeneratorFailure(p, "no R^k (k within caps) has a summand isomorphic to P")
    gen = None
    for j in range(1, cap.power_cap + 1):
        Pj = direct_power(p, j)
        if Pj.order > cap.module_order:
            break
        for x in range(Pj.order):
            orbit = Pj.action[:, x]
            if np.unique(orbit).size != R.order:
                continue
            cert = is_direct_summand(Submodule(Pj, orbit.tolist()))
            if cert:
                gen = (j, cert.idempotent, x)
                break
        if gen:
            break
    if gen is None:
        return ProgeneratorFailure(p, "R is not a summand of P^j for j within caps")
    return Progenerator(p, proj[0], proj[1], proj[2], gen[0], gen[1], gen[2])


@dataclass(frozen=True, eq=False)
class EndoRing:
    """End_R(P) as a finite ring; element i is the hom with table ``homs[i]``."""

    module: FiniteModule
    ring: FiniteRing
    homs: np.ndarray

    def index_of(self, table: Sequence[int]) -> int:
        return _row_lookup(self.homs, np.asarray(table)[None, :])[0]


def _row_lookup(rows: np.ndarray, queries: np.ndarray) -> np.ndarray:
    """Index of each query row among ``rows`` (which must be unique)."""
    keys = {r.tobytes(): i for i, r in enumerate(np.ascontiguousarray(rows))}
    q = np.ascontiguousarray(queries)
    return np.array([keys[x.tobytes()] for x in q], dtype=np.int64)


def endo_ring(p: FiniteModule) -> EndoRing:
    """Endomorphisms of P, pointwise addition, product s·s' = s'∘s."""
    H = hom_array(p, p)
    n = H.shape[0]
    check_ring_order(n, "endomorphism ring")
    add = _row_lookup(H, p.add[H[:, None, :], H[None, :, :]].reshape(n * n, -1)).reshape(n, n)
    # (s·s')(x) = s'(s(x)): row s' indexed by row s
    prod = H[np.arange(n)[None, :, None], H[:, None, :]]  # [s, s', x] = H[s'][H[s][x]]
    mul = _row_lookup(H, prod.reshape(n * n, -1)).reshape(n, n)
    one = _row_lookup(H, np.arange(p.order)[None, :])[0]
    R = FiniteRing(add, mul, int(one), tuple(f"h{i}" for i in range(n)), f"End({p.name})")
    return EndoRing(p, R, H)


@dataclass(frozen=True, eq=False)
class HomFunctor:
    """F = Hom_R(P, -) landing in modules over End(P)."""

    endo: EndoRing

    @property
    def source(self) -> FiniteModule:
        return self.endo.module

    def on_module(self, m: FiniteModule) -> tuple[FiniteModule, np.ndarray]:
        """F(M) and the table of R-homs P -> M underlying its elements."""
        H = hom_array(self.source, m)
        E = self.endo.homs
        n = H.shape[0]
        add = _row_lookup(H, m.add[H[:, None, :], H[None, :, :]].reshape(n * n, -1)).reshape(n, n)
        # s·h = h∘s, indexed [s, h]
        act = _row_lookup(H, H[np.arange(n)[None, :, None], E[:, None, :]].reshape(E.shape[0] * n, -1))
        act = act.reshape(E.shape[0], n)
        return FiniteModule(self.endo.ring, add, act, tuple(f"h{i}" for i in range(n)), f"F({m.name})"), H

    def on_hom(self, u: FiniteModule, m: FiniteModule, f: Sequence[int]) -> np.ndarray:
        """F(f) as a table over the elements of F(U): h -> f∘h."""
        Hu = hom_array(self.source, u)
        Hm = hom_array(self.source, m)
        f = np.asarray(f, dtype=np.int64)
        return _row_lookup(Hm, f[Hu])


def hom_functor(p: FiniteModule) -> HomFunctor:
    return HomFunctor(endo_ring(p))


def hom_functor_module(p: FiniteModule, m: FiniteModule) -> FiniteModule:
    return hom_functor(p).on_module(m)[0]


@dataclass(frozen=True)
class FullFaithfulReport:
    faithful: bool
    full: bool
    source_count: int
    target_count: int

    def __bool__(self):
        return self.faithful and self.full


def check_full_faithful(F: HomFunctor, u: FiniteModule, m: FiniteModule) -> FullFaithfulReport:
    """The map Hom_R(U, M) -> Hom_E(F(U), F(M)) is injective and the counts match."""
    FU, _ = F.on_module(u)
    FM, _ = F.on_module(m)
    images = {tuple(F.on_hom(u, m, f).tolist()) for f in hom_array(u, m)}
    src = hom_array(u, m).shape[0]
    tgt = hom_array(FU, FM).shape[0]
    return FullFaithfulReport(len(images) == src, len(images) == tgt, src, tgt)


@dataclass(frozen=True)
class Lemma31Report:
    progenerator: bool
    regular: bool
    transported: bool

    @property
    def agree(self) -> bool:
        return self.regular == self.transported


def verify_lemma_3_1(p: FiniteModule, u: FiniteModule, m: FiniteModule, F: Optional[HomFunctor] = None) -> Lemma31Report:
    if not progenerator_check(p):
        raise ValueError("P is not a progenerator within caps")
    F = F or hom_functor(p)
    FU, _ = F.on_module(u)
    FM, _ = F.on_module(m)
    return Lemma31Report(True, is_relative_regular(m, u).regular, is_relative_regular(FM, FU).regular)


@dataclass(frozen=True)
class Theorem32Report:
    vnr_R: bool
    vnr_End: bool
    progenerator: bool

    @property
    def agree(self) -> bool:
        return self.vnr_R == self.vnr_End


def verify_theorem_3_2(p: FiniteModule) -> Theorem32Report:
    prog = bool(progenerator_check(p))
    return Theorem32Report(vnr_check(p.ring).regular, vnr_check(endo_ring(p).ring).regular, prog)
