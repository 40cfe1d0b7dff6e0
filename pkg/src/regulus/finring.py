"""Finite rings and groups given by exact operation tables.

Elements are integer indices. Index 0 is always the additive identity. All
objects are immutable; tables are read-only numpy arrays.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from . import _search
from .config import StructureError, check_ring_order


def _frozen_table(table, name: str) -> np.ndarray:
    arr = np.array(table, dtype=np.int64)
    if arr.ndim != 2:
        raise StructureError(f"{name} table must be two-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _digest(*arrays: np.ndarray, extra: tuple = ()) -> str:
    h = hashlib.sha1(repr(extra).encode())
    for a in arrays:
        h.update(repr(a.shape).encode())
        h.update(np.ascontiguousarray(a).tobytes())
    return h.hexdigest()


class _TableEquality:
    """Structural equality and hashing over the defining tables."""

    def _key(self) -> str:
        raise NotImplementedError

    @cached_property
    def _cached_key(self) -> str:
        return self._key()

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self is other or self._cached_key == other._cached_key

    def __hash__(self):
        return hash(self._cached_key)


@dataclass(frozen=True, eq=False)
class Codec:
    """Mixed-radix coordinates: index = sum(coeff[k] * stride[k])."""

    radices: tuple[int, ...]
    shape: tuple[int, ...]

    @cached_property
    def strides(self) -> np.ndarray:
        strides = np.ones(len(self.radices), dtype=np.int64)
        for k in range(len(self.radices) - 2, -1, -1):
            strides[k] = strides[k + 1] * self.radices[k + 1]
        return strides

    @property
    def size(self) -> int:
        return int(np.prod(self.radices, dtype=object))

    def decode(self, index: int) -> np.ndarray:
        out = []
        for r in reversed(self.radices):
            index, c = divmod(int(index), r)
            out.append(c)
        return np.array(out[::-1], dtype=np.int64).reshape(self.shape)

    def encode(self, coeffs) -> int:
        flat = np.asarray(coeffs, dtype=np.int64).ravel()
        return int(flat @ self.strides)

    @cached_property
    def all_coords(self) -> np.ndarray:
        """Coordinates of every index, shape (size, *shape)."""
        idx = np.arange(self.size, dtype=np.int64)
        cols = []
        for stride, r in zip(self.strides, self.radices):
            cols.append((idx // stride) % r)
        return np.stack(cols, axis=1).reshape((self.size,) + self.shape)


@dataclass(frozen=True, eq=False)
class FiniteRing(_TableEquality):
    """A finite unital ring given by addition and multiplication tables."""

    add: np.ndarray
    mul: np.ndarray
    one: int
    labels: tuple[str, ...] = ()
    name: str = ""
    codec: Optional[Codec] = field(default=None, repr=False)
    # parent indices for rings carved out of a bigger ring (corner rings)
    embedding: Optional[tuple[int, ...]] = field(default=None, repr=False)

    def __post_init__(self):
        add = _frozen_table(self.add, "add")
        mul = _frozen_table(self.mul, "mul")
        n = add.shape[0]
        if add.shape != (n, n) or mul.shape != (n, n):
            raise StructureError(f"tables must be square of equal size, got {add.shape} and {mul.shape}")
        if n < 1:
            raise StructureError("a ring has at least one element")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise StructureError("table entries out of range")
        if not 0 <= int(self.one) < n:
            raise StructureError(f"one={self.one} out of range")
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise StructureError(f"expected {n} labels, got {len(labels)}")
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "one", int(self.one))
        object.__setattr__(self, "labels", labels)

    def _key(self) -> str:
        return _digest(self.add, self.mul, extra=("ring", self.one))

    def __repr__(self):
        return f"FiniteRing({self.name or '?'}, order={self.order})"

    @property
    def order(self) -> int:
        return self.add.shape[0]

    @property
    def zero(self) -> int:
        return 0

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == 0, axis=1)

    def plus(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def times(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def minus(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def mul3(self, a: int, b: int, c: int) -> int:
        return int(self.mul[self.mul[a, b], c])

    @cached_property
    def is_commutative(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    @cached_property
    def characteristic(self) -> int:
        k, x = 1, self.one
        while x != 0:
            x = int(self.add[x, self.one])
            k += 1
        return k

    def multiple(self, k: int, x: int) -> int:
        acc = 0
        for _ in range(k):
            acc = int(self.add[acc, x])
        return acc

    @cached_property
    def units(self) -> np.ndarray:
        return np.nonzero((self.mul == self.one).any(axis=1) & (self.mul == self.one).any(axis=0))[0]


@dataclass(frozen=True, eq=False)
class FiniteGroup(_TableEquality):
    mul: np.ndarray
    identity: int = 0
    labels: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        mul = _frozen_table(self.mul, "mul")
        n = mul.shape[0]
        if mul.shape != (n, n) or mul.min() < 0 or mul.max() >= n:
            raise StructureError("group table must be square with entries in range")
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise StructureError(f"expected {n} labels, got {len(labels)}")
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "labels", labels)

    def _key(self) -> str:
        return _digest(self.mul, extra=("group", self.identity))

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @property
    def order(self) -> int:
        return self.mul.shape[0]


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of an exhaustive axiom scan.

    ``witness`` is the lexicographically least tuple of indices violating
    ``axiom``.
    """

    ok: bool
    axiom: Optional[str] = None
    witness: Optional[tuple[int, ...]] = None

    def __bool__(self):
        return self.ok


def _least(bad: np.ndarray, offset: int = 0) -> Optional[tuple[int, ...]]:
    hits = np.argwhere(bad)
    if hits.size == 0:
        return None
    first = hits[0].tolist()
    first[0] += offset
    return tuple(int(x) for x in first)


def scan_triples(n: int, bad_fn: Callable[[np.ndarray], np.ndarray]) -> Optional[tuple[int, ...]]:
    """Least (a, b, c) where ``bad_fn`` flags a violation; scanned in slices of a."""
    step = max(1, (1 << 23) // max(n * n, 1))
    for lo in range(0, n, step):
        a = np.arange(lo, min(n, lo + step))
        w = _least(bad_fn(a), lo)
        if w is not None:
            return w
    return None


def _group_axioms(add: np.ndarray, prefix: str) -> AxiomReport:
    n = add.shape[0]
    w = scan_triples(n, lambda a: add[add[a][:, :, None], np.arange(n)[None, None, :]]
                     != add[a[:, None, None], add[None, :, :]])
    if w is not None:
        return AxiomReport(False, f"{prefix} associativity", w)
    return AxiomReport(True)


def _magma_closure(add: np.ndarray, gens: list[int]) -> np.ndarray:
    inside = np.zeros(add.shape[0], dtype=bool)
    inside[gens] = True
    while True:
        cur = np.nonzero(inside)[0]
        new = inside.copy()
        new[add[cur[:, None], cur[None, :]].ravel()] = True
        if (new == inside).all():
            return inside
        inside = new


def _magma_generators(add: np.ndarray) -> list[int]:
    """Greedy generators of (R, +) as a magma: each element is a bracketed sum of them."""
    gens: list[int] = []
    inside = np.zeros(add.shape[0], dtype=bool)
    while not inside.all():
        gens.append(int(np.argmin(inside)))
        inside = _magma_closure(add, gens)
    return gens


def _first(bad: np.ndarray, order) -> Optional[tuple[int, ...]]:
    w = _least(bad)
    return None if w is None else tuple(int(order[k](v)) for k, v in enumerate(w))


def _generator_axioms(add: np.ndarray, mul: np.ndarray, one: int) -> AxiomReport:
    """Exact axiom check in O(n^2 |G|) for a generating set G of (R, +).

    * additive associativity by Light's test: (x+a)+y = x+(a+y) for a in G;
    * distributivity: x -> r*x (and x -> x*r) is additive once it is additive
      against every generator, given (R, +) is an abelian group;
    * multiplicative associativity: with both distributive laws the associator
      is additive in each slot, so it vanishes once it vanishes on G^3.

    Axioms are checked in dependency order; witnesses are genuine violations
    but not necessarily the least ones.
    """
    n = add.shape[0]
    idx = np.arange(n)
    gens = _magma_generators(add)
    g = np.array(gens, dtype=np.int64)
    ident = lambda v: v
    gen = lambda v: g[v]
    # [x, a, y]: (x+a)+y vs x+(a+y)
    bad = add[add[:, g][:, :, None], idx[None, None, :]] != add[idx[:, None, None], add[g][None, :, :]]
    w = _first(bad, (ident, gen, ident))
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
    # [x, y, a]: x(y+a) vs xy + xa
    bad = mul[idx[:, None, None], add[:, g][None, :, :]] != add[mul[:, :, None], mul[:, g][:, None, :]]
    w = _first(bad, (ident, ident, gen))
    if w is not None:
        return AxiomReport(False, "left distributivity", w)
    # [y, a, x]: (y+a)x vs yx + ax
    bad = mul[add[:, g][:, :, None], idx[None, None, :]] != add[mul[:, None, :], mul[g][None, :, :]]
    w = _first(bad, (ident, gen, ident))
    if w is not None:
        return AxiomReport(False, "right distributivity", w)
    bad = mul[mul[g[:, None], g[None, :]][:, :, None], g[None, None, :]] != mul[g[:, None, None], mul[g[:, None], g[None, :]][None, :, :]]
    w = _first(bad, (gen, gen, gen))
    if w is not None:
        return AxiomReport(False, "multiplicative associativity", w)
    w = _least((mul[one] != idx) | (mul[:, one] != idx))
    if w is not None:
        return AxiomReport(False, "multiplicative identity", w)
    return AxiomReport(True)


def check_ring_axioms(add, mul, one: int, labels: Optional[Sequence[str]] = None,
                      method: str = "auto") -> AxiomReport:
    """Check the unital ring axioms on candidate tables.

    ``method="exhaustive"`` scans every triple and reports least witnesses.
    ``method="generators"`` is exact but only scans triples involving a
    generating set of (R, +), see :func:`_generator_axioms`; ``"auto"`` uses it
    above 64 elements. Raises :class:`StructureError` when the tables are not
    square index tables of one common size; axiom failures are reported, not
    raised.
    """
    if method not in ("auto", "exhaustive", "generators"):
        raise ValueError(f"unknown method {method!r}")
    add = np.asarray(add, dtype=np.int64)
    mul = np.asarray(mul, dtype=np.int64)
    if add.ndim != 2 or mul.ndim != 2:
        raise StructureError("tables must be two-dimensional")
    n = add.shape[0]
    if add.shape != (n, n) or mul.shape != (n, n):
        raise StructureError(f"dimension mismatch: add {add.shape}, mul {mul.shape}")
    if n == 0 or add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
        raise StructureError("table entries out of range")
    if not 0 <= one < n:
        raise StructureError(f"one={one} out of range")
    if labels is not None and (len(labels) != n or len(set(labels)) != n):
        return AxiomReport(False, "labels", None)
    idx = np.arange(n)
    if method == "generators" or (method == "auto" and n > 64):
        return _generator_axioms(add, mul, one)

    rep = _group_axioms(add, "additive")
    if not rep:
        return rep
    w = _least(add != add.T)
    if w is not None:
        return AxiomReport(False, "additive commutativity", w)
    w = _least(add[0] != idx)
    if w is not None:
        return AxiomReport(False, "additive identity", w)
    w = _least(~(add == 0).any(axis=1))
    if w is not None:
        return AxiomReport(False, "additive inverses", w)
    w = scan_triples(n, lambda a: mul[mul[a][:, :, None], idx[None, None, :]]
                     != mul[a[:, None, None], mul[None, :, :]])
    if w is not None:
        return AxiomReport(False, "multiplicative associativity", w)
    w = _least((mul[one] != idx) | (mul[:, one] != idx))
    if w is not None:
        return AxiomReport(False, "multiplicative identity", w)
    # a(b+c) = ab + ac
    w = scan_triples(n, lambda a: mul[a[:, None, None], add[None, :, :]]
                     != add[mul[a][:, :, None], mul[a][:, None, :]])
    if w is not None:
        return AxiomReport(False, "left distributivity", w)
    # (a+b)c = ac + bc
    w = scan_triples(n, lambda a: mul[add[a][:, :, None], idx[None, None, :]]
                     != add[mul[a][:, None, :], mul[None, :, :]])
    if w is not None:
        return AxiomReport(False, "right distributivity", w)
    return AxiomReport(True)


def check_group_axioms(group: FiniteGroup) -> AxiomReport:
    mul = group.mul
    n = group.order
    e = group.identity
    idx = np.arange(n)
    rep = _group_axioms(mul, "group")
    if not rep:
        return rep
    w = _least((mul[e] != idx) | (mul[:, e] != idx))
    if w is not None:
        return AxiomReport(False, "group identity", w)
    w = _least(~(mul == e).any(axis=1))
    if w is not None:
        return AxiomReport(False, "group inverses", w)
    return AxiomReport(True)


def ring_from_tables(add, mul, one: Optional[int] = None, labels=None, name: str = "") -> FiniteRing:
    """Build a ring from raw tables, relabelling so the additive identity is index 0.

    When ``one`` is omitted the two-sided multiplicative identity is located in
    the table.
    """
    add = np.array(add, dtype=np.int64)
    mul = np.array(mul, dtype=np.int64)
    n = add.shape[0]
    if add.shape != (n, n) or mul.shape != (n, n):
        raise StructureError(f"dimension mismatch: add {add.shape}, mul {mul.shape}")
    zeros = [z for z in range(n) if (add[z] == np.arange(n)).all()]
    if not zeros:
        raise StructureError("addition table has no identity element")
    z = zeros[0]
    perm = np.arange(n)
    perm[[0, z]] = perm[[z, 0]]  # perm is its own inverse
    add = perm[add[np.ix_(perm, perm)]]
    mul = perm[mul[np.ix_(perm, perm)]]
    if labels is not None:
        labels = [labels[p] for p in perm]
    if one is None:
        ones = [u for u in range(n) if (mul[u] == np.arange(n)).all() and (mul[:, u] == np.arange(n)).all()]
        if not ones:
            raise StructureError("multiplication table has no identity element")
        one = ones[0]
    else:
        one = int(perm[one])
    check_ring_order(n)
    return FiniteRing(add, mul, one, tuple(labels) if labels else (), name)


def cyclic_ring(n: int) -> FiniteRing:
    """The ring Z/n."""
    if n < 1:
        raise ValueError("Z/n needs n >= 1")
    check_ring_order(n)
    a = np.arange(n)
    add = (a[:, None] + a[None, :]) % n
    mul = (a[:, None] * a[None, :]) % n
    return FiniteRing(add, mul, 1 % n, tuple(str(i) for i in range(n)), f"Z/{n}",
                      codec=Codec((n,), (1,)))


def _ring_from_coords(
    n_elems: int,
    codec: Codec,
    add_coords: Callable[[np.ndarray, np.ndarray], np.ndarray],
    mul_coords: Callable[[np.ndarray, np.ndarray], np.ndarray],
    one_coords,
    labels: Sequence[str],
    name: str,
) -> FiniteRing:
    """Tables for a ring whose elements are coordinate arrays under ``codec``."""
    coords = codec.all_coords
    flat_strides = codec.strides
    add = np.empty((n_elems, n_elems), dtype=np.int64)
    mul = np.empty((n_elems, n_elems), dtype=np.int64)
    step = max(1, (1 << 21) // max(n_elems * coords[0].size, 1))
    for lo in range(0, n_elems, step):
        a = coords[lo : lo + step]
        s = add_coords(a[:, None], coords[None, :])
        p = mul_coords(a[:, None], coords[None, :])
        k = a.shape[0]
        add[lo : lo + k] = s.reshape(k, n_elems, -1) @ flat_strides
        mul[lo : lo + k] = p.reshape(k, n_elems, -1) @ flat_strides
    return FiniteRing(add, mul, codec.encode(one_coords), tuple(labels), name, codec=codec)


def product_ring(r1: FiniteRing, r2: FiniteRing) -> FiniteRing:
    n = r1.order * r2.order
    check_ring_order(n)
    a1, b1 = np.divmod(np.arange(n), r2.order)
    add = r1.add[a1[:, None], a1[None, :]] * r2.order + r2.add[b1[:, None], b1[None, :]]
    mul = r1.mul[a1[:, None], a1[None, :]] * r2.order + r2.mul[b1[:, None], b1[None, :]]
    labels = tuple(f"({r1.labels[x]},{r2.labels[y]})" for x, y in zip(a1, b1))
    one = r1.one * r2.order + r2.one
    return FiniteRing(add, mul, one, labels, f"{r1.name}x{r2.name}",
                      codec=Codec((r1.order, r2.order), (2,)))


def _sum_over(ring: FiniteRing, terms: np.ndarray, axis: int) -> np.ndarray:
    terms = np.moveaxis(terms, axis, -1)
    acc = terms[..., 0]
    for k in range(1, terms.shape[-1]):
        acc = ring.add[acc, terms[..., k]]
    return acc


def matrix_ring(ring: FiniteRing, n: int) -> FiniteRing:
    """n x n matrices over ``ring``; the codec maps indices to n x n coefficient arrays."""
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    order = ring.order ** (n * n)
    check_ring_order(order, f"M_{n}({ring.name})")
    codec = Codec((ring.order,) * (n * n), (n, n))

    def add(a, b):
        return ring.add[a, b]

    def mul(a, b):
        # c_ij = sum_k a_ik b_kj
        prods = ring.mul[a[..., :, :, None], b[..., None, :, :]]  # (..., i, k, j)
        return _sum_over(ring, prods, -2)

    one = np.zeros((n, n), dtype=np.int64)
    np.fill_diagonal(one, ring.one)
    labels = []
    for c in codec.all_coords:
        rows = [",".join(ring.labels[x] for x in row) for row in c]
        labels.append("[" + ";".join(rows) + "]")
    return _ring_from_coords(order, codec, add, mul, one, labels, f"M{n}({ring.name})")


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be at least 1")
    a = np.arange(n)
    labels = ["e"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    return FiniteGroup((a[:, None] + a[None, :]) % n, 0, tuple(labels), f"C{n}")


def symmetric_group(n: int = 3) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    mul = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    labels = ["".join(map(str, p)) for p in perms]
    labels[0] = "e"
    return FiniteGroup(mul, 0, tuple(labels), f"S{n}")


def klein_four() -> FiniteGroup:
    a = np.arange(4)
    return FiniteGroup(a[:, None] ^ a[None, :], 0, ("e", "a", "b", "ab"), "V4")


def group_ring(ring: FiniteRing, group: FiniteGroup) -> FiniteRing:
    """The group ring R[G]; coordinates are coefficients indexed by group elements."""
    if group.identity != 0:
        raise StructureError("group identity must be index 0")
    m = group.order
    order = ring.order ** m
    check_ring_order(order, f"{ring.name}[{group.name}]")
    codec = Codec((ring.order,) * m, (m,))
    # target[g, h] = gh; for each k collect pairs (g, h) with gh = k
    pairs_for = [np.argwhere(group.mul == k) for k in range(m)]

    def add(a, b):
        return ring.add[a, b]

    def mul(a, b):
        a, b = np.broadcast_arrays(a, b)
        out = np.empty(a.shape, dtype=np.int64)
        for k in range(m):
            g, h = pairs_for[k][:, 0], pairs_for[k][:, 1]
            out[..., k] = _sum_over(ring, ring.mul[a[..., g], b[..., h]], -1)
        return out

    one = np.zeros(m, dtype=np.int64)
    one[0] = ring.one
    labels = []
    for c in codec.all_coords:
        terms = []
        for g, x in enumerate(c):
            if x == 0:
                continue
            coeff = ring.labels[x]
            if g == 0:
                terms.append(coeff)
            else:
                terms.append(group.labels[g] if x == ring.one else f"{coeff}{group.labels[g]}")
        labels.append("+".join(terms) if terms else "0")
    return _ring_from_coords(order, codec, add, mul, one, labels, f"{ring.name}[{group.name}]")


def opposite_ring(ring: FiniteRing) -> FiniteRing:
    return FiniteRing(ring.add, ring.mul.T.copy(), ring.one, ring.labels, f"{ring.name}^op", codec=ring.codec)


def idempotents(ring: FiniteRing) -> list[int]:
    idx = np.arange(ring.order)
    return [int(e) for e in np.nonzero(ring.mul[idx, idx] == idx)[0]]


def is_idempotent_family(ring: FiniteRing, family: Sequence[int]) -> bool:
    total = 0
    for i, e in enumerate(family):
        if ring.mul[e, e] != e:
            return False
        for f in family[i + 1 :]:
            if ring.mul[e, f] != 0 or ring.mul[f, e] != 0:
                return False
        total = ring.plus(total, e)
    return total == ring.one


def complete_orthogonal_families(ring: FiniteRing, k: int) -> list[tuple[int, ...]]:
    """Families e_1 < ... < e_k of nonzero pairwise orthogonal idempotents summing to 1.

    For k = 1 the only family is (1,), including in the zero ring.
    """
    if k < 1:
        raise ValueError("family size must be at least 1")
    if k == 1:
        return [(ring.one,)]
    nonzero = [e for e in idempotents(ring) if e != 0]
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int], total: int):
        if len(prefix) == k - 1:
            last = ring.minus(ring.one, total)
            if last != 0 and last > prefix[-1] and is_idempotent_family(ring, prefix + [last]):
                out.append(tuple(prefix + [last]))
            return
        start = prefix[-1] + 1 if prefix else 0
        for e in nonzero:
            if e < start:
                continue
            if all(ring.mul[e, f] == 0 and ring.mul[f, e] == 0 for f in prefix):
                extend(prefix + [e], ring.plus(total, e))

    extend([], 0)
    return out


def corner_ring(ring: FiniteRing, e: int) -> FiniteRing:
    """The ring eRe with unit e; ``embedding`` lists the parent index of each element."""
    if ring.mul[e, e] != e:
        raise ValueError(f"element {e} is not idempotent")
    carrier = np.unique(ring.mul[ring.mul[e], e])
    pos = np.full(ring.order, -1, dtype=np.int64)
    pos[carrier] = np.arange(carrier.size)
    sub = np.ix_(carrier, carrier)
    add = pos[ring.add[sub]]
    mul = pos[ring.mul[sub]]
    labels = tuple(ring.labels[c] for c in carrier)
    return FiniteRing(add, mul, int(pos[e]), labels, f"{ring.name}[corner {ring.labels[e]}]",
                      embedding=tuple(int(c) for c in carrier))


def additive_generators(ring: FiniteRing) -> list[int]:
    """Greedy generators of (R, +), starting from 1."""
    act = additive_action(ring, ring.characteristic)
    return _search.greedy_generators(ring.add, act, [ring.one] if ring.order > 1 else [])


def additive_action(ring: FiniteRing, char: int) -> np.ndarray:
    """Table of k*x for k in [0, char)."""
    act = np.zeros((char, ring.order), dtype=np.int64)
    for k in range(1, char):
        act[k] = ring.add[act[k - 1], np.arange(ring.order)]
    return act


def is_ring_isomorphism(r1: FiniteRing, r2: FiniteRing, phi: Sequence[int]) -> bool:
    phi = np.asarray(phi, dtype=np.int64)
    if r1.order != r2.order or phi.shape != (r1.order,):
        return False
    if np.unique(phi).size != r1.order or phi[r1.one] != r2.one:
        return False
    if not (phi[r1.add] == r2.add[phi[:, None], phi[None, :]]).all():
        return False
    return bool((phi[r1.mul] == r2.mul[phi[:, None], phi[None, :]]).all())


def _invariants(ring: FiniteRing) -> tuple:
    return (ring.order, ring.characteristic, len(idempotents(ring)), len(ring.units), ring.is_commutative,
            sorted(element_signatures(ring)))


def element_signatures(ring: FiniteRing) -> list[tuple]:
    """Per-element data preserved by every ring isomorphism."""
    n = ring.order
    sigs = []
    for x in range(n):
        add_order, y = 1, x
        while y != 0:
            y = int(ring.add[y, x])
            add_order += 1
        seen, y = {}, x
        while y not in seen:
            seen[y] = len(seen)
            y = int(ring.mul[y, x])
        tail, period = seen[y], len(seen) - seen[y]
        sigs.append((add_order, tail, period, 0 in seen,
                     len(np.unique(ring.mul[x])), len(np.unique(ring.mul[:, x]))))
    return sigs


def find_ring_isomorphism(r1: FiniteRing, r2: FiniteRing) -> Optional[tuple[int, ...]]:
    """Least (as a table) ring isomorphism r1 -> r2, or None after exhaustive search.

    Candidates are images of a greedy additive generating set beginning with 1;
    partial maps are pruned on every product that stays inside the current span.
    """
    if _invariants(r1) != _invariants(r2):
        return None
    if r1.order == 1:
        return (0,)
    char = r1.characteristic
    act1 = additive_action(r1, char)
    act2 = additive_action(r2, char)
    gens = _search.greedy_generators(r1.add, act1, [r1.one])
    sig1, sig2 = element_signatures(r1), element_signatures(r2)
    choices = [[r2.one]] + [[y for y in range(r2.order) if sig2[y] == sig1[g]] for g in gens[1:]]

    def prune(maps: np.ndarray, span: np.ndarray) -> np.ndarray:
        inside = np.zeros(r1.order, dtype=bool)
        inside[span] = True
        a, b = np.meshgrid(span, span, indexing="ij")
        c = r1.mul[a, b]
        keep = inside[c]
        a, b, c = a[keep], b[keep], c[keep]
        ok = _search.injective_rows(maps, span)
        step = max(1, (1 << 22) // max(a.size, 1))
        for lo in range(0, maps.shape[0], step):
            m = maps[lo : lo + step]
            ok[lo : lo + step] &= (m[:, c] == r2.mul[m[:, a], m[:, b]]).all(axis=1)
        return ok

    maps = _search.extend_maps(r1.add, act1, r2.add, act2, gens, choices, prune=prune)
    maps = [m for m in _search.sort_rows(maps) if is_ring_isomorphism(r1, r2, m)]
    return tuple(int(x) for x in maps[0]) if maps else None
