import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from regulus.config import CapExceeded, StructureError
from regulus.finring import (
    Codec,
    FiniteRing,
    check_group_axioms,
    check_ring_axioms,
    complete_orthogonal_families,
    corner_ring,
    cyclic_group,
    cyclic_ring,
    find_ring_isomorphism,
    group_ring,
    idempotents,
    is_idempotent_family,
    is_ring_isomorphism,
    klein_four,
    matrix_ring,
    opposite_ring,
    product_ring,
    ring_from_tables,
    symmetric_group,
)

# frozen from the pure-Python oracle in tests/oracles.py
IDEMPOTENTS_Z6 = [0, 1, 3, 4]
IDEMPOTENTS_Z3C2 = [0, 3, 7, 8]
M2Z2_IDEMPOTENT_COUNT = 8
Z6_TO_Z2xZ3 = (0, 4, 2, 3, 1, 5)


def small_rings():
    Z2, Z3 = cyclic_ring(2), cyclic_ring(3)
    return [cyclic_ring(1), Z2, Z3, cyclic_ring(4), cyclic_ring(6), product_ring(Z2, Z2), product_ring(Z2, Z3),
            matrix_ring(Z2, 2), group_ring(Z2, cyclic_group(2)), group_ring(Z3, cyclic_group(2)),
            group_ring(Z2, cyclic_group(3))]


def test_cyclic_ring_tables():
    R = cyclic_ring(6)
    assert R.order == 6
    assert R.labels == tuple(str(i) for i in range(6))
    assert R.add[4, 5] == 3 and R.mul[4, 5] == 2
    assert cyclic_ring(1).order == 1 and cyclic_ring(1).one == 0
    with pytest.raises(ValueError):
        cyclic_ring(0)


@pytest.mark.parametrize("R", small_rings(), ids=lambda r: r.name)
def test_constructors_pass_axioms(R):
    assert check_ring_axioms(R.add, R.mul, R.one, R.labels)
    assert check_ring_axioms(R.add, R.mul, R.one, method="generators")


def test_axiom_failure_names_axiom_and_witness():
    R = cyclic_ring(4)
    mul = R.mul.copy()
    mul[2, 2] = 1
    rep = check_ring_axioms(R.add, mul, 1)
    assert not rep
    assert rep.axiom == "multiplicative associativity"
    a, b, c = rep.witness
    assert mul[mul[a, b], c] != mul[a, mul[b, c]]
    fast = check_ring_axioms(R.add, mul, 1, method="generators")
    assert not fast and fast.axiom in ("left distributivity", "right distributivity", "multiplicative associativity")


def test_axioms_zero_ring_and_structural_errors():
    assert check_ring_axioms([[0]], [[0]], 0)
    with pytest.raises(StructureError):
        check_ring_axioms(np.zeros((2, 2), int), np.zeros((3, 3), int), 0)
    with pytest.raises(StructureError):
        check_ring_axioms([[0, 1], [1, 5]], [[0, 0], [0, 1]], 1)
    rep = check_ring_axioms([[0, 1], [1, 0]], [[0, 0], [0, 1]], 1, labels=["a", "a"])
    assert rep.axiom == "labels"


@given(st.sampled_from(small_rings()[1:7]), st.integers(0, 10**6), st.booleans())
def test_axiom_methods_agree_with_oracle_on_mutations(R, seed, which):
    rng = np.random.default_rng(seed)
    add, mul = R.add.copy(), R.mul.copy()
    tab = add if which else mul
    i, j = rng.integers(R.order, size=2)
    tab[i, j] = rng.integers(R.order)
    expected = oracles.ring_axioms(add.tolist(), mul.tolist(), R.one)
    assert check_ring_axioms(add, mul, R.one, method="exhaustive").ok == expected
    assert check_ring_axioms(add, mul, R.one, method="generators").ok == expected


def test_product_ring():
    Z2, Z3 = cyclic_ring(2), cyclic_ring(3)
    P = product_ring(Z2, Z3)
    assert P.order == 6
    phi = find_ring_isomorphism(cyclic_ring(6), P)
    assert phi == Z6_TO_Z2xZ3
    assert is_ring_isomorphism(cyclic_ring(6), P, phi)
    assert oracles.ring_isomorphic(cyclic_ring(6), P)
    assert find_ring_isomorphism(product_ring(cyclic_ring(1), Z3), Z3) is not None
    V = product_ring(Z2, Z2)
    assert len(idempotents(V)) == 4


def test_z4_not_isomorphic_to_z2xz2():
    V = product_ring(cyclic_ring(2), cyclic_ring(2))
    assert find_ring_isomorphism(cyclic_ring(4), V) is None
    assert not oracles.ring_isomorphic(cyclic_ring(4), V)
    assert len(idempotents(cyclic_ring(4))) == 2


def test_matrix_ring():
    Z2 = cyclic_ring(2)
    M = matrix_ring(Z2, 2)
    assert M.order == 16
    assert M.codec.decode(M.one).tolist() == [[1, 0], [0, 1]]
    e12 = M.codec.encode([[0, 1], [0, 0]])
    assert M.times(e12, e12) == 0
    assert find_ring_isomorphism(matrix_ring(cyclic_ring(3), 1), cyclic_ring(3)) is not None
    with pytest.raises(CapExceeded):
        matrix_ring(M, 3)
    with pytest.raises(ValueError):
        matrix_ring(Z2, 0)


def test_group_ring():
    Z2, Z3 = cyclic_ring(2), cyclic_ring(3)
    S = group_ring(Z3, cyclic_group(2))
    assert S.order == 9
    e = S.codec.encode([2, 2])  # 2 + 2g
    assert S.times(e, e) == e
    T = group_ring(Z2, cyclic_group(2))
    x = T.codec.encode([1, 1])  # 1 + g
    assert x != 0 and T.times(x, x) == 0
    assert find_ring_isomorphism(group_ring(Z3, cyclic_group(1)), Z3) is not None
    assert group_ring(Z2, klein_four()).order == 16
    assert group_ring(Z2, symmetric_group(3)).order == 64
    assert not group_ring(Z2, symmetric_group(3)).is_commutative


def test_groups():
    for G in (cyclic_group(1), cyclic_group(4), klein_four(), symmetric_group(3)):
        assert check_group_axioms(G)
    assert symmetric_group(3).order == 6


def test_opposite_ring():
    R = cyclic_ring(6)
    assert opposite_ring(R) == R
    M = matrix_ring(cyclic_ring(2), 2)
    assert opposite_ring(opposite_ring(M)) == M
    assert opposite_ring(M) != M
    transpose = [M.codec.encode(M.codec.decode(i).T) for i in range(M.order)]
    assert is_ring_isomorphism(M, opposite_ring(M), transpose)


def test_idempotents_frozen():
    assert idempotents(cyclic_ring(4)) == [0, 1]
    assert idempotents(cyclic_ring(6)) == IDEMPOTENTS_Z6 == oracles.idempotents(cyclic_ring(6).mul.tolist())
    M = matrix_ring(cyclic_ring(2), 2)
    assert len(idempotents(M)) == M2Z2_IDEMPOTENT_COUNT == len(oracles.idempotents(M.mul.tolist()))
    S = group_ring(cyclic_ring(3), cyclic_group(2))
    assert idempotents(S) == IDEMPOTENTS_Z3C2


@pytest.mark.parametrize("R", small_rings(), ids=lambda r: r.name)
def test_families(R):
    assert complete_orthogonal_families(R, 1) == [(R.one,)] if R.order > 1 else True
    for k in (1, 2, 3):
        fams = complete_orthogonal_families(R, k)
        assert fams == sorted(fams)
        for fam in fams:
            assert is_idempotent_family(R, fam)


@given(st.sampled_from(small_rings()), st.sampled_from(small_rings()))
def test_idempotent_count_multiplies(R1, R2):
    P = product_ring(R1, R2)
    assert len(idempotents(P)) == len(idempotents(R1)) * len(idempotents(R2))


def test_corner_ring():
    M = matrix_ring(cyclic_ring(2), 2)
    e11 = M.codec.encode([[1, 0], [0, 0]])
    C = corner_ring(M, e11)
    assert C.order == 2
    assert find_ring_isomorphism(C, cyclic_ring(2)) is not None
    assert corner_ring(M, M.one) == M
    assert corner_ring(M, 0).order == 1
    with pytest.raises(ValueError):
        corner_ring(M, M.codec.encode([[0, 1], [0, 0]]))


@pytest.mark.parametrize("R", small_rings(), ids=lambda r: r.name)
def test_corner_unit_law(R):
    for e in idempotents(R):
        C = corner_ring(R, e)
        parent = np.array(C.embedding)
        assert parent[C.one] == e
        for x in parent:
            assert R.times(e, x) == x == R.times(x, e)


def test_codecs_are_bijections():
    for R in (matrix_ring(cyclic_ring(3), 2), group_ring(cyclic_ring(2), klein_four())):
        coords = R.codec.all_coords
        assert [R.codec.encode(c) for c in coords] == list(range(R.order))
        assert all(np.array_equal(R.codec.decode(i), coords[i]) for i in range(R.order))
    c = Codec((2, 3), (2,))
    assert c.size == 6 and c.decode(5).tolist() == [1, 2]


def test_ring_from_tables_normalizes_zero():
    # Z/3 with elements listed as 1, 2, 0
    perm = [1, 2, 0]
    inv = np.argsort(perm)
    add = [[inv[(perm[a] + perm[b]) % 3] for b in range(3)] for a in range(3)]
    mul = [[inv[(perm[a] * perm[b]) % 3] for b in range(3)] for a in range(3)]
    R = ring_from_tables(add, mul)
    assert R.add[0].tolist() == [0, 1, 2]
    assert find_ring_isomorphism(R, cyclic_ring(3)) is not None


def test_ring_equality_and_hash_are_structural():
    a, b = cyclic_ring(5), cyclic_ring(5)
    assert a == b and hash(a) == hash(b)
    assert FiniteRing(a.add, a.mul, a.one, name="other") == a
    with pytest.raises(ValueError):
        a.add[0, 0] = 1
