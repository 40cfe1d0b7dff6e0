import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from regulus.config import BudgetExceeded, StructureError
from regulus.finmod import (
    FiniteModule,
    ModuleHom,
    Submodule,
    check_module_axioms,
    compose,
    cyclic_submodule,
    direct_sum,
    enumerate_homs,
    find_complement,
    find_module_isomorphism,
    free_module,
    identity_hom,
    image,
    is_direct_summand,
    is_hom,
    kernel,
    minimal_generators,
    pullback_module,
    quotient_module,
    regular_left_module,
    submodules,
    zero_hom,
    zero_module,
)
from regulus.finring import cyclic_ring, group_ring, cyclic_group, matrix_ring, product_ring

Z2, Z4, Z6 = cyclic_ring(2), cyclic_ring(4), cyclic_ring(6)


def z2_over_z4():
    return pullback_module(regular_left_module(Z2), Z4, [r % 2 for r in range(4)], "Z2")


def corpus_modules():
    Z3 = cyclic_ring(3)
    V = product_ring(Z2, Z2)
    T = group_ring(Z2, cyclic_group(2))
    return [regular_left_module(Z4), z2_over_z4(), free_module(Z2, 2), zero_module(Z4),
            regular_left_module(Z6), pullback_module(regular_left_module(Z3), Z6, [r % 3 for r in range(6)]),
            regular_left_module(V), regular_left_module(T), free_module(Z4, 2),
            direct_sum(regular_left_module(Z4), z2_over_z4()).module]


def test_module_axioms():
    assert check_module_axioms(Z4, Z4.add, Z4.mul)
    M = z2_over_z4()
    assert check_module_axioms(Z4, M.add, M.action)
    bad = M.action.copy()
    bad[1, 1] = 0
    rep = check_module_axioms(Z4, M.add, bad)
    assert not rep and rep.axiom and rep.witness is not None
    with pytest.raises(StructureError):
        check_module_axioms(Z4, M.add, np.zeros((3, 2), int))


@pytest.mark.parametrize("M", corpus_modules(), ids=lambda m: m.name)
def test_corpus_modules_pass_axioms(M):
    assert check_module_axioms(M.ring, M.add, M.action)


def test_direct_sum_maps():
    Z4m = regular_left_module(Z4)
    ds = direct_sum(Z4m, zero_module(Z4))
    assert find_module_isomorphism(ds.module, Z4m) is not None
    ds = direct_sum(Z4m, z2_over_z4())
    (i1, i2), (p1, p2) = ds.inclusions, ds.projections
    for f in (i1, i2, p1, p2):
        assert f.is_valid()
    assert compose(p1, i1) == identity_hom(Z4m)
    assert compose(p2, i1) == zero_hom(Z4m, z2_over_z4())
    assert compose(p2, i2) == identity_hom(z2_over_z4())
    assert len(enumerate_homs(free_module(Z2, 2), free_module(Z2, 2))) == 16


def test_minimal_generators():
    assert len(minimal_generators(regular_left_module(Z4))) == 1
    assert len(minimal_generators(free_module(Z2, 2))) == 2
    assert minimal_generators(zero_module(Z4)) == []


def test_hom_examples():
    Z4m = regular_left_module(Z4)
    assert len(enumerate_homs(Z4m, Z4m)) == 4
    homs = enumerate_homs(z2_over_z4(), Z4m)
    assert sorted(f(1) for f in homs) == [0, 2]
    assert [f.map for f in enumerate_homs(Z4m, zero_module(Z4))] == [(0, 0, 0, 0)]


def test_hom_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_homs(free_module(Z4, 2), free_module(Z4, 2), budget=10)


@pytest.mark.parametrize("M", corpus_modules()[:6], ids=lambda m: m.name)
def test_homs_match_brute_force(M):
    U = regular_left_module(M.ring) if M.order > 4 else M
    if U.order > 6 or M.order > 6:
        U = M
    got = [f.map for f in enumerate_homs(U, M)]
    assert got == sorted(oracles.homs(U, M))


def test_kernel_image_examples():
    Z4m = regular_left_module(Z4)
    assert kernel(identity_hom(Z4m)).elements == (0,)
    assert image(zero_hom(Z4m, Z4m)).elements == (0,)
    double = ModuleHom(Z4m, Z4m, [0, 2, 0, 2])
    assert double.is_valid()
    assert kernel(double).elements == (0, 2) and image(double).elements == (0, 2)


@pytest.mark.parametrize("M", corpus_modules(), ids=lambda m: m.name)
def test_kernel_image_orders_and_regular_source(M):
    R = regular_left_module(M.ring)
    homs = enumerate_homs(R, M)
    assert len(homs) == M.order
    for f in homs:
        assert len(kernel(f)) * len(image(f)) == R.order


def test_cyclic_submodule():
    Z4m = regular_left_module(Z4)
    assert cyclic_submodule(Z4m, 0).elements == (0,)
    assert cyclic_submodule(Z4m, 2).elements == (0, 2)
    assert len(cyclic_submodule(Z4m, 1)) == 4


def test_summand_examples():
    Z4m = regular_left_module(Z4)
    cert = is_direct_summand([0, 2], Z4m)
    assert not cert and cert.replay()
    V = free_module(Z2, 2)
    for sub in submodules(V):
        cert = is_direct_summand(sub)
        assert cert and cert.replay()
    assert is_direct_summand(list(range(4)), Z4m).idempotent == identity_hom(Z4m)
    with pytest.raises(StructureError):
        is_direct_summand([0, 2])


@pytest.mark.parametrize("M", corpus_modules(), ids=lambda m: m.name)
def test_summand_search_agrees_with_complement_search(M):
    subs = submodules(M)
    assert {s.elements for s in subs} == {tuple(sorted(s)) for s in oracles.all_submodules(M)}
    for sub in subs:
        cert = is_direct_summand(sub)
        comp = find_complement(sub)
        assert bool(cert) == (comp is not None)
        assert cert.replay()
        if comp is not None:
            assert set(sub.elements) & set(comp.elements) == {0}
        if M.order <= 8:
            assert bool(cert) == oracles.is_summand(M, sub.elements)


def test_isomorphism_search():
    Z4m = regular_left_module(Z4)
    assert find_module_isomorphism(Z4m, Z4m) == identity_hom(Z4m)
    split = direct_sum(z2_over_z4(), z2_over_z4()).module
    assert find_module_isomorphism(Z4m, split) is None


def test_quotient_module():
    Z4m = regular_left_module(Z4)
    Q = quotient_module(Submodule(Z4m, [0, 2]))
    assert Q.order == 2
    assert check_module_axioms(Z4, Q.add, Q.action)
    assert find_module_isomorphism(Q, z2_over_z4()) is not None
    assert quotient_module(Submodule(Z4m, [0])) == Z4m


def test_submodule_validation():
    Z4m = regular_left_module(Z4)
    assert Submodule(Z4m, [0, 2]).is_valid()
    assert not Submodule(Z4m, [0, 1]).is_valid()


def test_module_equality_and_errors():
    a, b = regular_left_module(Z4), regular_left_module(Z4)
    assert a == b and hash(a) == hash(b)
    with pytest.raises(StructureError):
        FiniteModule(Z4, [[0, 1], [1, 0]], np.zeros((3, 2), int))
    with pytest.raises(StructureError):
        direct_sum(regular_left_module(Z2), regular_left_module(Z4))


@settings(max_examples=40)
@given(st.sampled_from(corpus_modules()[:9]), st.data())
def test_hom_composition_closure(M, data):
    homs = enumerate_homs(M, M)
    f = data.draw(st.sampled_from(homs))
    g = data.draw(st.sampled_from(homs))
    assert is_hom(M, M, compose(f, g).map)
    assert compose(f, identity_hom(M)) == f == compose(identity_hom(M), f)


def test_matrix_module_hom_count():
    # M2(Z2) acting on column vectors: End is Z2, so the column module has 2 endomorphisms
    M = matrix_ring(Z2, 2)
    R = regular_left_module(M)
    cols = cyclic_submodule(R, M.codec.encode([[1, 0], [0, 0]])).as_module("col")
    assert cols.order == 4
    assert len(enumerate_homs(cols, cols)) == 2
    assert len(oracles.homs(cols, cols)) == 2
