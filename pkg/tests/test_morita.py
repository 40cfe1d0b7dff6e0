import numpy as np
import pytest

import oracles
from regulus.config import StructureError
from regulus.finmod import (
    direct_power,
    direct_sum,
    enumerate_homs,
    free_module,
    pullback_module,
    regular_left_module,
    zero_module,
)
from regulus.finring import (
    check_ring_axioms,
    corner_ring,
    cyclic_ring,
    find_ring_isomorphism,
    group_ring,
    is_ring_isomorphism,
    matrix_ring,
    product_ring,
    symmetric_group,
)
from regulus.morita import (
    ContextError,
    MoritaContext,
    check_context,
    check_full_faithful,
    context_ring,
    endo_ring,
    hom_functor,
    hom_functor_module,
    is_strict,
    matrix_witness_identity,
    progenerator_check,
    standard_context,
    verify_lemma_3_1,
    verify_lemma_3_3,
    verify_theorem_3_2,
    verify_theorem_3_4,
    zero_context,
)

Z2, Z3, Z4, Z6 = (cyclic_ring(n) for n in (2, 3, 4, 6))


def z2_over_z4():
    return pullback_module(regular_left_module(Z2), Z4, [r % 2 for r in range(4)], "Z2")


def contexts():
    return [standard_context(Z2), standard_context(Z3), standard_context(Z4), zero_context(Z2, Z3),
            zero_context(Z4, Z2)]


def test_context_checks():
    assert check_context(standard_context(Z2))
    assert check_context(zero_context(Z2, Z3))
    std = standard_context(Z2)
    bad = MoritaContext(Z2, Z2, std.M, std.N, np.zeros((2, 2), int), std.psi)
    rep = check_context(bad)
    assert not rep
    assert rep.clause == "phi(m,n)m'=m psi(n,m')" and rep.witness == (1, 1, 1)
    with pytest.raises(ContextError):
        context_ring(bad)
    # without the context check the table is not associative
    assert not check_ring_axioms(*(lambda T: (T.add, T.mul, T.one))(context_ring(bad, check=False).ring))


def test_context_shape_errors():
    std = standard_context(Z2)
    with pytest.raises(StructureError):
        MoritaContext(Z2, Z2, std.M, std.N, np.zeros((3, 2), int), std.psi)
    with pytest.raises(StructureError):
        MoritaContext(Z2, Z3, std.M, std.N, std.phi, std.psi)


@pytest.mark.parametrize("ctx", contexts(), ids=lambda c: c.name)
def test_context_ring_and_corners(ctx):
    T = context_ring(ctx)
    assert check_ring_axioms(T.ring.add, T.ring.mul, T.ring.one)
    assert T.ring.order == ctx.R.order * ctx.M.order * ctx.N.order * ctx.S.order
    assert find_ring_isomorphism(corner_ring(T.ring, T.e), ctx.R) is not None
    assert find_ring_isomorphism(corner_ring(T.ring, T.complement), ctx.S) is not None
    for t in range(T.ring.order):
        assert T.encode(*T.decode(t)) == t
    for m in range(ctx.M.order):
        for n in range(ctx.N.order):
            assert matrix_witness_identity(ctx, T, m, n)


def test_standard_context_ring_is_matrix_ring():
    T = context_ring(standard_context(Z2))
    assert T.ring.order == 16
    assert find_ring_isomorphism(T.ring, matrix_ring(Z2, 2)) is not None


def test_zero_context_ring_is_product():
    T = context_ring(zero_context(Z2, Z3))
    assert oracles.ring_isomorphic(T.ring, product_ring(Z2, Z3))


def test_strictness():
    assert is_strict(standard_context(Z4))
    rep = is_strict(zero_context(Z2, Z3))
    assert not rep and not rep.phi_onto and not rep.psi_onto
    std = standard_context(Z2)
    half = MoritaContext(Z2, Z2, std.M, std.N, std.phi, np.zeros((2, 2), int))
    assert not is_strict(half).strict and not check_context(half)


def test_lemma_3_3_examples():
    M = matrix_ring(Z2, 2)
    e11, e22 = M.codec.encode([[1, 0], [0, 0]]), M.codec.encode([[0, 0], [0, 1]])
    rep = verify_lemma_3_3(M, (e11, e22))
    assert rep.peirce_regular and rep.vnr_regular
    rep = verify_lemma_3_3(Z4, (1,))
    assert not rep.peirce_regular and not rep.vnr_regular and rep.failure == (0, 0, 2)
    P = product_ring(Z2, Z3)
    e, f = P.codec.encode([1, 0]), P.codec.encode([0, 1])
    assert verify_lemma_3_3(P, (e, f)).agree and verify_lemma_3_3(P, (e, f)).vnr_regular
    with pytest.raises(ValueError):
        verify_lemma_3_3(M, (e11,))


def test_lemma_3_3_witnesses_replay():
    M = matrix_ring(Z3, 2)
    e11, e22 = M.codec.encode([[1, 0], [0, 0]]), M.codec.encode([[0, 0], [0, 1]])
    rep = verify_lemma_3_3(M, (e11, e22))
    fam = (e11, e22)
    for i, j, x, y in rep.witnesses:
        assert M.mul3(fam[i], x, fam[j]) == x and M.mul3(fam[j], y, fam[i]) == y and M.mul3(x, y, x) == x


def test_theorem_3_4_examples():
    rep = verify_theorem_3_4(standard_context(Z2))
    assert rep.vnr_T and rep.vnr_R and rep.M_left and rep.M_right and rep.strict and rep.holds
    rep = verify_theorem_3_4(standard_context(Z4))
    assert not rep.vnr_T and not rep.vnr_R and rep.holds
    rep = verify_theorem_3_4(zero_context(Z2, Z3))
    assert rep.vnr_T and rep.M_left and rep.N_left and rep.direction1 and rep.holds


@pytest.mark.parametrize("ctx", contexts(), ids=lambda c: c.name)
def test_theorem_3_4_directions(ctx):
    assert verify_theorem_3_4(ctx).holds


def test_progenerators():
    prog = progenerator_check(regular_left_module(Z4))
    assert prog and prog.k == 1 and prog.j == 1 and prog.replay()
    prog = progenerator_check(free_module(Z2, 2))
    assert prog and prog.replay()
    assert not progenerator_check(z2_over_z4())


def test_endo_ring_examples():
    assert find_ring_isomorphism(endo_ring(free_module(Z2, 2)).ring, matrix_ring(Z2, 2)) is not None
    assert endo_ring(zero_module(Z2)).ring.order == 1


def test_endo_ring_orientation():
    # with s·s' = s' after s, a -> (x -> x·a) is a ring isomorphism R -> End(R)
    R = group_ring(Z2, symmetric_group(3))
    E = endo_ring(regular_left_module(R))
    rmul = [E.index_of(R.mul[:, a]) for a in range(R.order)]
    assert is_ring_isomorphism(R, E.ring, rmul)
    F = hom_functor(regular_left_module(R))
    assert F.on_module(regular_left_module(R))[0] == regular_left_module(E.ring)


def test_hom_functor_examples():
    P = free_module(Z2, 2)
    F = hom_functor(P)
    FP, _ = F.on_module(P)
    assert FP == regular_left_module(F.endo.ring)
    assert hom_functor_module(P, zero_module(Z2)).order == 1
    assert hom_functor_module(P, regular_left_module(Z2)).order == 4
    assert len(enumerate_homs(P, regular_left_module(Z2))) == 4


@pytest.mark.parametrize("p", [regular_left_module(Z4), free_module(Z2, 2), free_module(Z4, 2),
                               regular_left_module(Z6)], ids=lambda m: m.name)
def test_hom_functor_is_full_and_faithful(p):
    F = hom_functor(p)
    FP, _ = F.on_module(p)
    assert check_ring_axioms(F.endo.ring.add, F.endo.ring.mul, F.endo.ring.one)
    mods = [regular_left_module(p.ring), zero_module(p.ring)]
    if p.ring == Z4:
        mods.append(z2_over_z4())
    for u in mods:
        for m in mods:
            assert check_full_faithful(F, u, m)


def test_lemma_3_1_examples():
    P = free_module(Z2, 2)
    R2 = regular_left_module(Z2)
    rep = verify_lemma_3_1(P, R2, R2)
    assert rep.regular and rep.transported
    Z4m = regular_left_module(Z4)
    rep = verify_lemma_3_1(Z4m, z2_over_z4(), Z4m)
    assert not rep.regular and not rep.transported
    rep = verify_lemma_3_1(Z4m, zero_module(Z4), Z4m)
    assert rep.regular and rep.transported
    with pytest.raises(ValueError):
        verify_lemma_3_1(z2_over_z4(), Z4m, Z4m)


def test_theorem_3_2_examples():
    rep = verify_theorem_3_2(free_module(Z2, 2))
    assert rep.vnr_R and rep.vnr_End and rep.progenerator
    rep = verify_theorem_3_2(free_module(Z4, 2))
    assert not rep.vnr_R and not rep.vnr_End and rep.agree
    assert find_ring_isomorphism(endo_ring(free_module(Z4, 2)).ring, matrix_ring(Z4, 2)) is not None
    assert verify_theorem_3_2(regular_left_module(Z6)).agree


@pytest.mark.parametrize("R", [Z2, Z4], ids=lambda r: r.name)
def test_lemma_3_1_pairs(R):
    P = free_module(R, 2)
    F = hom_functor(P)
    mods = [regular_left_module(R), zero_module(R), direct_power(regular_left_module(R), 2)]
    if R == Z4:
        mods += [z2_over_z4(), direct_sum(z2_over_z4(), z2_over_z4()).module]
    for u in mods:
        for m in mods:
            assert verify_lemma_3_1(P, u, m, F).agree
