import pytest

from regulus.catalog import (
    DEFAULT,
    QUICK,
    EvaluationError,
    as_context,
    as_extension,
    as_module,
    as_ring,
    evaluate,
    get_corpus,
)
from regulus.config import CapExceeded
from regulus.dsl import ParseError
from regulus.extensions import ProjectivityStatus
from regulus.finmod import check_module_axioms, regular_left_module
from regulus.finring import FiniteGroup, check_ring_axioms, cyclic_ring, product_ring


def test_evaluate_examples():
    assert evaluate("Zn(6)") == cyclic_ring(6)
    assert evaluate("Prod(Zn(2),Zn(3))").order == 6
    assert evaluate("Prod(Zn(2),Zn(3))") == product_ring(cyclic_ring(2), cyclic_ring(3))
    with pytest.raises(CapExceeded):
        evaluate("Mat(3, Mat(2, Zn(2)))")
    with pytest.raises(ParseError):
        evaluate("Mat(2")


def test_kinds():
    assert isinstance(evaluate("Klein4"), FiniteGroup)
    assert as_module("Zn(4)") == regular_left_module(cyclic_ring(4))
    assert as_module("Ideal(Mat(2, Zn(2)), 8)").order == 4
    assert as_extension("Mat(2, Zn(2))").projectivity_status == ProjectivityStatus.ASSUMED
    assert as_extension("GroupRing(Zn(2), Cyclic(2))").projectivity_status == ProjectivityStatus.UNCHECKED
    assert as_context("StdCtx(Zn(2))").R == cyclic_ring(2)
    assert as_ring("Op(Mat(2, Zn(2)))").order == 16
    assert as_ring("Corner(Zn(6), 3)").order == 2
    assert as_ring("End(Free(2 over Zn(2)))").order == 16
    assert as_ring("CtxRing(StdCtx(Zn(2)))").order == 16
    assert as_ring("GroupRing(Zn(2), Sym(3))").order == 64


@pytest.mark.parametrize("expr", [
    "Zn(0)", "Mat(Zn(2), 2)", "Corner(Zn(4), 2)", "Corner(Zn(4), 9)", "Sum(Zn(2), Zn(3))",
    "Sym(4)", '"loose string"', "Free(2 over Cyclic(2))",
])
def test_evaluation_errors(expr):
    with pytest.raises(EvaluationError):
        evaluate(expr) if '"' in expr else as_module(expr) if expr.startswith(("Sum", "Free")) else as_ring(expr)


def test_wrong_kind():
    with pytest.raises(EvaluationError):
        as_ring("Free(1 over Zn(2))")
    with pytest.raises(EvaluationError):
        as_context("Zn(2)")
    with pytest.raises(EvaluationError):
        as_extension("Zn(2)")


def test_corpora():
    assert get_corpus("default") is DEFAULT and get_corpus("quick") is QUICK
    with pytest.raises(EvaluationError):
        get_corpus("huge")
    assert len(DEFAULT.modules) == len(set(DEFAULT.modules))


@pytest.mark.parametrize("expr", QUICK.rings + QUICK.modules)
def test_quick_corpus_builds(expr):
    obj = evaluate(expr)
    if hasattr(obj, "mul"):
        assert check_ring_axioms(obj.add, obj.mul, obj.one)
    else:
        M = as_module(expr)
        assert check_module_axioms(M.ring, M.add, M.action)
