import pytest
from hypothesis import given
from hypothesis import strategies as st

from regulus.dsl import ARITY, Node, ParseError, parse, to_text


def test_examples():
    assert parse("Mat(2, Zn(2))") == Node("Mat", (2, Node("Zn", (2,))))
    assert parse("GroupRing(Zn(3), Cyclic(2))") == Node("GroupRing", (Node("Zn", (3,)), Node("Cyclic", (2,))))
    assert parse("Klein4") == parse("Klein4()") == Node("Klein4")
    assert parse("Free(2 over Zn(4))") == parse("Free(2, Zn(4))")
    assert parse('TableModule("z2_over_z4.mod", Zn(4))').args[0] == "z2_over_z4.mod"


@pytest.mark.parametrize("text,offset", [
    ("Mat(2", 5),
    ("Mat(2,", 6),
    ("Zn(4))", 5),
    ("Zn(4, 5)", 0),
    ("Foo(1)", 0),
    ("Zn(%)", 3),
    ("", 0),
    ("Mat(2 Zn(2))", 6),
    ("over", 0),
])
def test_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset


def test_printing():
    assert to_text(parse("Free(2,Zn(4))")) == "Free(2 over Zn(4))"
    assert to_text(parse("Prod( Zn(2) ,Zn(3) )")) == "Prod(Zn(2), Zn(3))"
    assert to_text(parse('TableRing("f4.ring")')) == 'TableRing("f4.ring")'
    assert str(parse("Klein4")) == "Klein4()"


def _nodes():
    leaves = st.one_of(st.integers(0, 99), st.sampled_from(["a.mod", 'q"x', "b\\c"]))

    def extend(children):
        return st.sampled_from(sorted(ARITY)).flatmap(
            lambda c: st.tuples(*[children] * ARITY[c]).map(lambda args: Node(c, args)))

    return st.recursive(st.builds(Node, st.sampled_from([c for c, n in ARITY.items() if n == 0])) | leaves,
                        extend, max_leaves=8).filter(lambda n: isinstance(n, Node))


@given(_nodes())
def test_round_trip(node):
    assert parse(to_text(node)) == node
