import pytest
from hypothesis import given, strategies as st

from modunits.dsl import Atom, CentralProduct, DirectProduct, build, format_spec, parse_spec
from modunits.errors import SpecRangeError, SpecSyntaxError

atoms = st.sampled_from(["Z2", "Z4", "Z8", "D8", "Q8", "M2(2,2)", "M2(3,1)", "M2(2,1,1)"])


@st.composite
def specs(draw, depth=2):
    if depth == 0 or draw(st.booleans()):
        return draw(atoms)
    op = draw(st.sampled_from([" x ", " . "]))
    left, right = draw(specs(depth=depth - 1)), draw(specs(depth=depth - 1))
    return f"({left}){op}({right})"


@given(specs())
def test_format_parse_round_trip(text):
    node = parse_spec(text)
    again = parse_spec(format_spec(node))
    assert again == node


def test_central_binds_tighter_than_direct():
    node = parse_spec("D8 . Z4 x Z2")
    assert isinstance(node, DirectProduct)
    assert isinstance(node.left, CentralProduct)
    assert node.right == Atom("Z2") or format_spec(node.right) == "Z2"


@pytest.mark.parametrize(
    "text, offset",
    [("D8 x", 4), ("Q8 ..D8", 4), ("X9", 0), ("Z8 x (Z2", 8)],
)
def test_syntax_error_offsets(text, offset):
    with pytest.raises(SpecSyntaxError) as err:
        parse_spec(text)
    assert err.value.offset == offset


@pytest.mark.parametrize("text", ["Z3", "M2(1,2)", "Z1"])
def test_range_errors(text):
    with pytest.raises(SpecRangeError):
        build(text)


def test_orders():
    assert build("M2(3,2) . D8 x Z2").n == 256
    assert build("Q8 . Z4 x Z2").n == 32
