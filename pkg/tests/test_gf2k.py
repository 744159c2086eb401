import pytest
from hypothesis import given, strategies as st

from modunits.errors import ConfigError
from modunits.gf2k import field, field_of_order

degrees = st.integers(1, 8)


@st.composite
def triples(draw):
    F = field(draw(degrees))
    e = st.integers(0, F.q - 1)
    return F, draw(e), draw(e), draw(e)


@given(triples())
def test_ring_axioms(t):
    F, a, b, c = t
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(a, 1) == a
    assert F.add(a, a) == 0


@given(triples())
def test_inverse_and_frobenius(t):
    F, a, b, _ = t
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert F.square(F.add(a, b)) == F.add(F.square(a), F.square(b))
    assert F.pow(a, F.q) == a


def test_multiplicative_group_is_cyclic():
    for k in range(1, 9):
        F = field(k)
        orders = set()
        for a in range(1, F.q):
            e, x = 1, a
            while x != 1:
                x, e = F.mul(x, a), e + 1
            orders.add(e)
        assert max(orders) == F.q - 1


def test_field_lookup():
    assert field_of_order(4) == field(2)
    with pytest.raises(ConfigError):
        field(9)
    with pytest.raises((ConfigError, ValueError)):
        field_of_order(6)
