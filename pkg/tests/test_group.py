import numpy as np
import pytest
from hypothesis import given, strategies as st

from modunits.builders import amalgamate, central_product, cyclic, dihedral8, direct_product, m2, m2_central, quaternion8
from modunits.dsl import build

SMALL = ["Z2", "Z8", "Z4 x Z2", "D8", "Q8", "D16", "Q16", "M2(2,2)", "M2(3,1)", "M2(2,1,1)", "D8 . Z4", "Q8 . D8"]

# order, exponent, |Z|, |G'|, |Phi|, |Omega_1|, |Omega_c|, d(G)
FROZEN = {
    "D8": (8, 4, 2, 2, 2, 6, 2, 2),
    "Q8": (8, 4, 2, 2, 2, 2, 6, 2),
    "M2(2,2)": (16, 4, 4, 2, 4, 4, 4, 2),
    "M2(2,1,1)": (16, 4, 4, 2, 4, 8, 0, 2),
    "D16": (16, 8, 2, 4, 4, 10, 2, 2),
    "Q16": (16, 8, 2, 4, 4, 2, 10, 2),
    "D8 . Z4": (16, 4, 4, 2, 2, 8, 8, 3),
    "Q8 . D8": (32, 4, 2, 2, 2, 12, 20, 4),
}


def invariants(G):
    o1, oc = G.omega_sets()
    return (
        G.n, G.exponent(), len(G.center()), len(G.derived_subgroup()),
        len(G.frattini_subgroup()), len(o1), len(oc), G.min_generators(),
    )


@pytest.mark.parametrize("spec", sorted(FROZEN))
def test_frozen_invariants(spec):
    assert invariants(build(spec)) == FROZEN[spec]


@pytest.mark.parametrize("spec", SMALL)
def test_cayley_table_is_a_group(spec):
    G = build(spec)
    t = G.table
    assert G.check_associativity()
    assert np.array_equal(t[0], np.arange(G.n)) and np.array_equal(t[:, 0], np.arange(G.n))
    assert all(t[g, G.inv[g]] == 0 for g in range(G.n))
    for row in t:
        assert sorted(row) == list(range(G.n))


@given(st.sampled_from(SMALL), st.data())
def test_power_and_order_laws(spec, data):
    G = build(spec)
    g = data.draw(st.integers(0, G.n - 1))
    a, b = data.draw(st.integers(0, 20)), data.draw(st.integers(0, 20))
    assert G.mul(G.power(g, a), G.power(g, b)) == G.power(g, a + b)
    o = int(G.element_orders()[g])
    assert G.power(g, o) == 0 and G.n % o == 0


def test_presentation_relations():
    D = dihedral8()
    Q = quaternion8()
    for G, (r_ord, s_ord) in ((D, (4, 2)), (Q, (4, 4))):
        orders = G.element_orders()
        r = int(np.flatnonzero(orders == 4)[0])
        s = next(int(x) for x in range(G.n) if orders[x] == s_ord and x not in G.closure([r]))
        assert G.mul(G.mul(G.inverse(s), r), s) == G.inverse(r)
    M = m2(3, 2)
    assert M.n == 32 and len(M.derived_subgroup()) == 2
    C = m2_central(2, 1)
    assert C.n == 16 and len(C.center()) == 4


def test_products():
    A = direct_product(dihedral8(), cyclic(2))
    assert A.n == 16 and len(A.center()) == 4
    B = central_product(dihedral8(), quaternion8())
    assert B.n == 32 and len(B.center()) == 2
    G, eg, eh = amalgamate(dihedral8(), cyclic(4), [(int(dihedral8().derived_subgroup()[1]), 2)])
    assert G.n == 16
    assert len(set(int(x) for x in eg)) == 8 and len(set(int(x) for x in eh)) == 4


@pytest.mark.parametrize("spec", ["D8", "M2(2,2)", "D8 . Z4"])
def test_quotient_by_derived_is_abelian(spec):
    G = build(spec)
    gbar, proj = G.quotient_by_derived()
    assert gbar.is_abelian() and gbar.n * len(G.derived_subgroup()) == G.n
    for a in range(G.n):
        for b in range(G.n):
            assert proj[G.mul(a, b)] == gbar.mul(proj[a], proj[b])


def test_abelian_decomposition():
    assert tuple(build("Z8 x Z2 x Z4").abelian_decomposition().cyclic_orders) == (8, 4, 2)
