import numpy as np
import pytest
from hypothesis import given, strategies as st

from modunits.algebra import AlgebraElement, random_element
from modunits.dsl import build
from modunits.errors import CapacityError, NoRuleError
from modunits.gf2k import field
from modunits.order import OrderValue
from modunits.unitary import (
    count_vstar_bruteforce,
    is_unitary,
    s_subgroup,
    theta,
    theta_lemma,
    unitary_elements,
    vstar_recursion,
    vstar_recursion_detail,
)

ORDER16 = ["M2(2,2)", "M2(3,1)", "M2(2,1,1)", "D8 x Z2", "Q8 x Z2", "D8 . Z4", "Z4 x Z4", "Z8 x Z2"]
# brute force over GF(2), frozen from the generic engine
FROZEN_GF2 = {
    "D8": 64, "Q8": 64, "M2(2,2)": 2048, "M2(3,1)": 1024, "M2(2,1,1)": 4096,
    "D8 x Z2": 8192, "Q8 x Z2": 2048, "D8 . Z4": 2048, "Z4 x Z4": 2048,
}


@pytest.mark.parametrize("spec", sorted(FROZEN_GF2))
def test_engines_agree_with_frozen_counts(spec):
    G = build(spec)
    assert count_vstar_bruteforce(G, 2, engine="bitsliced") == FROZEN_GF2[spec]
    assert count_vstar_bruteforce(G, 2, engine="generic") == FROZEN_GF2[spec]


@pytest.mark.parametrize("spec", ["D8", "Q8"] + ORDER16)
def test_recursion_matches_brute_force_gf2(spec):
    G = build(spec)
    assert vstar_recursion(G, 2, "exhaustive") == OrderValue.from_int(2, count_vstar_bruteforce(G, 2))


@pytest.mark.parametrize("spec", ["D8", "Q8", "Z8", "Z4 x Z2", "Z2 x Z2 x Z2"])
def test_recursion_matches_brute_force_gf4(spec):
    G = build(spec)
    assert vstar_recursion(G, 4, "exhaustive") == OrderValue.from_int(4, count_vstar_bruteforce(G, 4))


@pytest.mark.parametrize("spec, q", [(s, 2) for s in ["D8", "Q8", "D16", "Q16"] + ORDER16] + [(s, 4) for s in ["D8", "Q8", "Z4 x Z2"]])
def test_brute_force_divides_group_of_units(spec, q):
    G = build(spec)
    n = count_vstar_bruteforce(G, q)
    assert q ** (G.n - 1) % n == 0


@given(st.sampled_from(["D8", "Q8", "Z4 x Z2"]), st.integers(0, 2**32 - 1))
def test_unitary_elements_form_a_group(spec, seed):
    G = build(spec)
    F = field(1)
    units = unitary_elements(G, F)
    rng = np.random.default_rng(seed)
    i, j = rng.integers(0, units.shape[0], 2)
    x, y = AlgebraElement(G, F, units[i]), AlgebraElement(G, F, units[j])
    assert is_unitary(x) and is_unitary(x * y)


def test_is_unitary_rejects_random_elements():
    G = build("D8")
    rng = np.random.default_rng(7)
    hits = sum(is_unitary(random_element(G, field(1), rng, True)) for _ in range(256))
    assert hits < 256


def test_budget_is_enforced():
    with pytest.raises(CapacityError):
        count_vstar_bruteforce(build("D8 . D8"), 2, budget=1 << 20)


@pytest.mark.parametrize("spec, q", [("M2(2,2)", 2), ("Q8", 2), ("Q8", 4), ("D8 . Z4", 2)])
def test_s_subgroup_members_are_involutions(spec, q):
    basis = s_subgroup(build(spec), q)
    assert basis.exact
    for w in basis.elements:
        one = AlgebraElement.one(w.group, w.field)
        u = one + w
        assert u * u == one


@pytest.mark.parametrize("q", [2, 4])
def test_exhaustive_theta_values(q):
    assert theta(build("M2(2,2)"), q) == OrderValue(q, -1, 2)
    assert theta(build("Q8"), q) == OrderValue(q, -2, 3)


def test_lemma_theta_needs_a_spec():
    from modunits.builders import dihedral8

    G = dihedral8()
    G.spec = None
    with pytest.raises(NoRuleError):
        theta_lemma(G, 2)


def test_sampled_theta_is_a_lower_bound_of_exhaustive():
    G = build("D8 . Z4")
    ex = theta(G, 2)
    det = vstar_recursion_detail(G, 2, "sampled")
    assert det.theta.log2 <= ex.log2


def test_direct_factor_two_brute_force():
    from modunits.formulas import udp_extend

    got = count_vstar_bruteforce(build("M2(2,2) x Z2"), 2, budget=1 << 31)
    assert got == 2 ** 21
    assert OrderValue.from_int(2, got) == udp_extend(OrderValue.from_int(2, 2048), 16, 4, 1)
