from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from modunits.dsl import build
from modunits.errors import ConfigError, DomainError, UnsupportedError
from modunits.formulas import (
    TheoremCase,
    abelian_vstar,
    case_order,
    case_spec,
    check_case,
    conjecture_divisibility,
    formula_for,
    grid_cases,
    omega_closed,
    omega_oqd,
    vstar_closed,
)
from modunits.order import OrderValue
from modunits.unitary import vstar_recursion

qs = st.sampled_from([2, 4, 8, 16])


@given(qs, st.integers(-8, 8), st.integers(0, 40), st.integers(-8, 8), st.integers(0, 40))
def test_order_value_arithmetic(q, l1, e1, l2, e2):
    a, b = OrderValue(q, l1, e1), OrderValue(q, l2, e2)
    assert (a * b).log2 == a.log2 + b.log2
    assert ((a * b) / b) == a
    assert (a < b) == (a.log2 < b.log2)
    if 0 <= a.log2 < 128:
        assert OrderValue.from_int(q, a.value()) == a


def test_order_value_parts():
    v = OrderValue.from_parts(4, Fraction(1, 2), 2)
    assert v.ell == Fraction(1, 2) and v.log2 == 3 and str(v) == "1/2*4^2"
    d = v.to_dict()
    assert (d["ell_num"], d["ell_den"], d["exponent"], d["log2"]) == (1, 2, 2, 3)
    with pytest.raises(DomainError):
        OrderValue.from_parts(2, Fraction(3, 2), 1)
    with pytest.raises(DomainError):
        OrderValue.from_int(2, 12)


@pytest.mark.parametrize("spec, q, value", [("Z4", 2, 8), ("Z4 x Z2", 2, 64), ("Z2", 4, 4)])
def test_abelian_examples(spec, q, value):
    assert abelian_vstar(build(spec), q) == OrderValue.from_int(q, value)


@pytest.mark.parametrize("q", [2, 4])
def test_closed_forms_agree_with_lemma_recursion(q):
    for case in grid_cases(3):
        closed = vstar_closed(case, q)
        assert closed == vstar_recursion(case_spec(case), q, "lemma"), case
        assert conjecture_divisibility(case, q), case


def test_worked_chain():
    case = TheoremCase("USMD", n=2, m=1, k=1)
    assert case_spec(case) == "M2(3,2)"
    want = OrderValue(2, 2, 17)
    assert vstar_closed(case, 2) == want
    assert vstar_recursion("M2(3,2)", 2, "lemma") == want


def test_case_orders_match_built_groups():
    for case in grid_cases(2):
        if case_order(case) <= 256:
            assert build(case_spec(case)).n == case_order(case), case


def test_omega_examples():
    assert omega_oqd("D", 2) == (20, 12)
    o1, oc = build("D8 . D8").omega_sets()
    assert (len(o1), len(oc)) == (20, 12)
    assert omega_closed(TheoremCase("DQZZ", l=1, n1=1, m1=1, k=1)) == (12, 4)


@pytest.mark.parametrize("case", [TheoremCase("USMD", n=1, m=2), TheoremCase("UMMD", k=2), TheoremCase("NOPE"), TheoremCase("USMD2", n=1, m=1, k=2)])
def test_case_side_conditions(case):
    with pytest.raises(ConfigError):
        check_case(case)


@pytest.mark.parametrize(
    "spec, rule",
    [("Z4 x Z2", "abelian"), ("D16", "dihedral order 16"), ("M2(2,2)", "USMD(n=1, m=1, k=1)"), ("D8 x Z2", "dihedral order 8 x Z2^1")],
)
def test_formula_recognition(spec, rule):
    assert formula_for(spec, 2)[1] == rule


def test_formula_unsupported():
    with pytest.raises(UnsupportedError):
        formula_for("Q8 . D8", 2)
