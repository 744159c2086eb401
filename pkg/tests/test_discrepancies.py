"""Places where a direct computation disagrees with a printed closed form or Theta value."""

import pytest

from modunits.dsl import build
from modunits.formulas import TheoremCase, case_spec, vstar_closed
from modunits.order import OrderValue
from modunits.unitary import count_vstar_bruteforce, theta_lemma, vstar_recursion, vstar_recursion_detail


def test_quaternion_with_two_legs_brute_force_is_half_the_closed_form():
    spec = "Q8 . Z4 x Z2"
    case = TheoremCase("DQZZ", l=2, n1=2, m1=1, k=1)
    assert case_spec(case) == spec
    got = count_vstar_bruteforce(build(spec), 2, budget=1 << 31)
    assert got == 2 ** 23
    assert vstar_closed(case, 2) == OrderValue.from_int(2, 2 ** 24)
    assert vstar_recursion(spec, 2, "lemma") == vstar_closed(case, 2)


@pytest.mark.parametrize(
    "spec",
    ["M2(2,2) . Q8", "M2(2,3) . Q8", "M2(2,1,1) . Q8 . Z4", "M2(3,1,1) . Q8 . Z4", "Q8 . Z4 x Z4"],
)
def test_sampled_theta_reaches_the_ceiling(spec):
    G = build(spec)
    det = vstar_recursion_detail(G, 2, "sampled")
    assert det.exact and det.theta.ell_log2 == 0
    lem = theta_lemma(spec, 2)
    assert lem.ell_log2 < 0
    assert det.value.log2 == vstar_recursion(spec, 2, "lemma").log2 + lem.ell_log2
