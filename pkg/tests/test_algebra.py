import numpy as np
import pytest
from hypothesis import given, strategies as st

from modunits.algebra import AlgebraElement, augmentation, mul_generic, mul_gf2_packed, psi, random_element, star
from modunits.dsl import build
from modunits.gf2k import field
from modunits.unitary import ins_generators

TEST_GROUPS = ["D8", "Q8", "M2(2,2)", "M2(2,1,1)", "D8 . Z4"]
_GROUPS = {s: build(s) for s in TEST_GROUPS}


@st.composite
def elements(draw, count=2, normalized=False):
    G = _GROUPS[draw(st.sampled_from(TEST_GROUPS))]
    F = field(draw(st.sampled_from([1, 2])))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    return G, F, [random_element(G, F, rng, normalized) for _ in range(count)]


@given(elements(count=3))
def test_star_is_an_involutive_anti_automorphism(data):
    G, F, (x, y, z) = data
    assert star(star(x)) == x
    assert star(x + y) == star(x) + star(y)
    assert star(x * y) == star(y) * star(x)
    assert star(x.scale(3 % F.q)) == star(x).scale(3 % F.q)
    assert (x * y) * z == x * (y * z)


@given(elements(count=2))
def test_psi_commutes_with_star(data):
    G, F, (x, y) = data
    assert psi(star(x)) == star(psi(x))
    assert psi(x * y) == psi(x) * psi(y)


@given(elements(count=2))
def test_augmentation_is_a_ring_map(data):
    G, F, (x, y) = data
    assert augmentation(x * y) == F.mul(augmentation(x), augmentation(y))
    assert augmentation(star(x)) == augmentation(x)


@given(st.sampled_from(TEST_GROUPS), st.integers(0, 2**32 - 1))
def test_packed_and_generic_products_agree(spec, seed):
    G = _GROUPS[spec]
    F = field(1)
    rng = np.random.default_rng(seed)
    x, y = (rng.integers(0, 2, G.n, dtype=np.uint8) for _ in range(2))
    assert np.array_equal(mul_gf2_packed(G, x, y), mul_generic(G, F, x, y))


@pytest.mark.parametrize("spec", TEST_GROUPS)
def test_xxstar_support_meets_omega1_only_at_identity(spec):
    G = _GROUPS[spec]
    F = field(1)
    o1 = np.array([g for g in G.omega_sets()[0] if g != 0])
    rng = np.random.default_rng(20261016)
    for _ in range(10_000):
        x = random_element(G, F, rng, normalized=True)
        w = (x * star(x)).coeffs
        assert w[0] == 1 and not w[o1].any()


@pytest.mark.parametrize("spec", TEST_GROUPS + ["Q8 . D8", "M2(3,2)"])
def test_ins_witness_identities_over_gf4(spec):
    G = build(spec)
    recipes = ins_generators(G, field(2))
    assert {r.alpha for r in recipes} <= {1, 2, 3}
    assert all(r.verified for r in recipes)
    if len(G.omega_sets()[1]):
        assert recipes
        per_alpha = {a: sum(r.alpha == a for r in recipes) for a in (1, 2, 3)}
        assert len(set(per_alpha.values())) == 1


def test_basis_arithmetic():
    G, F = _GROUPS["D8"], field(2)
    one = AlgebraElement.one(G, F)
    assert one * one == one
    x = AlgebraElement.from_terms(G, F, [(2, 1), (3, 2), (1, 1)])
    assert x.coeffs[1] == 3 and x.coeffs[2] == 3
