import pytest

from modunits.dsl import build, format_spec, parse_spec
from modunits.errors import SpecRangeError
from modunits.families import (
    FamilyDescriptor,
    build_family,
    canonicalize,
    check_descriptor,
    descriptors,
    family_order,
    family_text,
    parse_case,
    shape_report,
)


def test_every_small_descriptor_has_the_claimed_shape():
    count = 0
    for d in descriptors(128):
        rep = shape_report(d, build(build_family(d)))
        assert all(v for k, v in rep.items() if k.endswith("_ok")), (str(d), rep)
        count += 1
    assert count > 150


def test_canonical_chain_keeps_one_quaternion():
    node = canonicalize(parse_spec("Q8 . Q8 . Q8 . Z4"))
    assert format_spec(node).count("Q8") == 1


@pytest.mark.parametrize("text, case", [(3, 3), ("3", 3), ("iii", 3), ("(iv)", 4)])
def test_parse_case(text, case):
    assert parse_case(text) == case


@pytest.mark.parametrize(
    "d",
    [
        FamilyDescriptor("ST2", 1, n=1, m=1),
        FamilyDescriptor("ST1", 1, n=1, m=2),
        FamilyDescriptor("ST1", 2, k=1),
        FamilyDescriptor("ST3", 5),
        FamilyDescriptor("ST9", 1),
        FamilyDescriptor("ST1", 1, r=1),
    ],
)
def test_descriptor_constraints(d):
    with pytest.raises(SpecRangeError):
        check_descriptor(d)


def test_aliases_build_the_corollary_groups():
    a = FamilyDescriptor("ST5c", 3, n=2, m=1, k=1)
    b = FamilyDescriptor("ST5", 3, n=2, m=1, k=1)
    assert family_text(a) == family_text(b)


def test_double_leg_member_order():
    d = FamilyDescriptor("ST7", 1, n=1, m=1, k=1)
    assert family_text(d) == "D8 . (Z4 x Z4)"
    assert family_order(d) == build(build_family(d)).n == 64
