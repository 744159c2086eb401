"""Family builders for the classification theorems, with checks of their shape."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .dsl import Atom, CentralProduct, DirectProduct, Spec, format_spec, parse_spec
from .errors import SpecRangeError
from .group import Group

THEOREM_IDS = ("ST1", "ST2", "ST3", "ST4", "ST5", "ST6", "ST7", "ST5c", "ST6c")
_ALIASES = {"ST5c": "ST5", "ST6c": "ST6"}
CASES = {
    "ST1": 10, "ST2": 10, "ST3": 4, "ST4": 4, "ST5": 4, "ST6": 4, "ST7": 2,
}
# centre type: extra exponent on z1, on z2
CENTRE = {
    "ST1": (0, 0), "ST2": (0, 0), "ST3": (1, 0), "ST4": (1, 0),
    "ST5": (0, 1), "ST6": (0, 1), "ST7": (1, 1),
}
ROMAN = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x")


@dataclass(frozen=True)
class FamilyDescriptor:
    theorem: str
    case: int
    n: int = 1
    m: int = 1
    k: int = 1
    r: int = 2
    leg: int = 1  # ST7 only: which cyclic leg carries c

    def __str__(self) -> str:
        leg = f", leg={self.leg}" if self.base == "ST7" else ""
        return f"{self.theorem}({ROMAN[self.case - 1]}) n={self.n} m={self.m} k={self.k} r={self.r}{leg}"

    @property
    def base(self) -> str:
        return _ALIASES.get(self.theorem, self.theorem)


def parse_case(text: str | int) -> int:
    """Accept ``3``, ``"3"`` or ``"iii"``."""
    if isinstance(text, int):
        return text
    t = text.strip().strip("()").lower()
    if t.isdigit():
        return int(t)
    if t in ROMAN:
        return ROMAN.index(t) + 1
    raise SpecRangeError(f"unknown case {text!r}")


def _chain(parts: list[str]) -> str:
    return " . ".join(p for p in parts if p)


def _z(e: int) -> str:
    return f"Z{1 << e}"


def _kmin(theorem: str, case: int) -> int:
    # cases carrying a Q8 (and, in ST1/ST2, the pair of M2 factors) need a longer chain
    if theorem in ("ST1", "ST2"):
        return {1: 1, 2: 2, 3: 2, 4: 3, 5: 1, 6: 2, 7: 1, 8: 2, 9: 1, 10: 1}[case]
    if theorem == "ST7":
        return 1
    return {1: 1, 2: 2, 3: 1, 4: 1}[case]


def check_descriptor(d: FamilyDescriptor) -> None:
    """Raise ``SpecRangeError`` naming the violated constraint."""
    if d.theorem not in THEOREM_IDS:
        raise SpecRangeError(f"unknown theorem {d.theorem}")
    t = d.base
    if not 1 <= d.case <= CASES[t]:
        raise SpecRangeError(f"{t} has cases (i)..({ROMAN[CASES[t] - 1]})")
    if d.m < 1 or (d.n <= d.m if t == "ST2" else d.n < d.m):
        raise SpecRangeError(f"{t} requires {'n > m' if t == 'ST2' else 'n >= m'} >= 1")
    if d.r < 2:
        raise SpecRangeError("r >= 2 required")
    kmin = _kmin(t, d.case)
    if d.k < kmin:
        raise SpecRangeError(f"{t}({ROMAN[d.case - 1]}) requires k >= {kmin}")
    if d.leg not in (1, 2):
        raise SpecRangeError("leg must be 1 or 2")


def family_text(d: FamilyDescriptor) -> str:
    """DSL text of the family member, as printed in the theorem."""
    check_descriptor(d)
    t, c, n, m, k = d.base, d.case, d.n, d.m, d.k
    d8 = lambda count: ["D8"] * count
    tail = " x ".join(["Z2"] * (d.r - 2))
    if t == "ST1":
        core = {
            1: (_chain([f"M2({n + 1},{m + 1})"] + d8(k - 1)), None),
            2: (_chain([f"M2({n + 1},{m + 1})", "Q8"] + d8(k - 2)), None),
            3: (_chain([f"M2({n + 1},1)", f"M2({m + 1},1,1)"] + d8(k - 2)), None),
            4: (_chain([f"M2({n + 1},1)", f"M2({m + 1},1,1)", "Q8"] + d8(k - 3)), None),
            5: (_chain([f"M2({n + 1},1)"] + d8(k - 1)), _z(m)),
            6: (_chain([f"M2({n + 1},1)", "Q8"] + d8(k - 2)), _z(m)),
            7: (_chain([f"M2({m + 1},1,1)"] + d8(k - 1) + [_z(n)]), None),
            8: (_chain([f"M2({m + 1},1,1)", "Q8"] + d8(k - 2) + [_z(n)]), None),
            9: (_chain(d8(k) + [_z(n)]), _z(m)),
            10: (_chain(["Q8"] + d8(k - 1) + [_z(n)]), _z(m)),
        }[c]
    elif t == "ST2":
        core = {
            1: (_chain([f"M2({m + 1},{n + 1})"] + d8(k - 1)), None),
            2: (_chain([f"M2({m + 1},{n + 1})", "Q8"] + d8(k - 2)), None),
            3: (_chain([f"M2({n + 1},1,1)", f"M2({m + 1},1)"] + d8(k - 2)), None),
            4: (_chain([f"M2({n + 1},1,1)", f"M2({m + 1},1)", "Q8"] + d8(k - 3)), None),
            5: (_chain([f"M2({n + 1},1,1)"] + d8(k - 1) + [_z(m)]), None),
            6: (_chain([f"M2({n + 1},1,1)", "Q8"] + d8(k - 2) + [_z(m)]), None),
            7: (_chain([f"M2({m + 1},1)"] + d8(k - 1)), _z(n)),
            8: (_chain([f"M2({m + 1},1)", "Q8"] + d8(k - 2)), _z(n)),
            9: (_chain(d8(k) + [_z(m)]), _z(n)),
            10: (_chain(["Q8"] + d8(k - 1) + [_z(m)]), _z(n)),
        }[c]
    elif t == "ST3":
        core = {
            1: (_chain([f"M2({m + 1},1,1)"] + d8(k - 1) + [_z(n + 1)]), None),
            2: (_chain([f"M2({m + 1},1,1)", "Q8"] + d8(k - 2) + [_z(n + 1)]), None),
            3: (_chain(d8(k) + [_z(n + 1)]), _z(m)),
            4: (_chain(["Q8"] + d8(k - 1) + [_z(n + 1)]), _z(m)),
        }[c]
    elif t == "ST4":
        core = {
            1: (_chain([f"M2({m + 1},1)"] + d8(k - 1)), _z(n + 1)),
            2: (_chain([f"M2({m + 1},1)", "Q8"] + d8(k - 2)), _z(n + 1)),
            3: (_chain(d8(k) + [_z(m)]), _z(n + 1)),
            4: (_chain(["Q8"] + d8(k - 1) + [_z(m)]), _z(n + 1)),
        }[c]
    elif t == "ST5":
        core = {
            1: (_chain([f"M2({n + 1},1)"] + d8(k - 1)), _z(m + 1)),
            2: (_chain([f"M2({n + 1},1)", "Q8"] + d8(k - 2)), _z(m + 1)),
            3: (_chain(d8(k) + [_z(n)]), _z(m + 1)),
            4: (_chain(["Q8"] + d8(k - 1) + [_z(n)]), _z(m + 1)),
        }[c]
    elif t == "ST6":
        core = {
            1: (_chain([f"M2({n + 1},1,1)"] + d8(k - 1) + [_z(m + 1)]), None),
            2: (_chain([f"M2({n + 1},1,1)", "Q8"] + d8(k - 2) + [_z(m + 1)]), None),
            3: (_chain(d8(k) + [_z(m + 1)]), _z(n)),
            4: (_chain(["Q8"] + d8(k - 1) + [_z(m + 1)]), _z(n)),
        }[c]
    else:
        legs = f"({_z(n + 1)} x {_z(m + 1)})" if d.leg == 1 else f"({_z(m + 1)} x {_z(n + 1)})"
        core = (_chain((["Q8"] + d8(k - 1)) if c == 2 else d8(k)) + f" . {legs}", None)
    text, direct = core
    parts = [text] + ([direct] if direct else []) + ([tail] if tail else [])
    return " x ".join(parts)


def canonicalize(node: Spec) -> Spec:
    """Rewrite each central chain to carry at most one ``Q8``."""
    if isinstance(node, Atom):
        return node
    if isinstance(node, DirectProduct):
        return DirectProduct(canonicalize(node.left), canonicalize(node.right))
    chain: list[Spec] = []

    def flatten(nd):
        if isinstance(nd, CentralProduct):
            flatten(nd.left)
            flatten(nd.right)
        else:
            chain.append(canonicalize(nd))

    flatten(node)
    q8 = [i for i, x in enumerate(chain) if x == Atom("Q8")]
    for i in q8[: len(q8) // 2 * 2]:
        chain[i] = Atom("D8")
    out = chain[0]
    for x in chain[1:]:
        out = CentralProduct(out, x)
    return out


def build_family(d: FamilyDescriptor) -> Spec:
    """The canonical spec of a family member."""
    return canonicalize(parse_spec(family_text(d)))


def family_order(d: FamilyDescriptor) -> int:
    e1, e2 = CENTRE[d.base]
    return 1 << (d.n + d.m + e1 + e2 + 2 * d.k + d.r - 2)


def centre_type(d: FamilyDescriptor) -> tuple[int, ...]:
    """Cyclic orders of the centre claimed by the theorem, descending."""
    e1, e2 = CENTRE[d.base]
    orders = [1 << (d.n + e1), 1 << (d.m + e2)] + [2] * (d.r - 2)
    return tuple(sorted(orders, reverse=True))


def find_extension_kernel(G: Group, n: int, m: int) -> Optional[tuple[int, int]]:
    """``(z1, z2)`` with ``N = <z1> x <z2>`` central, ``|z1| = 2^n``, ``|z2| = 2^m`` and ``G/N`` elementary abelian."""
    cen = [int(x) for x in G.center()]
    orders = G.element_orders()
    frat = set(int(x) for x in G.frattini_subgroup())
    a = [z for z in cen if orders[z] == 1 << n]
    b = [z for z in cen if orders[z] == 1 << m]
    want = 1 << (n + m)
    for z1, z2 in product(a, b):
        N = G.closure([z1, z2])
        if len(N) == want and frat <= set(int(x) for x in N):
            return z1, z2
    return None


def shape_report(d: FamilyDescriptor, G: Group) -> dict:
    """Order, derived size, centre type and extension kernel for a built member."""
    cen = G.center()
    inv = G.subgroup(cen).abelian_decomposition()
    return {
        "order_ok": G.n == family_order(d),
        "derived_ok": len(G.derived_subgroup()) == 2,
        "centre": tuple(inv.cyclic_orders),
        "centre_ok": tuple(inv.cyclic_orders) == centre_type(d),
        "kernel_ok": find_extension_kernel(G, d.n, d.m) is not None,
    }


def descriptors(limit_order: int = 128, limit: int = 3):
    """Every descriptor with parameters up to ``limit`` whose order fits."""
    for t in ("ST1", "ST2", "ST3", "ST4", "ST5", "ST6", "ST7"):
        for case in range(1, CASES[t] + 1):
            for n, m, k, r in product(range(1, limit + 1), range(1, limit + 1), range(1, limit + 1), (2, 3)):
                for leg in ((1, 2) if t == "ST7" else (1,)):
                    d = FamilyDescriptor(t, case, n, m, k, r, leg)
                    try:
                        check_descriptor(d)
                    except SpecRangeError:
                        continue
                    if family_order(d) <= limit_order:
                        yield d


__all__ = [
    "FamilyDescriptor", "build_family", "family_text", "canonicalize", "check_descriptor",
    "family_order", "centre_type", "find_extension_kernel", "shape_report", "descriptors",
    "format_spec", "parse_case",
]
