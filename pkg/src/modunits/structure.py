"""Exact invariants of a spec computed from its expression tree alone.

Square counts compose through products: for a central product
``#{g^2 = 1} = (a1*b1 + ac*bc)/2`` and ``#{g^2 = c} = (a1*bc + ac*b1)/2``,
where ``a1, ac`` count elements of the left factor squaring to ``1`` and
``c``.  Nothing here enumerates group elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Optional

from .dsl import Atom, CentralProduct, DirectProduct, Spec, parse_spec
from .errors import UnsupportedError
from .group import AbelianInvariants, abelian_invariants_from_orders


def _count_linear(e: int, t: int, mod: int) -> int:
    """Number of ``i`` in ``Z_mod`` with ``i*e == t``."""
    g = gcd(e % mod, mod)
    return g if t % g == 0 else 0


def _m2_counts(u: int, v: int) -> tuple[int, int]:
    # (a^i b^j)^2 = a^(i(2 + j 2^(u-1))) b^(2j)
    mod = 1 << u
    half = 1 << (u - 1)
    js = [0] if v == 0 else sorted({0, 1 << (v - 1)})
    n1 = nc = 0
    for j in js:
        e = 2 + j * half
        n1 += _count_linear(e, 0, mod)
        nc += _count_linear(e, half, mod)
    return n1, nc


@dataclass(frozen=True)
class Structure:
    """Symbolic summary of a built-from-spec group."""

    order: int
    n1: int
    nc: int
    abelian: bool
    derived_order: int
    has_c: bool
    quotient_orders: Optional[tuple[int, ...]]
    abelian_orders: Optional[tuple[int, ...]]
    nonabelian_atoms: tuple[Atom, ...]
    central_cyclic: tuple[int, ...]
    direct_cyclic: tuple[int, ...]
    c_source: Optional[int] = None

    @property
    def omega1(self) -> int:
        return self.n1

    @property
    def omega_c(self) -> int:
        return 0 if self.abelian or not self.has_c else self.nc

    def gbar(self) -> AbelianInvariants:
        """Invariants of ``G/G'``."""
        if self.abelian:
            if self.abelian_orders is None:
                raise UnsupportedError("abelian invariants unavailable for this spec")
            return abelian_invariants_from_orders(self.abelian_orders)
        if self.derived_order != 2 or self.quotient_orders is None:
            raise UnsupportedError("G/G' needs |G'| = 2")
        return abelian_invariants_from_orders(self.quotient_orders)


# A leaf tag records (kind, order) for cyclic leaves so central/direct roles can be assigned.
@dataclass
class _Acc:
    st: Structure
    cyc_leaves: dict = field(default_factory=dict)


def _atom_structure(atom: Atom, leaf_id: int) -> _Acc:
    k, p = atom.kind, atom.params
    cyc = {}
    if k == "Z":
        o = p[0]
        st = Structure(o, 2, 2 if o >= 4 else 0, True, 1, True, (o // 2,), (o,), (), (), (), leaf_id)
        cyc = {leaf_id: o}
    elif k in ("D8", "Q8"):
        n1, nc = (6, 2) if k == "D8" else (2, 6)
        st = Structure(8, n1, nc, False, 2, True, (2, 2), None, (atom,), (), ())
    elif k == "M2":
        u, v = p
        n1, nc = _m2_counts(u, v)
        st = Structure(1 << (u + v), n1, nc, False, 2, True, (1 << (u - 1), 1 << v), None, (atom,), (), ())
    elif k == "M2c":
        u, v = p
        odd = 1 if (u == 1 and v == 1) else 0
        st = Structure(
            1 << (u + v + 1), 2 * (4 - odd), 2 * odd, False, 2, True, (1 << u, 1 << v), None, (atom,), (), ()
        )
    elif k in ("D", "Q"):
        o = p[0]
        n1, nc = (o // 2 + 2, 2) if k == "D" else (2, o // 2 + 2)
        st = Structure(o, n1, nc, False, o // 4, True, None, None, (atom,), (), ())
    else:
        raise UnsupportedError(f"unknown atom {atom}")
    return _Acc(st, cyc)


def _combine(node, a: _Acc, b: _Acc) -> _Acc:
    A, B = a.st, b.st
    cyc = {**a.cyc_leaves, **b.cyc_leaves}
    if isinstance(node, CentralProduct):
        n1 = (A.n1 * B.n1 + A.nc * B.nc) // 2
        nc = (A.n1 * B.nc + A.nc * B.n1) // 2
        central = set()
        for s in (A, B):
            if s.abelian and s.c_source is not None:
                central.add(s.c_source)
        qo = None
        if A.quotient_orders is not None and B.quotient_orders is not None:
            qo = A.quotient_orders + B.quotient_orders
        abelian = A.abelian and B.abelian
        st = Structure(
            A.order * B.order // 2,
            n1,
            nc,
            abelian,
            max(A.derived_order, B.derived_order),
            True,
            qo,
            None,
            A.nonabelian_atoms + B.nonabelian_atoms,
            A.central_cyclic + B.central_cyclic,
            (),
            A.c_source if abelian else None,
        )
        acc = _Acc(st, cyc)
        acc.central = getattr(a, "central", set()) | getattr(b, "central", set()) | central
        return acc
    # direct product: c from the nonabelian side, else the left side when it has one
    if not A.abelian and not B.abelian:
        raise UnsupportedError("direct product of two nonabelian factors")
    c_from_b = (not B.abelian) or (not A.has_c and B.has_c)
    if c_from_b:
        n1, nc = A.n1 * B.n1, A.n1 * B.nc
        qo = None
        if B.quotient_orders is not None and A.abelian_orders is not None:
            qo = A.abelian_orders + B.quotient_orders
    else:
        n1, nc = A.n1 * B.n1, A.nc * B.n1
        qo = None
        if A.quotient_orders is not None and B.abelian_orders is not None:
            qo = A.quotient_orders + B.abelian_orders
    abelian = A.abelian and B.abelian
    ao = None
    if abelian and A.abelian_orders is not None and B.abelian_orders is not None:
        ao = A.abelian_orders + B.abelian_orders
    c_source = None
    if abelian:
        c_source = B.c_source if c_from_b else A.c_source
    st = Structure(
        A.order * B.order,
        n1,
        nc,
        abelian,
        max(A.derived_order, B.derived_order),
        A.has_c or B.has_c,
        qo,
        ao,
        A.nonabelian_atoms + B.nonabelian_atoms,
        (),
        (),
        c_source,
    )
    acc = _Acc(st, cyc)
    acc.central = getattr(a, "central", set()) | getattr(b, "central", set())
    return acc


def analyze(node: Spec | str) -> Structure:
    """Exact structural invariants of a spec."""
    if isinstance(node, str):
        node = parse_spec(node)
    return _analyze(node)


@lru_cache(maxsize=4096)
def _analyze(node: Spec) -> Structure:
    counter = iter(range(1 << 30))

    def rec(nd) -> _Acc:
        if isinstance(nd, Atom):
            return _atom_structure(nd, next(counter))
        return _combine(nd, rec(nd.left), rec(nd.right))

    acc = rec(node)
    central_ids = getattr(acc, "central", set())
    st = acc.st
    central = tuple(sorted(acc.cyc_leaves[i] for i in central_ids if acc.cyc_leaves[i] > 2))
    direct = tuple(
        sorted(o for i, o in acc.cyc_leaves.items() if i not in central_ids)
    )
    return Structure(
        st.order,
        st.n1,
        st.nc,
        st.abelian,
        st.derived_order,
        st.has_c,
        st.quotient_orders,
        st.abelian_orders,
        tuple(sorted(st.nonabelian_atoms, key=str)),
        central,
        direct,
        st.c_source,
    )
