"""Rewrite-lemma checks for central products with a central abelian part.

Each lemma instance takes an inner abelian factor ``G_i`` whose Frattini
subgroup sits inside ``N <= Z = <z1> x <z2>`` with ``c`` in a fixed leg, and
claims the isomorphism type of ``G_i Z``.  Every embedding of ``Frat(G_i)``
into ``N`` sending ``c`` to ``c`` is built and compared with the claimed
alternatives.  Items that assert a factor type cannot occur are checked by
finding no such embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Optional, Sequence


from .builders import amalgamate, cyclic, direct_product
from .dsl import Atom, build, build_atom
from .errors import DomainError
from .group import Group
from .iso import ISO_MAX_ORDER, element_classes, fingerprint, is_isomorphic

# (order exponent of z1, of z2, squared legs) per centre type; N = squares on marked legs
CENTRE_TYPES = {
    "A1": (0, 0),
    "A2": (1, 0),
    "A4": (1, 1),
}


def _z(k: int) -> str:
    return f"Z{1 << k}"


@dataclass(frozen=True)
class LemmaItem:
    lemma: str
    item: str
    centre: str
    leg: int
    atoms: Callable[[int, int], list]
    rhs: Optional[Callable[[int, int], list[str]]]
    cond: Callable[[int, int], bool] = lambda n, m: n >= m
    pair: bool = False


@dataclass
class ItemResult:
    lemma: str
    item: str
    n: int
    m: int
    leg: int
    factors: str
    embeddings: int
    ok: bool
    matched: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        tag = "ok" if self.ok else "FAIL"
        return (
            f"{self.lemma}({self.item}) n={self.n} m={self.m} leg={self.leg} "
            f"{self.factors}: {self.embeddings} embeddings, {tag}"
        )


def _m2(u: int, v: int) -> Atom:
    return Atom("M2", (u, v))


def _m2c(w: int) -> Atom:
    return Atom("M2c", (w, 1))


def _cpc_items() -> list[LemmaItem]:
    gt = lambda n, m: n > m
    eq = lambda n, m: n == m
    its = [
        # c in <z1>, N = Z
        LemmaItem("CPC1", "i", "A1", 1, lambda n, m: [_m2(n + 1, m + 1)], lambda n, m: [f"M2({n + 1},{m + 1})"]),
        LemmaItem("CPC1", "i'", "A1", 1, lambda n, m: [_m2(m + 1, n + 1)], None, gt),
        LemmaItem("CPC1", "ii'", "A1", 1, lambda n, m: [_m2(n + 1, v) for v in range(m + 2, n + 2)], None, gt),
        LemmaItem(
            "CPC1", "ii", "A1", 1,
            lambda n, m: [_m2(n + 1, v) for v in range(1, m + 1)],
            lambda n, m: [f"M2({n + 1},1) x {_z(m)}"],
        ),
        LemmaItem("CPC1", "iii'", "A1", 1, lambda n, m: [_m2(u, n + 1) for u in range(2, n + 2)], None, gt),
        LemmaItem(
            "CPC1", "iii", "A1", 1,
            lambda n, m: [_m2(u, n + 1) for u in range(2, m + 1)],
            lambda n, m: [f"M2({m + 1},1,1) . {_z(m)}"],
            eq,
        ),
        LemmaItem(
            "CPC1", "iv", "A1", 1,
            lambda n, m: [_m2(u, v) for u in range(2, n + 1) for v in range(1, n + 1)],
            lambda n, m: [f"M2({m + 1},1,1) . {_z(n)}", f"D8 . {_z(n)} x {_z(m)}"],
        ),
        LemmaItem("CPC1", "v'", "A1", 1, lambda n, m: [_m2c(n + 1)], None, gt),
        LemmaItem(
            "CPC1", "v", "A1", 1, lambda n, m: [_m2c(n + 1)],
            lambda n, m: [f"M2({m + 1},1,1) . {_z(m)}"], eq,
        ),
        LemmaItem(
            "CPC1", "vi", "A1", 1, lambda n, m: [_m2c(w) for w in range(1, n + 1)],
            lambda n, m: [f"M2({m + 1},1,1) . {_z(n)}", f"D8 . {_z(n)} x {_z(m)}"],
        ),
        # c in <z2>, N = Z
        LemmaItem("CPC2", "i", "A1", 2, lambda n, m: [_m2(m + 1, n + 1)], lambda n, m: [f"M2({m + 1},{n + 1})"]),
        LemmaItem("CPC2", "i'", "A1", 2, lambda n, m: [_m2(n + 1, m + 1)], None, gt),
        LemmaItem("CPC2", "ii'", "A1", 2, lambda n, m: [_m2(n + 1, v) for v in range(1, m + 2)], None, gt),
        LemmaItem(
            "CPC2", "ii", "A1", 2, lambda n, m: [_m2(n + 1, v) for v in range(1, m + 1)],
            lambda n, m: [f"M2({m + 1},1) x {_z(m)}"], eq,
        ),
        LemmaItem(
            "CPC2", "iii", "A1", 2, lambda n, m: [_m2(u, n + 1) for u in range(2, m + 1)],
            lambda n, m: [f"M2({n + 1},1,1) . {_z(m)}"],
        ),
        LemmaItem(
            "CPC2", "iv", "A1", 2,
            lambda n, m: [_m2(u, v) for u in range(2, n + 1) for v in range(1, n + 1)],
            lambda n, m: (
                [f"D8 x {_z(n)}", f"Q8 x {_z(n)}"] if m == 1
                else [f"M2({m + 1},1) x {_z(n)}", f"D8 . {_z(m)} x {_z(n)}"]
            ),
        ),
        LemmaItem(
            "CPC2", "v", "A1", 2, lambda n, m: [_m2c(n + 1)],
            lambda n, m: [f"M2({n + 1},1,1) . {_z(m)}"],
        ),
        LemmaItem(
            "CPC2", "vi", "A1", 2, lambda n, m: [_m2c(w) for w in range(1, n + 1)],
            lambda n, m: [f"M2({m + 1},1) x {_z(n)}", f"D8 . {_z(m)} x {_z(n)}"],
        ),
        # centre Z_{2^{n+1}} x Z_{2^m}, N = <z1^2> x <z2>
        LemmaItem("CPC3", "i'", "A2", 1, lambda n, m: [_m2(n + 1, v) for v in range(m + 2, n + 2)], None, gt),
        LemmaItem(
            "CPC3", "i", "A2", 1, lambda n, m: [_m2(n + 1, v) for v in range(1, m + 2)],
            lambda n, m: [f"M2({m + 1},1,1) . {_z(n + 1)}", f"D8 . {_z(n + 1)} x {_z(m)}"],
        ),
        LemmaItem(
            "CPC3", "ii", "A2", 1, lambda n, m: [_m2(u, m + 1) for u in range(2, m + 1)],
            lambda n, m: [f"M2({m + 1},1,1) . {_z(m + 1)}"], eq,
        ),
        LemmaItem("CPC3", "ii'", "A2", 1, lambda n, m: [_m2(u, n + 1) for u in range(2, m + 2)], None, gt),
        LemmaItem(
            "CPC3", "iii", "A2", 1,
            lambda n, m: [_m2(u, v) for u in range(2, n + 1) for v in range(1, n + 1)],
            lambda n, m: [f"M2({m + 1},1,1) . {_z(n + 1)}", f"D8 . {_z(n + 1)} x {_z(m)}"],
        ),
        LemmaItem("CPC3", "iv'", "A2", 1, lambda n, m: [_m2c(n + 1)], None, gt),
        LemmaItem(
            "CPC3", "iv", "A2", 1,
            lambda n, m: [_m2c(w) for w in range(1, (n if n > m else m + 1) + 1)],
            lambda n, m: [f"M2({m + 1},1,1) . {_z(n + 1)}", f"D8 . {_z(n + 1)} x {_z(m)}"],
        ),
        # same centre, c in <z2>
        LemmaItem("CPC4", "i'", "A2", 2, lambda n, m: [_m2(u, n + 1) for u in range(m + 2, n + 2)], None, gt),
        LemmaItem(
            "CPC4", "i", "A2", 2, lambda n, m: [_m2(u, n + 1) for u in range(2, m + 2)],
            lambda n, m: _cpc4_rhs(n, m),
        ),
        LemmaItem(
            "CPC4", "ii", "A2", 2, lambda n, m: [_m2(m + 1, v) for v in range(1, m + 1)],
            lambda n, m: [f"M2({m + 1},1) x {_z(m + 1)}"], eq,
        ),
        LemmaItem("CPC4", "ii'", "A2", 2, lambda n, m: [_m2(n + 1, v) for v in range(1, m + 2)], None, gt),
        LemmaItem(
            "CPC4", "iii", "A2", 2,
            lambda n, m: [_m2(u, v) for u in range(2, n + 1) for v in range(1, n + 1)],
            lambda n, m: _cpc4_rhs(n, m),
        ),
        LemmaItem(
            "CPC4", "iv", "A2", 2, lambda n, m: [_m2c(w) for w in range(1, n + 2)],
            lambda n, m: [f"M2({m + 1},1) x {_z(n + 1)}", f"D8 . {_z(m)} x {_z(n + 1)}"],
        ),
    ]
    # centre Z_{2^{n+1}} x Z_{2^{m+1}}, N = <z1^2> x <z2^2>, c in either leg
    for leg in (1, 2):
        legs = lambda n, m, leg=leg: (
            f"({_z(n + 1)} x {_z(m + 1)})" if leg == 1 else f"({_z(m + 1)} x {_z(n + 1)})"
        )
        its.append(LemmaItem(
            "CPC7", "i", "A4", leg,
            lambda n, m: [_m2(u, v) for u in range(2, n + 2) for v in range(1, n + 2)],
            lambda n, m, legs=legs: [f"D8 . {legs(n, m)}"],
        ))
        its.append(LemmaItem(
            "CPC7", "ii", "A4", leg, lambda n, m: [_m2c(w) for w in range(1, n + 2)],
            lambda n, m, legs=legs: [f"D8 . {legs(n, m)}"],
        ))
    return its


def _cpc4_rhs(n: int, m: int) -> list[str]:
    if m == 1:
        return [f"D8 x {_z(n + 1)}", f"Q8 x {_z(n + 1)}"]
    return [f"M2({m + 1},1) x {_z(n + 1)}", f"D8 . {_z(m)} x {_z(n + 1)}"]


def _ggc_items() -> list[LemmaItem]:
    gt = lambda n, m: n > m
    return [
        LemmaItem(
            "GGC1", "i", "A1", 1, lambda n, m: [(_m2(n + 1, m + 1), _m2(n + 1, m + 1))],
            lambda n, m: (
                ["M2(2,1,1) . D8", "M2(2,1,1) . Q8"] if n == 1
                else [f"M2({m + 1},1,1) . M2({n + 1},1)"]
            ),
            pair=True,
        ),
        LemmaItem(
            "GGC1", "ii", "A1", 1, lambda n, m: [(_m2(n + 1, m + 1), _m2(n + 1, 1))],
            lambda n, m: [f"M2({n + 1},{m + 1}) . D8"], pair=True,
        ),
        LemmaItem(
            "GGC1", "iii", "A1", 1, lambda n, m: [(_m2(n + 1, m + 1), _m2c(m + 1))],
            lambda n, m: [f"M2({n + 1},{m + 1}) . D8"], pair=True,
        ),
        LemmaItem(
            "GGC1", "iv", "A1", 1, lambda n, m: [(_m2c(m + 1), _m2c(m + 1))],
            lambda n, m: [f"M2({m + 1},1,1) . D8", f"M2({m + 1},1,1) . M2({m + 1},1)"], pair=True,
        ),
        LemmaItem(
            "GGC1", "v", "A1", 1, lambda n, m: [(_m2(n + 1, 1), _m2(n + 1, 1))],
            lambda n, m: [f"M2({n + 1},1) . D8", f"M2({n + 1},1) . M2({m + 1},1,1)"], pair=True,
        ),
        LemmaItem(
            "GGC2", "i", "A1", 2, lambda n, m: [(_m2(m + 1, n + 1), _m2(m + 1, n + 1))],
            lambda n, m: (
                [f"M2({n + 1},1,1) . D8", f"M2({n + 1},1,1) . Q8"] if m == 1
                else [f"M2({n + 1},1,1) . M2({m + 1},1)"]
            ),
            gt, True,
        ),
        LemmaItem(
            "GGC2", "ii", "A1", 2, lambda n, m: [(_m2(m + 1, n + 1), _m2(m + 1, 1))],
            lambda n, m: [f"M2({m + 1},{n + 1}) . D8"], gt, True,
        ),
        LemmaItem(
            "GGC2", "iii", "A1", 2, lambda n, m: [(_m2(m + 1, n + 1), _m2c(n + 1))],
            lambda n, m: [f"M2({m + 1},{n + 1}) . D8"], gt, True,
        ),
        LemmaItem(
            "GGC2", "iv", "A1", 2, lambda n, m: [(_m2c(n + 1), _m2c(n + 1))],
            lambda n, m: [f"M2({n + 1},1,1) . D8", f"M2({n + 1},1,1) . M2({m + 1},1)"], gt, True,
        ),
        LemmaItem(
            "GGC2", "v", "A1", 2, lambda n, m: [(_m2(m + 1, 1), _m2(m + 1, 1))],
            lambda n, m: [f"M2({m + 1},1) . D8"], gt, True,
        ),
    ]


LEMMA_ITEMS: list[LemmaItem] = _cpc_items() + _ggc_items()
LEMMAS = ("CPC1", "CPC2", "CPC3", "CPC4", "CPC7", "GGC1", "GGC2")


def centre_group(centre: str, n: int, m: int, leg: int) -> tuple[Group, list[int]]:
    """``Z = <z1> x <z2>`` with ``c`` in the chosen leg, and the elements of ``N``."""
    e1, e2 = CENTRE_TYPES[centre]
    o1, o2 = 1 << (n + e1), 1 << (m + e2)
    Z = direct_product(cyclic(o1, "1"), cyclic(o2, "2"), name=f"Z{o1} x Z{o2}")
    Z.c = (o1 // 2) * o2 if leg == 1 else o2 // 2
    s1, s2 = 1 << e1, 1 << e2
    nset = [i * o2 + j for i in range(0, o1, s1) for j in range(0, o2, s2)]
    return Z, nset


def _abelian_basis(G: Group, elems: Sequence[int]) -> list[int]:
    """Generators ``e_i`` with ``<elems> = <e_1> x ... x <e_r>``."""
    orders = G.element_orders()
    target = len(G.closure(elems))
    pool = sorted({int(e) for e in elems} | set(int(x) for x in G.closure(elems)), key=lambda g: -orders[g])

    def rec(chosen, size):
        if size == target:
            return chosen
        for g in pool:
            if g == 0 or g in chosen:
                continue
            if len(G.closure(chosen + [g])) == size * orders[g]:
                found = rec(chosen + [g], size * int(orders[g]))
                if found is not None:
                    return found
        return None

    basis = rec([], 1)
    assert basis is not None
    return basis


def _coords(G: Group, basis: Sequence[int], target: int) -> tuple[int, ...]:
    orders = G.element_orders()
    for ks in product(*[range(int(orders[b])) for b in basis]):
        x = 0
        for b, k in zip(basis, ks):
            x = G.table[x, G.power(b, k)]
        if x == target:
            return ks
    raise DomainError("element is not in the span")


def embeddings(G: Group, Z: Group, nset: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    """All injective maps ``Frat(G) -> N`` sending ``c`` to ``c``, as generator pairs."""
    frat = [int(x) for x in G.frattini_subgroup()]
    basis = _abelian_basis(G, frat)
    ck = _coords(G, basis, G.c)
    go, zo = G.element_orders(), Z.element_orders()
    cands = [[h for h in nset if zo[h] == go[b]] for b in basis]
    size = len(frat)
    for imgs in product(*cands):
        x = 0
        for h, k in zip(imgs, ck):
            x = Z.table[x, Z.power(h, k)]
        if x != Z.c:
            continue
        if len(Z.closure(list(imgs))) != size:
            continue
        yield list(zip(basis, imgs))


def _lhs_single(atom: Atom, Z: Group, nset) -> Iterator[Group]:
    G = build_atom(atom, "0")
    for pairs in embeddings(G, Z, nset):
        yield amalgamate(G, Z, pairs)[0]


def _lhs_pair(a1: Atom, a2: Atom, Z: Group, nset) -> Iterator[Group]:
    G1, G2 = build_atom(a1, "a"), build_atom(a2, "b")
    for p1 in embeddings(G1, Z, nset):
        K, e1, ez = amalgamate(G1, Z, p1)
        for p2 in embeddings(G2, Z, nset):
            K2, ek, e2 = amalgamate(K, G2, [(int(ez[h]), g) for g, h in p2])
            gens = [int(ek[e1[g]]) for g in range(G1.n)] + [int(e2[g]) for g in range(G2.n)]
            yield K2.subgroup(gens)


def _iso_key(G: Group):
    from collections import Counter

    return fingerprint(G), tuple(sorted(Counter(element_classes(G)).items()))


def check_item(item: LemmaItem, n: int, m: int) -> ItemResult:
    """Build every left side for one item at ``(n, m)`` and compare."""
    Z, nset = centre_group(item.centre, n, m, item.leg)
    atoms = item.atoms(n, m)
    label = ", ".join(" & ".join(str(a) for a in x) if item.pair else str(x) for x in atoms)
    res = ItemResult(item.lemma, item.item, n, m, item.leg, label, 0, True)
    rhs = [] if item.rhs is None else [build(s) for s in item.rhs(n, m)]
    seen: dict = {}
    for x in atoms:
        lhs_iter = _lhs_pair(x[0], x[1], Z, nset) if item.pair else _lhs_single(x, Z, nset)
        for L in lhs_iter:
            res.embeddings += 1
            if item.rhs is None:
                res.ok = False
                res.failures.append(f"{x}: embedding exists")
                continue
            key = _iso_key(L)
            if key not in seen:
                seen[key] = [(L, None)]
            match = None
            for L0, m0 in seen[key]:
                if m0 is not None and is_isomorphic(L, L0):
                    match = m0
                    break
            if match is None:
                for s, R in zip(item.rhs(n, m), rhs):
                    if R.n == L.n and is_isomorphic(L, R):
                        match = s
                        break
                seen[key].append((L, match or ""))
            if not match:
                res.ok = False
                res.failures.append(f"{x}: order {L.n} matches no alternative")
            elif match not in res.matched:
                res.matched.append(match)
    return res


def legal_tuples(item: LemmaItem, count: int = 2, limit: int = 4) -> list[tuple[int, int]]:
    """The smallest ``(n, m)`` where the item is non-vacuous and fits the iso cap.

    For existence items that means at least one embedding; for
    impossibility items it means the hypotheses hold with a non-empty
    factor list.
    """
    out = []
    cands = sorted(
        ((n, m) for n in range(1, limit + 1) for m in range(1, n + 1) if item.cond(n, m)),
        key=lambda t: (t[0] + t[1], t[0]),
    )
    for n, m in cands:
        atoms = item.atoms(n, m)
        if not atoms:
            continue
        # |G_i Z| = 4|Z|; a pair lives inside G_1 G_2 Z of order 16|Z|
        zsize = 1 << (n + m + sum(CENTRE_TYPES[item.centre]))
        if (16 if item.pair else 4) * zsize > ISO_MAX_ORDER:
            continue
        if item.rhs is not None:
            Z, nset = centre_group(item.centre, n, m, item.leg)
            firsts = [a[0] if item.pair else a for a in atoms]
            if not any(next(embeddings(build_atom(a, "0"), Z, nset), None) for a in firsts):
                continue
        out.append((n, m))
        if len(out) == count:
            break
    return out


def verify_lemmas(lemmas: Sequence[str] = LEMMAS, count: int = 2) -> list[ItemResult]:
    """Check every item of the chosen lemmas at its smallest legal tuples."""
    out = []
    for item in LEMMA_ITEMS:
        if item.lemma not in lemmas:
            continue
        for n, m in legal_tuples(item, count):
            out.append(check_item(item, n, m))
    return out


def quaternion_pair_check() -> bool:
    """``Q8 . Q8`` and ``D8 . D8`` are isomorphic."""
    return is_isomorphic(build("Q8 . Q8"), build("D8 . D8"))
