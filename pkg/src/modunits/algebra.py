"""The group algebra FG over GF(2^k) with dense coefficient vectors."""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .errors import DomainError, UnsupportedError
from .gf2k import GF2k, field
from .group import Group


class AlgebraElement:
    """An element ``sum_g a_g g`` of ``FG``; immutable."""

    __slots__ = ("group", "field", "coeffs")

    def __init__(self, group: Group, field: GF2k, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.uint8)
        if coeffs.shape != (group.n,):
            raise DomainError("coefficient vector length must equal |G|")
        if coeffs.size and int(coeffs.max()) >= field.q:
            raise DomainError("coefficient outside the field")
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        self.group = group
        self.field = field
        self.coeffs = coeffs

    @classmethod
    def zero(cls, G: Group, F: GF2k) -> "AlgebraElement":
        return cls(G, F, np.zeros(G.n, dtype=np.uint8))

    @classmethod
    def one(cls, G: Group, F: GF2k) -> "AlgebraElement":
        return cls.basis(G, F, 0)

    @classmethod
    def basis(cls, G: Group, F: GF2k, g: int, alpha: int = 1) -> "AlgebraElement":
        v = np.zeros(G.n, dtype=np.uint8)
        v[g] = alpha
        return cls(G, F, v)

    @classmethod
    def from_terms(cls, G: Group, F: GF2k, terms: Iterable[tuple[int, int]]) -> "AlgebraElement":
        """Build from ``(alpha, g)`` pairs, adding repeated group elements."""
        v = np.zeros(G.n, dtype=np.uint8)
        for alpha, g in terms:
            v[g] ^= alpha
        return cls(G, F, v)

    def _same(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            raise DomainError("operand is not an algebra element")
        if other.group is not self.group or other.field != self.field:
            raise DomainError("elements live in different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.group, self.field, self.coeffs ^ other.coeffs)

    __sub__ = __add__

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        if self.field.q == 2:
            return AlgebraElement(self.group, self.field, mul_gf2_packed(self.group, self.coeffs, other.coeffs))
        return AlgebraElement(self.group, self.field, mul_generic(self.group, self.field, self.coeffs, other.coeffs))

    def scale(self, alpha: int) -> "AlgebraElement":
        return AlgebraElement(self.group, self.field, self.field.mul_table[alpha][self.coeffs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            other.group is self.group
            and other.field == self.field
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.field.k, self.coeffs.tobytes()))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs)

    def star(self) -> "AlgebraElement":
        return star(self)

    def augmentation(self) -> int:
        return augmentation(self)

    def __repr__(self) -> str:
        terms = []
        for g in self.support():
            a = int(self.coeffs[g])
            lbl = self.group.label(int(g))
            if a == 1:
                terms.append(lbl)
            else:
                terms.append(f"{a}*{lbl}" if lbl != "1" else str(a))
        return " + ".join(terms) if terms else "0"


def mul_generic(G: Group, F: GF2k, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Convolution through the Cayley table with field multiplication tables."""
    z = np.zeros(G.n, dtype=np.uint8)
    t = G.table
    for a in np.flatnonzero(x):
        # z[a b] += x_a y_b, i.e. z[h] += x_a y[a^-1 h]
        z ^= F.mul_table[x[a]][y[t[G.inv[a]]]]
    return z


def _pack(bits: np.ndarray) -> np.ndarray:
    return np.packbits(bits.astype(np.uint8), bitorder="little")


def _unpack(words: np.ndarray, n: int) -> np.ndarray:
    return np.unpackbits(words, count=n, bitorder="little")


def mul_gf2_packed(G: Group, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """GF(2) product as an XOR of row-shuffled, bit-packed copies of ``y``."""
    supp = np.flatnonzero(x)
    if supp.size == 0:
        return np.zeros(G.n, dtype=np.uint8)
    rows = y[G.table[G.inv[supp]]].astype(np.uint8)
    packed = np.packbits(rows, axis=1, bitorder="little")
    acc = np.bitwise_xor.reduce(packed, axis=0)
    return _unpack(acc, G.n)


def alg_arith(op: str, x: AlgebraElement, y) -> AlgebraElement:
    """Dispatch ``add``, ``mul`` or ``scale`` (``y`` a field element)."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "scale":
        return x.scale(int(y))
    raise DomainError(f"unknown op {op!r}")


def star(x: AlgebraElement) -> AlgebraElement:
    """``sum a_g g -> sum a_g g^-1``."""
    v = np.zeros_like(x.coeffs)
    v[x.group.inv] = x.coeffs
    return AlgebraElement(x.group, x.field, v)


def augmentation(x: AlgebraElement) -> int:
    return int(np.bitwise_xor.reduce(x.coeffs)) if x.coeffs.size else 0


def hat(G: Group, S: Iterable[int], F: Optional[GF2k] = None) -> AlgebraElement:
    """The sum of the elements of ``S``; the field defaults to GF(2)."""
    F = field(1) if F is None else F
    v = np.zeros(G.n, dtype=np.uint8)
    for g in S:
        v[int(g)] = 1
    return AlgebraElement(G, F, v)


def psi(x: AlgebraElement) -> AlgebraElement:
    """Image of ``x`` under ``FG -> F[G/G']``."""
    G = x.group
    if len(G.derived_subgroup()) != 2:
        raise UnsupportedError("psi needs |G'| = 2")
    gbar, proj = G.quotient_by_derived()
    v = np.zeros(gbar.n, dtype=np.uint8)
    np.bitwise_xor.at(v, proj, x.coeffs)
    return AlgebraElement(gbar, x.field, v)


def random_element(G: Group, F: GF2k, rng: np.random.Generator, normalized: bool = False) -> AlgebraElement:
    v = rng.integers(0, F.q, size=G.n, dtype=np.uint8)
    if normalized:
        v[0] ^= np.bitwise_xor.reduce(v) ^ 1
    return AlgebraElement(G, F, v)
