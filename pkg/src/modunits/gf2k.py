"""Arithmetic in GF(2^k) for 1 <= k <= 8 with fixed reduction polynomials.

Elements are integers in ``[0, 2^k)`` whose bits are polynomial coefficients.
Full multiplication and inverse tables are cached per field, since every
field here has at most 256 elements.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ConfigError, DomainError

MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
}


def _clmul_reduce(a: int, b: int, k: int, modulus: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> k & 1:
            a ^= modulus
    return r


class GF2k:
    """The field with ``2^k`` elements."""

    __slots__ = ("k", "q", "modulus", "mul_table", "inv_table", "sq_table")

    def __init__(self, k: int):
        if k not in MODULI:
            raise ConfigError(f"field degree k={k} outside supported range 1..8")
        self.k = k
        self.q = 1 << k
        self.modulus = MODULI[k]
        q = self.q
        tab = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            for b in range(a, q):
                tab[a, b] = tab[b, a] = _clmul_reduce(a, b, k, self.modulus)
        tab.setflags(write=False)
        self.mul_table = tab
        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(tab[a] == 1)[0])
        inv.setflags(write=False)
        self.inv_table = inv
        sq = np.array([tab[a, a] for a in range(q)], dtype=np.uint8)
        sq.setflags(write=False)
        self.sq_table = sq

    def __repr__(self) -> str:
        return f"GF2k({self.k})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF2k) and other.k == self.k

    def __hash__(self) -> int:
        return hash(("GF2k", self.k))

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def square(self, a: int) -> int:
        return int(self.sq_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative inverse")
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def basis(self) -> list[int]:
        """A GF(2)-basis of the field viewed as a vector space."""
        return [1 << i for i in range(self.k)]


@lru_cache(maxsize=None)
def field(k: int) -> GF2k:
    """Cached field instance for degree ``k``."""
    return GF2k(k)


def field_of_order(q: int) -> GF2k:
    """Field with ``q`` elements, ``q`` a power of two up to 256."""
    if q < 2 or q & (q - 1):
        raise ConfigError(f"field order {q} is not a power of two")
    return field(q.bit_length() - 1)
