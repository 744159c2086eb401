"""Exact representation of values of the form ell * q^e.

Here ``ell`` is a (possibly fractional) power of two and ``q = 2^k`` is the
field order.  Every unitary subgroup order and every Theta value in this
package is of that shape, so comparisons are done on the exact log2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, DomainError


def _log2_exact(x: int) -> int:
    if x <= 0 or x & (x - 1):
        raise DomainError(f"{x} is not a positive power of two")
    return x.bit_length() - 1


@dataclass(frozen=True)
class OrderValue:
    """The number ``ell * q^exponent`` with ``ell = 2^ell_log2``."""

    q: int
    ell_log2: int
    exponent: int

    def __post_init__(self):
        _log2_exact(self.q)
        if self.q < 2:
            raise ConfigError("q must be at least 2")

    @classmethod
    def from_parts(cls, q: int, ell: Fraction | int, exponent: int) -> "OrderValue":
        ell = Fraction(ell)
        if ell.numerator == 1:
            lg = -_log2_exact(ell.denominator)
        elif ell.denominator == 1:
            lg = _log2_exact(ell.numerator)
        else:
            raise DomainError(f"ell={ell} is not a power of two")
        return cls(q, lg, exponent)

    @classmethod
    def from_int(cls, q: int, value: int, exponent: int | None = None) -> "OrderValue":
        """Write a power-of-two integer as ``ell * q^e``.

        With ``exponent`` omitted the largest ``e`` with ``ell >= 1`` is used.
        """
        t = _log2_exact(value)
        k = _log2_exact(q)
        if exponent is None:
            exponent = t // k
        return cls(q, t - k * exponent, exponent)

    @property
    def k(self) -> int:
        return self.q.bit_length() - 1

    @property
    def log2(self) -> int:
        """Exact base-2 logarithm of the value."""
        return self.ell_log2 + self.k * self.exponent

    @property
    def ell(self) -> Fraction:
        return Fraction(2) ** self.ell_log2

    @property
    def ell_num(self) -> int:
        return self.ell.numerator

    @property
    def ell_den(self) -> int:
        return self.ell.denominator

    def _check(self, other: "OrderValue"):
        if not isinstance(other, OrderValue):
            return NotImplemented
        if other.q != self.q:
            raise ConfigError("cannot combine values over different fields")
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, OrderValue):
            return self.q == other.q and self.log2 == other.log2
        if isinstance(other, int):
            return other > 0 and other & (other - 1) == 0 and self.log2 == other.bit_length() - 1
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.q, self.log2))

    def __lt__(self, other: "OrderValue") -> bool:
        self._check(other)
        return self.log2 < other.log2

    def __mul__(self, other: "OrderValue") -> "OrderValue":
        self._check(other)
        return OrderValue(self.q, self.ell_log2 + other.ell_log2, self.exponent + other.exponent)

    def __truediv__(self, other: "OrderValue") -> "OrderValue":
        self._check(other)
        return OrderValue(self.q, self.ell_log2 - other.ell_log2, self.exponent - other.exponent)

    def with_exponent(self, exponent: int) -> "OrderValue":
        """Same value rewritten with the given exponent of q."""
        return OrderValue(self.q, self.log2 - self.k * exponent, exponent)

    def is_integral(self) -> bool:
        return self.log2 >= 0

    def value(self) -> int:
        """Integer value, available when it is integral and below 2^128."""
        if self.log2 < 0:
            raise DomainError(f"{self} is not an integer")
        if self.log2 >= 128:
            raise DomainError(f"{self} does not fit in 128 bits")
        return 1 << self.log2

    def __str__(self) -> str:
        ell = self.ell
        return f"{ell}*{self.q}^{self.exponent}"

    def to_dict(self) -> dict:
        d = {
            "q": self.q,
            "ell_num": self.ell_num,
            "ell_den": self.ell_den,
            "exponent": self.exponent,
            "log2": self.log2,
        }
        if 0 <= self.log2 < 128:
            d["value"] = str(self.value())
        return d
