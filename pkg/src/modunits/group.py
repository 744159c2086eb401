"""Finite groups materialized as Cayley tables.

Elements are indexed ``0..n-1`` with index 0 the identity.  Groups built by
:mod:`modunits.builders` also carry, for every element, its exponent vector
over a list of named generators, and elements are sorted lexicographically
by those vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CapacityError, ConfigError, DomainError, UnsupportedError

MAX_ORDER = 4096
EXHAUSTIVE_ASSOC_LIMIT = 64
RANDOM_ASSOC_TRIPLES = 10_000


@dataclass(frozen=True)
class StructuralSubgroups:
    center: np.ndarray
    derived: np.ndarray
    frattini: np.ndarray


@dataclass(frozen=True)
class CommutatorForm:
    """Commutator pairing on ``G/Z(G)`` written in a chosen basis."""

    basis: tuple[int, ...]
    matrix: np.ndarray
    nondegenerate: bool

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant data of a finite abelian 2-group."""

    cyclic_orders: tuple[int, ...]
    torsion: tuple[int, ...]
    powers: tuple[int, ...]

    @property
    def order(self) -> int:
        return int(np.prod(self.cyclic_orders, dtype=object)) if self.cyclic_orders else 1

    def torsion_size(self, i: int) -> int:
        """``|A[2^i]|``, the number of elements killed by ``2^i``."""
        if i < len(self.torsion):
            return self.torsion[i]
        return self.torsion[-1]

    def power_size(self, i: int) -> int:
        """``|A^{2^i}|``."""
        if i < len(self.powers):
            return self.powers[i]
        return 1

    @property
    def squares_two_torsion(self) -> int:
        """``|A^2[2]|``: one factor of 2 per cyclic factor of order at least 4."""
        return 2 ** sum(1 for o in self.cyclic_orders if o >= 4)

    @property
    def omega1(self) -> int:
        return self.torsion_size(1)


def abelian_invariants_from_orders(orders: Iterable[int]) -> AbelianInvariants:
    """Invariants of a direct product of cyclic 2-groups of the given orders."""
    orders = sorted((int(o) for o in orders if o > 1), reverse=True)
    for o in orders:
        if o & (o - 1):
            raise ConfigError(f"cyclic order {o} is not a power of two")
    top = max((o.bit_length() - 1 for o in orders), default=0)
    torsion = []
    powers = []
    for i in range(top + 1):
        torsion.append(int(np.prod([min(o, 1 << i) for o in orders], dtype=object)) if orders else 1)
        powers.append(int(np.prod([max(o >> i, 1) for o in orders], dtype=object)) if orders else 1)
    return AbelianInvariants(tuple(orders), tuple(torsion), tuple(powers))


def _format_label(vec: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(vec, names):
        e = int(e)
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return " ".join(parts) if parts else "1"


class Group:
    """A finite group given by its Cayley table.

    ``c`` is an optional designated central involution.  ``exponents`` is an
    ``(n, len(gen_names))`` integer array used only for display and lookup.
    """

    def __init__(
        self,
        table: np.ndarray,
        gen_names: Sequence[str] = (),
        exponents: Optional[np.ndarray] = None,
        c: Optional[int] = None,
        name: str = "",
        check: bool = True,
        rng: Optional[np.random.Generator] = None,
    ):
        table = np.asarray(table)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ConfigError("Cayley table must be square")
        if n > MAX_ORDER:
            raise CapacityError(f"group order {n} exceeds the cap {MAX_ORDER}")
        self.table = table.astype(np.int32, copy=False)
        self.table.setflags(write=False)
        self.n = n
        self.gen_names = tuple(gen_names)
        if exponents is None:
            exponents = np.arange(n, dtype=np.int64)[:, None]
            self.gen_names = ("e",)
        self.exponents = np.asarray(exponents, dtype=np.int64)
        self.name = name
        self.spec = None
        if check:
            self._validate(rng)
        inv = np.empty(n, dtype=np.int32)
        rows, cols = np.nonzero(self.table == 0)
        inv[rows] = cols
        self.inv = inv
        if c is not None:
            c = int(c)
            if check and not (self.table[c, c] == 0 and c != 0 and self.is_central(c)):
                raise ConfigError("designated c must be a central involution")
        self.c = c
        self._cache: dict = {}

    def _validate(self, rng):
        n = self.n
        t = self.table
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise ConfigError("index 0 must be the identity")
        srt = np.sort(t, axis=1)
        if not (srt == ar).all() or not (np.sort(t, axis=0) == ar[:, None]).all():
            raise ConfigError("Cayley table is not a Latin square")
        if not self.check_associativity(rng):
            raise ConfigError("Cayley table is not associative")

    def check_associativity(self, rng: Optional[np.random.Generator] = None) -> bool:
        """Exhaustive for small groups, otherwise on random triples."""
        t = self.table
        n = self.n
        if n <= EXHAUSTIVE_ASSOC_LIMIT:
            lhs = t[t[:, :, None], np.arange(n)[None, None, :]]
            rhs = t[np.arange(n)[:, None, None], t[None, :, :]]
            return bool(np.array_equal(lhs, rhs))
        rng = rng if rng is not None else np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, RANDOM_ASSOC_TRIPLES))
        return bool(np.array_equal(t[t[a, b], c], t[a, t[b, c]]))

    # basic operations

    @property
    def order(self) -> int:
        return self.n

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Group({self.name or '?'}, order={self.n})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inverse(a), -e
        r = 0
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a^-1 b^-1 a b``."""
        t = self.table
        return int(t[t[self.inv[a], self.inv[b]], t[a, b]])

    def is_central(self, g: int) -> bool:
        return bool(np.array_equal(self.table[g, :], self.table[:, g]))

    def label(self, g: int) -> str:
        return _format_label(self.exponents[g], self.gen_names)

    def index_of(self, vec: Sequence[int]) -> int:
        """Index of the element with the given exponent vector."""
        key = self._cache.get("index")
        if key is None:
            key = {tuple(int(x) for x in row): i for i, row in enumerate(self.exponents)}
            self._cache["index"] = key
        try:
            return key[tuple(int(x) for x in vec)]
        except KeyError:
            raise DomainError(f"no element with exponent vector {tuple(vec)}") from None

    def squares(self) -> np.ndarray:
        ar = np.arange(self.n)
        return self.table[ar, ar]

    def element_orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            n = self.n
            ar = np.arange(n)
            orders = np.zeros(n, dtype=np.int64)
            orders[0] = 1
            cur = ar.copy()
            k = 1
            while (orders == 0).any():
                cur = self.table[cur, ar]
                k += 1
                hit = (cur == 0) & (orders == 0)
                orders[hit] = k
                if k > n:
                    raise DomainError("element order computation did not terminate")
            self._cache["orders"] = orders
        return self._cache["orders"]

    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders()))

    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            self._cache["abelian"] = bool(np.array_equal(self.table, self.table.T))
        return self._cache["abelian"]

    # subgroups

    def closure(self, gens: Iterable[int]) -> np.ndarray:
        """Sorted indices of the subgroup generated by ``gens``."""
        gens = np.unique(np.asarray(list(gens), dtype=np.int64))
        mask = np.zeros(self.n, dtype=bool)
        mask[0] = True
        frontier = np.array([0])
        while frontier.size and gens.size:
            prod = self.table[frontier[:, None], gens[None, :]].ravel()
            prod = np.unique(prod)
            new = prod[~mask[prod]]
            mask[new] = True
            frontier = new
        return np.flatnonzero(mask)

    def center(self) -> np.ndarray:
        if "center" not in self._cache:
            t = self.table
            self._cache["center"] = np.flatnonzero((t == t.T).all(axis=1))
        return self._cache["center"]

    def commutator_table(self) -> np.ndarray:
        t = self.table
        inv = self.inv
        return t[t[inv[:, None], inv[None, :]], t]

    def derived_subgroup(self) -> np.ndarray:
        if "derived" not in self._cache:
            comms = np.unique(self.commutator_table())
            self._cache["derived"] = self.closure(comms)
        return self._cache["derived"]

    def frattini_subgroup(self) -> np.ndarray:
        """``G^2 G'``, which is the Frattini subgroup of a finite 2-group."""
        if "frattini" not in self._cache:
            gens = np.union1d(np.unique(self.squares()), self.derived_subgroup())
            self._cache["frattini"] = self.closure(gens)
        return self._cache["frattini"]

    def structural_subgroups(self) -> StructuralSubgroups:
        return StructuralSubgroups(self.center(), self.derived_subgroup(), self.frattini_subgroup())

    def min_generators(self) -> int:
        """``d(G) = log2 |G / Frat(G)|``."""
        ratio = self.n // len(self.frattini_subgroup())
        return ratio.bit_length() - 1

    def omega_sets(self) -> tuple[np.ndarray, np.ndarray]:
        """Elements squaring to 1 and elements squaring to ``c``.

        The second set is empty for abelian groups or groups without ``c``.
        """
        sq = self.squares()
        omega1 = np.flatnonzero(sq == 0)
        if self.c is None or self.is_abelian():
            omega_c = np.zeros(0, dtype=np.int64)
        else:
            omega_c = np.flatnonzero(sq == self.c)
        return omega1, omega_c

    def subgroup(self, gens: Iterable[int], name: str = "") -> "Group":
        """The subgroup generated by ``gens`` as a standalone group."""
        elems = self.closure(gens)
        pos = np.full(self.n, -1, dtype=np.int64)
        pos[elems] = np.arange(len(elems))
        table = pos[self.table[np.ix_(elems, elems)]]
        c = None
        if self.c is not None and pos[self.c] >= 0:
            c = int(pos[self.c])
        sub = Group(table, self.gen_names, self.exponents[elems], c=None, name=name, check=False)
        if c is not None and sub.is_central(c):
            sub.c = c
        return sub

    def quotient(self, normal: Iterable[int], name: str = "") -> tuple["Group", np.ndarray]:
        """Quotient by a normal subgroup, with the projection map.

        Each coset is represented by its smallest index, so the canonical
        ordering is inherited from the parent.
        """
        nsub = np.asarray(sorted(set(int(x) for x in normal)), dtype=np.int64)
        cosets = self.table[:, nsub]
        reps = cosets.min(axis=1)
        uniq = np.unique(reps)
        if len(uniq) * len(nsub) != self.n:
            raise DomainError("subset is not a subgroup")
        pos = np.full(self.n, -1, dtype=np.int64)
        pos[uniq] = np.arange(len(uniq))
        proj = pos[reps]
        table = proj[self.table[np.ix_(uniq, uniq)]]
        q = Group(table, self.gen_names, self.exponents[uniq], name=name, check=False)
        if self.c is not None and proj[self.c] != 0 and q.is_central(int(proj[self.c])):
            q.c = int(proj[self.c])
        return q, proj

    def quotient_by_derived(self) -> tuple["Group", np.ndarray]:
        """``G/G'`` for groups whose derived subgroup has order at most 2."""
        der = self.derived_subgroup()
        if len(der) > 2:
            raise UnsupportedError(f"derived subgroup has order {len(der)} > 2")
        if "gbar" not in self._cache:
            qg, proj = self.quotient(der, name=f"({self.name})/G'")
            qg.c = None
            self._cache["gbar"] = (qg, proj)
        return self._cache["gbar"]

    def commutator_form(self) -> CommutatorForm:
        """Matrix of ``(a, b) -> [a, b]`` on ``G/Z(G)`` over GF(2).

        Requires ``G/Z(G)`` elementary abelian and ``G' <= <c>``.
        """
        der = self.derived_subgroup()
        if len(der) > 2:
            raise UnsupportedError("commutator form needs |G'| <= 2")
        cen = self.center()
        qz, proj = self.quotient(cen)
        sq = qz.squares()
        if not (qz.is_abelian() and (sq == 0).all()):
            raise UnsupportedError("G/Z(G) is not elementary abelian")
        basis: list[int] = []
        span = np.zeros(qz.n, dtype=bool)
        span[0] = True
        for g in range(self.n):
            img = proj[g]
            if not span[img]:
                basis.append(g)
                span[qz.closure([int(proj[b]) for b in basis])] = True
        d = len(basis)
        mat = np.zeros((d, d), dtype=np.uint8)
        for i in range(d):
            for j in range(d):
                mat[i, j] = self.commutator(basis[i], basis[j]) != 0
        rank = gf2_rank(mat)
        return CommutatorForm(tuple(basis), mat, rank == d)

    def abelian_decomposition(self) -> AbelianInvariants:
        if not self.is_abelian():
            raise DomainError("group is not abelian")
        n = self.n
        if n & (n - 1):
            raise UnsupportedError("only abelian 2-groups are decomposed")
        orders = self.element_orders()
        torsion = []
        i = 0
        while True:
            cnt = int((orders <= (1 << i)).sum())
            torsion.append(cnt)
            if cnt == n:
                break
            i += 1
        counts = [0] + [
            (torsion[j] // torsion[j - 1]).bit_length() - 1 for j in range(1, len(torsion))
        ]
        cyc = []
        for j in range(len(torsion) - 1, 0, -1):
            more = counts[j] - (counts[j + 1] if j + 1 < len(counts) else 0)
            cyc.extend([1 << j] * more)
        inv = abelian_invariants_from_orders(cyc)
        assert inv.torsion == tuple(torsion)
        return inv


def gf2_rank(mat: np.ndarray) -> int:
    """Rank over GF(2) of a 0/1 matrix."""
    m = (np.asarray(mat) & 1).astype(np.uint8).copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        piv = np.flatnonzero(m[r:, c])
        if piv.size == 0:
            continue
        p = r + piv[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        m[others] ^= m[r]
        r += 1
        if r == rows:
            break
    return r


def g_mul(G: Group, a: int, b: int) -> int:
    return G.mul(a, b)


def g_pow_inv(G: Group, a: int, e: int) -> int:
    """``a^e``, with negative ``e`` going through the inverse."""
    return G.power(a, e)
