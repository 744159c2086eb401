"""Orders of unitary subgroups: exhaustive counts, S_{G'} and Theta.

Terminology used below: ``c`` generates ``G'`` (order 2), ``Gbar = G/G'``,
``Psi: FG -> F[Gbar]`` is the quotient map and ``Ker Psi = FG (1 + c)``.
For ``x`` with ``Psi(x)`` unitary, ``x x^*`` lies in ``1 + Ker Psi`` and is
written ``1 + sum_r beta_r r (1 + c)`` over coset representatives ``r``;
``beta_r`` is the coefficient of ``r c``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Optional, Sequence

import numpy as np

from .algebra import AlgebraElement, star
from .dsl import Atom, Spec, parse_spec
from .errors import CapacityError, DomainError, NoRuleError, UnsupportedError
from .formulas import abelian_vstar
from .gf2k import GF2k, field as gf_field
from .group import AbelianInvariants, Group
from .order import OrderValue
from .structure import Structure, analyze

DEFAULT_BUDGET = 1 << 26
DEFAULT_PATIENCE = 64
CHUNK_ROWS = 1 << 14
BITSLICED_MAX_ORDER = 64


def _as_field(F) -> GF2k:
    if isinstance(F, GF2k):
        return F
    q = int(F)
    k = q.bit_length() - 1
    if q < 2 or q != 1 << k:
        raise DomainError(f"field order {q} is not a power of two")
    return gf_field(k)


def worker_count(requested: Optional[int] = None) -> int:
    """Workers for partitioned searches, capped by ``UNITARY_THREADS``."""
    n = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get("UNITARY_THREADS")
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def is_unitary(x: AlgebraElement) -> bool:
    """``aug(x) = 1`` and ``x x^* = 1``."""
    if x.augmentation() != 1:
        return False
    prod = x * star(x)
    return bool(prod.coeffs[0] == 1 and not prod.coeffs[1:].any())


# ---------------------------------------------------------------- brute force


def _pair_reps(G: Group) -> np.ndarray:
    """One element from each pair ``{h, h^-1}`` with ``h != h^-1``."""
    idx = np.arange(G.n)
    return idx[idx < G.inv]


def _digits(start: int, stop: int, q: int, width: int) -> np.ndarray:
    """Rows of base-``q`` digits for the integers in ``[start, stop)``."""
    vals = np.arange(start, stop, dtype=np.int64)
    out = np.empty((vals.size, width), dtype=np.uint8)
    for j in range(width):
        out[:, j] = vals % q
        vals //= q
    return out


def _normalized_rows(start: int, stop: int, q: int, n: int) -> np.ndarray:
    """Candidates with free non-identity digits and the identity fixed last."""
    rows = np.empty((stop - start, n), dtype=np.uint8)
    if n > 1:
        rows[:, 1:] = _digits(start, stop, q, n - 1)
        rows[:, 0] = np.bitwise_xor.reduce(rows[:, 1:], axis=1) ^ 1
    else:
        rows[:, 0] = 1
    return rows


def _unitary_mask(G: Group, F: GF2k, rows: np.ndarray, pairs: np.ndarray) -> np.ndarray:
    """Streaming test of ``x x^* = 1``, dropping rows at their first mismatch."""
    alive = np.arange(rows.shape[0])
    mul = F.mul_table
    for h in pairs:
        if alive.size == 0:
            break
        sub = rows[alive]
        # (x x^*)_h = sum_a x_a x_{h^-1 a}
        perm = G.table[G.inv[h]]
        coef = np.bitwise_xor.reduce(mul[sub, sub[:, perm]], axis=1)
        alive = alive[coef == 0]
    mask = np.zeros(rows.shape[0], dtype=bool)
    mask[alive] = True
    return mask


def _count_generic_range(G: Group, F: GF2k, start: int, stop: int) -> int:
    pairs = _pair_reps(G)
    total = 0
    for lo in range(start, stop, CHUNK_ROWS):
        hi = min(stop, lo + CHUNK_ROWS)
        total += int(_unitary_mask(G, F, _normalized_rows(lo, hi, F.q, G.n), pairs).sum())
    return total


def unitary_elements(G: Group, F, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """All unitary coefficient vectors of ``FG`` as rows (small cases only)."""
    F = _as_field(F)
    cand = F.q ** (G.n - 1)
    if cand > budget:
        raise CapacityError(f"enumeration needs budget {cand} (have {budget})")
    pairs = _pair_reps(G)
    out = []
    for lo in range(0, cand, CHUNK_ROWS):
        rows = _normalized_rows(lo, min(cand, lo + CHUNK_ROWS), F.q, G.n)
        out.append(rows[_unitary_mask(G, F, rows, pairs)])
    return np.concatenate(out) if out else np.zeros((0, G.n), dtype=np.uint8)


@dataclass
class _BitslicedPlan:
    nL: int
    nH: int
    w: np.ndarray
    par: np.ndarray
    blh: np.ndarray
    bhh: np.ndarray
    sh: np.ndarray


def _bitsliced_plan(G: Group, low_bits: int = 20) -> _BitslicedPlan:
    from . import _bitsliced

    n = G.n
    pairs = _pair_reps(G)
    bit = np.zeros(n, dtype=np.uint64)
    pos = {int(h): i for i, h in enumerate(pairs)}
    for e in range(n):
        rep = min(e, int(G.inv[e]))
        if rep in pos and e != G.inv[e]:
            bit[e] = np.uint64(1) << np.uint64(pos[rep])
    free = np.arange(1, n)
    # B(g, h) = g h^-1 + h g^-1 projected to the pair coordinates
    bmat = bit[G.table[np.ix_(free, G.inv[free])]]
    s = bit[free]
    nL = min(len(free), low_bits)
    nH = len(free) - nL
    w, par = _bitsliced.low_tables(nL, np.ascontiguousarray(bmat[:nL, :nL]), np.ascontiguousarray(s[:nL]))
    return _BitslicedPlan(
        nL,
        nH,
        w,
        par,
        np.ascontiguousarray(bmat[:nL, nL:]),
        np.ascontiguousarray(bmat[nL:, nL:]),
        np.ascontiguousarray(s[nL:]),
    )


def _count_bitsliced(G: Group, workers: int) -> int:
    from . import _bitsliced

    if G.n - 1 > 62:
        raise CapacityError("bitsliced kernel supports |G| <= 63 free coefficients")
    plan = _bitsliced_plan(G)
    n_hi = 1 << plan.nH
    parts = max(1, min(n_hi, workers * 4))
    bounds = [(i * n_hi) // parts for i in range(parts + 1)]

    def run(i):
        return int(
            _bitsliced.count_range(
                plan.nL, plan.nH, plan.w, plan.par, plan.blh, plan.bhh, plan.sh, bounds[i], bounds[i + 1]
            )
        )

    if workers == 1:
        return sum(run(i) for i in range(parts))
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return sum(ex.map(run, range(parts)))


def count_vstar_bruteforce(
    G: Group,
    F,
    budget: int = DEFAULT_BUDGET,
    workers: Optional[int] = None,
    engine: str = "auto",
) -> int:
    """``|V_*(FG)|`` by testing every normalized element.

    The budget counts candidates, i.e. ``q^(|G|-1)`` elements of augmentation
    one.  ``engine`` is ``auto``, ``generic`` or ``bitsliced`` (GF(2) only).
    """
    F = _as_field(F)
    cand = F.q ** (G.n - 1)
    if cand > budget:
        raise CapacityError(f"brute force needs budget {cand} candidate evaluations (have {budget})")
    workers = worker_count(workers)
    if engine == "auto":
        engine = "bitsliced" if F.q == 2 and G.n <= BITSLICED_MAX_ORDER and G.n > 2 else "generic"
    if engine == "bitsliced":
        if F.q != 2:
            raise DomainError("the bitsliced engine is GF(2) only")
        return _count_bitsliced(G, workers)
    if engine != "generic":
        raise DomainError(f"unknown engine {engine!r}")
    parts = max(1, min(workers * 4, cand // CHUNK_ROWS + 1))
    bounds = [(i * cand) // parts for i in range(parts + 1)]
    if workers == 1:
        return sum(_count_generic_range(G, F, bounds[i], bounds[i + 1]) for i in range(parts))
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return sum(ex.map(lambda i: _count_generic_range(G, F, bounds[i], bounds[i + 1]), range(parts)))


# ----------------------------------------------------------- kernel geometry


@dataclass
class _Cosets:
    """Coset data of ``G' = {1, c}`` inside ``G``."""

    G: Group
    gbar: Group
    proj: np.ndarray
    c: int
    reps: np.ndarray
    omega1: np.ndarray
    omega_c: np.ndarray
    kind: np.ndarray  # per coset: 0 non-Omega, 1 in Omega_1, 2 in Omega_c

    @property
    def m(self) -> int:
        return self.gbar.n


def _cosets(G: Group) -> _Cosets:
    if "cosets" in G._cache:
        return G._cache["cosets"]
    der = G.derived_subgroup()
    if len(der) != 2:
        raise UnsupportedError(f"S_G' needs |G'| = 2, got {len(der)}")
    c = int(der[1])
    gbar, proj = G.quotient_by_derived()
    reps = np.zeros(gbar.n, dtype=np.int64)
    for g in range(G.n - 1, -1, -1):
        reps[proj[g]] = g
    sq = G.squares()
    omega1 = np.flatnonzero(sq == 0)
    omega_c = np.flatnonzero(sq == c)
    kind = np.zeros(gbar.n, dtype=np.int8)
    kind[proj[omega1]] = 1
    kind[proj[omega_c]] = 2
    out = _Cosets(G, gbar, proj, c, reps, omega1, omega_c, kind)
    G._cache["cosets"] = out
    return out


def _xxstar_rows(G: Group, F: GF2k, rows: np.ndarray, targets: Sequence[int]) -> np.ndarray:
    """Coefficients of ``x x^*`` at ``targets`` for each row ``x``."""
    mul = F.mul_table
    out = np.empty((rows.shape[0], len(targets)), dtype=np.uint8)
    for j, h in enumerate(targets):
        perm = G.table[G.inv[h]]
        out[:, j] = np.bitwise_xor.reduce(mul[rows, rows[:, perm]], axis=1)
    return out


def _bits_of(beta: np.ndarray, k: int) -> list[int]:
    """Pack rows of field coordinates into Python ints (``k`` bits each)."""
    m = beta.shape[1]
    weights = [1 << (k * j) for j in range(m)]
    out = []
    for row in beta:
        v = 0
        for j in np.flatnonzero(row):
            v |= int(row[j]) * weights[j]
        out.append(v)
    return out


class _GF2Span:
    """Incremental GF(2) basis over Python-int bit vectors."""

    def __init__(self):
        self.pivots: dict[int, int] = {}
        self.order: list[int] = []

    def reduce(self, v: int) -> int:
        while v:
            top = v.bit_length() - 1
            p = self.pivots.get(top)
            if p is None:
                return v
            v ^= p
        return 0

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        self.pivots[v.bit_length() - 1] = v
        self.order.append(v)
        return True

    @property
    def rank(self) -> int:
        return len(self.order)


@dataclass
class SSubgroupBasis:
    """A GF(2) basis of ``S_G'``; each ``w`` gives the member ``1 + w``."""

    group: Group
    field: GF2k
    elements: list
    rank: int
    method: str
    theta_log2: int
    t_rank: int
    omega1_clean: bool = True
    vectors: list = dc_field(default_factory=list, repr=False)

    @property
    def size_log2(self) -> int:
        return self.rank

    @property
    def exact(self) -> bool:
        """Exhaustive, or sampled and already at the ceiling ``q^(|Omega_c|/2)``."""
        if self.method == "exhaustive":
            return True
        return self.theta_log2 == self.field.k * (len(_cosets(self.group).omega_c) // 2)


def _kernel_element(cos: _Cosets, F: GF2k, beta: Sequence[int]) -> AlgebraElement:
    """``sum_r beta_r r (1 + c)``."""
    G = cos.G
    v = np.zeros(G.n, dtype=np.uint8)
    for r, b in enumerate(beta):
        if b:
            g = int(cos.reps[r])
            v[g] ^= b
            v[G.table[g, cos.c]] ^= b
    return AlgebraElement(G, F, v)


def _beta_of(cos: _Cosets, x: AlgebraElement) -> np.ndarray:
    """Inverse of ``_kernel_element`` on ``1 + Ker Psi``."""
    targets = cos.G.table[cos.reps, cos.c]
    beta = x.coeffs[targets].astype(np.uint8)
    at_reps = x.coeffs[cos.reps].copy()
    at_reps[0] ^= 1
    if not np.array_equal(at_reps, beta):
        raise DomainError("element does not lie in 1 + Ker Psi")
    return beta


def _psi_rows(cos: _Cosets, rows: np.ndarray) -> np.ndarray:
    bar = np.zeros((rows.shape[0], cos.m), dtype=np.uint8)
    for g in range(cos.G.n):
        bar[:, cos.proj[g]] ^= rows[:, g]
    return bar


def _t_vectors(cos: _Cosets, F: GF2k) -> list[np.ndarray]:
    """Generators ``w + w^*`` with ``w = alpha r (1 + c)``."""
    out = []
    inv_bar = cos.gbar.inv
    for r in range(cos.m):
        if cos.kind[r] != 0:
            continue
        for i in range(F.k):
            beta = np.zeros(cos.m, dtype=np.uint8)
            beta[r] ^= 1 << i
            beta[inv_bar[r]] ^= 1 << i
            out.append(beta)
    return out


def _finish_basis(cos: _Cosets, F: GF2k, vectors: list[int], method: str, clean: bool) -> SSubgroupBasis:
    k = F.k
    span = _GF2Span()
    tspan = _GF2Span()
    for b in _bits_of(np.array(_t_vectors(cos, F), dtype=np.uint8).reshape(-1, cos.m), k):
        tspan.add(b)
        span.add(b)
    for v in vectors:
        span.add(v)
    # Theta counts members supported on Omega_c cosets: rank minus the rank off them
    off_mask = 0
    for r in range(cos.m):
        if cos.kind[r] != 2:
            off_mask |= ((1 << k) - 1) << (k * r)
    off = _GF2Span()
    for v in span.order:
        off.add(v & off_mask)
    theta_log2 = span.rank - off.rank
    elements = []
    for v in span.order:
        beta = [(v >> (k * r)) & ((1 << k) - 1) for r in range(cos.m)]
        elements.append(_kernel_element(cos, F, beta))
    return SSubgroupBasis(
        cos.G, F, elements, span.rank, method, theta_log2, tspan.rank, clean, list(span.order)
    )


def s_subgroup_full(G: Group, F, budget: int = DEFAULT_BUDGET) -> SSubgroupBasis:
    """``S_G'`` by enumerating every ``x`` in ``V(FG)``; feasible only for tiny cases."""
    F = _as_field(F)
    cos = _cosets(G)
    cand = F.q ** (G.n - 1)
    if cand > budget:
        raise CapacityError(f"full S_G' enumeration needs budget {cand} (have {budget})")
    vectors: list[int] = []
    clean = True
    gb_pairs = _pair_reps(cos.gbar)
    targets = G.table[cos.reps, cos.c]
    om1 = [int(g) for g in cos.omega1 if g != 0]
    for lo in range(0, cand, CHUNK_ROWS):
        rows = _normalized_rows(lo, min(cand, lo + CHUNK_ROWS), F.q, G.n)
        bar = _psi_rows(cos, rows)
        keep = rows[_unitary_mask(cos.gbar, F, bar, gb_pairs)]
        if keep.size == 0:
            continue
        beta = _xxstar_rows(G, F, keep, targets)
        if om1 and _xxstar_rows(G, F, keep, om1).any():
            clean = False
        vectors.extend(set(_bits_of(np.unique(beta, axis=0), F.k)))
    return _finish_basis(cos, F, vectors, "exhaustive", clean)


def s_subgroup(
    G: Group,
    F,
    method: str = "exhaustive",
    budget: int = DEFAULT_BUDGET,
    patience: int = DEFAULT_PATIENCE,
    rng: Optional[np.random.Generator] = None,
) -> SSubgroupBasis:
    """A GF(2) basis of ``S_G' = {x x^* : Psi(x) unitary}``.

    ``exhaustive`` walks every unitary element of ``F[Gbar]`` (at most
    ``q^(|Gbar|-1)`` candidates, bounded by ``budget``) and lifts it along
    fixed coset representatives.  ``x -> x x^*`` is a homomorphism on
    ``N_Psi*`` and changing the lift multiplies by ``1 + w`` with ``w`` in
    ``Ker Psi``, which shifts ``x x^*`` by ``w + w^*``.  So the lifts plus
    the ``w + w^*`` span all of ``S_G'``.
    """
    F = _as_field(F)
    cos = _cosets(G)
    if method == "sampled":
        return _s_sampled(cos, F, patience, rng)
    if method != "exhaustive":
        raise DomainError(f"unknown method {method!r}")
    cand = F.q ** (cos.m - 1)
    if cand > budget:
        raise CapacityError(f"exhaustive S_G' needs budget {cand} (have {budget})")
    units = unitary_elements(cos.gbar, F, budget)
    targets = G.table[cos.reps, cos.c]
    om1 = [int(g) for g in cos.omega1 if g != 0]
    vectors: list[int] = []
    clean = True
    for lo in range(0, units.shape[0], CHUNK_ROWS):
        ub = units[lo : lo + CHUNK_ROWS]
        lift = np.zeros((ub.shape[0], G.n), dtype=np.uint8)
        lift[:, cos.reps] = ub
        beta = _xxstar_rows(G, F, lift, targets)
        if om1 and _xxstar_rows(G, F, lift, om1).any():
            clean = False
        vectors.extend(_bits_of(np.unique(beta, axis=0), F.k))
    return _finish_basis(cos, F, vectors, "exhaustive", clean)


def _frobenius(x: AlgebraElement) -> AlgebraElement:
    """``x^2`` in a commutative algebra of characteristic 2."""
    G = x.group
    v = np.zeros(G.n, dtype=np.uint8)
    np.bitwise_xor.at(v, G.squares(), x.field.sq_table[x.coeffs])
    return AlgebraElement(G, x.field, v)


def normalized_inverse(x: AlgebraElement) -> AlgebraElement:
    """Inverse of a normalized unit of a commutative 2-group algebra.

    ``x^(2^t) = 1`` once ``2^t`` reaches the group exponent, so
    ``x^-1 = prod_{i<t} x^(2^i)``.
    """
    if not x.group.is_abelian():
        raise DomainError("normalized_inverse needs a commutative algebra")
    if x.augmentation() != 1:
        raise DomainError("element is not normalized")
    t = x.group.exponent().bit_length() - 1
    acc = AlgebraElement.one(x.group, x.field)
    p = x
    for _ in range(t):
        acc = acc * p
        p = _frobenius(p)
    return acc


def _s_sampled(cos: _Cosets, F: GF2k, patience: int, rng, ins_limit: Optional[int] = None) -> SSubgroupBasis:
    G = cos.G
    rng = np.random.default_rng(0) if rng is None else rng
    targets = G.table[cos.reps, cos.c]
    span = _GF2Span()
    clean = True
    om1 = np.array([g for g in cos.omega1 if g != 0], dtype=np.int64)
    for b in _bits_of(np.array(_t_vectors(cos, F), dtype=np.uint8).reshape(-1, cos.m), F.k):
        span.add(b)
    gb_pairs = _pair_reps(cos.gbar)
    for rec in ins_generators(G, F, alphas=[1 << i for i in range(F.k)], limit_per_case=ins_limit):
        xbar = _psi_rows(cos, rec.witness.coeffs[None, :])
        if _unitary_mask(cos.gbar, F, xbar, gb_pairs)[0]:
            span.add(_bits_of(_beta_of(cos, rec.witness * star(rec.witness))[None, :], F.k)[0])
    max_rank = F.k * int((cos.kind == 2).sum()) + span.rank - _off_rank(cos, F, span)
    stale = 0
    while stale < patience and span.rank < max_rank:
        grew = False
        for ubar in _sample_unitary_bar(cos, F, rng):
            v = np.zeros(G.n, dtype=np.uint8)
            v[cos.reps] = ubar
            x = AlgebraElement(G, F, v)
            w = rng.integers(0, F.q, size=cos.m, dtype=np.uint8)
            x = x * (AlgebraElement.one(G, F) + _kernel_element(cos, F, w))
            xx = x * star(x)
            if om1.size and xx.coeffs[om1].any():
                clean = False
            grew |= span.add(_bits_of(_beta_of(cos, xx)[None, :], F.k)[0])
        stale = 0 if grew else stale + 1
    return _finish_basis(cos, F, list(span.order), "sampled", clean)


def _sample_unitary_bar(cos: _Cosets, F: GF2k, rng, tries: int = 64) -> Iterator[np.ndarray]:
    """Unitary elements of ``F[Gbar]`` from two sources.

    ``u (u^*)^-1`` is always unitary but collapses to 1 when ``Gbar`` is
    elementary abelian, so random normalized elements are also tested
    directly for ``u u^* = 1``.
    """
    u = AlgebraElement(cos.gbar, F, _renormalize(rng.integers(0, F.q, size=cos.m, dtype=np.uint8)))
    yield (u * normalized_inverse(star(u))).coeffs
    pairs = _pair_reps(cos.gbar)
    rows = np.array([_renormalize(rng.integers(0, F.q, size=cos.m, dtype=np.uint8)) for _ in range(tries)])
    for row in rows[_unitary_mask(cos.gbar, F, rows, pairs)]:
        yield row


def _renormalize(v: np.ndarray) -> np.ndarray:
    v = v.copy()
    v[0] ^= np.bitwise_xor.reduce(v) ^ 1
    return v


def _off_rank(cos: _Cosets, F: GF2k, span: _GF2Span) -> int:
    k = F.k
    off_mask = 0
    for r in range(cos.m):
        if cos.kind[r] != 2:
            off_mask |= ((1 << k) - 1) << (k * r)
    off = _GF2Span()
    for v in span.order:
        off.add(v & off_mask)
    return off.rank


# ------------------------------------------------------------ INS witnesses


@dataclass
class INSRecipe:
    """A witness ``x`` whose ``x x^*`` is the claimed member of ``S_G'``."""

    case: str
    elements: tuple
    alpha: int
    witness: AlgebraElement
    claimed: AlgebraElement
    verified: bool


def _ins_candidates(G: Group, c: int) -> Iterator[tuple[str, tuple]]:
    sq = G.squares()
    n = G.n
    t = G.table
    comm_c = None
    for h1 in range(1, n):
        for h2 in range(1, n):
            if h1 == h2:
                continue
            s1, s2 = sq[h1], sq[h2]
            comm = G.commutator(h1, h2)
            if h1 < h2 and s1 == c and s2 == c and comm == 0:
                yield "i", (h1, h2)
            if s1 == c and s2 == 0 and comm == 0:
                yield "ii", (h1, h2)
            if h1 < h2 and s1 == 0 and s2 == 0 and comm == c:
                yield "iii", (h1, h2)
            if s1 == c and s2 == 0 and comm == c:
                yield "iv", (h1, h2)
    for h in range(1, n):
        if t[sq[h], sq[h]] == c:
            yield "v", (h,)


def _ins_pair(G: Group, F: GF2k, case: str, hs: tuple, a: int) -> tuple[AlgebraElement, AlgebraElement]:
    A = AlgebraElement
    one = A.one(G, F)
    c = int(G.derived_subgroup()[1])
    gp = A.from_terms(G, F, [(1, 0), (1, c)])
    a2 = F.mul(a, a)
    if case == "v":
        (h,) = hs
        h2 = int(G.table[h, h])
        x = A.from_terms(G, F, [(a, 0), (a, h2), (1, h)])
        claim = one + A.basis(G, F, h2, a2) * gp
        return x, claim
    h1, h2 = hs
    h12 = int(G.table[h1, h2])
    if case == "i":
        x = A.from_terms(G, F, [(1, 0), (a, h1), (a, h2)])
        claim = one + A.from_terms(G, F, [(a, h1), (a, h2)]) * gp
    elif case == "ii":
        x = A.from_terms(G, F, [(1, 0), (a, h1), (a, h2)])
        claim = one + A.from_terms(G, F, [(a, h1), (a2, h12)]) * gp
    elif case == "iii":
        x = A.from_terms(G, F, [(1, 0), (a, h12), (a, h2)])
        claim = one + A.basis(G, F, h12, a) * gp
    elif case == "iv":
        x = A.from_terms(G, F, [(1, 0), (a, h1), (a, h2)])
        claim = one + A.basis(G, F, h1, a) * gp
    else:
        raise DomainError(f"unknown INS case {case!r}")
    return x, claim


def ins_generators(
    G: Group,
    F=None,
    alphas: Optional[Sequence[int]] = None,
    limit_per_case: Optional[int] = None,
) -> list[INSRecipe]:
    """Scan ``G`` for the five witness shapes and verify each identity.

    Shapes (``c`` generating ``G'``):
    (i) ``h1^2 = h2^2 = c``, commuting: ``x = 1 + a h1 + a h2``;
    (ii) ``h1^2 = c``, ``h2^2 = 1``, commuting: same ``x``;
    (iii) ``h1^2 = h2^2 = 1``, ``[h1, h2] = c``: ``x = 1 + a h1 h2 + a h2``;
    (iv) ``h2^2 = 1``, ``[h1, h2] = h1^2 = c``: ``x = 1 + a h1 + a h2``;
    (v) ``h^4 = c``: ``x = a + a h^2 + h``.
    """
    F = gf_field(1) if F is None else _as_field(F)
    der = G.derived_subgroup()
    if len(der) != 2:
        raise UnsupportedError("INS witnesses need |G'| = 2")
    c = int(der[1])
    alphas = list(range(1, F.q)) if alphas is None else list(alphas)
    seen: dict[str, int] = {}
    out = []
    for case, hs in _ins_candidates(G, c):
        if limit_per_case is not None and seen.get(case, 0) >= limit_per_case:
            continue
        seen[case] = seen.get(case, 0) + 1
        for a in alphas:
            x, claim = _ins_pair(G, F, case, hs, a)
            out.append(INSRecipe(case, hs, a, x, claim, x * star(x) == claim))
    return out


# ------------------------------------------------------------------- Theta


def _spec_of(G) -> Optional[Spec]:
    if isinstance(G, Group):
        spec = G.spec
    else:
        spec = G
    if spec is None:
        return None
    return parse_spec(spec) if isinstance(spec, str) else spec


def _canonical_atom(a: Atom) -> tuple:
    if a.kind == "M2" and tuple(a.params) == (2, 1):
        return ("D8",)
    if a.kind == "M2c" and tuple(a.params) == (1, 1):
        return ("D8",)
    return (a.kind, *a.params)


def theta_rule(st: Structure) -> tuple[int, str]:
    """Theta as ``(log2 of ell, rule name)`` with ``Theta = ell q^(|Omega_c|/2)``.

    Raises ``NoRuleError`` when no proved configuration applies.
    """
    if st.abelian or st.omega_c == 0:
        return 0, "trivial"
    if st.derived_order != 2:
        raise UnsupportedError("Theta needs |G'| = 2")
    atoms = [_canonical_atom(a) for a in st.nonabelian_atoms]
    kinds = [a[0] for a in atoms]
    central = list(st.central_cyclic)
    direct = list(st.direct_cyclic)
    if kinds.count("Q8") >= 2 or "D8" in kinds:
        return None, "usc"
    if any(a[0] == "M2" and a[1] > 2 for a in atoms):
        return None, "usc"
    if any(o >= 8 for o in central):
        return None, "usz"
    if any(a[0] in ("D", "Q") for a in atoms):
        raise NoRuleError()
    m2 = [a for a in atoms if a[0] == "M2"]
    m2c = [a for a in atoms if a[0] == "M2c"]
    nq = kinds.count("Q8")
    z4 = central.count(4)
    if not central and not direct:
        if atoms == [("M2", 2, 2)]:
            return -1, "gins-i"
        if len(atoms) == 1 and m2 and m2[0][2] >= 3:
            return -1, "gins2"
        if nq == 1 and len(m2) == 1 and len(atoms) == 2:
            return -1, "usdq"
        if nq == 1 and len(m2c) == 1 and len(atoms) == 2 and m2c[0][2] == 1:
            return -2, "m11dq"
    if nq == 1 and len(atoms) == 1 and not central:
        return -2, "gins-ii"
    if z4 == 1 and len(central) == 1:
        if nq == 1 and len(atoms) == 1:
            return -1, "dqzz"
        single_m2c = len(m2c) == 1 and m2c[0][2] == 1
        if not direct and single_m2c and nq <= 1 and len(atoms) == 1 + nq:
            return -1, "m11dq-z4"
    raise NoRuleError()


def theta_lemma(G, q) -> OrderValue:
    """Theta from the proved configurations, given a Group with spec, a spec or a Structure."""
    F = _as_field(q)
    if isinstance(G, Structure):
        st = G
    else:
        spec = _spec_of(G)
        if spec is None:
            raise NoRuleError("no-rule: group carries no spec")
        st = analyze(spec)
    lg, _ = theta_rule(st)
    e = st.omega_c // 2
    return OrderValue(F.q, 0 if lg is None else lg, e)


def theta(G: Group, F, method: str = "exhaustive", **kw) -> OrderValue:
    """``Theta(G)`` as ``ell * q^(|Omega_c|/2)``."""
    F = _as_field(F)
    if method == "lemma":
        return theta_lemma(G, F)
    if G.is_abelian():
        return OrderValue(F.q, 0, 0)
    basis = s_subgroup(G, F, method=method, **kw)
    return _theta_from_basis(basis)


def _theta_from_basis(basis: SSubgroupBasis) -> OrderValue:
    cos = _cosets(basis.group)
    e = len(cos.omega_c) // 2
    k = basis.field.k
    return OrderValue(basis.field.q, basis.theta_log2 - k * e, e)


# ---------------------------------------------------------------- recursion


@dataclass(frozen=True)
class RecursionResult:
    value: OrderValue
    theta: OrderValue
    theta_method: str
    exact: bool


def vstar_recursion(G, F, theta_method: str = "lemma", **kw) -> OrderValue:
    """``|V_*(FG)| = q^((|G| + |Omega_1| + |Omega_c|)/4) |V_*(F Gbar)| / Theta``."""
    return vstar_recursion_detail(G, F, theta_method, **kw).value


def vstar_recursion_detail(G, F, theta_method: str = "lemma", **kw) -> RecursionResult:
    F = _as_field(F)
    q = F.q
    if not isinstance(G, Group):
        st = G if isinstance(G, Structure) else analyze(G)
        if theta_method != "lemma":
            from .dsl import build

            return vstar_recursion_detail(build(G), F, theta_method, **kw)
        if st.abelian:
            v = abelian_vstar(st.gbar(), q)
            return RecursionResult(v, OrderValue(q, 0, 0), "trivial", True)
        th = theta_lemma(st, F)
        gbar = st.gbar()
        return RecursionResult(_combine(q, st.order, st.omega1, st.omega_c, gbar, th), th, "lemma", True)
    if G.is_abelian():
        return RecursionResult(abelian_vstar(G, q), OrderValue(q, 0, 0), "trivial", True)
    cos = _cosets(G)
    if theta_method == "lemma":
        th, exact = theta_lemma(G, F), True
    else:
        basis = s_subgroup(G, F, method=theta_method, **kw)
        th, exact = _theta_from_basis(basis), basis.exact
    gbar = cos.gbar.abelian_decomposition()
    v = _combine(q, G.n, len(cos.omega1), len(cos.omega_c), gbar, th)
    return RecursionResult(v, th, theta_method, exact)


def _combine(q: int, order: int, om1: int, omc: int, gbar: AbelianInvariants, th: OrderValue) -> OrderValue:
    num = order + om1 + omc
    if num % 4:
        raise DomainError("(|G| + |Omega_1| + |Omega_c|) is not divisible by 4")
    return OrderValue(q, 0, num // 4) * abelian_vstar(gbar, q) / th
