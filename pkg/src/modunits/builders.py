"""Constructors for the atoms and products used to describe 2-groups."""

from __future__ import annotations

from typing import Callable, Optional, Sequence

import numpy as np

from .errors import CapacityError, ConfigError, DomainError, SpecRangeError
from .group import MAX_ORDER, Group


def _atom(
    names: Sequence[str],
    moduli: Sequence[int],
    mul: Callable[[list[np.ndarray], list[np.ndarray]], list[np.ndarray]],
    c_vec: Optional[Sequence[int]],
    name: str,
) -> Group:
    n = int(np.prod(moduli))
    if n > MAX_ORDER:
        raise CapacityError(f"{name} has order {n} > {MAX_ORDER}")
    vecs = np.indices(moduli).reshape(len(moduli), -1).T
    strides = np.ones(len(moduli), dtype=np.int64)
    for i in range(len(moduli) - 2, -1, -1):
        strides[i] = strides[i + 1] * moduli[i + 1]
    a = [vecs[:, i][:, None] for i in range(len(moduli))]
    b = [vecs[:, i][None, :] for i in range(len(moduli))]
    out = mul(a, b)
    idx = np.zeros((n, n), dtype=np.int64)
    for i, (o, m) in enumerate(zip(out, moduli)):
        idx += (np.broadcast_to(o, (n, n)) % m) * strides[i]
    c = None if c_vec is None else int(np.dot(c_vec, strides))
    return Group(idx, names, vecs, c=c, name=name)


def _is_pow2(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


def cyclic(order: int, suffix: str = "") -> Group:
    """``Z_order``; the designated ``c`` is its unique involution."""
    if not _is_pow2(order) or order < 2:
        raise SpecRangeError(f"Z{order}: order must be a power of 2 with order >= 2 required")
    return _atom(
        [f"z{suffix}"], [order], lambda a, b: [a[0] + b[0]], [order // 2], f"Z{order}"
    )


def dihedral8(suffix: str = "") -> Group:
    """``<x, y | x^2 = y^2 = 1, [x, y] = c central>``."""

    def mul(a, b):
        i, j, k = a
        p, q, s = b
        return [i + p, j + q, k + s + j * p]

    return _atom([f"x{suffix}", f"y{suffix}", f"c{suffix}"], [2, 2, 2], mul, [0, 0, 1], "D8")


def quaternion8(suffix: str = "") -> Group:
    """``<x, y | x^4 = 1, x^2 = y^2 = [x, y] = c>``."""

    def mul(a, b):
        i, j, k = a
        p, q, s = b
        return [i + p, j + q, k + s + j * p + (i + p) // 2 + (j + q) // 2]

    return _atom([f"x{suffix}", f"y{suffix}", f"c{suffix}"], [2, 2, 2], mul, [0, 0, 1], "Q8")


def m2(u: int, v: int, suffix: str = "") -> Group:
    """``<a, b | a^(2^u) = b^(2^v) = 1, a^b = a^(1 + 2^(u-1))>`` with ``c = a^(2^(u-1))``."""
    if u < 2:
        raise SpecRangeError(f"M2({u},{v}): u ≥ 2 required")
    if v < 1:
        raise SpecRangeError(f"M2({u},{v}): v ≥ 1 required")
    half = 1 << (u - 1)

    def mul(a, b):
        i, j = a
        k, l = b
        return [i + k + k * j * half, j + l]

    return _atom([f"a{suffix}", f"b{suffix}"], [1 << u, 1 << v], mul, [half, 0], f"M2({u},{v})")


def m2_central(u: int, v: int = 1, suffix: str = "") -> Group:
    """``<a, b, c | a^(2^u) = b^(2^v) = c^2 = 1, [a, b] = c central>``."""
    if v < 1:
        raise SpecRangeError(f"M2({u},{v},1): v ≥ 1 required")
    if u < v:
        raise SpecRangeError(f"M2({u},{v},1): u ≥ v required")

    def mul(a, b):
        i, j, k = a
        p, q, s = b
        return [i + p, j + q, k + s + j * p]

    return _atom(
        [f"a{suffix}", f"b{suffix}", f"c{suffix}"],
        [1 << u, 1 << v, 2],
        mul,
        [0, 0, 1],
        f"M2({u},{v},1)",
    )


def dihedral(order: int, suffix: str = "") -> Group:
    """Dihedral group of the given order (at least 8), ``c`` the central involution."""
    if not _is_pow2(order) or order < 8:
        raise SpecRangeError(f"D{order}: order must be a power of 2 with order ≥ 8 required")
    m = order // 2

    def mul(a, b):
        i, j = a
        k, l = b
        return [i + k * (1 - 2 * j), j + l]

    return _atom([f"r{suffix}", f"s{suffix}"], [m, 2], mul, [m // 2, 0], f"D{order}")


def quaternion(order: int, suffix: str = "") -> Group:
    """Generalized quaternion group of the given order (at least 8)."""
    if not _is_pow2(order) or order < 8:
        raise SpecRangeError(f"Q{order}: order must be a power of 2 with order ≥ 8 required")
    m = order // 2

    def mul(a, b):
        i, j = a
        k, l = b
        return [i + k * (1 - 2 * j) + (j * l) * (m // 2), j + l]

    return _atom([f"r{suffix}", f"s{suffix}"], [m, 2], mul, [m // 2, 0], f"Q{order}")


def _merge_names(left: Sequence[str], right: Sequence[str]) -> list[str]:
    taken = set(left)
    out = list(left)
    for nm in right:
        while nm in taken:
            nm = nm + "'"
        taken.add(nm)
        out.append(nm)
    return out


def direct_product(G: Group, H: Group, name: str = "") -> Group:
    """``G x H``; at most one factor may be nonabelian.

    ``c`` comes from the nonabelian factor, otherwise from ``G`` when present.
    """
    if not G.is_abelian() and not H.is_abelian():
        raise DomainError("direct product of two nonabelian factors is not supported")
    n = G.n * H.n
    if n > MAX_ORDER:
        raise CapacityError(f"product order {n} exceeds the cap {MAX_ORDER}")
    table = (G.table[:, None, :, None] * H.n + H.table[None, :, None, :]).reshape(n, n)
    ex = np.concatenate(
        [np.repeat(G.exponents, H.n, axis=0), np.tile(H.exponents, (G.n, 1))], axis=1
    )
    if H.c is not None and (not H.is_abelian() or G.c is None):
        c = H.c
    elif G.c is not None:
        c = G.c * H.n
    else:
        c = None
    return Group(
        table,
        _merge_names(G.gen_names, H.gen_names),
        ex,
        c=c,
        name=name or f"{G.name} x {H.name}",
        check=False,
    )


def amalgamate(
    G: Group, H: Group, pairs: Sequence[tuple[int, int]], name: str = ""
) -> tuple[Group, np.ndarray, np.ndarray]:
    """Identify central elements ``g_i`` of ``G`` with ``h_i`` of ``H``.

    Returns ``(G x H)/D`` with ``D = <(g_i, h_i^-1)>`` together with the
    embeddings of ``G`` and ``H`` into it.  ``D`` must meet each factor
    trivially so that both embed.
    """
    for g, h in pairs:
        if not (G.is_central(g) and H.is_central(h)):
            raise DomainError("amalgamated elements must be central")
    zg = G.center()
    zh = H.center()
    # D lives in Z(G) x Z(H); build it by closure on index pairs.
    dset = {(0, 0)}
    gens = [(int(g), int(H.inv[h])) for g, h in pairs]
    frontier = [(0, 0)]
    while frontier:
        nxt = []
        for a, b in frontier:
            for g, h in gens:
                e = (int(G.table[a, g]), int(H.table[b, h]))
                if e not in dset:
                    dset.add(e)
                    nxt.append(e)
        frontier = nxt
    for a, b in dset:
        if (a == 0) != (b == 0):
            raise DomainError("identification is not injective on the amalgamated subgroup")
    dg = np.array([a for a, _ in dset], dtype=np.int64)
    dh = np.array([b for _, b in dset], dtype=np.int64)
    nq = G.n * H.n // len(dset)
    if nq > MAX_ORDER:
        raise CapacityError(f"product order {nq} exceeds the cap {MAX_ORDER}")
    # coset of (g, h) is {(g dg_i, h dh_i)}; the representative is its minimum pair index
    pg = G.table[:, dg]
    ph = H.table[:, dh]
    pidx = pg[:, None, :] * H.n + ph[None, :, :]
    rep = pidx.min(axis=2).ravel()
    reps = np.unique(rep)
    assert len(reps) == nq
    pos = np.full(G.n * H.n, -1, dtype=np.int64)
    pos[reps] = np.arange(nq)
    proj = pos[rep]
    rg = reps // H.n
    rh = reps % H.n
    prod = G.table[np.ix_(rg, rg)].astype(np.int64) * H.n + H.table[np.ix_(rh, rh)]
    table = proj[prod]
    ex = np.concatenate([G.exponents[rg], H.exponents[rh]], axis=1)
    out = Group(table, _merge_names(G.gen_names, H.gen_names), ex, name=name, check=False)
    embed_g = proj[np.arange(G.n) * H.n]
    embed_h = proj[np.arange(H.n)]
    if G.c is not None:
        out.c = int(embed_g[G.c])
    elif H.c is not None:
        out.c = int(embed_h[H.c])
    return out, embed_g, embed_h


def central_product(G: Group, H: Group, name: str = "") -> Group:
    """``(G x H)/<(c_G, c_H)>``; both factors need a designated ``c``."""
    if G.c is None or H.c is None:
        raise DomainError("central product requires both factors to carry c")
    out, _, _ = amalgamate(G, H, [(G.c, H.c)], name=name or f"{G.name} . {H.name}")
    return out
