"""Isomorphism testing for small groups given by Cayley tables."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .group import Group

ISO_MAX_ORDER = 256


@dataclass(frozen=True)
class Fingerprint:
    order: int
    exponent: int
    center: int
    derived: int
    rank: int
    order_histogram: tuple
    square_image: int
    omega_profile: tuple


def fingerprint(G: Group) -> Fingerprint:
    """Cheap isomorphism invariants; equal for isomorphic groups."""
    if "fingerprint" in G._cache:
        return G._cache["fingerprint"]
    orders = G.element_orders()
    sq = G.squares()
    cen = G.center()
    profile = []
    for z in cen:
        if z != 0 and G.table[z, z] == 0:
            profile.append((int((sq == 0).sum()), int((sq == z).sum())))
    fp = Fingerprint(
        G.n,
        G.exponent(),
        len(cen),
        len(G.derived_subgroup()),
        G.min_generators(),
        tuple(sorted(Counter(int(o) for o in orders).items())),
        len(np.unique(sq)),
        tuple(sorted(profile)),
    )
    G._cache["fingerprint"] = fp
    return fp


def element_classes(G: Group) -> list[tuple]:
    """Per-element invariant tuples.

    Each tuple (order, centralizer size, number of square roots, order of
    the square's centralizer, membership in ``Z``, ``G'`` and ``Frat``) is
    preserved by every isomorphism.
    """
    if "iso_classes" in G._cache:
        return G._cache["iso_classes"]
    t = G.table
    orders = G.element_orders()
    cent = (t == t.T).sum(axis=1)
    sq = G.squares()
    roots = np.bincount(sq, minlength=G.n)
    central = np.zeros(G.n, dtype=np.int64)
    central[G.center()] = 1
    der = np.zeros(G.n, dtype=np.int64)
    der[G.derived_subgroup()] = 1
    frat = np.zeros(G.n, dtype=np.int64)
    frat[G.frattini_subgroup()] = 1
    keys = [
        (int(orders[g]), int(cent[g]), int(roots[g]), int(cent[sq[g]]), int(roots[sq[g]]),
         int(central[g]), int(der[g]), int(frat[g]))
        for g in range(G.n)
    ]
    G._cache["iso_classes"] = keys
    return keys


def _generators(G: Group, keys) -> list[int]:
    """A generating set chosen greedily from the rarest element classes."""
    count = Counter(keys)
    ranked = sorted(range(1, G.n), key=lambda g: (count[keys[g]], -int(G.element_orders()[g]), g))
    gens: list[int] = []
    inside = np.zeros(G.n, dtype=bool)
    inside[0] = True
    while not inside.all():
        for g in ranked:
            if not inside[g]:
                gens.append(g)
                inside[G.closure(gens)] = True
                break
    # drop redundant generators
    i = 0
    while i < len(gens):
        trial = gens[:i] + gens[i + 1 :]
        if trial and len(G.closure(trial)) == G.n:
            gens = trial
        else:
            i += 1
    return gens


def _extend(G: Group, H: Group, phi: np.ndarray, dom: list[int], gens: list[int], imgs: list[int]):
    """Close the partial map over ``<gens>``; None on inconsistency."""
    phi = phi.copy()
    used = np.zeros(H.n, dtype=bool)
    used[phi[phi >= 0]] = True
    gt, ht = G.table, H.table
    queue = list(dom)
    head = 0
    while head < len(queue):
        a = queue[head]
        head += 1
        pa = phi[a]
        for g, h in zip(gens, imgs):
            x = gt[a, g]
            y = ht[pa, h]
            if phi[x] < 0:
                if used[y]:
                    return None
                phi[x] = y
                used[y] = True
                queue.append(x)
            elif phi[x] != y:
                return None
    return phi, queue


def find_isomorphism(G: Group, H: Group):
    """An isomorphism ``G -> H`` as an index array, or None."""
    if max(G.n, H.n) > ISO_MAX_ORDER:
        raise CapacityError(f"isomorphism search is capped at order {ISO_MAX_ORDER}")
    if G.n != H.n or fingerprint(G) != fingerprint(H):
        return None
    kg, kh = element_classes(G), element_classes(H)
    if Counter(kg) != Counter(kh):
        return None
    gens = _generators(G, kg)
    by_key: dict = {}
    for h in range(H.n):
        by_key.setdefault(kh[h], []).append(h)
    cands = [by_key.get(kg[g], []) for g in gens]
    phi0 = np.full(G.n, -1, dtype=np.int64)
    phi0[0] = 0

    def search(i, phi, dom, imgs):
        if i == len(gens):
            return phi if len(dom) == G.n else None
        for h in cands[i]:
            if phi[gens[i]] >= 0 and phi[gens[i]] != h:
                continue
            res = _extend(G, H, phi, dom, gens[: i + 1], imgs + [h])
            if res is None:
                continue
            found = search(i + 1, res[0], res[1], imgs + [h])
            if found is not None:
                return found
        return None

    return search(0, phi0, [0], [])


def is_isomorphic(G: Group, H: Group) -> bool:
    return find_isomorphism(G, H) is not None
