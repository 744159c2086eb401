"""Compiled GF(2) kernel for counting unitary units.

Free coefficients (all non-identity elements) split into a low block of
``nL`` bits and a high block.  For ``x = x0 + lo + hi`` with
``x0 = 1 + parity(lo) + parity(hi)`` the condition ``x x^* = 1`` restricted
to one coordinate per pair ``{h, h^-1}`` (``h != h^-1``) reads

    x0 (s(lo) + s(hi)) + A(lo) + A(hi) + B(lo, hi) = 0

with ``A`` quadratic, ``B`` bilinear and ``s`` linear.  Coordinates at the
identity and at involutions vanish automatically in characteristic 2.
``A(lo)`` is tabulated once; ``B(., hi)`` is linear in ``lo`` and is
tabulated per ``hi`` in two halves that stay in cache.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def low_tables(nL, bll, sl):
    size = 1 << nL
    a0 = np.zeros(size, dtype=np.uint64)
    s = np.zeros(size, dtype=np.uint64)
    par = np.zeros(size, dtype=np.uint8)
    for i in range(nL):
        top = 1 << i
        for j in range(top):
            lin = np.uint64(0)
            jj = j
            b = 0
            while jj:
                if jj & 1:
                    lin ^= bll[b, i]
                jj >>= 1
                b += 1
            a0[j | top] = a0[j] ^ lin
            s[j | top] = s[j] ^ sl[i]
            par[j | top] = par[j] ^ 1
    # w[ph][lo] folds the x0 choice into one lookup
    w = np.empty((2, size), dtype=np.uint64)
    for lo in range(size):
        a1 = a0[lo] ^ s[lo]
        if par[lo] == 0:
            w[0, lo] = a1
            w[1, lo] = a0[lo]
        else:
            w[0, lo] = a0[lo]
            w[1, lo] = a1
    return w, par


@njit(cache=True, nogil=True)
def count_range(nL, nH, w, par, blh, bhh, sh, hi_start, hi_stop):
    m1 = nL // 2
    m2 = nL - m1
    mask1 = (1 << m1) - 1
    ll = np.zeros(1 << m1, dtype=np.uint64)
    lh = np.zeros(1 << m2, dtype=np.uint64)
    v = np.zeros(max(nL, 1), dtype=np.uint64)
    size = 1 << nL
    total = 0
    for hi in range(hi_start, hi_stop):
        hh = np.uint64(0)
        ss = np.uint64(0)
        ph = 0
        for i in range(nL):
            v[i] = 0
        for j in range(nH):
            if (hi >> j) & 1:
                ss ^= sh[j]
                ph ^= 1
                for k in range(j + 1, nH):
                    if (hi >> k) & 1:
                        hh ^= bhh[j, k]
                for i in range(nL):
                    v[i] ^= blh[i, j]
        for i in range(m1):
            top = 1 << i
            for t in range(top):
                ll[t | top] = ll[t] ^ v[i]
        for i in range(m2):
            top = 1 << i
            for t in range(top):
                lh[t | top] = lh[t] ^ v[m1 + i]
        wrow = w[ph]
        for lo in range(size):
            x0 = 1 ^ par[lo] ^ ph
            val = wrow[lo] ^ ll[lo & mask1] ^ lh[lo >> m1] ^ hh
            if x0:
                val ^= ss
            if val == 0:
                total += 1
    return total
