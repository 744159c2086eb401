"""Closed-form orders of unitary subgroups and Omega-set sizes.

The theorem tables in :func:`vstar_closed` are transcribed branch for branch;
conditions are kept exactly as printed even where branches could be merged.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product
from math import comb
from typing import Iterator, Optional

from .dsl import Atom, DirectProduct, format_spec, parse_spec
from .errors import ConfigError, DomainError, UnsupportedError
from .group import AbelianInvariants, Group
from .order import OrderValue
from .structure import analyze


def gamma(k: int) -> tuple[int, int]:
    """``(gamma1(k), gamma2(k)) = (2^(2k-1) + 2^(k-1), 2^(2k-1) - 2^(k-1))``."""
    if k < 1:
        raise DomainError("gamma needs k >= 1")
    return (1 << (2 * k - 1)) + (1 << (k - 1)), (1 << (2 * k - 1)) - (1 << (k - 1))


def gamma_binomial(k: int) -> tuple[int, int]:
    """Binomial-sum definitions: even resp. odd ``i`` of ``C(k, i) 3^(k-i)``."""
    even = sum(comb(k, i) * 3 ** (k - i) for i in range(0, k + 1, 2))
    odd = sum(comb(k, i) * 3 ** (k - i) for i in range(1, k + 1, 2))
    return even, odd


def abelian_vstar(A: Group | AbelianInvariants, q: int) -> OrderValue:
    """``|A^2[2]| * q^((|A| + |Omega_1(A)|)/2 - 1)`` for an abelian 2-group ``A``."""
    if isinstance(A, Group):
        if not A.is_abelian():
            raise DomainError("abelian_vstar needs an abelian group")
        A = A.abelian_decomposition()
    e2 = A.order + A.omega1
    return OrderValue.from_parts(q, A.squares_two_torsion, e2 // 2 - 1)


def dq_vstar(kind: str, n: int, q: int) -> OrderValue:
    """Dihedral or quaternion group of order ``2^(n+1)``."""
    if n < 2:
        raise DomainError("dq_vstar needs n >= 2")
    if kind == "dihedral":
        return OrderValue.from_parts(q, 1, 3 * (1 << (n - 1)))
    if kind == "quaternion":
        return OrderValue.from_parts(q, 4, 1 << n)
    raise ConfigError(f"unknown kind {kind!r}")


def udp_extend(base: OrderValue, gsize: int, omega1: int, kA: int, q: Optional[int] = None) -> OrderValue:
    """Lift ``|V_*(FG)|`` to ``G x Z_2^kA``."""
    if kA < 0:
        raise DomainError("kA must be nonnegative")
    q = base.q if q is None else q
    num = (gsize + omega1) * ((1 << kA) - 1)
    if num % 2:
        raise DomainError("odd exponent in UDP lift")
    return base * OrderValue(q, 0, num // 2)


def ccu_vstar(kA: int, q: int) -> OrderValue:
    """``M2(2,2) x Z_2^kA``: ``4 q^((|G| + |Omega_1|)/2 - 1)``."""
    gsize = 16 << kA
    omega1 = 4 << kA
    return OrderValue.from_parts(q, 4, (gsize + omega1) // 2 - 1)


THEOREMS = (
    "USMD", "USDQ", "USMD2", "UMMD", "UMMD2", "UM1D", "UM1DC", "UM1D2",
    "M11DQ", "M11DQ2", "M11DQ3", "DQZZ",
)


@dataclass(frozen=True)
class TheoremCase:
    theorem: str
    n: int = 1
    m: int = 1
    k: int = 1
    l: int = 1
    n1: int = 1
    m1: int = 1

    def __str__(self) -> str:
        if self.theorem == "DQZZ":
            return f"DQZZ(l={self.l}, n1={self.n1}, m1={self.m1}, k={self.k})"
        lpart = "" if self.theorem in ("USMD", "USDQ") else f"l={self.l}, "
        return f"{self.theorem}({lpart}n={self.n}, m={self.m}, k={self.k})"


def check_case(case: TheoremCase) -> None:
    """Raise ``ConfigError`` unless the theorem's side conditions hold."""
    t, n, m, k, l = case.theorem, case.n, case.m, case.k, case.l
    if t not in THEOREMS:
        raise ConfigError(f"unknown theorem {t}")
    if l not in (1, 2):
        raise ConfigError("l must be 1 or 2")
    if t == "DQZZ":
        if min(case.n1, case.m1, k) < 1:
            raise ConfigError("DQZZ needs n1, m1, k >= 1")
        return
    strict = t in ("USMD2", "UMMD2", "UM1D2", "M11DQ2")
    if m < 1 or (n <= m if strict else n < m):
        raise ConfigError(f"{t} needs {'n > m' if strict else 'n >= m'} >= 1")
    kmin = {"USMD": 1, "UMMD": 3, "UMMD2": 3}.get(t, 2)
    if k < kmin:
        raise ConfigError(f"{t} needs k >= {kmin}")


def _chain(*parts: str) -> str:
    return " . ".join(p for p in parts if p)


def _d8s(count: int) -> str:
    return " . ".join(["D8"] * count)


def case_spec(case: TheoremCase) -> str:
    """DSL text of the group a theorem case describes."""
    check_case(case)
    t, n, m, k = case.theorem, case.n, case.m, case.k
    h = "D8" if case.l == 1 else "Q8"
    if t == "USMD":
        return _chain(f"M2({n + 1},{m + 1})", _d8s(k - 1))
    if t == "USDQ":
        return _chain(f"M2({n + 1},{m + 1})", "Q8", _d8s(k - 2))
    if t == "USMD2":
        return _chain(f"M2({m + 1},{n + 1})", h, _d8s(k - 2))
    if t == "UMMD":
        return _chain(f"M2({n + 1},1)", f"M2({m + 1},1,1)", h, _d8s(k - 3))
    if t == "UMMD2":
        return _chain(f"M2({m + 1},1)", f"M2({n + 1},1,1)", h, _d8s(k - 3))
    if t == "UM1D":
        return f"{_chain(f'M2({n + 1},1)', h, _d8s(k - 2))} x Z{1 << m}"
    if t == "UM1DC":
        return f"{_chain(f'M2({n + 1},1)', h, _d8s(k - 2))} x Z{1 << (m + 1)}"
    if t == "UM1D2":
        return f"{_chain(f'M2({m + 1},1)', h, _d8s(k - 2))} x Z{1 << n}"
    if t == "M11DQ":
        return _chain(f"M2({m + 1},1,1)", h, _d8s(k - 2), f"Z{1 << n}")
    if t == "M11DQ2":
        return _chain(f"M2({n + 1},1,1)", h, _d8s(k - 2), f"Z{1 << m}")
    if t == "M11DQ3":
        return _chain(f"M2({n + 1},1,1)", h, _d8s(k - 2), f"Z{1 << (m + 1)}")
    if t == "DQZZ":
        return f"{_chain(h, _d8s(k - 1), f'Z{1 << case.n1}')} x Z{1 << case.m1}"
    raise ConfigError(t)


def case_order(case: TheoremCase) -> int:
    if case.theorem == "DQZZ":
        return 1 << (2 * case.k + case.n1 + case.m1)
    extra = 1 if case.theorem in ("UM1DC", "M11DQ3") else 0
    return 1 << (case.n + case.m + 2 * case.k + extra)


def omega_oqd(kind: str, k: int) -> tuple[int, int]:
    """Omega sizes of ``D8^k`` (``kind='D'``) or ``Q8 . D8^(k-1)`` (``kind='Q'``)."""
    g1, g2 = gamma(k)
    if kind == "D":
        return 2 * g1, 2 * g2
    if kind == "Q":
        return 2 * g2, 2 * g1
    raise ConfigError(kind)


def _swap(pair: tuple[int, int], l: int) -> tuple[int, int]:
    return pair if l == 1 else (pair[1], pair[0])


def omega_closed(case: TheoremCase, allow_structural: bool = True) -> tuple[int, int]:
    """``(|Omega_1|, |Omega_c|)`` from the theorem statements.

    Corollaries print no Omega values; for those the sizes come from the
    exact product rule in :mod:`modunits.structure` when ``allow_structural``.
    """
    check_case(case)
    t, n, m, k, l = case.theorem, case.n, case.m, case.k, case.l
    if t in ("USMD", "USDQ", "USMD2"):
        return 1 << (2 * k), 1 << (2 * k)
    if t == "UMMD":
        if n == 1:
            return _swap(((1 << 2 * k) + (1 << k + 1), (1 << 2 * k) - (1 << k + 1)), l)
        return 1 << (2 * k), 1 << (2 * k)
    if t == "UM1D":
        if n == 1:
            return _swap(((1 << 2 * k + 1) + (1 << k + 1), (1 << 2 * k + 1) - (1 << k + 1)), l)
        return 1 << (2 * k + 1), 1 << (2 * k + 1)
    if t == "UM1D2":
        if m == 1:
            return _swap(((1 << 2 * k + 1) + (1 << k + 1), (1 << 2 * k + 1) - (1 << k + 1)), l)
        return 1 << (2 * k + 1), 1 << (2 * k + 1)
    if t == "M11DQ":
        if n == 1:
            return _swap(((1 << 2 * k) + (1 << k + 1), (1 << 2 * k) - (1 << k + 1)), l)
        return 1 << (2 * k + 1), 1 << (2 * k + 1)
    if t == "DQZZ":
        if case.n1 == 1:
            return _swap(((1 << 2 * k + 1) + (1 << k + 1), (1 << 2 * k + 1) - (1 << k + 1)), l)
        return 1 << (2 * k + 2), 1 << (2 * k + 2)
    if allow_structural:
        st = analyze(case_spec(case))
        return st.omega1, st.omega_c
    raise UnsupportedError(f"no printed Omega values for {t}")


def _ell(case: TheoremCase) -> int:
    t, n, m, k, l = case.theorem, case.n, case.m, case.k, case.l
    n1, m1 = case.n1, case.m1
    if t == "USMD":
        return 2 if (n == 1 and k >= 2) else 4
    if t == "USDQ":
        return 2 if (n == 1 and k >= 3) else 4
    if t == "USMD2":
        return 2 if ((l == 1 and m == 1 and k >= 2) or (m == 1 and l == 2 and k >= 3)) else 4
    if t == "UMMD":
        if n == 1:
            return 2
        if n >= 2:
            return 4
    if t == "UMMD2":
        if m == 1:
            return 2
        if m >= 2:
            return 4
    if t == "UM1D":
        if n == m == 1:
            return 1
        if n > m == 1:
            return 2
        if n >= m >= 2:
            return 4
    if t == "UM1DC":
        if n == m == 1:
            return 2
        if n >= 2:
            return 4
    if t == "UM1D2":
        if n > m == 1:
            return 2
        if n > m >= 2:
            return 4
    if t in ("M11DQ", "M11DQ2"):
        p = n if t == "M11DQ" else m
        if l == 1:
            return 2 if (p == 1 or (p == 2 and k >= 2)) else 4
        if p == 1 and k == 2:
            return 8
        if 1 <= p <= 2 and k >= 3:
            return 2
        return 4
    if t == "M11DQ3":
        if l == 1:
            return 2 if (m == 1 and k >= 2) else 4
        return 2 if (m == 1 and k >= 3) else 4
    if t == "DQZZ":
        if l == 1:
            if 1 <= n1 <= 2 and m1 == 1:
                return 1
            if n1 >= 3 and m1 >= 2:
                return 4
            return 2
        if n1 == 1 and k == 1 and m1 >= 2:
            return 8
        if (n1 == m1 == k == 1) or (n1 == 2 and m1 >= 2 and k == 1) or (n1 >= 3 and m1 >= 2):
            return 4
        if 1 <= n1 <= 2 and m1 == 1 and k >= 2:
            return 1
        return 2
    raise UnsupportedError(f"no printed branch of {t} covers {case}")


def vstar_closed(case: TheoremCase, q: int) -> OrderValue:
    """``ell * q^((|G| + |Omega_1|)/2 - 1)`` from the theorem's case table."""
    check_case(case)
    omega1, _ = omega_closed(case)
    e2 = case_order(case) + omega1
    return OrderValue.from_parts(q, _ell(case), e2 // 2 - 1)


def conjecture_divisibility(case: TheoremCase, q: int) -> bool:
    """Whether the closed form is a positive integer multiple of ``q^((|G|+|Omega_1|)/2 - 1)``."""
    val = vstar_closed(case, q)
    omega1, _ = omega_closed(case)
    e = (case_order(case) + omega1) // 2 - 1
    return val.exponent == e and val.ell_den == 1 and val.ell_num >= 1


def grid_cases(limit: int = 3) -> Iterator[TheoremCase]:
    """Every valid case with all parameters at most ``limit``."""
    r = range(1, limit + 1)
    for t in THEOREMS:
        ls = (1,) if t in ("USMD", "USDQ") else (1, 2)
        if t == "DQZZ":
            for l, n1, m1, k in product(ls, r, r, r):
                yield TheoremCase(t, l=l, n1=n1, m1=m1, k=k)
            continue
        for l, n, m, k in product(ls, r, r, r):
            case = TheoremCase(t, n=n, m=m, k=k, l=l)
            try:
                check_case(case)
            except ConfigError:
                continue
            yield case


_CASE_INDEX: dict[str, TheoremCase] = {}


def _case_index() -> dict[str, TheoremCase]:
    if not _CASE_INDEX:
        for case in grid_cases(4):
            _CASE_INDEX.setdefault(format_spec(parse_spec(case_spec(case))), case)
    return _CASE_INDEX


def _split_z2(node):
    """Peel trailing ``x Z2`` factors: ``(base, kA)``."""
    kA = 0
    while isinstance(node, DirectProduct) and node.right == Atom("Z", (2,)):
        node, kA = node.left, kA + 1
    return node, kA


def formula_for(text: str, q: int) -> tuple[OrderValue, str]:
    """Closed-form ``|V_*|`` for a spec, with the name of the rule used.

    Recognizes abelian groups, dihedral and quaternion atoms, theorem
    cases by their spec text, and any of these times ``Z2^kA``.
    """
    node = parse_spec(text)
    st = analyze(node)
    if st.abelian:
        return abelian_vstar(st.gbar(), q), "abelian"
    key = format_spec(node)
    idx = _case_index()
    if key in idx:
        case = idx[key]
        return vstar_closed(case, q), str(case)
    base, kA = _split_z2(node)
    if kA == 0:
        if isinstance(node, Atom) and node.kind in ("D8", "Q8", "D", "Q"):
            size = 8 if node.kind in ("D8", "Q8") else node.params[0]
            kind = "dihedral" if node.kind.startswith("D") else "quaternion"
            return dq_vstar(kind, size.bit_length() - 2, q), f"{kind} order {size}"
        raise UnsupportedError(f"no closed form recognizes {key}")
    inner, rule = formula_for(format_spec(base), q)
    bst = analyze(base)
    return udp_extend(inner, bst.order, bst.omega1, kA, q), f"{rule} x Z2^{kA}"
