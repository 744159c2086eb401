"""Group-spec DSL: parse, print, build.

Grammar (``.`` binds tighter than ``x``, both left-associative)::

    spec  := dterm ("x" dterm)*
    dterm := cterm ("." cterm)*
    cterm := atom | "(" spec ")"
    atom  := "D8" | "Q8" | "Z" int | "M2(" int "," int ")" | "M2(" int "," int ",1)"

``D<int>`` and ``Q<int>`` with ``int >= 16`` are accepted as extra atoms for
dihedral and generalized quaternion groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import builders
from .errors import SpecRangeError, SpecSyntaxError
from .group import Group


@dataclass(frozen=True)
class Atom:
    kind: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind in ("D8", "Q8"):
            return self.kind
        if self.kind in ("Z", "D", "Q"):
            return f"{self.kind}{self.params[0]}"
        if self.kind == "M2":
            return f"M2({self.params[0]},{self.params[1]})"
        if self.kind == "M2c":
            return f"M2({self.params[0]},{self.params[1]},1)"
        raise ValueError(self.kind)


@dataclass(frozen=True)
class CentralProduct:
    left: "Spec"
    right: "Spec"


@dataclass(frozen=True)
class DirectProduct:
    left: "Spec"
    right: "Spec"


Spec = Union[Atom, CentralProduct, DirectProduct]


def validate_atom(atom: Atom) -> Atom:
    k, p = atom.kind, atom.params
    if k == "Z":
        (o,) = p
        if o < 2 or o & (o - 1):
            raise SpecRangeError(f"Z{o}: order must be a power of 2 with order ≥ 2 required")
    elif k in ("D", "Q"):
        (o,) = p
        if o < 16 or o & (o - 1):
            raise SpecRangeError(f"{k}{o}: order must be a power of 2 with order ≥ 16 required")
    elif k == "M2":
        u, v = p
        if u < 2:
            raise SpecRangeError(f"M2({u},{v}): u ≥ 2 required")
        if v < 1:
            raise SpecRangeError(f"M2({u},{v}): v ≥ 1 required")
    elif k == "M2c":
        u, v = p
        if v < 1:
            raise SpecRangeError(f"M2({u},{v},1): v ≥ 1 required")
        if u < v:
            raise SpecRangeError(f"M2({u},{v},1): u ≥ v required")
    return atom


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def offset(self, i: int | None = None) -> int:
        i = self.i if i is None else i
        return len(self.text[:i].encode("utf-8"))

    def fail(self, msg: str, i: int | None = None):
        raise SpecSyntaxError(msg, self.offset(i))

    def ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.i : self.i + 1]

    def expect(self, s: str):
        self.ws()
        if not self.text.startswith(s, self.i):
            self.fail(f"expected {s!r}")
        self.i += len(s)

    def integer(self) -> int:
        self.ws()
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            self.fail("expected integer")
        val = int(self.text[self.i : j])
        self.i = j
        return val

    def parse(self) -> Spec:
        node = self.spec()
        self.ws()
        if self.i != len(self.text):
            self.fail("unexpected trailing input")
        return node

    def spec(self) -> Spec:
        node = self.dterm()
        while self.peek() == "x":
            self.i += 1
            node = DirectProduct(node, self.dterm())
        return node

    def dterm(self) -> Spec:
        node = self.cterm()
        while self.peek() == ".":
            self.i += 1
            node = CentralProduct(node, self.cterm())
        return node

    def cterm(self) -> Spec:
        ch = self.peek()
        if ch == "(":
            self.i += 1
            node = self.spec()
            self.expect(")")
            return node
        return self.atom()

    def atom(self) -> Atom:
        self.ws()
        start = self.i
        t = self.text
        if t.startswith("M2(", start):
            self.i += 3
            u = self.integer()
            self.expect(",")
            v = self.integer()
            if self.peek() == ",":
                self.i += 1
                w = self.integer()
                if w != 1:
                    self.fail("third M2 parameter must be 1", self.i - 1)
                self.expect(")")
                return validate_atom(Atom("M2c", (u, v)))
            self.expect(")")
            return validate_atom(Atom("M2", (u, v)))
        if t.startswith("D8", start) and not t[start + 2 : start + 3].isdigit():
            self.i += 2
            return Atom("D8")
        if t.startswith("Q8", start) and not t[start + 2 : start + 3].isdigit():
            self.i += 2
            return Atom("Q8")
        if t[start : start + 1] in ("Z", "D", "Q"):
            kind = t[start]
            self.i += 1
            if not t[self.i : self.i + 1].isdigit():
                self.fail("expected integer")
            return validate_atom(Atom(kind, (self.integer(),)))
        if start >= len(t):
            self.fail("unexpected end of input")
        self.fail(f"unexpected character {t[start]!r}")


def parse_spec(text: str) -> Spec:
    """Parse a group spec string into an expression tree."""
    return _Parser(text).parse()


def format_spec(node: Spec, _prec: int = 0) -> str:
    """Print a spec with the minimal parentheses needed to re-parse it."""
    if isinstance(node, Atom):
        return str(node)
    if isinstance(node, CentralProduct):
        s = f"{format_spec(node.left, 2)} . {format_spec(node.right, 3)}"
        return f"({s})" if _prec > 2 else s
    s = f"{format_spec(node.left, 1)} x {format_spec(node.right, 2)}"
    return f"({s})" if _prec > 1 else s


def leaves(node: Spec) -> list[Atom]:
    if isinstance(node, Atom):
        return [node]
    return leaves(node.left) + leaves(node.right)


def build_atom(atom: Atom, suffix: str = "") -> Group:
    validate_atom(atom)
    k, p = atom.kind, atom.params
    if k == "D8":
        g = builders.dihedral8(suffix)
    elif k == "Q8":
        g = builders.quaternion8(suffix)
    elif k == "Z":
        g = builders.cyclic(p[0], suffix)
    elif k == "D":
        g = builders.dihedral(p[0], suffix)
    elif k == "Q":
        g = builders.quaternion(p[0], suffix)
    elif k == "M2":
        g = builders.m2(p[0], p[1], suffix)
    elif k == "M2c":
        g = builders.m2_central(p[0], p[1], suffix)
    else:
        raise SpecRangeError(f"unknown atom kind {k}")
    g.spec = atom
    return g


def build(node: Spec | str) -> Group:
    """Materialize a spec (tree or text) as a Group."""
    if isinstance(node, str):
        node = parse_spec(node)
    multi = len(leaves(node)) > 1
    counter = iter(range(1, 1 << 30))

    def rec(nd: Spec) -> Group:
        if isinstance(nd, Atom):
            return build_atom(nd, str(next(counter)) if multi else "")
        left = rec(nd.left)
        right = rec(nd.right)
        if isinstance(nd, CentralProduct):
            g = builders.central_product(left, right, name=format_spec(nd))
        else:
            g = builders.direct_product(left, right, name=format_spec(nd))
        g.spec = nd
        return g

    g = rec(node)
    g.name = format_spec(node)
    return g
