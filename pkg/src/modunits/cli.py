"""Command-line driver: ``modunits group|vstar|classify|verify``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from .dsl import build, format_spec, parse_spec
from .errors import (
    CapacityError,
    ConfigError,
    DomainError,
    ModunitsError,
    NoRuleError,
    SpecRangeError,
    SpecSyntaxError,
    UnsupportedError,
)
from .families import FamilyDescriptor, build_family, parse_case, shape_report
from .formulas import formula_for
from .gf2k import field_of_order
from .iso import fingerprint
from .order import OrderValue
from .structure import analyze
from .unitary import DEFAULT_BUDGET, count_vstar_bruteforce, vstar_recursion_detail
from .verify import SUITES, run_suite

METHODS = ("brute", "recursion", "formula")
EXIT_OK, EXIT_DISAGREE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class MethodResult:
    status: str  # exact, lower-bound, upper-bound, unsupported, skipped
    value: Optional[OrderValue] = None
    seconds: float = 0.0
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "value": None if self.value is None else self.value.to_dict(),
            "seconds": round(self.seconds, 6),
            "note": self.note,
        }


@dataclass
class Report:
    spec: str
    order: int
    q: int
    omega: dict
    methods: dict = field(default_factory=dict)

    @property
    def exact_values(self) -> list[OrderValue]:
        return [r.value for r in self.methods.values() if r.status == "exact"]

    @property
    def agreement(self) -> bool:
        vals = self.exact_values
        return len(vals) >= 2 and all(v == vals[0] for v in vals)

    @property
    def disagreement(self) -> bool:
        """Exact values differ, or an exact value breaks a one-sided bound."""
        vals = self.exact_values
        if any(v != vals[0] for v in vals):
            return True
        for r in self.methods.values():
            for v in vals:
                if r.status == "upper-bound" and v > r.value:
                    return True
                if r.status == "lower-bound" and v < r.value:
                    return True
        return False

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "order": self.order,
            "q": self.q,
            "omega": self.omega,
            "methods": {k: v.to_dict() for k, v in self.methods.items()},
            "agreement": self.agreement,
        }


def _timed(fn) -> MethodResult:
    t0 = time.perf_counter()
    try:
        res = fn()
    except CapacityError as e:
        res = MethodResult("skipped", note=str(e))
    except (UnsupportedError, DomainError) as e:
        res = MethodResult("unsupported", note=str(e))
    res.seconds = time.perf_counter() - t0
    return res


def vstar_report(text: str, q: int, method: str = "all", budget: int = DEFAULT_BUDGET, theta: str = "auto") -> Report:
    field_of_order(q)
    node = parse_spec(text)
    spec = format_spec(node)
    G = build(node)
    o1, oc = G.omega_sets()
    omega = {"enumerated": [len(o1), len(oc)], "closed": None}
    try:
        st = analyze(node)
        omega["closed"] = [st.omega1, st.omega_c]
    except UnsupportedError:
        pass
    rep = Report(spec, G.n, q, omega)
    wanted = METHODS if method == "all" else (method,)

    def brute():
        return MethodResult("exact", OrderValue.from_int(q, count_vstar_bruteforce(G, q, budget=budget)))

    def recursion():
        order = ("lemma", "exhaustive", "sampled") if theta == "auto" else (theta,)
        notes = []
        for th in order:
            try:
                src = spec if th == "lemma" else G
                kw = {"budget": budget} if th == "exhaustive" else {}
                det = vstar_recursion_detail(src, q, th, **kw)
            except (NoRuleError, CapacityError) as e:
                notes.append(f"{th}: {e}")
                continue
            status = "exact" if det.exact else "upper-bound"
            note = "; ".join(notes + [f"theta {det.theta} via {th}"])
            return MethodResult(status, det.value, note=note)
        return MethodResult("unsupported", note="; ".join(notes))

    def formula():
        v, rule = formula_for(spec, q)
        return MethodResult("exact", v, note=rule)

    fns = {"brute": brute, "recursion": recursion, "formula": formula}
    for m in METHODS:
        if m in wanted:
            rep.methods[m] = _timed(fns[m])
        else:
            rep.methods[m] = MethodResult("skipped", note="not requested")
    return rep


def group_report(text: str) -> dict:
    G = build(text)
    o1, oc = G.omega_sets()
    fp = fingerprint(G)
    return {
        "spec": format_spec(parse_spec(text)),
        "order": G.n,
        "center": int(len(G.center())),
        "derived": int(len(G.derived_subgroup())),
        "frattini": int(len(G.frattini_subgroup())),
        "omega1": int(len(o1)),
        "omega_c": int(len(oc)),
        "fingerprint": {
            "order": fp.order,
            "exponent": fp.exponent,
            "center": fp.center,
            "derived": fp.derived,
            "rank": fp.rank,
            "order_histogram": [list(x) for x in fp.order_histogram],
            "square_image": fp.square_image,
            "omega_profile": [list(x) for x in fp.omega_profile],
        },
    }


def _params(text: str) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise UsageError(f"bad parameter {part!r}; expected name=value")
        k, v = part.split("=", 1)
        if k.strip() not in ("n", "m", "k", "r", "leg"):
            raise UsageError(f"unknown parameter {k.strip()!r}")
        out[k.strip()] = int(v)
    return out


def classify_report(theorem: str, case: str, params: str) -> dict:
    d = FamilyDescriptor(theorem, parse_case(case), **_params(params))
    spec = build_family(d)
    G = build(spec)
    out = group_report(format_spec(spec))
    out["descriptor"] = str(d)
    out["shape"] = {k: (list(v) if isinstance(v, tuple) else v) for k, v in shape_report(d, G).items()}
    return out


def _fmt_value(r: dict) -> str:
    v = r["value"]
    if v is None:
        return "-"
    ell = f"{v['ell_num']}" if v["ell_den"] == 1 else f"{v['ell_num']}/{v['ell_den']}"
    return f"{ell}*{v['q']}^{v['exponent']}"


def _emit(rows: list[dict], fmt: str, kind: str, out) -> None:
    if fmt == "json":
        for r in rows:
            out.write(json.dumps(r, sort_keys=True) + "\n")
        return
    for r in rows:
        if kind == "vstar":
            parts = [f"{r['spec']}  |G|={r['order']}  q={r['q']}  omega={r['omega']['enumerated']}"]
            for m, res in r["methods"].items():
                parts.append(f"  {m:<10}{res['status']:<12}{_fmt_value(res):<16}{res['seconds']:.3f}s  {res['note']}")
            parts.append(f"  agreement {r['agreement']}")
            out.write("\n".join(parts) + "\n")
        elif kind == "verify":
            tag = "info" if r["informational"] else ("pass" if r["ok"] else "FAIL")
            out.write(f"{tag:<5}{r['suite']:<9}{r['check']}  {r['detail']}\n")
        else:
            for k, v in r.items():
                out.write(f"{k:<12}{v}\n")


def _parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "table"), default="table")
    p = _Parser(prog="modunits", description="Unitary subgroup orders of modular 2-group algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    g = sub.add_parser("group", parents=[fmt], help="structure report for a group spec")
    g.add_argument("spec")
    v = sub.add_parser("vstar", parents=[fmt], help="order of V_*(F G)")
    v.add_argument("spec")
    v.add_argument("--field", type=int, default=2, help="field size q = 2^k")
    v.add_argument("--method", choices=METHODS + ("all",), default="all")
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="candidate evaluations allowed")
    v.add_argument("--theta", choices=("auto", "exhaustive", "sampled", "lemma"), default="auto")
    c = sub.add_parser("classify", parents=[fmt], help="build a classification family member")
    c.add_argument("--theorem", required=True)
    c.add_argument("--case", required=True)
    c.add_argument("--params", default="", help="e.g. n=2,m=1,k=1,r=2")
    w = sub.add_parser("verify", parents=[fmt], help="run a verification suite")
    w.add_argument("--suite", choices=SUITES + ("all",), default="small")
    return p


def run(argv: Optional[list[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = _parser().parse_args(argv)
        if args.command == "group":
            _emit([group_report(args.spec)], args.format, "group", out)
            return EXIT_OK
        if args.command == "vstar":
            rep = vstar_report(args.spec, args.field, args.method, args.budget, args.theta)
            _emit([rep.to_dict()], args.format, "vstar", out)
            return EXIT_DISAGREE if rep.disagreement else EXIT_OK
        if args.command == "classify":
            _emit([classify_report(args.theorem, args.case, args.params)], args.format, "classify", out)
            return EXIT_OK
        suites = [s for s in SUITES if s != "audit"] if args.suite == "all" else [args.suite]
        checks = [c for s in suites for c in run_suite(s)]
        _emit([c.to_dict() for c in checks], args.format, "verify", out)
        return EXIT_OK if all(c.ok or c.informational for c in checks) else EXIT_DISAGREE
    except (UsageError, SpecSyntaxError, SpecRangeError, ConfigError) as e:
        sys.stderr.write(f"modunits: error: {e}\n")
        return EXIT_USAGE
    except ModunitsError as e:
        sys.stderr.write(f"modunits: error: {e}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
