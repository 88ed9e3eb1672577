"""Command line front end: ``lie-center {compute,verify,hc,brauer,table}``.

Reports are JSON (default) or plain text on stdout; diagnostics go to
stderr.  Exit status is 0 on success or a passing verification, 1 on a
failing verification and 2 on invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from sympy import Rational, expand

from . import brauer as br
from .casimir import (
    capelli_C, capelli_hc_expected, dm_u, e_star, finite_to_json, h_star, hc_image_rhs, hc_project,
    lambda_ring, poly_to_json, stirling2, symmetrized_casimirs,
)
from .classical import FAMILIES, GL, O, SP, make_algebra
from .loop import format_element, fraction_str, to_json, verify_centrality
from .suites import run_suite
from . import vectors as vec

SCHEMA = "lie-center/1"
MAX_N, MAX_M, MAX_CAPELLI_RANK = 5, 4, 2

VACUUM_OBJECTS = ["phi", "psi", "phi-even", "psi-even", "phi-bcd", "pfaffian", "phi-mm", "sym-minor", "sym-permanent"]
FINITE_OBJECTS = ["casimir-delta", "casimir-phi", "capelli", "dm-u"]
SUITE_NAMES = ["centrality", "identities", "brauer", "hc", "capelli", "kernel", "all"]


class UsageError(Exception):
    """Invalid flag combination; reported with exit status 2."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lie-center", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--type", choices=FAMILIES, help="gl, o or sp")
        size = p.add_mutually_exclusive_group()
        size.add_argument("--size", "--N", dest="size", type=int, help="matrix size N")
        size.add_argument("--n", dest="rank", type=int, help="rank n (gl_n or sp_2n)")
        p.add_argument("--object")
        p.add_argument("--m", type=int)
        p.add_argument("--lambda", dest="lam", help="partition or weight, comma separated")
        p.add_argument("--level", help="rational level K; defaults to critical")
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--force", action="store_true", help="lift the resource caps")
        p.add_argument("--out", help="also write the report to this file")

    for verb, text in (
        ("compute", "construct a vector or Casimir element"),
        ("verify", "run a verification suite"),
        ("hc", "Harish-Chandra image of a Casimir element"),
        ("brauer", "Brauer algebra symmetrizers and products"),
        ("table", "cycle counts, Stirling numbers, shifted symmetric polynomials"),
    ):
        p = sub.add_parser(verb, help=text)
        common(p)
        if verb == "verify":
            p.add_argument("--suite", choices=SUITE_NAMES, default="all")
        if verb == "brauer":
            p.add_argument("--diagram", action="append", default=[], help='e.g. "2 T1-B2 T2-B1"')
    return parser


# argument helpers ----------------------------------------------------------------

def _spec(args):
    if args.type is None:
        raise UsageError("--type is required")
    if args.size is None and args.rank is None:
        raise UsageError("--size or --n is required")
    if args.rank is not None:
        if args.type == O:
            raise UsageError("--n is ambiguous for o; give --size")
        N = args.rank if args.type == GL else 2 * args.rank
    else:
        N = args.size
    if not args.force and N > MAX_N:
        raise UsageError(f"N={N} exceeds the cap N <= {MAX_N}; pass --force to override")
    try:
        return make_algebra(args.type, N)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _m(args, required=True) -> Optional[int]:
    if args.m is None:
        if required:
            raise UsageError("--m is required")
        return None
    if args.m < 0:
        raise UsageError("--m must be nonnegative")
    if not args.force and args.m > MAX_M:
        raise UsageError(f"m={args.m} exceeds the cap m <= {MAX_M}; pass --force to override")
    return args.m


def _numbers(text: Optional[str], kind=Fraction) -> List:
    if not text:
        raise UsageError("--lambda is required")
    try:
        return [kind(x) for x in text.replace("(", "").replace(")", "").split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse --lambda {text!r}") from exc


def _level(args, spec):
    if args.level is None:
        return spec.critical_level
    try:
        return Fraction(args.level)
    except ValueError as exc:
        raise UsageError(f"cannot parse --level {args.level!r}") from exc


def _header(spec) -> dict:
    return {"type": spec.family, "N": spec.N, "critical_level": fraction_str(spec.critical_level)}


# verbs ------------------------------------------------------------------------------

def _vacuum_object(args, spec):
    name = args.object or "phi"
    if name in ("sym-minor", "sym-permanent"):
        la = tuple(_numbers(args.lam, int))
        fn = vec.sym_minor if name == "sym-minor" else vec.sym_permanent
        return fn(spec, la), {"lambda": list(la)}
    if name == "phi-mm":
        m = _m(args)
        coeffs = vec.phi_mm_trace(spec, m)
        extra = {"m": m, "T_coefficients": {str(m - k): to_json(v) for k, v in sorted(coeffs.items())}}
        return coeffs[m], extra
    if name in ("psi", "phi-even", "psi-even") and spec.family != GL:
        raise UsageError(f"{name} is defined for gl only")
    if name == "phi-bcd" and spec.family == GL:
        raise UsageError("phi-bcd is defined for o and sp")
    m = None if name == "pfaffian" else _m(args)
    if name != "pfaffian" and m == 0:
        raise UsageError("--m must be positive")
    return vec.build(name, spec, m).element, ({} if m is None else {"m": m})


def _finite_object(args, spec):
    name = args.object
    if name == "capelli":
        if spec.family != SP:
            raise UsageError("capelli is defined for sp")
        if not args.force and spec.rank > MAX_CAPELLI_RANK:
            raise UsageError(f"capelli needs n <= {MAX_CAPELLI_RANK}; pass --force to override")
        return capelli_C(spec), {}
    m = _m(args)
    if name == "dm-u":
        return dm_u(spec, m), {"m": m}
    kind = "delta" if name == "casimir-delta" else "phi"
    return symmetrized_casimirs(spec, m, kind), {"m": m}


def cmd_compute(args):
    name = args.object or "phi"
    spec = _spec(args)
    try:
        if name in VACUUM_OBJECTS:
            element, extra = _vacuum_object(args, spec)
            payload = {"element": to_json(element), "text": format_element(element)}
        elif name in FINITE_OBJECTS:
            element, extra = _finite_object(args, spec)
            payload = {"element": finite_to_json(element), "text": repr(element)}
        else:
            raise UsageError(f"unknown object {name!r}")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload.update(extra)
    return {"status": "pass", "object": name, **_header(spec), "payload": payload}, 0


def cmd_verify(args):
    if args.suite == "centrality" and args.type is not None:
        spec = _spec(args)
        element, extra = _vacuum_object(args, spec)
        K = _level(args, spec)
        res = verify_centrality(spec, element, K)
        check = {"name": f"{args.object or 'phi'} central at K={K}", "status": "pass" if res.ok else "fail"}
        if not res.ok:
            label, s, residue = res.witness
            check["witness"] = {"generator": list(label), "mode": s, "residue": to_json(residue)}
        report = {"status": check["status"], "suite": "centrality", **_header(spec), "level": fraction_str(K),
                  "checks": [check], **extra}
        return report, 0 if res.ok else 1
    if args.type is not None:
        raise UsageError("only the centrality suite accepts an explicit algebra")
    checks = run_suite(args.suite, force=args.force)
    ok = all(c.ok for c in checks)
    report = {
        "status": "pass" if ok else "fail",
        "suite": args.suite,
        "passed": sum(c.ok for c in checks),
        "total": len(checks),
        "checks": [c.as_dict() for c in checks],
    }
    return report, 0 if ok else 1


def cmd_hc(args):
    spec = _spec(args)
    name = args.object or ("casimir-phi" if spec.family == O else "casimir-delta")
    if name not in ("casimir-delta", "casimir-phi", "capelli"):
        raise UsageError(f"hc needs a Casimir object, not {name!r}")
    try:
        element, extra = _finite_object(argparse.Namespace(**{**vars(args), "object": name}), spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    image = hc_project(spec, element)
    if name == "capelli":
        expected = capelli_hc_expected(spec)
    else:
        expected = hc_image_rhs(spec, extra["m"], "delta" if name == "casimir-delta" else "phi")
    ok = image == expected
    R, lam, u = lambda_ring(spec.rank)
    payload = {"image": poly_to_json(image), "expected": poly_to_json(expected), "variables": [str(x) for x in lam + [u]],
               "text": str(image.as_expr())}
    if args.lam:
        weight = _numbers(args.lam)
        if len(weight) != spec.rank:
            raise UsageError(f"--lambda needs {spec.rank} entries")
        subs = {x.as_expr(): Rational(w.numerator, w.denominator) for x, w in zip(lam, weight)}
        payload["at_lambda"] = str(expand(image.as_expr().subs(subs)))
    if not ok:
        payload["difference"] = poly_to_json(image - expected)
    return {"status": "pass" if ok else "fail", "object": name, **_header(spec), **extra, "payload": payload}, 0 if ok else 1


def _ratfunc_json(c) -> dict:
    return {"numerator": [fraction_str(x) for x in c.num], "denominator": [fraction_str(x) for x in c.den], "text": repr(c)}


def _brauer_json(e) -> list:
    return [{"diagram": br.format_diagram(d), "coefficient": _ratfunc_json(c)} for d, c in sorted(e.terms.items())]


def cmd_brauer(args):
    name = args.object or "symmetrizer"
    if name == "product":
        if len(args.diagram) < 2:
            raise UsageError("product needs at least two --diagram values")
        try:
            ds = [br.parse_diagram(t) for t in args.diagram]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if len({d.m for d in ds}) != 1:
            raise UsageError("diagrams must have the same number of strands")
        loops_total, acc = 0, ds[0]
        for d in ds[1:]:
            loops, acc = br.compose(acc, d)
            loops_total += loops
        payload = {"diagram": br.format_diagram(acc), "loops": loops_total, "text": f"w^{loops_total} [{br.format_diagram(acc)}]"}
        return {"status": "pass", "object": name, "payload": payload}, 0
    m = _m(args)
    if m < 1:
        raise UsageError("--m must be positive")
    if name in ("symmetrizer", "h", "a"):
        e = br.symmetrizer(m) if name == "symmetrizer" else br.group_symmetrizers(m)[0 if name == "h" else 1]
        payload = {"terms": _brauer_json(e), "text": repr(e)}
    elif name == "gamma":
        payload = _ratfunc_json(br.gamma(m))
    elif name == "jm-dimension":
        payload = {"dimension": br.jm_dimension(m), "total": len(br.all_diagrams(m))}
    elif name == "congruence":
        h, _ = br.group_symmetrizers(m)
        ok = br.in_Jm(br.gamma(m) * br.symmetrizer(m) - h)
        return {"status": "pass" if ok else "fail", "object": name, "m": m}, 0 if ok else 1
    else:
        raise UsageError(f"unknown brauer object {name!r}")
    return {"status": "pass", "object": name, "m": m, "payload": payload}, 0


def cmd_table(args):
    name = args.object or "cycle-count"
    m = _m(args)
    if name == "cycle-count":
        rows = [{"partition": list(la), "count": vec.cycle_count(la)} for la in vec.partitions(m)]
    elif name == "stirling":
        rows = [{"k": k, "value": stirling2(m, k)} for k in range(0, m + 1)]
    elif name in ("shifted-e", "shifted-h"):
        if args.size is None:
            raise UsageError("--size gives the number of variables")
        R, lam, u = lambda_ring(args.size)
        fn = e_star if name == "shifted-e" else h_star
        p = fn(m, lam)
        rows = [{"polynomial": poly_to_json(p), "text": str(p.as_expr())}]
    else:
        raise UsageError(f"unknown table {name!r}")
    return {"status": "pass", "object": name, "m": m, "payload": rows}, 0


VERBS = {"compute": cmd_compute, "verify": cmd_verify, "hc": cmd_hc, "brauer": cmd_brauer, "table": cmd_table}


def _text(report: dict) -> str:
    lines = [f"status: {report['status']}"]
    if "checks" in report:
        for c in report["checks"]:
            line = f"{c['status'].upper():4}  {c['name']}"
            if "witness" in c:
                line += f"  [{c['witness'] if isinstance(c['witness'], str) else json.dumps(c['witness'], sort_keys=True)}]"
            lines.append(line)
    payload = report.get("payload")
    if isinstance(payload, dict) and "text" in payload:
        lines.append(str(payload["text"]))
        if "at_lambda" in payload:
            lines.append(f"at lambda: {payload['at_lambda']}")
    elif isinstance(payload, list):
        for row in payload:
            lines.append(row.get("text") or json.dumps(row, sort_keys=True))
    elif isinstance(payload, dict):
        lines.append(json.dumps(payload, sort_keys=True))
    if "error" in report:
        lines.append(f"error: {report['error']}")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return _text(report)
    return json.dumps({"schema": SCHEMA, **report}, sort_keys=True, indent=2) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = VERBS[args.verb](args)
    except UsageError as exc:
        print(f"lie-center: {exc}", file=sys.stderr)
        report, code = {"status": "error", "error": str(exc)}, 2
    text = render(report, args.format)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
