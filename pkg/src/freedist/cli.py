"""Command-line interface: analysis, self-checks, harmonic dimensions,
Pfaffian cone queries, and the inclusions table.

Exit codes: 0 success (and all checks passing), 1 for input syntax errors
(with file, line, and column), 2 for frames or parameters outside the
supported domain (degenerate or non-free frames, resource-guard refusals).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional

from .algebra import algebra_battery
from .cohomology import harmonic_space
from .errors import FreeDistError, ParseError, UnsupportedError
from .normalization import analyze, report_to_json
from .parsing import parse_frame_file, parse_scalar
from .scalars import ExactScalar
from .spinorial import (TangentKey, list_inclusions, null_cone_member,
                        pfaffian, tangent_to_skew)

# Resource guards (configuration, not mathematical limits): the graded
# battery and harmonic scans grow quickly with rank, so the CLI refuses
# ranks whose exact runs would be disproportionate.
ALGEBRA_CHECK_MIN_L = 3
ALGEBRA_CHECK_MAX_L = 6
COHOMOLOGY_MIN_L = 3
COHOMOLOGY_MAX_L = 5


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freedist",
        description="Exact invariants of generic rank-l free distributions")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="print progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze",
                       help="full curvature analysis of a frame file")
    p.add_argument("path", help="frame file (l: header, then X1..Xl lines)")
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("algebra-check",
                       help="run the graded-algebra invariant battery")
    p.add_argument("--l", type=int, required=True)

    p = sub.add_parser("cohomology",
                       help="harmonic cochain dimensions over a range")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k", type=int, choices=(1, 2), required=True)
    p.add_argument("--h", required=True, metavar="A..B",
                   help="inclusive homogeneity range, e.g. 0..3")

    p = sub.add_parser("spinor",
                       help="skew matrix, Pfaffian, and cone membership")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--vector", required=True,
                   help='JSON {"v": {"1": "...", "[2,3]": "..."}}')

    sub.add_parser("inclusions", help="print the inclusions table")
    return parser


def _parse_h_range(text: str) -> List[int]:
    if ".." in text:
        a_text, b_text = text.split("..", 1)
    else:
        a_text = b_text = text
    try:
        a, b = int(a_text), int(b_text)
    except ValueError:
        raise UnsupportedError(f"invalid homogeneity range {text!r}; "
                               "expected A..B with integers")
    if b < a:
        raise UnsupportedError(f"empty homogeneity range {text!r}")
    return list(range(a, b + 1))


def _parse_vector_json(text: str) -> Dict[TangentKey, ExactScalar]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON vector: {exc.msg}", exc.lineno,
                         exc.colno)
    if not isinstance(data, dict) or "v" not in data \
            or not isinstance(data["v"], dict):
        raise ParseError('vector JSON must be {"v": {...}}', 1, 1)
    out: Dict[TangentKey, ExactScalar] = {}
    for key_text, raw in data["v"].items():
        kt = key_text.strip()
        if kt.startswith("["):
            if not kt.endswith("]"):
                raise ParseError(f"malformed pair key {key_text!r}", 1, 1)
            a_text, b_text = kt[1:-1].split(",")
            key: TangentKey = (int(a_text), int(b_text))
        else:
            key = int(kt)
        value = parse_scalar(raw) if isinstance(raw, str) \
            else ExactScalar.of(raw)
        out[key] = value
    return out


def _report_text(data: Dict[str, object]) -> str:
    lines = [f"l = {data['l']}",
             f"nondegenerate = {data['nondegenerate']}",
             f"flat = {data['flat']}",
             f"kappa11_deg2_zero = {data['kappa11_deg2_zero']}",
             f"extension_verdict = {data['extension_verdict']}"]
    for name in ("structure_functions", "A", "C", "E", "F", "P", "R", "S",
                 "T"):
        table = data[name]
        lines.append(f"{name}: {len(table)} nonzero")
        for key, expr in table.items():
            lines.append(f"  {key} = {expr}")
    return "\n".join(lines)


def _cmd_analyze(args: argparse.Namespace) -> int:
    with open(args.path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        _, fields = parse_frame_file(text)
    except ParseError as exc:
        print(f"{args.path}:{exc.line}:{exc.col}: {exc.message}",
              file=sys.stderr)
        return 1
    if args.verbose:
        print("frame parsed; running analysis", file=sys.stderr)
    report = analyze(fields)
    data = report_to_json(report)
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(_report_text(data))
    return 0


def _cmd_algebra_check(args: argparse.Namespace) -> int:
    l = args.l
    if not ALGEBRA_CHECK_MIN_L <= l <= ALGEBRA_CHECK_MAX_L:
        raise UnsupportedError(
            f"algebra-check supports {ALGEBRA_CHECK_MIN_L} <= l <= "
            f"{ALGEBRA_CHECK_MAX_L} (resource guard); got l={l}")
    results = algebra_battery(l)
    ok = True
    for name, passed in results:
        print(f"{name}: {'PASS' if passed else 'FAIL'}")
        ok = ok and passed
    return 0 if ok else 2


def _cmd_cohomology(args: argparse.Namespace) -> int:
    l = args.l
    if not COHOMOLOGY_MIN_L <= l <= COHOMOLOGY_MAX_L:
        raise UnsupportedError(
            f"cohomology supports {COHOMOLOGY_MIN_L} <= l <= "
            f"{COHOMOLOGY_MAX_L} (resource guard); got l={l}")
    hs = _parse_h_range(args.h)
    dims = {}
    for h in hs:
        if args.verbose:
            print(f"computing homogeneity {h}", file=sys.stderr)
        dims[str(h)] = harmonic_space(l, args.k, h).dimension
    print(json.dumps({"l": l, "k": args.k, "dimensions": dims}, indent=2))
    return 0


def _cmd_spinor(args: argparse.Namespace) -> int:
    try:
        v = _parse_vector_json(args.vector)
    except ParseError as exc:
        print(f"vector:{exc.line}:{exc.col}: {exc.message}", file=sys.stderr)
        return 1
    m = tangent_to_skew(v, args.l)
    pf = pfaffian(m)
    data = {
        "l": args.l,
        "skew_matrix": [[e.to_expr() for e in row] for row in m.entries],
        "pfaffian": pf.to_expr(),
        "null_cone_member": null_cone_member(v, args.l),
    }
    print(json.dumps(data, indent=2))
    return 0


def _cmd_inclusions(_args: argparse.Namespace) -> int:
    print(json.dumps(list_inclusions(), indent=2))
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "algebra-check": _cmd_algebra_check,
    "cohomology": _cmd_cohomology,
    "spinor": _cmd_spinor,
    "inclusions": _cmd_inclusions,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"{exc.line}:{exc.col}: {exc.message}", file=sys.stderr)
        return 1
    except FreeDistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc.strerror or exc}: {exc.filename or ''}",
              file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
