"""Command-line interface: ``exunits phi``, ``exunits table`` and ``exunits verify``.

Exit codes: 0 success, 1 verification mismatch, 2 parse error, 3 size limit,
4 unsupported combination.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from .ambient import quat_ambient
from .count import PhiResult, phi_k_reduce
from .errors import ParseError, SizeLimitError, UnsupportedError, enum_limit
from .mat2 import classify, psi_inv, similarity_classes
from .parse import parse_element, parse_ring_expr, quaternion_of
from .quat import Quaternion, q_elements, q_from
from .ring import RingSpec
from .verify import SUITES, run_suite

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_SIZE, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4

PHI_COLUMNS = ["ring", "element", "k", "method", "exact", "lo", "hi",
               "provenance", "residue_class", "elapsed_ms"]
TABLE_COLUMNS = ["ring", "k", "class", "representative", "element", "exact", "lo", "hi",
                 "provenance", "oracle", "match"]
VERIFY_COLUMNS = ["suite", "name", "passed", "formula", "oracle", "detail", "elapsed_ms"]


# -- output ---------------------------------------------------------------------

def _result_fields(res: PhiResult) -> dict:
    return {"exact": res.exact, "lo": res.lo, "hi": res.hi}


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({c: ("" if row.get(c) is None else row.get(c)) for c in columns})
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- phi ------------------------------------------------------------------------

def cmd_phi(args) -> int:
    expr = parse_ring_expr(args.ring)
    R = expr.ring
    elem = parse_element(R, args.element, args.kind)
    c = quaternion_of(R, elem)
    t0 = time.perf_counter()
    res = phi_k_reduce(R, c, args.k, method=args.method)
    elapsed = round((time.perf_counter() - t0) * 1000, 3)
    report = {
        "ring": expr.canonical,
        "element": str(c),
        "k": args.k,
        "method": args.method,
        "result": res.to_json(),
        "provenance": res.provenance,
        "residue_class": _residue_label(res),
        "elapsed_ms": elapsed,
    }
    if args.format == "json":
        _emit(args, json.dumps(report, indent=2) + "\n")
    elif args.format == "csv":
        row = dict(report, **_result_fields(res))
        _emit(args, _csv([row], PHI_COLUMNS))
    else:
        lines = [f"phi_{args.k}(H({expr.canonical}), {c}) = {res}",
                 f"provenance: {res.provenance}"]
        if report["residue_class"]:
            lines.append(f"residue class: {report['residue_class']}")
        lines.append(f"elapsed: {elapsed} ms")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _residue_label(res: PhiResult) -> str | None:
    if res.residue_class is not None:
        return res.residue_class
    if res.factors:
        return " x ".join(_residue_label(f) or "?" for f in res.factors)
    return None


# -- table ----------------------------------------------------------------------

def _class_rows(R: RingSpec) -> list[tuple[str, str, Quaternion]]:
    """(class label, representative label, lifted quaternion) per residue class."""
    L = R.local
    F = L.residue_field
    if L.p == 2:
        return [(f"EvenResidue({s})", str(s), q_from(R, R.from_components([s.coeffs])))
                for s in F.elements()]
    rows = []
    for C in similarity_classes(F):
        qf = psi_inv(F, C)
        c = Quaternion(*(R.from_components([x.coeffs]) for x in qf.coords))
        rows.append((str(classify(F, C)), str(C), c))
    return rows


def cmd_table(args) -> int:
    expr = parse_ring_expr(args.ring)
    R = expr.ring
    k = args.k
    if args.by == "class":
        if not R.is_local:
            raise UnsupportedError(f"--by class needs a single local factor, got {expr.canonical}")
        targets = _class_rows(R)
    else:
        if R.order**4 > enum_limit():
            raise SizeLimitError(f"H({R}) has {R.order**4} elements, enumeration limit is {enum_limit()}")
        targets = [(None, None, c) for c in q_elements(R)]
    amb = quat_ambient(R) if args.verify else None
    rows = []
    ok = True
    for label, rep, c in targets:
        res = phi_k_reduce(R, c, k, method=args.method)
        row = {"ring": expr.canonical, "k": k, "class": label or _residue_label(res),
               "representative": rep, "element": str(c), "result": res.to_json(),
               "provenance": res.provenance, "oracle": None, "match": None}
        row.update(_result_fields(res))
        if amb is not None:
            v = amb.count_k(amb.encode(c), k)
            row["oracle"] = v
            row["match"] = res.contains(v)
            ok &= row["match"]
        rows.append(row)
    if args.format == "json":
        out = [{c: r[c] for c in ("ring", "k", "class", "representative", "element", "result",
                                  "provenance", "oracle", "match")} for r in rows]
        _emit(args, json.dumps(out, indent=2) + "\n")
    elif args.format == "csv":
        _emit(args, _csv(rows, TABLE_COLUMNS))
    else:
        lines = []
        for r in rows:
            name = f"{r['class']} {r['representative']}" if args.by == "class" else r["element"]
            extra = f"  oracle={r['oracle']}" if r["oracle"] is not None else ""
            lines.append(f"{name}: {PhiResult(r['lo'], r['hi'], r['exact'], r['provenance'])}"
                         f"  [{r['provenance']}]{extra}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_MISMATCH


# -- verify ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.max_q, args.max_order, args.jobs)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        report = {"suite": args.suite, "passed": len(results) - len(failed),
                  "failed": len(failed), "checks": [r.to_json() for r in results]}
        _emit(args, json.dumps(report, indent=2) + "\n")
    elif args.format == "csv":
        _emit(args, _csv([r.to_json() for r in results], VERIFY_COLUMNS))
    else:
        lines = [r.line() for r in results]
        lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
        _emit(args, "\n".join(lines) + "\n")
    for r in failed:
        print(f"mismatch: {r.line()}", file=sys.stderr)
    return EXIT_MISMATCH if failed else EXIT_OK


# -- entry point ----------------------------------------------------------------

def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")

    parser = argparse.ArgumentParser(
        prog="exunits",
        description="Count ordered sums of exceptional units in quaternion rings over finite rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    phi = sub.add_parser("phi", parents=[common], help="phi_k(H(R), c) for one element")
    phi.add_argument("--ring", required=True, help="e.g. Zn:15, GF:3^2, 'GR:2^2:2 x Zn:3'")
    phi.add_argument("--k", type=int, default=2, choices=range(2, 65), metavar="K")
    phi.add_argument("--element", required=True, help="e.g. '1 + 2i + k' or '[[0,1],[0,0]]'")
    phi.add_argument("--method", choices=["auto", "formula", "oracle"], default="auto")
    phi.add_argument("--kind", choices=["auto", "quat", "mat2"], default="auto")
    phi.set_defaults(func=cmd_phi)

    table = sub.add_parser("table", parents=[common], help="phi_k over residue classes or all elements")
    table.add_argument("--ring", required=True)
    table.add_argument("--k", type=int, default=2, choices=range(2, 65), metavar="K")
    table.add_argument("--by", choices=["class", "element"], default="class")
    table.add_argument("--method", choices=["auto", "formula", "oracle"], default="auto")
    table.add_argument("--verify", action="store_true", help="add the brute-force oracle column")
    table.set_defaults(func=cmd_table)

    verify = sub.add_parser("verify", parents=[common], help="formula-versus-oracle suites")
    verify.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    verify.add_argument("--max-q", type=_positive_int, default=None)
    verify.add_argument("--max-order", type=_positive_int, default=None)
    verify.add_argument("--jobs", type=_positive_int, default=os.cpu_count() or 1)
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except UnsupportedError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
