"""Command-line front end.

Subcommands: gram, represents, ogg, classify, scan, report.
Exit codes: 0 on success, 1 when a classification came back unresolved,
2 on input or data errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .auxdata import AuxDataError, load_aux, load_default_aux
from .classifier import UNRESOLVED, classify, scan
from .curvedb import DatabaseError, load_database, load_default_database
from .oggfilter import d_elliptic_excluded
from .pairing import form_string, gram_matrix
from .qflattice import NotPositiveDefinite, enumerate_up_to, ldl_decompose, minimum

EXIT_OK = 0
EXIT_UNRESOLVED = 1
EXIT_INPUT_ERROR = 2


class _InputError(Exception):
    pass


def _load_db(path):
    return load_database(path) if path else load_default_database()


def _load_aux(path):
    return load_aux(path) if path else load_default_aux()


def _parse_gram_argument(args) -> list[list[int]]:
    if args.gram is not None:
        text, origin = args.gram, "--gram"
    else:
        origin = args.gram_file
        try:
            with open(args.gram_file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise _InputError(f"cannot read {args.gram_file}: {e}") from e
    try:
        matrix = json.loads(text)
    except json.JSONDecodeError as e:
        raise _InputError(f"{origin}: not valid JSON ({e.msg})") from e
    if not isinstance(matrix, list) or not all(isinstance(row, list) for row in matrix):
        raise _InputError(f"{origin}: expected a list of rows like [[6,-2],[-2,6]]")
    return matrix


def _cmd_gram(args) -> int:
    db = _load_db(args.db)
    curve = db.get(args.curve)
    if curve is None:
        raise _InputError(f"curve {args.curve!r} is not in the database")
    gm = gram_matrix(args.level, curve)
    if args.json:
        print(gm.to_json())
        return EXIT_OK
    print(f"level {gm.level}  curve {gm.curve_label}  conductor {gm.conductor}  basis {list(gm.basis)}")
    width = max(len(str(v)) for row in gm.entries for v in row)
    for row in gm.entries:
        print("  [" + " ".join(f"{v:>{width}}" for v in row) + "]")
    print(f"degree form: {form_string(gm)}")
    return EXIT_OK


def _cmd_represents(args) -> int:
    matrix = _parse_gram_argument(args)
    form = ldl_decompose(matrix)
    found = enumerate_up_to(form, args.target)
    witness = next((v for v in found.vectors if form.value(v) == args.target), None)
    mindeg, minwit = minimum(form)
    if args.json:
        print(
            json.dumps(
                {
                    "target": args.target,
                    "represented": witness is not None,
                    "witness": list(witness) if witness else None,
                    "minimum": mindeg,
                    "minimum_witness": list(minwit),
                },
                sort_keys=True,
            )
        )
        return EXIT_OK
    if witness is not None:
        print(f"{args.target} is represented at {tuple(witness)}")
    else:
        print(f"{args.target} is not represented; minimum nonzero value is {mindeg} at {tuple(minwit)}")
    return EXIT_OK


def _cmd_ogg(args) -> int:
    cert = d_elliptic_excluded(args.level, degree=args.degree, prime_search_bound=args.prime_bound)
    if args.json:
        payload = None
        if cert is not None:
            payload = {
                "level": cert.level,
                "degree": cert.degree,
                "prime": cert.prime,
                "lower_bound": str(cert.lower_bound),
                "curve_capacity": cert.curve_capacity,
            }
        print(json.dumps({"certificate": payload}, sort_keys=True))
        return EXIT_OK
    if cert is None:
        print(f"level {args.level}: no degree-{args.degree} exclusion certificate with p <= {args.prime_bound}")
    else:
        print(
            f"level {args.level}: excluded at p={cert.prime}: "
            f"point-count lower bound {cert.lower_bound} > {args.degree}*(p+1)^2 = {cert.curve_capacity}"
        )
    return EXIT_OK


def _print_classification(c) -> None:
    print(f"level {c.level}  genus {c.genus}")
    line = f"status: {c.status}"
    if c.mechanism:
        line += f"  (mechanism: {c.mechanism})"
    print(line)
    print(f"tetraelliptic: {c.tetraelliptic.status}")
    if c.reason:
        print(f"reason: {c.reason}")
    if c.evidence:
        print("evidence:")
        for step in c.evidence:
            d = step.to_dict()
            d.pop("kind")
            brief = ", ".join(f"{k}={v}" for k, v in d.items() if not isinstance(v, (dict, list)) and v != "")
            print(f"  - {step.kind}: {brief}")


def _cmd_classify(args) -> int:
    c = classify(args.level, _load_db(args.db), _load_aux(args.aux))
    if args.json:
        print(c.to_json())
    else:
        _print_classification(c)
    return EXIT_UNRESOLVED if c.status == UNRESOLVED else EXIT_OK


def _run_scan(args):
    return scan(args.start, args.stop, _load_db(args.db), _load_aux(args.aux), jobs=args.jobs)


def _cmd_scan(args) -> int:
    rep = _run_scan(args)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json())
            fh.write("\n")
    if args.json and not args.out:
        print(rep.to_json())
    else:
        print(f"levels {rep.start}..{rep.stop}")
        print(f"infinitely many quartic points ({len(rep.infinite_levels)}): {list(rep.infinite_levels)}")
        print(f"positive-rank tetraelliptic ({len(rep.tetraelliptic_levels)}): {list(rep.tetraelliptic_levels)}")
        print(f"finitely many quartic points: {len(rep.finite_levels)} levels")
        if rep.unresolved_levels:
            print(f"unresolved: {list(rep.unresolved_levels)}")
        if args.out:
            print(f"full report written to {args.out}")
    return EXIT_UNRESOLVED if rep.unresolved_levels else EXIT_OK


def _cmd_report(args) -> int:
    from .report import write_report

    rep = _run_scan(args)
    paths = write_report(rep, args.out_dir)
    for name, path in paths.items():
        print(f"{name}: {path}")
    if rep.unresolved_levels:
        print(f"unresolved levels present: {list(rep.unresolved_levels)}")
        return EXIT_UNRESOLVED
    return EXIT_OK


def _add_db_aux(p: argparse.ArgumentParser, aux: bool = True) -> None:
    p.add_argument("--db", metavar="PATH", help="curve database (JSON lines); default: bundled data")
    if aux:
        p.add_argument("--aux", metavar="PATH", help="auxiliary facts (JSON lines); default: bundled data")


def _add_scan_range(p: argparse.ArgumentParser) -> None:
    p.add_argument("--from", dest="start", type=int, default=1, metavar="N", help="first level (default 1)")
    p.add_argument("--to", dest="stop", type=int, default=407, metavar="N", help="last level, inclusive (default 407)")
    _add_db_aux(p)
    p.add_argument("--jobs", type=int, default=None, metavar="J", help="classify levels in J parallel processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="x0quartic",
        description="Decide degree-4 maps from X0(N) to positive-rank elliptic curves, and the quartic-point classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gram", help="Gram matrix of the degree pairing on the degeneracy basis")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--curve", required=True, metavar="LABEL")
    _add_db_aux(p, aux=False)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_gram)

    p = sub.add_parser("represents", help="does an integer positive-definite form represent a target value")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--gram", metavar="MATRIX", help='matrix as JSON, e.g. "[[6,-2],[-2,6]]"')
    g.add_argument("--gram-file", metavar="PATH", help="file holding the matrix as JSON")
    p.add_argument("--target", type=int, required=True, metavar="K")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_represents)

    p = sub.add_parser("ogg", help="point-count exclusion certificate for degree-d maps to elliptic curves")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--prime-bound", type=int, default=23)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_ogg)

    p = sub.add_parser("classify", help="classify one level")
    p.add_argument("--level", type=int, required=True)
    _add_db_aux(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("scan", help="classify a range of levels")
    _add_scan_range(p)
    p.add_argument("--out", metavar="PATH", help="write the full JSON report here")
    p.add_argument("--json", action="store_true", help="print the full JSON report to stdout")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("report", help="scan a range and write CSV + JSON + PNG figures")
    _add_scan_range(p)
    p.add_argument("--out-dir", required=True, metavar="DIR")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (_InputError, DatabaseError, AuxDataError, NotPositiveDefinite) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
