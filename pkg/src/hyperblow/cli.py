"""Command-line front end.

Subcommands:

* ``verify``  - recompute packaged tables and diff every cell
* ``search``  - enumerate a parameter box and emit completed models
* ``family``  - instantiate an infinite family at chosen indices
* ``lift``    - re-embed a 3-fold construction in higher dimension
* ``bounds``  - evaluate the volume lower-bound formulas
* ``table``   - pretty-print the packaged expected data

Output is deterministic; rows can be rendered as json, csv, or md.
Exit status: 0 on success, 1 when verification finds a mismatch,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .construct import format_rational, run_construction
from .families import (
    add_one_weight,
    bound_nm1,
    bound_nm2,
    family_instance,
    lift_hypersurface,
    load_families,
)
from .locus import singular_locus
from .quotients import SingularityClass, classify
from .search import SearchRange, SearchSummary, run_search
from .tables import TABLE_IDS, _DATA_KEYS, load_expected, verify_table
from .weights import WeightedHypersurface

FORMATS = ("json", "csv", "md")


def _emit_rows(rows: list[dict], columns: list[str], fmt: str, out) -> None:
    """Render records with a fixed column order."""
    if fmt == "json":
        json.dump(rows, out, indent=2, default=str)
        out.write("\n")
        return
    flat = [
        {c: _cell_text(row.get(c)) for c in columns} for row in rows
    ]
    if fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=columns)
        writer.writeheader()
        writer.writerows(flat)
        return
    widths = {
        c: max(len(c), *(len(r[c]) for r in flat)) if flat else len(c)
        for c in columns
    }
    head = " | ".join(c.ljust(widths[c]) for c in columns)
    rule = "-|-".join("-" * widths[c] for c in columns)
    out.write(f"{head}\n{rule}\n")
    for r in flat:
        out.write(" | ".join(r[c].ljust(widths[c]) for c in columns) + "\n")


def _cell_text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return "(" + ",".join(str(v) for v in value) + ")"
    return str(value)


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        weights = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"weights must be comma-separated integers, got {text!r}"
        )
    if len(weights) != 5 or any(w < 1 for w in weights):
        raise argparse.ArgumentTypeError(
            "expected five positive comma-separated weights"
        )
    return weights


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if sep:
            bounds = (int(lo), int(hi))
        else:
            bounds = (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected N or LO..HI, got {text!r}"
        )
    if bounds[0] > bounds[1]:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return bounds


REPORT_COLUMNS = [
    "alpha",
    "deg",
    "weights",
    "b_weight",
    "vol",
    "P2",
    "chi",
    "rho",
    "basket",
    "delta",
]


def cmd_verify(args) -> int:
    data = load_expected(args.data)
    tables = args.tables or list(TABLE_IDS)
    failed = False
    for table_id in tables:
        result = verify_table(table_id, data)
        print(result.summary())
        for diff in result.diffs:
            print(f"  {diff}")
        failed = failed or not result.ok
    return 1 if failed else 0


def cmd_search(args) -> int:
    overrides = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            overrides.update(json.load(fh))
    for key in ("alpha_min", "alpha_max", "degree_min", "degree_max",
                "weight_max"):
        value = getattr(args, key)
        if value is not None:
            overrides[key] = value
    try:
        box = SearchRange.from_mapping(overrides)
    except (TypeError, ValueError) as ex:
        print(f"bad search range: {ex}", file=sys.stderr)
        return 2
    summary = SearchSummary()
    rows = [report.as_row() for report in run_search(box, summary)]
    _emit_rows(rows, REPORT_COLUMNS, args.format, sys.stdout)
    print(summary.describe(), file=sys.stderr)
    return 0


def cmd_family(args) -> int:
    lo, hi = args.r_range
    matches = [
        spec
        for spec in load_families()
        if spec.kind == args.kind
        and spec.params == args.params
        and spec.k == args.k
    ]
    if not matches:
        print(
            f"no packaged family of kind {args.kind} with parameters "
            f"{','.join(str(p) for p in args.params)} and k={args.k}",
            file=sys.stderr,
        )
        return 2
    spec = matches[0]
    rows = []
    for r in range(lo, hi + 1):
        instance = family_instance(spec, r)
        if instance is None:
            continue
        report = run_construction(instance.hypersurface)
        row = report.as_row()
        row["r"] = r
        rows.append(row)
    _emit_rows(rows, ["r"] + REPORT_COLUMNS, args.format, sys.stdout)
    print(
        f"{spec.describe()}: {len(rows)} instance(s) in {lo}..{hi}",
        file=sys.stderr,
    )
    return 0


def _lift_row(model) -> dict:
    h = model.hypersurface
    return {
        "dim": h.dim,
        "deg": h.degree,
        "weights": list(h.weights),
        "vol": format_rational(model.volume),
        "can.dim": model.canonical_dimension,
    }


def cmd_lift(args) -> int:
    base = WeightedHypersurface(args.weights, args.degree)
    if args.one_weight:
        noncanonical = [
            s
            for s in singular_locus(base).point_strata
            if classify(s.germ) is SingularityClass.NONCANONICAL
        ]
        if len(noncanonical) != 1:
            print(
                f"{base} has {len(noncanonical)} non-canonical points; "
                "the one-weight lift needs exactly one",
                file=sys.stderr,
            )
            return 2
        stratum = noncanonical[0]
        model = add_one_weight(base, stratum, stratum.germ.residues)
        row = _lift_row(model)
        row["numerical_kodaira"] = model.numerical_kodaira
    else:
        model = lift_hypersurface(base)
        row = _lift_row(model)
        row["classification"] = model.classification
    columns = list(row.keys())
    _emit_rows([row], columns, args.format, sys.stdout)
    return 0


def cmd_bounds(args) -> int:
    n, p = args.dimension, args.genus
    rows = []
    # the codimension-one bound assumes at least n sections
    try:
        value = bound_nm1(n, max(p, n))
        note = "" if p >= n else f"evaluated at p_g={n}"
        rows.append(
            {"case": "canonical dimension n-1", "bound": format_rational(value),
             "note": note}
        )
    except ValueError as ex:
        rows.append({"case": "canonical dimension n-1", "bound": "",
                     "note": str(ex)})
    try:
        value = bound_nm2(n, p)
        rows.append(
            {"case": "canonical dimension n-2", "bound": format_rational(value),
             "note": ""}
        )
    except ValueError as ex:
        rows.append({"case": "canonical dimension n-2", "bound": "",
                     "note": str(ex)})
    _emit_rows(rows, ["case", "bound", "note"], args.format, sys.stdout)
    return 0


def cmd_table(args) -> int:
    data = load_expected(args.data)
    rows = data[_DATA_KEYS.get(args.table, args.table)]
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    display = []
    for row in rows:
        shown = dict(row)
        if "basket" in shown:
            shown["basket"] = ";".join(
                f"{cnt}x({b},{r})" for cnt, b, r in shown["basket"]
            )
        if "b_weight" in shown:
            index, residues = shown["b_weight"]
            shown["b_weight"] = (
                f"1/{index}({','.join(str(e) for e in residues)})"
            )
        if "family" in shown:
            fam = shown["family"]
            shown["family"] = (
                f"{fam['kind']}{tuple(fam['params'])}"
                f"@k={fam.get('k', 1)},r={fam['r']}"
            )
        display.append(shown)
    _emit_rows(display, columns, args.format, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperblow",
        description="verify and search minimal models built by weighted "
        "blow-ups of weighted hypersurfaces",
    )
    parser.add_argument(
        "--format", choices=FORMATS, default="md", help="output rendering"
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker count accepted for interface compatibility; "
        "evaluation is sequential",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser(
        "verify", help="recompute packaged tables and report differences"
    )
    p_verify.add_argument(
        "tables",
        nargs="*",
        help=f"tables to verify (default: all of {', '.join(TABLE_IDS)})",
    )
    p_verify.add_argument("--data", help="replacement expected-data JSON")
    p_verify.set_defaults(func=cmd_verify)

    p_search = sub.add_parser("search", help="scan a parameter box")
    for key, text in (
        ("alpha_min", "smallest amplitude"),
        ("alpha_max", "largest amplitude"),
        ("degree_min", "smallest degree"),
        ("degree_max", "largest degree"),
        ("weight_max", "largest single weight"),
    ):
        p_search.add_argument(
            f"--{key.replace('_', '-')}", dest=key, type=int, default=None,
            help=text,
        )
    p_search.add_argument(
        "--config", help="JSON file with search range overrides"
    )
    p_search.set_defaults(func=cmd_search)

    p_family = sub.add_parser(
        "family", help="instantiate a packaged infinite family"
    )
    p_family.add_argument("kind", choices=("6r", "3r+3k", "4r+2k"))
    p_family.add_argument(
        "params",
        type=lambda s: tuple(int(p) for p in s.split(",")),
        help="comma-separated germ parameters, e.g. 3,4,5 or 1,2",
    )
    p_family.add_argument(
        "r_range", type=_parse_range, help="index or range LO..HI"
    )
    p_family.add_argument(
        "--k", type=int, default=1, help="secondary parameter of the kind"
    )
    p_family.set_defaults(func=cmd_family)

    p_lift = sub.add_parser(
        "lift", help="re-embed a 3-fold construction in higher dimension"
    )
    p_lift.add_argument("weights", type=_parse_weights)
    p_lift.add_argument("degree", type=int)
    p_lift.add_argument(
        "--one-weight",
        action="store_true",
        help="adjoin a single weight-one coordinate to the blown-up model "
        "instead of padding to amplitude one",
    )
    p_lift.set_defaults(func=cmd_lift)

    p_bounds = sub.add_parser(
        "bounds", help="volume lower bounds for both canonical dimensions"
    )
    p_bounds.add_argument("dimension", type=int)
    p_bounds.add_argument("genus", type=int)
    p_bounds.set_defaults(func=cmd_bounds)

    p_table = sub.add_parser("table", help="print packaged expected data")
    p_table.add_argument("table", choices=TABLE_IDS)
    p_table.add_argument("--data", help="replacement expected-data JSON")
    p_table.set_defaults(func=cmd_table)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except (ValueError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
