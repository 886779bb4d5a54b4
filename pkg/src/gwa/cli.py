"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 invariant
violation.  GWA_CACHE_DIR provides a default for --cache-dir.
"""

from __future__ import annotations

import argparse
import json
import sys

from .action import action_table_render, all_gwa_on_group, gwa_to_dict
from .errors import GwaError, InvariantViolation
from .groups import catalog
from .ideals import all_ideals
from .isomorphism import iso_families
from .structure import analysis_record, center
from .survey import SurveyReport, emit, survey_group, survey_range

USAGE_ERROR, COMPUTE_ERROR, INVARIANT_ERROR = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE_ERROR)


def _build_parser() -> _Parser:
    parser = _Parser(prog="gwa", description="Survey of finite groups acting on themselves.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("survey", help="compute survey rows and emit a report")
    p.add_argument("--max-order", type=int, default=31)
    p.add_argument("--group", nargs=2, type=int, metavar=("ORDER", "INDEX"))
    p.add_argument("--format", choices=["md", "csv", "json"], default="md")
    p.add_argument("--out", default="-")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--include-heavy", action="store_true")
    p.add_argument("--cache-dir", default=None)

    p = sub.add_parser("enumerate", help="enumerate every self-action of one group")
    p.add_argument("order", type=int)
    p.add_argument("index", type=int)
    p.add_argument("--emit-actions", metavar="PATH")
    p.add_argument("--include-heavy", action="store_true")

    p = sub.add_parser("classify", help="print the isomorphism family partition")
    p.add_argument("order", type=int)
    p.add_argument("index", type=int)
    p.add_argument("--include-heavy", action="store_true")

    p = sub.add_parser("check", help="print properties of one enumerated object")
    p.add_argument("order", type=int)
    p.add_argument("index", type=int)
    p.add_argument("hom_index", type=int, help="0-based position in enumeration order")
    p.add_argument(
        "--props",
        default="ideals,center,c1,nilpotency",
        help="comma-separated subset of: ideals,center,c1,nilpotency",
    )

    p = sub.add_parser("show-table", help="render the action table (actor on rows)")
    p.add_argument("order", type=int)
    p.add_argument("index", type=int)
    p.add_argument("hom_index", type=int)
    return parser


def _objects(order: int, index: int, allow_heavy: bool = False):
    G = catalog(order, index, allow_heavy=allow_heavy)
    return G, all_gwa_on_group(G)


def _cmd_survey(args) -> int:
    if args.group:
        order, index = args.group
        row = survey_group(order, index, allow_heavy=args.include_heavy)
        report = SurveyReport(rows=[row], skipped=[])
    else:
        if not 1 <= args.max_order <= 31:
            raise GwaError(f"--max-order must be in 1..31, got {args.max_order}")
        report = survey_range(
            max_order=args.max_order,
            include_heavy=args.include_heavy,
            cache_dir=args.cache_dir,
            jobs=args.jobs,
        )
    emit(report, args.format, args.out)
    return 0


def _cmd_enumerate(args) -> int:
    G, objects = _objects(args.order, args.index, args.include_heavy)
    print(f"{G.name} [{args.order},{args.index}]: {len(objects)} actions")
    if args.emit_actions:
        payload = [gwa_to_dict(A) for A in objects]
        with open(args.emit_actions, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
            fh.write("\n")
        print(f"wrote {len(objects)} objects to {args.emit_actions}")
    return 0


def _cmd_classify(args) -> int:
    G, objects = _objects(args.order, args.index, args.include_heavy)
    partition = iso_families(objects)
    print(f"{G.name} [{args.order},{args.index}]: {len(objects)} actions, "
          f"{len(partition.families)} families")
    for family in partition.families:  # 1-based indices in printed logs
        members = ", ".join(str(i + 1) for i in family)
        print(f"{len(family)} => [ {members} ]")
    return 0


def _cmd_check(args) -> int:
    G, objects = _objects(args.order, args.index)
    if not 0 <= args.hom_index < len(objects):
        raise GwaError(
            f"hom_index {args.hom_index} outside 0..{len(objects) - 1} for {G.name}"
        )
    A = objects[args.hom_index]
    wanted = [p.strip() for p in args.props.split(",") if p.strip()]
    known = {"ideals", "center", "c1", "nilpotency"}
    unknown = [p for p in wanted if p not in known]
    if unknown:
        raise GwaError(f"unknown props: {', '.join(unknown)}")
    record = analysis_record(A, gap_id=(args.order, args.index), hom_index=args.hom_index)
    out: dict = {"gap_id": record["gap_id"], "hom_index": record["hom_index"]}
    if "ideals" in wanted:
        out["n_ideals"] = record["n_ideals"]
        out["ideals"] = [list(i.elements) for i in all_ideals(A)]
    if "center" in wanted:
        out["center"] = list(center(A).elements)
        out["center_size"] = record["center_size"]
        out["singular"] = record["singular"]
    if "c1" in wanted:
        out["condition1"] = record["condition1"]
    if "nilpotency" in wanted:
        out["nilpotency"] = record["nilpotency"]
    print(json.dumps(out, sort_keys=True))
    return 0


def _cmd_show_table(args) -> int:
    G, objects = _objects(args.order, args.index)
    if not 0 <= args.hom_index < len(objects):
        raise GwaError(
            f"hom_index {args.hom_index} outside 0..{len(objects) - 1} for {G.name}"
        )
    rows = action_table_render(objects[args.hom_index])
    widths = [max(len(row[j]) for row in rows) for j in range(len(rows[0]))]
    for row in rows:
        print("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return 0


_COMMANDS = {
    "survey": _cmd_survey,
    "enumerate": _cmd_enumerate,
    "classify": _cmd_classify,
    "check": _cmd_check,
    "show-table": _cmd_show_table,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return INVARIANT_ERROR
    except (GwaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return COMPUTE_ERROR


if __name__ == "__main__":
    sys.exit(main())
