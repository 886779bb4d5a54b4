"""Full order-<32 survey: per-group action counts, isomorphism families,
per-family attributes, histogram rows, caching, and multi-format output."""

from __future__ import annotations

import json
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .action import all_gwa_on_group
from .errors import GwaError, InvariantViolation
from .groups import HEAVY_IDS, catalog, catalog_ids
from .ideals import count_ideals
from .isomorphism import iso_families
from .reference import REFERENCE_ROWS
from .structure import condition1, nilpotency_class

__all__ = [
    "TOOL_VERSION",
    "SurveyRow",
    "SurveyReport",
    "Q8RemarkRecord",
    "survey_group",
    "survey_range",
    "check_q8_remark",
    "row_discrepancy",
    "report_annex",
    "emit",
]

TOOL_VERSION = "0.1.0"


@dataclass(frozen=True)
class SurveyRow:
    """Per-group record: action count, family counts, and per-family
    histograms keyed the way the reference table prints them (bucket 0 of the
    class histogram covers both class 0 and not-nilpotent)."""

    gap_id: tuple[int, int]
    name: str
    n_gwa: int
    n_classes: int
    n_c1_classes: int
    ideals_hist: dict[int, int]
    nilp_hist: dict[int, int]
    nilp_detail: dict[str, int]  # unambiguous: counts per "none"/"0"/"1"/"2"

    def to_dict(self) -> dict:
        return {
            "gap_id": list(self.gap_id),
            "name": self.name,
            "n_gwa": self.n_gwa,
            "n_classes": self.n_classes,
            "n_c1_classes": self.n_c1_classes,
            "ideals_hist": {str(k): v for k, v in sorted(self.ideals_hist.items())},
            "nilp_hist": {str(k): v for k, v in sorted(self.nilp_hist.items())},
            "nilp_detail": dict(sorted(self.nilp_detail.items())),
        }

    @staticmethod
    def from_dict(data: dict) -> "SurveyRow":
        return SurveyRow(
            gap_id=tuple(data["gap_id"]),
            name=data["name"],
            n_gwa=data["n_gwa"],
            n_classes=data["n_classes"],
            n_c1_classes=data["n_c1_classes"],
            ideals_hist={int(k): v for k, v in data["ideals_hist"].items()},
            nilp_hist={int(k): v for k, v in data["nilp_hist"].items()},
            nilp_detail=dict(data["nilp_detail"]),
        )


@dataclass
class SurveyReport:
    rows: list[SurveyRow]
    skipped: list[tuple[int, int]]
    failures: list[tuple[tuple[int, int], str]] = field(default_factory=list)
    timing: dict[tuple[int, int], float] = field(default_factory=dict)
    tool_version: str = TOOL_VERSION


@dataclass(frozen=True)
class Q8RemarkRecord:
    total: int
    non_nilpotent: int
    condition1_among_non_nilpotent: int
    non_nilpotent_families: int


def survey_group(order: int, index: int, allow_heavy: bool = False) -> SurveyRow:
    """Enumerate, classify, and histogram one catalog group.

    Attributes are evaluated once per family on its representative; family
    constancy is cross-checked by the classifier's fingerprint pass.
    """
    G = catalog(order, index, allow_heavy=allow_heavy)
    objects = all_gwa_on_group(G)
    partition = iso_families(objects)
    ideals_hist: Counter[int] = Counter()
    nilp_hist: Counter[int] = Counter()
    nilp_detail: Counter[str] = Counter()
    n_c1 = 0
    for rep in partition.representatives:
        A = objects[rep]
        ideals_hist[count_ideals(A)] += 1
        nilp = nilpotency_class(A)
        if nilp.is_nilpotent and nilp.class_value not in (0, 1, 2):
            raise InvariantViolation(
                f"object {rep} over {G.name} reports nilpotency class "
                f"{nilp.class_value}; expected 1 or 2 (or 0 for the trivial group)"
            )
        nilp_hist[nilp.survey_bucket] += 1
        nilp_detail[str(nilp.class_value) if nilp.is_nilpotent else "none"] += 1
        if condition1(A):
            n_c1 += 1
    return SurveyRow(
        gap_id=(order, index),
        name=G.name,
        n_gwa=len(objects),
        n_classes=len(partition.families),
        n_c1_classes=n_c1,
        ideals_hist=dict(sorted(ideals_hist.items())),
        nilp_hist=dict(sorted(nilp_hist.items())),
        nilp_detail=dict(sorted(nilp_detail.items())),
    )


def _cache_path(cache_dir: Path, gap_id: tuple[int, int]) -> Path:
    return cache_dir / TOOL_VERSION / f"o{gap_id[0]:02d}_i{gap_id[1]:02d}.json"


def _cache_load(cache_dir: Path, gap_id: tuple[int, int]) -> SurveyRow | None:
    path = _cache_path(cache_dir, gap_id)
    try:
        data = json.loads(path.read_text())
        row = SurveyRow.from_dict(data)
    except (OSError, ValueError, KeyError, TypeError):
        return None  # absent or corrupt entries are recomputed, never trusted
    if row.gap_id != gap_id:
        return None
    return row


def _cache_store(cache_dir: Path, row: SurveyRow) -> None:
    path = _cache_path(cache_dir, row.gap_id)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(row.to_dict(), sort_keys=True) + "\n")


def _compute_row_timed(
    args: tuple[int, int, bool],
) -> tuple[tuple[int, int], SurveyRow | None, str | None, float]:
    order, index, allow_heavy = args
    start = time.perf_counter()
    try:
        row = survey_group(order, index, allow_heavy=allow_heavy)
    except InvariantViolation:
        raise  # aborts the whole run: a cross-cutting invariant is broken
    except GwaError as exc:
        return ((order, index), None, str(exc), time.perf_counter() - start)
    return ((order, index), row, None, time.perf_counter() - start)


def resolve_cache_dir(cache_dir: str | os.PathLike | None) -> Path | None:
    """CLI --cache-dir wins; the GWA_CACHE_DIR environment variable is the
    fallback; None disables caching."""
    if cache_dir is not None:
        return Path(cache_dir)
    env = os.environ.get("GWA_CACHE_DIR")
    return Path(env) if env else None


def survey_range(
    max_order: int = 31,
    include_heavy: bool = False,
    cache_dir: str | os.PathLike | None = None,
    jobs: int = 1,
) -> SurveyReport:
    """Rows for every catalog id with order <= max_order.

    Gated heavy ids are recorded in ``skipped`` unless ``include_heavy``;
    per-row failures are recorded and the run continues.  With a cache
    directory, previously computed rows are reused and a warm re-run is
    byte-identical to a cold one.
    """
    ids = catalog_ids(max_order, include_heavy=True)
    todo = []
    report = SurveyReport(rows=[], skipped=[])
    cache = resolve_cache_dir(cache_dir)
    cached_rows: dict[tuple[int, int], SurveyRow] = {}
    for gap_id in ids:
        if gap_id in HEAVY_IDS and not include_heavy:
            report.skipped.append(gap_id)
            continue
        if cache is not None:
            row = _cache_load(cache, gap_id)
            if row is not None:
                cached_rows[gap_id] = row
                continue
        todo.append((gap_id[0], gap_id[1], include_heavy))
    computed: dict[tuple[int, int], SurveyRow] = {}
    if todo and jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_compute_row_timed, todo))
    else:
        results = [_compute_row_timed(args) for args in todo]
    for gap_id, row, error, elapsed in results:
        report.timing[gap_id] = elapsed
        if row is None:
            report.failures.append((gap_id, error or "unknown error"))
        else:
            computed[gap_id] = row
    if cache is not None:
        for row in computed.values():
            _cache_store(cache, row)
    merged = {**cached_rows, **computed}
    report.rows = [merged[g] for g in sorted(merged)]
    return report


def check_q8_remark() -> Q8RemarkRecord:
    """Counts over the 52 self-actions of the order-8 quaternion group:
    how many are not nilpotent, and how many of those satisfy the triple
    identity; also the number of non-nilpotent families."""
    G = catalog(8, 4)
    objects = all_gwa_on_group(G)
    non_nilp = [A for A in objects if not nilpotency_class(A).is_nilpotent]
    c1 = [A for A in non_nilp if condition1(A)]
    partition = iso_families(objects)
    nn_families = sum(
        1
        for rep in partition.representatives
        if not nilpotency_class(objects[rep]).is_nilpotent
    )
    return Q8RemarkRecord(
        total=len(objects),
        non_nilpotent=len(non_nilp),
        condition1_among_non_nilpotent=len(c1),
        non_nilpotent_families=nn_families,
    )


# ---------------------------------------------------------------------------
# discrepancy annex and emitters


def row_discrepancy(row: SurveyRow) -> dict | None:
    """Field-by-field diff against the reference table, or None when equal."""
    ref = REFERENCE_ROWS.get(row.gap_id)
    if ref is None:
        return {"gap_id": list(row.gap_id), "reason": "no reference row"}
    _, n_gwa, n_classes, n_c1, ideals, nilp = ref
    diffs = {}
    for label, got, want in [
        ("n_gwa", row.n_gwa, n_gwa),
        ("n_classes", row.n_classes, n_classes),
        ("n_c1_classes", row.n_c1_classes, n_c1),
        ("ideals_hist", row.ideals_hist, ideals),
        ("nilp_hist", row.nilp_hist, nilp),
    ]:
        if got != want:
            diffs[label] = {"computed": got, "reference": want}
    if not diffs:
        return None
    return {"gap_id": list(row.gap_id), "diffs": diffs}


def report_annex(report: SurveyReport) -> list[dict]:
    out = []
    for row in report.rows:
        diff = row_discrepancy(row)
        if diff is not None:
            out.append(diff)
    return out


def _hist_pairs(hist: dict[int, int]) -> str:
    return ";".join(f"{k}:{v}" for k, v in sorted(hist.items()))


def _hist_brackets(hist: dict[int, int]) -> str:
    return ", ".join(f"[ {k}, {v} ]" for k, v in sorted(hist.items()))


def render_csv(report: SurveyReport) -> str:
    lines = ["order,index,name,n_gwa,n_classes,n_c1_classes,ideals_hist,nilp_hist"]
    for row in report.rows:
        lines.append(
            f"{row.gap_id[0]},{row.gap_id[1]},{row.name},{row.n_gwa},"
            f"{row.n_classes},{row.n_c1_classes},"
            f"{_hist_pairs(row.ideals_hist)},{_hist_pairs(row.nilp_hist)}"
        )
    return "\n".join(lines) + "\n"


def render_md(report: SurveyReport) -> str:
    lines = [
        "| id | name | actions | families | families with the triple identity | ideals per family | class per family |",
        "|---|---|---|---|---|---|---|",
    ]
    for row in report.rows:
        lines.append(
            f"| [ {row.gap_id[0]}, {row.gap_id[1]} ] | {row.name} | {row.n_gwa} "
            f"| {row.n_classes} | {row.n_c1_classes} "
            f"| {_hist_brackets(row.ideals_hist)} | {_hist_brackets(row.nilp_hist)} |"
        )
    if report.skipped:
        lines.append("")
        skipped = ", ".join(f"[ {o}, {i} ]" for o, i in report.skipped)
        lines.append(f"Skipped (gated): {skipped}")
    if report.failures:
        lines.append("")
        for gap_id, message in report.failures:
            lines.append(f"Failed [ {gap_id[0]}, {gap_id[1]} ]: {message}")
    annex = report_annex(report)
    if annex:
        lines.append("")
        lines.append("## Discrepancy annex")
        lines.append("")
        lines.append("Computed values that differ from the reference table:")
        for entry in annex:
            gap = entry["gap_id"]
            if "diffs" not in entry:
                lines.append(f"- [ {gap[0]}, {gap[1]} ]: {entry['reason']}")
                continue
            for fieldname, pair in entry["diffs"].items():
                lines.append(
                    f"- [ {gap[0]}, {gap[1]} ] {fieldname}: computed "
                    f"{pair['computed']} vs reference {pair['reference']}"
                )
    return "\n".join(lines) + "\n"


def render_json(report: SurveyReport) -> str:
    payload = {
        "tool_version": report.tool_version,
        "rows": [row.to_dict() for row in report.rows],
        "skipped": [list(g) for g in report.skipped],
        "failures": [[list(g), msg] for g, msg in report.failures],
        "annex": report_annex(report),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


_RENDERERS = {"csv": render_csv, "md": render_md, "json": render_json}


def emit(report: SurveyReport, format: str, destination: str | os.PathLike | None) -> None:
    """Write the report deterministically; destination None or '-' is stdout."""
    if format not in _RENDERERS:
        raise ValueError(f"unknown format {format!r}; expected md, csv or json")
    text = _RENDERERS[format](report)
    if destination is None or destination == "-":
        import sys

        sys.stdout.write(text)
        return
    Path(destination).write_text(text)
