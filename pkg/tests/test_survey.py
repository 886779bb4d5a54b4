from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gwa.cli import main
from gwa.errors import UnknownId, UnsupportedHeavy
from gwa.survey import (
    SurveyReport,
    SurveyRow,
    check_q8_remark,
    emit,
    render_csv,
    render_md,
    report_annex,
    row_discrepancy,
    survey_group,
    survey_range,
)


# --- survey rows -----------------------------------------------------------------


def test_survey_row_s3():
    row = survey_group(6, 1)
    assert row.name == "S3"
    assert (row.n_gwa, row.n_classes, row.n_c1_classes) == (10, 5, 3)
    assert row.ideals_hist == {3: 5}
    assert row.nilp_hist == {0: 5}
    assert row.nilp_detail == {"none": 5}


def test_survey_row_klein():
    row = survey_group(4, 2)
    assert (row.n_gwa, row.n_classes, row.n_c1_classes) == (10, 3, 2)
    assert row.ideals_hist == {3: 2, 5: 1}
    assert row.nilp_hist == {0: 1, 1: 1, 2: 1}


def test_survey_row_q8():
    row = survey_group(8, 4)
    assert (row.n_gwa, row.n_classes, row.n_c1_classes) == (52, 10, 7)
    assert row.ideals_hist == {4: 4, 6: 6}
    assert row.nilp_hist == {0: 4, 2: 6}


def test_survey_row_trivial_group():
    row = survey_group(1, 1)
    assert (row.n_gwa, row.n_classes, row.n_c1_classes) == (1, 1, 1)
    assert row.ideals_hist == {1: 1}
    assert row.nilp_hist == {0: 1}
    assert row.nilp_detail == {"0": 1}  # class 0, not "none"


def test_survey_row_hist_sums():
    for gap_id in [(4, 2), (6, 1), (8, 3), (8, 4)]:
        row = survey_group(*gap_id)
        assert sum(row.ideals_hist.values()) == row.n_classes
        assert sum(row.nilp_hist.values()) == row.n_classes
        assert row.n_c1_classes <= row.n_classes


def test_survey_group_gates():
    with pytest.raises(UnknownId):
        survey_group(6, 3)
    with pytest.raises(UnsupportedHeavy):
        survey_group(16, 14)


def test_survey_range_small():
    report = survey_range(max_order=7)
    assert [row.gap_id for row in report.rows] == [
        (1, 1), (2, 1), (3, 1), (4, 1), (4, 2), (5, 1), (6, 1), (6, 2), (7, 1),
    ]
    assert report.skipped == []
    assert report.failures == []


def test_survey_range_skips_heavy():
    report = survey_range(max_order=16)
    assert (16, 14) in report.skipped
    assert all(row.gap_id != (16, 14) for row in report.rows)


def test_rows_match_reference_through_order_10():
    report = survey_range(max_order=10)
    for row in report.rows:
        assert row_discrepancy(row) is None, row.gap_id
    assert report_annex(report) == []


def test_q8_remark_record():
    record = check_q8_remark()
    assert record.total == 52
    assert record.non_nilpotent == 36
    assert record.condition1_among_non_nilpotent == 6
    assert record.non_nilpotent_families == 4


# --- discrepancy annex -------------------------------------------------------------


def test_row_discrepancy_reports_diffs():
    base = survey_group(6, 1)
    tweaked = SurveyRow(
        gap_id=base.gap_id,
        name=base.name,
        n_gwa=11,
        n_classes=base.n_classes,
        n_c1_classes=base.n_c1_classes,
        ideals_hist=base.ideals_hist,
        nilp_hist=base.nilp_hist,
        nilp_detail=base.nilp_detail,
    )
    diff = row_discrepancy(tweaked)
    assert diff == {
        "gap_id": [6, 1],
        "diffs": {"n_gwa": {"computed": 11, "reference": 10}},
    }


def test_annex_appears_in_md_output(tmp_path):
    base = survey_group(6, 1)
    tweaked = SurveyRow(
        gap_id=base.gap_id, name=base.name, n_gwa=11, n_classes=base.n_classes,
        n_c1_classes=base.n_c1_classes, ideals_hist=base.ideals_hist,
        nilp_hist=base.nilp_hist, nilp_detail=base.nilp_detail,
    )
    text = render_md(SurveyReport(rows=[tweaked], skipped=[]))
    assert "Discrepancy annex" in text
    assert "computed 11 vs reference 10" in text


# --- emitters ---------------------------------------------------------------------


def test_emit_csv_header_only(tmp_path):
    out = tmp_path / "empty.csv"
    emit(SurveyReport(rows=[], skipped=[]), "csv", out)
    assert out.read_text() == "order,index,name,n_gwa,n_classes,n_c1_classes,ideals_hist,nilp_hist\n"


def test_emit_csv_s3_line():
    text = render_csv(SurveyReport(rows=[survey_group(6, 1)], skipped=[]))
    assert text.splitlines()[1] == "6,1,S3,10,5,3,3:5,0:5"


def test_emit_md_klein_brackets():
    text = render_md(SurveyReport(rows=[survey_group(4, 2)], skipped=[]))
    assert "[ 3, 2 ], [ 5, 1 ]" in text


def test_emit_json_round_trip(tmp_path):
    report = survey_range(max_order=6)
    out = tmp_path / "rows.json"
    emit(report, "json", out)
    data = json.loads(out.read_text())
    assert data["tool_version"] == report.tool_version
    assert len(data["rows"]) == len(report.rows)
    assert data["annex"] == []
    back = SurveyRow.from_dict(data["rows"][-1])
    assert back == report.rows[-1]


def test_emit_rejects_unknown_format():
    with pytest.raises(ValueError):
        emit(SurveyReport(rows=[], skipped=[]), "xml", None)


# --- cache -----------------------------------------------------------------------


def test_cache_round_trip(tmp_path):
    cache = tmp_path / "cache"
    first = survey_range(max_order=6, cache_dir=cache)
    files = list(cache.rglob("*.json"))
    assert len(files) == len(first.rows)
    second = survey_range(max_order=6, cache_dir=cache)
    assert second.rows == first.rows
    assert render_csv(second) == render_csv(first)


def test_corrupt_cache_entry_recomputed(tmp_path):
    cache = tmp_path / "cache"
    first = survey_range(max_order=4, cache_dir=cache)
    victim = sorted(cache.rglob("*.json"))[0]
    victim.write_text("{ not json !")
    second = survey_range(max_order=4, cache_dir=cache)
    assert second.rows == first.rows


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("GWA_CACHE_DIR", str(tmp_path / "envcache"))
    survey_range(max_order=3)
    assert list((tmp_path / "envcache").rglob("*.json"))


def test_parallel_jobs_match_sequential():
    seq = survey_range(max_order=8)
    par = survey_range(max_order=8, jobs=2)
    assert par.rows == seq.rows


# --- CLI -------------------------------------------------------------------------


def test_cli_survey_csv(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    code = main(["survey", "--max-order", "5", "--format", "csv", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("order,index,")
    assert len(lines) == 1 + 6


def test_cli_survey_single_group(capsys):
    code = main(["survey", "--group", "6", "1", "--format", "csv"])
    assert code == 0
    captured = capsys.readouterr().out
    assert "6,1,S3,10,5,3,3:5,0:5" in captured


def test_cli_enumerate(tmp_path, capsys):
    out = tmp_path / "actions.json"
    code = main(["enumerate", "6", "1", "--emit-actions", str(out)])
    assert code == 0
    assert "10 actions" in capsys.readouterr().out
    payload = json.loads(out.read_text())
    assert len(payload) == 10
    assert payload[0]["group"]["gap_id"] == [6, 1]


def test_cli_classify(capsys):
    code = main(["classify", "6", "1"])
    assert code == 0
    out = capsys.readouterr().out
    assert "5 families" in out
    assert "1 => [ 1 ]" in out  # printed family indices are 1-based


def test_cli_check(capsys):
    code = main(["check", "6", "1", "0", "--props", "ideals,c1"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["n_ideals"] == 3
    assert data["condition1"] is True
    assert "nilpotency" not in data


def test_cli_show_table(capsys):
    code = main(["show-table", "2", "1", "0"])
    assert code == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 3


def test_cli_exit_codes(capsys):
    assert main(["survey", "--max-order", "notanumber"]) == 1
    assert main(["nonsense"]) == 1
    assert main(["enumerate", "6", "9"]) == 2  # unknown id
    assert main(["check", "6", "1", "99"]) == 2
    assert main(["enumerate", "16", "14"]) == 2  # gated
    capsys.readouterr()


def test_cli_entry_point_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "gwa.cli", "survey", "--group", "4", "2", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "4,2,C2xC2,10,3,2" in proc.stdout
