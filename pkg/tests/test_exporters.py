from __future__ import annotations

import json

import pandas as pd
import pytest
from openpyxl import load_workbook

from contispine.exporters.export_csv import CsvExporter, ResultTable, read_result_csv
from contispine.exporters.export_excel import ExcelExporter
from contispine.utils.constants import MANIFEST_FILENAME


def _table() -> ResultTable:
    frame = pd.DataFrame({"t": [0.0, 0.001], "F_r": [0.0, 1.5], "role": ["base", "distal"]})
    return ResultTable("trace", frame, {"t": "s", "F_r": "N"})


def test_csv_has_header_then_units_row():
    lines = _table().to_csv_text().split("\n")
    assert lines[0] == "t,F_r,role"
    assert lines[1] == "s,N,-"
    assert lines[2] == "0.0,0.0,base"
    assert "\r" not in _table().to_csv_text()


def test_units_must_name_existing_columns():
    with pytest.raises(ValueError, match="unknown columns"):
        ResultTable("trace", pd.DataFrame({"t": [0.0]}), {"F_r": "N"})


def test_written_csv_reads_back(tmp_path):
    exporter = CsvExporter(tmp_path / "out")
    path = exporter.write_table(_table())
    assert path.name == "trace.csv"
    assert path.read_bytes().count(b"\r") == 0
    frame = read_result_csv(path)
    assert frame["F_r"].tolist() == [0.0, 1.5]


def test_manifest_is_stable_and_sorted(tmp_path):
    exporter = CsvExporter(tmp_path)
    files = exporter.write_tables([_table(), ResultTable("metrics", pd.DataFrame({"rms_N": [1.0]}))])
    first = exporter.write_manifest("simulate", "abc", files).read_bytes()
    second = exporter.write_manifest("simulate", "abc", list(reversed(files))).read_bytes()
    assert first == second
    manifest = json.loads(first)
    assert manifest["files"] == ["metrics.csv", "trace.csv"]
    assert manifest["config_sha256"] == "abc"
    assert set(manifest["versions"]) == {"contispine", "numpy", "pandas", "scipy"}
    assert (tmp_path / MANIFEST_FILENAME).exists()


def test_excel_workbook_has_one_formatted_sheet_per_table(tmp_path):
    output = ExcelExporter.export_tables([_table()], tmp_path / "simulate.xlsx")
    assert output
    sheet = load_workbook(output)["trace"]
    assert sheet.freeze_panes == "A2"
    assert sheet.auto_filter.ref == "A1:C3"


def test_excel_skips_empty_tables(tmp_path):
    empty = ResultTable("empty", pd.DataFrame({"t": []}))
    assert ExcelExporter.export_tables([empty], tmp_path / "none.xlsx") == ""
