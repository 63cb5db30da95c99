from __future__ import annotations

import csv
import io
import json

import mpmath
import pytest

from rademacher.kloosterman import RationalIndex24, kloosterman_sum
from rademacher.partitions import PartitionRequest, p_r_analytic
from rademacher.records import (
    TERM_FIELDS,
    KloostermanRecord,
    ReportRecord,
    decimal,
    write_records_csv,
    write_terms_csv,
)

REPORT_KEYS = {"cmd", "r", "n", "analytic_re", "analytic_im", "rounded", "margin", "c_max", "certified", "ms"}


def test_decimal_keeps_the_digits():
    with mpmath.workprec(256):
        third = mpmath.mpf(1) / 3
    text = decimal(third, 256)
    assert text.startswith("0.3333333333333333333333333333333333333333333333333333333333333333333333333")
    assert decimal(mpmath.mpf(-1), 53) == "-1.0"


def test_report_from_count(ctx):
    count = p_r_analytic(PartitionRequest(24, 1, ctx), certify=True)
    record = ReportRecord.from_count("partitions --r 24 --n 1", count, 1.5)
    data = json.loads(record.to_json())
    assert set(data) == REPORT_KEYS
    assert data["rounded"] == "24"
    assert data["certified"] is True
    assert float(data["analytic_re"]) == 24.0
    assert data["ms"] == "1.500"
    assert ReportRecord.from_json(record.to_json()) == record


def test_exact_report_leaves_analytic_fields_empty():
    record = ReportRecord.exact("partitions --r 1 --n 5", 1, 5, 7, 0.25)
    data = json.loads(record.to_json())
    assert data["rounded"] == "7"
    assert data["analytic_re"] is None
    assert data["certified"] is None
    assert record.to_text() == "p_1(5) = 7"


def test_from_json_rejects_foreign_keys():
    record = ReportRecord.exact("x", 1, 1, 1, 0.0)
    data = json.loads(record.to_json())
    data["extra"] = 1
    with pytest.raises(ValueError):
        ReportRecord.from_json(json.dumps(data))
    del data["extra"], data["ms"]
    with pytest.raises(ValueError):
        ReportRecord.from_json(json.dumps(data))


def test_mismatch_is_visible_in_text():
    record = ReportRecord("cmd", 1, 4, "4.9", "0.0", "5", "0.1", 32, False, "1.000")
    assert record.to_text().endswith("MISMATCH")


def test_kloosterman_record(ctx):
    value = kloosterman_sum(RationalIndex24(0), RationalIndex24(24), 6, ctx)
    record = KloostermanRecord.from_value("kloosterman", 0, 24, value, ctx.bits, 0.0)
    data = json.loads(record.to_json())
    assert data["phi"] == 2
    # mobius(6) = 1
    assert float(data["value_re"]) == pytest.approx(1.0)
    assert abs(float(data["value_im"])) < 1e-30


def test_records_csv_header():
    stream = io.StringIO()
    write_records_csv([ReportRecord.exact("a", 2, 2, 5, 0.0), ReportRecord.exact("b", 2, 3, 10, 0.0)], stream)
    rows = list(csv.DictReader(io.StringIO(stream.getvalue())))
    assert set(rows[0]) == REPORT_KEYS
    assert [row["rounded"] for row in rows] == ["5", "10"]


def test_terms_csv(ctx):
    count = p_r_analytic(PartitionRequest(24, 2, ctx), c_max=8, keep_terms=True)
    stream = io.StringIO()
    write_terms_csv(count.terms, count.bits, stream)
    rows = list(csv.DictReader(io.StringIO(stream.getvalue())))
    assert tuple(rows[0]) == TERM_FIELDS
    assert [int(row["c"]) for row in rows] == list(range(1, 9))
    assert rows[-1]["partial_re"] == decimal(mpmath.re(count.terms[-1].partial), count.bits)
