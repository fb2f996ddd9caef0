"""Serialization of suite results and data tables, and the SQLite run archive.

Documents are deterministic: fields are emitted in a fixed order, results
are sorted, floats are written with 17 significant digits in CSV and as
their shortest round-trip repr in JSON, and runtimes appear only when
asked for.
"""

from __future__ import annotations

import csv
import io
import json
import math
from datetime import datetime, timezone
from typing import Iterable, Optional, Sequence

import sqlite_utils
from loguru import logger
from ulid import ULID

from .base import PointSet
from .suites import FAIL, CaseResult, VerificationSuiteResult

SCHEMA_VERSION = 1

CASE_COLUMNS = ("suite_id", "case_id", "status", "margin", "detail")


def format_value(value) -> str:
    """CSV text for one cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if hasattr(value, "dtype"):
        return format_value(value.item())
    return str(value)


def rows_to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(value) for value in row])
    return buffer.getvalue()


def points_to_csv(ps: PointSet) -> str:
    """One row per point: ``n`` (1-based) and the coordinates."""
    header = ["n", "x"] if ps.d == 1 else ["n"] + [f"x{k + 1}" for k in range(ps.d)]
    rows = (
        [n + 1] + [float(value) for value in point] for n, point in enumerate(ps.points)
    )
    return rows_to_csv(header, rows)


def _sorted(results: Sequence[VerificationSuiteResult]) -> list[VerificationSuiteResult]:
    return sorted(results, key=lambda result: result.suite_id)


def overall_status(results: Sequence[VerificationSuiteResult]) -> str:
    statuses = {result.status for result in results}
    for status in (FAIL, "inconclusive"):
        if status in statuses:
            return status
    return "pass"


def exit_code(results: Sequence[VerificationSuiteResult]) -> int:
    return 1 if any(result.failures for result in results) else 0


def _json_number(value: Optional[float]):
    if value is None or not math.isfinite(value):
        return None
    return value


def _suite_document(result: VerificationSuiteResult, include_timings: bool) -> dict:
    document = {
        "suite_id": result.suite_id,
        "status": result.status,
        "passed": result.passed,
        "failures": result.failures,
        "inconclusive": result.inconclusive,
    }
    if include_timings:
        document["runtime"] = result.runtime
    document["cases"] = [
        {
            "case_id": case.case_id,
            "status": case.status,
            "margin": _json_number(case.margin),
            "detail": case.detail,
        }
        for case in result.cases
    ]
    return document


def emit_report(
    results: Sequence[VerificationSuiteResult],
    format: str = "json",
    include_timings: bool = False,
) -> str:
    """Render results as a JSON or CSV document."""
    if not results:
        raise ValueError("No suite results to report")
    results = _sorted(results)
    if format == "json":
        document = {
            "schema_version": SCHEMA_VERSION,
            "status": overall_status(results),
            "passed": sum(result.passed for result in results),
            "failures": sum(result.failures for result in results),
            "inconclusive": sum(result.inconclusive for result in results),
            "suites": [_suite_document(result, include_timings) for result in results],
        }
        return json.dumps(document, indent=2) + "\n"
    if format == "csv":
        header = list(CASE_COLUMNS) + (["runtime"] if include_timings else [])
        rows = []
        for result in results:
            for case in result.cases:
                row = [result.suite_id, case.case_id, case.status, case.margin, case.detail]
                if include_timings:
                    row.append(result.runtime)
                rows.append(row)
        return rows_to_csv(header, rows)
    raise ValueError(f"format must be 'json' or 'csv', got '{format}'")


def _margin(text) -> Optional[float]:
    if text is None or text == "":
        return None
    return float(text)


def parse_report(text: str, format: str = "json") -> list[VerificationSuiteResult]:
    """Read a document written by ``emit_report`` back into results."""
    if format == "json":
        try:
            document = json.loads(text)
        except json.JSONDecodeError as ex:
            raise ValueError(f"Report is not valid JSON: {ex}") from None
        version = document.get("schema_version") if isinstance(document, dict) else None
        if version != SCHEMA_VERSION:
            raise ValueError(
                f"Unsupported report schema_version {version!r}, expected {SCHEMA_VERSION}"
            )
        return [
            VerificationSuiteResult(
                suite["suite_id"],
                tuple(
                    CaseResult(
                        case["case_id"],
                        case["status"],
                        _margin(case["margin"]),
                        case.get("detail", ""),
                    )
                    for case in suite["cases"]
                ),
                suite.get("runtime", 0.0),
            )
            for suite in document["suites"]
        ]
    if format == "csv":
        reader = csv.DictReader(io.StringIO(text))
        missing = set(CASE_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"CSV report is missing columns {sorted(missing)}")
        grouped: dict[str, list[CaseResult]] = {}
        runtimes: dict[str, float] = {}
        for row in reader:
            grouped.setdefault(row["suite_id"], []).append(
                CaseResult(row["case_id"], row["status"], _margin(row["margin"]), row["detail"])
            )
            if row.get("runtime"):
                runtimes[row["suite_id"]] = float(row["runtime"])
        return [
            VerificationSuiteResult(suite_id, tuple(cases), runtimes.get(suite_id, 0.0))
            for suite_id, cases in grouped.items()
        ]
    raise ValueError(f"format must be 'json' or 'csv', got '{format}'")


def merge_reports(reports: Iterable[list[VerificationSuiteResult]]) -> list[VerificationSuiteResult]:
    merged: dict[str, VerificationSuiteResult] = {}
    for results in reports:
        for result in results:
            if result.suite_id in merged:
                raise ValueError(f"Suite '{result.suite_id}' appears in more than one report")
            merged[result.suite_id] = result
    return _sorted(list(merged.values()))


def archive_results(
    results: Sequence[VerificationSuiteResult],
    db_path,
    config: Optional[dict] = None,
) -> str:
    """Append a run to the SQLite archive and return its id."""
    if not results:
        raise ValueError("No suite results to archive")
    db = sqlite_utils.Database(db_path)
    run_id = "run-" + str(ULID()).lower()
    db["runs"].insert(
        {
            "id": run_id,
            "created_at": datetime.now(timezone.utc).isoformat(),
            "status": overall_status(results),
            "failures": sum(result.failures for result in results),
            "config": json.dumps(config or {}, sort_keys=True),
        },
        pk="id",
    )
    db["suites"].insert_all(
        (
            {
                "run_id": run_id,
                "suite_id": result.suite_id,
                "status": result.status,
                "passed": result.passed,
                "failures": result.failures,
                "inconclusive": result.inconclusive,
                "runtime": result.runtime,
            }
            for result in results
        ),
        pk=("run_id", "suite_id"),
        foreign_keys=[("run_id", "runs", "id")],
    )
    db["cases"].insert_all(
        (
            {
                "run_id": run_id,
                "suite_id": result.suite_id,
                "case_id": case.case_id,
                "status": case.status,
                "margin": case.margin,
                "detail": case.detail,
            }
            for result in results
            for case in result.cases
        ),
        pk=("run_id", "suite_id", "case_id"),
        foreign_keys=[("run_id", "runs", "id")],
    )
    logger.info("archived {} suites as {} in {}", len(results), run_id, db_path)
    return run_id
