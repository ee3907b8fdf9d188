"""Findings files: the ``csv`` report format, one finding per row."""
from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Iterable, List, Union

from pydantic import ValidationError

from ptvalidity.errors import SystemFileError
from ptvalidity.explorer import CSV_COLUMNS, Finding, FindingRecord, ReportFormat, report

logger = logging.getLogger(__name__)


def write_findings(
    path: Union[str, Path],
    findings: Iterable[Union[Finding, FindingRecord]],
    format: ReportFormat = "csv",
) -> None:
    Path(path).write_text(report(findings, format=format), encoding="utf-8")
    logger.info(f"Wrote findings to {path}")


def read_findings(path: Union[str, Path]) -> List[FindingRecord]:
    """
    Read a findings file written in the ``csv`` format.

    Raises:
        SystemFileError: If the header or a row is malformed
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise SystemFileError(f"{path}: expected columns {', '.join(CSV_COLUMNS)}")
        records: List[FindingRecord] = []
        for row in reader:
            fields = {k.replace("-", "_"): v for k, v in row.items()}
            try:
                records.append(FindingRecord(**fields))
            except ValidationError as e:
                raise SystemFileError(f"{path}: bad row {reader.line_num}: {e}") from e
    logger.info(f"Read {len(records)} finding(s) from {path}")
    return records
