# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Report and data file emission."""

from __future__ import annotations

import csv
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from ..utils.serialization import ReportEncoder

logger = logging.getLogger(__name__)

REPORT_INDENT: int = 2


def dumps_report(document: Any) -> str:
    """Serialize a report with pinned float formatting and a trailing newline."""
    return ReportEncoder.dumps(document, indent=REPORT_INDENT) + "\n"


def write_report(document: Any, path: str | Path) -> None:
    """Write a JSON report."""
    Path(path).write_text(dumps_report(document), encoding="utf8")
    logger.debug("Wrote report to %s", path)


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write a CSV file with a header row."""
    with open(path, "w", encoding="utf8", newline="") as fp:  # pylint: disable=invalid-name
        writer = csv.writer(fp)
        writer.writerow(header)
        writer.writerows(rows)
    logger.debug("Wrote CSV data to %s", path)


def write_svg(path: str | Path, document: str) -> None:
    """Write an SVG document."""
    Path(path).write_text(document, encoding="utf8")
    logger.debug("Wrote SVG figure to %s", path)
