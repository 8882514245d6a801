# Copyright (c) 2023 Alex Butler
#
# Permission is hereby granted, free of charge, to any person obtaining a copy of this
# software and associated documentation files (the "Software"), to deal in the Software
# without restriction, including without limitation the rights to use, copy, modify, merge,
# publish, distribute, sublicense, and/or sell copies of the Software, and to permit persons
# to whom the Software is furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all copies or
# substantial portions of the Software.
"""Report serialization: JSON through orjson, flat CSV, or one text line per record."""
import csv
import io
from typing import Any, Dict, Iterable, List

import orjson

from edge_regularity.workbench import CheckStatus, ReportRecord

SCALAR_COLUMNS = [
    "alpha",
    "omega",
    "chi",
    "nu",
    "min_maximal_matching",
    "indmatch",
    "cycle_matching_bound",
]


def _flatten(record: ReportRecord, fields: List[int], record_timings: bool) -> Dict[str, Any]:
    report = record.invariants
    row: Dict[str, Any] = {"graph_id": record.graph_id, "graph6": record.graph6}
    for name in SCALAR_COLUMNS:
        row[name] = getattr(report, name)
    for p in fields:
        row[f"reg_gf{p}"] = report.regularity_over(p)
    row["cochord"] = report.cochord
    row["cochord_method"] = report.cochord_method
    row["status"] = record.status.value
    row["failed_checks"] = ";".join(
        c.name for c in record.checks if c.status is not CheckStatus.PASS
    )
    row["runtime_ms"] = record.runtime_ms if record_timings else 0
    return row


def emit_report(
    records: Iterable[ReportRecord], fmt: str = "json", record_timings: bool = False
) -> bytes:
    """Serialize records; identical records always give identical bytes.

    Non-empty output ends with exactly one newline, so it can be written as is.
    """
    records = list(records)
    if fmt == "json":
        payload = [record.to_dict(record_timings) for record in records]
        return orjson.dumps(payload, option=orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE)
    if fmt == "csv":
        fields = sorted({r.field.p for record in records for r in record.invariants.regularity})
        rows = [_flatten(record, fields, record_timings) for record in records]
        header = list(rows[0]) if rows else []
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=header, lineterminator="\n")
        if header:
            writer.writeheader()
            writer.writerows(rows)
        return buffer.getvalue().encode()
    if fmt == "text":
        lines = []
        for record in records:
            fields = [r.field.p for r in record.invariants.regularity]
            row = _flatten(record, fields, record_timings)
            scalars = " ".join(
                f"{k}={v}"
                for k, v in row.items()
                if v not in (None, "") and k not in ("graph_id", "graph6", "status")
            )
            lines.append(f"{record.graph_id}\t{record.graph6}\t{record.status.value}\t{scalars}")
        return ("\n".join(lines) + "\n").encode() if lines else b""
    raise ValueError(f"Unknown output format: {fmt}")
