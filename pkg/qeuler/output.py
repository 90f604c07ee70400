"""Result records and their json, csv and plain renderings.

A value record carries the fields ``object, params, value_re, value_im,
error_bound, path``. p-adic values have no complex embedding; their records
leave value_re/value_im empty and carry the serialized ring element under
``padic`` instead.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence

from .cyclotomic import CycloRational
from .padic import CycloPadic, PadicInt
from .qcore import as_complex

RECORD_FIELDS = ("object", "params", "value_re", "value_im", "error_bound", "path")
ERROR_FIELDS = ("type", "message")


def format_param(value: Any) -> str:
    if isinstance(value, complex):
        if value.imag == 0:
            return repr(value.real)
        return f"{value.real!r},{value.imag!r}"
    return str(value)


@dataclass
class ResultRecord:
    object: str
    params: Dict[str, str]
    value_re: Optional[float]
    value_im: Optional[float]
    error_bound: Optional[float] = None
    path: str = ""
    extra: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def of(
        cls,
        object_name: str,
        params: Mapping[str, Any],
        value: Any,
        error_bound: Optional[float] = None,
        path: str = "",
        **extra: Any,
    ) -> "ResultRecord":
        text_params = {key: format_param(item) for key, item in params.items() if item is not None}
        if isinstance(value, (CycloPadic, PadicInt)):
            padic = value.serialize() if isinstance(value, CycloPadic) else str(value)
            return cls(object_name, text_params, None, None, error_bound, path, {"padic": padic, **extra})
        number = as_complex(value)
        record = cls(object_name, text_params, number.real, number.imag, error_bound, path, dict(extra))
        if isinstance(value, CycloRational) and value.is_constant():
            record.extra.setdefault("exact", str(value.to_fraction()))
        return record

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "object": self.object,
            "params": dict(self.params),
            "value_re": self.value_re,
            "value_im": self.value_im,
            "error_bound": self.error_bound,
            "path": self.path,
        }
        data.update(self.extra)
        return data

    def complex(self) -> Optional[complex]:
        if self.value_re is None:
            return None
        return complex(self.value_re, self.value_im or 0.0)


def error_record(exc: BaseException) -> Dict[str, Dict[str, str]]:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def _params_text(params: Mapping[str, str]) -> str:
    return " ".join(f"{key}={params[key]}" for key in sorted(params))


def _number_text(re: Optional[float], im: Optional[float]) -> str:
    if re is None:
        return ""
    if not im:
        return repr(re)
    return f"{re!r}{im:+}j"


def _csv_cell(value: Any) -> Any:
    if isinstance(value, dict):
        return _params_text(value)
    return "" if value is None else value


def _csv(rows: Sequence[Mapping[str, Any]], fieldnames: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fieldnames), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({name: _csv_cell(row.get(name)) for name in fieldnames})
    return buffer.getvalue()


def _record_fieldnames(records: Sequence[ResultRecord]) -> List[str]:
    extras = sorted({key for record in records for key in record.extra})
    return list(RECORD_FIELDS) + extras


def render_records(records: Sequence[ResultRecord], fmt: str) -> str:
    """Render value records; an empty sequence still produces a header (csv) or ``[]`` (json)."""
    if fmt == "json":
        return json.dumps([record.to_dict() for record in records], sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _csv([record.to_dict() for record in records], _record_fieldnames(records))
    lines = []
    for record in records:
        head = record.object if not record.path else f"{record.object} [{record.path}]"
        text = f"{head} {_params_text(record.params)}: {_number_text(record.value_re, record.value_im)}"
        for key in sorted(record.extra):
            text += f" {key}={record.extra[key]}"
        if record.error_bound:
            text += f" (error <= {record.error_bound:.3g})"
        lines.append(text.rstrip())
    return "".join(line + "\n" for line in lines)


def render_checks(rows: Sequence[Mapping[str, Any]], fmt: str) -> str:
    fieldnames = ("suite", "check", "passed", "max_error", "cases", "detail")
    if fmt == "json":
        return json.dumps(list(rows), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _csv(rows, fieldnames)
    lines = []
    for row in rows:
        status = "PASS" if row["passed"] else "FAIL"
        line = f"{status} {row['suite']}: {row['check']} (max error {row['max_error']:.3g}, {row['cases']} cases)"
        if row["detail"]:
            line += f" -- {row['detail']}"
        lines.append(line)
    return "".join(line + "\n" for line in lines)


def render_error(exc: BaseException, fmt: str) -> str:
    record = error_record(exc)
    if fmt == "json":
        return json.dumps(record, sort_keys=True) + "\n"
    if fmt == "csv":
        return _csv([record["error"]], ERROR_FIELDS)
    return f"error: {record['error']['type']}: {record['error']['message']}\n"
