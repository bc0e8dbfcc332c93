"""Verification records, rank tables and their serializations."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Any

from .linalg import Rational, format_rational

SCHEMA = "sergeev-report/1"
TAGS = ("PAPER", "TRIVIAL", "DERIVED")
STATUSES = ("pass", "fail", "reported", "skipped")


def jsonable(value: Any) -> Any:
    """Rationals become "p/q" strings; containers are converted recursively."""
    if isinstance(value, Rational):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    return value


@dataclass
class Expected:
    value: Any
    tag: str
    citation: str

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"provenance tag must be one of {TAGS}")

    def to_json(self) -> dict:
        return {"value": jsonable(self.value), "provenance": self.tag, "citation": self.citation}


@dataclass
class VerificationReport:
    check: str
    params: dict
    computed: Any = None
    expected: Expected | None = None
    status: str = "pass"
    witness: Any = None
    elapsed_ms: float | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            raise ValueError("failing reports must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "reported")

    @property
    def asserted(self) -> bool:
        return self.status in ("pass", "fail")

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "check": self.check,
            "params": jsonable(self.params),
            "status": self.status,
            "computed": jsonable(self.computed),
            "expected": self.expected.to_json() if self.expected else None,
            "witness": jsonable(self.witness),
            "details": jsonable(self.details),
        }
        if timings:
            out["elapsed_ms"] = None if self.elapsed_ms is None else round(self.elapsed_ms, 3)
        return out

    def line(self) -> str:
        exp = "" if self.expected is None else f" expected={jsonable(self.expected.value)} [{self.expected.tag}]"
        return f"{self.status.upper():8s} {self.check} {jsonable(self.params)} computed={jsonable(self.computed)}{exp}"


def compare(check: str, params: dict, computed, expected: Expected, witness=None, **details) -> VerificationReport:
    """Assert computed == expected.value; failures record the inputs as witness if none is given."""
    ok = computed == expected.value
    return VerificationReport(
        check=check, params=params, computed=computed, expected=expected,
        status="pass" if ok else "fail",
        witness=None if ok else (witness if witness is not None else {"params": params, "computed": computed}),
        details=details,
    )


RANK_COLUMNS = ("n", "d", "sample", "quantity", "computed", "expected", "provenance", "status")


@dataclass
class RankRow:
    n: int
    d: int
    sample: str
    quantity: str
    computed: int | None
    expected: int | None
    provenance: str
    status: str

    def as_tuple(self):
        return tuple(getattr(self, c) for c in RANK_COLUMNS)


@dataclass
class RankTable:
    rows: list[RankRow] = field(default_factory=list)

    def add(self, *args, **kwargs) -> RankRow:
        row = RankRow(*args, **kwargs)
        self.rows.append(row)
        return row

    def to_json(self) -> list[dict]:
        return [dict(zip(RANK_COLUMNS, jsonable(list(r.as_tuple())))) for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(RANK_COLUMNS)
        for r in self.rows:
            w.writerow(["" if v is None else v for v in r.as_tuple()])
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = ["| " + " | ".join(RANK_COLUMNS) + " |", "|" + "---|" * len(RANK_COLUMNS)]
        for r in self.rows:
            lines.append("| " + " | ".join("" if v is None else str(v) for v in r.as_tuple()) + " |")
        return "\n".join(lines) + "\n"


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
