"""Tabular experiment records with deterministic CSV and JSON output."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

TOL_ENV = "DIFFLAB_TOL"
DEFAULT_ASSERT_TOL = 1e-8


def resolve_tol(default: float = DEFAULT_ASSERT_TOL) -> float:
    """``DIFFLAB_TOL`` if set, else ``default``."""
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw.strip() == "":
        return default
    value = float(raw)
    if not value > 0.0:
        raise ValueError(f"{TOL_ENV} must be positive, got {raw!r}")
    return value


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class ExperimentReport:
    """One experiment run: parameters, a fixed column schema, rows and per-row verdicts."""

    experiment: str
    params: dict
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    verdicts: tuple[bool, ...]
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.rows) != len(self.verdicts):
            raise ValueError("one verdict per row")
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(f"row {row!r} does not match columns {self.columns!r}")

    @property
    def passed(self) -> bool:
        return all(self.verdicts)

    def records(self) -> list[dict]:
        return [dict(zip(self.columns, row), **{"pass": ok}) for row, ok in zip(self.rows, self.verdicts)]

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(self.columns) + ["pass"])
        for row, ok in zip(self.rows, self.verdicts):
            writer.writerow([_cell(v) for v in row] + [_cell(ok)])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {"experiment": self.experiment, "params": self.params, "rows": self.records(), "pass": self.passed}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"

    def render(self, fmt: str = "csv") -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")

    def write(self, path, fmt: str = "csv") -> Path:
        path = Path(path)
        path.write_text(self.render(fmt))
        return path
