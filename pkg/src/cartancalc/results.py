"""Result records and their deterministic table / JSON rendering.

JSON output is machine-readable with rational coefficients as "p/q"
strings (never decimals) and a versioned schema; table output is aligned
human-readable text.  Both are byte-deterministic for fixed inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

SCHEMA_VERSION = 1


def frac_str(c) -> str:
    return str(Fraction(c))


@dataclass
class CohomologyRow:
    degree: int
    dimension: int
    basis: Tuple[str, ...] = ()

    def table_line(self, name: str = "H") -> str:
        if self.dimension == 0:
            return f"{name}^{self.degree}: dim 0"
        basis = f", basis [{', '.join(self.basis)}]" if self.basis else ""
        return f"{name}^{self.degree}: dim {self.dimension}{basis}"

    def json_obj(self, homological=False) -> dict:
        key = "homological_degree" if homological else "degree"
        return {key: self.degree, "dimension": self.dimension, "basis": list(self.basis)}


@dataclass
class CohomologyTable:
    title: str
    rows: List[CohomologyRow]
    name: str = "H"
    homological: bool = False

    def table_lines(self) -> List[str]:
        out = [self.title]
        mark = "_" if self.homological else "^"
        for r in self.rows:
            line = r.table_line(self.name).replace(f"{self.name}^", f"{self.name}{mark}")
            out.append("  " + line)
        return out

    def json_obj(self) -> dict:
        return {
            "type": "cohomology_table",
            "title": self.title,
            "name": self.name,
            "rows": [r.json_obj(self.homological) for r in self.rows],
        }


@dataclass
class CheckRow:
    name: str
    ok: bool
    detail: str = ""

    def table_line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        detail = f"  ({self.detail})" if self.detail else ""
        return f"{status}  {self.name}{detail}"

    def json_obj(self) -> dict:
        obj = {"name": self.name, "ok": self.ok}
        if self.detail:
            obj["detail"] = self.detail
        return obj


@dataclass
class CheckReport:
    title: str
    rows: List[CheckRow]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def table_lines(self) -> List[str]:
        out = [self.title]
        out += ["  " + r.table_line() for r in self.rows]
        passed = sum(r.ok for r in self.rows)
        out.append(f"  -- {passed}/{len(self.rows)} checks passed")
        return out

    def json_obj(self) -> dict:
        return {
            "type": "check_report",
            "title": self.title,
            "ok": self.ok,
            "rows": [r.json_obj() for r in self.rows],
        }


@dataclass
class MatrixReport:
    title: str
    row_labels: Tuple[str, ...]
    col_labels: Tuple[str, ...]
    entries: Tuple[Tuple[Fraction, ...], ...]
    notes: Tuple[str, ...] = ()

    def table_lines(self) -> List[str]:
        out = [self.title]
        cells = [[frac_str(x) for x in row] for row in self.entries]
        if not cells or not cells[0]:
            out.append(
                f"  ({len(self.row_labels)} x {len(self.col_labels)} matrix)"
            )
        else:
            width = max(len(s) for row in cells for s in row)
            for lab, row in zip(self.row_labels, cells):
                out.append("  [" + "  ".join(s.rjust(width) for s in row) + f"]  {lab}")
        out += ["  " + n for n in self.notes]
        return out

    def json_obj(self) -> dict:
        return {
            "type": "matrix",
            "title": self.title,
            "row_labels": list(self.row_labels),
            "col_labels": list(self.col_labels),
            "entries": [[frac_str(x) for x in row] for row in self.entries],
            "notes": list(self.notes),
        }


@dataclass
class Report:
    """Top-level result envelope for one CLI request."""

    command: str
    input_name: str
    presentation_hash: str
    options: dict = field(default_factory=dict)
    seed: Optional[int] = None
    records: List[object] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(getattr(r, "ok", True) for r in self.records)

    def to_json(self) -> str:
        obj = {
            "schema": SCHEMA_VERSION,
            "request": {
                "command": self.command,
                "input": self.input_name,
                "options": {k: self.options[k] for k in sorted(self.options)},
            },
            "presentation_hash": self.presentation_hash,
            "seed": self.seed,
            "ok": self.ok,
            "results": [r.json_obj() for r in self.records],
        }
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"

    def to_table(self) -> str:
        lines = [f"== {self.command} {self.input_name}  (presentation {self.presentation_hash})"]
        if self.seed is not None:
            lines.append(f"   seed: {self.seed}")
        for r in self.records:
            lines.append("")
            lines += r.table_lines()
        return "\n".join(lines) + "\n"


def serialize_result(report: Report, format: str = "table") -> str:
    """Deterministic rendering of a result record ('table' or 'json')."""
    if format == "json":
        return report.to_json()
    if format == "table":
        return report.to_table()
    raise ValueError(f"unknown format {format!r}")
