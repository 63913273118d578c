"""Result sets: the unit every query evaluator returns and tests compare."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from . import values


@dataclass
class ResultSet:
    headers: list[str]
    rows: list[tuple] = field(default_factory=list)

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.headers):
                raise ValueError("row arity does not match headers")


def to_text(rs: ResultSet) -> str:
    """Pipe-separated rendering with a row-count footer (the CLI default)."""
    lines = [" | ".join(rs.headers)]
    for row in rs.rows:
        lines.append(" | ".join(values.display(v) for v in row))
    n = len(rs.rows)
    lines.append(f"({n} row)" if n == 1 else f"({n} rows)")
    return "\n".join(lines) + "\n"


def to_csv(rs: ResultSet) -> str:
    buf = io.StringIO()
    writer = csv.writer(
        buf, delimiter=",", quotechar='"', doublequote=True, lineterminator="\n"
    )
    writer.writerow(rs.headers)
    for row in rs.rows:
        writer.writerow([values.display(v) for v in row])
    return buf.getvalue()
