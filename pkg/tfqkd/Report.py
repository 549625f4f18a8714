"""Tabular output shared by every subcommand.

- :class:`OutputRow` -- ordered named columns
- :func:`format_value` -- the printed form of a cell (6 significant digits)
- :func:`render_csv` / :func:`parse_csv` -- CSV text and back
- :func:`render_json` -- the same rows as a JSON array of objects

Both renderings print the same rounded values; JSON spells non-finite
reals as ``null``.
"""
import csv
import io
import json
import math
import re
from dataclasses import dataclass
from typing import Optional, Sequence, Union

Cell = Union[bool, int, float, str]

_INT = re.compile(r"[+-]?\d+")


@dataclass(frozen=True)
class OutputRow:
    """One output line: column names with their values, in print order.

    Example::

        >>> from tfqkd.Report import OutputRow
        >>> row = OutputRow.of(x=1.65, n=2)
        >>> row.names
        ('x', 'n')
        >>> row["n"]
        2
    """

    columns: tuple[tuple[str, Cell], ...]

    @staticmethod
    def of(**cells: Cell) -> "OutputRow":
        return OutputRow(tuple(cells.items()))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.columns)

    @property
    def values(self) -> tuple[Cell, ...]:
        return tuple(value for _, value in self.columns)

    def __getitem__(self, name: str) -> Cell:
        for key, value in self.columns:
            if key == name:
                return value
        raise KeyError(name)


def format_value(value: Cell) -> str:
    """Return the printed form of *value*.

    Reals get 6 significant digits with trailing zeros kept; ``nan`` and
    ``inf`` are spelled out; booleans print lower-case.

    Example::

        >>> from tfqkd.Report import format_value
        >>> format_value(0.035485), format_value(7), format_value(True)
        ('0.0354850', '7', 'true')
        >>> format_value(float("-inf"))
        '-inf'
    """
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:#.6g}"
    return str(value)


def parse_value(text: str) -> Cell:
    """Inverse of :func:`format_value` on its image."""
    if text in ("true", "false"):
        return text == "true"
    if _INT.fullmatch(text):
        return int(text)
    try:
        return float(text)
    except ValueError:
        return text


def render_csv(rows: Sequence[OutputRow], header: Optional[Sequence[str]] = None) -> str:
    """Render *rows* as CSV with a header line.

    Args:
        rows: Rows sharing one column set.
        header: Column names, needed only when *rows* is empty.

    Raises:
        ValueError: If the rows disagree on their columns or no header is known.
    """
    names = tuple(header) if header is not None else rows[0].names if rows else None
    if names is None:
        raise ValueError("render_csv: no rows and no header")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for row in rows:
        if row.names != names:
            raise ValueError(f"render_csv: row columns {row.names} differ from {names}")
        writer.writerow(format_value(v) for v in row.values)
    return buf.getvalue()


def parse_csv(text: str) -> list[OutputRow]:
    """Read back the output of :func:`render_csv`."""
    reader = csv.reader(io.StringIO(text))
    try:
        names = next(reader)
    except StopIteration:
        return []
    return [OutputRow(tuple(zip(names, map(parse_value, cells)))) for cells in reader]


def _json_cell(value: Cell) -> Cell:
    if isinstance(value, float):
        if not math.isfinite(value):
            return None  # type: ignore[return-value]
        return float(format_value(value))
    return value


def render_json(rows: Sequence[OutputRow]) -> str:
    """Render *rows* as a JSON array of objects, keys in column order."""
    payload = [{k: _json_cell(v) for k, v in row.columns} for row in rows]
    return json.dumps(payload, indent=2) + "\n"
