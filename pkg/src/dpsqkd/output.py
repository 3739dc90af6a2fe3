"""Serialization of results: JSON and CSV with a stable numeric format.

Numeric fields are written with 12 significant digits; CSV uses a comma
delimiter, '.' decimal separator, a mandatory header row and LF line
endings. Output is deterministic for deterministic inputs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Sequence

SIGNIFICANT_DIGITS = 12


def round_sig(value: float) -> float:
    """Round a float to the stable 12-significant-digit representation."""
    return float(f"{value:.{SIGNIFICANT_DIGITS}g}")


def format_value(value: Any) -> str:
    """CSV cell formatting: floats at 12 significant digits, rest as str."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{SIGNIFICANT_DIGITS}g}"
    return str(value)


def _round_tree(obj: Any) -> Any:
    if isinstance(obj, float):
        return round_sig(obj)
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    return obj


def dumps_json(payload: dict) -> str:
    """Stable JSON text: insertion-ordered keys, rounded floats, LF endings."""
    return json.dumps(_round_tree(payload), indent=2) + "\n"


def dumps_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def record_to_csv(record: dict) -> str:
    """Single-record CSV: one header row plus one data row."""
    return dumps_csv(list(record.keys()), [list(record.values())])


def write_output(text: str, out: str | Path | None) -> None:
    """Write to the given path, or stdout when no path is given."""
    if out is None:
        print(text, end="")
    else:
        # newline="" keeps the LF endings untranslated on every platform
        Path(out).write_text(text, newline="")
