"""Shared helpers for the line-oriented text formats.

Every on-disk format in this package (records, manifests, feature CSVs,
model files) is UTF-8 text where blank lines and lines starting with '#'
are ignored, and floats are written with 17 significant digits so they
re-parse to the same IEEE-754 double.
"""

from __future__ import annotations

from typing import Iterator


def format_float(x: float) -> str:
    """Render a double with enough digits to round-trip bit-exactly."""
    return f"{x:.17g}"


def iter_data_lines(text: str) -> Iterator[tuple[int, str]]:
    """Yield (1-based line number, stripped content) for non-comment lines."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield line_no, line
