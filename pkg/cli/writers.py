"""Deterministic CSV, SVG and text emission."""

import csv
from pathlib import Path
from typing import Any, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

from app.exceptions import OutputError
from app.logging_config import get_logger

logger = get_logger(__name__)

Series = Tuple[str, np.ndarray]

SVG_WIDTH = 800
SVG_HEIGHT = 500
SVG_MARGIN = 50
SVG_COLORS = (
    "#d62728",
    "#2ca02c",
    "#1f77b4",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#e377c2",
)


def format_value(value: Any) -> str:
    """Shortest round-trip text for floats, str() for everything else."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, complex):
        return repr(value)
    return str(value)


def header_lines(header: Mapping[str, Any]) -> List[str]:
    return [f"# {key} = {format_value(value)}" for key, value in header.items()]


def write_csv(
    path: Path,
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
    header: Mapping[str, Any],
) -> Path:
    """
    Write a CSV file: '#' comment block, column-name row, data rows.

    Raises:
        OutputError: If the file cannot be written
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            for line in header_lines(header):
                handle.write(line + "\n")
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_value(v) for v in row])
    except OSError as e:
        logger.error(f"Failed to write {path}: {e}")
        raise OutputError(f"Failed to write CSV {path}: {e}", path)
    logger.info(f"Wrote {path}")
    return path


def write_series_csv(
    path: Path,
    x: np.ndarray,
    series: Sequence[Series],
    header: Mapping[str, Any],
) -> Path:
    """CSV with column x followed by one column per series."""
    columns = ["x"] + [name for name, _ in series]
    arrays = [x] + [values for _, values in series]
    rows = zip(*(array.tolist() for array in arrays))
    return write_csv(path, columns, rows, header)


def _polyline(
    x: np.ndarray,
    y: np.ndarray,
    bounds: Tuple[float, float, float, float],
    color: str,
) -> str:
    x_lo, x_hi, y_lo, y_hi = bounds
    width = SVG_WIDTH - 2 * SVG_MARGIN
    height = SVG_HEIGHT - 2 * SVG_MARGIN
    px = SVG_MARGIN + (x - x_lo) / (x_hi - x_lo) * width
    py = SVG_HEIGHT - SVG_MARGIN - (y - y_lo) / (y_hi - y_lo) * height
    points = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
    return (
        f'<polyline fill="none" stroke="{color}" stroke-width="1" '
        f'points="{points}"/>'
    )


def write_svg(
    path: Path, x: np.ndarray, series: Sequence[Series], title: str
) -> Path:
    """
    Minimal line plot: axes box, zero line, one polyline per series.

    Raises:
        OutputError: If the file cannot be written
    """
    path = Path(path)
    x_lo, x_hi = float(x[0]), float(x[-1])
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    all_y = np.concatenate([values for _, values in series])
    y_lo, y_hi = float(all_y.min()), float(all_y.max())
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    bounds = (x_lo, x_hi, y_lo, y_hi)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}">',
        f'<rect x="{SVG_MARGIN}" y="{SVG_MARGIN}" '
        f'width="{SVG_WIDTH - 2 * SVG_MARGIN}" '
        f'height="{SVG_HEIGHT - 2 * SVG_MARGIN}" fill="none" stroke="black"/>',
        f'<text x="{SVG_MARGIN}" y="{SVG_MARGIN - 15}" '
        f'font-size="14">{title}</text>',
        f'<text x="{SVG_MARGIN}" y="{SVG_HEIGHT - 20}" font-size="11">'
        f"x: {x_lo:g} .. {x_hi:g}   y: {y_lo:.3g} .. {y_hi:.3g}</text>",
    ]
    if y_lo < 0 < y_hi:
        zero = np.array([0.0, 0.0])
        parts.append(
            _polyline(np.array([x_lo, x_hi]), zero, bounds, "#999999")
        )
    for i, (name, values) in enumerate(series):
        color = SVG_COLORS[i % len(SVG_COLORS)]
        parts.append(_polyline(x, values, bounds, color))
        parts.append(
            f'<text x="{SVG_WIDTH - SVG_MARGIN - 150}" '
            f'y="{SVG_MARGIN + 15 + 14 * i}" font-size="11" '
            f'fill="{color}">{name}</text>'
        )
    parts.append("</svg>")

    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(parts) + "\n", encoding="utf-8")
    except OSError as e:
        logger.error(f"Failed to write {path}: {e}")
        raise OutputError(f"Failed to write SVG {path}: {e}", path)
    logger.info(f"Wrote {path}")
    return path


def write_text(path: Path, lines: Sequence[str]) -> Path:
    """
    Write a plain-text report.

    Raises:
        OutputError: If the file cannot be written
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as e:
        logger.error(f"Failed to write {path}: {e}")
        raise OutputError(f"Failed to write report {path}: {e}", path)
    logger.info(f"Wrote {path}")
    return path


def table_lines(
    columns: Sequence[str], rows: Iterable[Sequence[Any]]
) -> List[str]:
    """Fixed-width text table."""
    text_rows = [[format_value(v) for v in row] for row in rows]
    widths = [
        max([len(c)] + [len(r[i]) for r in text_rows])
        for i, c in enumerate(columns)
    ]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in text_rows:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)))
    return lines


__all__ = [
    "format_value",
    "header_lines",
    "write_csv",
    "write_series_csv",
    "write_svg",
    "write_text",
    "table_lines",
]
