"""Labeled (x, series...) tables backing every figure, with CSV and SVG output.

CSV layout: first column is the x axis (named by ``x_label``), then one
column per series. Numbers are written with ``repr`` so that reading a file
back reproduces the table exactly; line endings are always LF.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Sequence, TextIO
from xml.sax.saxutils import escape

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class SweepTable:
    x_label: str
    x: tuple[float, ...]
    series: tuple[tuple[str, tuple[float, ...]], ...]

    def __post_init__(self):
        x = tuple(float(v) for v in self.x)
        if not x or any(b <= a for a, b in zip(x, x[1:])):
            raise DomainError("sweep x axis must be non-empty and strictly increasing")
        series = []
        for label, ys in self.series:
            ys = tuple(float(v) for v in ys)
            if len(ys) != len(x):
                raise DomainError(f"series {label!r} has {len(ys)} values for {len(x)} x points")
            series.append((str(label), ys))
        labels = [s[0] for s in series]
        if len(set(labels)) != len(labels) or self.x_label in labels:
            raise DomainError("column labels must be unique")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "series", tuple(series))

    @classmethod
    def from_columns(cls, x_label: str, x, columns: dict[str, Sequence[float]]) -> "SweepTable":
        return cls(x_label, tuple(np.asarray(x, dtype=float)),
                   tuple((k, tuple(np.asarray(v, dtype=float))) for k, v in columns.items()))

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.series]

    def column(self, label: str) -> np.ndarray:
        for name, ys in self.series:
            if name == label:
                return np.array(ys)
        raise KeyError(label)

    def write_csv(self, stream: TextIO) -> None:
        stream.write(",".join([self.x_label, *self.labels]) + "\n")
        for i, xv in enumerate(self.x):
            stream.write(",".join(repr(v) for v in (xv, *(ys[i] for _, ys in self.series))) + "\n")

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    @classmethod
    def read_csv(cls, stream: TextIO) -> "SweepTable":
        rows = list(csv.reader(stream))
        if not rows:
            raise DomainError("empty sweep CSV")
        header, body = rows[0], [r for r in rows[1:] if r]
        try:
            cols = list(zip(*[[float(v) for v in r] for r in body]))
        except ValueError as exc:
            raise DomainError(f"malformed sweep CSV: {exc}") from None
        if any(len(r) != len(header) for r in body):
            raise DomainError("ragged sweep CSV")
        if not cols:
            raise DomainError("sweep CSV has no data rows")
        return cls(header[0], cols[0], tuple(zip(header[1:], cols[1:])))


# ---------------------------------------------------------------------------
# SVG

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _ticks(lo: float, hi: float, log: bool) -> list[float]:
    if log:
        return [10.0 ** e for e in range(math.floor(math.log10(lo)), math.ceil(math.log10(hi)) + 1)
                if lo * (1 - 1e-9) <= 10.0 ** e <= hi * (1 + 1e-9)]
    span = hi - lo
    step = 10.0 ** math.floor(math.log10(span)) if span > 0 else 1.0
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= 8:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    return [first + i * step for i in range(int((hi - first) / step + 1e-9) + 1)]


def _fmt(v: float) -> str:
    return f"{v:g}"


def render_svg(table: SweepTable, *, title: str = "", y_label: str = "",
               log_x: bool = True, log_y: bool = False,
               width: int = 720, height: int = 460) -> str:
    """Self-contained SVG line chart of every series against x.

    Non-positive values are dropped from log axes.
    """
    left, right, top, bottom = 70, 190, 40, 55
    pw, ph = width - left - right, height - top - bottom
    xs = np.array(table.x)
    ys_all = np.concatenate([np.array(ys) for _, ys in table.series]) if table.series else np.array([1.0])
    ys_all = ys_all[np.isfinite(ys_all)]
    if log_y:
        ys_all = ys_all[ys_all > 0]
    if log_x:
        xs_ok = xs[xs > 0]
    else:
        xs_ok = xs
    x_lo, x_hi = float(xs_ok.min()), float(xs_ok.max())
    y_lo, y_hi = (float(ys_all.min()), float(ys_all.max())) if ys_all.size else (0.0, 1.0)
    if y_hi == y_lo:
        y_lo, y_hi = (y_lo / 2, y_hi * 2) if log_y else (y_lo - 1, y_hi + 1)
    if x_hi == x_lo:
        x_lo, x_hi = (x_lo / 2, x_hi * 2) if log_x else (x_lo - 1, x_hi + 1)
    tx = (lambda v: math.log10(v)) if log_x else (lambda v: v)
    ty = (lambda v: math.log10(v)) if log_y else (lambda v: v)

    def px(v):
        return left + (tx(v) - tx(x_lo)) / (tx(x_hi) - tx(x_lo)) * pw

    def py(v):
        return top + ph - (ty(v) - ty(y_lo)) / (ty(y_hi) - ty(y_lo)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x_lo, x_hi, log_x):
        x = px(t)
        out.append(f'<line x1="{x:.2f}" y1="{top}" x2="{x:.2f}" y2="{top + ph}" stroke="#ddd"/>')
        out.append(f'<text x="{x:.2f}" y="{top + ph + 16}" text-anchor="middle">{_fmt(t)}</text>')
    for t in _ticks(y_lo, y_hi, log_y):
        y = py(t)
        out.append(f'<line x1="{left}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" stroke="#ddd"/>')
        out.append(f'<text x="{left - 6}" y="{y + 4:.2f}" text-anchor="end">{_fmt(t)}</text>')
    for i, (label, ys) in enumerate(table.series):
        colour = _PALETTE[i % len(_PALETTE)]
        pts = [(px(x), py(y)) for x, y in zip(table.x, ys)
               if math.isfinite(y) and (not log_y or y > 0) and (not log_x or x > 0)]
        if pts:
            path = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
            out.append(f'<polyline points="{path}" fill="none" stroke="{colour}" stroke-width="1.5"/>')
        ly = top + 14 + 16 * i
        out.append(f'<line x1="{left + pw + 10}" y1="{ly - 4}" x2="{left + pw + 30}" y2="{ly - 4}" '
                   f'stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw + 35}" y="{ly}">{escape(label)}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 12}" text-anchor="middle">'
               f'{escape(table.x_label)}</text>')
    out.append(f'<text transform="translate(16 {top + ph / 2:.1f}) rotate(-90)" '
               f'text-anchor="middle">{escape(y_label)}</text>')
    if title:
        out.append(f'<text x="{left + pw / 2:.1f}" y="22" text-anchor="middle" '
                   f'font-size="14">{escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
