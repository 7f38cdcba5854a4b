"""Minimal standalone SVG line plots built from CSV text."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 420
MARGIN = 60
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf")


def parse_csv(text: str) -> tuple[list[str], list[list[float]]]:
    """Header and numeric rows of a CSV with ``#`` comment lines."""
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split(",")
    rows = [[float(v) for v in ln.split(",")] for ln in lines[1:]]
    return header, rows


def _span(values: list[float]) -> tuple[float, float]:
    finite = [v for v in values if math.isfinite(v)]
    if not finite:
        return 0.0, 1.0
    lo, hi = min(finite), max(finite)
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def line_plot(text: str, y_columns: list[str], title: str = "") -> str:
    """Plot ``y_columns`` against the first CSV column.

    Non-finite points break a polyline into segments. The output depends only
    on the CSV content, so equal data gives byte-identical SVG.
    """
    header, rows = parse_csv(text)
    xs = [r[0] for r in rows]
    cols = {name: [r[header.index(name)] for r in rows] for name in y_columns}
    x_lo, x_hi = _span(xs)
    y_lo, y_hi = _span([v for c in cols.values() for v in c] + [0.0])
    plot_w, plot_h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

    def px(x):
        return MARGIN + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
    ]
    if y_lo < 0 < y_hi:
        out.append(
            f'<line x1="{MARGIN}" y1="{py(0):.3f}" x2="{WIDTH - MARGIN}" y2="{py(0):.3f}" stroke="#999" stroke-dasharray="4 3"/>'
        )
    for label, x, anchor in ((f"{x_lo:.4g}", MARGIN, "start"), (f"{x_hi:.4g}", WIDTH - MARGIN, "end")):
        out.append(f'<text x="{x}" y="{HEIGHT - MARGIN + 18}" font-size="12" text-anchor="{anchor}">{label}</text>')
    out.append(f'<text x="{MARGIN - 6}" y="{HEIGHT - MARGIN}" font-size="12" text-anchor="end">{y_lo:.4g}</text>')
    out.append(f'<text x="{MARGIN - 6}" y="{MARGIN + 4}" font-size="12" text-anchor="end">{y_hi:.4g}</text>')
    out.append(
        f'<text x="{WIDTH / 2:.0f}" y="{HEIGHT - 15}" font-size="13" text-anchor="middle">{escape(header[0])}</text>'
    )
    if title:
        out.append(f'<text x="{WIDTH / 2:.0f}" y="28" font-size="15" text-anchor="middle">{escape(title)}</text>')

    for k, (name, ys) in enumerate(cols.items()):
        color = COLORS[k % len(COLORS)]
        segment: list[str] = []
        segments = [segment]
        for x, y in zip(xs, ys):
            if math.isfinite(x) and math.isfinite(y):
                segment.append(f"{px(x):.3f},{py(y):.3f}")
            elif segment:
                segment = []
                segments.append(segment)
        for seg in segments:
            if seg:
                out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(seg)}"/>')
        out.append(
            f'<text x="{WIDTH - MARGIN + 4}" y="{MARGIN + 16 * k}" font-size="12" fill="{color}">{escape(name)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
