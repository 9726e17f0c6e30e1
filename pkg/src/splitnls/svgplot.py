"""Minimal deterministic SVG line plots (no external renderer).

Output is plain text built from the data alone, so identical inputs yield
byte-identical files.  Good enough for log-log error decay curves and
modulus snapshots; not a general plotting library.
"""

from __future__ import annotations

import math

__all__ = ["line_plot"]

_W, _H = 640, 440
_ML, _MR, _MT, _MB = 70, 20, 36, 56
_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _ticks(lo: float, hi: float, log: bool) -> list[float]:
    if log:
        lo_e = math.floor(math.log10(lo))
        hi_e = math.ceil(math.log10(hi))
        return [10.0 ** e for e in range(lo_e, hi_e + 1)]
    if hi == lo:
        return [lo]
    step = 10.0 ** math.floor(math.log10((hi - lo) / 4.0))
    for mult in (1, 2, 5, 10):
        if (hi - lo) / (step * mult) <= 6:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    out = []
    v = first
    while v <= hi + 1e-12 * abs(hi):
        out.append(v)
        v += step
    return out or [lo]


def line_plot(series, title: str, xlabel: str, ylabel: str,
              logx: bool = False, logy: bool = False) -> str:
    """Render ``series = [(label, xs, ys), ...]`` as an SVG document string.

    Points with non-positive coordinates are dropped on log axes.
    """
    pts = []
    for _, xs, ys in series:
        for x, y in zip(xs, ys):
            if (logx and x <= 0) or (logy and y <= 0):
                continue
            pts.append((float(x), float(y)))
    if not pts:
        pts = [(1.0, 1.0)]
    xs_all = [p[0] for p in pts]
    ys_all = [p[1] for p in pts]
    xlo, xhi = min(xs_all), max(xs_all)
    ylo, yhi = min(ys_all), max(ys_all)

    def pad(lo, hi, log):
        if log:
            lo, hi = math.log10(lo), math.log10(hi)
        if hi == lo:
            lo, hi = lo - 0.5, hi + 0.5
        margin = 0.06 * (hi - lo)
        return lo - margin, hi + margin

    pxlo, pxhi = pad(xlo, xhi, logx)
    pylo, pyhi = pad(ylo, yhi, logy)

    def sx(x):
        v = math.log10(x) if logx else x
        return _ML + (v - pxlo) / (pxhi - pxlo) * (_W - _ML - _MR)

    def sy(y):
        v = math.log10(y) if logy else y
        return _H - _MB - (v - pylo) / (pyhi - pylo) * (_H - _MT - _MB)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W // 2}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
    ]
    # axes box
    out.append(f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" '
               f'height="{_H - _MT - _MB}" fill="none" stroke="#333"/>')
    for tx in _ticks(xlo, xhi, logx):
        if not (min(xlo, xhi) <= tx <= max(xlo, xhi)) and logx is False:
            continue
        px = sx(tx)
        if px < _ML - 1 or px > _W - _MR + 1:
            continue
        out.append(f'<line x1="{px:.1f}" y1="{_H - _MB}" x2="{px:.1f}" '
                   f'y2="{_H - _MB + 5}" stroke="#333"/>')
        out.append(f'<text x="{px:.1f}" y="{_H - _MB + 18}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{_fmt(tx)}</text>')
    for ty in _ticks(ylo, yhi, logy):
        py = sy(ty)
        if py < _MT - 1 or py > _H - _MB + 1:
            continue
        out.append(f'<line x1="{_ML - 5}" y1="{py:.1f}" x2="{_ML}" '
                   f'y2="{py:.1f}" stroke="#333"/>')
        out.append(f'<text x="{_ML - 8}" y="{py + 4:.1f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{_fmt(ty)}</text>')
    out.append(f'<text x="{_W // 2}" y="{_H - 14}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="12">{xlabel}</text>')
    out.append(f'<text x="16" y="{_H // 2}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="12" '
               f'transform="rotate(-90 16 {_H // 2})">{ylabel}</text>')
    for i, (label, xs, ys) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        coords = [(sx(x), sy(y)) for x, y in zip(xs, ys)
                  if not ((logx and x <= 0) or (logy and y <= 0))]
        if not coords:
            continue
        path = " ".join(f"{x:.2f},{y:.2f}" for x, y in coords)
        out.append(f'<polyline points="{path}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5"/>')
        for x, y in coords:
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2.5" fill="{color}"/>')
        ly = _MT + 16 + 16 * i
        out.append(f'<line x1="{_W - _MR - 150}" y1="{ly - 4}" '
                   f'x2="{_W - _MR - 126}" y2="{ly - 4}" stroke="{color}" '
                   f'stroke-width="1.5"/>')
        out.append(f'<text x="{_W - _MR - 120}" y="{ly}" font-family="sans-serif" '
                   f'font-size="11">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
