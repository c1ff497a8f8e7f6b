"""Plot-data emission: gnuplot-compatible tables and a dependency-free SVG
line chart with std-dev error bars."""

from __future__ import annotations

from pathlib import Path

import numpy as np

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_WIDTH, _HEIGHT = 640, 440
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 20, 20, 50


def emit_plot_data(series, out_base) -> tuple[Path, Path]:
    """Write `<out_base>.dat` and `<out_base>.svg` for mean +/- std series.

    `series` is a sequence of ``(name, (x, mean, std))`` entries, one per
    strategy; the table separates strategies into gnuplot index blocks.
    Returns the two written paths.
    """
    series = [(name, (np.asarray(x, dtype=np.float64),
                      np.asarray(m, dtype=np.float64),
                      np.asarray(s, dtype=np.float64)))
              for name, (x, m, s) in series]
    if not series or any(x.size == 0 for _, (x, _, _) in series):
        raise ValueError("nothing to plot")
    out_base = Path(out_base)
    out_base.parent.mkdir(parents=True, exist_ok=True)
    dat = out_base.with_suffix(".dat")
    svg = out_base.with_suffix(".svg")
    dat.write_text(_table_text(series))
    svg.write_text(_svg_text(series))
    return dat, svg


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _table_text(series) -> str:
    blocks = []
    for name, (x, mean, std) in series:
        lines = [f"# {name}", "# labeled mean_accuracy std_accuracy"]
        for xi, mi, si in zip(x, mean, std):
            lines.append(f"{_fmt(xi)} {_fmt(mi)} {_fmt(si)}")
        blocks.append("\n".join(lines))
    return "\n\n\n".join(blocks) + "\n"


def _svg_text(series) -> str:
    xs = np.concatenate([x for _, (x, _, _) in series])
    los = np.concatenate([m - s for _, (_, m, s) in series])
    his = np.concatenate([m + s for _, (_, m, s) in series])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(los.min()), float(his.max())
    if x1 == x0:
        x1 = x0 + 1.0
    pad = 0.05 * (y1 - y0) or 0.05
    y0, y1 = y0 - pad, y1 + pad

    def px(v):
        return _MARGIN_L + (v - x0) / (x1 - x0) * (_WIDTH - _MARGIN_L - _MARGIN_R)

    def py(v):
        return _HEIGHT - _MARGIN_B - (v - y0) / (y1 - y0) * (_HEIGHT - _MARGIN_T - _MARGIN_B)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
    ]
    axis = (f'<line x1="{_MARGIN_L}" y1="{py(y0)}" x2="{_WIDTH - _MARGIN_R}" y2="{py(y0)}" '
            f'stroke="black"/>'
            f'<line x1="{_MARGIN_L}" y1="{py(y0)}" x2="{_MARGIN_L}" y2="{_MARGIN_T}" '
            f'stroke="black"/>')
    parts.append(axis)
    for t in np.linspace(x0, x1, 5):
        parts.append(f'<line x1="{px(t):.2f}" y1="{py(y0)}" x2="{px(t):.2f}" '
                     f'y2="{py(y0) + 5}" stroke="black"/>')
        parts.append(f'<text x="{px(t):.2f}" y="{py(y0) + 20}" '
                     f'text-anchor="middle">{_fmt(t)}</text>')
    for t in np.linspace(y0, y1, 5):
        parts.append(f'<line x1="{_MARGIN_L - 5}" y1="{py(t):.2f}" x2="{_MARGIN_L}" '
                     f'y2="{py(t):.2f}" stroke="black"/>')
        parts.append(f'<text x="{_MARGIN_L - 8}" y="{py(t) + 4:.2f}" '
                     f'text-anchor="end">{_fmt(t)}</text>')
    parts.append(f'<text x="{(_MARGIN_L + _WIDTH - _MARGIN_R) / 2}" y="{_HEIGHT - 12}" '
                 f'text-anchor="middle">labeled points</text>')
    parts.append(f'<text x="16" y="{(_MARGIN_T + _HEIGHT - _MARGIN_B) / 2}" '
                 f'text-anchor="middle" transform="rotate(-90 16 '
                 f'{(_MARGIN_T + _HEIGHT - _MARGIN_B) / 2})">accuracy</text>')

    for k, (name, (x, mean, std)) in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, mean))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="1.5"/>')
        for a, b, s in zip(x, mean, std):
            cx, lo, hi = px(a), py(b - s), py(b + s)
            parts.append(f'<line x1="{cx:.2f}" y1="{lo:.2f}" x2="{cx:.2f}" y2="{hi:.2f}" '
                         f'stroke="{color}"/>')
            for yy in (lo, hi):
                parts.append(f'<line x1="{cx - 3:.2f}" y1="{yy:.2f}" x2="{cx + 3:.2f}" '
                             f'y2="{yy:.2f}" stroke="{color}"/>')
            parts.append(f'<circle cx="{cx:.2f}" cy="{py(b):.2f}" r="2.5" fill="{color}"/>')
        ly = _MARGIN_T + 16 * (k + 1)
        parts.append(f'<line x1="{_WIDTH - 150}" y1="{ly}" x2="{_WIDTH - 130}" y2="{ly}" '
                     f'stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{_WIDTH - 124}" y="{ly + 4}">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
