"""Stem charts of a gANOVA result as standalone SVG.

Two modes mirror the two equivalent decision rules: ``p_scale`` plots
``1 - p_adj`` against the line ``1 - alpha``; ``k_scale`` plots
``K_adjusted`` against the GB2 decision limits, one segment per group when
the limits differ (unbalanced designs) and a single line otherwise.
"""

from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .errors import DomainError

MODES = ("p_scale", "k_scale")
_MARGIN = {"left": 64, "right": 24, "top": 44, "bottom": 52}


@dataclass(frozen=True)
class ChartSpec:
    mode: str = "k_scale"
    width: int = 640
    height: int = 480
    title: str = ""

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"chart mode must be one of {MODES}, got {self.mode!r}")
        if self.width <= _MARGIN["left"] + _MARGIN["right"] or self.height <= (
            _MARGIN["top"] + _MARGIN["bottom"]
        ):
            raise DomainError("chart dimensions too small")


def _fmt(v):
    return f"{v:.6f}"


def _nice_ticks(ymax, count=5):
    step = ymax / count
    mag = 10 ** np.floor(np.log10(step))
    for mult in (1, 2, 2.5, 5, 10):
        if mult * mag >= step:
            step = mult * mag
            break
    return [i * step for i in range(int(np.floor(ymax / step + 1e-9)) + 1)]


def render_chart(result, spec=None):
    """Return the SVG document text for ``result``."""
    spec = spec or ChartSpec()
    G = len(result.labels)
    W, H = spec.width, spec.height
    left, top = _MARGIN["left"], _MARGIN["top"]
    pw = W - left - _MARGIN["right"]
    ph = H - top - _MARGIN["bottom"]
    base_y = top + ph

    if spec.mode == "p_scale":
        values = np.clip(1.0 - result.p_adj, 0.0, 1.0)
        limits = np.full(G, result.dl_p)
        ymax = 1.0
        ylabel, limit_tag = "1 - p_adjusted", "PF"
        default_title = f"gANOVA ({result.method}): 1 - p_adjusted"
    else:
        values = np.asarray(result.k_adj, dtype=float)
        limits = np.asarray(result.dl_k, dtype=float)
        ymax = float(max(values.max(), limits.max())) * 1.1
        ylabel, limit_tag = "K_adjusted", "DL"
        default_title = f"gANOVA ({result.method}): K_adjusted"
    if not ymax > 0:
        ymax = 1.0

    def y_of(v):
        return top + ph * (1.0 - v / ymax)

    slot = pw / G
    xs = [left + (i + 0.5) * slot for i in range(G)]
    title = spec.title or default_title

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}" data-mode="{spec.mode}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<text class="title" x="{_fmt(W / 2)}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{escape(title)}</text>',
        f'<line class="axis" x1="{left}" y1="{top}" x2="{left}" y2="{_fmt(base_y)}" stroke="black"/>',
        f'<line class="axis" x1="{left}" y1="{_fmt(base_y)}" x2="{left + pw}" y2="{_fmt(base_y)}" '
        'stroke="black"/>',
    ]
    for t in _nice_ticks(ymax):
        y = y_of(t)
        out.append(
            f'<line class="grid" x1="{left}" y1="{_fmt(y)}" x2="{left + pw}" y2="{_fmt(y)}" '
            'stroke="#dddddd"/>'
        )
        out.append(
            f'<text class="tick" x="{left - 6}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{t:.4g}</text>'
        )
    out.append(
        f'<text class="ylabel" x="16" y="{_fmt(top + ph / 2)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {_fmt(top + ph / 2)})">{escape(ylabel)}</text>'
    )

    dash = 'stroke="black" stroke-width="2" stroke-dasharray="6,4"'
    if np.allclose(limits, limits[0], rtol=1e-9, atol=0.0):
        y = y_of(limits[0])
        out.append(
            f'<line class="limit" x1="{left}" y1="{_fmt(y)}" x2="{left + pw}" y2="{_fmt(y)}" {dash}/>'
        )
        label_y = y
    else:
        for i, lab in enumerate(result.labels):
            y = y_of(limits[i])
            out.append(
                f'<line class="limit" data-group={quoteattr(lab)} x1="{_fmt(left + i * slot)}" '
                f'y1="{_fmt(y)}" x2="{_fmt(left + (i + 1) * slot)}" y2="{_fmt(y)}" {dash}/>'
            )
        label_y = y_of(limits[-1])
    out.append(
        f'<text class="limit-label" x="{_fmt(left + pw - 4)}" y="{_fmt(label_y - 6)}" '
        f'text-anchor="end" font-family="sans-serif" font-size="12">{limit_tag}</text>'
    )

    for i, lab in enumerate(result.labels):
        x = xs[i]
        y = y_of(values[i])
        flagged = bool(result.flags[i])
        color = "#c0392b" if flagged else "black"
        group = quoteattr(lab)
        out.append(
            f'<line class="stem" data-group={group} x1="{_fmt(x)}" y1="{_fmt(base_y)}" '
            f'x2="{_fmt(x)}" y2="{_fmt(y)}" stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<circle class="marker" data-group={group} data-flagged="{str(flagged).lower()}" '
            f'cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="{color}"/>'
        )
        out.append(
            f'<text class="axis-label" x="{_fmt(x)}" y="{_fmt(base_y + 18)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{escape(lab)}</text>'
        )
    out.append(
        f'<text class="xlabel" x="{_fmt(left + pw / 2)}" y="{H - 10}" text-anchor="middle" '
        'font-family="sans-serif" font-size="12">groups</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_chart(result, path, spec=None):
    text = render_chart(result, spec)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
