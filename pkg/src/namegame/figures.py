"""Static SVG rendering of aggregate curves (no plotting library).

Two stacked panels: normalized total word count on top, normalized
distinct word count below, one line per series, shared x axis, linear
scales. Output is a self-contained SVG file.
"""

from __future__ import annotations

from .experiments import AggregateSeries

_PALETTE = ("#000000", "#cc2222", "#2255cc", "#228844", "#aa7700", "#8833aa")

_WIDTH = 720
_PANEL_HEIGHT = 260
_MARGIN_LEFT = 64
_MARGIN_RIGHT = 16
_MARGIN_TOP = 28
_MARGIN_BOTTOM = 44
_PANEL_GAP = 34


def emit_svg(series, path, max_t: float = 50.0) -> None:
    """Write the two-panel figure for one or more AggregateSeries.

    Only rows with t <= max_t are drawn (the interesting transient sits at
    the start; pass float('inf') for everything).
    """
    series = list(series)
    if not series:
        raise ValueError("need at least one series to plot")
    clipped = []
    for s in series:
        keep = s.t <= max_t
        if not keep.any():
            raise ValueError(f"series {s.label!r} has no rows with t <= {max_t}")
        clipped.append((s.label, s.t[keep], s.nw_mean[keep], s.nd_mean[keep]))

    x_max = max(float(t[-1]) for _, t, _, _ in clipped)
    x_max = x_max if x_max > 0 else 1.0
    nw_max = max(float(nw.max()) for _, _, nw, _ in clipped)
    nd_max = max(float(nd.max()) for _, _, _, nd in clipped)

    chunks = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{2 * _PANEL_HEIGHT + _PANEL_GAP + _MARGIN_TOP + _MARGIN_BOTTOM}" '
        f'font-family="sans-serif" font-size="12">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    top_origin = _MARGIN_TOP
    bottom_origin = _MARGIN_TOP + _PANEL_HEIGHT + _PANEL_GAP
    for origin, title, y_max, column in (
        (top_origin, "total words / n", nw_max, 2),
        (bottom_origin, "distinct words / n", nd_max, 3),
    ):
        chunks.append(_panel(clipped, origin, title, x_max, y_max, column))
    chunks.append(_legend([label for label, *_ in clipped]))
    chunks.append("</svg>")
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(chunks) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _panel(clipped, origin, title, x_max, y_max, column) -> str:
    left = _MARGIN_LEFT
    right = _WIDTH - _MARGIN_RIGHT
    top = origin
    bottom = origin + _PANEL_HEIGHT
    span_x = right - left
    span_y = _PANEL_HEIGHT
    y_max = y_max if y_max > 0 else 1.0

    def sx(t):
        return left + span_x * (t / x_max)

    def sy(v):
        return bottom - span_y * (v / (1.06 * y_max))

    parts = [f'<g><text x="{left}" y="{top - 8}" font-weight="bold">{title}</text>']
    parts.append(
        f'<rect x="{left}" y="{top}" width="{span_x}" height="{span_y}" '
        'fill="none" stroke="#333" stroke-width="1"/>'
    )
    for i in range(6):
        t = x_max * i / 5
        x = sx(t)
        parts.append(f'<line x1="{x:.1f}" y1="{bottom}" x2="{x:.1f}" y2="{bottom + 4}" stroke="#333"/>')
        parts.append(f'<text x="{x:.1f}" y="{bottom + 17}" text-anchor="middle">{t:g}</text>')
        v = 1.06 * y_max * i / 5
        y = sy(v)
        parts.append(f'<line x1="{left - 4}" y1="{y:.1f}" x2="{left}" y2="{y:.1f}" stroke="#333"/>')
        parts.append(f'<text x="{left - 7}" y="{y + 4:.1f}" text-anchor="end">{v:.2g}</text>')
    parts.append(
        f'<text x="{(left + right) // 2}" y="{bottom + 33}" text-anchor="middle">t (sweeps)</text>'
    )
    for idx, (_, t, nw, nd) in enumerate(clipped):
        values = nw if column == 2 else nd
        points = " ".join(f"{sx(float(ti)):.2f},{sy(float(vi)):.2f}" for ti, vi in zip(t, values))
        color = _PALETTE[idx % len(_PALETTE)]
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
    parts.append("</g>")
    return "\n".join(parts)


def _legend(labels) -> str:
    x = _WIDTH - _MARGIN_RIGHT - 150
    y = _MARGIN_TOP + 10
    parts = ["<g>"]
    for idx, label in enumerate(labels):
        color = _PALETTE[idx % len(_PALETTE)]
        row_y = y + 16 * idx
        parts.append(f'<line x1="{x}" y1="{row_y}" x2="{x + 22}" y2="{row_y}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{x + 28}" y="{row_y + 4}">{_escape(label)}</text>')
    parts.append("</g>")
    return "\n".join(parts)


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
