"""Standalone SVG line charts, written by hand to stay dependency-free.

One chart style: two centrality series against the modification index, with
axis ticks, a dashed one-half guide line, and a legend. Output is a complete
SVG document string; rendering is deterministic for a given input.
"""

from __future__ import annotations

from typing import Sequence

WIDTH = 640
HEIGHT = 400
MARGIN_LEFT = 60
MARGIN_RIGHT = 20
MARGIN_TOP = 30
MARGIN_BOTTOM = 50

SERIES_COLOURS = ("#c0392b", "#2471a3")


def _fmt(value: float) -> str:
    return f"{value:.2f}".rstrip("0").rstrip(".") or "0"


def _x_ticks(max_step: int) -> list[int]:
    if max_step <= 10:
        return list(range(max_step + 1))
    stride = max(1, (max_step + 9) // 10)
    ticks = list(range(0, max_step + 1, stride))
    if ticks[-1] != max_step:
        ticks.append(max_step)
    return ticks


def render_series_chart(
    series: Sequence[Sequence[float]],
    labels: Sequence[str],
    title: str = "",
    x_label: str = "modification index",
    y_label: str = "influence centrality",
) -> str:
    """Render equally long series sampled at steps 0..k as an SVG document."""
    if not series or not series[0]:
        raise ValueError("need at least one non-empty series")
    if len({len(s) for s in series}) != 1:
        raise ValueError("series must share a length")
    if len(labels) != len(series):
        raise ValueError("one label per series required")
    steps = len(series[0]) - 1
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(step: float) -> float:
        if steps == 0:
            return MARGIN_LEFT + plot_w / 2
        return MARGIN_LEFT + plot_w * step / steps

    def sy(value: float) -> float:
        return MARGIN_TOP + plot_h * (1.0 - value)

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">'
    )
    parts.append(f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>')
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.1f}" y="18" text-anchor="middle" font-size="14">{title}</text>'
        )

    # frame and ticks
    x0, y0 = MARGIN_LEFT, MARGIN_TOP + plot_h
    parts.append(
        f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" stroke="black"/>'
    )
    parts.append(f'<line x1="{x0}" y1="{MARGIN_TOP}" x2="{x0}" y2="{y0}" stroke="black"/>')
    for tick in _x_ticks(steps):
        tx = sx(tick)
        parts.append(f'<line x1="{tx:.1f}" y1="{y0}" x2="{tx:.1f}" y2="{y0 + 5}" stroke="black"/>')
        parts.append(
            f'<text x="{tx:.1f}" y="{y0 + 18}" text-anchor="middle">{tick}</text>'
        )
    for i in range(6):
        value = i / 5
        ty = sy(value)
        parts.append(f'<line x1="{x0 - 5}" y1="{ty:.1f}" x2="{x0}" y2="{ty:.1f}" stroke="black"/>')
        parts.append(
            f'<text x="{x0 - 8}" y="{ty + 4:.1f}" text-anchor="end">{_fmt(value)}</text>'
        )
    parts.append(
        f'<text x="{x0 + plot_w / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {MARGIN_TOP + plot_h / 2:.1f})">{y_label}</text>'
    )

    # one-half guide
    half_y = sy(0.5)
    parts.append(
        f'<line x1="{x0}" y1="{half_y:.1f}" x2="{x0 + plot_w}" y2="{half_y:.1f}" '
        f'stroke="#888888" stroke-dasharray="6 4"/>'
    )

    for idx, values in enumerate(series):
        colour = SERIES_COLOURS[idx % len(SERIES_COLOURS)]
        points = " ".join(f"{sx(i):.2f},{sy(v):.2f}" for i, v in enumerate(values))
        parts.append(
            f'<polyline fill="none" stroke="{colour}" stroke-width="2" points="{points}"/>'
        )

    # legend, top-right inside the plot area
    legend_x = x0 + plot_w - 150
    legend_y = MARGIN_TOP + 8
    for idx, label in enumerate(labels):
        colour = SERIES_COLOURS[idx % len(SERIES_COLOURS)]
        ly = legend_y + 18 * idx
        parts.append(
            f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 24}" y2="{ly}" '
            f'stroke="{colour}" stroke-width="2"/>'
        )
        parts.append(f'<text x="{legend_x + 30}" y="{ly + 4}">{label}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
