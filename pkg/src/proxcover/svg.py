"""Minimal SVG rendering for 2-D scenes: boundary, grid points, covering balls."""

from __future__ import annotations

from .scene import atomic_write_text

CASE_COLORS = {
    "case1": "#1f77b4",
    "case2": "#2ca02c",
    "case3_y_eq_x": "#9467bd",
    "case3_y_near": "#ff7f0e",
    "case3_y_far": "#d62728",
}
_FAIL_COLOR = "#000000"


def _fmt(v: float) -> str:
    return f"{v:.6f}"


def render_cover_svg(path: str, oracle, traces, failures=(), size: int = 800) -> None:
    """Write an SVG of a 2-D covering run (balls case-colored, failures black)."""
    if oracle.dim != 2:
        raise ValueError("SVG rendering is only available for 2-D scenes")
    (x_lo, x_hi), (y_lo, y_hi) = oracle.window
    span_x, span_y = x_hi - x_lo, y_hi - y_lo
    scale = size / max(span_x, span_y)
    width, height = span_x * scale, span_y * scale

    def sx(x):
        return (x - x_lo) * scale

    def sy(y):
        return height - (y - y_lo) * scale  # SVG y grows downward

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>',
    ]
    for trace in traces:
        c = trace.ball.center
        color = CASE_COLORS.get(trace.case, "#888888")
        parts.append(
            f'<circle cx="{_fmt(sx(c[0]))}" cy="{_fmt(sy(c[1]))}" '
            f'r="{_fmt(trace.ball.radius * scale)}" fill="{color}" '
            f'fill-opacity="0.08" stroke="{color}" stroke-opacity="0.25" '
            f'stroke-width="0.5"/>')
    for trace in traces:
        p = trace.x
        color = CASE_COLORS.get(trace.case, "#888888")
        parts.append(
            f'<circle cx="{_fmt(sx(p[0]))}" cy="{_fmt(sy(p[1]))}" r="1.2" '
            f'fill="{color}"/>')
    for _, p, _reason in failures:
        parts.append(
            f'<circle cx="{_fmt(sx(p[0]))}" cy="{_fmt(sy(p[1]))}" r="2.5" '
            f'fill="{_FAIL_COLOR}"/>')
    for line in oracle.boundary_polylines():
        pts = " ".join(f"{_fmt(sx(q[0]))},{_fmt(sy(q[1]))}" for q in line)
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="#111111" stroke-width="1.5"/>')
    parts.append("</svg>")
    atomic_write_text(path, "\n".join(parts) + "\n")
