"""Static SVG figures for scans and designs, built without a GUI toolkit.

Output is deterministic: identical inputs produce byte-identical documents,
which makes figures diffable and reproducible from run manifests.  Numbers
are written with three decimals of pixel precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .designs import Design
from .radar import RadarScan2D, RadarScan3D

PALETTES = {
    "viridis": ("#440154", "#46327e", "#365c8d", "#277f8e",
                "#1fa187", "#4ac16d", "#a0da39", "#fde725"),
    "greys": ("#f7f7f7", "#cccccc", "#969696", "#636363", "#252525"),
    "heat": ("#0d0887", "#6a00a8", "#b12a90", "#e16462", "#fca636", "#f0f921"),
}

_CURVE = "#1a5fb4"
_ALERT = "#c01c28"
_GRID = "#c8c8c8"
_TEXT = "#333333"


@dataclass(frozen=True)
class FigureSpec:
    """Size, title, palette and optional angle annotations for a figure."""

    width: int = 640
    height: int = 640
    title: str = ""
    palette: str = "viridis"
    annotations: tuple = ()

    def __post_init__(self):
        if self.width < 100 or self.height < 100:
            raise ValueError("figures must be at least 100 x 100 pixels")
        if self.palette not in PALETTES:
            raise ValueError(f"unknown palette {self.palette!r}; available: {sorted(PALETTES)}")
        object.__setattr__(self, "annotations", tuple(self.annotations))


def plot_radar2d(scan: RadarScan2D, spec: FigureSpec = FigureSpec()) -> str:
    """Polar curve of the scan with the critical circle and exceedance arcs.

    The curve radius is the statistic value per angle; stretches above the
    critical value are redrawn highlighted and tagged with their angular
    range so exceedances are machine readable.
    """
    cx, cy = spec.width / 2.0, spec.height / 2.0 + 8.0
    plot_r = 0.42 * min(spec.width, spec.height)
    rmax = max(float(scan.values.max()), scan.critical) * 1.08
    scale = plot_r / rmax

    parts = []
    # radial ticks with labels along the horizontal ray
    tick = _nice_step(rmax)
    r = tick
    while r <= rmax:
        parts.append(_circle(cx, cy, r * scale, stroke=_GRID, fill="none", cls="radial-tick"))
        parts.append(_text(cx + r * scale + 3, cy - 3, "%.3g" % r, size=10, cls="tick-label"))
        r += tick
    # angular spokes every 45 degrees
    for deg in range(0, 360, 45):
        x, y = _polar(cx, cy, scale * rmax, math.radians(deg))
        parts.append(_line(cx, cy, x, y, stroke=_GRID, cls="spoke"))
        lx, ly = _polar(cx, cy, scale * rmax + 12, math.radians(deg))
        parts.append(_text(lx, ly, "%d°" % deg, size=10, anchor="middle", cls="spoke-label"))
    # critical circle
    parts.append(_circle(cx, cy, scan.critical * scale, stroke=_ALERT, fill="none",
                         dash="6,4", cls="critical-circle"))
    # scan curve
    pts = [_polar(cx, cy, float(v) * scale, float(th))
           for th, v in zip(scan.thetas, scan.values)]
    parts.append(_polyline(pts + pts[:1], stroke=_CURVE, width=1.4, cls="radar-curve"))
    # exceedance arcs with their angular extent recorded
    for run in _mask_runs(scan.exceedance_mask()):
        arc = [_polar(cx, cy, float(scan.values[i]) * scale, float(scan.thetas[i])) for i in run]
        start = math.degrees(float(scan.thetas[run[0]]))
        end = math.degrees(float(scan.thetas[run[-1]]))
        parts.append(_polyline(arc, stroke=_ALERT, width=2.4, cls="exceedance-arc",
                               extra=f'data-theta-start="{_f(start)}" data-theta-end="{_f(end)}"'))
    for angle_deg, label in spec.annotations:
        x, y = _polar(cx, cy, scale * rmax * 0.96, math.radians(float(angle_deg)))
        parts.append(_line(cx, cy, x, y, stroke=_TEXT, dash="2,3", cls="annotation-line"))
        parts.append(_text(x, y - 4, str(label), size=11, anchor="middle", cls="annotation"))
    legend = "n=%d  %s  level=%g  critical=%.4g" % (scan.n, scan.statistic_kind,
                                                    scan.level, scan.critical)
    parts.append(_text(8, spec.height - 8, legend, size=11, cls="figure-legend"))
    return _document(spec, parts)


def plot_radar3d_heatmap(scan: RadarScan3D, spec: FigureSpec = FigureSpec(),
                         mode: str = "pvalue_log10") -> str:
    """Longitude x latitude heatmap of a spatial scan.

    ``mode`` selects the painted quantity: the statistic itself or the
    p-values on a -log10 scale.  The color legend is labeled with the exact
    data minimum and maximum; the hottest cell is annotated with its angles.
    """
    if mode == "pvalue_log10":
        data = -np.log10(scan.p_values)
    elif mode == "statistic":
        data = scan.values
    else:
        raise ValueError(f"unknown heatmap mode {mode!r}")
    vmin, vmax = float(data.min()), float(data.max())
    span = vmax - vmin if vmax > vmin else 1.0

    left, right, top, bottom = 56.0, 84.0, 30.0, 40.0
    pw = spec.width - left - right
    ph = spec.height - top - bottom
    nt, npphi = data.shape
    cw, chh = pw / nt, ph / npphi

    parts = []
    for i in range(nt):
        for j in range(npphi):
            t = (data[i, j] - vmin) / span
            x = left + i * cw
            y = top + (npphi - 1 - j) * chh
            parts.append(_rect(x, y, cw + 0.5, chh + 0.5, fill=_color(spec.palette, t),
                               cls="cell"))
    # axes
    tdeg = np.degrees(scan.theta_grid)
    pdeg = np.degrees(scan.phi_grid)
    for deg in range(0, 361, 90):
        i = np.searchsorted(tdeg, deg)
        if i >= nt:
            i = nt - 1
        x = left + i * cw
        parts.append(_text(x, spec.height - bottom + 14, "%d°" % deg, size=10,
                           anchor="middle", cls="axis-label"))
    for deg in (-90, -45, 0, 45, 90):
        j = int(np.argmin(np.abs(pdeg - deg)))
        y = top + (npphi - 1 - j) * chh + chh / 2
        parts.append(_text(left - 6, y + 3, "%d°" % deg, size=10, anchor="end",
                           cls="axis-label"))
    parts.append(_text(left + pw / 2, spec.height - bottom + 28, "longitude",
                       size=11, anchor="middle", cls="axis-title"))
    parts.append(_text(14, top + ph / 2, "latitude", size=11, anchor="middle",
                       cls="axis-title", extra=f'transform="rotate(-90 14 {_f(top + ph / 2)})"'))
    # color legend
    lx = spec.width - right + 18
    steps = 32
    for k in range(steps):
        t = (k + 0.5) / steps
        y = top + ph * (1.0 - (k + 1) / steps)
        parts.append(_rect(lx, y, 14, ph / steps + 0.5, fill=_color(spec.palette, t),
                           cls="legend-swatch"))
    parts.append(_text(lx + 18, top + ph, "%.6g" % vmin, size=10, cls="legend-min"))
    parts.append(_text(lx + 18, top + 8, "%.6g" % vmax, size=10, cls="legend-max"))
    # annotate the maximum
    imax, jmax = np.unravel_index(int(np.argmax(data)), data.shape)
    mx = left + imax * cw + cw / 2
    my = top + (npphi - 1 - jmax) * chh + chh / 2
    parts.append(_rect(left + imax * cw, top + (npphi - 1 - jmax) * chh, cw, chh,
                       fill="none", stroke="#ffffff", cls="max-marker"))
    note = "max (%.0f°, %.0f°)" % (tdeg[imax], pdeg[jmax])
    ny = my - 8 if my > top + 20 else my + 14
    parts.append(_text(min(max(mx, left + 30), left + pw - 30), ny, note, size=11,
                       anchor="middle", fill="#ffffff", cls="max-annotation"))
    for (angles, label) in spec.annotations:
        tdeg_a, pdeg_a = angles
        i = int(np.argmin(np.abs(tdeg - float(tdeg_a))))
        j = int(np.argmin(np.abs(pdeg - float(pdeg_a))))
        x = left + i * cw + cw / 2
        y = top + (npphi - 1 - j) * chh + chh / 2
        parts.append(_text(x, y, str(label), size=11, anchor="middle",
                           fill="#ffffff", cls="annotation"))
    return _document(spec, parts)


def plot_radar3d_pins(scan: RadarScan3D, spec: FigureSpec = FigureSpec()) -> str:
    """Orthographic pin view of a spatial scan around the critical sphere.

    The camera sits at azimuth 30 and elevation 20 degrees.  Each sampled
    direction carries a dot at radius equal to its statistic; directions
    beyond the critical value get a highlighted pin from the sphere surface
    outward.  The grid is strided down to keep the figure readable.
    """
    az, el = math.radians(30.0), math.radians(20.0)
    right = np.array([-math.sin(az), math.cos(az), 0.0])
    up = np.array([-math.sin(el) * math.cos(az), -math.sin(el) * math.sin(az), math.cos(el)])
    view = np.cross(right, up)

    cx, cy = spec.width / 2.0, spec.height / 2.0
    rmax = max(float(scan.values.max()), scan.critical) * 1.1
    scale = 0.42 * min(spec.width, spec.height) / rmax

    stride_t = max(1, scan.theta_grid.size // 60)
    stride_p = max(1, scan.phi_grid.size // 30)
    pins = []
    for i in range(0, scan.theta_grid.size, stride_t):
        for j in range(0, scan.phi_grid.size, stride_p):
            th, ph = float(scan.theta_grid[i]), float(scan.phi_grid[j])
            d = np.array([math.cos(ph) * math.cos(th),
                          math.cos(ph) * math.sin(th),
                          math.sin(ph)])
            v = float(scan.values[i, j])
            depth = float(d @ view)
            pins.append((depth, d, v))
    pins.sort(key=lambda item: item[0])

    parts = [_circle(cx, cy, scan.critical * scale, stroke=_ALERT, fill="none",
                     dash="6,4", cls="critical-sphere")]
    for depth, d, v in pins:
        tip = d * v
        x, y = cx + scale * float(tip @ right), cy - scale * float(tip @ up)
        if v > scan.critical:
            base = d * scan.critical
            bx, by = cx + scale * float(base @ right), cy - scale * float(base @ up)
            parts.append(_line(bx, by, x, y, stroke=_ALERT, width=1.6, cls="pin"))
            parts.append(_circle(x, y, 2.2, stroke="none", fill=_ALERT, cls="pin-head"))
        else:
            shade = "#7a7a7a" if depth >= 0 else "#c4c4c4"
            parts.append(_circle(x, y, 1.4, stroke="none", fill=shade, cls="dot"))
    legend = "n=%d  ks  level=%g  critical=%.4g" % (scan.n, scan.level, scan.critical)
    parts.append(_text(8, spec.height - 8, legend, size=11, cls="figure-legend"))
    return _document(spec, parts)


def plot_design2d(design: Design, spec: FigureSpec = FigureSpec()) -> str:
    """Scatter of a planar design inside its square domain."""
    if design.dim != 2:
        raise ValueError("plot_design2d needs a 2-dimensional design")
    margin = 34.0
    side = min(spec.width, spec.height) - 2 * margin
    ox = (spec.width - side) / 2.0
    oy = (spec.height - side) / 2.0

    def place(p):
        return ox + (p[0] + 1.0) / 2.0 * side, oy + (1.0 - (p[1] + 1.0) / 2.0) * side

    parts = [_rect(ox, oy, side, side, fill="none", stroke=_TEXT, cls="domain-border")]
    for p in design.points:
        x, y = place(p)
        parts.append(_circle(x, y, 2.5, stroke="none", fill=_CURVE, cls="design-point"))
    if design.label:
        parts.append(_text(8, spec.height - 8, design.label, size=11, cls="figure-legend"))
    return _document(spec, parts)


def _document(spec: FigureSpec, parts) -> str:
    head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" '
            f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">')
    body = [head,
            _rect(0, 0, spec.width, spec.height, fill="#ffffff", cls="background")]
    if spec.title:
        body.append(_text(spec.width / 2.0, 18, spec.title, size=14, anchor="middle",
                          cls="figure-title"))
    body.extend(parts)
    body.append("</svg>")
    return "\n".join(body) + "\n"


def _color(palette: str, t: float) -> str:
    anchors = PALETTES[palette]
    t = min(max(float(t), 0.0), 1.0)
    pos = t * (len(anchors) - 1)
    i = min(int(pos), len(anchors) - 2)
    frac = pos - i
    c0 = _hex_rgb(anchors[i])
    c1 = _hex_rgb(anchors[i + 1])
    mixed = tuple(round(a + (b - a) * frac) for a, b in zip(c0, c1))
    return "#%02x%02x%02x" % mixed


def _hex_rgb(code: str):
    return tuple(int(code[k:k + 2], 16) for k in (1, 3, 5))


def _nice_step(rmax: float) -> float:
    raw = rmax / 3.5
    mag = 10.0 ** math.floor(math.log10(raw)) if raw > 0 else 1.0
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if mult * mag >= raw:
            return mult * mag
    return 10.0 * mag


def _mask_runs(mask):
    """Contiguous index runs of True, merging a wrap-around at the ends."""
    if not mask.any():
        return []
    if mask.all():
        return [list(range(mask.size))]
    idx = np.flatnonzero(mask)
    breaks = np.flatnonzero(np.diff(idx) > 1)
    runs = np.split(idx, breaks + 1)
    runs = [list(run) for run in runs]
    if len(runs) > 1 and runs[0][0] == 0 and runs[-1][-1] == mask.size - 1:
        runs[0] = runs.pop() + runs[0]
    return runs


def _polar(cx, cy, r, theta):
    return cx + r * math.cos(theta), cy - r * math.sin(theta)


def _f(x) -> str:
    return "%.3f" % float(x)


def _circle(cx, cy, r, stroke, fill, dash=None, cls=None) -> str:
    attrs = [f'cx="{_f(cx)}"', f'cy="{_f(cy)}"', f'r="{_f(max(r, 0.0))}"',
             f'stroke="{stroke}"', f'fill="{fill}"']
    if dash:
        attrs.append(f'stroke-dasharray="{dash}"')
    if cls:
        attrs.append(f'class="{cls}"')
    return "<circle %s/>" % " ".join(attrs)


def _line(x1, y1, x2, y2, stroke, width=1.0, dash=None, cls=None) -> str:
    attrs = [f'x1="{_f(x1)}"', f'y1="{_f(y1)}"', f'x2="{_f(x2)}"', f'y2="{_f(y2)}"',
             f'stroke="{stroke}"', f'stroke-width="{_f(width)}"']
    if dash:
        attrs.append(f'stroke-dasharray="{dash}"')
    if cls:
        attrs.append(f'class="{cls}"')
    return "<line %s/>" % " ".join(attrs)


def _polyline(points, stroke, width=1.0, cls=None, extra=None) -> str:
    coords = " ".join("%s,%s" % (_f(x), _f(y)) for x, y in points)
    attrs = [f'points="{coords}"', 'fill="none"', f'stroke="{stroke}"',
             f'stroke-width="{_f(width)}"']
    if cls:
        attrs.append(f'class="{cls}"')
    if extra:
        attrs.append(extra)
    return "<polyline %s/>" % " ".join(attrs)


def _rect(x, y, w, h, fill, stroke="none", cls=None) -> str:
    attrs = [f'x="{_f(x)}"', f'y="{_f(y)}"', f'width="{_f(w)}"', f'height="{_f(h)}"',
             f'fill="{fill}"', f'stroke="{stroke}"']
    if cls:
        attrs.append(f'class="{cls}"')
    return "<rect %s/>" % " ".join(attrs)


def _text(x, y, content, size=11, anchor="start", fill=_TEXT, cls=None, extra=None) -> str:
    attrs = [f'x="{_f(x)}"', f'y="{_f(y)}"', f'font-size="{size}"',
             f'font-family="sans-serif"', f'fill="{fill}"']
    if anchor != "start":
        attrs.append(f'text-anchor="{anchor}"')
    if cls:
        attrs.append(f'class="{cls}"')
    if extra:
        attrs.append(extra)
    return "<text %s>%s</text>" % (" ".join(attrs), escape(str(content)))
