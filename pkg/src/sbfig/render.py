"""Slice plots and locus dumps for grid-built samples.

Equality figures are drawn by marking every grid cell whose corner
values of (figure expression - r) change sign, which is robust to grid
resolution; discs are drawn as the filled cells whose four corners are
all members.  Output is SVG in a fixed 800 x 800 frame with the grid's
min/max mapped to the frame edges, so renders diff cleanly in tests.
"""

import csv
import io

import numpy as np

from .errors import InputError
from .figures import figure_values, locus
from .metricspace import SpaceSample, format_point

SVG_SIZE = 800
MARGIN = 60
AXIS_NAMES = ("x", "y", "z")


def parse_slice(text):
    """Parse an ``axis=value`` slice flag; axis is x/y/z or an index."""
    if "=" not in text:
        raise InputError(f"slice must look like axis=value, got {text!r}")
    name, raw = text.split("=", 1)
    name = name.strip().lower()
    if name in AXIS_NAMES:
        axis = AXIS_NAMES.index(name)
    else:
        try:
            axis = int(name)
        except ValueError:
            raise InputError(f"unknown slice axis {name!r}")
    try:
        value = float(raw)
    except ValueError:
        raise InputError(f"bad slice value {raw!r}")
    return axis, value


def slice_plane(sample, slice_spec=None):
    """Resolve the two free axes and the fixed coordinates of a slice.

    Returns (free_axes, fixed, axis_nodes, snapped_value).  Requires a
    grid-built sample of dimension 2 or 3; 3-d grids need a slice spec,
    whose value is snapped to the nearest grid node.
    """
    grid = sample.grid
    if grid is None:
        raise InputError("slice plots need a grid-built space")
    nodes = grid.axis()
    if grid.dim == 2:
        return (0, 1), {}, nodes, None
    if grid.dim != 3:
        raise InputError("slice plots support grids of dimension 2 or 3")
    if slice_spec is None:
        raise InputError("a 3-d grid needs --slice axis=value")
    axis, value = slice_spec
    if not 0 <= axis < 3:
        raise InputError(f"slice axis out of range for a 3-d grid: {axis}")
    snapped = float(nodes[int(np.argmin(np.abs(nodes - value)))])
    free = tuple(i for i in range(3) if i != axis)
    return free, {axis: snapped}, nodes, snapped


def slice_values(sample, figure, slice_spec=None):
    """Figure expression on the nodes of a slice plane.

    Returns (values, axis_nodes, free_axes, fixed) where values[i, j]
    is the expression at (node_i, node_j) along the two free axes.
    """
    free, fixed, nodes, _ = slice_plane(sample, slice_spec)
    steps = len(nodes)
    a, b = np.meshgrid(nodes, nodes, indexing="ij")
    dim = sample.grid.dim
    cols = []
    for axis in range(dim):
        if axis == free[0]:
            cols.append(a.ravel())
        elif axis == free[1]:
            cols.append(b.ravel())
        else:
            cols.append(np.full(steps * steps, fixed[axis]))
    pts = np.stack(cols, axis=1)
    plane = SpaceSample([tuple(float(v) for v in row) for row in pts],
                        sample.metric, claimed_b=sample.claimed_b)
    values, excluded = figure_values(plane, figure.kind, figure.anchors)
    values = np.asarray(values, dtype=float).reshape(steps, steps)
    return values, nodes, free, fixed


def marked_cells(values, figure):
    """Boolean (steps-1, steps-1) array of cells to shade.

    Equality figures mark cells where the corner values of
    (expression - r) are not all on one side of zero; discs mark cells
    whose four corners are all members.
    """
    if figure.kind == "disc":
        member = values <= figure.r * (1.0 + figure.tol) + figure.tol
        return (member[:-1, :-1] & member[1:, :-1]
                & member[:-1, 1:] & member[1:, 1:])
    diff = values - figure.r
    corner_min = np.minimum(np.minimum(diff[:-1, :-1], diff[1:, :-1]),
                            np.minimum(diff[:-1, 1:], diff[1:, 1:]))
    corner_max = np.maximum(np.maximum(diff[:-1, :-1], diff[1:, :-1]),
                            np.maximum(diff[:-1, 1:], diff[1:, 1:]))
    cells = (corner_min <= 0.0) & (corner_max >= 0.0)
    return cells & ~np.isnan(corner_min) & ~np.isnan(corner_max)


def slice_cells(sample, figure, slice_spec=None):
    """Marked-cell mask for a slice; the array tested by the plot checks."""
    values, _, _, _ = slice_values(sample, figure, slice_spec)
    return marked_cells(values, figure)


def _fmt(v):
    return f"{v:.6g}"


def render_slice(sample, figure, slice_spec=None):
    """Render a slice plot to an SVG string."""
    values, nodes, free, fixed = slice_values(sample, figure, slice_spec)
    cells = marked_cells(values, figure)
    lo, hi = float(nodes[0]), float(nodes[-1])
    span = hi - lo if hi > lo else 1.0
    inner = SVG_SIZE - 2 * MARGIN

    def sx(v):
        return MARGIN + (v - lo) / span * inner

    def sy(v):
        return SVG_SIZE - MARGIN - (v - lo) / span * inner

    fill = "#9ecae1" if figure.kind == "disc" else "#1f77b4"
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" '
        f'height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f'<rect x="0" y="0" width="{SVG_SIZE}" height="{SVG_SIZE}" fill="#ffffff"/>',
    ]
    caption = (f"{figure.kind}, r={figure.r!r}")
    if fixed:
        axis = next(iter(fixed))
        caption += f", slice {AXIS_NAMES[axis]}={fixed[axis]!r}"
    out.append(f'<text x="{MARGIN}" y="30" font-family="monospace" '
               f'font-size="16">{caption}</text>')
    # shaded cells
    for i, j in np.argwhere(cells):
        x0 = sx(float(nodes[i]))
        x1 = sx(float(nodes[i + 1]))
        y0 = sy(float(nodes[j + 1]))
        y1 = sy(float(nodes[j]))
        out.append(f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" '
                   f'width="{_fmt(x1 - x0)}" height="{_fmt(y1 - y0)}" '
                   f'fill="{fill}"/>')
    # frame and axis annotation
    out.append(f'<rect x="{MARGIN}" y="{MARGIN}" width="{inner}" '
               f'height="{inner}" fill="none" stroke="#000000"/>')
    mid = (lo + hi) / 2.0
    for v in (lo, mid, hi):
        out.append(f'<text x="{_fmt(sx(v))}" y="{SVG_SIZE - MARGIN + 24}" '
                   f'font-family="monospace" font-size="12" '
                   f'text-anchor="middle">{_fmt(v)}</text>')
        out.append(f'<text x="{MARGIN - 8}" y="{_fmt(sy(v) + 4)}" '
                   f'font-family="monospace" font-size="12" '
                   f'text-anchor="end">{_fmt(v)}</text>')
    out.append(f'<text x="{SVG_SIZE // 2}" y="{SVG_SIZE - 12}" '
               f'font-family="monospace" font-size="14" '
               f'text-anchor="middle">axis {AXIS_NAMES[free[0]]}</text>')
    out.append(f'<text x="16" y="{SVG_SIZE // 2}" font-family="monospace" '
               f'font-size="14" text-anchor="middle" '
               f'transform="rotate(-90 16 {SVG_SIZE // 2})">'
               f'axis {AXIS_NAMES[free[1]]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def dump_locus(sample, figure, members=None):
    """CSV dump of a figure locus: index, point, expression value."""
    values, _ = figure_values(sample, figure.kind, figure.anchors)
    if members is None:
        members = locus(sample, figure)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "point", "value"])
    for i in members:
        writer.writerow([i, format_point(sample.points[i]), repr(float(values[i]))])
    return buf.getvalue()
