"""Figure kinds as membership predicates over an S_b-metric.

Every figure is driven by the anchor expression u(x, a) = S(x, x, a):

    circle, disc   u(x, x0)                bounded by r (disc) or equal (circle)
    ellipse        u(x, x1) + u(x, x2)     equal to r
    hyperbola      |u(x, x1) - u(x, x2)|   equal to r
    cassini        u(x, x1) * u(x, x2)     equal to r
    apollonius     u(x, x1) / u(x, x2)     equal to r, x2 itself excluded
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InputError
from .metricspace import DEFAULT_TOL, normalize_point

FIGURE_KINDS = ("circle", "disc", "ellipse", "hyperbola", "cassini", "apollonius")
ONE_ANCHOR = ("circle", "disc")


@dataclass(frozen=True)
class FigureSpec:
    """A figure kind, its anchor point(s), a radius, and the tolerance
    used by the equality test."""

    kind: str
    anchors: tuple
    r: float
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise InputError(f"unknown figure kind {self.kind!r}")
        anchors = tuple(normalize_point(a) for a in self.anchors)
        object.__setattr__(self, "anchors", anchors)
        need = 1 if self.kind in ONE_ANCHOR else 2
        if len(anchors) != need:
            raise InputError(
                f"{self.kind} needs {need} anchor(s), got {len(anchors)}")
        if self.r < 0.0:
            raise InputError(f"radius must be >= 0, got {self.r}")
        if self.tol <= 0.0:
            raise InputError(f"tolerance must be > 0, got {self.tol}")


def figure_value(kind, m, anchors, x):
    """The figure's defining expression at a single point.

    Raises DomainError for an Apollonius figure evaluated at the
    excluded second anchor (or anywhere else its denominator vanishes).
    """
    if kind not in FIGURE_KINDS:
        raise InputError(f"unknown figure kind {kind!r}")
    anchors = tuple(normalize_point(a) for a in anchors)
    x = normalize_point(x)
    if kind in ONE_ANCHOR:
        return m.eval(x, x, anchors[0])
    u1 = m.eval(x, x, anchors[0])
    u2 = m.eval(x, x, anchors[1])
    if kind == "ellipse":
        return u1 + u2
    if kind == "hyperbola":
        return abs(u1 - u2)
    if kind == "cassini":
        return u1 * u2
    if x == anchors[1]:
        raise DomainError("apollonius figures exclude their second anchor")
    if u2 == 0.0:
        raise DomainError("apollonius denominator vanished away from the anchor")
    return u1 / u2


def membership(f, m, x):
    """Whether x lies on (or, for discs, in) the figure.

    Discs include their boundary; every other kind uses a relative
    equality band around r.
    """
    value = figure_value(f.kind, m, f.anchors, x)
    if f.kind == "disc":
        return value <= f.r * (1.0 + f.tol) + f.tol
    return abs(value - f.r) <= f.tol * max(1.0, f.r)


def figure_values(sample, kind, anchors):
    """Vectorized figure expression over a sample.

    Returns (values, excluded_index); the excluded index is the position
    of the Apollonius second anchor when it occurs in the sample (its
    value is set to NaN), else None.  Values bit-match figure_value().
    """
    if kind not in FIGURE_KINDS:
        raise InputError(f"unknown figure kind {kind!r}")
    anchors = tuple(normalize_point(a) for a in anchors)
    m = sample.metric
    if kind in ONE_ANCHOR:
        return m.anchor_values(sample, anchors[0]), None
    u1 = m.anchor_values(sample, anchors[0])
    u2 = m.anchor_values(sample, anchors[1])
    if kind == "ellipse":
        return u1 + u2, None
    if kind == "hyperbola":
        return np.abs(u1 - u2), None
    if kind == "cassini":
        return u1 * u2, None
    excluded = sample.index_of(anchors[1]) if sample.contains(anchors[1]) else None
    with np.errstate(divide="ignore", invalid="ignore"):
        values = u1 / u2
    if excluded is not None:
        values[excluded] = np.nan
    return values, excluded


def locus(sample, f):
    """Indices of the sample points that belong to the figure, in index
    order.  The excluded Apollonius anchor is skipped silently."""
    values, excluded = figure_values(sample, f.kind, f.anchors)
    if f.kind == "disc":
        mask = values <= f.r * (1.0 + f.tol) + f.tol
    else:
        mask = np.abs(values - f.r) <= f.tol * max(1.0, f.r)
    if excluded is not None:
        mask[excluded] = False
    mask = np.where(np.isnan(values), False, mask)
    return [int(i) for i in np.flatnonzero(mask)]
