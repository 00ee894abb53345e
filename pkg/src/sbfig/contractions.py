"""Per-point contraction conditions of Jleli-Samet type.

A self-map f satisfies the condition of kind K at x whenever a positive
displacement S(x, x, fx) forces

    phi(S(x, x, fx)) <= phi(E_K(x)) ** alpha

where E_K is the figure expression matching K (D: disc center distance,
E: ellipse sum, H: hyperbola difference, C: cassini product, A:
apollonius ratio), alpha is strictly inside (0, 1), and phi is a
non-decreasing map of (0, inf) into (1, inf).

Kind D quantifies over the whole sample; the other kinds say nothing at
their two anchor points, which are reported as excluded.
"""

import math
from dataclasses import dataclass, field

from .errors import DomainError, InputError
from .figures import figure_value
from .metricspace import normalize_point

PHI_KINDS = ("affine", "exp", "exp_sqrt")
CONTRACTION_KINDS = ("D", "E", "H", "C", "A")

# figure expression backing each contraction kind
KIND_FIGURE = {"D": "disc", "E": "ellipse", "H": "hyperbola",
               "C": "cassini", "A": "apollonius"}

# slack allowed when comparing the two sides; worked instances are slack
# by orders of magnitude, so this only absorbs float noise
COMPARISON_TOL = 1e-12


@dataclass(frozen=True)
class Phi:
    """A vetted comparison function: t + 1, e**t, or e**sqrt(t).

    Restricted to built-ins so the monotonicity and range conditions the
    fixed-figure results need are guaranteed by construction.
    """

    kind: str = "affine"

    def __post_init__(self):
        if self.kind not in PHI_KINDS:
            raise InputError(f"unknown phi kind {self.kind!r}")

    def eval(self, t):
        if t <= 0.0:
            raise DomainError(f"phi is defined on (0, inf), got {t}")
        if self.kind == "affine":
            return t + 1.0
        if self.kind == "exp":
            return math.exp(t)
        return math.exp(math.sqrt(t))


def eval_phi(phi, t):
    """Evaluate a comparison function at t > 0."""
    return phi.eval(t)


@dataclass(frozen=True)
class SelfMap:
    """A self-map given by finitely many source -> image overrides on
    top of the identity."""

    overrides: tuple = ()

    def __post_init__(self):
        pairs = tuple((normalize_point(s), normalize_point(t))
                      for s, t in self.overrides)
        sources = [s for s, _ in pairs]
        if len(set(sources)) != len(sources):
            raise InputError("self-map overrides list a source twice")
        object.__setattr__(self, "overrides", pairs)

    def apply(self, x):
        x = normalize_point(x)
        for s, t in self.overrides:
            if s == x:
                return t
        return x

    def image_indices(self, sample):
        """Image index for every sample index; every image must be a
        sample point."""
        mapping = list(range(len(sample)))
        for s, t in self.overrides:
            if sample.contains(s):
                mapping[sample.index_of(s)] = sample.index_of(t)
        return mapping


@dataclass(frozen=True)
class ContractionSpec:
    """Contraction kind, anchor point(s), exponent alpha, and phi."""

    kind: str
    anchors: tuple
    alpha: float
    phi: Phi = field(default_factory=Phi)

    def __post_init__(self):
        if self.kind not in CONTRACTION_KINDS:
            raise InputError(f"unknown contraction kind {self.kind!r}")
        anchors = tuple(normalize_point(a) for a in self.anchors)
        object.__setattr__(self, "anchors", anchors)
        need = 1 if self.kind == "D" else 2
        if len(anchors) != need:
            raise InputError(
                f"kind {self.kind} needs {need} anchor(s), got {len(anchors)}")
        if not 0.0 < self.alpha < 1.0:
            raise InputError(f"alpha must lie strictly in (0, 1), got {self.alpha}")

    def excluded_points(self):
        """Anchor points the condition says nothing about (empty for D)."""
        return () if self.kind == "D" else self.anchors


def rhs_expression(kind, m, anchors, x):
    """The right-hand-side expression of the given contraction kind at x.

    Coincides with the matching figure expression; anchor points of
    kinds E/H/C/A are outside its domain.
    """
    if kind not in CONTRACTION_KINDS:
        raise InputError(f"unknown contraction kind {kind!r}")
    x = normalize_point(x)
    if kind != "D" and x in tuple(normalize_point(a) for a in anchors):
        raise DomainError(f"kind {kind} excludes its anchor points")
    return figure_value(KIND_FIGURE[kind], m, anchors, x)


@dataclass(frozen=True)
class Violation:
    """A point where the contraction inequality fails."""
    index: int
    lhs: float
    rhs: float
    expression: float


@dataclass
class ContractionReport:
    """Per-point verdicts aggregated over a sample.

    `violations` lists the failing points, `vacuous_count` counts points
    the map fixes, `excluded` the skipped anchors, `undefined` points
    whose right-hand expression is zero while the displacement is not
    (the inequality cannot be certified there).
    """

    kind: str
    alpha: float
    violations: list = field(default_factory=list)
    vacuous_count: int = 0
    excluded: list = field(default_factory=list)
    undefined: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self):
        """No violations and no undefined points."""
        return not self.violations and not self.undefined


def _verdict(metric, c, x, fx):
    """(verdict, (lhs, rhs, expression) or None) for one point."""
    t = metric.eval(x, x, fx)
    if t <= 0.0:
        return "vacuous", None
    expr = rhs_expression(c.kind, metric, c.anchors, x)
    if expr <= 0.0:
        return "undefined", None
    lhs = c.phi.eval(t)
    rhs = c.phi.eval(expr) ** c.alpha
    if lhs <= rhs + COMPARISON_TOL * max(1.0, rhs):
        return "holds", (lhs, rhs, expr)
    return "violated", (lhs, rhs, expr)


def contraction_holds_at(sample, f, c, x):
    """Verdict at one point: holds, vacuous, violated, or undefined."""
    x = normalize_point(x)
    if x in c.excluded_points():
        raise DomainError(f"kind {c.kind} excludes its anchor points")
    verdict, _ = _verdict(sample.metric, c, x, f.apply(x))
    return verdict


def check_contraction(sample, f, c):
    """Aggregate the per-point verdicts over all non-excluded sample
    points, in index order."""
    excluded_pts = c.excluded_points()
    report = ContractionReport(kind=c.kind, alpha=c.alpha)
    images = f.image_indices(sample)
    for i, x in enumerate(sample.points):
        if x in excluded_pts:
            report.excluded.append(i)
            continue
        report.checked += 1
        verdict, detail = _verdict(sample.metric, c, x, sample.points[images[i]])
        if verdict == "vacuous":
            report.vacuous_count += 1
        elif verdict == "undefined":
            report.undefined.append(i)
        elif verdict == "violated":
            report.violations.append(Violation(i, *detail))
    return report
