"""Fixed-figure verification.

Given a sample, a self-map, and a contraction spec, this module computes
the displacement radius r, the figure of the matching kind at that
radius, the fixed-point set, and checks whether the figure is contained
in it.  The hypotheses of the corresponding fixed-figure result are
evaluated alongside, so the outcome can be read as "the result's
conclusion was verified" or as a counterexample search.

r is the minimum of S(x, x, fx) over the sample points the map moves;
it is undefined (None) when the map fixes everything.  On grid-built
samples the report flags r as sampled, since the true infimum may be
smaller off-grid.
"""

from dataclasses import dataclass, field

from .contractions import KIND_FIGURE, check_contraction, _verdict
from .errors import InputError
from .figures import FigureSpec, locus
from .metricspace import DEFAULT_TOL


def fix_set(sample, f):
    """Indices of the points the map fixes, in index order."""
    images = f.image_indices(sample)
    return [i for i, j in enumerate(images) if i == j]


def compute_r(sample, f):
    """Smallest displacement S(x, x, fx) over moved points; None when
    the map is the identity on the sample."""
    images = f.image_indices(sample)
    moved = [(x, sample.points[j]) for (x, j) in zip(sample.points, images)
             if sample.points[j] != x]
    if not moved:
        return None
    return min(sample.metric.eval(x, x, fx) for x, fx in moved)


@dataclass
class FixedFigureReport:
    """Everything the fixed-figure check produced.

    `hypotheses` holds the flags relevant to the spec's kind
    (contraction_ok always; foci_fixed for E/H/C/A; r_positive for H;
    center_fixed for D, which is derived rather than independent).
    `subset_holds` is the conclusion: the figure locus lies inside the
    fixed-point set.  With an undefined r there is no figure and the
    conclusion is trivially true (`trivial` is set).
    """

    kind: str
    anchors: tuple
    r: float
    r_sampled: bool
    fix_indices: list
    figure_locus: list
    hypotheses: dict
    subset_holds: bool
    counterexamples: list
    trivial: bool
    contraction: object
    figure: FigureSpec = None

    @property
    def hypotheses_hold(self):
        """Whether every hypothesis the corresponding result needs is met."""
        gating = ["contraction_ok"]
        if self.kind in ("E", "H", "C", "A"):
            gating.append("foci_fixed")
        if self.kind == "H":
            gating.append("r_positive")
        return all(self.hypotheses[g] for g in gating)


def verify_fixed_figure(sample, f, c, tol=DEFAULT_TOL):
    """Run the full pipeline and report; hypothesis failures do not
    abort, so the report also powers the falsifier workflow."""
    for a in c.anchors:
        if not sample.contains(a):
            raise InputError("contraction anchors must belong to the sample")
    contraction = check_contraction(sample, f, c)
    fixed = fix_set(sample, f)
    fixed_set = set(fixed)
    r = compute_r(sample, f)

    hypotheses = {"contraction_ok": contraction.ok}
    if c.kind == "D":
        center = c.anchors[0]
        hypotheses["center_fixed"] = f.apply(center) == center
    else:
        hypotheses["foci_fixed"] = all(f.apply(a) == a for a in c.anchors)
    if c.kind == "H":
        hypotheses["r_positive"] = r is not None and r > 0.0

    if r is None:
        return FixedFigureReport(
            kind=c.kind, anchors=c.anchors, r=None,
            r_sampled=sample.grid is not None,
            fix_indices=fixed, figure_locus=[],
            hypotheses=hypotheses, subset_holds=True,
            counterexamples=[], trivial=True,
            contraction=contraction, figure=None)

    figure = FigureSpec(kind=KIND_FIGURE[c.kind], anchors=c.anchors, r=r, tol=tol)
    members = locus(sample, figure)
    counterexamples = [i for i in members if i not in fixed_set]
    return FixedFigureReport(
        kind=c.kind, anchors=c.anchors, r=r,
        r_sampled=sample.grid is not None,
        fix_indices=fixed, figure_locus=members,
        hypotheses=hypotheses, subset_holds=not counterexamples,
        counterexamples=counterexamples, trivial=False,
        contraction=contraction, figure=figure)


@dataclass
class Counterexample:
    """A figure point the map moves, annotated with the hypothesis
    status at or near it."""

    index: int
    point: tuple
    contraction_verdict: str
    hypotheses: dict = field(default_factory=dict)


def falsify(sample, f, c, tol=DEFAULT_TOL):
    """Contrapositive search: list the r-figure points the map does not
    fix, each annotated with the contraction verdict at the point and
    the overall hypothesis flags."""
    report = verify_fixed_figure(sample, f, c, tol=tol)
    out = []
    excluded = c.excluded_points()
    for i in report.counterexamples:
        x = sample.points[i]
        if x in excluded:
            verdict = "excluded"
        else:
            verdict, _ = _verdict(sample.metric, c, x, f.apply(x))
        out.append(Counterexample(
            index=i, point=x, contraction_verdict=verdict,
            hypotheses=dict(report.hypotheses)))
    return out
