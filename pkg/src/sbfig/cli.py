"""Command-line surface.

Commands: axioms, minb, figure, contraction, verify, falsify, plot,
dump.  Exit codes: 0 when every check passed (or the requested artifact
was emitted), 1 when the produced report contains violations or
counterexamples, 2 on usage or input errors.

Values passed to --x0/--x1/--x2 may be numeric expressions ("sqrt(2)",
"7/3"), comma-separated coordinates for vector spaces, or labels for
table spaces; use the --flag=value form for values starting with a
minus sign.
"""

import argparse
import sys

from . import reports
from .contractions import ContractionSpec, Phi, SelfMap, check_contraction
from .errors import SbfigError
from .figures import FigureSpec, figure_values, locus
from .metricspace import minimal_b, verify_axioms
from .render import dump_locus, parse_slice, render_slice
from .spacefile import parse_map, parse_point_text, parse_space
from .verifier import falsify, verify_fixed_figure

FIGURE_CHOICES = ("circle", "disc", "ellipse", "hyperbola", "cassini", "apollonius")
CONTRACTION_CHOICES = ("D", "E", "H", "C", "A")
DEFAULT_POINT_CAP = 200


def _add_shared(parser, need_space=True):
    parser.add_argument("--space", required=need_space, help="space document path")
    parser.add_argument("--tol", type=float, default=1e-9,
                        help="relative tolerance (default 1e-9)")
    parser.add_argument("--out", help="write the report/artifact here "
                                      "instead of stdout")


def _add_anchor_flags(parser):
    parser.add_argument("--x0", help="center anchor (circle/disc, kind D)")
    parser.add_argument("--x1", help="first anchor")
    parser.add_argument("--x2", help="second anchor")


def _add_map_flag(parser):
    parser.add_argument("--map", help="map document path (default: identity)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sbfig",
        description="Verify S_b-metric axioms, figure loci, contraction "
                    "conditions, and fixed-figure claims on finite samples.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("axioms", help="check both metric axioms at a constant b")
    _add_shared(p)
    p.add_argument("--b", type=float, help="constant to check (default: "
                                           "the space's claimed b)")
    p.add_argument("--max-points", type=int, default=DEFAULT_POINT_CAP,
                   help="refuse larger samples, the sweep is O(n^4) "
                        f"(default {DEFAULT_POINT_CAP})")
    p.add_argument("--max-witnesses", type=int, default=50,
                   help="cap listed violation witnesses (totals stay exact)")

    p = sub.add_parser("minb", help="tightest constant satisfying the "
                                    "inequality axiom on the sample")
    _add_shared(p)
    p.add_argument("--max-points", type=int, default=DEFAULT_POINT_CAP)

    p = sub.add_parser("figure", help="compute a figure locus")
    _add_shared(p)
    _add_anchor_flags(p)
    p.add_argument("--kind", required=True, choices=FIGURE_CHOICES)
    p.add_argument("--r", type=float, required=True)

    p = sub.add_parser("contraction", help="check a contraction condition")
    _add_shared(p)
    _add_anchor_flags(p)
    _add_map_flag(p)
    p.add_argument("--kind", required=True, choices=CONTRACTION_CHOICES)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--phi", choices=("affine", "exp", "exp_sqrt"),
                   default="affine")

    p = sub.add_parser("verify", help="verify a fixed-figure claim")
    _add_shared(p)
    _add_anchor_flags(p)
    _add_map_flag(p)
    p.add_argument("--kind", required=True, choices=CONTRACTION_CHOICES)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--phi", choices=("affine", "exp", "exp_sqrt"),
                   default="affine")

    p = sub.add_parser("falsify", help="list figure points the map moves")
    _add_shared(p)
    _add_anchor_flags(p)
    _add_map_flag(p)
    p.add_argument("--kind", required=True, choices=CONTRACTION_CHOICES)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--phi", choices=("affine", "exp", "exp_sqrt"),
                   default="affine")

    p = sub.add_parser("plot", help="render a slice plot of a figure to SVG")
    _add_shared(p)
    _add_anchor_flags(p)
    p.add_argument("--kind", required=True, choices=FIGURE_CHOICES)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--slice", dest="slice_spec",
                   help="axis=value plane for 3-d grids, e.g. z=1")

    p = sub.add_parser("dump", help="dump a figure locus as CSV")
    _add_shared(p)
    _add_anchor_flags(p)
    p.add_argument("--kind", required=True, choices=FIGURE_CHOICES)
    p.add_argument("--r", type=float, required=True)

    return parser


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _anchors_for(kind, args, labeled):
    one_anchor = kind in ("circle", "disc", "D")
    if one_anchor:
        if args.x0 is None:
            raise SbfigError(f"kind {kind} needs --x0")
        return (parse_point_text(args.x0, labeled),)
    if args.x1 is None or args.x2 is None:
        raise SbfigError(f"kind {kind} needs --x1 and --x2")
    return (parse_point_text(args.x1, labeled),
            parse_point_text(args.x2, labeled))


def _load_space(args):
    sample = parse_space(args.space)
    cap = getattr(args, "max_points", None)
    if cap is not None and len(sample) > cap:
        raise SbfigError(
            f"sample has {len(sample)} points, above the cap {cap}; "
            "raise --max-points to force the O(n^4) sweep")
    return sample


def _load_map(args, labeled):
    if getattr(args, "map", None):
        return parse_map(args.map, labeled=labeled)
    return SelfMap()


def _figure_spec(args, sample):
    anchors = _anchors_for(args.kind, args, sample.labeled)
    return FigureSpec(kind=args.kind, anchors=anchors, r=args.r, tol=args.tol)


def _contraction_spec(args, sample):
    anchors = _anchors_for(args.kind, args, sample.labeled)
    return ContractionSpec(kind=args.kind, anchors=anchors, alpha=args.alpha,
                           phi=Phi(kind=args.phi))


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "axioms":
            sample = _load_space(args)
            report = verify_axioms(sample, b=args.b, tol=args.tol,
                                   max_violations=args.max_witnesses)
            _emit(reports.axioms_document(sample, report,
                                          max_witnesses=args.max_witnesses),
                  args.out)
            return 0 if report.ok else 1

        if args.command == "minb":
            sample = _load_space(args)
            value = minimal_b(sample, tol=args.tol)
            _emit(reports.minb_document(sample, value), args.out)
            return 0

        if args.command == "figure":
            sample = _load_space(args)
            figure = _figure_spec(args, sample)
            members = locus(sample, figure)
            values, _ = figure_values(sample, figure.kind, figure.anchors)
            _emit(reports.figure_document(sample, figure, members, values),
                  args.out)
            return 0

        if args.command == "contraction":
            sample = _load_space(args)
            spec = _contraction_spec(args, sample)
            selfmap = _load_map(args, sample.labeled)
            report = check_contraction(sample, selfmap, spec)
            _emit(reports.contraction_document(sample, report), args.out)
            return 0 if report.ok else 1

        if args.command == "verify":
            sample = _load_space(args)
            spec = _contraction_spec(args, sample)
            selfmap = _load_map(args, sample.labeled)
            report = verify_fixed_figure(sample, selfmap, spec, tol=args.tol)
            _emit(reports.verify_document(sample, report), args.out)
            ok = report.hypotheses_hold and report.subset_holds
            return 0 if ok else 1

        if args.command == "falsify":
            sample = _load_space(args)
            spec = _contraction_spec(args, sample)
            selfmap = _load_map(args, sample.labeled)
            report = verify_fixed_figure(sample, selfmap, spec, tol=args.tol)
            counterexamples = falsify(sample, selfmap, spec, tol=args.tol)
            _emit(reports.falsify_document(sample, report, counterexamples),
                  args.out)
            return 1 if counterexamples else 0

        if args.command == "plot":
            sample = _load_space(args)
            figure = _figure_spec(args, sample)
            slice_spec = (parse_slice(args.slice_spec)
                          if args.slice_spec else None)
            svg = render_slice(sample, figure, slice_spec)
            if not args.out:
                raise SbfigError("plot needs --out PATH for the SVG file")
            _emit(svg, args.out)
            return 0

        if args.command == "dump":
            sample = _load_space(args)
            figure = _figure_spec(args, sample)
            _emit(dump_locus(sample, figure), args.out)
            return 0

        raise SbfigError(f"unknown command {args.command!r}")
    except SbfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
