"""Executable geometry on S_b-metric samples.

Evaluate three-argument generalized metrics, verify their axioms
exhaustively on finite samples, compute figure loci (disc and circle,
ellipse, hyperbola, Cassini curve, Apollonius circle), check per-point
contraction conditions, and verify or falsify fixed-figure claims.
"""

from .contractions import (
    ContractionReport,
    ContractionSpec,
    Phi,
    SelfMap,
    Violation,
    check_contraction,
    contraction_holds_at,
    eval_phi,
    rhs_expression,
)
from .errors import (
    DomainError,
    InputError,
    SbfigError,
    SymmetryError,
    UndefinedMinimalB,
)
from .figures import FigureSpec, figure_value, figure_values, locus, membership
from .metricspace import (
    AxiomReport,
    BaseMetric,
    DerivedBMetric,
    GridSpec,
    SbMetric,
    SpaceSample,
    b_metric_from_sb,
    check_symmetry,
    eval_base,
    eval_sb,
    minimal_b,
    minimal_triangle_b,
    sb_from_b_metric,
    verify_axioms,
)
from .render import dump_locus, render_slice, slice_cells, slice_values
from .spacefile import (
    eval_scalar,
    parse_map,
    parse_point_text,
    parse_space,
    serialize_map,
    serialize_space,
)
from .verifier import (
    Counterexample,
    FixedFigureReport,
    compute_r,
    falsify,
    fix_set,
    verify_fixed_figure,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "BaseMetric",
    "ContractionReport",
    "ContractionSpec",
    "Counterexample",
    "DerivedBMetric",
    "DomainError",
    "FigureSpec",
    "FixedFigureReport",
    "GridSpec",
    "InputError",
    "Phi",
    "SbMetric",
    "SbfigError",
    "SelfMap",
    "SpaceSample",
    "SymmetryError",
    "UndefinedMinimalB",
    "Violation",
    "b_metric_from_sb",
    "check_contraction",
    "check_symmetry",
    "compute_r",
    "contraction_holds_at",
    "dump_locus",
    "eval_base",
    "eval_phi",
    "eval_sb",
    "eval_scalar",
    "falsify",
    "figure_value",
    "figure_values",
    "fix_set",
    "locus",
    "membership",
    "minimal_b",
    "minimal_triangle_b",
    "parse_map",
    "parse_point_text",
    "parse_space",
    "render_slice",
    "rhs_expression",
    "sb_from_b_metric",
    "serialize_map",
    "serialize_space",
    "slice_cells",
    "slice_values",
    "verify_axioms",
    "verify_fixed_figure",
]
