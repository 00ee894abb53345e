"""Points, base metrics, and three-argument S_b-metric constructions.

An S_b-metric assigns a nonnegative value to every triple of points and
satisfies two axioms: the value vanishes exactly on triples of equal
points, and a relaxed tetrahedral inequality with a constant b >= 1
bounds every triple against every fourth point.  ``verify_axioms``
checks both axioms exhaustively on a finite sample and ``minimal_b``
computes the tightest constant that makes the second axiom hold there.

Points are either labels (strings) or real vectors (tuples of floats).
All vectorized sweeps replicate the scalar evaluation order operation by
operation, so a vectorized value is bit-identical to the scalar one.
"""

import numbers
from dataclasses import dataclass, field

import numpy as np

from ._parallel import map_ranges
from .errors import InputError, SymmetryError, UndefinedMinimalB

DEFAULT_TOL = 1e-9

BASE_KINDS = ("abs", "lp", "table")
SB_KINDS = ("power_sum", "from_b_metric", "s_variant")


def rel_close(a, b, tol=DEFAULT_TOL):
    """Relative equality test: |a-b| <= tol * max(1, |a|, |b|)."""
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def normalize_point(p):
    """Coerce a raw value into a point: a label or a tuple of floats."""
    if isinstance(p, str):
        return p
    if isinstance(p, numbers.Real):
        return (float(p),)
    if isinstance(p, (list, tuple)):
        try:
            return tuple(float(v) for v in p)
        except (TypeError, ValueError):
            raise InputError(f"point coordinates must be real numbers, got {p!r}")
    raise InputError(f"cannot interpret {p!r} as a point")


def point_dim(p):
    """Dimension of a vector point; None for labels."""
    return None if isinstance(p, str) else len(p)


def format_point(p):
    """Human-readable rendering used in reports and CSV dumps."""
    if isinstance(p, str):
        return p
    if len(p) == 1:
        return repr(p[0])
    return " ".join(repr(c) for c in p)


def point_payload(p):
    """JSON-friendly rendering: label, scalar, or list of coordinates."""
    if isinstance(p, str):
        return p
    if len(p) == 1:
        return p[0]
    return list(p)


@dataclass(frozen=True)
class BaseMetric:
    """A two-argument distance: |x-y| on reals, an lp distance on vectors,
    or an explicit symmetric table on labeled points.

    ``b`` is the relaxation constant of the triangle inequality this
    metric is claimed to satisfy (1 for the built-in genuine metrics).
    """

    kind: str
    p: float = 2.0
    labels: tuple = ()
    matrix: tuple = ()
    b: float = 1.0

    def __post_init__(self):
        if self.kind not in BASE_KINDS:
            raise InputError(f"unknown base metric kind {self.kind!r}")
        if self.kind == "lp" and self.p < 1.0:
            raise InputError(f"lp exponent must be >= 1, got {self.p}")
        if self.b < 1.0:
            raise InputError(f"relaxation constant must be >= 1, got {self.b}")
        if self.kind == "table":
            self._validate_table()

    def _validate_table(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise InputError("table labels must be distinct")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise InputError("table matrix must be square over the labels")
        for i in range(n):
            if self.matrix[i][i] != 0.0:
                raise InputError("table matrix must have a zero diagonal")
            for j in range(n):
                if self.matrix[i][j] < 0.0:
                    raise InputError("table entries must be nonnegative")
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise InputError("table matrix must be symmetric")

    @classmethod
    def absolute(cls):
        return cls(kind="abs")

    @classmethod
    def lp(cls, p):
        return cls(kind="lp", p=float(p))

    @classmethod
    def table(cls, labels, matrix, b=None):
        """Table metric on labeled points; when `b` is omitted the minimal
        triangle constant of the matrix is computed and used."""
        labels = tuple(labels)
        matrix = tuple(tuple(float(v) for v in row) for row in matrix)
        if b is None:
            b = minimal_triangle_b(matrix)
        return cls(kind="table", labels=labels, matrix=matrix, b=float(b))

    # -- scalar evaluation ------------------------------------------------

    def eval(self, x, y):
        x = normalize_point(x)
        y = normalize_point(y)
        if self.kind == "table":
            return self.matrix[self._label_index(x)][self._label_index(y)]
        self._check_vector(x)
        self._check_vector(y)
        if len(x) != len(y):
            raise InputError("points of different dimension")
        if self.kind == "abs":
            if len(x) != 1:
                raise InputError("abs base metric is defined on reals only")
            return abs(x[0] - y[0])
        return sum(abs(a - b) ** self.p for a, b in zip(x, y)) ** (1.0 / self.p)

    def _label_index(self, x):
        if not isinstance(x, str):
            raise InputError("table metric expects labeled points")
        try:
            return self.labels.index(x)
        except ValueError:
            raise InputError(f"unknown label {x!r}")

    def _check_vector(self, x):
        if isinstance(x, str):
            raise InputError(f"{self.kind} base metric expects vector points")

    def check_points(self, points):
        """Validate that every sample point matches this metric's representation."""
        for pt in points:
            if self.kind == "table":
                self._label_index(pt)
            else:
                self._check_vector(pt)
                if self.kind == "abs" and len(pt) != 1:
                    raise InputError("abs base metric is defined on reals only")

    # -- vectorized evaluation (operation order mirrors eval) -------------

    def pair_matrix(self, sample):
        """Matrix of d(x_i, x_j) over the sample, bit-matching eval()."""
        if self.kind == "table":
            idx = [self._label_index(p) for p in sample.points]
            return np.asarray(self.matrix, dtype=float)[np.ix_(idx, idx)]
        coords = sample.coords
        if self.kind == "abs":
            line = coords[:, 0]
            return np.abs(line[:, None] - line[None, :])
        diff = np.abs(coords[:, None, :] - coords[None, :, :])
        return np.sum(diff ** self.p, axis=2) ** (1.0 / self.p)

    def to_anchor(self, sample, anchor):
        """Vector of d(x_i, anchor) over the sample, bit-matching eval()."""
        anchor = normalize_point(anchor)
        if self.kind == "table":
            idx = [self._label_index(p) for p in sample.points]
            col = np.asarray(self.matrix, dtype=float)[:, self._label_index(anchor)]
            return col[idx]
        coords = sample.coords
        if len(anchor) != coords.shape[1]:
            raise InputError("anchor dimension does not match the sample")
        if self.kind == "abs":
            return np.abs(coords[:, 0] - anchor[0])
        diff = np.abs(coords - np.asarray(anchor)[None, :])
        return np.sum(diff ** self.p, axis=1) ** (1.0 / self.p)


def eval_base(d, x, y):
    """Evaluate a base metric at a pair of points."""
    return d.eval(x, y)


def minimal_triangle_b(matrix):
    """Tightest constant b with M[i,k] <= b (M[i,j] + M[j,k]) over a table,
    floored at 1."""
    m = np.asarray(matrix, dtype=float)
    n = m.shape[0]
    best = 1.0
    for j in range(n):
        den = m[:, j][:, None] + m[j, :][None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(den > 0.0, m / den, 0.0)
        best = max(best, float(ratio.max()) if n else 1.0)
    return best


@dataclass(frozen=True)
class SbMetric:
    """One of the three built-in S_b-metric constructions.

    power_sum      c * (d(x,y) + d(y,z) + d(x,z)) ** p  for a base metric d
    from_b_metric  d(x,z) + d(y,z)                      for a base metric d
    s_variant      |x-z| + |x+z-2y|                     on reals

    ``claimed_b`` is the relaxation constant the construction is claimed
    to satisfy; it is never asserted silently, ``verify_axioms`` and
    ``minimal_b`` exist to check it.
    """

    kind: str
    base: BaseMetric = None
    p: float = 2.0
    c: float = 1.0
    claimed_b: float = 1.0

    def __post_init__(self):
        if self.kind not in SB_KINDS:
            raise InputError(f"unknown S_b-metric kind {self.kind!r}")
        if self.kind == "power_sum":
            if self.base is None:
                raise InputError("power_sum needs a base metric")
            if self.p <= 1.0:
                raise InputError(f"power_sum exponent must be > 1, got {self.p}")
            if self.c <= 0.0:
                raise InputError(f"power_sum scale must be > 0, got {self.c}")
        if self.kind == "from_b_metric" and self.base is None:
            raise InputError("from_b_metric needs a base metric")
        if self.kind == "s_variant" and self.base is not None:
            raise InputError("s_variant takes no base metric")
        if self.claimed_b < 1.0:
            raise InputError(f"claimed_b must be >= 1, got {self.claimed_b}")

    @classmethod
    def power_sum(cls, base, p, c=1.0, claimed_b=1.0):
        return cls(kind="power_sum", base=base, p=float(p), c=float(c),
                   claimed_b=float(claimed_b))

    @classmethod
    def from_b_metric(cls, base):
        return cls(kind="from_b_metric", base=base, claimed_b=base.b)

    @classmethod
    def s_variant(cls):
        return cls(kind="s_variant", claimed_b=1.0)

    # -- scalar evaluation ------------------------------------------------

    def eval(self, x, y, z):
        x = normalize_point(x)
        y = normalize_point(y)
        z = normalize_point(z)
        if self.kind == "power_sum":
            return self.c * (self.base.eval(x, y) + self.base.eval(y, z)
                             + self.base.eval(x, z)) ** self.p
        if self.kind == "from_b_metric":
            return self.base.eval(x, z) + self.base.eval(y, z)
        self._check_line(x)
        self._check_line(y)
        self._check_line(z)
        xx, yy, zz = x[0], y[0], z[0]
        return abs(xx - zz) + abs(xx + zz - 2 * yy)

    def _check_line(self, x):
        if isinstance(x, str) or len(x) != 1:
            raise InputError("s_variant is defined on reals only")

    def check_points(self, points):
        if self.kind == "s_variant":
            for pt in points:
                self._check_line(pt)
        else:
            self.base.check_points(points)

    # -- vectorized evaluation --------------------------------------------

    def base_pairs(self, sample):
        """Base pair-distance matrix, or None for the base-free construction."""
        if self.kind == "s_variant":
            return None
        return self.base.pair_matrix(sample)

    def pair_matrix(self, sample, base=None):
        """P[i, j] = S(x_i, x_i, x_j) over the sample."""
        if self.kind == "s_variant":
            line = sample.coords[:, 0]
            a = line[None, :]
            x = line[:, None]
            return np.abs(x - a) + np.abs((x + a) - 2 * x)
        B = self.base_pairs(sample) if base is None else base
        if self.kind == "power_sum":
            return self.c * ((0.0 + B) + B) ** self.p
        return B + B

    def anchor_values(self, sample, anchor):
        """u[i] = S(x_i, x_i, anchor) over the sample, bit-matching eval()."""
        if self.kind == "s_variant":
            anchor = normalize_point(anchor)
            self._check_line(anchor)
            x = sample.coords[:, 0]
            a = anchor[0]
            return np.abs(x - a) + np.abs((x + a) - 2 * x)
        Ba = self.base.to_anchor(sample, anchor)
        if self.kind == "power_sum":
            return self.c * ((0.0 + Ba) + Ba) ** self.p
        return Ba + Ba

    def triple_rows(self, sample, i, base=None):
        """T[j, k] = S(x_i, x_j, x_k) for a fixed first point."""
        if self.kind == "s_variant":
            line = sample.coords[:, 0]
            xx = line[i]
            first = np.abs(xx - line)[None, :]
            return first + np.abs((xx + line)[None, :] - (2 * line)[:, None])
        B = self.base_pairs(sample) if base is None else base
        if self.kind == "power_sum":
            return self.c * ((B[i][:, None] + B) + B[i][None, :]) ** self.p
        return B[i][None, :] + B


def eval_sb(m, x, y, z):
    """Evaluate an S_b-metric construction at a triple of points."""
    return m.eval(x, y, z)


def sb_from_b_metric(d):
    """Lift a base metric d to the S_b-metric (x,y,z) -> d(x,z) + d(y,z).

    The claimed relaxation constant is inherited from d.
    """
    return SbMetric.from_b_metric(d)


@dataclass(frozen=True)
class DerivedBMetric:
    """Two-argument metric induced from a symmetric S_b-metric by
    d(x, y) = S(x, x, y).  ``b_bound`` is the empirically verified
    triangle constant, twice the source's claimed constant."""

    source: SbMetric
    b_bound: float

    def eval(self, x, y):
        return self.source.eval(x, x, y)


def b_metric_from_sb(m, sample, tol=DEFAULT_TOL):
    """Induce the two-argument metric d(x,y) = S(x,x,y) from `m`.

    Requires S(x,x,y) = S(y,y,x) on the sample; the violating pairs are
    attached to the error otherwise.
    """
    ok, witnesses = check_symmetry(sample, tol=tol)
    if not ok:
        raise SymmetryError(
            "source is not symmetric on the sample", witnesses=witnesses)
    return DerivedBMetric(source=m, b_bound=2.0 * m.claimed_b)


@dataclass(frozen=True)
class GridSpec:
    """A uniform rectangular grid: `steps` nodes per axis on [lo, hi]^dim,
    expanded in row-major order (last axis fastest)."""

    dim: int
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.dim < 1:
            raise InputError(f"grid dim must be >= 1, got {self.dim}")
        if self.steps < 1:
            raise InputError(f"grid steps must be >= 1, got {self.steps}")
        if self.hi < self.lo:
            raise InputError("grid needs hi >= lo")

    def axis(self):
        """Node coordinates along one axis.

        Computed as lo + (i * (hi - lo)) / (steps - 1) so that simple
        rational nodes (halves, quarters, tenths) land exactly.
        """
        if self.steps == 1:
            return np.asarray([self.lo], dtype=float)
        i = np.arange(self.steps, dtype=float)
        return self.lo + (i * (self.hi - self.lo)) / (self.steps - 1)

    def points(self):
        axis = self.axis()
        mesh = np.meshgrid(*([axis] * self.dim), indexing="ij")
        stacked = np.stack([m.ravel() for m in mesh], axis=1)
        return [tuple(row) for row in stacked]


class SpaceSample:
    """A finite ordered list of distinct points together with an
    S_b-metric construction and a claimed relaxation constant.

    The point order is fixed; every report refers to points by index.
    """

    def __init__(self, points, metric, claimed_b=None, grid=None):
        self.points = [normalize_point(p) for p in points]
        if not self.points:
            raise InputError("a sample needs at least one point")
        kinds = {isinstance(p, str) for p in self.points}
        if len(kinds) > 1:
            raise InputError("sample mixes labeled and vector points")
        self.labeled = kinds == {True}
        if not self.labeled:
            dims = {len(p) for p in self.points}
            if len(dims) > 1:
                raise InputError(f"sample mixes point dimensions {sorted(dims)}")
            self.dim = dims.pop()
            self.coords = np.asarray(self.points, dtype=float)
        else:
            self.dim = None
            self.coords = None
        self._index = {}
        for i, p in enumerate(self.points):
            if p in self._index:
                raise InputError(f"duplicate point {format_point(p)}")
            self._index[p] = i
        metric.check_points(self.points)
        self.metric = metric
        b = metric.claimed_b if claimed_b is None else float(claimed_b)
        if b < 1.0:
            raise InputError(f"claimed_b must be >= 1, got {b}")
        self.claimed_b = b
        self.grid = grid

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def index_of(self, point):
        """Index of an exactly matching sample point; InputError if absent."""
        p = normalize_point(point)
        try:
            return self._index[p]
        except KeyError:
            raise InputError(f"point {format_point(p)} is not in the sample")

    def contains(self, point):
        return normalize_point(point) in self._index


# -- axiom verification ---------------------------------------------------

@dataclass(frozen=True)
class S1Violation:
    """An ordered triple breaking the vanishing axiom."""
    i: int
    j: int
    k: int
    value: float
    expected_zero: bool


@dataclass(frozen=True)
class S2Violation:
    """An ordered quadruple breaking the relaxed tetrahedral inequality."""
    i: int
    j: int
    k: int
    a: int
    value: float
    bound: float
    ratio: float = None


@dataclass
class AxiomReport:
    """Outcome of the exhaustive axiom sweep at a given constant b."""

    b: float
    s1_violations: list = field(default_factory=list)
    s2_violations: list = field(default_factory=list)
    s1_total: int = 0
    s2_total: int = 0
    minimal_b_estimate: float = None
    symmetric: bool = True
    truncated: bool = False

    @property
    def ok(self):
        return self.s1_total == 0 and self.s2_total == 0


def _quad_sweep(sample, b, tol, max_violations, collect):
    """Shared O(n^4) sweep over ordered quadruples.

    Returns (s1_violations, s2_violations, s1_total, s2_total,
    max_ratio, any_positive_denominator).  Partitioned over the first
    index and merged in index order, so the result does not depend on
    the worker count.
    """
    n = len(sample)
    metric = sample.metric
    base = metric.base_pairs(sample)
    P = metric.pair_matrix(sample, base=base)
    # Q[j, k, a] = P[j, a] + P[k, a]; shared, read-only across workers.
    Q = P[:, None, :] + P[None, :, :]

    def sweep(rows):
        s1 = []
        s2 = []
        s1_total = 0
        s2_total = 0
        best = 0.0
        any_pos = False
        for i in rows:
            T = metric.triple_rows(sample, i, base=base)
            # vanishing axiom: zero exactly on the all-equal triple
            zeroish = np.abs(T) <= tol
            diag = zeroish[i, i]
            if not diag:
                s1_total += 1
                if collect and (max_violations is None or len(s1) < max_violations):
                    s1.append(S1Violation(i, i, i, float(T[i, i]), True))
            zeroish[i, i] = False
            if zeroish.any():
                hits = np.argwhere(zeroish)
                s1_total += len(hits)
                if collect:
                    for j, k in hits:
                        if max_violations is not None and len(s1) >= max_violations:
                            break
                        s1.append(S1Violation(i, int(j), int(k), float(T[j, k]), False))
            # relaxed tetrahedral inequality against every fourth point
            D = Q + P[i][None, None, :]
            any_pos = any_pos or bool((D > 0.0).any())
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(D > 0.0, T[:, :, None] / D, 0.0)
            best = max(best, float(ratios.max()))
            if b is not None:
                bound = b * D
                excess = T[:, :, None] - bound
                scale = np.maximum(1.0, np.maximum(T[:, :, None], bound))
                mask = excess > tol * scale
                count = int(mask.sum())
                s2_total += count
                if count and collect:
                    for j, k, a in np.argwhere(mask):
                        if max_violations is not None and len(s2) >= max_violations:
                            break
                        d = float(D[j, k, a])
                        ratio = float(T[j, k] / d) if d > 0.0 else None
                        s2.append(S2Violation(i, int(j), int(k), int(a),
                                              float(T[j, k]), float(bound[j, k, a]),
                                              ratio))
        return s1, s2, s1_total, s2_total, best, any_pos

    parts = map_ranges(n, sweep)
    s1 = [v for part in parts for v in part[0]]
    s2 = [v for part in parts for v in part[1]]
    if max_violations is not None:
        s1 = s1[:max_violations]
        s2 = s2[:max_violations]
    s1_total = sum(part[2] for part in parts)
    s2_total = sum(part[3] for part in parts)
    best = max(part[4] for part in parts)
    any_pos = any(part[5] for part in parts)
    return s1, s2, s1_total, s2_total, best, any_pos


def verify_axioms(sample, b=None, tol=DEFAULT_TOL, max_violations=None):
    """Check both axioms over every ordered triple and quadruple.

    `b` defaults to the sample's claimed constant.  Violations are data,
    not errors; they are listed in index order.  `max_violations` caps
    the listed witnesses per axiom (totals stay exact).
    """
    b = float(sample.claimed_b if b is None else b)
    s1, s2, s1_total, s2_total, best, any_pos = _quad_sweep(
        sample, b, tol, max_violations, collect=True)
    sym_ok, _ = check_symmetry(sample, tol=tol)
    truncated = len(s1) < s1_total or len(s2) < s2_total
    return AxiomReport(
        b=b,
        s1_violations=s1,
        s2_violations=s2,
        s1_total=s1_total,
        s2_total=s2_total,
        minimal_b_estimate=best if any_pos else None,
        symmetric=sym_ok,
        truncated=truncated,
    )


def minimal_b(sample, tol=DEFAULT_TOL):
    """Tightest constant making the tetrahedral inequality hold on the
    sample: the maximum of S(x,y,z) / (S(x,x,a) + S(y,y,a) + S(z,z,a))
    over quadruples with a positive denominator.

    Raises UndefinedMinimalB when no such quadruple exists (one-point
    samples).
    """
    _, _, _, _, best, any_pos = _quad_sweep(
        sample, None, tol, max_violations=0, collect=False)
    if not any_pos:
        raise UndefinedMinimalB(
            "every admissible denominator vanishes on this sample")
    return best


def check_symmetry(sample, tol=DEFAULT_TOL):
    """Whether S(x,x,y) = S(y,y,x) for all sample pairs.

    Returns (ok, witnesses); each witness is (i, j, forward, backward).
    """
    P = sample.metric.pair_matrix(sample)
    diff = np.abs(P - P.T)
    scale = np.maximum(1.0, np.maximum(np.abs(P), np.abs(P.T)))
    bad = np.argwhere(diff > tol * scale)
    witnesses = [(int(i), int(j), float(P[i, j]), float(P[j, i]))
                 for i, j in bad if i < j]
    return (not witnesses), witnesses
