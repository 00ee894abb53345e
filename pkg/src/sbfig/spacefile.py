"""Space and map documents.

Both formats are JSON.  A space document has exactly the keys
``points``, ``metric``, and ``b``:

    {
      "points": [{"grid": {"dim": 1, "min": -1, "max": 1, "steps": 201}},
                 -7, "-sqrt(2)", "sqrt(2)", "7/3", 7, 8, 21],
      "metric": {"kind": "s_variant"},
      "b": 1
    }

Point entries are numbers, coordinate lists, grid objects (expanded in
place, row-major), or strings.  Strings are labels when the metric is
table-based and numeric expressions otherwise; expressions support
+ - * / **, parentheses, sqrt(), and the constants pi and e, and are
evaluated to full float precision at parse time so that radicals match
grid values exactly.

A map document has exactly the key ``overrides``, a list of
[source, image] pairs; unlisted points map to themselves.

Unknown keys are rejected everywhere.
"""

import ast
import json
import math

from .contractions import SelfMap
from .errors import InputError
from .metricspace import (
    BaseMetric,
    GridSpec,
    SbMetric,
    SpaceSample,
    point_payload,
)

_ALLOWED_CALLS = {"sqrt": math.sqrt}
_ALLOWED_NAMES = {"pi": math.pi, "e": math.e}


def eval_scalar(text):
    """Evaluate a numeric expression string ("7/3", "-sqrt(2)") to a float."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise InputError(f"bad numeric expression {text!r}: {exc.msg}")
    return float(_eval_node(tree.body, text))


def _eval_node(node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        v = _eval_node(node.operand, text)
        return v if isinstance(node.op, ast.UAdd) else -v
    if isinstance(node, ast.BinOp) and isinstance(
            node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)):
        a = _eval_node(node.left, text)
        b = _eval_node(node.right, text)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
        return a ** b
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        fn = _ALLOWED_CALLS.get(node.func.id)
        if fn is not None and len(node.args) == 1 and not node.keywords:
            return fn(_eval_node(node.args[0], text))
    if isinstance(node, ast.Name) and node.id in _ALLOWED_NAMES:
        return _ALLOWED_NAMES[node.id]
    raise InputError(f"bad numeric expression {text!r}")


def _check_keys(obj, allowed, where):
    unknown = set(obj) - set(allowed)
    if unknown:
        raise InputError(f"unknown key(s) {sorted(unknown)} in {where}")


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: parse error at line {exc.lineno} column {exc.colno}: {exc.msg}")


def _parse_base(obj, where="metric.base"):
    if not isinstance(obj, dict):
        raise InputError(f"{where} must be an object")
    _check_keys(obj, {"kind", "p", "labels", "matrix", "b"}, where)
    kind = obj.get("kind")
    if kind == "abs":
        return BaseMetric.absolute()
    if kind == "lp":
        return BaseMetric.lp(float(obj.get("p", 2)))
    if kind == "table":
        if "labels" not in obj or "matrix" not in obj:
            raise InputError("table base metric needs labels and matrix")
        b = obj.get("b")
        return BaseMetric.table(obj["labels"], obj["matrix"],
                                b=None if b is None else float(b))
    raise InputError(f"unknown base metric kind {kind!r}")


def _parse_metric(obj, claimed_b):
    if not isinstance(obj, dict):
        raise InputError("metric must be an object")
    _check_keys(obj, {"kind", "p", "c", "base"}, "metric")
    kind = obj.get("kind")
    if kind == "s_variant":
        return SbMetric(kind="s_variant", claimed_b=claimed_b)
    if kind == "from_b_metric":
        base = _parse_base(obj.get("base", {"kind": "abs"}))
        return SbMetric(kind="from_b_metric", base=base, claimed_b=claimed_b)
    if kind == "power_sum":
        base = _parse_base(obj.get("base", {"kind": "abs"}))
        return SbMetric(kind="power_sum", base=base,
                        p=float(obj.get("p", 2)), c=float(obj.get("c", 1)),
                        claimed_b=claimed_b)
    raise InputError(f"unknown metric kind {kind!r}")


def _parse_grid(obj):
    _check_keys(obj, {"dim", "min", "max", "steps"}, "grid")
    for key in ("dim", "min", "max", "steps"):
        if key not in obj:
            raise InputError(f"grid spec is missing {key!r}")
    return GridSpec(dim=int(obj["dim"]), lo=float(obj["min"]),
                    hi=float(obj["max"]), steps=int(obj["steps"]))


def _parse_point_entry(entry, labeled):
    if isinstance(entry, str):
        return entry if labeled else eval_scalar(entry)
    if isinstance(entry, (int, float)):
        if labeled:
            raise InputError("labeled spaces list label strings as points")
        return float(entry)
    if isinstance(entry, list):
        if labeled:
            raise InputError("labeled spaces list label strings as points")
        return tuple(
            eval_scalar(v) if isinstance(v, str) else float(v) for v in entry)
    raise InputError(f"cannot interpret point entry {entry!r}")


def parse_space(path):
    """Parse a space document into a SpaceSample.

    Grid entries expand in place; the first grid's spec is retained on
    the sample so slice rendering can recover the mesh.
    """
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise InputError(f"{path}: space document must be an object")
    _check_keys(doc, {"points", "metric", "b"}, "space document")
    for key in ("points", "metric", "b"):
        if key not in doc:
            raise InputError(f"{path}: space document is missing {key!r}")
    claimed_b = float(doc["b"])
    metric = _parse_metric(doc["metric"], claimed_b)
    labeled = metric.kind != "s_variant" and metric.base.kind == "table"

    entries = doc["points"]
    if not isinstance(entries, list):
        raise InputError("points must be a list")
    points = []
    grid = None
    for entry in entries:
        if isinstance(entry, dict):
            _check_keys(entry, {"grid"}, "points entry")
            if labeled:
                raise InputError("labeled spaces cannot contain grids")
            g = _parse_grid(entry["grid"])
            points.extend(g.points())
            if grid is None:
                grid = g
        else:
            points.append(_parse_point_entry(entry, labeled))
    return SpaceSample(points, metric, claimed_b=claimed_b, grid=grid)


def parse_map(path, labeled=False):
    """Parse a map document into a SelfMap."""
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise InputError(f"{path}: map document must be an object")
    _check_keys(doc, {"overrides"}, "map document")
    overrides = doc.get("overrides", [])
    if not isinstance(overrides, list):
        raise InputError("overrides must be a list of [source, image] pairs")
    pairs = []
    for entry in overrides:
        if not isinstance(entry, list) or len(entry) != 2:
            raise InputError("overrides must be a list of [source, image] pairs")
        pairs.append((_parse_point_entry(entry[0], labeled),
                      _parse_point_entry(entry[1], labeled)))
    return SelfMap(overrides=tuple(pairs))


def parse_point_text(text, labeled=False):
    """Parse a point given on the command line: a label, an expression,
    or comma-separated expressions for a vector."""
    if labeled:
        return text
    parts = text.split(",")
    if len(parts) == 1:
        return eval_scalar(parts[0])
    return tuple(eval_scalar(p) for p in parts)


def _metric_payload(metric):
    if metric.kind == "s_variant":
        return {"kind": "s_variant"}
    base = metric.base
    if base.kind == "table":
        base_doc = {"kind": "table", "labels": list(base.labels),
                    "matrix": [list(row) for row in base.matrix], "b": base.b}
    elif base.kind == "lp":
        base_doc = {"kind": "lp", "p": base.p}
    else:
        base_doc = {"kind": "abs"}
    if metric.kind == "from_b_metric":
        return {"kind": "from_b_metric", "base": base_doc}
    return {"kind": "power_sum", "p": metric.p, "c": metric.c, "base": base_doc}


def serialize_space(sample):
    """Canonical space document for a sample: explicit points, metric,
    and claimed constant.  Parsing then re-serializing is idempotent."""
    doc = {
        "points": [point_payload(p) for p in sample.points],
        "metric": _metric_payload(sample.metric),
        "b": sample.claimed_b,
    }
    return json.dumps(doc, indent=2) + "\n"


def serialize_map(selfmap):
    doc = {"overrides": [[point_payload(s), point_payload(t)]
                         for s, t in selfmap.overrides]}
    return json.dumps(doc, indent=2) + "\n"
