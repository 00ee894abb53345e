"""Deterministic report documents.

Each document is a JSON object with a fixed field order and a trailing
``summary`` list of human-readable lines.  Nothing volatile (timestamps,
thread counts, machine names) is included, so identical inputs produce
byte-identical documents no matter how many sweep workers ran.
"""

import json

from .metricspace import format_point, point_payload


def render_document(kind, payload, summary):
    doc = {"report": kind}
    doc.update(payload)
    doc["summary"] = summary
    return json.dumps(doc, indent=2) + "\n"


def _point_field(sample, i):
    return {"index": i, "point": point_payload(sample.points[i])}


def axioms_document(sample, report, max_witnesses=None):
    s1 = report.s1_violations
    s2 = report.s2_violations
    if max_witnesses is not None:
        s1 = s1[:max_witnesses]
        s2 = s2[:max_witnesses]
    payload = {
        "points": len(sample),
        "b": report.b,
        "s1_total": report.s1_total,
        "s2_total": report.s2_total,
        "s1_violations": [
            {"triple": [v.i, v.j, v.k], "value": v.value,
             "expected_zero": v.expected_zero} for v in s1],
        "s2_violations": [
            {"quadruple": [v.i, v.j, v.k, v.a], "value": v.value,
             "bound": v.bound, "ratio": v.ratio} for v in s2],
        "witnesses_truncated": (report.truncated
                                or len(s1) < report.s1_total
                                or len(s2) < report.s2_total),
        "minimal_b_estimate": report.minimal_b_estimate,
        "symmetric": report.symmetric,
    }
    verdict = "PASS" if report.ok else "FAIL"
    summary = [
        f"axioms at b={report.b!r}: {verdict}",
        f"vanishing-axiom violations: {report.s1_total}",
        f"inequality violations: {report.s2_total}",
        f"minimal b estimate: {report.minimal_b_estimate!r}",
    ]
    return render_document("axioms", payload, summary)


def minb_document(sample, value):
    payload = {"points": len(sample), "minimal_b": value}
    return render_document(
        "minimal_b", payload, [f"minimal b on the sample: {value!r}"])


def figure_document(sample, figure, members, values):
    payload = {
        "kind": figure.kind,
        "anchors": [point_payload(a) for a in figure.anchors],
        "r": figure.r,
        "tol": figure.tol,
        "points": len(sample),
        "locus": [dict(_point_field(sample, i), value=float(values[i]))
                  for i in members],
    }
    summary = [
        f"{figure.kind} locus at r={figure.r!r}: {len(members)} point(s)",
        "members: " + (", ".join(format_point(sample.points[i]) for i in members)
                       if members else "(none)"),
    ]
    return render_document("figure", payload, summary)


def _contraction_payload(sample, report):
    return {
        "kind": report.kind,
        "alpha": report.alpha,
        "checked": report.checked,
        "vacuous_count": report.vacuous_count,
        "excluded": [_point_field(sample, i) for i in report.excluded],
        "undefined": [_point_field(sample, i) for i in report.undefined],
        "violations": [
            dict(_point_field(sample, v.index), lhs=v.lhs, rhs=v.rhs,
                 expression=v.expression) for v in report.violations],
    }


def contraction_document(sample, report):
    payload = _contraction_payload(sample, report)
    verdict = "PASS" if report.ok else "FAIL"
    summary = [
        f"{report.kind}-contraction at alpha={report.alpha!r}: {verdict}",
        f"violations: {len(report.violations)}, undefined: {len(report.undefined)}, "
        f"vacuous: {report.vacuous_count}",
    ]
    return render_document("contraction", payload, summary)


def verify_document(sample, report):
    payload = {
        "kind": report.kind,
        "anchors": [point_payload(a) for a in report.anchors],
        "r": report.r,
        "r_sampled": report.r_sampled,
        "trivial": report.trivial,
        "hypotheses": report.hypotheses,
        "hypotheses_hold": report.hypotheses_hold,
        "contraction": _contraction_payload(sample, report.contraction),
        "fixed_count": len(report.fix_indices),
        "figure_locus": [_point_field(sample, i) for i in report.figure_locus],
        "subset_holds": report.subset_holds,
        "counterexamples": [_point_field(sample, i) for i in report.counterexamples],
    }
    if report.trivial:
        claim = "trivially true (the map moves nothing, r is undefined)"
    elif report.subset_holds:
        claim = "holds"
    else:
        claim = "FAILS"
    summary = [
        f"fixed-figure check, kind {report.kind}: r={report.r!r}"
        + (" (sampled)" if report.r_sampled else ""),
        f"hypotheses hold: {report.hypotheses_hold}",
        f"figure inside the fixed-point set: {claim}",
        "locus: " + (", ".join(format_point(sample.points[i])
                               for i in report.figure_locus)
                     if report.figure_locus else "(empty)"),
    ]
    return render_document("verify", payload, summary)


def falsify_document(sample, report, counterexamples):
    payload = {
        "kind": report.kind,
        "anchors": [point_payload(a) for a in report.anchors],
        "r": report.r,
        "hypotheses": report.hypotheses,
        "counterexamples": [
            dict(_point_field(sample, ce.index),
                 contraction_verdict=ce.contraction_verdict,
                 hypotheses=ce.hypotheses)
            for ce in counterexamples],
    }
    summary = [
        f"falsifier, kind {report.kind}: "
        + (f"{len(counterexamples)} counterexample(s)" if counterexamples
           else "no counterexamples"),
    ]
    return render_document("falsify", payload, summary)
