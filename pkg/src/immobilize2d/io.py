"""JSON interchange for bodies, points, verdicts, placements, and reports.

Scalars serialize as canonical fraction strings ("3/4", "-2"); the parser
additionally accepts decimal strings ("0.75"), integers, and floats, all
converted exactly.  Serialization builds dicts in a fixed key order and
`dumps` renders them stably, so identical data yields identical bytes.

Arc endpoints are stored as ``from``/``to`` vectors pointing from the
center to the endpoints (exactly the in-memory representation), keeping
round-trips lossless.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .body import (
    Arc,
    BoundaryPoint,
    ConvexBody,
    Segment,
    boundary_point,
    locate,
)
from .classify import PlacementDescriptor, Verdict, Witness
from .errors import InvalidPointError
from .geom import Vec, to_scalar
from .oracle import EscapeReport


def scalar_to_json(x: Fraction) -> str:
    return str(x)


def scalar_from_json(v) -> Fraction:
    if isinstance(v, str):
        v = v.strip()
        if "/" in v:
            num, den = v.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(v)  # decimal or integer string, parsed exactly
    return to_scalar(v)


def vec_to_json(v: Vec) -> dict:
    return {"x": scalar_to_json(v.x), "y": scalar_to_json(v.y)}


def vec_from_json(d) -> Vec:
    try:
        return Vec(scalar_from_json(d["x"]), scalar_from_json(d["y"]))
    except (KeyError, TypeError) as exc:
        raise InvalidPointError(f"malformed vector {d!r}") from exc


def body_to_json(body: ConvexBody) -> dict:
    elements = []
    for el in body.elements:
        if isinstance(el, Segment):
            elements.append({"type": "segment", "a": vec_to_json(el.a), "b": vec_to_json(el.b)})
        else:
            elements.append(
                {
                    "type": "arc",
                    "center": vec_to_json(el.center),
                    "radius": scalar_to_json(el.radius),
                    "from": vec_to_json(el.from_dir),
                    "to": vec_to_json(el.to_dir),
                }
            )
    return {"mode": body.mode, "elements": elements}


def body_from_json(doc) -> ConvexBody:
    mode = doc["mode"]
    elements = []
    for entry in doc["elements"]:
        if entry["type"] == "segment":
            elements.append(Segment(vec_from_json(entry["a"]), vec_from_json(entry["b"])))
        elif entry["type"] == "arc":
            elements.append(
                Arc(
                    vec_from_json(entry["center"]),
                    scalar_from_json(entry["radius"]),
                    vec_from_json(entry["from"]),
                    vec_from_json(entry["to"]),
                )
            )
        else:
            raise InvalidPointError(f"unknown element type {entry.get('type')!r}")
    return ConvexBody(tuple(elements), mode)


def points_to_json(pts) -> list:
    return [{"element": bp.element_index, "param": scalar_to_json(bp.param)} for bp in pts]


def points_from_json(doc, body: ConvexBody) -> list[BoundaryPoint]:
    out = []
    for entry in doc:
        if "coords" in entry:
            out.append(locate(body, vec_from_json(entry["coords"])))
        elif "element" in entry:
            out.append(boundary_point(body, int(entry["element"]), scalar_from_json(entry["param"])))
        else:
            raise InvalidPointError(f"point entry needs 'element'/'param' or 'coords': {entry!r}")
    return out


def _witness_to_json(w: Witness | None):
    if w is None:
        return None
    if w.kind == "rotation_center":
        return {"kind": w.kind, "point": vec_to_json(w.point), "sense": w.sense}
    return {
        "kind": w.kind,
        "direction": vec_to_json(w.direction),
        "translation": vec_to_json(w.translation),
    }


def witness_from_json(d) -> Witness | None:
    if d is None:
        return None
    if d["kind"] == "rotation_center":
        return Witness(kind="rotation_center", point=vec_from_json(d["point"]), sense=d["sense"])
    return Witness(
        kind="direction",
        direction=vec_from_json(d["direction"]),
        translation=vec_from_json(d["translation"]),
    )


def verdict_to_json(verdict: Verdict, tol: Fraction | None = None, durations: dict | None = None) -> dict:
    tests = {}
    for t in verdict.tests:
        entry = {"status": t.status}
        entry["witness"] = vec_to_json(t.witness) if t.witness is not None else None
        entry["near_degenerate"] = t.near_degenerate
        tests[t.name] = entry
    metadata = {
        "mode": verdict.mode,
        "tolerances": {"tol": scalar_to_json(tol) if tol is not None else None},
        "near_degenerate": verdict.near_degenerate,
    }
    if durations is not None:
        metadata["durations"] = durations
    return {
        "question": verdict.question,
        "status": verdict.status,
        "tests": tests,
        "witness": _witness_to_json(verdict.witness),
        "metadata": metadata,
    }


def placement_to_json(placement: PlacementDescriptor) -> dict:
    return {
        "delta": scalar_to_json(placement.delta),
        "entries": [
            {
                "anchor": {"element": e.anchor.element_index, "param": scalar_to_json(e.anchor.param)},
                "tag": e.tag,
                "pair": points_to_json([e.minus, e.plus]),
            }
            for e in placement.entries
        ],
    }


def escape_report_to_json(report: EscapeReport | None) -> dict:
    if report is None:
        return {"escape": None}
    body = {
        "family": report.family,
        "magnitudes": [scalar_to_json(m) for m in report.magnitudes],
        "penetration_free": list(report.penetration_free),
    }
    if report.family == "rotation":
        body["center"] = vec_to_json(report.center)
        body["sense"] = report.sense
    else:
        body["direction"] = vec_to_json(report.direction)
    return {"escape": body}


def dumps(doc) -> str:
    """Canonical rendering: two-space indent, fixed key order, trailing newline."""
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def loads(text: str):
    return json.loads(text)
