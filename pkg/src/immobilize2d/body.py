"""Convex bodies bounded by a counterclockwise chain of segments and circular arcs.

Conventions
-----------
* The boundary is a closed CCW chain; the body lies to the left of the
  direction of travel.
* An arc element stores its circle (center, radius) plus the exact offset
  vectors ``from_dir`` / ``to_dir`` from the center to its start and end
  point, so the chain closes exactly even when the radius itself is only
  approximate.  Arcs always run counterclockwise and sweep strictly less
  than a half turn.
* ``mode`` is "exact_polygon" (segments only, every predicate is a
  certificate) or "mixed_inexact" (arcs allowed, coordinates snapped from
  floats; predicates with margin below the tolerance are reported as near
  degenerate instead of being trusted).
* A boundary point is addressed as (element index, param in [0, 1)); a
  vertex is canonically addressed on its departing element at param 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    BodyValidationError,
    NearDegenerateError,
    NotOnBoundaryError,
)
from .geom import Vec, cross, dot, norm1, rot90_ccw, to_scalar

EXACT_POLYGON = "exact_polygon"
MIXED_INEXACT = "mixed_inexact"

DEFAULT_TOLERANCE = Fraction(1, 10**9)

PARAM_SNAP_DEN = 2**40  # denominator cap when a param is recovered from floats


@dataclass(frozen=True)
class Segment:
    a: Vec
    b: Vec

    def start(self) -> Vec:
        return self.a

    def end(self) -> Vec:
        return self.b

    def direction(self) -> Vec:
        return self.b - self.a

    def start_tangent(self) -> Vec:
        return self.direction()

    def end_tangent(self) -> Vec:
        return self.direction()


@dataclass(frozen=True)
class Arc:
    """CCW circular arc; from_dir/to_dir are exact center-to-endpoint offsets."""

    center: Vec
    radius: Fraction
    from_dir: Vec
    to_dir: Vec

    def start(self) -> Vec:
        return self.center + self.from_dir

    def end(self) -> Vec:
        return self.center + self.to_dir

    def start_tangent(self) -> Vec:
        return rot90_ccw(self.from_dir)

    def end_tangent(self) -> Vec:
        return rot90_ccw(self.to_dir)


BoundaryElement = Union[Segment, Arc]


@dataclass(frozen=True)
class ConvexBody:
    elements: tuple[BoundaryElement, ...]
    mode: str = EXACT_POLYGON

    def tolerance(self) -> Fraction:
        return Fraction(0) if self.mode == EXACT_POLYGON else DEFAULT_TOLERANCE

    def vertex(self, i: int) -> Vec:
        return self.elements[i % len(self.elements)].start()

    def vertices(self) -> list[Vec]:
        return [el.start() for el in self.elements]

    def bounding_box(self) -> tuple[Vec, Vec]:
        xs: list[Fraction] = []
        ys: list[Fraction] = []
        for el in self.elements:
            for p in (el.start(), el.end()):
                xs.append(p.x)
                ys.append(p.y)
            if isinstance(el, Arc):
                xs.extend([el.center.x - el.radius, el.center.x + el.radius])
                ys.extend([el.center.y - el.radius, el.center.y + el.radius])
        return Vec(min(xs), min(ys)), Vec(max(xs), max(ys))


@dataclass(frozen=True)
class BoundaryPoint:
    element_index: int
    param: Fraction
    coords: Vec


@dataclass(frozen=True)
class TangentData:
    """Boundary directions at a point: u_left arrives, u_right departs (CCW travel)."""

    u_left: Vec
    u_right: Vec


class Containment(enum.Enum):
    INTERIOR = "INTERIOR"
    BOUNDARY = "BOUNDARY"
    EXTERIOR = "EXTERIOR"


def polygon(points: list[tuple] | list[Vec], mode: str = EXACT_POLYGON) -> ConvexBody:
    """Build a body from a CCW list of vertices (validated separately)."""
    pts = [p if isinstance(p, Vec) else Vec(to_scalar(p[0]), to_scalar(p[1])) for p in points]
    els = tuple(Segment(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts)))
    return ConvexBody(els, mode)


def _snap_sign(value: Fraction, tol_scaled: Fraction) -> tuple[int, bool]:
    """Sign with |value| <= tol treated as zero; flag set when that snapping bites."""
    if value > tol_scaled:
        return 1, False
    if value < -tol_scaled:
        return -1, False
    return 0, value != 0


# -- validation --------------------------------------------------------------


def _turn_directions(body: ConvexBody) -> list[Vec]:
    dirs: list[Vec] = []
    for el in body.elements:
        dirs.append(el.start_tangent())
        dirs.append(el.end_tangent())
    return dirs


def _total_turn(dirs: list[Vec]) -> float:
    """Total left turn of the direction sequence in radians (float is ample:
    chains that wind more than once are a full turn away from 2*pi)."""
    total = 0.0
    for u, v in zip(dirs, dirs[1:] + [dirs[0]]):
        total += math.atan2(float(cross(u, v)), float(dot(u, v)))
    return total


def validate(body: ConvexBody) -> None:
    """Raise BodyValidationError (NOT_CLOSED, NOT_CONVEX, NOT_CCW, EMPTY_INTERIOR) if invalid."""
    els = body.elements
    if len(els) < 2:
        raise BodyValidationError("EMPTY_INTERIOR", 0, "need at least two boundary elements")
    tol = body.tolerance()

    for i, el in enumerate(els):
        if isinstance(el, Segment):
            if el.a == el.b:
                raise BodyValidationError("EMPTY_INTERIOR", i, "zero-length segment")
        else:
            if body.mode == EXACT_POLYGON:
                raise BodyValidationError("NOT_CONVEX", i, "arc element in exact_polygon mode")
            if el.radius <= 0:
                raise BodyValidationError("EMPTY_INTERIOR", i, "non-positive arc radius")
            sweep_cross = cross(el.from_dir, el.to_dir)
            if sweep_cross <= 0:
                raise BodyValidationError("NOT_CONVEX", i, "arc must sweep CCW by less than pi")
            for off in (el.from_dir, el.to_dir):
                r2 = dot(off, off)
                if abs(r2 - el.radius * el.radius) > tol * 4 * el.radius * el.radius + tol:
                    raise BodyValidationError("NOT_CLOSED", i, "arc endpoint off its circle")

    for i, el in enumerate(els):
        nxt = els[(i + 1) % len(els)]
        if el.end() != nxt.start():
            gap = el.end() - nxt.start()
            if body.mode == EXACT_POLYGON or norm1(gap) > tol:
                raise BodyValidationError("NOT_CLOSED", i, "chain gap after element")

    # junction turns: left or straight everywhere; track signs to tell
    # a clockwise chain apart from a genuinely non-convex one
    neg = pos = 0
    first_bad = -1
    for i, el in enumerate(els):
        nxt = els[(i + 1) % len(els)]
        u, v = el.end_tangent(), nxt.start_tangent()
        sign, _ = _snap_sign(cross(u, v), tol * norm1(u) * norm1(v))
        if sign < 0:
            neg += 1
            if first_bad < 0:
                first_bad = i
        elif sign > 0:
            pos += 1
        if sign >= 0 and cross(u, v) == 0 and dot(u, v) < 0:
            raise BodyValidationError("NOT_CONVEX", i, "boundary reverses direction")
    if neg and not pos:
        raise BodyValidationError("NOT_CCW", first_bad, "chain is oriented clockwise")
    if neg:
        raise BodyValidationError("NOT_CONVEX", first_bad, "right turn in boundary chain")

    verts = [el.start() for el in els]
    twice_area = sum(cross(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts)))
    if body.mode != EXACT_POLYGON:
        # arc caps add area beyond the vertex polygon
        cap = 0.0
        for el in els:
            if isinstance(el, Arc):
                sweep = _arc_sweep(el)
                cap += float(el.radius) ** 2 * (sweep - math.sin(sweep))
        if float(twice_area) + cap <= float(tol):
            raise BodyValidationError("EMPTY_INTERIOR", 0, "boundary encloses no area")
    elif twice_area <= 0:
        raise BodyValidationError("EMPTY_INTERIOR", 0, "boundary encloses no area")

    if abs(_total_turn(_turn_directions(body)) - 2 * math.pi) > 1.0:
        raise BodyValidationError("NOT_CONVEX", 0, "boundary does not wind exactly once")


# -- boundary points ---------------------------------------------------------


def _arc_sweep(el: Arc) -> float:
    """CCW sweep angle of the arc, in (0, pi), from float trig."""
    a0 = math.atan2(float(el.from_dir.y), float(el.from_dir.x))
    a1 = math.atan2(float(el.to_dir.y), float(el.to_dir.x))
    sweep = a1 - a0
    while sweep <= 0:
        sweep += 2 * math.pi
    return sweep


def element_point(el: BoundaryElement, param: Fraction) -> Vec:
    """Coordinates of the boundary point at ``param`` in [0, 1] on the element."""
    if isinstance(el, Segment):
        return el.a + el.direction().scaled(param)
    if param == 0:
        return el.start()
    if param == 1:
        return el.end()
    a0 = math.atan2(float(el.from_dir.y), float(el.from_dir.x))
    ang = a0 + float(param) * _arc_sweep(el)
    r = float(el.radius)
    return el.center + Vec(Fraction(r * math.cos(ang)), Fraction(r * math.sin(ang)))


def boundary_point(body: ConvexBody, element_index: int, param) -> BoundaryPoint:
    """Construct the canonical BoundaryPoint at (element, param)."""
    n = len(body.elements)
    if not 0 <= element_index < n:
        raise NotOnBoundaryError(f"element index {element_index} out of range")
    param = to_scalar(param)
    if param == 1:
        element_index = (element_index + 1) % n
        param = Fraction(0)
    if not 0 <= param < 1:
        raise NotOnBoundaryError(f"param {param} outside [0, 1)")
    coords = element_point(body.elements[element_index], param)
    return BoundaryPoint(element_index, param, coords)


def tangents_at(body: ConvexBody, bp: BoundaryPoint) -> TangentData:
    el = body.elements[bp.element_index]
    if bp.param == 0:
        prev = body.elements[(bp.element_index - 1) % len(body.elements)]
        return TangentData(u_left=prev.end_tangent(), u_right=el.start_tangent())
    if isinstance(el, Segment):
        d = el.direction()
        return TangentData(d, d)
    t = rot90_ccw(bp.coords - el.center)
    return TangentData(t, t)


# -- containment -------------------------------------------------------------


def _element_margin(el: BoundaryElement, p: Vec) -> tuple[Fraction, Fraction]:
    """(margin, scale): margin > 0 strictly inside the element's supporting region.

    For a segment the region is the closed left half-plane of its line; for an
    arc it is the union of the closed disc and the closed left half-plane of
    its chord.  The intersection of these regions over all elements is the
    body.  ``scale`` makes margin/scale roughly a distance.
    """
    if isinstance(el, Segment):
        d = el.direction()
        return cross(d, p - el.a), norm1(d)
    off = p - el.center
    disc_m = el.radius * el.radius - dot(off, off)
    disc_scale = 2 * el.radius
    chord = el.end() - el.start()
    chord_m = cross(chord, p - el.start())
    chord_scale = norm1(chord)
    # the union is satisfied by the better of the two normalized margins
    if disc_m * chord_scale >= chord_m * disc_scale:
        return disc_m, disc_scale
    return chord_m, chord_scale


def contains_interior(body: ConvexBody, p: Vec, tol: Fraction | None = None) -> Containment:
    """INTERIOR / BOUNDARY / EXTERIOR classification of an arbitrary point.

    In inexact mode (tol > 0) a nonzero margin within tol of zero raises
    NearDegenerateError carrying the snapped best guess.
    """
    if tol is None:
        tol = body.tolerance()
    worst = 1
    degenerate = False
    for el in body.elements:
        m, scale = _element_margin(el, p)
        sign, flagged = _snap_sign(m, tol * scale)
        if flagged:
            degenerate = True
            continue
        if sign < 0:
            # certainly outside this element's region, hence outside the body
            return Containment.EXTERIOR
        worst = min(worst, sign)
    status = Containment.INTERIOR if worst > 0 else Containment.BOUNDARY
    if degenerate:
        raise NearDegenerateError("containment margin below tolerance", guess=status)
    return status


# -- locate ------------------------------------------------------------------


def _locate_on_segment(el: Segment, p: Vec, tol: Fraction) -> Fraction | None:
    d = el.direction()
    if abs(cross(d, p - el.a)) > tol * norm1(d):
        return None
    t = dot(p - el.a, d) / dot(d, d)
    if 0 <= t <= 1:
        return t
    return None


def _locate_on_arc(el: Arc, p: Vec, tol: Fraction) -> Fraction | None:
    off = p - el.center
    if off.is_zero():
        return None
    if abs(dot(off, off) - el.radius * el.radius) > tol * 4 * el.radius * el.radius + tol:
        return None
    slack = tol * norm1(el.from_dir) * norm1(off)
    if cross(el.from_dir, off) < -slack or cross(off, el.to_dir) < -slack:
        return None
    a0 = math.atan2(float(el.from_dir.y), float(el.from_dir.x))
    ang = math.atan2(float(off.y), float(off.x))
    sweep = _arc_sweep(el)
    frac = (ang - a0) / sweep
    if frac < -0.5:
        # atan2 wrapped; genuine on-arc points sit in [0, 1] up to noise
        frac += 2 * math.pi / sweep
    frac = min(max(frac, 0.0), 1.0)
    return Fraction(round(frac * PARAM_SNAP_DEN), PARAM_SNAP_DEN)


def locate(body: ConvexBody, p: Vec, tol: Fraction | None = None) -> BoundaryPoint:
    """Find the canonical boundary address of a point lying on the boundary.

    The queried coordinates are kept verbatim (they are on the element within
    tol); a junction hit resolves to the departing element at param 0.
    """
    if tol is None:
        tol = body.tolerance()
    hits: list[tuple[int, Fraction]] = []
    for i, el in enumerate(body.elements):
        t = (_locate_on_segment if isinstance(el, Segment) else _locate_on_arc)(el, p, tol)
        if t is None:
            continue
        if t == 1 or (body.mode != EXACT_POLYGON and p == el.end()):
            hits.append(((i + 1) % len(body.elements), Fraction(0)))
        else:
            hits.append((i, t))
    if not hits:
        raise NotOnBoundaryError("point is not on the boundary")
    for i, t in hits:
        if t == 0 and p == body.elements[i].start():
            return BoundaryPoint(i, Fraction(0), p)
    i, t = hits[0]
    return BoundaryPoint(i, t, p)


# -- arclength ---------------------------------------------------------------


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def element_length(el: BoundaryElement) -> tuple[Fraction, bool]:
    """(length, exact) with an exact rational length whenever one exists.

    Irrational lengths are snapped to a fixed rational once per element so
    that offset arithmetic stays exact and reversible; the snapped measure is
    within 1e-12 relative of the true arclength.
    """
    if isinstance(el, Segment):
        d = el.direction()
        exact = _rational_sqrt(dot(d, d))
        if exact is not None:
            return exact, True
        return Fraction(math.sqrt(float(dot(d, d)))).limit_denominator(10**12), False
    return Fraction(float(el.radius) * _arc_sweep(el)).limit_denominator(10**12), False


def perimeter(body: ConvexBody) -> Fraction:
    return sum((element_length(el)[0] for el in body.elements), Fraction(0))


def offset_along_boundary(body: ConvexBody, bp: BoundaryPoint, s) -> BoundaryPoint:
    """Walk a signed arclength s CCW (positive) along the boundary, wrapping."""
    s = to_scalar(s)
    lengths = [element_length(el)[0] for el in body.elements]
    total = sum(lengths)
    starts: list[Fraction] = []
    acc = Fraction(0)
    for ln in lengths:
        starts.append(acc)
        acc += ln
    pos = (starts[bp.element_index] + bp.param * lengths[bp.element_index] + s) % total
    for i in reversed(range(len(lengths))):
        if starts[i] <= pos:
            param = (pos - starts[i]) / lengths[i]
            return boundary_point(body, i, param)
    return boundary_point(body, 0, Fraction(0))


def is_full_disc(body: ConvexBody) -> tuple[bool, Vec | None]:
    """Detect a body whose boundary is one full circle (setwise rotation symmetry)."""
    arcs = [el for el in body.elements if isinstance(el, Arc)]
    if len(arcs) != len(body.elements) or not arcs:
        return False, None
    c, r = arcs[0].center, arcs[0].radius
    for el in arcs:
        if el.center != c or el.radius != r:
            return False, None
    return True, c
