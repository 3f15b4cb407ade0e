"""First-order sectors at a boundary contact.

At a contact point the inward left/right normals bound four sector families:

* ``L``       union of the open left half-planes of both normals
              (rotation centers whose small clockwise turns are not blocked
              at first order),
* ``R``       the same with right half-planes (counterclockwise turns),
* ``small_l`` intersection of the left half-planes (centers that survive the
              contact even when the point is perturbed to either side),
* ``small_r`` intersection of the right half-planes.

Direction sets are the circle traces of the closed sectors: a single closed
arc of directions d such that apex + d stays in the closed sector.  They
stand in for rotation centers at infinity, i.e. translations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .body import TangentData, _snap_sign
from .errors import NearDegenerateError
from .geom import (
    OrientedLine,
    Vec,
    cross,
    dot,
    norm1,
    rational_rotation,
    rot90_ccw,
    same_ray,
)

UNION = "UNION"
INTERSECTION = "INTERSECTION"

SECTOR_KINDS = ("L", "R", "small_l", "small_r")

_KIND_TABLE = {
    "L": (UNION, "left"),
    "R": (UNION, "right"),
    "small_l": (INTERSECTION, "left"),
    "small_r": (INTERSECTION, "right"),
}


def normals_at(apex: Vec, t: TangentData) -> tuple[OrientedLine, OrientedLine]:
    """Inward left/right normal lines at the contact (body on the left of travel)."""
    return (
        OrientedLine(apex, rot90_ccw(t.u_left)),
        OrientedLine(apex, rot90_ccw(t.u_right)),
    )


@dataclass(frozen=True)
class Sector:
    apex: Vec
    n_left: OrientedLine
    n_right: OrientedLine
    combinator: str  # UNION | INTERSECTION
    side: str  # left | right
    closed: bool
    kind: str


def make_sector(kind: str, closed: bool, apex: Vec, t: TangentData) -> Sector:
    if kind not in _KIND_TABLE:
        raise ValueError(f"unknown sector kind {kind!r}")
    combinator, side = _KIND_TABLE[kind]
    nl, nr = normals_at(apex, t)
    return Sector(apex, nl, nr, combinator, side, closed, kind)


def _half_margin(line: OrientedLine, side: str, p: Vec) -> tuple[Fraction, Fraction]:
    m = cross(line.dir, p - line.base)
    if side == "right":
        m = -m
    return m, norm1(line.dir)


def sector_contains(s: Sector, p: Vec, tol: Fraction = Fraction(0)) -> str:
    """"IN", "ON_BOUNDARY" (closed sectors only) or "OUT".

    Raises NearDegenerateError when tol > 0 and a deciding margin is within
    tol of zero without being exactly zero.
    """
    signs = []
    degenerate = False
    for line in (s.n_left, s.n_right):
        m, scale = _half_margin(line, s.side, p)
        sign, flagged = _snap_sign(m, tol * scale * norm1(p - s.apex))
        degenerate = degenerate or flagged
        signs.append(sign)
    agg = max(signs) if s.combinator == UNION else min(signs)
    if degenerate:
        guess = "IN" if agg > 0 else ("ON_BOUNDARY" if s.closed and agg == 0 else "OUT")
        raise NearDegenerateError("sector margin below tolerance", guess=guess)
    if agg > 0:
        return "IN"
    if agg == 0 and s.closed:
        return "ON_BOUNDARY"
    return "OUT"


# -- direction sets ----------------------------------------------------------


@dataclass(frozen=True)
class CircArc:
    """Closed CCW arc of directions from ``start`` to ``end`` (non-normalized rays).

    The pair of rays determines the arc: the sweep is the CCW angle from
    start to end in (0, 2*pi); equal rays denote a single direction.
    """

    start: Vec
    end: Vec

    def is_point(self) -> bool:
        return same_ray(self.start, self.end)


@dataclass(frozen=True)
class DirectionSet:
    arcs: tuple[CircArc, ...]
    full: bool = False

    def is_empty(self) -> bool:
        return not self.full and not self.arcs


FULL_CIRCLE = DirectionSet(arcs=(), full=True)


def arc_contains(arc: CircArc, d: Vec) -> bool:
    """Exact membership of direction d in the closed CCW arc."""
    s, e = arc.start, arc.end
    c_se = cross(s, e)
    if c_se == 0:
        if dot(s, e) > 0:  # point arc
            return same_ray(s, d)
        return cross(s, d) > 0 or same_ray(d, s) or same_ray(d, e)  # half turn
    if c_se > 0:  # sweep < pi: the closed convex cone spanned by s and e
        return cross(s, d) >= 0 and cross(d, e) >= 0
    return cross(s, d) >= 0 or cross(d, e) >= 0  # sweep > pi


def direction_set_contains(ds: DirectionSet, d: Vec) -> bool:
    if ds.full:
        return True
    return any(arc_contains(a, d) for a in ds.arcs)


def direction_set(kind: str, apex: Vec, t: TangentData) -> DirectionSet:
    """Directions d with apex + d inside the closed sector of the same kind.

    Only the closed variants have circle traces worth testing: ``L`` gives a
    closed arc of sweep pi + turn angle, ``small_l`` one of sweep
    pi - turn angle; the right-side traces are their antipodes.
    """
    nl = rot90_ccw(t.u_left)
    nr = rot90_ccw(t.u_right)
    if kind == "L":
        if same_ray(nl, nr):
            return DirectionSet((CircArc(nl, -nl),))
        return DirectionSet((CircArc(nl, -nr),))
    if kind == "small_l":
        if same_ray(nl, nr):
            return DirectionSet((CircArc(nl, -nl),))
        return DirectionSet((CircArc(nr, -nl),))
    if kind in ("R", "small_r"):
        inner = direction_set("L" if kind == "R" else "small_l", apex, t)
        return DirectionSet(tuple(CircArc(-a.start, -a.end) for a in inner.arcs))
    raise ValueError(f"unknown sector kind {kind!r}")


# -- arc intersection --------------------------------------------------------


def _anch_class(u: Vec, d: Vec) -> int:
    c = cross(u, d)
    if c == 0:
        return 0 if dot(u, d) > 0 else 2
    return 1 if c > 0 else 3


def _pos_lt(u: Vec, a: Vec, b: Vec) -> bool:
    """a strictly earlier than b in CCW order anchored at u."""
    ca, cb = _anch_class(u, a), _anch_class(u, b)
    if ca != cb:
        return ca < cb
    if ca in (0, 2):
        return False
    return cross(a, b) > 0


def _pos_eq(u: Vec, a: Vec, b: Vec) -> bool:
    ca, cb = _anch_class(u, a), _anch_class(u, b)
    return ca == cb and (ca in (0, 2) or cross(a, b) == 0)


def _pos_le(u: Vec, a: Vec, b: Vec) -> bool:
    return _pos_eq(u, a, b) or _pos_lt(u, a, b)


def _arc_intersect(A: CircArc, B: CircArc) -> list[CircArc]:
    """Intersection of two closed arcs: at most two closed arcs (or points).

    Works in the chart anchored at A's start, where A covers positions
    [0, ea] with ea in (0, 2*pi).  B is one interval when it does not pass
    the anchor and two pieces (tail [pb, 2*pi] plus head [0, qb]) when it
    does; each piece clips against [0, ea] independently.
    """
    if A.is_point():
        return [A] if arc_contains(B, A.start) else []
    if B.is_point():
        return [B] if arc_contains(A, B.start) else []
    u = A.start
    out: list[CircArc] = []
    if _anch_class(u, B.start) == 0:
        # B starts on the anchor ray: single interval [0, sweep(B)]
        hi = A.end if _pos_lt(u, A.end, B.end) else B.end
        out.append(CircArc(B.start, hi))
    elif _pos_lt(u, B.start, B.end):
        # no wrap: [pb, qb] with pb > 0
        hi = A.end if _pos_lt(u, A.end, B.end) else B.end
        if _pos_le(u, B.start, hi):
            out.append(CircArc(B.start, hi))
    else:
        # B passes the anchor.  Head piece [0, qb] (the anchor alone when
        # B ends exactly on the anchor ray), then tail piece [pb, ea].
        if _anch_class(u, B.end) == 0:
            out.append(CircArc(u, u))
        else:
            hi = A.end if _pos_lt(u, A.end, B.end) else B.end
            out.append(CircArc(u, hi))
        if _pos_le(u, B.start, A.end):
            out.append(CircArc(B.start, A.end))
    return out


def intersect_direction_sets(sets: list[DirectionSet]) -> DirectionSet:
    """Fold intersection; the result may have more arcs than its inputs."""
    acc = FULL_CIRCLE
    for ds in sets:
        if ds.full:
            continue
        if acc.full:
            acc = ds
            continue
        arcs: list[CircArc] = []
        for a in acc.arcs:
            for b in ds.arcs:
                arcs.extend(_arc_intersect(a, b))
        acc = DirectionSet(tuple(arcs))
        if acc.is_empty():
            return acc
    return acc


def _rotate_dir(d: Vec, t: Fraction, ccw: bool) -> Vec:
    c, s = rational_rotation(t)
    if not ccw:
        s = -s
    return Vec(c * d.x - s * d.y, s * d.x + c * d.y)


def shrink_arc(arc: CircArc, t: Fraction) -> CircArc | None:
    """Pull both endpoints inward by the half-angle parameter t; None if emptied."""
    if arc.is_point():
        return None
    s2 = _rotate_dir(arc.start, 2 * t, ccw=True)
    # emptied when the sweep is at most twice the shrink angle
    if arc_contains(CircArc(arc.start, s2), arc.end):
        return None
    return CircArc(_rotate_dir(arc.start, t, ccw=True), _rotate_dir(arc.end, t, ccw=False))


def grow_arc(arc: CircArc, t: Fraction) -> CircArc:
    """Push both endpoints outward by the half-angle parameter t (capped below full)."""
    s2 = _rotate_dir(arc.start, 2 * t, ccw=False)
    if arc_contains(arc, s2):
        return arc  # would exceed the full circle; leave as is
    return CircArc(_rotate_dir(arc.start, t, ccw=False), _rotate_dir(arc.end, t, ccw=True))
