"""Exact feasibility of small planar constraint systems.

Systems are conjunctions of half-plane constraints ``n . p >= c`` (or strict
``>``), solved by eliminating one variable at a time (pairing each lower
bound on y with each upper bound), which stays exact over rationals and
yields an interval witness for free.  Sector systems add one twist: a large
sector is a union of two half-planes, so the system splits into up to
``2**k`` conjunctive branches, visited in a fixed lexicographic order.

With a positive tolerance every solve runs two extra "twin" passes, one
with all constraints relaxed by a tolerance-scaled slack and one with all
tightened; a verdict that flips between the twins is reported as
near-degenerate rather than silently trusted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstraintLimitError, TooManyUnionSectorsError
from .geom import Vec, dot, norm1, rot90_ccw, same_ray
from .sectors import (
    INTERSECTION,
    UNION,
    CircArc,
    DirectionSet,
    Sector,
    grow_arc,
    intersect_direction_sets,
    shrink_arc,
)

MAX_CONSTRAINTS = 64
MAX_UNION_SECTORS = 16
_SNAP_BITS = 60


@dataclass(frozen=True)
class LinearConstraint:
    """``nx * x + ny * y >= c`` (``> c`` when strict)."""

    nx: Fraction
    ny: Fraction
    c: Fraction
    strict: bool = False
    scale: Fraction = Fraction(1)

    def margin(self, p: Vec) -> Fraction:
        return self.nx * p.x + self.ny * p.y - self.c

    def holds(self, p: Vec) -> bool:
        m = self.margin(p)
        return m > 0 if self.strict else m >= 0

    def shifted(self, slack: Fraction) -> "LinearConstraint":
        """Positive slack relaxes the constraint, negative tightens it."""
        return LinearConstraint(self.nx, self.ny, self.c - slack * self.scale, self.strict, self.scale)


def halfplane_constraint(base: Vec, direction: Vec, side: str, closed: bool) -> LinearConstraint:
    """Constraint for one side of the oriented line through ``base``.

    The left side is where ``cross(direction, p - base)`` is positive.
    """
    n = rot90_ccw(direction)
    c = dot(n, base)
    if side == "right":
        n, c = -n, -c
    scale = norm1(n) * (Fraction(1) + norm1(base))
    return LinearConstraint(n.x, n.y, c, strict=not closed, scale=scale)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Vec | None
    near_degenerate: bool = False


def _merge_bound(best, candidate, is_lower: bool):
    if best is None:
        return candidate
    bv, bs = best
    cv, cs = candidate
    if cv == bv:
        return (bv, bs or cs)
    if (cv > bv) == is_lower:
        return candidate
    return best


def _solve_interval(lowers, uppers):
    """Feasibility and a witness for a 1D system of bounds (value, strict)."""
    lo = None
    for b in lowers:
        lo = _merge_bound(lo, b, is_lower=True)
    hi = None
    for b in uppers:
        hi = _merge_bound(hi, b, is_lower=False)
    if lo is not None and hi is not None:
        if lo[0] > hi[0]:
            return False, None
        if lo[0] == hi[0]:
            if lo[1] or hi[1]:
                return False, None
            return True, lo[0]
        return True, (lo[0] + hi[0]) / 2
    if lo is not None:
        return True, lo[0] + 1
    if hi is not None:
        return True, hi[0] - 1
    return True, Fraction(0)


def _feasible_exact(constraints: list[LinearConstraint]) -> tuple[bool, Vec | None]:
    """Eliminate y, solve for x, back-substitute.  Exact, no tolerance."""
    y_lowers = []  # constraints with ny > 0: y >= (c - nx x)/ny
    y_uppers = []  # ny < 0
    x_only = []  # ny == 0
    for lc in constraints:
        if lc.ny > 0:
            y_lowers.append(lc)
        elif lc.ny < 0:
            y_uppers.append(lc)
        else:
            x_only.append(lc)

    x_lowers, x_uppers = [], []

    def add_x(nx: Fraction, c: Fraction, strict: bool) -> bool:
        """Record nx * x >= c; False means an outright contradiction."""
        if nx > 0:
            x_lowers.append((c / nx, strict))
        elif nx < 0:
            x_uppers.append((c / nx, strict))
        elif c > 0 or (strict and c == 0):
            return False
        return True

    for lc in x_only:
        if not add_x(lc.nx, lc.c, lc.strict):
            return False, None
    for li, uj in itertools.product(y_lowers, y_uppers):
        a = uj.nx * li.ny - li.nx * uj.ny
        c = li.ny * uj.c - uj.ny * li.c
        if not add_x(a, c, li.strict or uj.strict):
            return False, None

    ok, x = _solve_interval(x_lowers, x_uppers)
    if not ok:
        return False, None
    ok, y = _solve_interval(
        [((lc.c - lc.nx * x) / lc.ny, lc.strict) for lc in y_lowers],
        [((lc.c - lc.nx * x) / lc.ny, lc.strict) for lc in y_uppers],
    )
    if not ok:  # cannot happen: the pairing made the x interval exact
        return False, None
    return True, Vec(x, y)


def _snap_witness(w: Vec, constraints: list[LinearConstraint]) -> Vec:
    """Round to the coarsest dyadic grid that still satisfies everything.

    Exact witnesses from elimination can carry huge denominators and sit
    close to strict boundaries; snapping picks a nearby point with small
    terms and fatter margins.  Falls back to the exact witness when the
    point is pinned to a non-dyadic equality.
    """
    for k in range(_SNAP_BITS + 1):
        den = 1 << k
        snapped = Vec(Fraction(round(w.x * den), den), Fraction(round(w.y * den), den))
        if all(lc.holds(snapped) for lc in constraints):
            return snapped
    return w


def linear_feasible(constraints: list[LinearConstraint], tol: Fraction = Fraction(0)) -> FeasibilityResult:
    if len(constraints) > MAX_CONSTRAINTS:
        raise ConstraintLimitError(f"{len(constraints)} constraints exceed the cap of {MAX_CONSTRAINTS}")
    ok, w = _feasible_exact(constraints)
    if ok:
        w = _snap_witness(w, constraints)
    flagged = False
    if tol > 0:
        relaxed, _ = _feasible_exact([lc.shifted(tol) for lc in constraints])
        tightened, _ = _feasible_exact([lc.shifted(-tol) for lc in constraints])
        flagged = relaxed != tightened
    return FeasibilityResult(ok, w, flagged)


# -- sector systems ----------------------------------------------------------


def _sector_choices(s: Sector) -> list[list[LinearConstraint]]:
    """Conjunctive alternatives whose union is the sector."""
    left = halfplane_constraint(s.n_left.base, s.n_left.dir, s.side, s.closed)
    right = halfplane_constraint(s.n_right.base, s.n_right.dir, s.side, s.closed)
    if s.combinator == INTERSECTION:
        return [[left, right]]
    if same_ray(s.n_left.dir, s.n_right.dir):
        return [[left]]  # smooth contact: both normals bound the same half-plane
    return [[left], [right]]


def sector_branches(sectors: list[Sector]):
    """All conjunctive branches of the sector intersection, lexicographically.

    The branch order fixes which witness a nonempty system reports.
    """
    alternatives = [_sector_choices(s) for s in sectors]
    n_union = sum(1 for alt in alternatives if len(alt) > 1)
    if n_union > MAX_UNION_SECTORS:
        raise TooManyUnionSectorsError(
            f"{n_union} union sectors would expand to {2 ** n_union} branches (cap {2 ** MAX_UNION_SECTORS})"
        )
    for pick in itertools.product(*alternatives):
        yield [lc for group in pick for lc in group]


_QUALITY_GOOD = Fraction(1, 64)
_IMPROVE_BOXES = (Fraction(8), Fraction(128), Fraction(2048))
_IMPROVE_BISECTIONS = 24


def _min_margin(constraints: list[LinearConstraint], p: Vec) -> Fraction:
    return min(lc.margin(p) / (abs(lc.nx) + abs(lc.ny)) for lc in constraints)


def _witness_quality(constraints: list[LinearConstraint], p: Vec, anchor: Vec, scale: Fraction) -> Fraction:
    """Smallest normalized margin, discounted by the distance from the anchor.

    A witness far from the contact region needs a proportionally larger
    margin to describe the same angular clearance, so the discount makes the
    ratio comparable across near and far candidates.  ``scale`` is the size
    of the contact region itself, which keeps the ratio dimensionless.
    """
    dist = norm1(Vec(p.x - anchor.x, p.y - anchor.y))
    return _min_margin(constraints, p) / (scale + dist)


def _tightened(constraints: list[LinearConstraint], t: Fraction) -> list[LinearConstraint]:
    out = []
    for lc in constraints:
        out.append(LinearConstraint(lc.nx, lc.ny, lc.c + t * (abs(lc.nx) + abs(lc.ny)), False, lc.scale))
    return out


def _box_around(anchor: Vec, size: Fraction) -> list[LinearConstraint]:
    one = Fraction(1)
    return [
        LinearConstraint(one, Fraction(0), anchor.x - size),
        LinearConstraint(-one, Fraction(0), -anchor.x - size),
        LinearConstraint(Fraction(0), one, anchor.y - size),
        LinearConstraint(Fraction(0), -one, -anchor.y - size),
    ]


def _improve_witness(constraints: list[LinearConstraint], w: Vec, anchor: Vec, scale: Fraction) -> Vec:
    """Re-center a feasibility witness when it hugs a constraint boundary.

    Witnesses straight out of elimination can sit a hair away from one of the
    bounding lines, far from the contact region.  Such points are terrible
    certificates: the rotation family they describe clears the body only in a
    vanishing window of magnitudes.  When the original witness has a poor
    margin-to-distance ratio, this searches a few boxes around the anchor for
    the deepest interior point (largest smallest normalized margin, found by
    bisection on the tightening level) and keeps whichever candidate scores
    best.  The result always satisfies the original constraints.
    """
    if not constraints:
        return w
    best, best_q = w, _witness_quality(constraints, w, anchor, scale)
    if best_q >= _QUALITY_GOOD:
        return w
    for factor in _IMPROVE_BOXES:
        box = _box_around(anchor, factor * scale)
        ok, base = _feasible_exact(list(constraints) + box)
        if not ok:
            continue
        lo, point = Fraction(0), base
        hi = scale
        for _ in range(10):
            ok, pt = _feasible_exact(_tightened(constraints, hi) + box)
            if not ok:
                break
            lo, point = hi, pt
            hi *= 4
        for _ in range(_IMPROVE_BISECTIONS):
            if hi - lo <= lo / 8:
                break
            mid = (lo + hi) / 2
            ok, pt = _feasible_exact(_tightened(constraints, mid) + box)
            if ok:
                lo, point = mid, pt
            else:
                hi = mid
        q = _witness_quality(constraints, point, anchor, scale)
        if q > best_q:
            best, best_q = point, q
    if best == w:
        return w
    # Snap to a coarse dyadic point only where that keeps most of the margin.
    floor = _min_margin(constraints, best) / 2
    for k in range(_SNAP_BITS + 1):
        den = 1 << k
        snapped = Vec(Fraction(round(best.x * den), den), Fraction(round(best.y * den), den))
        if _min_margin(constraints, snapped) >= floor and all(lc.holds(snapped) for lc in constraints):
            return snapped
    return best


def sectors_intersection(sectors: list[Sector], tol: Fraction = Fraction(0)) -> FeasibilityResult:
    """Is the intersection of the sectors nonempty, and where?"""
    feasible = False
    witness = None
    n = len(sectors)
    if n:
        anchor = Vec(
            sum((s.apex.x for s in sectors), Fraction(0)) / n,
            sum((s.apex.y for s in sectors), Fraction(0)) / n,
        )
        spread = Fraction(1) + max(
            norm1(Vec(s.apex.x - anchor.x, s.apex.y - anchor.y)) for s in sectors
        )
    else:
        anchor, spread = Vec(Fraction(0), Fraction(0)), Fraction(1)
    for branch in sector_branches(sectors):
        res = linear_feasible(branch)
        if res.feasible:
            feasible = True
            witness = _improve_witness(branch, res.witness, anchor, spread)
            break
    flagged = False
    if tol > 0:
        flagged = _twin_any(sectors, tol) != _twin_any(sectors, -tol)
    return FeasibilityResult(feasible, witness, flagged)


def _twin_any(sectors: list[Sector], tol: Fraction) -> bool:
    for branch in sector_branches(sectors):
        ok, _ = _feasible_exact([lc.shifted(tol) for lc in branch])
        if ok:
            return True
    return False


# -- direction systems -------------------------------------------------------


def _perturb_set(ds: DirectionSet, t: Fraction, relax: bool) -> DirectionSet:
    if ds.full:
        return ds
    arcs: list[CircArc] = []
    for a in ds.arcs:
        if relax:
            arcs.append(grow_arc(a, t))
        else:
            shrunk = shrink_arc(a, t)
            if shrunk is not None:
                arcs.append(shrunk)
    return DirectionSet(tuple(arcs))


def _unit_l1(d: Vec) -> Vec:
    return d.scaled(1 / norm1(d))


def directions_intersection(sets: list[DirectionSet], tol: Fraction = Fraction(0)) -> FeasibilityResult:
    """Common direction of all sets; the witness is an L1-normalized direction."""
    common = intersect_direction_sets(sets)
    if common.full:
        witness = Vec(Fraction(1), Fraction(0))
    elif common.is_empty():
        witness = None
    else:
        witness = _unit_l1(common.arcs[0].start)
    flagged = False
    if tol > 0:
        grown = intersect_direction_sets([_perturb_set(ds, tol, relax=True) for ds in sets])
        shrunk = intersect_direction_sets([_perturb_set(ds, tol, relax=False) for ds in sets])
        flagged = grown.is_empty() != shrunk.is_empty()
    return FeasibilityResult(not common.is_empty(), witness, flagged)
