"""Convex body representation: validation, boundary addressing, containment."""

import math
import random
from fractions import Fraction

import pytest

from immobilize2d.body import (
    Containment,
    ConvexBody,
    EXACT_POLYGON,
    Segment,
    boundary_point,
    contains_interior,
    element_length,
    is_full_disc,
    locate,
    offset_along_boundary,
    perimeter,
    polygon,
    tangents_at,
    validate,
)
from immobilize2d.errors import (
    BodyValidationError,
    NearDegenerateError,
    NotOnBoundaryError,
)
from immobilize2d.fixtures import unit_disc, unit_square
from immobilize2d.geom import vec


def test_validate_accepts_square_and_triangle():
    validate(unit_square())
    validate(polygon([(0, 0), (3, 0), (0, 4)]))


def test_validate_rejects_clockwise_winding():
    with pytest.raises(BodyValidationError) as e:
        validate(polygon([(0, 0), (0, 1), (1, 1), (1, 0)]))
    assert e.value.code == "NOT_CCW"


def test_validate_rejects_reflex_vertex():
    with pytest.raises(BodyValidationError) as e:
        validate(polygon([(0, 0), (4, 0), (4, 4), (2, 1), (0, 4)]))
    assert e.value.code == "NOT_CONVEX"


def test_validate_rejects_open_chain():
    square = unit_square()
    broken = ConvexBody(elements=square.elements[:-1], mode=EXACT_POLYGON)
    with pytest.raises(BodyValidationError) as e:
        validate(broken)
    assert e.value.code == "NOT_CLOSED"


def test_validate_rejects_collinear_chain():
    with pytest.raises(BodyValidationError) as e:
        validate(polygon([(0, 0), (1, 0), (2, 0)]))
    assert e.value.code == "NOT_CONVEX"


def test_validate_rejects_zero_length_segment():
    body = ConvexBody(
        elements=(
            Segment(a=vec(0, 0), b=vec(0, 0)),
            Segment(a=vec(0, 0), b=vec(1, 0)),
            Segment(a=vec(1, 0), b=vec(0, 0)),
        ),
        mode=EXACT_POLYGON,
    )
    with pytest.raises(BodyValidationError) as e:
        validate(body)
    assert e.value.code == "EMPTY_INTERIOR"


def test_validate_rejects_single_element():
    body = ConvexBody(elements=(Segment(a=vec(0, 0), b=vec(1, 0)),), mode=EXACT_POLYGON)
    with pytest.raises(BodyValidationError) as e:
        validate(body)
    assert e.value.code == "EMPTY_INTERIOR"


def test_validate_accepts_disc_in_mixed_mode():
    validate(unit_disc())


def test_boundary_point_wraps_param_one():
    sq = unit_square()
    end = boundary_point(sq, 0, Fraction(1))
    start = boundary_point(sq, 1, Fraction(0))
    assert end == start
    assert end.element_index == 1
    assert end.param == 0


def test_boundary_point_rejects_bad_addresses():
    sq = unit_square()
    with pytest.raises(NotOnBoundaryError):
        boundary_point(sq, 4, Fraction(0))
    with pytest.raises(NotOnBoundaryError):
        boundary_point(sq, 0, Fraction(3, 2))
    with pytest.raises(NotOnBoundaryError):
        boundary_point(sq, 0, Fraction(-1, 4))


def test_boundary_point_coords_interpolate_segments():
    sq = unit_square()
    bp = boundary_point(sq, 0, Fraction(1, 4))
    assert bp.coords == vec(Fraction(-1, 2), -1)


def test_tangents_smooth_versus_corner():
    sq = unit_square()
    mid = boundary_point(sq, 0, Fraction(1, 2))
    t = tangents_at(sq, mid)
    assert t.u_left == t.u_right == vec(2, 0)

    corner = boundary_point(sq, 1, Fraction(0))
    t = tangents_at(sq, corner)
    assert t.u_left == vec(2, 0)
    assert t.u_right == vec(0, 2)


def test_tangents_on_disc_are_smooth():
    disc = unit_disc()
    bp = boundary_point(disc, 1, Fraction(0))
    t = tangents_at(disc, bp)
    assert t.u_left == t.u_right


def test_contains_interior_square():
    sq = unit_square()
    assert contains_interior(sq, vec(0, 0)) is Containment.INTERIOR
    assert contains_interior(sq, vec(1, Fraction(1, 2))) is Containment.BOUNDARY
    assert contains_interior(sq, vec(1, 1)) is Containment.BOUNDARY
    assert contains_interior(sq, vec(2, 0)) is Containment.EXTERIOR
    assert contains_interior(sq, vec(1, Fraction(101, 100))) is Containment.EXTERIOR


def test_contains_interior_disc():
    disc = unit_disc()
    assert contains_interior(disc, vec(0, 0)) is Containment.INTERIOR
    assert contains_interior(disc, vec(2, 2)) is Containment.EXTERIOR
    assert contains_interior(disc, vec(1, 0)) is Containment.BOUNDARY


def test_contains_interior_flags_tolerance_zone():
    disc = unit_disc()
    eps = Fraction(1, 10**12)
    with pytest.raises(NearDegenerateError):
        contains_interior(disc, vec(1 + eps, 0))


def test_locate_recovers_canonical_addresses():
    sq = unit_square()
    corner = locate(sq, vec(1, -1))
    assert (corner.element_index, corner.param) == (1, Fraction(0))
    mid = locate(sq, vec(1, 0))
    assert (mid.element_index, mid.param) == (1, Fraction(1, 2))
    with pytest.raises(NotOnBoundaryError):
        locate(sq, vec(0, 0))


def test_element_length_exact_and_inexact():
    n, exact = element_length(Segment(a=vec(0, 0), b=vec(3, 4)))
    assert exact and n == 5
    n, exact = element_length(Segment(a=vec(0, 0), b=vec(1, 1)))
    assert not exact
    assert abs(float(n) - 2 ** 0.5) < 1e-9


def test_perimeter_of_square():
    assert perimeter(unit_square()) == 8


def test_offset_along_boundary_wraps_both_ways():
    sq = unit_square()
    start = boundary_point(sq, 0, Fraction(0))
    assert offset_along_boundary(sq, start, Fraction(1)).coords == vec(0, -1)
    assert offset_along_boundary(sq, start, Fraction(8)) == start
    back = offset_along_boundary(sq, start, Fraction(-1))
    assert back.coords == vec(-1, 0)
    assert offset_along_boundary(sq, start, Fraction(-8)) == start


def test_offset_crosses_corners():
    sq = unit_square()
    start = boundary_point(sq, 0, Fraction(1, 2))
    moved = offset_along_boundary(sq, start, Fraction(5, 2))
    assert moved.coords == vec(1, Fraction(1, 2))


def test_is_full_disc():
    ok, center = is_full_disc(unit_disc())
    assert ok and center == vec(0, 0)
    ok, center = is_full_disc(unit_square())
    assert not ok and center is None


def test_bounding_box():
    lo, hi = unit_square().bounding_box()
    assert (lo, hi) == (vec(-1, -1), vec(1, 1))
    lo, hi = unit_disc().bounding_box()
    assert (lo, hi) == (vec(-1, -1), vec(1, 1))


def test_vertices_of_polygon():
    sq = unit_square()
    assert sq.vertices() == [vec(-1, -1), vec(1, -1), vec(1, 1), vec(-1, 1)]


def test_random_bodies_survive_validation():
    rng = random.Random(12)
    for _ in range(25):
        k = rng.randint(3, 8)
        pts = []
        while len(pts) < k:
            # Build a fan of direction-sorted integer steps; polygon() does
            # not sanitise, so retry until the walk is strictly convex.
            raw = [(rng.randint(-7, 7), rng.randint(-7, 7)) for _ in range(k)]
            raw = [p for p in raw if p != (0, 0)]
            raw.sort(key=lambda p: math.atan2(p[1], p[0]))
            pts = []
            x = y = 0
            for dx, dy in raw:
                pts.append((x, y))
                x += dx
                y += dy
            if (x, y) != (0, 0):
                pts = []
                continue
            try:
                validate(polygon(pts))
            except BodyValidationError:
                pts = []
