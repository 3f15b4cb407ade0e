"""Numeric escape-motion oracle: witness validation, sampling search, paths."""

from fractions import Fraction

import pytest

from immobilize2d import oracle
from immobilize2d.body import boundary_point
from immobilize2d.errors import InexactModeUnsupportedError, OutOfRangeError
from immobilize2d.fixtures import rectangle_remark, unit_disc, unit_square
from immobilize2d.geom import vec


def square_opposite_corners():
    sq = unit_square()
    return sq, [boundary_point(sq, 0, Fraction(0)), boundary_point(sq, 2, Fraction(0))]


def square_edge_midpoints():
    sq = unit_square()
    return sq, [boundary_point(sq, i, Fraction(1, 2)) for i in range(4)]


def test_corner_pair_rotation_validates_both_senses():
    sq, oc = square_opposite_corners()
    assert oracle.validate_rotation_witness(sq, oc, vec(0, 0), "CW")
    assert oracle.validate_rotation_witness(sq, oc, vec(0, 0), "CCW")


def test_midpoint_rotation_fails_validation():
    # Rotating the four edge midpoints about the center drags them onto the
    # inscribed circle's interior chords: every magnitude penetrates.
    sq, mids = square_edge_midpoints()
    assert not oracle.validate_rotation_witness(sq, mids, vec(0, 0), "CW")
    assert not oracle.validate_rotation_witness(sq, mids, vec(0, 0), "CCW")


def test_translation_witness_validation():
    fx = rectangle_remark()
    assert oracle.validate_translation_witness(fx.body, fx.points, vec(1, 0))
    assert oracle.validate_translation_witness(fx.body, fx.points, vec(-1, 0))
    assert not oracle.validate_translation_witness(fx.body, fx.points, vec(0, 1))
    assert not oracle.validate_translation_witness(fx.body, fx.points, vec(0, -1))


def test_validation_requires_exact_bodies():
    disc = unit_disc()
    pts = [boundary_point(disc, 0, Fraction(0))]
    with pytest.raises(InexactModeUnsupportedError):
        oracle.validate_rotation_witness(disc, pts, vec(2, 0), "CW")
    with pytest.raises(InexactModeUnsupportedError):
        oracle.validate_translation_witness(disc, pts, vec(1, 0))


def test_eventually_clear_accepts_late_windows():
    ok = oracle._eventually_clear
    assert ok([True, True, False, True, True, True])
    assert ok([False, False, True, True, True])
    assert not ok([True, True, True, True, False])
    assert not ok([True, True, False, True, False, True])
    assert ok([True, True])
    assert not ok([False, True])
    assert ok([True])
    assert not ok([False])
    assert not ok([])


def test_escape_search_finds_the_sliding_rectangle():
    fx = rectangle_remark()
    rep = oracle.escape_search(fx.body, fx.points, samples=300, seed=0)
    assert rep is not None
    assert rep.family == "translation"
    assert rep.direction in (vec(1, 0), vec(-1, 0))
    assert rep.magnitudes == oracle.DEFAULT_TRANSLATION_SCHEDULE
    assert all(rep.penetration_free)


def test_escape_search_finds_the_corner_pivot():
    sq, oc = square_opposite_corners()
    rep = oracle.escape_search(sq, oc, samples=400, seed=0)
    assert rep is not None
    assert rep.family == "rotation"
    assert rep.center == vec(0, 0)
    assert rep.sense == "CW"
    assert rep.magnitudes == oracle.DEFAULT_ROTATION_SCHEDULE


def test_escape_search_exhausts_on_pinned_midpoints():
    sq, mids = square_edge_midpoints()
    assert oracle.escape_search(sq, mids, samples=240, seed=0) is None


def test_escape_search_skips_the_disc_spin():
    # Spinning a disc about its own center moves no material: it must not be
    # reported as an escape for three spread contacts.
    disc = unit_disc()
    pts = [
        boundary_point(disc, 0, Fraction(0)),
        boundary_point(disc, 1, Fraction(1, 2)),
        boundary_point(disc, 3, Fraction(1, 2)),
    ]
    assert oracle.escape_search(disc, pts, samples=150, seed=2) is None


def test_escape_search_slides_a_two_point_disc():
    disc = unit_disc()
    pts = [boundary_point(disc, 0, Fraction(0)), boundary_point(disc, 2, Fraction(0))]
    rep = oracle.escape_search(disc, pts, samples=200, seed=1)
    assert rep is not None
    assert rep.family == "translation"
    assert rep.direction in (vec(0, 1), vec(0, -1))


def test_escape_search_sample_budget():
    sq, oc = square_opposite_corners()
    with pytest.raises(OutOfRangeError):
        oracle.escape_search(sq, oc, samples=10**6 + 1)


def test_simulate_rotation_path_reports_first_penetration():
    sq, mids = square_edge_midpoints()
    path = oracle.MotionPath.rotation(vec(0, 0), "CW", Fraction(1, 50))
    hit = oracle.simulate_path(sq, mids, path, steps=40)
    assert hit == (Fraction(1, 40), 0)


def test_simulate_translation_path_stays_clear():
    fx = rectangle_remark()
    path = oracle.MotionPath.translation(vec(1, 0))
    assert oracle.simulate_path(fx.body, fx.points, path, steps=40) is None


def test_motion_path_must_start_at_identity():
    from immobilize2d.geom import Translation

    with pytest.raises(OutOfRangeError):
        oracle.MotionPath.from_samples([(Fraction(0), Translation(vec(1, 0)))])
    with pytest.raises(OutOfRangeError):
        oracle.MotionPath.from_samples([(Fraction(1, 2), Translation(vec(0, 0)))])


def test_sampled_path_replays_motions():
    from immobilize2d.geom import Identity, Translation

    samples = [
        (Fraction(0), Identity()),
        (Fraction(1, 2), Translation(vec(3, 0))),
        (Fraction(1), Translation(vec(6, 0))),
    ]
    path = oracle.MotionPath.from_samples(samples)
    sq, oc = square_opposite_corners()
    hit = oracle.simulate_path(sq, oc, path, steps=2)
    assert hit is None  # sliding the square far right frees both corners
