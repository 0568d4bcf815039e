from fractions import Fraction

import pytest

from tree_mio.application.analysis.sharpness import (
    check_sharpness_1d,
    convex_hull,
    graph_breakpoints,
    in_convex_hull,
    projected_vertices_outside_hull,
)
from tree_mio.domain.exceptions import DimensionError, UnsupportedFormulation
from tree_mio.domain.types import FormulationKind


def _pt(x, y):
    return (Fraction(x), Fraction(y))


def test_breakpoints(ex3):
    assert graph_breakpoints(ex3.ensemble) == [
        _pt(0, "1.5"),
        _pt(1, "1.5"),
        _pt(1, 3),
        _pt(2, 3),
        _pt(2, "3.5"),
        _pt(3, "3.5"),
    ]


def test_hull_drops_interior_and_collinear_points():
    square = [_pt(0, 0), _pt(2, 0), _pt(2, 2), _pt(0, 2), _pt(1, 1), _pt(1, 0)]

    assert convex_hull(square) == [_pt(0, 0), _pt(2, 0), _pt(2, 2), _pt(0, 2)]


def test_hull_membership():
    hull = convex_hull([_pt(0, 0), _pt(2, 0), _pt(0, 2)])

    assert in_convex_hull(hull, _pt(1, 1))
    assert in_convex_hull(hull, _pt(0, 0))
    assert not in_convex_hull(hull, _pt(2, 2))

    segment = convex_hull([_pt(0, 0), _pt(1, 1)])
    assert in_convex_hull(segment, _pt("0.5", "0.5"))
    assert not in_convex_hull(segment, _pt("0.5", 0))


def test_relaxation_point_outside_the_hull(ex3, config):
    report = check_sharpness_1d(ex3.ensemble, (1.0, 3.25), config=config)

    assert report.in_projection
    assert not report.in_hull
    assert not report.sharp_at_point


@pytest.mark.parametrize(("point", "expected"), [((1.5, 10.0), False), ((2.5, 3.5), True), ((1.0, 3.0), True)])
def test_points_where_relaxation_and_hull_agree(ex3, point, expected, config):
    report = check_sharpness_1d(ex3.ensemble, point, config=config)

    assert report.in_projection is expected
    assert report.in_hull is expected


def test_projected_vertices_outside_hull(ex3, config):
    outside = projected_vertices_outside_hull(ex3.ensemble, config=config)

    assert any(w == pytest.approx(1.0) and y == pytest.approx(3.25) for w, y in outside)


def test_union_ext_projects_onto_the_same_set(ex3, config):
    report = check_sharpness_1d(ex3.ensemble, (1.0, 3.25), kind=FormulationKind.UNION_EXT, config=config)

    assert report.in_projection
    assert not report.in_hull


def test_sharpness_needs_one_feature_and_w(fig3a, ex3):
    with pytest.raises(DimensionError):
        check_sharpness_1d(fig3a.ensemble, (1.0, 1.0))
    with pytest.raises(UnsupportedFormulation):
        check_sharpness_1d(ex3.ensemble, (1.0, 3.0), kind=FormulationKind.MISIC)
