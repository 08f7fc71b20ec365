import numpy as np
import pytest

from circline_lab import curves as C
from circline_lab.circlines import Circline, Support
from circline_lab.config import DEFAULT
from circline_lab.errors import NotMonotone, TangentialIntersection
from circline_lab.vertices import (
    crossing_vertex_check, find_vertices, four_vertex_report, monotone_arcs, tait_kneser_check,
)
from oracles import TWO_PI, corpus, crossing_instances

PI = np.pi


def _near(t, targets, tol):
    return min(C.param_distance(t, s) for s in targets) < tol


# ------------------------------------------------------------- vertices
def test_circle_constant_curvature():
    vl = find_vertices(C.circle(1))
    assert vl.constant_curvature and vl.count == float("inf")


def test_ellipse_vertices_and_tags():
    vl = find_vertices(C.ellipse(2, 1))
    assert len(vl) == 4
    assert np.allclose(vl.params, [0, PI / 2, PI, 3 * PI / 2], atol=1e-8)
    assert [v.kind for v in vl.vertices] == ["local_max", "local_min", "local_max", "local_min"]


def test_vertices_are_critical_points():
    curve = C.fourier_random(5, 0.3, 3)
    for t in find_vertices(curve).params:
        assert abs(C.curvature_derivative(curve, t)) < 1e-6


def test_corpus_vertex_count_and_alternation():
    for curve in corpus()[:60]:
        vl = find_vertices(curve)
        assert vl.count >= 4
        if not vl.degenerate:
            assert len(vl) % 2 == 0
            kinds = [v.kind for v in vl.vertices]
            assert all(a != b for a, b in zip(kinds, kinds[1:] + kinds[:1]))


# ---------------------------------------------------------- four-vertex
def test_report_ellipse():
    rep = four_vertex_report(C.ellipse(2, 1))
    assert all(_near(t, [0, PI], 1e-4) for t in rep.inside)
    assert all(_near(t, [PI / 2, 3 * PI / 2], 1e-4) for t in rep.outside)
    assert all(rep.verdicts[t].kind is Support.INSIDE for t in rep.inside)
    assert all(rep.verdicts[t].kind is Support.OUTSIDE for t in rep.outside)


def test_report_circle_dense():
    rep = four_vertex_report(C.circle(1))
    assert rep.dense_support
    assert len(rep.points) == 4 and rep.min_separation() >= DEFAULT.delta_param


def test_report_fourier_random_points_are_vertices():
    curve = C.fourier_random(4, 0.2, 7)
    rep = four_vertex_report(curve)
    assert len(rep.inside) == 2 and len(rep.outside) == 2
    assert rep.min_separation() >= DEFAULT.delta_param
    for t in rep.points:
        assert abs(C.curvature_derivative(curve, t)) < 1e-4
    vl = find_vertices(curve)
    assert all(_near(t, vl.params, 1e-4) for t in rep.points)


def test_report_inside_maxima_outside_minima_on_convex():
    checked = 0
    for curve in corpus()[:30]:
        t = np.linspace(0, TWO_PI, 2048, endpoint=False)
        if np.min(C.signed_curvature(curve, t)) <= 0:
            continue
        rep = four_vertex_report(curve)
        kinds = {v.t: v.kind for v in find_vertices(curve).vertices}
        closest = lambda s: kinds[min(kinds, key=lambda u: C.param_distance(u, s))]
        assert all(closest(s) == "local_max" for s in rep.inside)
        assert all(closest(s) == "local_min" for s in rep.outside)
        checked += 1
    assert checked >= 5


# ---------------------------------------------------------- Tait-Kneser
def test_tait_kneser_ellipse_quarter():
    v = tait_kneser_check(C.ellipse(2, 1), C.Arc(0.05, PI / 2 - 0.05))
    assert v.holds and v.min_margin > 0


def test_tait_kneser_circle_not_monotone():
    with pytest.raises(NotMonotone):
        tait_kneser_check(C.circle(1), C.Arc(0.1, 1.0))


def test_tait_kneser_arc_through_vertex_not_monotone():
    with pytest.raises(NotMonotone):
        tait_kneser_check(C.ellipse(2, 1), C.Arc(-0.3, 0.3))


def test_tait_kneser_corpus_sample():
    for curve in corpus()[:25]:
        for arc in monotone_arcs(curve, find_vertices(curve)):
            assert tait_kneser_check(curve, arc).holds


# -------------------------------------------------------- crossings
def test_crossing_ellipse_radius_one_and_half():
    rep = crossing_vertex_check(C.ellipse(2, 1), Circline.from_center_radius((0, 0), 1.5))
    assert rep.n == 2 and len(rep.crossings) == 4
    assert rep.interleaved and rep.vertex_count == 4 and rep.holds


def test_crossing_none():
    rep = crossing_vertex_check(C.ellipse(2, 1), Circline.from_center_radius((10, 0), 1.0))
    assert rep.n == 0 and rep.holds


def test_crossing_wavy_annulus_eight():
    rep = crossing_vertex_check(C.wavy_annulus(4, 0.1), Circline.from_center_radius((0, 0), 1.0))
    assert rep.n == 4 and rep.interleaved
    assert rep.vertex_count >= 8 and rep.holds


def test_crossing_tangential_rejected():
    with pytest.raises(TangentialIntersection):
        crossing_vertex_check(C.ellipse(2, 1), Circline.from_center_radius((0, 0), 1.0))


def test_crossing_line_rejected():
    with pytest.raises(ValueError):
        crossing_vertex_check(C.ellipse(2, 1), Circline.line((0, 0), (1, 0)))


def test_crossing_non_interleaved_is_vacuous():
    # a circle straddling one dent of a three-lobed curve meets it four
    # times, out of cyclic order
    rep = crossing_vertex_check(C.wavy_annulus(3, 0.4), Circline.from_center_radius((0.78, -1.27), 0.88))
    assert rep.n == 2 and not rep.interleaved and rep.holds


def test_crossing_random_interleaved_instances():
    for curve, circle, rep in crossing_instances(30):
        assert rep.holds and rep.vertex_count >= 2 * rep.n
        again = crossing_vertex_check(curve, circle)
        assert again.crossings == rep.crossings
