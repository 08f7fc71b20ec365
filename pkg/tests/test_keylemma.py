import numpy as np
import pytest

from circline_lab import curves as C
from circline_lab.circlines import Support, classify_support, osculating_circline
from circline_lab.config import DEFAULT
from circline_lab.errors import CurvatureTooLarge, NoConvergence, NotContained, NotSimple
from circline_lab.incircle import containment_radius
from circline_lab.keylemma import (
    exercise_moon_rad, find_inside_support, moon_in_puddle,
)
from oracles import TWO_PI, corpus

PI = np.pi


def _assert_trace_invariants(curve, trace):
    eps_quad = DEFAULT.quad * curve.length
    lengths = [curve.length] + trace.lengths
    for a, b in zip(lengths, lengths[1:]):
        assert b <= 0.5 * a + eps_quad
    outer = C.Arc.full(trace.base)
    for step in trace.steps:
        off = outer.offset(step.arc.start)
        if off > TWO_PI - 1e-9:
            off -= TWO_PI
        assert -1e-9 <= off and off + step.arc.span <= outer.span + 1e-9
        assert C.param_distance(step.arc.start, step.p) < 1e-12 or C.param_distance(step.arc.end, step.p) < 1e-12
        assert not step.stray_contacts
        outer = step.arc


def test_circle_returns_antipode_immediately():
    t, circ, trace = find_inside_support(C.circle(1), 0.0)
    assert t == pytest.approx(PI, abs=1e-12)
    assert trace.steps == []
    assert circ.radius == pytest.approx(1.0)


def test_ellipse_flat_base_finds_sharp_vertex():
    t, _, trace = find_inside_support(C.ellipse(2, 1), PI / 2)
    assert min(C.param_distance(t, 0.0), C.param_distance(t, PI)) < 1e-4
    _assert_trace_invariants(C.ellipse(2, 1), trace)


def test_ellipse_brute_force_support_scan():
    # only neighbourhoods of the two sharp vertices support from inside;
    # the width of each window is set by the support tolerance
    e = C.ellipse(2, 1)
    hits = [t for t in np.linspace(0, TWO_PI, 4096, endpoint=False)
            if classify_support(e, t, osculating_circline(e, t)).kind is Support.INSIDE]
    assert all(min(C.param_distance(t, 0.0), C.param_distance(t, PI)) < 0.02 for t in hits)
    assert len(hits) >= 2


def test_fourier_random_result_verified_independently():
    curve = C.fourier_random(4, 0.2, 7)
    t, circ, trace = find_inside_support(curve)
    v = classify_support(curve, t, circ)
    assert v.kind is Support.INSIDE
    assert C.param_distance(t, 0.0) >= DEFAULT.delta_param
    _assert_trace_invariants(curve, trace)


@pytest.mark.parametrize("base", [0.0, 1.0, 2.0, 4.0, 5.5])
def test_result_avoids_base(base):
    curve = C.fourier_random(5, 0.3, 11)
    t, _, _ = find_inside_support(curve, base)
    assert C.param_distance(t, base) >= DEFAULT.delta_param


def test_corpus_output_never_not_supporting_at_relaxed_tolerance():
    for curve in corpus()[:40]:
        for base in (0.0, 2.0):
            t, circ, trace = find_inside_support(curve, base)
            v = classify_support(curve, t, circ, eps_sup=10 * DEFAULT.sup * curve.diameter)
            assert v.kind is Support.INSIDE
            _assert_trace_invariants(curve, trace)


def test_no_convergence_reports_trace():
    curve = C.fourier_random(5, 0.3, 11)
    tight = DEFAULT.with_overrides({"max_iter": 1, "sup": 1e-300})
    with pytest.raises(NoConvergence) as info:
        find_inside_support(curve, 0.0, tight)
    assert info.value.trace is not None


# ----------------------------------------------------------------- moon
def test_moon_circle_two():
    res = moon_in_puddle(C.circle(2))
    assert res.radius == pytest.approx(2.0) and np.allclose(res.center, (0, 0), atol=1e-12)


def test_moon_ellipse_four_two():
    res = moon_in_puddle(C.ellipse(4, 2))
    assert np.allclose(res.center, (-3, 0), atol=1e-9) or np.allclose(res.center, (3, 0), atol=1e-9)
    assert res.radius == pytest.approx(1.0, abs=1e-9)
    assert containment_radius(C.ellipse(4, 2), res.center) >= res.radius - 1e-6 * 8


def test_moon_ellipse_two_one_too_curved():
    with pytest.raises(CurvatureTooLarge) as info:
        moon_in_puddle(C.ellipse(2, 1))
    assert info.value.kappa == pytest.approx(2.0)
    assert min(C.param_distance(info.value.t_argmax, 0), C.param_distance(info.value.t_argmax, PI)) < 1e-8


def test_moon_rejects_non_simple():
    with pytest.raises(NotSimple):
        moon_in_puddle(C.figure_eight(4.0))


def test_moon_on_rescaled_random_curves():
    for curve in corpus()[:10]:
        _, k = C.max_abs_curvature(curve)
        unit = curve.scaled(k)
        res = moon_in_puddle(unit)
        assert res.radius >= 1 - 1e-6
        assert containment_radius(unit, res.center) >= res.radius - 1e-6 * unit.diameter


# ------------------------------------------------------------ exercise
def test_exercise_circle_in_itself():
    rep = exercise_moon_rad(C.circle(1), C.circle(1))
    assert rep.R == pytest.approx(1.0) and rep.max_abs_curvature == pytest.approx(1.0) and rep.holds


def test_exercise_ellipse_in_itself():
    rep = exercise_moon_rad(C.ellipse(2, 1), C.ellipse(2, 1))
    assert rep.R == pytest.approx(1.0, abs=1e-9) and rep.max_abs_curvature == pytest.approx(2.0) and rep.holds


def test_exercise_figure_eight_in_unit_circle():
    rep = exercise_moon_rad(C.figure_eight(0.6), C.circle(1))
    assert rep.holds and rep.max_abs_curvature >= 1


def test_exercise_not_contained():
    with pytest.raises(NotContained):
        exercise_moon_rad(C.circle(2), C.circle(1))


def test_exercise_container_must_be_simple():
    with pytest.raises(NotSimple):
        exercise_moon_rad(C.circle(0.1), C.figure_eight())
