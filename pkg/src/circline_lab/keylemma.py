"""Arc-halving search for an osculating circle that supports a loop from inside.

Starting from the point opposite the base, each step either finds that the
osculating circle at ``p`` lies inside the region, or takes the incircle at
``p``, walks along the curve (never through the base) to the nearest other
point where that incircle touches, and continues from the midpoint of the arc
just walked.  Successive arcs are nested and at least halve in length.

Near a supporting vertex the osculating circle's penetration shrinks like the
fourth power of the distance, so a point that passes the support test is
snapped to the nearest critical point of the curvature whose osculating
circle also passes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .circlines import Circline, Support, classify_support, osculating_circline
from .config import DEFAULT, Tolerances
from .curves import (
    TWO_PI, Arc, PlaneCurve, antipode, arc_length, arc_midpoint, curvature_derivative_roots,
    has_constant_curvature, is_simple, max_abs_curvature, nearest_point, param_distance,
    signed_curvature, wrap,
)
from .errors import CurvatureTooLarge, NoConvergence, NotContained, NotSimple
from .incircle import containment_radius, incircle_at, largest_inscribed_disc


@dataclass(frozen=True)
class Step:
    p: float
    incircle: Circline
    q: float
    arc: Arc
    length: float
    stray_contacts: tuple = ()   # contacts outside the previous arc; expected empty


@dataclass
class IterationTrace:
    base: float
    steps: list = field(default_factory=list)
    result: float | None = None
    snapped: bool = False
    verdict: object = None

    @property
    def lengths(self):
        return [s.length for s in self.steps]


def _arc_inside(arc: Arc, outer: Arc, slack: float = 1e-9) -> bool:
    off = outer.offset(arc.start)
    if off > TWO_PI - slack:
        off -= TWO_PI
    return off >= -slack and off + arc.span <= outer.span + slack


def _snap_to_vertex(curve, p, window, base, eps_sup, tol):
    """Nearest curvature critical point around ``p`` whose osculating circle supports from inside."""
    h = TWO_PI / curve.grid_size
    w = min(np.pi, max(8.0 * h, window))
    roots = curvature_derivative_roots(curve, p - w, p + w, samples=256, tol=tol)
    roots.sort(key=lambda r: abs(r[0] - p))
    for t, _ in roots[:6]:
        t = wrap(t)
        if param_distance(t, base) < tol.delta_param:
            continue
        verdict = classify_support(curve, t, osculating_circline(curve, t, tol), tol, eps_sup=eps_sup)
        if verdict.kind is Support.INSIDE:
            return t, verdict
    return None


def _finish(curve, p, base, window, trace, tol):
    eps_sup = tol.sup * curve.diameter
    snapped = None
    if not has_constant_curvature(curve):
        snapped = _snap_to_vertex(curve, p, window, base, eps_sup, tol)
    if snapped is not None:
        t, verdict = snapped
        trace.snapped = True
    else:
        t = wrap(p)
        verdict = classify_support(curve, t, osculating_circline(curve, t, tol), tol, eps_sup=10 * eps_sup)
        if verdict.kind is not Support.INSIDE:
            raise NoConvergence(f"point {t:.9f} fails the relaxed support check "
                                f"(violation {verdict.max_violation:.3e})", trace)
    if param_distance(t, base) < tol.delta_param:
        raise NoConvergence(f"search converged onto the base {base:.9f}", trace)
    trace.result = t
    trace.verdict = verdict
    return t, osculating_circline(curve, t, tol), trace


def find_inside_support(curve: PlaneCurve, base: float = 0.0, tol: Tolerances = DEFAULT):
    """A parameter other than ``base`` whose osculating circle supports the curve from inside.

    Returns ``(t, circline, trace)``.  The curve must be simple, regular and
    counterclockwise.
    """
    base = wrap(base)
    total = curve.length
    eps_sup = tol.sup * curve.diameter
    trace = IterationTrace(base)
    allowed = Arc.full(base)
    p = antipode(curve, base)
    for _ in range(tol.max_iter):
        osc = osculating_circline(curve, p, tol)
        if classify_support(curve, p, osc, tol, eps_sup=eps_sup).kind is Support.INSIDE:
            return _finish(curve, p, base, allowed.span, trace, tol)
        circ, contacts = incircle_at(curve, p, tol)
        if contacts.dense:
            return _finish(curve, p, base, allowed.span, trace, tol)
        choice = None
        stray = []
        for q in contacts:
            if param_distance(q, p) < tol.delta_param:
                continue
            options = [a for a in (Arc.between(p, q), Arc.between(q, p)) if _arc_inside(a, allowed)]
            if not options:
                stray.append(q)
                continue
            for arc in options:
                length = arc_length(curve, arc)
                if choice is None or length < choice[2] - tol.contact * curve.diameter:
                    choice = (q, arc, length)
        if choice is None:
            # the incircle only touches at p: the osculating circle is (numerically) inside
            return _finish(curve, p, base, allowed.span, trace, tol)
        q, arc, length = choice
        trace.steps.append(Step(p, circ, q, arc, length, tuple(stray)))
        allowed = arc
        p = arc_midpoint(curve, arc)
        if length < tol.term * total:
            return _finish(curve, p, base, allowed.span, trace, tol)
    raise NoConvergence(f"no inside support after {tol.max_iter} steps", trace)


@dataclass(frozen=True)
class MoonResult:
    center: np.ndarray
    radius: float
    t: float
    clearance: float
    trace: IterationTrace


def moon_in_puddle(curve: PlaneCurve, tol: Tolerances = DEFAULT, check_simple: bool = True) -> MoonResult:
    """A disc of radius at least 1 inside a simple curve with |kappa| <= 1.

    The disc is bounded by an osculating circle that supports the curve from
    inside; its radius is ``1/kappa`` at the support point.
    """
    if check_simple and not is_simple(curve, tol).simple:
        raise NotSimple("moon_in_puddle needs a simple curve")
    t_max, k_max = max_abs_curvature(curve, tol)
    if k_max > 1.0 + 1e-9:
        raise CurvatureTooLarge(f"max |kappa| = {k_max:.12g} at t = {t_max:.9f}", t_max, k_max)
    t, circ, trace = find_inside_support(curve, 0.0, tol)
    radius = 1.0 / abs(signed_curvature(curve, t, tol))
    center = circ.center
    clearance = containment_radius(curve, center, tol)
    if clearance < radius - 10 * tol.sup * curve.diameter:
        raise NoConvergence(f"disc of radius {radius:.9g} leaves the region (clearance {clearance:.9g})", trace)
    return MoonResult(center, radius, t, clearance, trace)


@dataclass(frozen=True)
class MoonRadiusReport:
    R: float
    max_abs_curvature: float
    t_max: float
    holds: bool


def exercise_moon_rad(curve: PlaneCurve, container: PlaneCurve, tol: Tolerances = DEFAULT) -> MoonRadiusReport:
    """Check that a closed curve inside ``container`` has |kappa| >= 1/R somewhere,
    R being the largest inscribed radius of the container.  ``curve`` may
    cross itself."""
    if not is_simple(container, tol).simple:
        raise NotSimple("container must be a simple curve")
    pts = curve.grid_points
    w = kernels.winding_numbers(container.grid_points, pts)
    eps = max(tol.geo * container.diameter, 4.0 * container.sag_bound)
    for i in np.nonzero(w == 0)[0]:
        if nearest_point(container, pts[i])[1] > eps:
            raise NotContained(f"curve point t={curve.grid_t[i]:.6f} lies outside the container")
    _, R = largest_inscribed_disc(container, tol)
    t_max, k_max = max_abs_curvature(curve, tol)
    return MoonRadiusReport(R, k_max, t_max, bool(k_max >= 1.0 / R - 1e-6))
