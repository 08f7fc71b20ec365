"""Vertices (critical points of the signed curvature) and the support points
that the generalised four-vertex theorem guarantees."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .circlines import Circline, classify_support, invert_curve, osculating_circline
from .config import DEFAULT, Tolerances
from .curves import (
    TWO_PI, Arc, PlaneCurve, curvature_derivative, curvature_derivative_roots,
    has_constant_curvature, param_distance, signed_curvature, wrap,
)
from .errors import NoConvergence, NotMonotone, TangentialIntersection
from .incircle import largest_inscribed_disc
from .keylemma import find_inside_support


class Vertex(NamedTuple):
    t: float
    kind: str       # "local_max" | "local_min" | "degenerate"


@dataclass(frozen=True)
class VertexList:
    vertices: tuple = ()
    constant_curvature: bool = False

    def __len__(self):
        return len(self.vertices)

    @property
    def count(self) -> float:
        return float("inf") if self.constant_curvature else len(self.vertices)

    @property
    def params(self):
        return [v.t for v in self.vertices]

    @property
    def degenerate(self) -> bool:
        return any(v.kind == "degenerate" for v in self.vertices)


def find_vertices(curve: PlaneCurve, tol: Tolerances = DEFAULT) -> VertexList:
    """All sign changes of kappa' on the grid, refined to ~1e-12 in t."""
    if has_constant_curvature(curve):
        return VertexList((), constant_curvature=True)
    roots = curvature_derivative_roots(curve, 0.0, TWO_PI, tol=tol)
    roots = [(wrap(t), tag) for t, tag in roots]
    roots.sort()
    clusters = []
    for t, tag in roots:
        if clusters and param_distance(t, clusters[-1][-1][0]) < tol.delta_param:
            clusters[-1].append((t, tag))
        else:
            clusters.append([(t, tag)])
    if len(clusters) > 1 and param_distance(clusters[0][0][0], clusters[-1][-1][0]) < tol.delta_param:
        clusters[0] = clusters.pop() + clusters[0]
    out = []
    for cl in clusters:
        if len(cl) == 1:
            out.append(Vertex(cl[0][0], "local_max" if cl[0][1] > 0 else "local_min"))
        elif len({tag for _, tag in cl}) == 1:
            # one extremum reported twice (e.g. at the 0 / 2*pi seam)
            out.append(Vertex(cl[0][0], "local_max" if cl[0][1] > 0 else "local_min"))
        else:
            out.append(Vertex(cl[len(cl) // 2][0], "degenerate"))
    out.sort()
    return VertexList(tuple(out))


# ------------------------------------------------------- four-vertex report
@dataclass
class FourVertexReport:
    inside: tuple = ()
    outside: tuple = ()
    verdicts: dict = field(default_factory=dict)
    inversion: tuple | None = None      # (center, radius)
    dense_support: bool = False
    traces: list = field(default_factory=list)

    @property
    def points(self):
        return tuple(self.inside) + tuple(self.outside)

    def min_separation(self) -> float:
        pts = self.points
        return min((float(param_distance(a, b)) for i, a in enumerate(pts) for b in pts[i + 1:]),
                   default=float("inf"))


def four_vertex_report(curve: PlaneCurve, tol: Tolerances = DEFAULT) -> FourVertexReport:
    """Two osculating circles supporting from inside, two from outside.

    The inside pair comes from two runs of the arc-halving search, the second
    based at the first result.  The outside pair comes from the same two runs
    on the image under inversion about the largest inscribed disc's centre:
    inversion preserves osculating circlines and swaps the sides.
    """
    report = FourVertexReport()
    eps_sup = tol.sup * curve.diameter
    if has_constant_curvature(curve):
        report.dense_support = True
        report.inside = (0.0, 0.5 * np.pi)
        report.outside = (np.pi, 1.5 * np.pi)
        for t in report.points:
            report.verdicts[t] = classify_support(curve, t, osculating_circline(curve, t, tol), tol)
        return report
    try:
        t1, _, tr1 = find_inside_support(curve, 0.0, tol)
        report.traces.append(tr1)
        t2, _, tr2 = find_inside_support(curve, t1, tol)
        report.traces.append(tr2)
        report.inside = (t1, t2)
        center, radius = largest_inscribed_disc(curve, tol)
        report.inversion = (center, radius)
        image = invert_curve(center, radius, curve, tol)
        u1, _, tr3 = find_inside_support(image, 0.0, tol)
        report.traces.append(tr3)
        u2, _, tr4 = find_inside_support(image, u1, tol)
        report.traces.append(tr4)
        report.outside = (u1, u2)
    except NoConvergence as exc:
        exc.partial = report
        raise
    for t in report.points:
        report.verdicts[t] = classify_support(curve, t, osculating_circline(curve, t, tol), tol,
                                              eps_sup=10 * eps_sup)
    return report


# ---------------------------------------------------------- Tait-Kneser
@dataclass(frozen=True)
class NestingVerdict:
    holds: bool
    min_margin: float
    witness: tuple | None = None      # (s, t) of the worst pair


def tait_kneser_check(curve: PlaneCurve, arc: Arc, tol: Tolerances = DEFAULT, pairs: int = 32) -> NestingVerdict:
    """Osculating circles along an arc of monotone curvature are nested.

    For each sampled pair the smaller circle must sit strictly inside the
    larger: centre distance + small radius < large radius - eps_geo.
    """
    probe = arc.sample(257)
    dk = curvature_derivative(curve, probe, tol)
    k = signed_curvature(curve, probe, tol)
    if not (np.all(dk >= 1e-8) or np.all(dk <= -1e-8)):
        raise NotMonotone(f"kappa' changes sign or vanishes on [{arc.start:.6f}, {arc.end:.6f}]")
    if not (np.all(k > 0) or np.all(k < 0)):
        raise NotMonotone("kappa changes sign on the arc")
    eps_geo = tol.geo * curve.diameter
    # pair s_i with the point 3/4 of the arc further on: the nesting gap is
    # cubic in the separation, so close pairs say nothing at eps_geo
    frac = np.arange(pairs) / (4.0 * pairs)
    s_par = arc.start + frac * arc.span
    t_par = s_par + 0.75 * arc.span
    worst = (np.inf, None)
    for s, t in zip(s_par, t_par):
        a, b = osculating_circline(curve, s, tol), osculating_circline(curve, t, tol)
        small, big = (a, b) if a.radius < b.radius else (b, a)
        margin = big.radius - small.radius - float(np.linalg.norm(big.center - small.center))
        if margin < worst[0]:
            worst = (margin, (float(s), float(t)))
    return NestingVerdict(bool(worst[0] > eps_geo), float(worst[0]), worst[1])


def monotone_arcs(curve: PlaneCurve, vertices: VertexList, margin: float = 0.02, tol: Tolerances = DEFAULT):
    """Arcs between consecutive vertices, split where kappa changes sign and
    trimmed by ``margin`` (fraction of the parameter span) at both ends."""
    ts = sorted(vertices.params)
    if len(ts) < 2:
        return []
    out = []
    for a, b in zip(ts, ts[1:] + [ts[0] + TWO_PI]):
        cuts = [a]
        probe = np.linspace(a, b, 513)
        k = signed_curvature(curve, probe, tol)
        for i in np.nonzero(np.sign(k[:-1]) * np.sign(k[1:]) < 0)[0]:
            cuts.append(brentq(lambda s: signed_curvature(curve, s, tol), probe[i], probe[i + 1], xtol=1e-14))
        cuts.append(b)
        for lo, hi in zip(cuts, cuts[1:]):
            w = margin * (hi - lo)
            if hi - lo > 1e-6:
                out.append(Arc(lo + w, hi - w))
    return out


# ------------------------------------------------------ crossing exercise
@dataclass(frozen=True)
class CrossingReport:
    n: int
    interleaved: bool
    vertex_count: float
    holds: bool
    crossings: tuple = ()


def _cyclic_order_matches(angles) -> bool:
    m = len(angles)
    if m <= 3:
        return True
    ranks = np.argsort(np.argsort(angles))
    return bool(np.all(np.mod(np.diff(np.append(ranks, ranks[0])), m) == 1))


def _reject_touches(curve, circle, vals, crossings, tol):
    """A local extreme of the side function that reaches zero without a sign
    change is a tangential contact."""
    eps = tol.geo * curve.diameter
    h = TWO_PI / len(vals)
    a = np.abs(vals)
    cand = np.nonzero((a <= np.roll(a, 1)) & (a <= np.roll(a, -1)) & (a <= eps + 4 * curve.sag_bound))[0]
    for i in cand:
        t0 = float(curve.grid_t[i])
        if crossings and float(np.min(param_distance(t0, np.array(crossings)))) < 2 * h:
            continue
        sign = 1.0 if vals[i] >= 0 else -1.0
        res = minimize_scalar(lambda s: sign * float(np.ravel(circle.side(curve.eval(s)))[0]),
                              bounds=(t0 - h, t0 + h), method="bounded", options={"xatol": 1e-13})
        if res.fun <= eps:
            raise TangentialIntersection(f"curve touches the circle at t={wrap(res.x):.9f}")


def crossing_vertex_check(curve: PlaneCurve, circle: Circline, tol: Tolerances = DEFAULT) -> CrossingReport:
    """If the curve crosses ``circle`` at 2n points met in the same cyclic order
    along both, the curve has at least 2n vertices."""
    if abs(circle.k) <= tol.k_line / curve.diameter:
        raise ValueError("crossing_vertex_check needs a circle, not a line")
    # zero counts as the negative side, so a crossing that lands exactly on
    # a grid node is seen once; a touch shows up as a close pair and is
    # rejected as tangential below
    vals = circle.side(curve.grid_points)
    left = vals > 0
    grid = curve.grid_t
    h = TWO_PI / len(grid)

    def side(s):
        return float(np.ravel(circle.side(curve.eval(s)))[0])

    crossings = []
    for i in np.nonzero(left != np.roll(left, -1))[0]:
        a, b = grid[i], grid[i] + h
        fa, fb = side(a), side(b)
        if fa == 0 or fb == 0 or fa * fb > 0:
            # on a node, or the grid sign disagrees with the re-evaluation at rounding level
            crossings.append(wrap(a if abs(fa) <= abs(fb) else b))
        else:
            crossings.append(wrap(brentq(side, a, b, xtol=1e-14)))
    crossings.sort()
    _reject_touches(curve, circle, vals, crossings, tol)
    center = circle.center
    for t in crossings:
        j = curve.jet(t, 1)
        tau = j[1, 0] / np.hypot(*j[1, 0])
        radial = (j[0, 0] - center) / np.linalg.norm(j[0, 0] - center)
        if abs(tau @ radial) < np.sin(1e-3):
            raise TangentialIntersection(f"tangential crossing at t={t:.9f}")
    n = len(crossings) // 2
    pts = curve.eval(np.array(crossings)) if crossings else np.zeros((0, 2))
    angles = np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0]) if crossings else np.zeros(0)
    interleaved = _cyclic_order_matches(angles)
    count = find_vertices(curve, tol).count
    holds = (not interleaved) or count >= 2 * n
    return CrossingReport(n, interleaved, count, bool(holds), tuple(crossings))
