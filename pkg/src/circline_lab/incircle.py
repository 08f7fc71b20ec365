"""Maximal inscribed circles: the incircle tangent at a point, and the largest disc.

The circle tangent to the curve at ``a = γ(t)`` with inward unit normal ``n``
that passes through another curve point ``γ(s)`` has radius

    r(s) = |γ(s) - a|**2 / (2 (γ(s) - a) . n).

A curve point lies strictly inside the tangent circle of radius ``r`` iff
``r > r(s)``, so the incircle radius is the infimum of ``r(s)`` over the
points with positive denominator, capped by ``1/kappa(t)`` (the limit as
``s -> t``) and by the diameter.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import kernels
from .circlines import Circline
from .config import DEFAULT, Tolerances
from .curves import (
    TWO_PI, Location, PlaneCurve, nearest_point, param_distance, point_in_region,
    signed_curvature, wrap,
)
from .errors import OutsideRegion

DENSE_FRACTION = 0.25


@dataclass(frozen=True)
class ContactSet:
    """Parameters where an inscribed circle touches the curve, sorted cyclically."""

    contacts: tuple
    dense: bool = False

    def __len__(self):
        return len(self.contacts)

    def __iter__(self):
        return iter(self.contacts)


def _tangent_radii(d, n):
    num = (d ** 2).sum(axis=-1)
    den = 2.0 * (d @ n)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(den > 0, num / np.where(den > 0, den, 1.0), np.inf)
    return r


def _merge_cyclic(params, delta, keep_first=None):
    """Cluster parameters closer than ``delta``; ``keep_first`` wins its cluster."""
    out = []
    ordered = sorted(set(float(p) for p in params))
    if keep_first is not None:
        ordered = [keep_first] + [p for p in ordered if param_distance(p, keep_first) >= delta]
    for p in ordered:
        if all(param_distance(p, q) >= delta for q in out):
            out.append(p)
    return tuple(sorted(out))


def _refine_contact(curve, center, s):
    h = TWO_PI / curve.grid_size
    for _ in range(30):
        j = curve.jet(s, 2)
        r = j[0, 0] - center
        g = r @ j[1, 0]
        dg = j[1, 0] @ j[1, 0] + r @ j[2, 0]
        if dg <= 0:
            break
        step = float(np.clip(-g / dg, -h, h))
        s += step
        if abs(step) < 1e-15:
            break
    return wrap(s), float(np.linalg.norm(curve.eval(s) - center))


def contact_set(curve: PlaneCurve, center, radius: float, t: float, tol: Tolerances = DEFAULT) -> ContactSet:
    """Where the circle (center, radius) touches the curve, always including ``t``."""
    eps = tol.contact * curve.diameter
    gap = np.hypot(*(curve.grid_points - center).T) - radius
    if np.mean(gap <= eps) > DENSE_FRACTION:
        return ContactSet((wrap(t),), dense=True)
    local = np.nonzero((gap <= np.roll(gap, 1)) & (gap <= np.roll(gap, -1))
                       & (gap <= eps + 4.0 * curve.sag_bound))[0]
    found = []
    for i in local:
        s, d = _refine_contact(curve, center, float(curve.grid_t[i]))
        if d - radius <= eps:
            found.append(s)
    return ContactSet(_merge_cyclic(found, tol.delta_param, keep_first=wrap(t)))


def incircle_radius(curve: PlaneCurve, t: float, tol: Tolerances = DEFAULT):
    """Radius of the incircle at ``t`` and the parameters realising it."""
    jet = curve.jet(t, 2)
    v = jet[1, 0]
    n = np.array([-v[1], v[0]]) / np.hypot(*v)
    kappa = signed_curvature(curve, t, tol)
    grid = curve.grid_t
    h = TWO_PI / len(grid)
    r = _tangent_radii(curve.chord(t, grid), n)
    near = param_distance(grid, t) < 0.5 * h
    r[near] = np.inf

    best = min(curve.diameter, 1.0 / kappa if kappa > 0 else np.inf)
    where = []
    finite = np.isfinite(r)
    if finite.any():
        rmin = r[finite].min()
        loc = np.nonzero(finite & (r <= np.roll(r, 1)) & (r <= np.roll(r, -1)) & (r <= 1.05 * rmin))[0]
        loc = loc[np.argsort(r[loc], kind="stable")[:6]]

        def f(s):
            return float(_tangent_radii(curve.chord(t, s), n)[0])

        for i in loc:
            lo, hi = grid[i] - h, grid[i] + h
            # keep the bracket clear of t itself, where r(s) is 0/0
            off = float(np.mod(t - grid[i] + np.pi, TWO_PI) - np.pi)
            if abs(off) <= h:
                if off > 0:
                    hi = grid[i] + off - 1e-7
                else:
                    lo = grid[i] + off + 1e-7
            res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
            val, arg = (float(res.fun), float(res.x)) if res.fun < r[i] else (float(r[i]), float(grid[i]))
            if val < best:
                best = val
            where.append((val, wrap(arg)))
    argmins = [s for val, s in where if val <= best * (1.0 + 1e-9)]
    return best, argmins


def incircle_at(curve: PlaneCurve, t: float, tol: Tolerances = DEFAULT):
    """The maximal circle inside the region tangent to the curve at ``t``.

    Returns the circle as a counterclockwise :class:`Circline` anchored at
    ``γ(t)`` and its :class:`ContactSet`.
    """
    t = wrap(t)
    r, _ = incircle_radius(curve, t, tol)
    jet = curve.jet(t, 1)
    a, v = jet[0, 0], jet[1, 0]
    circ = Circline(a, v, 1.0 / r)
    return circ, contact_set(curve, circ.center, r, t, tol)


def containment_radius(curve: PlaneCurve, center, tol: Tolerances = DEFAULT) -> float:
    """Largest r with the disc (center, r) inside the region."""
    member = point_in_region(curve, center, tol)
    if member.location is Location.OUTSIDE:
        raise OutsideRegion(f"{tuple(np.asarray(center).tolist())} is outside the curve")
    return member.distance


def _pattern_search(f, x, fx, step, min_step):
    """Compass search on a rotating 8-direction stencil; maximises ``f``."""
    golden = np.pi * (3.0 - np.sqrt(5.0))
    theta = 0.0
    base = np.arange(8) * (TWO_PI / 8)
    while step > min_step:
        ang = base + theta
        trials = x + step * np.column_stack([np.cos(ang), np.sin(ang)])
        vals = np.array([f(p) for p in trials])
        j = int(vals.argmax())
        if vals[j] > fx:
            x, fx = trials[j], float(vals[j])
            step = min(1.5 * step, 0.9 * fx)
        else:
            step *= 0.5
            theta += golden
    return x, fx


def largest_inscribed_disc(curve: PlaneCurve, tol: Tolerances = DEFAULT, grid: int = 24, starts: int = 6):
    """Centre and radius of the largest disc contained in the region.

    Multi-start compass search on the grid-sampled clearance from the best
    points of a coarse interior lattice, then a one-dimensional ascent of the
    incircle radius around the nearest curve point of each result.  The
    polish never loses ground: the disc found by the search is tangent at its
    nearest point, so the incircle there is at least as large.
    """
    lo, hi = curve.bounding_box
    xs = np.linspace(lo[0], hi[0], grid + 2)[1:-1]
    ys = np.linspace(lo[1], hi[1], grid + 2)[1:-1]
    pts = np.array([(x, y) for y in ys for x in xs])
    inside = kernels.winding_numbers(curve.grid_points, pts) == 1
    pts = pts[inside]
    clear, _ = kernels.nearest_sample(curve.grid_points, pts)
    order = np.argsort(-clear, kind="stable")[:starts]
    diam = curve.diameter
    samples = curve.grid_points
    h = TWO_PI / curve.grid_size

    def coarse(p):
        return float(np.sqrt(((samples - p) ** 2).sum(axis=1).min()))

    found = []
    for idx in order:
        x = pts[idx]
        x, fx = _pattern_search(coarse, x, coarse(x), 0.5 * coarse(x), 1e-5 * diam)
        if all(np.linalg.norm(x - y) > 1e-3 * diam for y, _ in found):
            found.append((x, fx))
    top = max(fx for _, fx in found)
    best = None
    for x, fx in found:
        if fx < 0.95 * top:
            continue
        t0, _ = nearest_point(curve, x)
        res = minimize_scalar(lambda s: -incircle_radius(curve, s, tol)[0],
                              bounds=(t0 - 12 * h, t0 + 12 * h), method="bounded",
                              options={"xatol": 1e-12})
        t_star = wrap(res.x)
        r_star = incircle_radius(curve, t_star, tol)[0]
        r0 = incircle_radius(curve, t0, tol)[0]
        if r0 > r_star:
            t_star, r_star = t0, r0
        if best is None or r_star > best[1] + 1e-12:
            best = (t_star, r_star)
    t_star, r_star = best
    jet = curve.jet(t_star, 1)
    v = jet[1, 0]
    n = np.array([-v[1], v[0]]) / np.hypot(*v)
    return jet[0, 0] + r_star * n, float(r_star)
