"""Circlines (circle-or-line), osculating circlines, support and inversion.

A :class:`Circline` is stored as an oriented point-tangent-curvature triple.
For curvature ``k`` the circle centre sits at ``anchor + normal / k``; as
``k`` tends to zero the same triple degrades continuously to the tangent line.

Side convention: :meth:`Circline.side` is a signed distance, positive on the
left of the oriented circline.  For k > 0 the left side is the open disc.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .config import DEFAULT, Tolerances
from .curves import (
    TWO_PI, Location, PlaneCurve, point_in_region, signed_curvature, wrap,
)
from .errors import AtCenter, CenterTooClose, NotTangent, OutsideRegion


def _left(v):
    return np.array([-v[1], v[0]])


@dataclass(frozen=True, eq=False)
class Circline:
    anchor: np.ndarray
    tangent: np.ndarray
    k: float

    def __post_init__(self):
        a = np.asarray(self.anchor, dtype=float).copy()
        t = np.asarray(self.tangent, dtype=float)
        t = t / np.hypot(t[0], t[1])
        a.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "anchor", a)
        object.__setattr__(self, "tangent", t)
        object.__setattr__(self, "k", float(self.k))

    @classmethod
    def from_center_radius(cls, center, radius, ccw=True):
        """Circle anchored at its rightmost point."""
        c = np.asarray(center, dtype=float)
        tangent = (0.0, 1.0) if ccw else (0.0, -1.0)
        return cls(c + (radius, 0.0), tangent, (1.0 if ccw else -1.0) / radius)

    @classmethod
    def line(cls, point, direction):
        return cls(point, direction, 0.0)

    @property
    def normal(self) -> np.ndarray:
        return _left(self.tangent)

    def is_line(self, eps_k: float = 0.0) -> bool:
        return abs(self.k) <= eps_k

    @property
    def center(self) -> np.ndarray:
        if self.k == 0.0:
            raise ValueError("a line has no centre")
        return self.anchor + self.normal / self.k

    @property
    def radius(self) -> float:
        return float("inf") if self.k == 0.0 else 1.0 / abs(self.k)

    def reversed(self) -> "Circline":
        return Circline(self.anchor, -self.tangent, -self.k)

    def side(self, pts) -> np.ndarray:
        """Signed distance to the circline, positive on the left."""
        d = np.atleast_2d(np.asarray(pts, dtype=float)) - self.anchor
        s = d @ self.normal - 0.5 * self.k * (d ** 2).sum(axis=1)
        return 2.0 * s / (1.0 + np.sqrt(np.maximum(0.0, 1.0 - 2.0 * self.k * s)))

    def points(self, n: int = 256, extent: float = 1.0) -> np.ndarray:
        """Sample the circline (a line is sampled over +-extent around the anchor)."""
        if self.k == 0.0:
            u = np.linspace(-extent, extent, n)
            return self.anchor + u[:, None] * self.tangent
        c, r = self.center, self.radius
        phi0 = np.arctan2(*(self.anchor - c)[::-1])
        phi = phi0 + np.sign(self.k) * np.linspace(0.0, TWO_PI, n, endpoint=False)
        return c + r * np.column_stack([np.cos(phi), np.sin(phi)])

    def __repr__(self):
        if self.k == 0.0:
            return f"Circline(line through {self.anchor.tolist()} along {self.tangent.tolist()})"
        return f"Circline(center={self.center.tolist()}, radius={self.radius:.12g}, k={self.k:.12g})"


def osculating_circline(curve: PlaneCurve, t: float, tol: Tolerances = DEFAULT) -> Circline:
    jet = curve.jet(t, 2)
    k = signed_curvature(curve, t, tol)
    return Circline(jet[0, 0], jet[1, 0], k)


def circlines_close(a: Circline, b: Circline, atol: float, rtol: float = 1e-6) -> bool:
    """Same anchor (within ``atol``), same direction, curvature within ``rtol``."""
    if np.linalg.norm(a.anchor - b.anchor) > atol or a.tangent @ b.tangent < 1.0 - 1e-9:
        return False
    return abs(a.k - b.k) <= rtol * max(abs(a.k), abs(b.k)) + 1e-12


# ---------------------------------------------------------------- support
class Support(enum.Enum):
    INSIDE = "inside_support"
    OUTSIDE = "outside_support"
    NONE = "not_supporting"


@dataclass(frozen=True)
class SupportVerdict:
    kind: Support
    max_violation: float
    violation_witness: Optional[float] = None
    inside_violation: float = 0.0     # deepest curve point inside the left region
    outside_violation: float = 0.0    # deepest curve point beyond the right side

    @property
    def supports(self) -> bool:
        return self.kind is not Support.NONE


def _refine_extreme(f, t_grid, i, n):
    """Bounded Brent (golden-section with parabolic steps) around grid index i."""
    h = TWO_PI / n
    res = minimize_scalar(f, bounds=(t_grid[i] - h, t_grid[i] + h), method="bounded",
                          options={"xatol": 1e-13})
    if res.fun < f(t_grid[i]):
        return wrap(res.x), float(res.fun)
    return float(t_grid[i]), float(f(t_grid[i]))


def _extremes(values, count):
    """Indices of the ``count`` largest cyclic local maxima."""
    loc = np.nonzero((values >= np.roll(values, 1)) & (values >= np.roll(values, -1)))[0]
    return loc[np.argsort(-values[loc], kind="stable")[:count]]


def classify_support(curve: PlaneCurve, t: float, c: Circline, tol: Tolerances = DEFAULT,
                     eps_sup: float | None = None) -> SupportVerdict:
    """Does ``c`` lie in one of the closed regions cut out by the curve?

    The curve must be simple and counterclockwise and ``c`` must touch it at
    ``t``.  Inside support means the curve never enters the open left region
    of ``c`` (for k > 0 the disc); outside support means the curve never
    crosses to the right side.  A circline meeting both conditions coincides
    with the curve and is reported as inside support.
    """
    diam = curve.diameter
    if eps_sup is None:
        eps_sup = tol.sup * diam
    jet = curve.jet(t, 1)
    p, v = jet[0, 0], jet[1, 0]
    if abs(c.side(p)[0]) > max(tol.geo * diam, 1e-12):
        raise NotTangent(f"circline misses γ({t:.6f}) by {abs(c.side(p)[0]):.3e}")
    tau = v / np.hypot(*v)
    cross = float(np.clip(tau[0] * c.tangent[1] - tau[1] * c.tangent[0], -1.0, 1.0))
    if abs(np.arcsin(cross)) > 1e-6:
        raise NotTangent(f"circline not tangent at t={t:.6f} (angle {np.arcsin(cross):.3e})")
    if tau @ c.tangent < 0:
        c = c.reversed()

    grid = curve.grid_t
    n = len(grid)
    vals = c.side(curve.grid_points)
    # grid extremes further than this below the threshold cannot reach it
    skip = eps_sup + 4.0 * curve.sag_bound

    def side_at(s):
        return float(c.side(curve.eval(s))[0])

    worst_in, w_in = 0.0, None
    for i in _extremes(vals, 4):
        if vals[i] < -skip:
            continue
        s, fv = _refine_extreme(lambda s: -side_at(s), grid, i, n)
        if -fv > worst_in:
            worst_in, w_in = -fv, s
    worst_out, w_out = 0.0, None
    for i in _extremes(-vals, 4):
        if vals[i] > skip:
            continue
        s, fv = _refine_extreme(side_at, grid, i, n)
        if -fv > worst_out:
            worst_out, w_out = -fv, s

    inside_ok = worst_in <= eps_sup and c.k > 0
    outside_ok = worst_out <= eps_sup
    if inside_ok:
        return SupportVerdict(Support.INSIDE, worst_in, w_in, worst_in, worst_out)
    if outside_ok:
        return SupportVerdict(Support.OUTSIDE, worst_out, w_out, worst_in, worst_out)
    if c.k > 0 and worst_in <= worst_out:
        return SupportVerdict(Support.NONE, worst_in, w_in, worst_in, worst_out)
    return SupportVerdict(Support.NONE, worst_out, w_out, worst_in, worst_out)


# --------------------------------------------------------------- inversion
def invert_point(center, radius: float, p, tol: Tolerances = DEFAULT) -> np.ndarray:
    c = np.asarray(center, dtype=float)
    u = np.asarray(p, dtype=float) - c
    d2 = float(u @ u)
    if d2 <= (tol.geo * max(radius, 1.0)) ** 2:
        raise AtCenter("point coincides with the inversion centre")
    return c + radius * radius * u / d2


def _reflect(v, unit):
    return v - 2.0 * (v @ unit) * unit


def invert_circline(center, radius: float, c: Circline, tol: Tolerances = DEFAULT) -> Circline:
    """Image of an oriented circline under inversion.

    The image is oriented by the differential of the inversion, so the image
    of a curve's osculating circline is the osculating circline of the
    image curve.  Its curvature is ``2 * S(O) / radius**2`` where ``S`` is the
    circline's quadratic side function and ``O`` the inversion centre; a
    circline through ``O`` therefore becomes a line.
    """
    o = np.asarray(center, dtype=float)
    rho2 = radius * radius
    a, tau, nu, k = c.anchor, c.tangent, c.normal, c.k
    u = a - o
    scale = max(radius, np.linalg.norm(u), 1e-300)
    if u @ u < (1e-6 * scale) ** 2:
        # re-anchor away from the centre
        if k != 0.0:
            a = a + 2.0 * nu / k
            tau = -tau
        else:
            a = a + radius * tau
        u = a - o
    nu = _left(tau)
    s_o = -(nu @ u) - 0.5 * k * (u @ u)
    d2 = u @ u
    image = o + rho2 * u / d2
    uh = u / np.sqrt(d2)
    tau_img = _reflect(tau, uh)
    return Circline(image, tau_img, 2.0 * s_o / rho2)


@dataclass(frozen=True, eq=False)
class InvertedCurve(PlaneCurve):
    """Image of ``base`` under inversion in the circle (center, radius).

    With complex notation and v = conj(γ - center), the image is
    center + radius**2 / v; derivatives follow from Faà di Bruno.
    """

    base: PlaneCurve
    center: tuple
    radius: float

    @property
    def degree(self) -> int:
        return self.base.degree

    def _jet(self, t, order):
        b = self.base.jet(t, order)
        c = complex(*self.center)
        z = b[..., 0] + 1j * b[..., 1]
        v = np.conj(z)
        v[0] = v[0] - np.conj(c)
        r2 = self.radius ** 2
        g1 = -r2 / v[0] ** 2
        out = np.empty((order + 1,) + z.shape[1:], dtype=complex)
        out[0] = c + r2 / v[0]
        if order >= 1:
            out[1] = g1 * v[1]
        if order >= 2:
            g2 = 2.0 * r2 / v[0] ** 3
            out[2] = g2 * v[1] ** 2 + g1 * v[2]
        if order >= 3:
            g3 = -6.0 * r2 / v[0] ** 4
            out[3] = g3 * v[1] ** 3 + 3.0 * g2 * v[1] * v[2] + g1 * v[3]
        return np.stack([out.real, out.imag], axis=-1)

    def chord(self, t, s):
        # r^2 (1/v_s - 1/v_t) = -r^2 conj(γ(s) - γ(t)) / (v_s v_t)
        c = complex(*self.center)
        base_t = self.base.jet(t, 0)[0, 0]
        base_s = self.base.jet(s, 0)[0]
        d = self.base.chord(t, s)
        vt = np.conj(complex(*base_t) - c)
        vs = np.conj(base_s[:, 0] + 1j * base_s[:, 1] - c)
        w = -(self.radius ** 2) * np.conj(d[:, 0] + 1j * d[:, 1]) / (vs * vt)
        return np.column_stack([w.real, w.imag])


def invert_curve(center, radius: float, curve: PlaneCurve, tol: Tolerances = DEFAULT) -> InvertedCurve:
    """Inversion image of a simple CCW curve about an interior centre.

    The image is again counterclockwise: inversion reverses orientation and
    swaps the bounded and unbounded sides, and the two effects cancel.
    """
    o = np.asarray(center, dtype=float)
    member = point_in_region(curve, o, tol)
    if member.location is Location.OUTSIDE:
        raise OutsideRegion(f"inversion centre {o.tolist()} lies outside the curve")
    if member.location is Location.BOUNDARY or member.distance < tol.d_min * curve.diameter:
        raise CenterTooClose(f"centre is {member.distance:.3e} from the curve")
    return InvertedCurve(curve, (float(o[0]), float(o[1])), float(radius))


def invert_circline_three_point(center, radius: float, c: Circline, tol: Tolerances = DEFAULT):
    """Unoriented image via three inverted points: (center, radius) or None for a line."""
    pts = c.points(3, extent=radius) if c.k != 0.0 else c.anchor + np.outer([-1.0, 0.3, 1.7], c.tangent) * radius
    w = np.array([invert_point(center, radius, p, tol) for p in pts])
    (ax, ay), (bx, by), (cx, cy) = w
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) < 1e-14 * max(1.0, np.abs(w).max()) ** 2:
        return None
    ux = ((ax ** 2 + ay ** 2) * (by - cy) + (bx ** 2 + by ** 2) * (cy - ay) + (cx ** 2 + cy ** 2) * (ay - by)) / d
    uy = ((ax ** 2 + ay ** 2) * (cx - bx) + (bx ** 2 + by ** 2) * (ax - cx) + (cx ** 2 + cy ** 2) * (bx - ax)) / d
    centre = np.array([ux, uy])
    return centre, float(np.linalg.norm(w[0] - centre))
