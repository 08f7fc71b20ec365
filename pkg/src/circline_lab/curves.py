"""Closed parametric plane curves on t in [0, 2*pi).

A curve exposes its position and first three derivatives through
:meth:`PlaneCurve.jet`.  :class:`FourierCurve` stores truncated trigonometric
series and differentiates them exactly; :class:`ReversedCurve` and
:class:`InvertedCurve` (see :mod:`circline_lab.circlines`) wrap another curve
and apply the chain rule.

Every global scan runs on a uniform grid of ``max(1024, 256 * degree)``
parameters, cached on the curve object.  Curves are immutable, so the caches
never go stale.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from . import kernels
from .config import DEFAULT, Tolerances
from .errors import DegenerateSpeed, NotSimple, RejectionExhausted, ZeroArea

TWO_PI = 2.0 * np.pi

_GL_X, _GL_W = np.polynomial.legendre.leggauss(12)
_GL_X = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W


def wrap(t):
    """Canonical parameter representative in [0, 2*pi)."""
    r = np.mod(t, TWO_PI)
    if np.ndim(r) == 0:
        return 0.0 if r >= TWO_PI else float(r)
    return np.where(r >= TWO_PI, 0.0, r)


def param_distance(s, t):
    """Cyclic distance between two parameters."""
    d = np.mod(np.asarray(s) - np.asarray(t), TWO_PI)
    return np.minimum(d, TWO_PI - d)


class PlaneCurve:
    """Base class: subclasses implement ``_jet`` and set ``degree``."""

    degree: int = 1

    def _jet(self, t: np.ndarray, order: int) -> np.ndarray:
        raise NotImplementedError

    def jet(self, t, order=3):
        """Array of shape (order+1, len(t), 2): position, then derivatives."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return self._jet(t, order)

    def chord(self, t: float, s) -> np.ndarray:
        """γ(s) - γ(t), accurate when s is close to t (overridden where possible)."""
        return self.jet(s, 0)[0] - self.jet(t, 0)[0, 0]

    def eval(self, t, order=0):
        if order not in (0, 1, 2, 3):
            raise ValueError("order must be 0..3")
        scalar = np.ndim(t) == 0
        out = self.jet(t, order)[order]
        return out[0] if scalar else out

    # ------------------------------------------------------------------ grid
    @cached_property
    def grid_size(self) -> int:
        return max(1024, 256 * int(self.degree))

    @cached_property
    def grid_t(self) -> np.ndarray:
        return np.arange(self.grid_size) * (TWO_PI / self.grid_size)

    @cached_property
    def grid_jet(self) -> np.ndarray:
        return self.jet(self.grid_t, 3)

    @property
    def grid_points(self) -> np.ndarray:
        return self.grid_jet[0]

    @cached_property
    def grid_curvature(self) -> np.ndarray:
        return _curvature_from_jet(self.grid_jet)

    @cached_property
    def grid_curvature_derivative(self) -> np.ndarray:
        return _curvature_derivative_from_jet(self.grid_jet)

    # ----------------------------------------------------------- aggregates
    @cached_property
    def _length_table(self):
        h = TWO_PI / self.grid_size
        nodes = (self.grid_t[:, None] + h * _GL_X[None, :]).ravel()
        d1 = self.jet(nodes, 1)[1]
        speed = np.hypot(d1[:, 0], d1[:, 1]).reshape(self.grid_size, -1)
        panels = h * (speed @ _GL_W)
        return np.concatenate([[0.0], np.cumsum(panels)])

    @cached_property
    def length(self) -> float:
        return float(self._length_table[-1])

    @cached_property
    def diameter(self) -> float:
        from scipy.spatial import ConvexHull

        pts = self.grid_points
        try:
            hull = pts[ConvexHull(pts).vertices]
        except Exception:
            hull = pts
        d = hull[:, None, :] - hull[None, :, :]
        return float(np.sqrt((d ** 2).sum(-1).max()))

    @cached_property
    def signed_area(self) -> float:
        p, d = self.grid_jet[0], self.grid_jet[1]
        h = TWO_PI / self.grid_size
        return float(0.5 * h * np.sum(p[:, 0] * d[:, 1] - p[:, 1] * d[:, 0]))

    @cached_property
    def bounding_box(self):
        pts = self.grid_points
        return pts.min(axis=0), pts.max(axis=0)

    @cached_property
    def sag_bound(self) -> float:
        """Upper bound on chord-to-arc deviation for one grid step."""
        h = TWO_PI / self.grid_size
        d2 = self.grid_jet[2]
        return float(1.25 * np.hypot(d2[:, 0], d2[:, 1]).max() * h * h / 8.0)

    def cumulative_length(self, t: float) -> float:
        """Arc length from parameter 0 to ``t`` (``t`` may exceed 2*pi)."""
        turns = np.floor(t / TWO_PI)
        r = t - turns * TWO_PI
        h = TWO_PI / self.grid_size
        i = min(int(r / h), self.grid_size - 1)
        t0 = i * h
        w = r - t0
        partial = 0.0
        if w > 0.0:
            d1 = self.jet(t0 + w * _GL_X, 1)[1]
            partial = w * float(np.hypot(d1[:, 0], d1[:, 1]) @ _GL_W)
        return float(turns * self.length + self._length_table[i] + partial)


def _curvature_from_jet(jet):
    d1, d2 = jet[1], jet[2]
    num = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    speed = np.hypot(d1[:, 0], d1[:, 1])
    return num / speed ** 3


def _curvature_derivative_from_jet(jet):
    d1, d2, d3 = jet[1], jet[2], jet[3]
    num = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    dnum = d1[:, 0] * d3[:, 1] - d1[:, 1] * d3[:, 0]
    s2 = d1[:, 0] ** 2 + d1[:, 1] ** 2
    s = np.sqrt(s2)
    dot = d1[:, 0] * d2[:, 0] + d1[:, 1] * d2[:, 1]
    return dnum / (s2 * s) - 3.0 * num * dot / (s2 * s2 * s)


@dataclass(frozen=True, eq=False)
class FourierCurve(PlaneCurve):
    """x(t) = x0 + sum_k xc[k] cos(kt) + xs[k] sin(kt), likewise y; k = 1..m."""

    x0: float
    xc: np.ndarray
    xs: np.ndarray
    y0: float
    yc: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        arrays = [np.atleast_1d(np.asarray(a, dtype=float)) for a in (self.xc, self.xs, self.yc, self.ys)]
        m = max(1, max(len(a) for a in arrays))
        arrays = [np.pad(a, (0, m - len(a))) for a in arrays]
        for name, a in zip(("xc", "xs", "yc", "ys"), arrays):
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        object.__setattr__(self, "x0", float(self.x0))
        object.__setattr__(self, "y0", float(self.y0))

    @property
    def degree(self) -> int:
        return len(self.xc)

    @classmethod
    def from_coefficients(cls, x_const=0.0, x_cos=(), x_sin=(), y_const=0.0, y_cos=(), y_sin=(),
                          tol: Tolerances = DEFAULT, check=True):
        curve = cls(x_const, x_cos, x_sin, y_const, y_cos, y_sin)
        if check:
            check_regular(curve, tol)
        return curve

    def _jet(self, t, order):
        k = np.arange(1, self.degree + 1, dtype=float)
        kt = np.outer(t, k)
        c, s = np.cos(kt), np.sin(kt)
        out = np.empty((order + 1, len(t), 2))
        coef = np.stack([self.xc, self.yc], axis=1)
        coef_s = np.stack([self.xs, self.ys], axis=1)
        out[0] = c @ coef + s @ coef_s
        out[0, :, 0] += self.x0
        out[0, :, 1] += self.y0
        kk = k[:, None]
        if order >= 1:
            out[1] = -s @ (kk * coef) + c @ (kk * coef_s)
        if order >= 2:
            out[2] = -c @ (kk ** 2 * coef) - s @ (kk ** 2 * coef_s)
        if order >= 3:
            out[3] = s @ (kk ** 3 * coef) - c @ (kk ** 3 * coef_s)
        return out

    def chord(self, t, s):
        # cos ks - cos kt = -2 sin(k(s+t)/2) sin(k(s-t)/2), likewise for sin
        s = np.atleast_1d(np.asarray(s, dtype=float))
        k = np.arange(1, self.degree + 1, dtype=float)
        half_sum = np.outer(0.5 * (s + t), k)
        half_diff = np.sin(np.outer(0.5 * (s - t), k))
        dc = -2.0 * np.sin(half_sum) * half_diff
        ds = 2.0 * np.cos(half_sum) * half_diff
        return np.column_stack([dc @ self.xc + ds @ self.xs, dc @ self.yc + ds @ self.ys])

    def reversed(self) -> "FourierCurve":
        return FourierCurve(self.x0, self.xc, -self.xs, self.y0, self.yc, -self.ys)

    def scaled(self, factor: float) -> "FourierCurve":
        f = float(factor)
        return FourierCurve(f * self.x0, f * self.xc, f * self.xs, f * self.y0, f * self.yc, f * self.ys)

    def translated(self, offset) -> "FourierCurve":
        dx, dy = offset
        return FourierCurve(self.x0 + dx, self.xc, self.xs, self.y0 + dy, self.yc, self.ys)

    def coefficients(self) -> dict:
        return {
            "x.const": self.x0, "x.cos": self.xc.tolist(), "x.sin": self.xs.tolist(),
            "y.const": self.y0, "y.cos": self.yc.tolist(), "y.sin": self.ys.tolist(),
        }


@dataclass(frozen=True, eq=False)
class ReversedCurve(PlaneCurve):
    """The curve traversed backwards: t -> base(-t)."""

    base: PlaneCurve

    @property
    def degree(self) -> int:
        return self.base.degree

    def _jet(self, t, order):
        out = self.base.jet(-t, order)
        for k in range(1, order + 1, 2):
            out[k] = -out[k]
        return out

    def chord(self, t, s):
        return self.base.chord(-t, -np.asarray(s, dtype=float))


def evaluate(curve: PlaneCurve, t, order: int = 0):
    """Position (order 0) or the order-th derivative at ``t``."""
    return curve.eval(t, order)


def _check_speed(jet, tol):
    d1 = jet[1]
    speed = np.hypot(d1[:, 0], d1[:, 1])
    if np.any(speed < tol.eps_reg):
        raise DegenerateSpeed(f"speed {speed.min():.3e} below {tol.eps_reg:g}")


def signed_curvature(curve: PlaneCurve, t, tol: Tolerances = DEFAULT):
    """(x'y'' - y'x'') / |γ'|^3; scalar in, scalar out."""
    jet = curve.jet(t, 2)
    _check_speed(jet, tol)
    k = _curvature_from_jet(jet)
    return float(k[0]) if np.ndim(t) == 0 else k


def curvature_derivative(curve: PlaneCurve, t, tol: Tolerances = DEFAULT):
    """d(kappa)/dt from exact third derivatives."""
    jet = curve.jet(t, 3)
    _check_speed(jet, tol)
    k = _curvature_derivative_from_jet(jet)
    return float(k[0]) if np.ndim(t) == 0 else k


def curvature_extrema(curve: PlaneCurve, tol: Tolerances = DEFAULT):
    """((t_max, kappa_max), (t_min, kappa_min)) refined from the grid."""
    k = curve.grid_curvature
    grid = curve.grid_t
    h = TWO_PI / len(grid)
    out = []
    for sign in (1.0, -1.0):
        best_t, best_v = float(grid[np.argmax(sign * k)]), float(np.max(sign * k))
        loc = np.nonzero((sign * k >= np.roll(sign * k, 1)) & (sign * k >= np.roll(sign * k, -1)))[0]
        loc = loc[np.argsort(-sign * k[loc], kind="stable")[:4]]
        for i in loc:
            res = minimize_scalar(lambda s: -sign * signed_curvature(curve, s, tol),
                                  bounds=(grid[i] - h, grid[i] + h), method="bounded",
                                  options={"xatol": 1e-13})
            if -res.fun > best_v:
                best_t, best_v = wrap(res.x), float(-res.fun)
        out.append((best_t, sign * best_v))
    return tuple(out)


def max_abs_curvature(curve: PlaneCurve, tol: Tolerances = DEFAULT):
    """(t, |kappa|) at the largest absolute curvature."""
    (t1, k1), (t2, k2) = curvature_extrema(curve, tol)
    return (t1, abs(k1)) if abs(k1) >= abs(k2) else (t2, abs(k2))


def curvature_derivative_roots(curve: PlaneCurve, lo: float, hi: float, samples: int | None = None,
                               xtol: float = 1e-12, tol: Tolerances = DEFAULT):
    """Sign changes of kappa' on [lo, hi], refined by bisection.

    Returns (t, +1) for local maxima of kappa (kappa' goes + to -) and
    (t, -1) for local minima, in increasing order of t (unwrapped).
    """
    from scipy.optimize import brentq

    if samples is None:
        samples = curve.grid_size
    ts = np.linspace(lo, hi, samples + 1)
    vals = curvature_derivative(curve, ts, tol)
    out = []
    for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]:
        a, b, fa, fb = ts[i], ts[i + 1], vals[i], vals[i + 1]
        if fa == 0.0 and i > 0:
            continue                      # counted at the previous interval
        if fa == 0.0 or fb == 0.0:
            root = a if fa == 0.0 else b
        else:
            root = brentq(lambda x: curvature_derivative(curve, x, tol), a, b, xtol=xtol, rtol=1e-15)
        out.append((float(root), 1 if fa > 0 or fb < 0 else -1))
    return out


def has_constant_curvature(curve: PlaneCurve, threshold: float = 1e-9) -> bool:
    return float(np.abs(curve.grid_curvature_derivative).max()) < threshold


def check_regular(curve: PlaneCurve, tol: Tolerances = DEFAULT) -> float:
    """Minimum speed over the curve; raises DegenerateSpeed below ``eps_reg``."""
    d1 = curve.grid_jet[1]
    speed = np.hypot(d1[:, 0], d1[:, 1])
    i = int(speed.argmin())
    h = TWO_PI / curve.grid_size

    def f(s):
        v = curve.eval(s, 1)
        return float(np.hypot(v[0], v[1]))

    res = minimize_scalar(f, bounds=(curve.grid_t[i] - h, curve.grid_t[i] + h), method="bounded",
                          options={"xatol": 1e-12})
    vmin = min(float(speed[i]), float(res.fun))
    if vmin < tol.eps_reg:
        raise DegenerateSpeed(f"minimum speed {vmin:.3e} near t={curve.grid_t[i]:.6f}")
    return vmin


# ----------------------------------------------------------------- arcs
@dataclass(frozen=True)
class Arc:
    """Parameter interval traversed in the curve's direction.

    ``end`` is unwrapped: ``start < end <= start + 2*pi``; equal endpoints mod
    2*pi denote the full loop.
    """

    start: float
    end: float

    @classmethod
    def between(cls, a: float, b: float) -> "Arc":
        a = wrap(a)
        span = float(np.mod(b - a, TWO_PI))
        if span == 0.0:
            span = TWO_PI
        return cls(a, a + span)

    @classmethod
    def full(cls, base: float = 0.0) -> "Arc":
        a = wrap(base)
        return cls(a, a + TWO_PI)

    @property
    def span(self) -> float:
        return self.end - self.start

    def offset(self, t: float) -> float:
        """Forward parameter offset of ``t`` from ``start`` in [0, 2*pi)."""
        return float(np.mod(t - self.start, TWO_PI))

    def contains(self, t: float, slack: float = 0.0) -> bool:
        off = self.offset(t)
        return off <= self.span + slack or off >= TWO_PI - slack

    def sample(self, n: int, margin: float = 0.0) -> np.ndarray:
        return np.linspace(self.start + margin, self.end - margin, n)


def arc_length(curve: PlaneCurve, arc: Arc) -> float:
    """∫|γ'| dt over the arc (panel Gauss-Legendre on the cached grid)."""
    if arc.span >= TWO_PI:
        return curve.length
    return curve.cumulative_length(arc.end) - curve.cumulative_length(arc.start)


def parameter_at_length(curve: PlaneCurve, start: float, distance: float) -> float:
    """Parameter reached after travelling ``distance`` forward from ``start``."""
    target = curve.cumulative_length(start) + distance
    lo, hi = start, start + TWO_PI * (1.0 + distance / curve.length)
    t = start + TWO_PI * distance / curve.length
    for _ in range(100):
        f = curve.cumulative_length(t) - target
        if f > 0:
            hi = t
        else:
            lo = t
        if abs(f) <= 1e-15 * curve.length or hi - lo < 1e-15:
            break
        v = curve.eval(t, 1)
        step = t - f / float(np.hypot(v[0], v[1]))
        t = step if lo < step < hi else 0.5 * (lo + hi)
    return float(t)


def arc_midpoint(curve: PlaneCurve, arc: Arc) -> float:
    """Parameter splitting the arc into two flanks of equal arc length."""
    half = 0.5 * arc_length(curve, arc)
    return wrap(parameter_at_length(curve, arc.start, half))


def antipode(curve: PlaneCurve, t: float) -> float:
    return wrap(parameter_at_length(curve, wrap(t), 0.5 * curve.length))


# ------------------------------------------------------------ simplicity
class Simplicity(NamedTuple):
    simple: bool
    witness: tuple | None = None     # (s, t) with γ(s) ≈ γ(t)
    distance: float = float("inf")


def _box_tree(lo, hi):
    """Bottom-up bounding boxes over leaves, padded to a power of two."""
    n = len(lo)
    size = 1 << int(np.ceil(np.log2(max(n, 1))))
    big = np.full((size - n, 2), np.inf)
    levels = [(np.vstack([lo, big]), np.vstack([hi, -big]))]
    while len(levels[-1][0]) > 1:
        a, b = levels[-1]
        levels.append((np.minimum(a[0::2], a[1::2]), np.maximum(b[0::2], b[1::2])))
    return levels[::-1]


def _segment_distance(p0, p1, q0, q1):
    """Vectorised minimum distance between segments p0p1 and q0q1."""

    def point_seg(x, a, b):
        ab = b - a
        w = (ab ** 2).sum(-1)
        u = np.clip(((x - a) * ab).sum(-1) / np.where(w > 0, w, 1.0), 0.0, 1.0)
        return np.hypot(*(a + u[:, None] * ab - x).T), u

    def cross(o, a, b):
        return (a[:, 0] - o[:, 0]) * (b[:, 1] - o[:, 1]) - (a[:, 1] - o[:, 1]) * (b[:, 0] - o[:, 0])

    d1, u1 = point_seg(p0, q0, q1)
    d2, u2 = point_seg(p1, q0, q1)
    d3, u3 = point_seg(q0, p0, p1)
    d4, u4 = point_seg(q1, p0, p1)
    stack = np.stack([d1, d2, d3, d4])
    dist = stack.min(axis=0)
    hit = (cross(p0, p1, q0) * cross(p0, p1, q1) < 0) & (cross(q0, q1, p0) * cross(q0, q1, p1) < 0)
    dist = np.where(hit, 0.0, dist)
    # parameter fractions (u on p, v on q) of an approximate closest pair
    which = stack.argmin(axis=0)
    u = np.select([which == 0, which == 1, which == 2, which == 3], [0.0, 1.0, u3, u4])
    v = np.select([which == 0, which == 1, which == 2, which == 3], [u1, u2, 0.0, 1.0])
    return dist, u, v


def _refine_pair(curve, s, t, iters=40):
    """Gauss-Newton on γ(s) - γ(t) = 0 (least squares near tangency)."""
    best = (s, t, float(np.linalg.norm(curve.eval(s) - curve.eval(t))))
    for _ in range(iters):
        js, jt = curve.jet([s, t], 1)[:, :, :].transpose(1, 0, 2)
        r = js[0] - jt[0]
        J = np.column_stack([js[1], -jt[1]])
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        s, t = s + step[0], t + step[1]
        d = float(np.linalg.norm(curve.eval(s) - curve.eval(t)))
        if d < best[2]:
            best = (s, t, d)
        if np.abs(step).max() < 1e-15:
            break
    return best


def is_simple(curve: PlaneCurve, tol: Tolerances = DEFAULT) -> Simplicity:
    """Look for distinct parameters with coincident points.

    Leaf boxes are the grid segments padded by the chord sag bound; a
    bounding-box hierarchy prunes far pairs level by level, surviving leaf
    pairs are screened by exact segment distance and then refined on the
    smooth curve.
    """
    pts = curve.grid_points
    n = len(pts)
    nxt = np.roll(pts, -1, axis=0)
    eps_geo = tol.geo * curve.diameter
    pad = curve.sag_bound + eps_geo
    lo = np.minimum(pts, nxt) - pad
    hi = np.maximum(pts, nxt) + pad
    levels = _box_tree(lo, hi)

    pairs = np.zeros((1, 2), dtype=np.int64)
    for depth in range(1, len(levels)):
        blo, bhi = levels[depth]
        i, j = pairs[:, 0], pairs[:, 1]
        same = i == j
        ci = np.concatenate([2 * i, 2 * i, 2 * i + 1, (2 * i + 1)[~same]])
        cj = np.concatenate([2 * j, 2 * j + 1, 2 * j + 1, (2 * j)[~same]])
        keep = np.all(blo[ci] <= bhi[cj], axis=1) & np.all(blo[cj] <= bhi[ci], axis=1)
        pairs = np.column_stack([ci[keep], cj[keep]])
        pairs.sort(axis=1)
    i, j = pairs[:, 0], pairs[:, 1]
    gap = np.minimum(j - i, n - (j - i))
    keep = (j < n) & (gap >= 2)
    i, j = i[keep], j[keep]
    if len(i) == 0:
        return Simplicity(True)
    dist, u, v = _segment_distance(pts[i], nxt[i], pts[j], nxt[j])
    close = dist <= 2.0 * pad
    h = TWO_PI / n
    best = None
    for a, b, ua, vb in zip(i[close], j[close], u[close], v[close]):
        s0 = (a + ua) * h
        t0 = (b + vb) * h
        s, t, d = _refine_pair(curve, s0, t0)
        if d < eps_geo and param_distance(s, t) > tol.delta_param:
            if best is None or d < best[2]:
                best = (wrap(s), wrap(t), d)
    if best is None:
        return Simplicity(True)
    return Simplicity(False, (best[0], best[1]), best[2])


def normalize_orientation(curve: PlaneCurve, tol: Tolerances = DEFAULT) -> PlaneCurve:
    """Return the curve traversed counterclockwise (positive signed area)."""
    area = curve.signed_area
    eps_geo = tol.geo * curve.diameter
    if abs(area) < eps_geo ** 2:
        raise ZeroArea(f"signed area {area:.3e}")
    if area > 0:
        return curve
    if isinstance(curve, FourierCurve):
        return curve.reversed()
    if isinstance(curve, ReversedCurve):
        return curve.base
    return ReversedCurve(curve)


# ------------------------------------------------------- region membership
class Location(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY = "boundary"


class Membership(NamedTuple):
    location: Location
    distance: float


def nearest_point(curve: PlaneCurve, p, candidates: int = 3):
    """(parameter, distance) of the curve point closest to ``p``."""
    p = np.asarray(p, dtype=float)
    pts = curve.grid_points
    d2 = ((pts - p) ** 2).sum(axis=1)
    n = len(d2)
    local = np.nonzero((d2 <= np.roll(d2, 1)) & (d2 <= np.roll(d2, -1)))[0]
    local = local[np.argsort(d2[local], kind="stable")[:candidates]]
    best_t, best_d = float(curve.grid_t[d2.argmin()]), float(np.sqrt(d2.min()))
    h = TWO_PI / n
    for i in local:
        t = float(curve.grid_t[i])
        for _ in range(30):
            j = curve.jet(t, 2)
            r = j[0, 0] - p
            g = r @ j[1, 0]
            dg = j[1, 0] @ j[1, 0] + r @ j[2, 0]
            if dg <= 0:
                break
            step = -g / dg
            step = float(np.clip(step, -h, h))
            t += step
            if abs(step) < 1e-15:
                break
        d = float(np.linalg.norm(curve.eval(t) - p))
        if d < best_d:
            best_t, best_d = wrap(t), d
    return best_t, best_d


def winding_number(curve: PlaneCurve, p) -> int:
    return int(kernels.winding_numbers(curve.grid_points, np.atleast_2d(p))[0])


def point_in_region(curve: PlaneCurve, p, tol: Tolerances = DEFAULT) -> Membership:
    """Classify ``p`` against the closed region bounded by a simple CCW curve."""
    t, dist = nearest_point(curve, p)
    if dist < tol.geo * curve.diameter:
        return Membership(Location.BOUNDARY, dist)
    if dist < 16.0 * curve.sag_bound + 1e-12:
        # polygon may misplace points this close; use the side of the tangent
        j = curve.jet(t, 1)
        v, d = j[1, 0], np.asarray(p, dtype=float) - j[0, 0]
        side = v[0] * d[1] - v[1] * d[0]
        return Membership(Location.INSIDE if side > 0 else Location.OUTSIDE, dist)
    w = winding_number(curve, p)
    if w == 1:
        return Membership(Location.INSIDE, dist)
    if w == 0:
        return Membership(Location.OUTSIDE, dist)
    raise NotSimple(f"winding number {w} around {tuple(p)}")


def inside_mask(curve: PlaneCurve, pts) -> np.ndarray:
    """Vectorised interior test by polygon winding (no boundary handling)."""
    return kernels.winding_numbers(curve.grid_points, pts) != 0


# --------------------------------------------------------------- presets
def circle(radius: float = 1.0, center=(0.0, 0.0)) -> FourierCurve:
    return FourierCurve(center[0], [radius], [0.0], center[1], [0.0], [radius])


def ellipse(a: float, b: float) -> FourierCurve:
    return normalize_orientation(FourierCurve(0.0, [a], [0.0], 0.0, [0.0], [b]))


def limacon(a: float, b: float) -> FourierCurve:
    """r = b + a cos t; has an inner loop (not simple) when a > b."""
    return FourierCurve(0.5 * a, [b, 0.5 * a], [0.0, 0.0], 0.0, [0.0, 0.0], [b, 0.5 * a])


def figure_eight(scale: float = 1.0) -> FourierCurve:
    """(sin 2t, sin t): crosses itself at the origin."""
    return FourierCurve(0.0, [0.0, 0.0], [0.0, scale], 0.0, [0.0, 0.0], [scale, 0.0])


def wavy_annulus(lobes: int = 4, amplitude: float = 0.1, radius: float = 1.0) -> FourierCurve:
    """Polar curve r = radius * (1 + amplitude * cos(lobes * t))."""
    n = int(lobes)
    m = n + 1
    xc, xs, yc, ys = (np.zeros(m) for _ in range(4))
    xc[0] += radius
    ys[0] += radius
    e = 0.5 * radius * amplitude
    xc[n] += e                    # cos((n+1)t)
    ys[n] += e                    # sin((n+1)t)
    if n == 1:
        x0 = e
    else:
        x0 = 0.0
        xc[n - 2] += e            # cos((n-1)t)
        ys[n - 2] -= e            # sin((n-1)t)
    curve = FourierCurve(x0, xc, xs, 0.0, yc, ys)
    check_regular(curve)
    return normalize_orientation(curve)


def _coarse_self_crossing(curve: FourierCurve, n: int = 256) -> bool:
    t = np.arange(n) * (TWO_PI / n)
    return len(kernels.polygon_crossings(curve.jet(t, 0)[0], 1)) > 0


def sample_fourier_curve(degree: int, amplitude: float, seed, tol: Tolerances = DEFAULT,
                         max_draws: int = 10_000):
    """Rejection-sample a simple regular curve; returns (curve, draws used).

    Each draw perturbs the unit circle by ``amplitude * U(-1, 1) / k`` on
    every coefficient of harmonic k = 1..degree.
    """
    rng = np.random.default_rng(seed)
    m = int(degree)
    k = np.arange(1, m + 1, dtype=float)
    for draw in range(1, max_draws + 1):
        c = amplitude * rng.uniform(-1.0, 1.0, size=(4, m)) / k
        c[0, 0] += 1.0
        c[3, 0] += 1.0
        x0, y0 = amplitude * rng.uniform(-1.0, 1.0, size=2)
        curve = FourierCurve(x0, c[0], c[1], y0, c[2], c[3])
        try:
            check_regular(curve, tol)
        except DegenerateSpeed:
            continue
        if _coarse_self_crossing(curve) or not is_simple(curve, tol).simple:
            continue
        try:
            return normalize_orientation(curve, tol), draw
        except ZeroArea:
            continue
    raise RejectionExhausted(f"no simple regular curve in {max_draws} draws "
                             f"(degree={degree}, amplitude={amplitude}, seed={seed})")


def fourier_random(degree: int, amplitude: float, seed, tol: Tolerances = DEFAULT) -> FourierCurve:
    return sample_fourier_curve(degree, amplitude, seed, tol)[0]


PRESETS = {
    "circle": circle,
    "ellipse": ellipse,
    "fourier_random": fourier_random,
    "limacon": limacon,
    "figure_eight": figure_eight,
    "wavy_annulus": wavy_annulus,
}


def presets(name: str, params=()) -> FourierCurve:
    """Build a named preset curve from positional parameters."""
    try:
        factory = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    if name == "fourier_random":
        degree, amplitude, seed = params
        return factory(int(degree), float(amplitude), int(seed))
    if name == "circle" and len(params) == 3:
        return factory(float(params[0]), (float(params[1]), float(params[2])))
    if name == "wavy_annulus" and params:
        params = (int(params[0]),) + tuple(float(p) for p in params[1:])
    return factory(*params)
