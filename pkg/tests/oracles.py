"""Independent brute-force references used by the tests."""
from functools import lru_cache

import numpy as np
from scipy.spatial import cKDTree

from circline_lab import kernels
from circline_lab.curves import sample_fourier_curve

TWO_PI = 2 * np.pi


def polyline_length(curve, t0, t1, segments=1_000_000):
    t = np.linspace(t0, t1, segments + 1)
    p = curve.eval(t)
    return float(np.hypot(*np.diff(p, axis=0).T).sum())


def fd_derivative(f, t, h=1e-5):
    return (f(t + h) - f(t - h)) / (2 * h)


def segment_crossings_numpy(poly, block=512):
    """All proper crossings between non-adjacent edges of a closed polygon."""
    a = poly
    b = np.roll(poly, -1, axis=0)
    n = len(poly)
    found = []

    def orient(p, q, r):
        return (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0])

    for i0 in range(0, n, block):
        i = np.arange(i0, min(n, i0 + block))[:, None]
        j = np.arange(n)[None, :]
        ai, bi = a[i], b[i]
        aj, bj = a[j], b[j]
        d1 = orient(ai, bi, aj)
        d2 = orient(ai, bi, bj)
        d3 = orient(aj, bj, ai)
        d4 = orient(aj, bj, bi)
        hit = (d1 * d2 < 0) & (d3 * d4 < 0)
        gap = np.abs(i - j)
        hit &= (gap > 1) & (gap < n - 1) & (j > i)
        ii, jj = np.nonzero(hit)
        found.extend(zip((ii + i0).tolist(), jj.tolist()))
    return found


def gon_is_simple(curve, n=4096):
    """The 4096-gon oracle: simple iff no two non-adjacent edges cross."""
    t = np.arange(n) * (TWO_PI / n)
    return len(kernels.polygon_crossings(curve.eval(t), 1)) == 0


def dense_min_distance(curve, p, samples=1_000_000):
    t = np.arange(samples) * (TWO_PI / samples)
    return float(np.sqrt(((curve.eval(t) - np.asarray(p)) ** 2).sum(axis=1).min()))


def grid_inscribed_radius(curve, n=512, samples=4096):
    """Best interior point of an n x n lattice over the bounding box.

    Distances come from a cKDTree over dense curve samples; lattice points
    are tested for insideness in decreasing-distance order, so the first
    interior hit is the answer.
    """
    lo, hi = curve.bounding_box
    X, Y = np.meshgrid(np.linspace(lo[0], hi[0], n), np.linspace(lo[1], hi[1], n))
    pts = np.column_stack([X.ravel(), Y.ravel()])
    tree = cKDTree(curve.eval(np.arange(samples) * (TWO_PI / samples)))
    d, _ = tree.query(pts)
    order = np.argsort(-d, kind="stable")
    poly = curve.eval(np.arange(4096) * (TWO_PI / 4096))
    for start in range(0, len(order), 2048):
        idx = order[start:start + 2048]
        inside = kernels.winding_numbers(poly, pts[idx]) == 1
        if inside.any():
            k = idx[np.argmax(inside)]
            return pts[k], float(d[k])
    raise ValueError("no interior lattice point")


def corpus_params(count=200):
    """Seed-fixed (degree, amplitude, seed) triples, degrees 2..6."""
    return [(2 + i % 5, round(0.15 + 0.02 * ((7 * i) % 11), 4), 1000 + i) for i in range(count)]


@lru_cache(maxsize=None)
def corpus(count=200):
    return tuple(sample_fourier_curve(d, a, s)[0] for d, a, s in corpus_params(count))


def crossing_instances(count=100, pool=None):
    """Seed-fixed (curve, circle) pairs whose crossings are interleaved.

    Circles are centred near the curve's sample mean with a radius drawn
    between the nearest and farthest curve distance, so they do cross.
    """
    from circline_lab.circlines import Circline
    from circline_lab.errors import TangentialIntersection
    from circline_lab.vertices import crossing_vertex_check

    pool = corpus() if pool is None else pool
    out = []
    for i in range(10 * count):
        curve = pool[i % len(pool)]
        rng = np.random.default_rng([77, i])
        pts = curve.grid_points
        c = pts.mean(axis=0) + 0.05 * curve.diameter * rng.standard_normal(2)
        d = np.hypot(*(pts - c).T)
        r = rng.uniform(d.min(), d.max())
        circle = Circline.from_center_radius(c, r)
        try:
            rep = crossing_vertex_check(curve, circle)
        except TangentialIntersection:
            continue
        if rep.interleaved and rep.n >= 1:
            out.append((curve, circle, rep))
            if len(out) == count:
                return out
    raise RuntimeError("not enough interleaved instances")


def circline_gap(a, b, reach, n=65):
    """Largest distance between the two circlines followed by arc length
    from their anchors over [-reach, reach]; lines are the k = 0 limit."""
    s = np.linspace(-reach, reach, n)[:, None]

    def walk(c):
        ks = c.k * s
        along = s * np.sinc(ks / np.pi)                     # sin(ks)/k
        across = s * ks / 2 * np.sinc(ks / (2 * np.pi)) ** 2  # (1 - cos ks)/k
        return c.anchor + along * c.tangent + across * c.normal

    return float(np.max(np.hypot(*(walk(a) - walk(b)).T)))
