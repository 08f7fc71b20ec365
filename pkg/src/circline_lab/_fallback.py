"""Pure-numpy versions of the compiled kernels, same signatures and results."""
import numpy as np

_BLOCK = 1 << 20


def winding_numbers(poly, pts):
    poly = np.ascontiguousarray(poly, dtype=float)
    pts = np.ascontiguousarray(pts, dtype=float)
    a = poly
    b = np.roll(poly, -1, axis=0)
    out = np.zeros(len(pts), dtype=np.int64)
    step = max(1, _BLOCK // max(len(poly), 1))
    for lo in range(0, len(pts), step):
        p = pts[lo:lo + step, None, :]
        cross = (b[:, 0] - a[:, 0]) * (p[..., 1] - a[:, 1]) - (p[..., 0] - a[:, 0]) * (b[:, 1] - a[:, 1])
        up = (a[:, 1] <= p[..., 1]) & (b[:, 1] > p[..., 1]) & (cross > 0)
        down = (a[:, 1] > p[..., 1]) & (b[:, 1] <= p[..., 1]) & (cross < 0)
        out[lo:lo + step] = up.sum(axis=1) - down.sum(axis=1)
    return out


def _cross(ax, ay, bx, by, px, py):
    return (bx - ax) * (py - ay) - (px - ax) * (by - ay)


def polygon_crossings(poly, limit=-1):
    poly = np.ascontiguousarray(poly, dtype=float)
    n = len(poly)
    a = poly
    b = np.roll(poly, -1, axis=0)
    found = []
    step = max(1, _BLOCK // max(n, 1))
    j_all = np.arange(n)
    for lo in range(0, n, step):
        i = np.arange(lo, min(lo + step, n))[:, None]
        j = j_all[None, :]
        valid = (j >= i + 2) & ~((i == 0) & (j == n - 1))
        ax, ay = a[i, 0], a[i, 1]
        bx, by = b[i, 0], b[i, 1]
        cx, cy = a[j, 0], a[j, 1]
        dx, dy = b[j, 0], b[j, 1]
        o1 = _cross(ax, ay, bx, by, cx, cy)
        o2 = _cross(ax, ay, bx, by, dx, dy)
        o3 = _cross(cx, cy, dx, dy, ax, ay)
        o4 = _cross(cx, cy, dx, dy, bx, by)
        hit = valid & (o1 * o2 < 0) & (o3 * o4 < 0)
        ii, jj = np.nonzero(hit)
        for p, q in zip(ii + lo, jj):
            found.append((int(p), int(q)))
            if 0 <= limit <= len(found):
                return np.asarray(found, dtype=np.int64).reshape(-1, 2)
    return np.asarray(found, dtype=np.int64).reshape(-1, 2)


def nearest_sample(samples, pts):
    samples = np.ascontiguousarray(samples, dtype=float)
    pts = np.ascontiguousarray(pts, dtype=float)
    dist = np.empty(len(pts))
    idx = np.empty(len(pts), dtype=np.int64)
    step = max(1, _BLOCK // max(len(samples), 1))
    for lo in range(0, len(pts), step):
        d2 = ((pts[lo:lo + step, None, :] - samples[None, :, :]) ** 2).sum(axis=-1)
        k = d2.argmin(axis=1)
        idx[lo:lo + step] = k
        dist[lo:lo + step] = np.sqrt(d2[np.arange(len(k)), k])
    return dist, idx
