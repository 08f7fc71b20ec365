"""Random-curve invariant suite and the fuzz driver behind ``circline-lab fuzz``."""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .circlines import Support, circlines_close, invert_circline, invert_curve, osculating_circline
from .config import DEFAULT, Tolerances
from .curves import is_simple, param_distance, sample_fourier_curve
from .errors import CirclineError, RejectionExhausted
from .keylemma import find_inside_support
from .specfile import dump_curve, spec_hash
from .vertices import find_vertices, four_vertex_report, monotone_arcs, tait_kneser_check

INVERSION_SAMPLES = 16


def _e(x) -> str:
    return f"{float(x):.6e}"


def _check(fn):
    try:
        ok, detail = fn()
    except CirclineError as exc:
        return {"ok": False, "detail": f"{type(exc).__name__}: {exc}"}
    return {"ok": bool(ok), "detail": detail}


def invariant_suite(curve, tol: Tolerances = DEFAULT) -> dict:
    """Run every per-curve invariant; ``{name: {"ok": bool, "detail": str}}``."""
    diam = curve.diameter
    out = {}

    def simple_ccw():
        s = is_simple(curve, tol)
        return s.simple and curve.signed_area > 0, f"simple={s.simple} area={_e(curve.signed_area)}"
    out["simple_ccw"] = _check(simple_ccw)

    vertices = find_vertices(curve, tol)

    def vertex_count():
        n = len(vertices)
        even = vertices.degenerate or n % 2 == 0
        return n >= 4 and even, f"count={n} degenerate={vertices.degenerate}"
    out["four_vertices"] = _check(vertex_count)

    def key_lemma():
        t, _, trace = find_inside_support(curve, 0.0, tol)
        v = trace.verdict
        lengths = [curve.length] + trace.lengths
        halving = all(b <= 0.5 * a * (1 + 1e-9) for a, b in zip(lengths, lengths[1:]))
        ok = v.kind is Support.INSIDE and v.max_violation <= 1e-6 * diam and halving
        return ok, f"t={t:.12f} violation={_e(v.max_violation)} steps={len(trace.steps)} halving={halving}"
    out["key_lemma"] = _check(key_lemma)

    def four_vertex():
        rep = four_vertex_report(curve, tol)
        ins = sum(rep.verdicts[t].kind is Support.INSIDE for t in rep.inside)
        outs = sum(rep.verdicts[t].kind is Support.OUTSIDE for t in rep.outside)
        params = np.array(vertices.params)
        near = max(float(np.min(param_distance(t, params))) for t in rep.points) if len(params) else np.inf
        sep = rep.min_separation()
        ok = ins >= 2 and outs >= 2 and sep >= tol.delta_param and near <= 1e-4
        return ok, f"inside={ins} outside={outs} separation={_e(sep)} vertex_gap={_e(near)}"
    out["four_vertex_report"] = _check(four_vertex)

    def nesting():
        arcs = monotone_arcs(curve, vertices, tol=tol)
        verdicts = [tait_kneser_check(curve, a, tol) for a in arcs]
        worst = min((v.min_margin for v in verdicts), default=np.inf)
        return all(v.holds for v in verdicts), f"arcs={len(arcs)} min_margin={_e(worst)}"
    out["tait_kneser"] = _check(nesting)

    def inversion():
        from .incircle import largest_inscribed_disc
        center, radius = largest_inscribed_disc(curve, tol)
        image = invert_curve(center, radius, curve, tol)
        atol = 1e-6 * image.diameter
        worst = 0.0
        bad = 0
        for t in np.arange(INVERSION_SAMPLES) * (2 * np.pi / INVERSION_SAMPLES):
            a = osculating_circline(image, t, tol)
            b = invert_circline(center, radius, osculating_circline(curve, t, tol), tol)
            worst = max(worst, float(np.linalg.norm(a.anchor - b.anchor)))
            bad += not circlines_close(a, b, atol)
        return bad == 0, f"mismatches={bad} anchor_gap={_e(worst)}"
    out["inversion_contact"] = _check(inversion)
    return out


def _case(job):
    index, seed, degree, amplitude, overrides, max_draws = job
    tol = DEFAULT.with_overrides(overrides)
    try:
        curve, draws = sample_fourier_curve(degree, amplitude, [seed, index], tol, max_draws=max_draws)
    except RejectionExhausted as exc:
        return {"index": index, "status": "rejected", "draws": max_draws, "detail": str(exc)}
    text = dump_curve(curve)
    checks = invariant_suite(curve, tol)
    status = "pass" if all(c["ok"] for c in checks.values()) else "fail"
    return {"index": index, "status": status, "draws": draws, "spec_hash": spec_hash(text),
            "checks": checks, "spec": text}


def worker_count() -> int:
    cap = os.environ.get("CIRCLINE_LAB_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def run_fuzz(count: int, degree: int, amplitude: float, seed: int, overrides=None,
             max_draws: int = 2000, workers: int | None = None):
    """Run ``count`` cases; returns (manifest dict, failing case records).

    Cases are independent and collected in index order, so the manifest does
    not depend on scheduling or on the number of workers.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    overrides = dict(overrides or {})
    jobs = [(i, int(seed), int(degree), float(amplitude), overrides, int(max_draws)) for i in range(count)]
    workers = worker_count() if workers is None else workers
    if workers > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_case, jobs))
    else:
        results = [_case(j) for j in jobs]
    results.sort(key=lambda r: r["index"])
    summary = {s: sum(r["status"] == s for r in results) for s in ("pass", "fail", "rejected")}
    draws = sum(r["draws"] for r in results)
    accepted = summary["pass"] + summary["fail"]
    summary["draws"] = draws
    summary["rejection_rate"] = _e(1.0 - accepted / draws) if draws else _e(0.0)
    manifest = {
        "command": "fuzz",
        "seed": int(seed),
        "count": int(count),
        "degree": int(degree),
        "amplitude": float(amplitude),
        "max_draws": int(max_draws),
        "tolerances": overrides,
        "summary": summary,
        "cases": [{k: v for k, v in r.items() if k != "spec"} for r in results],
    }
    failures = [r for r in results if r["status"] != "pass"]
    return manifest, failures


def manifest_bytes(manifest: dict) -> bytes:
    return (json.dumps(manifest, sort_keys=True, indent=2) + "\n").encode()
