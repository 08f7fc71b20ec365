"""``circline-lab`` command-line front end.

Every command prints a report: ``key=value`` lines, then a line ``---``
and the same data as a JSON object.  Exit codes: 0 ok, 2 bad input
(spec, arguments, tolerances), 3 precondition failed, 4 no convergence.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__, kernels, svg
from .circlines import Circline, classify_support, invert_curve, osculating_circline
from .config import DEFAULT
from .curves import (
    TWO_PI, FourierCurve, curvature_extrema, is_simple, signed_curvature,
)
from .errors import (
    AtCenter, CenterTooClose, CirclineError, CurvatureTooLarge, DegenerateSpeed, NoConvergence,
    NotContained, NotMonotone, NotSimple, NotTangent, OutsideRegion, RejectionExhausted,
    SpecParseError, TangentialIntersection, ZeroArea,
)
from .fuzz import manifest_bytes, run_fuzz
from .incircle import largest_inscribed_disc
from .keylemma import moon_in_puddle
from .specfile import dump_curve, load_spec, spec_hash
from .vertices import find_vertices, four_vertex_report

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_NO_CONVERGENCE = 0, 2, 3, 4

PARSE_ERRORS = (SpecParseError, DegenerateSpeed, ZeroArea)
PRECONDITION_ERRORS = (CurvatureTooLarge, NotSimple, OutsideRegion, CenterTooClose, AtCenter,
                       NotMonotone, TangentialIntersection, NotContained, NotTangent,
                       RejectionExhausted)

REFIT_SAMPLES = 4096
REFIT_CUTOFF = 1e-14


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- formatting
def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    return str(v)


def _plain(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, np.ndarray):
        return [_plain(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, float) and not np.isfinite(v):
        return str(v)
    return v


def format_report(report: dict) -> str:
    lines = [f"{k}={_fmt(v)}" for k, v in report.items() if not isinstance(v, dict)]
    lines.append("---")
    lines.append(json.dumps(_plain(report), sort_keys=True, indent=2))
    return "\n".join(lines) + "\n"


def _circline_dict(c: Circline):
    if c.k == 0.0:
        return {"line_point": c.anchor.tolist(), "direction": c.tangent.tolist()}
    return {"center": c.center.tolist(), "radius": c.radius, "k": c.k}


# ------------------------------------------------------------------ commands
def cmd_analyze(curve, args, tol):
    (t_max, k_max), (t_min, k_min) = curvature_extrema(curve, tol)
    simple = is_simple(curve, tol)
    verts = find_vertices(curve, tol)
    report = {
        "command": "analyze",
        "length": curve.length,
        "area": curve.signed_area,
        "diameter": curve.diameter,
        "max_kappa": k_max, "t_max_kappa": t_max,
        "min_kappa": k_min, "t_min_kappa": t_min,
        "simple": simple.simple,
        "constant_curvature": verts.constant_curvature,
        "vertex_count": "inf" if verts.constant_curvature else len(verts),
        "vertices": [v.t for v in verts.vertices],
        "vertex_kinds": [v.kind for v in verts.vertices],
    }
    if not simple.simple:
        report["self_intersection"] = list(simple.witness)
    points = [(curve.eval(v.t), "vertex") for v in verts.vertices]
    return report, lambda: svg.render(curve, points=points, title="analyze")


def cmd_moon(curve, args, tol):
    res = moon_in_puddle(curve, tol)
    report = {
        "command": "moon",
        "center": res.center.tolist(),
        "radius": res.radius,
        "t": res.t,
        "clearance": res.clearance,
        "steps": len(res.trace.steps),
        "arc_lengths": res.trace.lengths,
        "snapped": res.trace.snapped,
    }

    def picture():
        disc = Circline.from_center_radius(res.center, res.radius)
        circles = [(s.incircle, "trace") for s in res.trace.steps] + [(disc, "disc")]
        return svg.render(curve, circles, [(curve.eval(res.t), "inside")], "moon", [disc])
    return report, picture


def cmd_vertices(curve, args, tol):
    verts = find_vertices(curve, tol)
    report = {"command": "vertices", "constant_curvature": verts.constant_curvature}
    if verts.constant_curvature:
        report["notice"] = "constant curvature: every point is a vertex"
        report["vertex_count"] = "inf"
        report["vertices"] = []
    else:
        report["vertex_count"] = len(verts)
        report["vertices"] = [v.t for v in verts.vertices]
        report["vertex_kinds"] = [v.kind for v in verts.vertices]
        report["kappa"] = [float(signed_curvature(curve, v.t, tol)) for v in verts.vertices]
    points = [(curve.eval(v.t), "vertex") for v in verts.vertices]
    return report, lambda: svg.render(curve, points=points, title="vertices")


def cmd_support(curve, args, tol):
    rep = four_vertex_report(curve, tol)
    report = {
        "command": "support",
        "dense_support": rep.dense_support,
        "inside": list(rep.inside),
        "outside": list(rep.outside),
        "verdicts": [rep.verdicts[t].kind.value for t in rep.points],
        "max_violation": [rep.verdicts[t].max_violation for t in rep.points],
        "min_separation": rep.min_separation(),
    }
    if rep.inversion is not None:
        report["inversion_center"] = rep.inversion[0].tolist()
        report["inversion_radius"] = rep.inversion[1]
    circles = [(osculating_circline(curve, t, tol), "inside") for t in rep.inside]
    circles += [(osculating_circline(curve, t, tol), "outside") for t in rep.outside]
    if args.t is not None:
        c = osculating_circline(curve, args.t, tol)
        v = classify_support(curve, args.t, c, tol)
        report["t"] = args.t
        report["t_verdict"] = v.kind.value
        report["t_max_violation"] = v.max_violation
        report["t_circline"] = _circline_dict(c)
        circles.append((c, "plain"))
    points = [(curve.eval(t), "inside") for t in rep.inside]
    points += [(curve.eval(t), "outside") for t in rep.outside]
    return report, lambda: svg.render(curve, circles, points, "support")


def refit_fourier(curve, samples: int = REFIT_SAMPLES, cutoff: float = REFIT_CUTOFF):
    """Trigonometric coefficients of ``curve`` by FFT, truncated where they fall
    below ``cutoff`` times the largest.  Returns (FourierCurve, max sample error)."""
    t = np.arange(samples) * (TWO_PI / samples)
    pts = curve.eval(t)
    fx = np.fft.rfft(pts[:, 0]) / samples
    fy = np.fft.rfft(pts[:, 1]) / samples
    mag = np.maximum(np.abs(fx[1:]), np.abs(fy[1:]))
    keep = np.nonzero(mag > cutoff * mag.max())[0]
    m = int(keep.max()) + 1 if len(keep) else 1
    m = min(m, samples // 2 - 1)
    fit = FourierCurve(fx[0].real, 2 * fx[1:m + 1].real, -2 * fx[1:m + 1].imag,
                       fy[0].real, 2 * fy[1:m + 1].real, -2 * fy[1:m + 1].imag)
    mid = t + 0.5 * TWO_PI / samples
    err = float(np.max(np.hypot(*(fit.eval(mid) - curve.eval(mid)).T)))
    return fit, err


def cmd_invert(curve, args, tol):
    if args.center is None:
        center, radius = largest_inscribed_disc(curve, tol)
    else:
        center = np.array(args.center, dtype=float)
        radius = None
    if args.radius is not None:
        radius = args.radius
    if radius is None:
        raise UsageError("--radius is required with --center")
    image = invert_curve(center, radius, curve, tol)
    fit, err = refit_fourier(image)
    coeffs = {k: (round(v, 15) + 0.0 if isinstance(v, float) else [round(x, 15) + 0.0 for x in v])
              for k, v in fit.coefficients().items()}
    report = {
        "command": "invert",
        "center": np.asarray(center).tolist(),
        "radius": float(radius),
        "degree": fit.degree,
        "refit_error": err,
        "coefficients": coeffs,
    }
    extra = {"inverted.spec": dump_curve(FourierCurve.from_coefficients(
        coeffs["x.const"], coeffs["x.cos"], coeffs["x.sin"],
        coeffs["y.const"], coeffs["y.cos"], coeffs["y.sin"], check=False))}
    mirror = Circline.from_center_radius(center, radius)
    return report, (lambda: svg.render(image, [(mirror, "plain")], title="invert")), extra


def cmd_render(curve, args, tol):
    verts = find_vertices(curve, tol)
    circles, marks = [], [(curve.eval(v.t), "vertex") for v in verts.vertices]
    report = {"command": "render", "vertex_count": "inf" if verts.constant_curvature else len(verts)}
    if not verts.constant_curvature and is_simple(curve, tol).simple:
        rep = four_vertex_report(curve, tol)
        circles = [(osculating_circline(curve, t, tol), "inside") for t in rep.inside]
        circles += [(osculating_circline(curve, t, tol), "outside") for t in rep.outside]
        report["inside"] = list(rep.inside)
        report["outside"] = list(rep.outside)
    return report, lambda: svg.render(curve, circles, marks, "render")


COMMANDS = {
    "analyze": cmd_analyze, "moon": cmd_moon, "vertices": cmd_vertices, "support": cmd_support,
    "invert": cmd_invert, "render": cmd_render,
}


# ---------------------------------------------------------------------- fuzz
def cmd_fuzz(args, overrides, out_dir):
    started = time.strftime("%Y-%m-%dT%H:%M:%S")
    manifest, failures = run_fuzz(args.count, args.degree, args.amplitude, args.seed,
                                  overrides, max_draws=args.max_draws)
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "manifest.json"), "wb") as fh:
        fh.write(manifest_bytes(manifest))
    if failures:
        fail_dir = os.path.join(out_dir, "failures")
        os.makedirs(fail_dir, exist_ok=True)
        for r in failures:
            stem = os.path.join(fail_dir, f"case_{r['index']:05d}")
            if "spec" in r:
                with open(stem + ".spec", "w", encoding="utf-8") as fh:
                    fh.write(r["spec"])
            with open(stem + ".json", "wb") as fh:
                fh.write(manifest_bytes({k: v for k, v in r.items() if k != "spec"}))
    with open(os.path.join(out_dir, "run.log"), "a", encoding="utf-8") as fh:
        fh.write(f"{started} start fuzz seed={args.seed} count={args.count}\n")
        fh.write(f"{time.strftime('%Y-%m-%dT%H:%M:%S')} done {json.dumps(manifest['summary'], sort_keys=True)}\n")
    report = {"command": "fuzz", "seed": args.seed, "count": args.count, **manifest["summary"],
              "manifest": os.path.join(out_dir, "manifest.json")}
    failed = [r["index"] for r in failures if r["status"] == "fail"]
    rejected = [r["index"] for r in failures if r["status"] == "rejected"]
    if failed:
        report["failed_cases"] = failed
    if rejected:
        report["rejected_cases"] = rejected
    sys.stdout.write(format_report(report))
    return EXIT_OK if manifest["summary"]["pass"] == args.count else 1


# --------------------------------------------------------------------- main
def _parse_tol(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--tol expects KEY=VAL, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError:
            raise UsageError(f"--tol {k}: not a number: {v!r}") from None
    DEFAULT.with_overrides(out)     # validates keys
    return out


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", metavar="FILE", help="curve-spec file")
    common.add_argument("--tol", metavar="KEY=VAL", action="append", help="override a tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", metavar="DIR", default=".", help="output directory (default: .)")
    common.add_argument("--svg", action="store_true", help="also write <command>.svg into --out")

    p = argparse.ArgumentParser(prog="circline-lab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({kernels.BACKEND})")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("analyze", "moon", "vertices", "render"):
        sub.add_parser(name, parents=[common])
    s = sub.add_parser("support", parents=[common])
    s.add_argument("--t", type=float, help="also classify the osculating circline at t")
    s = sub.add_parser("invert", parents=[common])
    s.add_argument("--center", type=float, nargs=2, metavar=("X", "Y"),
                   help="inversion centre (default: centre of the largest inscribed disc)")
    s.add_argument("--radius", type=float, help="inversion radius (default: largest inscribed radius)")
    s = sub.add_parser("fuzz", parents=[common])
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--degree", type=int, default=4)
    s.add_argument("--amplitude", type=float, default=0.2)
    s.add_argument("--max-draws", type=int, default=2000)
    return p


def _error_report(command, exc, code):
    report = {"command": command, "error": type(exc).__name__, "message": str(exc), "exit": code}
    if isinstance(exc, CurvatureTooLarge):
        report["t_argmax"] = exc.t_argmax
        report["max_kappa"] = exc.kappa
    if isinstance(exc, NoConvergence) and exc.trace is not None:
        report["steps"] = len(exc.trace.steps)
        report["arc_lengths"] = exc.trace.lengths
    return report


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        overrides = _parse_tol(args.tol)
    except (UsageError, KeyError) as exc:
        print(f"circline-lab: {exc.args[0]}", file=sys.stderr)
        return EXIT_PARSE
    tol = DEFAULT.with_overrides(overrides)

    if args.command == "fuzz":
        if args.count < 1:
            print("circline-lab: --count must be >= 1", file=sys.stderr)
            return EXIT_PARSE
        return cmd_fuzz(args, overrides, args.out)

    if not args.spec:
        print("circline-lab: --spec FILE is required", file=sys.stderr)
        return EXIT_PARSE
    try:
        curve, text = load_spec(args.spec, tol)
    except OSError as exc:
        print(f"circline-lab: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PARSE_ERRORS as exc:
        print(f"circline-lab: {args.spec}:{exc}", file=sys.stderr)
        return EXIT_PARSE

    try:
        result = COMMANDS[args.command](curve, args, tol)
        code = EXIT_OK
    except UsageError as exc:
        print(f"circline-lab: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NoConvergence as exc:
        result, code = (_error_report(args.command, exc, EXIT_NO_CONVERGENCE), None), EXIT_NO_CONVERGENCE
    except PRECONDITION_ERRORS as exc:
        result, code = (_error_report(args.command, exc, EXIT_PRECONDITION), None), EXIT_PRECONDITION
    except CirclineError as exc:
        result, code = (_error_report(args.command, exc, EXIT_PRECONDITION), None), EXIT_PRECONDITION

    report, picture, *extra = result
    report = {"spec_hash": spec_hash(text), **report}
    text_out = format_report(report)
    sys.stdout.write(text_out)
    if code != EXIT_OK:
        print(f"circline-lab: {report['error']}: {report['message']}", file=sys.stderr)
    wants_files = args.svg or args.command in ("render", "invert") or args.out != "."
    if code == EXIT_OK and wants_files:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, f"{args.command}.txt"), "w", encoding="utf-8") as fh:
            fh.write(text_out)
        if picture is not None and (args.svg or args.command == "render"):
            with open(os.path.join(args.out, f"{args.command}.svg"), "w", encoding="utf-8") as fh:
                fh.write(picture())
        for name, body in (extra[0].items() if extra else ()):
            with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
                fh.write(body)
    return code


if __name__ == "__main__":
    sys.exit(main())
