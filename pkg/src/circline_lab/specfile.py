"""Curve-spec text files.

Grammar (UTF-8, one ``key = value`` per line)::

    spec     := line*
    line     := blank | comment | key ws* "=" ws* value comment?
    comment  := "#" any*
    key      := "preset" | "params"
              | ("x" | "y") "." ("const" | "cos" | "sin")
    value    := number | list | name
    list     := "[" (number ("," number)*)? "]"  |  number ("," number)+

``preset`` names one of :data:`circline_lab.curves.PRESETS`; ``params`` are its
positional arguments.  Otherwise the six coefficient keys describe

    x(t) = x.const + sum_k x.cos[k-1] cos(k t) + x.sin[k-1] sin(k t)

and the same for y.  Missing coefficient keys default to zero / empty.  The
two forms cannot be mixed.  Keys may appear once.
"""
from __future__ import annotations

import hashlib
import re

import numpy as np

from .config import DEFAULT, Tolerances
from .curves import PRESETS, FourierCurve, check_regular, normalize_orientation, presets
from .errors import CirclineError, SpecParseError

COEFF_KEYS = ("x.const", "x.cos", "x.sin", "y.const", "y.cos", "y.sin")
KEYS = ("preset", "params") + COEFF_KEYS

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def _numbers(text, line, col):
    body = text.strip()
    if body.startswith("["):
        if not body.endswith("]"):
            raise SpecParseError("unterminated list", line, col + len(text.rstrip()))
        body = body[1:-1]
        if not body.strip():
            return []
    out = []
    offset = text.find(body) if body else 0
    for piece in body.split(","):
        tok = piece.strip()
        if not _NUMBER.match(tok):
            where = col + offset + (piece.find(tok) if tok else 0)
            raise SpecParseError(f"expected a number, got {tok!r}", line, where)
        out.append(float(tok))
        offset += len(piece) + 1
    return out


def parse_spec(text: str) -> dict:
    """Parse spec text into ``{key: value}``; numbers stay Python floats."""
    entries = {}
    where = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            col = len(line) - len(line.lstrip()) + 1
            raise SpecParseError("expected 'key = value'", lineno, col)
        key_part, value_part = line.split("=", 1)
        key = key_part.strip()
        kcol = len(key_part) - len(key_part.lstrip()) + 1
        if key not in KEYS:
            raise SpecParseError(f"unknown key {key!r}", lineno, kcol)
        if key in entries:
            raise SpecParseError(f"duplicate key {key!r}", lineno, kcol)
        where[key] = (lineno, kcol)
        vcol = len(key_part) + 2
        value = value_part.strip()
        vcol += len(value_part) - len(value_part.lstrip())
        if not value:
            raise SpecParseError(f"missing value for {key!r}", lineno, vcol)
        if key == "preset":
            if not _NAME.match(value):
                raise SpecParseError(f"bad preset name {value!r}", lineno, vcol)
            if value not in PRESETS:
                raise SpecParseError(f"unknown preset {value!r}", lineno, vcol)
            entries[key] = value
        elif key.endswith(".const"):
            nums = _numbers(value, lineno, vcol)
            if len(nums) != 1:
                raise SpecParseError(f"{key} takes one number", lineno, vcol)
            entries[key] = nums[0]
        else:
            entries[key] = _numbers(value, lineno, vcol)
    if not entries:
        raise SpecParseError("empty spec", 1, 1)
    has_preset = "preset" in entries or "params" in entries
    has_coeffs = any(k in entries for k in COEFF_KEYS)
    if has_preset and has_coeffs:
        late = max(where.values())
        raise SpecParseError("cannot mix 'preset' with coefficient keys", *late)
    if "params" in entries and "preset" not in entries:
        raise SpecParseError("'params' given without 'preset'", *where["params"])
    return entries


def build_curve(entries: dict, tol: Tolerances = DEFAULT) -> FourierCurve:
    """Curve for parsed entries, regular and counterclockwise."""
    if "preset" in entries:
        try:
            curve = presets(entries["preset"], tuple(entries.get("params", ())))
        except (TypeError, ValueError) as exc:
            raise SpecParseError(f"bad params for preset {entries['preset']!r}: {exc}", 1, 1) from None
    else:
        curve = FourierCurve.from_coefficients(
            entries.get("x.const", 0.0), entries.get("x.cos", ()), entries.get("x.sin", ()),
            entries.get("y.const", 0.0), entries.get("y.cos", ()), entries.get("y.sin", ()),
            check=False)
    check_regular(curve, tol)
    return normalize_orientation(curve, tol)


def load_spec(path, tol: Tolerances = DEFAULT):
    """Read a spec file; returns ``(curve, text)``."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return build_curve(parse_spec(text), tol), text


def _fmt(x: float) -> str:
    return repr(float(x))


def dump_curve(curve: FourierCurve) -> str:
    """Coefficient-form spec text that round-trips exactly."""
    c = curve.coefficients()
    lines = []
    for key in COEFF_KEYS:
        v = c[key]
        if key.endswith(".const"):
            lines.append(f"{key} = {_fmt(v)}")
        else:
            lines.append(f"{key} = [" + ", ".join(_fmt(a) for a in np.asarray(v)) + "]")
    return "\n".join(lines) + "\n"


def dump_preset(name: str, params) -> str:
    out = f"preset = {name}\n"
    if len(params):
        out += "params = " + ", ".join(_fmt(p) for p in params) + "\n"
    return out


def spec_hash(text: str) -> str:
    """Hash of the spec's meaning: comments and whitespace do not count."""
    entries = parse_spec(text)
    canon = "\n".join(f"{k}={entries[k]!r}" for k in sorted(entries))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


__all__ = ["parse_spec", "build_curve", "load_spec", "dump_curve", "dump_preset", "spec_hash",
           "SpecParseError", "CirclineError"]
