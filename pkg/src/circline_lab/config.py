"""Numerical tolerances.

Relative tolerances are scaled by the curve diameter (geometric quantities)
or total length (arc lengths) at the point of use.
"""
from dataclasses import asdict, dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    eps_reg: float = 1e-6        # absolute minimum speed
    geo: float = 1e-9            # x diameter
    quad: float = 1e-10          # x total length
    delta_param: float = 1e-4    # parameter separation
    sup: float = 1e-7            # x diameter, support classification
    contact: float = 1e-6        # x diameter, incircle contacts
    term: float = 1e-8           # x total length, arc-halving stop
    k_line: float = 1e-8         # / diameter, circline treated as a line below this
    d_min: float = 1e-3          # x diameter, inversion centre clearance
    max_iter: int = 200

    def with_overrides(self, overrides):
        """Return a copy with ``overrides`` applied; unknown keys raise KeyError."""
        names = {f.name: f.type for f in fields(self)}
        clean = {}
        for key, value in overrides.items():
            if key not in names:
                raise KeyError(f"unknown tolerance {key!r}")
            clean[key] = int(value) if key == "max_iter" else float(value)
        return replace(self, **clean)

    def as_dict(self):
        return asdict(self)


DEFAULT = Tolerances()
