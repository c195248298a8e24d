"""Omnidirectional uniformity scanning of 2-D and 3-D designs.

A scan projects the design onto every axis of an angular grid, transforms
the projections through their theoretical law, and records the chosen
ecdf distance per direction together with the critical value at the
requested confidence level.  Projecting onto an axis and onto its reverse
yields the same statistic, so planar curves have period pi.

Higher-dimensional designs are handled by scanning every pair or triplet
of coordinates.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import kolmogorov

from . import gof, projdist
from .designs import Design

DEFAULT_STEP_2D = 0.5   # degrees
DEFAULT_STEP_3D = 2.0   # degrees

_P_FLOOR = 1e-300       # keeps -log10(p) finite in exports and plots


@dataclass(frozen=True)
class RadarScan2D:
    """Planar scan: distances per angle plus the critical threshold."""

    thetas: np.ndarray          # radians in [0, 2 pi)
    values: np.ndarray
    critical: float
    n: int
    statistic_kind: str
    level: float

    def __post_init__(self):
        _freeze(self, "thetas", "values")

    @property
    def rejected(self) -> bool:
        return bool((self.values > self.critical).any())

    def exceedance_mask(self) -> np.ndarray:
        return self.values > self.critical

    def argmax_theta(self) -> float:
        """Angle (radians) of the largest scan value."""
        return float(self.thetas[int(np.argmax(self.values))])

    def to_json(self) -> str:
        obj = {
            "kind": self.statistic_kind,
            "n": self.n,
            "level": self.level,
            "critical": self.critical,
            "thetas_deg": np.degrees(self.thetas).tolist(),
            "values": self.values.tolist(),
        }
        return json.dumps(obj, sort_keys=True, indent=2)

    def to_csv(self) -> str:
        lines = ["theta_deg,value"]
        for th, v in zip(np.degrees(self.thetas), self.values):
            lines.append("%.17g,%.17g" % (th, v))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RadarScan3D:
    """Spatial scan over a longitude x latitude grid, with p-values."""

    theta_grid: np.ndarray      # radians in [0, 2 pi)
    phi_grid: np.ndarray        # radians in [-pi/2, pi/2]
    values: np.ndarray          # shape (len(theta_grid), len(phi_grid))
    p_values: np.ndarray
    critical: float
    n: int
    level: float

    def __post_init__(self):
        _freeze(self, "theta_grid", "phi_grid", "values", "p_values")

    @property
    def statistic_kind(self) -> str:
        return "ks"

    @property
    def rejected(self) -> bool:
        return bool((self.values > self.critical).any())

    def exceedance_mask(self) -> np.ndarray:
        return self.values > self.critical

    def argmax_angles(self) -> tuple:
        """(theta, phi) in radians of the largest scan value."""
        i, j = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        return float(self.theta_grid[i]), float(self.phi_grid[j])

    def to_json(self) -> str:
        obj = {
            "kind": "ks",
            "n": self.n,
            "level": self.level,
            "critical": self.critical,
            "thetas_deg": np.degrees(self.theta_grid).tolist(),
            "phis_deg": np.degrees(self.phi_grid).tolist(),
            "values": self.values.tolist(),
            "p_values": self.p_values.tolist(),
        }
        return json.dumps(obj, sort_keys=True, indent=2)

    def to_csv(self) -> str:
        lines = ["theta_deg,phi_deg,value,p_value"]
        tdeg = np.degrees(self.theta_grid)
        pdeg = np.degrees(self.phi_grid)
        for i, th in enumerate(tdeg):
            for j, ph in enumerate(pdeg):
                lines.append("%.17g,%.17g,%.17g,%.17g"
                             % (th, ph, self.values[i, j], self.p_values[i, j]))
        return "\n".join(lines) + "\n"


def project(design: Design, a) -> np.ndarray:
    """Scalar projections of the design points onto the axis ``a``."""
    comp = a.components if isinstance(a, projdist.Direction) else np.asarray(a, dtype=float)
    if comp.shape != (design.dim,):
        raise ValueError(f"direction has dimension {comp.size}, design has {design.dim}")
    return design.points @ comp


def radar2d(design: Design, step_deg: float = DEFAULT_STEP_2D,
            level: float = 0.95, kind: str = "ks") -> RadarScan2D:
    """Scan a planar design over [0, 2 pi) in steps of ``step_deg`` degrees.

    Each angle projects the design, transforms through the cube projection
    law and evaluates the requested statistic; the critical value comes
    from the matching finite-sample law at ``level``.
    """
    if design.dim != 2:
        raise ValueError("radar2d needs a 2-dimensional design")
    if kind not in ("ks", "cvm"):
        raise ValueError(f"unknown statistic kind {kind!r}")
    thetas = _angle_grid(step_deg, 360.0, minimum=8)
    directions = np.column_stack([np.cos(thetas), np.sin(thetas)])
    values = _directional_values(design.points, directions, kind)
    critical = (gof.ks_critical if kind == "ks" else gof.cvm_critical)(design.n, level)
    return RadarScan2D(thetas=thetas, values=values, critical=critical,
                       n=design.n, statistic_kind=kind, level=level)


def radar3d(design: Design, theta_step_deg: float = DEFAULT_STEP_3D,
            phi_step_deg: float = DEFAULT_STEP_3D, level: float = 0.95) -> RadarScan3D:
    """Scan a spatial design over longitude [0, 2 pi) x latitude [-pi/2, pi/2]."""
    if design.dim != 3:
        raise ValueError("radar3d needs a 3-dimensional design")
    thetas = _angle_grid(theta_step_deg, 360.0, minimum=8)
    n_phi = int(math.floor(180.0 / phi_step_deg + 1e-9)) + 1
    phis = np.radians(-90.0 + np.arange(n_phi) * phi_step_deg)
    ct, st = np.cos(thetas), np.sin(thetas)
    cp, sp = np.cos(phis), np.sin(phis)
    values = np.empty((thetas.size, phis.size))
    for j in range(phis.size):
        directions = np.column_stack([cp[j] * ct, cp[j] * st, np.full(thetas.size, sp[j])])
        values[:, j] = _directional_values(design.points, directions, "ks")
    scale = math.sqrt(design.n) + 0.12 + 0.11 / math.sqrt(design.n)
    p_values = np.maximum(kolmogorov(scale * values), _P_FLOOR)
    critical = gof.ks_critical(design.n, level)
    return RadarScan3D(theta_grid=thetas, phi_grid=phis, values=values,
                       p_values=p_values, critical=critical, n=design.n, level=level)


def scan_subspaces(design: Design, arity: int = 2, step_deg: float | None = None,
                   level: float = 0.95):
    """Scan every pair or triplet of coordinates of a high-dimensional design.

    Returns a list of ``(dims, scan, rejected)`` tuples where ``dims`` holds
    1-based coordinate indices, ``scan`` is the planar or spatial scan of
    the restricted design and ``rejected`` flags any exceedance.
    """
    if arity not in (2, 3):
        raise ValueError("arity must be 2 or 3")
    if design.dim < arity:
        raise ValueError(f"design dimension {design.dim} is below arity {arity}")
    if step_deg is None:
        step_deg = DEFAULT_STEP_2D if arity == 2 else DEFAULT_STEP_3D
    results = []
    for combo in itertools.combinations(range(1, design.dim + 1), arity):
        sub = design.restrict(combo)
        if arity == 2:
            scan = radar2d(sub, step_deg=step_deg, level=level)
        else:
            scan = radar3d(sub, theta_step_deg=step_deg, phi_step_deg=step_deg, level=level)
        results.append((combo, scan, scan.rejected))
    return results


def _directional_values(points, directions, kind: str) -> np.ndarray:
    """Statistic per direction; ``points`` may carry leading batch axes.

    ``points`` has shape (..., n, d) and ``directions`` (t, d); the result
    has shape (..., t).  Every direction shares one code path: project,
    transform through the cube law, evaluate the ecdf distance.
    """
    pts = np.asarray(points, dtype=float)
    distance = gof.ks_distance if kind == "ks" else gof.cvm_distance
    out = np.empty(pts.shape[:-2] + (len(directions),))
    for k, a in enumerate(directions):
        z = pts @ a
        u = projdist.cube_cdf(a, z)
        out[..., k] = distance(u, axis=-1)
    return out


def _angle_grid(step_deg: float, span_deg: float, minimum: int) -> np.ndarray:
    if not 0.0 < step_deg:
        raise ValueError("angle step must be positive")
    count = int(math.floor(span_deg / step_deg + 1e-9))
    if count < minimum:
        raise ValueError(f"angle step {step_deg!r} gives {count} directions; "
                         f"at least {minimum} are required")
    return np.radians(np.arange(count) * step_deg)


def _freeze(obj, *names):
    for name in names:
        arr = np.asarray(getattr(obj, name), dtype=float)
        arr = arr.copy() if arr.flags.writeable else arr
        arr.flags.writeable = False
        object.__setattr__(obj, name, arr)
