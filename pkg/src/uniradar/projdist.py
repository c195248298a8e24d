"""Exact distribution of linear projections of uniformly distributed points.

For a point drawn uniformly from the cube [-1, 1]^d, its scalar projection
onto a unit direction ``a`` is a sum of independent uniform variables with
half-widths ``|a_j|``.  The CDF is piecewise polynomial and evaluates as an
alternating sum over the 2^d cube corners; the density is the same sum one
power lower.  Because the alternating sum cancels heavily, terms are
accumulated in ascending magnitude with compensated summation and the CDF
is clamped to [0, 1].

A separate closed form covers the projection of a uniform point in the
unit disk, which by rotation invariance needs no direction argument.  The
disk case is implemented for two dimensions only; projections of uniform
points in higher-dimensional balls follow different laws and are out of
scope here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

COMPONENT_EPS = 1e-12   # components this small add no spread and are dropped
NORM_TOL = 1e-12        # unit-norm tolerance for Direction
MAX_ACTIVE_DIM = 15     # the corner sum has 2^d terms; keep it tractable

_FSUM_THRESHOLD = 512   # above this corner count, math.fsum rows instead


@dataclass(frozen=True)
class Direction:
    """A unit vector defining a projection axis."""

    components: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.components, dtype=float).reshape(-1)
        if c.size < 1 or not np.isfinite(c).all():
            raise ValueError("direction needs at least one finite component")
        norm = float(np.linalg.norm(c))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"direction norm {norm!r} is not 1 within {NORM_TOL}")
        c.flags.writeable = False
        object.__setattr__(self, "components", c)

    @classmethod
    def from_vector(cls, v) -> "Direction":
        """Normalize an arbitrary nonzero vector."""
        v = np.asarray(v, dtype=float).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(v / norm)

    @classmethod
    def from_angle(cls, theta: float) -> "Direction":
        """Planar direction (cos theta, sin theta)."""
        return cls(np.array([np.cos(theta), np.sin(theta)]))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "Direction":
        """Spatial direction with longitude theta and latitude phi."""
        return cls(np.array([np.cos(phi) * np.cos(theta),
                             np.cos(phi) * np.sin(theta),
                             np.sin(phi)]))

    @property
    def dim(self) -> int:
        return self.components.size


@dataclass(frozen=True)
class ProjectionCdf:
    """Projection law of a uniform point, packaged for transforms.

    ``domain_kind`` is ``"cube"`` or ``"disk"``; ``support`` is the closed
    interval carrying all probability mass.
    """

    direction: Direction
    domain_kind: str
    support: tuple

    def __post_init__(self):
        if self.domain_kind not in ("cube", "disk"):
            raise ValueError(f"unknown domain kind {self.domain_kind!r}")
        object.__setattr__(self, "support", (float(self.support[0]), float(self.support[1])))

    def cdf(self, z):
        if self.domain_kind == "cube":
            return cube_cdf(self.direction, z)
        return disk_cdf(z)

    def pdf(self, z):
        if self.domain_kind == "cube":
            return cube_pdf(self.direction, z)
        return disk_pdf(z)


def cube_projection(a) -> ProjectionCdf:
    """Projection law of a uniform cube point onto the axis ``a``."""
    direction = a if isinstance(a, Direction) else Direction.from_vector(a)
    half = support_halfwidth(direction)
    return ProjectionCdf(direction, "cube", (-half, half))


def disk_projection(a=None) -> ProjectionCdf:
    """Projection law of a uniform unit-disk point; any axis gives the same law."""
    direction = Direction.from_angle(0.0) if a is None else (
        a if isinstance(a, Direction) else Direction.from_vector(a))
    if direction.dim != 2:
        raise ValueError("the disk projection law is two-dimensional")
    return ProjectionCdf(direction, "disk", (-1.0, 1.0))


def support_halfwidth(a) -> float:
    """Half-width of the projection support, the sum of active |a_j|."""
    return float(_active_halfwidths(a).sum())


def cube_cdf(a, z):
    """CDF of the projection of a uniform cube point onto the unit axis ``a``.

    Parameters
    ----------
    a : Direction or array_like
        Unit vector; components with magnitude below ``COMPONENT_EPS`` are
        dropped and the formula applies in the reduced dimension (the result
        is then the exact law of the surviving components).  The evaluation
        uses |a_j| throughout, so it is invariant to flipping any sign.
    z : scalar or array_like
        Evaluation points.

    Returns
    -------
    Probabilities in [0, 1], matching the shape of ``z``.
    """
    b = _active_halfwidths(a)
    # evaluate on the lower tail only, where few corner terms are active and
    # cancellation is mild, then reflect; this keeps F(z) + F(-z) = 1 exact
    za = np.asarray(z, dtype=float)
    lower = _corner_sum(-np.abs(za), b, b.size)
    vals = np.where(za <= 0.0, lower, 1.0 - lower)
    return _clip_shape(vals, z, 0.0, 1.0)


def cube_pdf(a, z):
    """Density of the projection of a uniform cube point onto ``a``.

    Piecewise polynomial of degree d-1 with knots at the projected cube
    corners; nonnegative and integrating to one over the support.
    """
    b = _active_halfwidths(a)
    # the density is symmetric, so the better-conditioned lower tail serves
    # both sides
    za = np.asarray(z, dtype=float)
    vals = _corner_sum(-np.abs(za), b, b.size - 1)
    return _clip_shape(vals, z, 0.0, None)


def disk_cdf(z):
    """Projection CDF for a uniform point in the unit disk (any axis).

    Arguments are clamped to [-1, 1]; the law is the same for every axis
    through the center because the disk is rotation invariant.
    """
    zc = np.clip(np.asarray(z, dtype=float), -1.0, 1.0)
    out = 0.5 + (np.arcsin(zc) + zc * np.sqrt(1.0 - zc * zc)) / np.pi
    return _match_scalar(out, z)


def disk_pdf(z):
    """Semicircle density (2/pi) sqrt(1 - z^2) on [-1, 1], zero outside."""
    za = np.asarray(z, dtype=float)
    inside = (za >= -1.0) & (za <= 1.0)
    out = np.where(inside, (2.0 / np.pi) * np.sqrt(np.maximum(1.0 - za * za, 0.0)), 0.0)
    return _match_scalar(out, z)


def _active_halfwidths(a) -> np.ndarray:
    if isinstance(a, Direction):
        comp = a.components
    else:
        comp = np.asarray(a, dtype=float).reshape(-1)
        if comp.size == 0 or not np.isfinite(comp).all():
            raise ValueError("direction must be a finite nonempty vector")
        norm = float(np.linalg.norm(comp))
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"direction must be normalized; got norm {norm!r}")
    b = np.abs(comp)
    b = b[b > COMPONENT_EPS]
    if b.size == 0:
        raise ValueError("direction is numerically zero")
    if b.size > MAX_ACTIVE_DIM:
        raise ValueError(f"at most {MAX_ACTIVE_DIM} active components are supported")
    return b


def _corner_sum(z, b, power):
    """Alternating corner sum (prod 1/(2 b_j)) sum_s eps(s) (z + s.b)_+^power / power!."""
    d = b.size
    idx = np.arange(1 << d)
    bits = (idx[:, None] >> np.arange(d)) & 1
    dots = (1.0 - 2.0 * bits) @ b                    # s.b over all sign choices
    signs = np.where(bits.sum(axis=1) % 2 == 0, 1.0, -1.0)
    scale = 1.0 / (np.prod(2.0 * b) * math.factorial(power))

    za = np.asarray(z, dtype=float)
    flat = np.atleast_1d(za).reshape(-1)
    out = np.empty(flat.shape)
    ncorners = dots.size
    chunk = max(1, (1 << 22) // ncorners)
    for start in range(0, flat.size, chunk):
        seg = flat[start:start + chunk]
        shifted = seg[:, None] + dots
        if power == 0:
            terms = (shifted > 0.0).astype(float)   # (y)_+^0 with 0^0 = 0
        else:
            terms = np.maximum(shifted, 0.0) ** power
        terms *= signs
        out[start:start + chunk] = _compensated_rowsum(terms)
    out *= scale
    return out.reshape(za.shape)


def _compensated_rowsum(terms):
    if terms.shape[1] > _FSUM_THRESHOLD:
        return np.array([math.fsum(row) for row in terms])
    order = np.argsort(np.abs(terms), axis=1)
    terms = np.take_along_axis(terms, order, axis=1)
    total = np.zeros(terms.shape[0])
    carry = np.zeros(terms.shape[0])
    for k in range(terms.shape[1]):
        y = terms[:, k] - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


def _clip_shape(vals, z, lo, hi):
    out = np.clip(vals, lo, hi) if hi is not None else np.maximum(vals, lo)
    return _match_scalar(out, z)


def _match_scalar(out, z):
    if np.isscalar(z) or (isinstance(z, np.ndarray) and z.ndim == 0):
        return float(np.asarray(out).reshape(()))
    return out
