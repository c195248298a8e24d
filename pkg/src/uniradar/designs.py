"""Experiment designs on the cube [-1, 1]^d: data model, CSV i/o, generators."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np


class FormatError(ValueError):
    """Malformed design file (ragged rows, no data, non-numeric fields)."""


class DomainError(ValueError):
    """Design coordinates outside the cube [-1, 1]^d."""


@dataclass(frozen=True)
class Design:
    """An n x d matrix of points in [-1, 1]^d, immutable once built."""

    points: np.ndarray
    label: str = ""

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError("points must form a nonempty 2-D matrix")
        if not np.isfinite(pts).all():
            raise ValueError("design coordinates must be finite")
        if (np.abs(pts) > 1.0).any():
            worst = float(np.abs(pts).max())
            raise DomainError(f"coordinates must lie in [-1, 1]; largest magnitude is {worst!r}")
        pts = pts.copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def restrict(self, dims) -> "Design":
        """Sub-design keeping the given 1-based coordinate indices."""
        dims = tuple(int(k) for k in dims)
        if any(k < 1 or k > self.dim for k in dims):
            raise ValueError(f"coordinate indices must lie in 1..{self.dim}")
        cols = [k - 1 for k in dims]
        suffix = ",".join(str(k) for k in dims)
        return Design(self.points[:, cols], label=f"{self.label}[{suffix}]" if self.label else f"[{suffix}]")


def load_csv(path, rescale: bool = False) -> Design:
    """Read a design from CSV, one point per row.

    A non-numeric first row is treated as a header and skipped.  With
    ``rescale`` set, every column is mapped affinely from its observed
    [min, max] onto [-1, 1] (constant columns map to 0); without it, any
    coordinate outside [-1, 1] raises :class:`DomainError`.
    """
    with open(path, newline="") as fh:
        raw = [row for row in csv.reader(fh) if any(cell.strip() for cell in row)]
    if not raw:
        raise FormatError(f"empty design file: {path}")
    start = 0
    if not _all_numeric(raw[0]):
        start = 1
    if start >= len(raw):
        raise FormatError(f"no data rows in {path}")
    width = len(raw[start])
    data = []
    for lineno, row in enumerate(raw[start:], start + 1):
        if len(row) != width:
            raise FormatError(f"{path}: ragged row at line {lineno} "
                              f"({len(row)} fields, expected {width})")
        try:
            data.append([float(cell) for cell in row])
        except ValueError as exc:
            raise FormatError(f"{path}: non-numeric value at line {lineno}") from exc
    pts = np.array(data, dtype=float)
    if rescale:
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        span = hi - lo
        flat = span == 0.0
        span[flat] = 1.0
        pts = 2.0 * (pts - lo) / span - 1.0
        pts[:, flat] = 0.0
    return Design(pts, label=str(path))


def save_csv(design: Design, path) -> None:
    """Write one point per row with 17 significant digits (bit-exact reload)."""
    np.savetxt(path, design.points, delimiter=",", fmt="%.17g")


def gen_uniform(n: int, d: int, seed: int) -> Design:
    """n independent points uniform on [-1, 1]^d, reproducible from the seed."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be at least 1")
    rng = np.random.default_rng(seed)
    return Design(rng.uniform(-1.0, 1.0, size=(n, d)),
                  label=f"uniform n={n} d={d} seed={seed}")


def gen_halton(n: int, dims, skip: int = 0) -> Design:
    """Halton points for the requested coordinate indices, mapped to [-1, 1].

    ``dims`` holds 1-based coordinate indices; index k uses the k-th prime
    as its radical-inverse base, so dims=[1, 2] gives bases (2, 3).  The
    first emitted point is sequence index ``skip + 1``; with skip=0 the
    base-2 coordinate starts 1/2, 1/4, 3/4 (before the affine map).
    """
    dims = [int(k) for k in dims]
    if n < 1:
        raise ValueError("n must be at least 1")
    if not dims:
        raise ValueError("dims must name at least one coordinate")
    if any(k < 1 for k in dims):
        raise ValueError("coordinate indices are 1-based")
    if skip < 0:
        raise ValueError("skip must be nonnegative")
    bases = [_nth_prime(k) for k in dims]
    pts = np.empty((n, len(dims)))
    for j, base in enumerate(bases):
        for i in range(n):
            pts[i, j] = _radical_inverse(skip + 1 + i, base)
    suffix = ",".join(str(k) for k in dims)
    return Design(2.0 * pts - 1.0, label=f"halton n={n} dims=({suffix}) skip={skip}")


def gen_linear_oa49() -> Design:
    """49-point orthogonal array on a 7-level grid in three dimensions.

    Levels (x1, x2) run over the full 7 x 7 grid and x3 = (-x1 - 3 x2) mod 7,
    so every 2-D projection is the complete grid; level l maps to the cell
    midpoint -1 + (2 l + 1) / 7, keeping points strictly interior.
    """
    l1, l2 = np.meshgrid(np.arange(7), np.arange(7), indexing="ij")
    l1 = l1.ravel()
    l2 = l2.ravel()
    l3 = (-l1 - 3 * l2) % 7
    levels = np.stack([l1, l2, l3], axis=1).astype(float)
    return Design(-1.0 + (2.0 * levels + 1.0) / 7.0, label="linear orthogonal array 49")


def _all_numeric(row) -> bool:
    try:
        parsed = [float(cell) for cell in row]
    except ValueError:
        return False
    return all(math.isfinite(v) for v in parsed)


def _radical_inverse(index: int, base: int) -> float:
    inv = 0.0
    scale = 1.0
    while index > 0:
        scale /= base
        inv += scale * (index % base)
        index //= base
    return inv


def _nth_prime(k: int) -> int:
    limit = max(32, int(k * (math.log(k + 1) + math.log(math.log(k + 2)) + 2)))
    while True:
        sieve = np.ones(limit + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, int(limit ** 0.5) + 1):
            if sieve[p]:
                sieve[p * p::p] = False
        primes = np.flatnonzero(sieve)
        if len(primes) >= k:
            return int(primes[k - 1])
        limit *= 2
