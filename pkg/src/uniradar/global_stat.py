"""Global scan-ratio statistic, its Monte Carlo quantile tables, and the
Gaussian-field route to its large-sample distribution.

The ratio of the largest to the smallest directional distance over a
half-turn summarizes a whole planar scan in one scale-free number.  Its
finite-sample law is tabulated by simulating uniform designs; its
large-sample law is approached by sampling a centered Gaussian field whose
covariance between two half-plane events is the clipped-square area of
their intersection minus the product of their probabilities.
"""

from __future__ import annotations

import json
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import geometry, projdist
from .designs import Design
from .radar import _directional_values

DEFAULT_LEVELS = (0.80, 0.85, 0.90, 0.95, 0.99)
DEFAULT_STEP_DEG = 1.0

_PAIR_CHUNK = 1_000_000
_JITTERS = (0.0, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8)


class FactorizationError(ArithmeticError):
    """Covariance factorization failed even at the largest ridge."""


@dataclass(frozen=True)
class GnResult:
    """Scan ratio of one design: g = sup_value / inf_value over the angle grid."""

    g: float
    sup_value: float
    inf_value: float
    sup_theta: float        # radians
    inf_theta: float        # radians
    n: int


@dataclass(frozen=True)
class GnQuantileTable:
    """Monte Carlo quantiles of the scan ratio, indexed by n and level."""

    n_values: tuple
    levels: tuple
    quantiles: np.ndarray   # shape (len(n_values), len(levels))
    replicates: int
    grid_step: float        # degrees
    seed: int

    def __post_init__(self):
        q = np.asarray(self.quantiles, dtype=float).reshape(len(self.n_values), len(self.levels))
        q = q.copy() if q.flags.writeable else q
        q.flags.writeable = False
        object.__setattr__(self, "quantiles", q)
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        object.__setattr__(self, "levels", tuple(float(p) for p in self.levels))

    def threshold(self, n: int, level: float) -> float:
        """Rejection threshold for a design of size n at the given level.

        Exact rows are returned as stored; sizes between rows interpolate
        linearly; sizes above the largest row fall back to the largest row
        with a warning, since the quantiles flatten out as n grows.
        """
        try:
            col = next(i for i, p in enumerate(self.levels) if abs(p - level) < 1e-9)
        except StopIteration:
            raise ValueError(f"level {level!r} is not tabulated; available: {self.levels}")
        ns = np.asarray(self.n_values)
        if n < ns[0]:
            raise ValueError(f"no table rows at or below n={n}")
        if n >= ns[-1]:
            if n > ns[-1]:
                warnings.warn(f"n={n} exceeds the largest tabulated size {ns[-1]}; "
                              "using that row (quantiles stabilize with n)")
            return float(self.quantiles[-1, col])
        hi = int(np.searchsorted(ns, n))
        if ns[hi] == n:
            return float(self.quantiles[hi, col])
        lo = hi - 1
        w = (n - ns[lo]) / (ns[hi] - ns[lo])
        return float((1.0 - w) * self.quantiles[lo, col] + w * self.quantiles[hi, col])

    def to_csv(self) -> str:
        header = "N," + ",".join(_level_name(p) for p in self.levels)
        lines = [header]
        for i, n in enumerate(self.n_values):
            lines.append(str(n) + "," + ",".join("%.17g" % q for q in self.quantiles[i]))
        return "\n".join(lines) + "\n"

    def metadata(self) -> dict:
        return {"replicates": self.replicates, "grid_step": self.grid_step, "seed": self.seed}

    def save(self, csv_path, meta_path=None) -> None:
        """Write the CSV table plus its metadata sidecar JSON."""
        with open(csv_path, "w") as fh:
            fh.write(self.to_csv())
        if meta_path is None:
            meta_path = str(csv_path) + ".meta.json"
        with open(meta_path, "w") as fh:
            json.dump(self.metadata(), fh, sort_keys=True, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, csv_path, meta_path=None) -> "GnQuantileTable":
        with open(csv_path) as fh:
            rows = [line.strip() for line in fh if line.strip()]
        head = rows[0].split(",")
        if head[0] != "N":
            raise ValueError(f"{csv_path}: expected header starting with 'N'")
        levels = tuple(_parse_level(name) for name in head[1:])
        n_values, quantiles = [], []
        for line in rows[1:]:
            cells = line.split(",")
            n_values.append(int(cells[0]))
            quantiles.append([float(c) for c in cells[1:]])
        meta = {"replicates": 0, "grid_step": float("nan"), "seed": -1}
        if meta_path is None:
            candidate = str(csv_path) + ".meta.json"
            meta_path = candidate if os.path.exists(candidate) else None
        if meta_path is not None:
            with open(meta_path) as fh:
                meta.update(json.load(fh))
        return cls(n_values=tuple(n_values), levels=levels, quantiles=np.array(quantiles),
                   replicates=int(meta["replicates"]), grid_step=float(meta["grid_step"]),
                   seed=int(meta["seed"]))


@dataclass(frozen=True)
class GaussianFieldSpec:
    """Discretized (direction, threshold) nodes with their covariance matrix."""

    nodes: tuple            # ((theta, t), ...)
    covariance: np.ndarray
    jitter: float = 0.0

    def __post_init__(self):
        cov = np.asarray(self.covariance, dtype=float)
        cov = cov.copy() if cov.flags.writeable else cov
        cov.flags.writeable = False
        object.__setattr__(self, "covariance", cov)
        object.__setattr__(self, "nodes", tuple((float(a), float(t)) for a, t in self.nodes))


@dataclass(frozen=True)
class GnAsymptoticResult:
    """Sampled large-n scan ratios with their requested quantiles."""

    ratios: np.ndarray
    levels: tuple
    quantiles: tuple
    field: GaussianFieldSpec
    theta_count: int
    t_count: int
    replicates: int
    seed: int

    def __post_init__(self):
        r = np.asarray(self.ratios, dtype=float)
        r = r.copy() if r.flags.writeable else r
        r.flags.writeable = False
        object.__setattr__(self, "ratios", r)


def gn(design: Design, step_deg: float = DEFAULT_STEP_DEG) -> GnResult:
    """Scan ratio of a planar design over the angle grid [0, pi).

    The scan has period pi, so a half-turn covers every axis; the supremum
    and infimum are taken on the grid and their angles reported.
    """
    if design.dim != 2:
        raise ValueError("the scan ratio is defined for 2-dimensional designs")
    thetas = _half_turn_grid(step_deg)
    directions = np.column_stack([np.cos(thetas), np.sin(thetas)])
    values = _directional_values(design.points, directions, "ks")
    hi = int(np.argmax(values))
    lo = int(np.argmin(values))
    inf_value = float(values[lo])
    if inf_value <= 0.0:
        raise RuntimeError("scan infimum is zero; this cannot happen for a finite sample")
    return GnResult(g=float(values[hi]) / inf_value, sup_value=float(values[hi]),
                    inf_value=inf_value, sup_theta=float(thetas[hi]),
                    inf_theta=float(thetas[lo]), n=design.n)


def gn_table(n_values, levels=DEFAULT_LEVELS, replicates: int = 10_000,
             step_deg: float = DEFAULT_STEP_DEG, seed: int = 42) -> GnQuantileTable:
    """Tabulate scan-ratio quantiles by simulating uniform designs.

    For each n, ``replicates`` designs are drawn, each from its own
    generator seeded by (seed, n, replicate), so the table is reproducible
    and independent of scheduling; quantiles are empirical nearest-rank.
    """
    if replicates < 1000:
        raise ValueError("at least 1000 replicates are required for stable quantiles")
    levels = tuple(float(p) for p in levels)
    for p in levels:
        if not 0.0 < p < 1.0:
            raise ValueError(f"levels must lie strictly between 0 and 1, got {p!r}")
    if int(seed) < 0:
        raise ValueError("seed must be nonnegative")
    n_values = tuple(int(n) for n in n_values)
    thetas = _half_turn_grid(step_deg)
    directions = np.column_stack([np.cos(thetas), np.sin(thetas)])
    quantiles = np.empty((len(n_values), len(levels)))
    for row, n in enumerate(n_values):
        if n < 1:
            raise ValueError("table sizes must be at least 1")
        ratios = _simulate_ratios(n, replicates, int(seed), directions)
        ratios.sort()
        quantiles[row] = [_nearest_rank(ratios, p) for p in levels]
    return GnQuantileTable(n_values=n_values, levels=levels, quantiles=quantiles,
                           replicates=replicates, grid_step=float(step_deg), seed=int(seed))


def load_default_table() -> GnQuantileTable:
    """The quantile table bundled with the package (seed 42, 10^4 replicates)."""
    from importlib import resources
    data = resources.files("uniradar.data")
    with resources.as_file(data / "gn_table.csv") as csv_path, \
            resources.as_file(data / "gn_table.meta.json") as meta_path:
        return GnQuantileTable.load(csv_path, meta_path)


def field_covariance(nodes) -> GaussianFieldSpec:
    """Covariance matrix of half-plane indicator events on the square.

    Each node (theta, t) defines the event "projection onto the theta axis
    falls below t".  Entry (i, j) is the clipped-square area of the joint
    event over 4, minus the product of the single-event areas over 4.
    """
    nodes = tuple((float(a), float(t)) for a, t in nodes)
    m = len(nodes)
    normals = np.array([[math.cos(a), math.sin(a)] for a, _ in nodes])
    offsets = np.array([t for _, t in nodes])
    for (a, t), nrm in zip(nodes, normals):
        half = float(np.abs(nrm).sum())
        if not -half <= t <= half:
            raise ValueError(f"threshold {t!r} lies outside the projection support "
                             f"[-{half!r}, {half!r}] for angle {a!r}")
    probs = geometry.square_clip_areas(normals, offsets) / 4.0
    cov = np.empty((m, m))
    iu, ju = np.triu_indices(m)
    for start in range(0, iu.size, _PAIR_CHUNK):
        ii = iu[start:start + _PAIR_CHUNK]
        jj = ju[start:start + _PAIR_CHUNK]
        joint = geometry.square_clip_areas(normals[ii], offsets[ii],
                                           normals[jj], offsets[jj]) / 4.0
        cov[ii, jj] = joint - probs[ii] * probs[jj]
    lower = np.tril_indices(m, -1)
    cov[lower] = cov.T[lower]
    return GaussianFieldSpec(nodes=nodes, covariance=cov, jitter=0.0)


def factor_covariance(spec: GaussianFieldSpec):
    """Cholesky factor of the covariance, ridging the diagonal if needed.

    The ridge escalates tenfold from 1e-12 to 1e-8; if that still fails a
    :class:`FactorizationError` reports the matrix size and smallest
    diagonal entry.
    """
    cov = spec.covariance
    for jitter in _JITTERS:
        shifted = cov if jitter == 0.0 else cov + jitter * np.eye(len(cov))
        try:
            return np.linalg.cholesky(shifted), jitter
        except np.linalg.LinAlgError:
            continue
    raise FactorizationError(
        f"covariance of size {len(cov)} is not factorizable with ridge up to "
        f"{_JITTERS[-1]!r}; smallest diagonal entry {float(np.diag(cov).min())!r}")


def gn_asymptotic(theta_count: int = 180, t_count: int = 21, replicates: int = 5000,
                  seed: int = 42, levels=DEFAULT_LEVELS) -> GnAsymptoticResult:
    """Sample the large-n scan ratio from the limiting Gaussian field.

    The node grid places ``theta_count`` axes over a half-turn and, on each
    axis, ``t_count`` thresholds at equal probability spacing k/(t_count+1)
    obtained by bisecting the projection CDF.  Per replicate the field is
    drawn through the Cholesky factor, reduced to a per-axis maximum of
    absolute values, and the max/min ratio over axes recorded.
    """
    if theta_count < 2 or t_count < 1:
        raise ValueError("need at least 2 axes and 1 threshold per axis")
    if theta_count * t_count > 4000:
        raise ValueError("node grids beyond ~4000 nodes are not factorizable at this scale")
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    if int(seed) < 0:
        raise ValueError("seed must be nonnegative")
    levels = tuple(float(p) for p in levels)

    nodes = []
    step = math.pi / theta_count
    targets = np.arange(1, t_count + 1) / (t_count + 1.0)
    for k in range(theta_count):
        theta = k * step
        for t in _invert_cube_cdf(theta, targets):
            nodes.append((theta, float(t)))
    spec = field_covariance(nodes)
    factor, jitter = factor_covariance(spec)
    spec = replace(spec, jitter=jitter)

    m = len(nodes)
    ratios = np.empty(replicates)
    chunk = max(1, min(replicates, (1 << 24) // max(m, 1)))
    for start in range(0, replicates, chunk):
        stop = min(start + chunk, replicates)
        draws = np.empty((stop - start, m))
        for r in range(start, stop):
            rng = np.random.default_rng(np.random.SeedSequence([int(seed), r]))
            draws[r - start] = rng.standard_normal(m)
        field = draws @ factor.T
        per_axis = np.abs(field).reshape(stop - start, theta_count, t_count).max(axis=2)
        ratios[start:stop] = per_axis.max(axis=1) / per_axis.min(axis=1)
    ordered = np.sort(ratios)
    quantiles = tuple(_nearest_rank(ordered, p) for p in levels)
    return GnAsymptoticResult(ratios=ratios, levels=levels, quantiles=quantiles,
                              field=spec, theta_count=theta_count, t_count=t_count,
                              replicates=replicates, seed=int(seed))


def worker_count() -> int:
    """Parallel workers for replicate simulation, capped by UNIRADAR_THREADS."""
    cap = os.cpu_count() or 1
    env = os.environ.get("UNIRADAR_THREADS")
    if env:
        try:
            cap = min(cap, max(1, int(env)))
        except ValueError:
            warnings.warn(f"ignoring non-integer UNIRADAR_THREADS={env!r}")
    return max(1, cap)


def _simulate_ratios(n, replicates, seed, directions) -> np.ndarray:
    workers = worker_count()
    bounds = np.linspace(0, replicates, min(workers, replicates) * 4 + 1).astype(int)
    spans = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]

    def run(span):
        lo, hi = span
        pts = np.empty((hi - lo, n, 2))
        for r in range(lo, hi):
            rng = np.random.default_rng(np.random.SeedSequence([seed, n, r]))
            pts[r - lo] = rng.uniform(-1.0, 1.0, size=(n, 2))
        values = _directional_values(pts, directions, "ks")
        return values.max(axis=1) / values.min(axis=1)

    out = np.empty(replicates)
    if workers == 1 or len(spans) == 1:
        pieces = [run(span) for span in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pieces = list(pool.map(run, spans))
    for span, piece in zip(spans, pieces):
        out[span[0]:span[1]] = piece
    return out


def _invert_cube_cdf(theta, targets) -> np.ndarray:
    a = np.array([math.cos(theta), math.sin(theta)])
    half = projdist.support_halfwidth(a)
    lo = np.full(len(targets), -half)
    hi = np.full(len(targets), half)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        below = projdist.cube_cdf(a, mid) < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def _nearest_rank(ordered, p) -> float:
    rank = int(math.ceil(p * ordered.size))
    return float(ordered[max(rank, 1) - 1])


def _half_turn_grid(step_deg) -> np.ndarray:
    if step_deg <= 0:
        raise ValueError("angle step must be positive")
    count = int(math.floor(180.0 / step_deg + 1e-9))
    if count < 4:
        raise ValueError(f"angle step {step_deg!r} leaves only {count} axes")
    return np.radians(np.arange(count) * step_deg)


def _level_name(p: float) -> str:
    pct = 100.0 * p
    return "P%g" % pct


def _parse_level(name: str) -> float:
    if not name.startswith("P"):
        raise ValueError(f"bad level column name {name!r}")
    return float(name[1:]) / 100.0
