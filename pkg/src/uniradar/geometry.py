"""Convex polygons clipped by half-planes, with exact areas.

Everything here is 2-D: a convex polygon is an ordered counter-clockwise
vertex list, a half-plane is the point set ``{x : x . normal < offset}``,
and areas come from the shoelace formula.  A batched clipping routine
serves covariance assembly, where millions of square-cut-by-two-half-planes
areas are needed at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BOUNDARY_TOL = 1e-12   # vertices within this signed distance count as inside
MIN_AREA = 1e-15       # degenerate slivers below this report as zero area


@dataclass(frozen=True)
class HalfPlane:
    """The open half-plane ``x . normal < offset`` with a unit normal."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float).reshape(2)
        if abs(np.hypot(n[0], n[1]) - 1.0) > BOUNDARY_TOL:
            raise ValueError("half-plane normal must have unit norm")
        n.flags.writeable = False
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def from_angle(cls, theta: float, offset: float) -> "HalfPlane":
        """Half-plane whose normal points along the angle ``theta`` (radians)."""
        return cls(np.array([np.cos(theta), np.sin(theta)]), offset)


@dataclass(frozen=True)
class ConvexPolygon:
    """Counter-clockwise vertex list; may be empty after clipping."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float).reshape(-1, 2)
        if len(v) >= 3:
            # all consecutive edge cross products must be >= -tol for convex CCW
            nxt = np.roll(v, -1, axis=0)
            nxt2 = np.roll(v, -2, axis=0)
            e1 = nxt - v
            e2 = nxt2 - nxt
            cross = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
            if (cross < -BOUNDARY_TOL).any():
                raise ValueError("vertices are not in convex counter-clockwise order")
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    @classmethod
    def unit_square(cls) -> "ConvexPolygon":
        """The square [-1, 1]^2."""
        return cls(np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]))

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0


def clip(poly: ConvexPolygon, h: HalfPlane) -> ConvexPolygon:
    """Intersect a convex polygon with a half-plane.

    Vertices lying on the boundary line (within ``BOUNDARY_TOL``) are
    retained, which makes clipping by the same half-plane idempotent.
    The result may be empty.
    """
    verts = poly.vertices
    if len(verts) == 0:
        return poly
    d = verts @ h.normal - h.offset
    inside = d <= BOUNDARY_TOL
    if inside.all():
        return poly
    out = []
    m = len(verts)
    for k in range(m):
        j = k - 1  # edge from vertex j to vertex k, wrapping at k = 0
        if inside[k]:
            if not inside[j]:
                out.append(_edge_crossing(verts[j], verts[k], d[j], d[k]))
            out.append(verts[k])
        elif inside[j]:
            out.append(_edge_crossing(verts[j], verts[k], d[j], d[k]))
    return ConvexPolygon(np.array(out).reshape(-1, 2))


def area(poly: ConvexPolygon) -> float:
    """Shoelace area; zero for polygons with fewer than three vertices."""
    v = poly.vertices
    if len(v) < 3:
        return 0.0
    x, y = v[:, 0], v[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    a = 0.5 * abs(np.sum(x * yn - xn * y))
    return 0.0 if a < MIN_AREA else float(a)


def _edge_crossing(s, e, ds, de):
    # ds and de have opposite strict sides here, so the denominator is safe
    t = ds / (ds - de)
    return s + (e - s) * t


# ---------------------------------------------------------------------------
# Batched clipping.  Polygons are padded (count, capacity) arrays so that a
# whole family of square-intersect-two-half-planes areas evaluates in numpy.
# ---------------------------------------------------------------------------

_SQUARE = np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])


def square_clip_areas(normals1, offsets1, normals2=None, offsets2=None):
    """Areas of the unit square cut by one or two half-planes, batched.

    Parameters
    ----------
    normals1 : (M, 2) array of unit normals
    offsets1 : (M,) array of offsets
    normals2, offsets2 : optional second half-plane per row

    Returns
    -------
    (M,) array of clipped areas, equal row by row to what repeated
    :func:`clip` plus :func:`area` produce.
    """
    n1 = np.asarray(normals1, dtype=float)
    t1 = np.asarray(offsets1, dtype=float)
    m = len(t1)
    verts = np.broadcast_to(_SQUARE, (m, 4, 2)).copy()
    counts = np.full(m, 4, dtype=np.int64)
    verts, counts = _clip_batch(verts, counts, n1, t1)
    if normals2 is not None:
        verts, counts = _clip_batch(verts, counts, np.asarray(normals2, float),
                                    np.asarray(offsets2, float))
    out = _shoelace_batch(verts, counts)
    out[out < MIN_AREA] = 0.0
    return out


def _clip_batch(verts, counts, normals, offsets):
    m, cap, _ = verts.shape
    d = np.einsum("mkj,mj->mk", verts, normals) - offsets[:, None]
    inside = d <= BOUNDARY_TOL
    out = np.zeros((m, cap + 1, 2))
    ptr = np.zeros(m, dtype=np.int64)
    rows = np.arange(m)
    for k in range(cap):
        live = counts > k
        prev = np.where(k == 0, counts - 1, k - 1)
        prev = np.clip(prev, 0, cap - 1)
        in_s = inside[rows, prev]
        in_e = inside[:, k]
        ds = d[rows, prev]
        de = d[:, k]
        denom = ds - de
        t = ds / np.where(denom == 0.0, 1.0, denom)
        s = verts[rows, prev]
        e = verts[:, k]
        crossing = s + (e - s) * t[:, None]
        emit_x = live & (in_s != in_e)
        out[rows[emit_x], ptr[emit_x]] = crossing[emit_x]
        ptr[emit_x] += 1
        emit_e = live & in_e
        out[rows[emit_e], ptr[emit_e]] = e[emit_e]
        ptr[emit_e] += 1
    return out, ptr


def _shoelace_batch(verts, counts):
    m, cap, _ = verts.shape
    idx = np.arange(cap)
    safe = np.maximum(counts, 1)[:, None]
    nxt = (idx + 1) % safe
    live = idx[None, :] < counts[:, None]
    rows = np.arange(m)[:, None]
    x, y = verts[:, :, 0], verts[:, :, 1]
    xn = verts[rows, nxt, 0]
    yn = verts[rows, nxt, 1]
    s = np.where(live, x * yn - xn * y, 0.0).sum(axis=1)
    out = 0.5 * np.abs(s)
    out[counts < 3] = 0.0
    return out
