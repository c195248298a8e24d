"""Independent numerical oracles used to cross-check the analytic paths.

The projection-law oracle never touches the corner-sum formula: it builds
the CDF of a sum of centered uniform variables by repeated exact box
smoothing.  If G is the antiderivative of the CDF F of a partial sum, then
adding an independent uniform on [-b, b] gives the new CDF

    F_new(z) = (G(z + b) - G(z - b)) / (2 b),

starting from the point mass at zero (F_0 = step, G_0(z) = max(z, 0)).
Antiderivatives are rebuilt between stages with cumulative trapezoids on a
fixed grid, so the only error sources are quadrature and interpolation,
both of order (grid step)^2.
"""

import numpy as np


def convolution_cdf(halfwidths, n_cells=2 ** 15):
    """Grid and oracle CDF values for the sum of centered uniforms.

    Parameters
    ----------
    halfwidths : positive reals, the |a_j| of the active components
    n_cells : grid resolution over the full support

    Returns
    -------
    (grid, cdf) arrays of length n_cells + 1 spanning the exact support.
    """
    b = np.asarray(halfwidths, dtype=float)
    span = float(b.sum())
    grid = np.linspace(-span, span, n_cells + 1)
    step = grid[1] - grid[0]

    # antiderivative of the step CDF of the point mass at zero
    g = np.maximum(grid, 0.0)
    g_hi = g[-1]
    cdf = None
    for half in b:
        cdf = (_eval_antiderivative(grid, g, g_hi, grid + half)
               - _eval_antiderivative(grid, g, g_hi, grid - half)) / (2.0 * half)
        cdf = np.clip(cdf, 0.0, 1.0)
        # rebuild the antiderivative by cumulative trapezoid for the next stage
        g = np.concatenate([[0.0], np.cumsum(0.5 * (cdf[1:] + cdf[:-1]) * step)])
        g_hi = g[-1]
    return grid, cdf


def _eval_antiderivative(grid, g, g_hi, x):
    # below the grid the antiderivative is 0, above it grows with slope 1
    out = np.interp(x, grid, g)
    above = x > grid[-1]
    out[above] = g_hi + (x[above] - grid[-1])
    return out


def random_unit_vector(rng, d):
    """Isotropic unit vector."""
    while True:
        v = rng.standard_normal(d)
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            return v / norm


def monte_carlo_cube_cdf(rng, direction, grid, n_points=10 ** 6):
    """Empirical CDF of projections of uniform cube points at the grid nodes."""
    d = len(direction)
    z = np.sort(rng.uniform(-1.0, 1.0, size=(n_points, d)) @ np.asarray(direction))
    return np.searchsorted(z, grid, side="right") / n_points


def monte_carlo_disk_cdf(rng, grid, n_points=10 ** 6):
    """Empirical CDF of the first coordinate of uniform unit-disk points."""
    radius = np.sqrt(rng.uniform(0.0, 1.0, n_points))
    angle = rng.uniform(0.0, 2.0 * np.pi, n_points)
    x = np.sort(radius * np.cos(angle))
    return np.searchsorted(x, grid, side="right") / n_points
