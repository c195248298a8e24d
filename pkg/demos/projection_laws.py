"""Gallery of projection laws on the square and the disk.

A point drawn uniformly from the square [-1, 1]^2 and projected onto an
oblique axis is NOT uniform: mass piles up near the center of the axis.
This script prints the exact density at a few angles (watch the trapezoid
flatten into a triangle as the axis approaches the diagonal) and checks
the disk law, which is the same semicircle for every axis.

Run:  python3 demos/projection_laws.py
"""

import numpy as np

from uniradar import cube_pdf, cube_projection, disk_cdf, disk_pdf

for deg in (0, 15, 30, 45):
    theta = np.radians(deg)
    a = np.array([np.cos(theta), np.sin(theta)])
    law = cube_projection(a)
    lo, hi = law.support
    grid = np.linspace(lo, hi, 9)
    print(f"axis at {deg:2d} deg, support [{lo:+.3f}, {hi:+.3f}]")
    print("   z:   " + "  ".join(f"{z:+.2f}" for z in grid))
    print("   pdf: " + "  ".join(f"{cube_pdf(a, z):5.3f}" for z in grid))

    corners = sorted({round(abs(np.cos(theta) - np.sin(theta)), 12),
                      round(np.cos(theta) + np.sin(theta), 12)})
    kinks = ", ".join(f"+/-{c:.3f}" for c in corners)
    print(f"   density kinks at the projected corners: {kinks}")
    print()

print("disk law (any axis): density (2/pi) sqrt(1 - z^2)")
for z in (0.0, 0.5, 0.9):
    print(f"   z={z:+.1f}: pdf {disk_pdf(z):.4f}, cdf {disk_cdf(z):.4f}")
