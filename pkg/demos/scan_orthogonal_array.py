"""Scanning a 49-point orthogonal array whose points sit on parallel planes.

The array puts one point in every cell of each 2-D coordinate projection,
which sounds ideal.  But the modular construction x3 = (-x1 - 3 x2) mod 7
stacks all 49 points onto a handful of parallel planes in several oblique
direction families, and projections onto those plane normals are clumpy.
The spatial sweep finds them; the coordinate axes themselves stay clean
(seven tidy stacks of seven, distance exactly 1/14).

Run:  python3 demos/scan_orthogonal_array.py
Output: demos/out/oa49_heatmap.svg, demos/out/oa49_pins.svg
"""

from pathlib import Path

import numpy as np

from uniradar import (FigureSpec, gen_linear_oa49, plot_radar3d_heatmap,
                      plot_radar3d_pins, radar3d)

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

design = gen_linear_oa49()
scan = radar3d(design, theta_step_deg=2.0, phi_step_deg=2.0, level=0.95)

theta, phi = np.degrees(scan.argmax_angles())
print(f"critical value at 95%: {scan.critical:.4f}")
print(f"worst direction: ({theta:.0f}, {phi:.0f}) deg with {scan.values.max():.4f}")
print(f"exceeding grid directions: {int(scan.exceedance_mask().sum())} of {scan.values.size}")

tdeg = np.degrees(scan.theta_grid)
pdeg = np.degrees(scan.phi_grid)
j0 = int(np.argmin(np.abs(pdeg)))
print("axis distances:",
      ", ".join(f"{t:.0f} deg -> {scan.values[int(np.argmin(np.abs(tdeg - t))), j0]:.4f}"
                for t in (0.0, 90.0)))

for normal in ((1, 3, 1), (2, -1, 2), (3, 2, 3)):
    v = np.array(normal, dtype=float)
    v /= np.linalg.norm(v)
    t = np.degrees(np.arctan2(normal[1], normal[0])) % 360
    p = np.degrees(np.arcsin(v[2]))
    i = int(np.argmin(np.abs(tdeg - t)))
    j = int(np.argmin(np.abs(pdeg - p)))
    print(f"plane family with integer normal {normal}: direction ({t:.0f}, {p:.0f}), "
          f"scan value {scan.values[i, j]:.4f}")

print("verdict:", "reject" if scan.rejected else "accept")

(out / "oa49_heatmap.svg").write_text(
    plot_radar3d_heatmap(scan, FigureSpec(title="orthogonal array, p-values (-log10)")))
(out / "oa49_pins.svg").write_text(
    plot_radar3d_pins(scan, FigureSpec(title="orthogonal array, pin view")))
print(f"figures in {out}/")
