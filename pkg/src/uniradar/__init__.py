"""Directional uniformity testing for space-filling experiment designs.

The library checks how evenly a point set fills the cube [-1, 1]^d by
looking at every 1-dimensional projection: project the design onto a
rotating axis, compare the projected sample against its exact theoretical
law, and sweep the axis through all directions.  The sweep gives a polar
"radar" curve (or surface in 3-D) of goodness-of-fit distances, a global
max/min ratio statistic with simulated critical values, and SVG figures.
"""

from .designs import (Design, DomainError, FormatError, gen_halton,
                      gen_linear_oa49, gen_uniform, load_csv, save_csv)
from .geometry import ConvexPolygon, HalfPlane, area, clip
from .gof import (GofResult, cvm_critical, cvm_distance, cvm_statistic,
                  ks_critical, ks_distance, ks_statistic, pit)
from .global_stat import (FactorizationError, GaussianFieldSpec,
                          GnAsymptoticResult, GnQuantileTable, GnResult,
                          factor_covariance, field_covariance, gn,
                          gn_asymptotic, gn_table, load_default_table)
from .projdist import (Direction, ProjectionCdf, cube_cdf, cube_pdf,
                       cube_projection, disk_cdf, disk_pdf, disk_projection,
                       support_halfwidth)
from .radar import (RadarScan2D, RadarScan3D, project, radar2d, radar3d,
                    scan_subspaces)
from .render import (FigureSpec, plot_design2d, plot_radar2d,
                     plot_radar3d_heatmap, plot_radar3d_pins)

__version__ = "0.1.0"

__all__ = [
    "Design", "DomainError", "FormatError", "gen_halton", "gen_linear_oa49",
    "gen_uniform", "load_csv", "save_csv",
    "ConvexPolygon", "HalfPlane", "area", "clip",
    "GofResult", "cvm_critical", "cvm_distance", "cvm_statistic",
    "ks_critical", "ks_distance", "ks_statistic", "pit",
    "FactorizationError", "GaussianFieldSpec", "GnAsymptoticResult",
    "GnQuantileTable", "GnResult", "factor_covariance", "field_covariance",
    "gn", "gn_asymptotic", "gn_table", "load_default_table",
    "Direction", "ProjectionCdf", "cube_cdf", "cube_pdf", "cube_projection",
    "disk_cdf", "disk_pdf", "disk_projection", "support_halfwidth",
    "RadarScan2D", "RadarScan3D", "project", "radar2d", "radar3d",
    "scan_subspaces",
    "FigureSpec", "plot_design2d", "plot_radar2d", "plot_radar3d_heatmap",
    "plot_radar3d_pins",
    "__version__",
]
