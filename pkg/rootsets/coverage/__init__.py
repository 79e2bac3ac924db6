"""
How root clouds fill annuli, and certified holes of the root sets inside the unit disk.
"""

from .exclusion import ExclusionCertificate, exclusion_test, exclusion_margins, exclusion_ball, scan_ball, \
    hole_search, hole_profile, tail_majorant
from .grid import AnnulusGrid
from .report import CoverageReport, coverage_report, coverage_sweep, DensityReport, density_cross_check
