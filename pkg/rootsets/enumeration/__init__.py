"""
Exhaustive enumeration of polynomials with coefficients in a digit set, and the clouds of their roots.
"""

from .cloud import RootCloud, write_cloud_csv, read_cloud_csv, CLOUD_COLUMNS
from .enumerator import RootEnumerator, all_roots, DEFAULT_CAP
from .scans import multiple_roots, multiple_root_scan, reciprocal_defect
from .stream import iterate_polynomials, polynomial_count, SYMMETRY_MODES
