from .polynomial import UnimodularPolynomial, RootRecord
from .solve import roots, residual, multiplicity_estimate, refine_multiple_root, solve_batch, RESIDUAL_TOL, \
    MERGE_TOL, CLUSTER_RADIUS
