import math

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

EPS = np.finfo(np.float64).eps


def complex_fsum(terms):
    """ Correctly rounded sum of complex terms (real and imaginary parts summed separately). """
    terms = np.asarray(terms, dtype=np.complex128)
    return complex(math.fsum(terms.real.tolist()), math.fsum(terms.imag.tolist()))


def _as_plane(points):
    points = np.asarray(points, dtype=np.complex128).ravel()
    return np.stack([points.real, points.imag], axis=-1)


def group_close_points(points, tol, keys=None):
    """
    Single-linkage clustering of complex points: two points share a label iff a chain of points
    with consecutive distances <= tol joins them. With ``keys`` (one integer row per point) only
    points with equal keys are linked. Labels are deterministic for a given input order.

    Returns: (num_groups, labels)
    """
    plane = _as_plane(points)
    n = plane.shape[0]
    if n == 0:
        return 0, np.zeros(shape=[0], dtype=np.int64)
    if keys is not None:
        _, key_index = np.unique(np.asarray(keys).reshape(n, -1), axis=0, return_inverse=True)
        # distinct keys sit further apart than tol along a third axis
        plane = np.concatenate([plane, (key_index.reshape(n, 1) * (1. + 2. * tol)).astype(np.float64)], axis=-1)
    pairs = cKDTree(plane).query_pairs(r=tol, output_type='ndarray')
    graph = coo_matrix((np.ones(len(pairs), dtype=np.int8), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    num_groups, labels = connected_components(graph, directed=False)
    return num_groups, labels.astype(np.int64)


def nearest_distances(queries, points):
    """ Distance from every query to its nearest point; inf when there are no points. """
    queries = _as_plane(queries)
    plane = _as_plane(points)
    if plane.shape[0] == 0:
        return np.full(shape=[queries.shape[0]], fill_value=np.inf)
    distances, _ = cKDTree(plane).query(queries, k=1)
    return np.asarray(distances, dtype=np.float64)


def round_half_up(x):
    return np.floor(np.asarray(x, dtype=np.float64) + 0.5)
