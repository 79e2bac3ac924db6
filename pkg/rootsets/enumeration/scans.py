from typing import List

import numpy as np

from rootsets.digitset import DigitSet
from rootsets.exceptions import PreconditionError
from rootsets.np.functional import group_close_points, nearest_distances
from rootsets.rootsolver import RootRecord, multiplicity_estimate, refine_multiple_root, residual, RESIDUAL_TOL, \
    MERGE_TOL, CLUSTER_RADIUS
from .cloud import RootCloud
from .enumerator import all_roots, DEFAULT_CAP


def multiple_roots(cloud: RootCloud, order) -> List[RootRecord]:
    """
    Roots of the cloud whose multiplicity estimate is at least ``order``, one per 1e-9 cluster.

    Candidates are clusters of roots of one polynomial within the solver's cluster radius whose
    multiplicities add up to ``order``, so roots the solver left split are still found. Each
    candidate is refined and then re-tested on the exact polynomial.
    """
    if order < 2:
        raise PreconditionError(f'multiple_root_scan needs order >= 2. Got {order}')
    if cloud.digit_set is None:
        raise PreconditionError('multiple_roots needs a cloud with its digit set')
    if len(cloud) == 0:
        return []
    keys = np.stack([cloud.degree, cloud.source_index], axis=-1)
    num_groups, labels = group_close_points(cloud.z, CLUSTER_RADIUS, keys=keys)
    weight = np.bincount(labels, weights=cloud.multiplicity, minlength=num_groups)
    found = []
    # candidates in cloud order of their first member
    _, first = np.unique(labels, return_index=True)
    for label in labels[np.sort(first)]:
        if weight[label] < order:
            continue
        members = np.nonzero(labels == label)[0]
        record = next(cloud.take(members[:1]).records())
        centroid = complex(np.average(cloud.z[members], weights=cloud.multiplicity[members]))
        # the cluster may also hold simple roots next to the multiple one
        for m in range(int(round(weight[label])), order - 1, -1):
            z = refine_multiple_root(record.source.coefficients, centroid, m)
            if residual(record.source, z) > RESIDUAL_TOL:
                continue
            multiplicity = multiplicity_estimate(record.source, z, record.source.degree)
            if multiplicity >= order:
                record.z, record.residual, record.multiplicity = z, residual(record.source, z), multiplicity
                found.append(record)
                break
    if len(found) == 0:
        return found
    # one record per root shared by several polynomials
    _, dedup_labels = group_close_points(np.array([record.z for record in found]), MERGE_TOL)
    _, keep = np.unique(dedup_labels, return_index=True)
    return [found[i] for i in np.sort(keep)]


def multiple_root_scan(digit_set: DigitSet, max_degree, order, symmetry='phase-orbit', num_workers=None,
                       cap=DEFAULT_CAP, allow_large=False, verbose=False) -> List[RootRecord]:
    """
    Roots of order >= ``order`` among all polynomials of degree <= max_degree, deduplicated
    across polynomials.
    """
    if order < 2:
        raise PreconditionError(f'multiple_root_scan needs order >= 2. Got {order}')
    cloud = all_roots(digit_set, max_degree, symmetry=symmetry, num_workers=num_workers, cap=cap,
                      allow_large=allow_large, verbose=verbose)
    return multiple_roots(cloud, order)


def reciprocal_defect(cloud: RootCloud, degree) -> float:
    """
    Largest distance from 1/z to the nearest root of the same degree, over the roots z of that
    degree. Reversing the coefficient vector maps the degree-d polynomials onto themselves, so this
    is zero up to solver accuracy.
    """
    sub = cloud.subcloud(degree=degree)
    if len(sub) == 0:
        return 0.
    return float(np.max(nearest_distances(1. / sub.z, sub.z)))
