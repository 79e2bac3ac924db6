from typing import List, Sequence

import numpy as np

from rootsets.digitset import DigitSet
from rootsets.enumeration import RootCloud, all_roots, DEFAULT_CAP
from rootsets.exceptions import PreconditionError
from rootsets.expansion import expand_batch, validate_certificate
from rootsets.np.functional import nearest_distances
from .grid import AnnulusGrid


class CoverageReport(object):
    """ Which cells of an annulus grid contain a root of the cloud. """

    def __init__(self, grid: AnnulusGrid, hit_flags: np.ndarray, digit_set=None, max_degree=None):
        self.grid = grid
        self.hit_flags = np.asarray(hit_flags, dtype=np.bool_)
        assert self.hit_flags.shape == (len(grid),)
        self.digit_set = digit_set
        self.max_degree = max_degree

    @property
    def total_cells(self):
        return len(self.grid)

    @property
    def hit_cells(self):
        return int(np.sum(self.hit_flags))

    @property
    def hit_fraction(self):
        return self.hit_cells / self.total_cells if self.total_cells > 0 else 0.

    def __repr__(self):
        return f'CoverageReport(hit_cells={self.hit_cells}, total_cells={self.total_cells}, ' \
               f'hit_fraction={self.hit_fraction:.6f})'

    def to_record(self):
        return dict(
            digit_set=self.digit_set.spec if self.digit_set is not None else None,
            max_degree=self.max_degree,
            r_inner=self.grid.r_inner,
            r_outer=self.grid.r_outer,
            cell_size=self.grid.cell_size,
            total_cells=self.total_cells,
            hit_cells=self.hit_cells,
            hit_fraction=self.hit_fraction,
            hit_flags=''.join('1' if flag else '0' for flag in self.hit_flags),
        )


def coverage_report(cloud: RootCloud, grid: AnnulusGrid) -> CoverageReport:
    """ A cell is hit iff some root of the cloud lies in its closed square. """
    if len(grid) == 0:
        raise PreconditionError(f'{grid} has no cells')
    return CoverageReport(grid, grid.hit_flags(cloud.z), digit_set=cloud.digit_set, max_degree=cloud.max_degree)


def coverage_sweep(digit_set: DigitSet, degrees: Sequence[int], grid: AnnulusGrid, symmetry='phase-orbit',
                   num_workers=None, cap=DEFAULT_CAP, allow_large=False, logger=None, verbose=False) \
        -> List[CoverageReport]:
    """
    Coverage of the grid by the clouds of max_degree D for every D in ``degrees``. The largest cloud
    is enumerated once and restricted to lower degrees. With a logger, one row per D is dumped.
    """
    degrees = sorted(set(int(d) for d in degrees))
    assert len(degrees) > 0, 'coverage_sweep needs at least one degree'
    cloud = all_roots(digit_set, degrees[-1], symmetry=symmetry, num_workers=num_workers, cap=cap,
                      allow_large=allow_large, verbose=verbose)
    reports = []
    for degree in degrees:
        sub = cloud.subcloud(max_degree=degree)
        report = coverage_report(sub, grid)
        reports.append(report)
        if logger is not None:
            logger.log_tabular('MaxDegree', degree)
            logger.log_tabular('Roots', len(sub))
            logger.log_tabular('HitCells', report.hit_cells)
            logger.log_tabular('TotalCells', report.total_cells)
            logger.log_tabular('HitFraction', report.hit_fraction)
            logger.dump_tabular()
    return reports


class DensityReport(object):
    """
    Distances from certified power series zeros to the nearest cloud root, for every degree bound.
    Nothing here passes or fails; the numbers document how fast clouds approach the zeros.
    """

    def __init__(self, samples, certified, distances, degrees, empty_cloud=False):
        self.samples = samples
        self.certified = certified
        # distances[k, i]: sample i to the cloud of max_degree degrees[k]; NaN for uncertified samples
        self.distances = distances
        self.degrees = degrees
        self.empty_cloud = empty_cloud

    def summary(self):
        """ One row per degree bound with the max and median distance over certified samples. """
        rows = []
        for k, degree in enumerate(self.degrees):
            d = self.distances[k, self.certified]
            rows.append(dict(max_degree=int(degree),
                             certified=int(np.sum(self.certified)),
                             max_distance=float(np.max(d)) if len(d) > 0 else np.nan,
                             median_distance=float(np.median(d)) if len(d) > 0 else np.nan))
        return rows


def density_cross_check(digit_set: DigitSet, cloud: RootCloud, z_samples, steps=200, num_workers=None) \
        -> DensityReport:
    """
    For every sample with a valid expansion certificate of 0, the distance to the nearest root of the
    cloud restricted to each degree bound 1..cloud.max_degree.
    """
    z_samples = np.asarray(z_samples, dtype=np.complex128).ravel()
    modulus = np.abs(z_samples)
    if np.any(modulus <= 0.5) or np.any(modulus >= 1.):
        raise PreconditionError('density_cross_check needs samples in the open annulus 1/2 < |z| < 1')
    results = expand_batch(z_samples, 0., digit_set, steps, num_workers=num_workers)
    certified = np.array([r.passed and validate_certificate(r).passed for r in results], dtype=np.bool_)
    degrees = list(range(1, max(cloud.max_degree, 1) + 1))
    distances = np.full((len(degrees), len(z_samples)), np.nan)
    for k, degree in enumerate(degrees):
        sub = cloud.subcloud(max_degree=degree)
        if np.any(certified):
            distances[k, certified] = nearest_distances(z_samples[certified], sub.z)
    return DensityReport(z_samples, certified, distances, degrees, empty_cloud=len(cloud) == 0)
