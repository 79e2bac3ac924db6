import functools

import numpy as np

from rootsets.digitset import DigitSet
from rootsets.exceptions import PreconditionError, ResourceCapError
from rootsets.infra import WorkerPool
from rootsets.interface.logging import LogUser
from rootsets.logx import log
from rootsets.rootsolver import solve_batch, RESIDUAL_TOL
from .cloud import RootCloud
from .stream import DEFAULT_CHUNK_SIZE, check_symmetry, orbit_permutations, plan_ranges, polynomial_count, \
    iterate_chunks

DEFAULT_CAP = 10 ** 8


def _solve_range(task, digit_set: DigitSet, degree, symmetry, permutations, chunk_size):
    start, stop = task
    clouds = []
    for ranks, indices in iterate_chunks(digit_set, degree, symmetry, chunk_size=chunk_size, start=start, stop=stop,
                                         permutations=permutations):
        if len(ranks) == 0:
            continue
        rows, z, multiplicity, residual = solve_batch(digit_set.digits[indices])
        clouds.append(RootCloud(digit_set, degree, symmetry, z=z, residual=residual, multiplicity=multiplicity,
                                degree=np.full(len(z), degree), source_index=ranks[rows],
                                converged=residual <= RESIDUAL_TOL))
    return stop - start, functools.reduce(RootCloud.merge, clouds, RootCloud(digit_set, degree, symmetry))


class RootEnumerator(LogUser):
    """
    Solves every polynomial of degrees 1..max_degree over a worker pool, one degree at a time.
    With a logger attached, one row of diagnostics is dumped per degree.
    """

    def __init__(self, digit_set: DigitSet, symmetry='none', num_workers=None, chunk_size=DEFAULT_CHUNK_SIZE,
                 cap=DEFAULT_CAP, allow_large=False, verbose=False):
        super(RootEnumerator, self).__init__()
        check_symmetry(symmetry)
        self.digit_set = digit_set
        self.symmetry = symmetry
        self.num_workers = num_workers
        self.chunk_size = chunk_size
        self.cap = cap
        self.allow_large = allow_large
        self.verbose = verbose
        self.permutations = orbit_permutations(digit_set) if symmetry == 'phase-orbit' else []
        self._degree = 0
        self._num_polynomials = 0
        self._num_roots = 0
        self._num_unconverged = 0

    def log_tabular(self):
        self.logger.log_tabular('Degree', self._degree)
        self.logger.log_tabular('Polynomials', self._num_polynomials)
        self.logger.log_tabular('Roots', self._num_roots)
        self.logger.log_tabular('Unconverged', self._num_unconverged)
        self.logger.log_tabular('Residual', with_min_and_max=True)
        self.logger.log_tabular('Multiplicity', with_min_and_max=True)

    def check_budget(self, max_degree):
        count = polynomial_count(self.digit_set, max_degree, symmetry='none')
        if count > self.cap and not self.allow_large:
            raise ResourceCapError(count, self.cap)
        return count

    def solve_degree(self, pool: WorkerPool, degree) -> RootCloud:
        tasks = plan_ranges(len(self.digit_set), degree, pool.num_workers, self.chunk_size)
        fn = functools.partial(_solve_range, digit_set=self.digit_set, degree=degree, symmetry=self.symmetry,
                               permutations=self.permutations, chunk_size=self.chunk_size)
        cloud = RootCloud(self.digit_set, degree, self.symmetry)
        for _, part in pool.imap(fn, tasks, total=len(tasks), desc=f'Degree {degree}', verbose=self.verbose):
            if self.logger is not None and len(part) > 0:
                self.logger.store(Residual=part.residual, Multiplicity=part.multiplicity.astype(np.float64))
            cloud = cloud.merge(part)
        self._degree = degree
        self._num_polynomials = polynomial_count(self.digit_set, degree, self.symmetry, min_degree=degree)
        self._num_roots = len(cloud)
        self._num_unconverged = cloud.num_unconverged
        if cloud.num_unconverged > 0:
            log(f'{cloud.num_unconverged} roots of degree {degree} exceed residual {RESIDUAL_TOL}', color='yellow')
        return cloud

    def run(self, max_degree) -> RootCloud:
        if max_degree < 1:
            raise PreconditionError(f'Enumeration needs max_degree >= 1. Got {max_degree}')
        self.check_budget(max_degree)
        cloud = RootCloud(self.digit_set, max_degree, self.symmetry)
        with WorkerPool(self.num_workers) as pool:
            for degree in range(1, max_degree + 1):
                cloud = cloud.merge(self.solve_degree(pool, degree))
                if self.logger is not None:
                    self.logger.dump_tabular()
        return cloud.sorted()


def all_roots(digit_set: DigitSet, max_degree, symmetry='none', num_workers=None, cap=DEFAULT_CAP,
              allow_large=False, logger=None, verbose=False) -> RootCloud:
    """
    Roots of every polynomial with coefficients in H and exact degree 1..max_degree, with
    multiplicity and provenance, in canonical order.

    Args:
        digit_set: the digits H
        max_degree: largest degree enumerated
        symmetry: 'none' or 'phase-orbit' (one polynomial per orbit of global rotation)
        num_workers: pool width (see ``resolve_num_workers``)
        cap: refuse jobs with more than ``cap`` coefficient vectors ...
        allow_large: ... unless this is set
        logger: optional EpochLogger receiving one row per degree
        verbose: show progress bars

    Returns: RootCloud
    """
    enumerator = RootEnumerator(digit_set, symmetry=symmetry, num_workers=num_workers, cap=cap,
                                allow_large=allow_large, verbose=verbose)
    if logger is not None:
        enumerator.set_logger(logger)
    return enumerator.run(max_degree)
