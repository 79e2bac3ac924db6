"""
Greedy digit expansions sum_n a_n z^n = target with digits a_n in H.

Starting from x = target, each step picks the digit a closest to x and replaces x by (x - a) / z.
If |x - a| <= 2|z| the new remainder stays in the closed disk of radius 2, and after N + 1 digits

    target = a_0 + a_1 z + ... + a_N z^N + x_N z^{N+1},

so the partial sum is within 2|z|^{N+1} of the target. When the gap of H is below the density
threshold of |z| an admissible digit always exists. A certificate records the digits and is
validated by re-evaluating the partial sum, never by trusting the remainder, whose rounding error
grows like |z|^{-n}.
"""

import functools
from typing import List, Union

import numpy as np
from numba import njit

from rootsets.digitset import DigitSet
from rootsets.exceptions import PreconditionError, MalformedCertificateError
from rootsets.infra import WorkerPool, Seeder
from rootsets.np.functional import complex_fsum, EPS

TIE_TOL = 1e-12
STEP_SLACK = 1e-12
DISK_TOL = 1e-9


@njit(cache=True)
def _select_digit(x, digits):
    """ Greedy digit: the first (smallest angle) index within TIE_TOL of the minimal distance. """
    n = digits.shape[0]
    d_min = np.inf
    for k in range(n):
        d = abs(x - digits[k])
        if d < d_min:
            d_min = d
    for k in range(n):
        d = abs(x - digits[k])
        if d <= d_min + TIE_TOL:
            return k, d, d_min
    return 0, abs(x - digits[0]), d_min


@njit(cache=True)
def _greedy_orbit(z, target, digits, num_digits, slack):
    """
    Run the greedy recurrence for num_digits digits.

    Returns: (digit indices, remainders x_0..x_n, failing step or -1, min distance at the failure)
    """
    indices = np.empty(num_digits, dtype=np.int64)
    orbit = np.empty(num_digits, dtype=np.complex128)
    bound = 2. * abs(z)
    x = target
    for n in range(num_digits):
        k, d, d_min = _select_digit(x, digits)
        if d > bound + slack:
            return indices[:n], orbit[:n], n, d_min
        x = (x - digits[k]) / z
        indices[n] = k
        orbit[n] = x
    return indices, orbit, -1, 0.


class BetaStep(object):
    def __init__(self, digit_index, angle, x):
        self.digit_index = digit_index
        self.angle = angle
        self.x = x

    def __repr__(self):
        return f'BetaStep(digit_index={self.digit_index}, angle={self.angle}, x={self.x})'


class StepFailure(object):
    """ No digit satisfies |z' - a| <= 2|z|. """

    def __init__(self, step_index, min_distance, bound):
        self.step_index = step_index
        self.min_distance = min_distance
        self.bound = bound

    def __repr__(self):
        return f'StepFailure(step_index={self.step_index}, min_distance={self.min_distance}, bound={self.bound})'


class ExpansionCertificate(object):
    """
    Digits a_0..a_N with |sum a_n z^n - target| <= 2|z|^{N+1}. ``orbit`` holds the remainders
    x_0..x_N for diagnostics; ``remainder`` is x_N.
    """
    passed = True

    def __init__(self, z, target, digit_set: DigitSet, digit_indices, orbit=None):
        self.z = complex(z)
        self.target = complex(target)
        self.digit_set = digit_set
        self.digit_indices = np.asarray(digit_indices, dtype=np.int64)
        self.orbit = np.asarray(orbit, dtype=np.complex128) if orbit is not None else None
        self.tail_bound = float(2. * abs(self.z) ** (len(self.digit_indices)))
        self.achieved_residual = abs(partial_sum(self.z, self.digit_set.digits[self.digit_indices]) - self.target)

    @property
    def steps(self):
        """ N, the index of the last digit. """
        return len(self.digit_indices) - 1

    @property
    def digit_angles(self) -> np.ndarray:
        return self.digit_set.angles[self.digit_indices]

    @property
    def remainder(self):
        return complex(self.orbit[-1]) if self.orbit is not None and len(self.orbit) > 0 else complex('nan')

    @property
    def max_remainder(self):
        return float(np.max(np.abs(self.orbit))) if self.orbit is not None and len(self.orbit) > 0 else 0.

    def to_record(self, report=None):
        if report is None:
            report = validate_certificate(self)
        return dict(
            z_re=self.z.real,
            z_im=self.z.imag,
            target_re=self.target.real,
            target_im=self.target.imag,
            digit_set=self.digit_set.spec,
            steps=self.steps,
            digit_angles=[float(a) for a in self.digit_angles],
            remainder_re=self.remainder.real,
            remainder_im=self.remainder.imag,
            tail_bound=self.tail_bound,
            achieved_residual=report.achieved_residual,
            numerical_slack=report.numerical_slack,
            passed=report.passed,
        )

    @classmethod
    def from_record(cls, record, digit_set: DigitSet):
        """ Rebuild a certificate from its document; raises if a digit is not in ``digit_set``. """
        indices = _indices_of(record['digit_angles'], digit_set)
        return cls(z=complex(record['z_re'], record['z_im']),
                   target=complex(record['target_re'], record['target_im']),
                   digit_set=digit_set, digit_indices=indices,
                   orbit=[complex(record['remainder_re'], record['remainder_im'])])


class ExpansionFailure(object):
    """ The greedy orbit left the radius-2 disk: no admissible digit at ``step_index``. """
    passed = False

    def __init__(self, z, target, digit_set: DigitSet, digit_indices, failure: StepFailure):
        self.z = complex(z)
        self.target = complex(target)
        self.digit_set = digit_set
        self.digit_indices = np.asarray(digit_indices, dtype=np.int64)
        self.failure = failure

    @property
    def step_index(self):
        return self.failure.step_index

    def to_record(self):
        return dict(
            z_re=self.z.real,
            z_im=self.z.imag,
            target_re=self.target.real,
            target_im=self.target.imag,
            digit_set=self.digit_set.spec,
            digit_angles=[float(a) for a in self.digit_set.angles[self.digit_indices]],
            failed_step=self.failure.step_index,
            min_distance=self.failure.min_distance,
            bound=self.failure.bound,
            passed=False,
        )


class ValidationReport(object):
    def __init__(self, achieved_residual, tail_bound, numerical_slack):
        self.achieved_residual = achieved_residual
        self.tail_bound = tail_bound
        self.numerical_slack = numerical_slack
        self.slack = tail_bound + numerical_slack - achieved_residual
        self.passed = bool(self.slack >= 0.)

    def __repr__(self):
        return (f'ValidationReport(passed={self.passed}, achieved_residual={self.achieved_residual:.3e}, '
                f'tail_bound={self.tail_bound:.3e}, slack={self.slack:.3e})')


def _check_point(z):
    if not (0.5 < abs(z) < 1.):
        raise PreconditionError(f'Expansions need 1/2 < |z| < 1. Got |z| = {abs(z)}')


def _indices_of(angles, digit_set: DigitSet):
    indices = []
    for n, angle in enumerate(angles):
        idx = digit_set.index_of(angle)
        if idx is None:
            raise MalformedCertificateError(f'Digit {n} at angle {angle} is not in {digit_set}')
        indices.append(idx)
    return np.asarray(indices, dtype=np.int64)


def _terms(z, digits):
    powers = np.cumprod(np.concatenate([[1. + 0j], np.full(len(digits) - 1, complex(z))]))
    return np.asarray(digits, dtype=np.complex128) * powers


def partial_sum(z, digits, n=None):
    """ Compensated value of sum_{m <= n} digits[m] z^m (all digits when n is None). """
    digits = np.asarray(digits, dtype=np.complex128)
    if n is not None:
        digits = digits[:n + 1]
    if len(digits) == 0:
        return 0j
    return complex_fsum(_terms(z, digits))


def beta_step(z, z_prime, digit_set: DigitSet) -> Union[BetaStep, StepFailure]:
    """
    One greedy step: the digit a closest to z' (smallest angle on ties) together with
    x = (z' - a) / z, provided |z' - a| <= 2|z|, which keeps |x| <= 2.

    Args:
        z: the evaluation point, 1/2 < |z| < 1
        z_prime: the current remainder, |z'| <= 2
        digit_set: the digits H

    Returns: BetaStep, or StepFailure carrying min |z' - a| and the bound 2|z|
    """
    z, z_prime = complex(z), complex(z_prime)
    _check_point(z)
    if abs(z_prime) > 2. + DISK_TOL:
        raise PreconditionError(f'beta_step needs |z\'| <= 2. Got {abs(z_prime)}')
    k, d, d_min = _select_digit(z_prime, digit_set.digits)
    if d > 2. * abs(z) + STEP_SLACK:
        return StepFailure(step_index=0, min_distance=float(d_min), bound=2. * abs(z))
    return BetaStep(digit_index=int(k), angle=float(digit_set.angles[k]), x=(z_prime - digit_set.digits[k]) / z)


def expand(z, target, digit_set: DigitSet, steps) -> Union[ExpansionCertificate, ExpansionFailure]:
    """
    Greedy expansion of ``target`` in base z with digits in H: digits a_0..a_N, N = ``steps``.

    Args:
        z: the evaluation point, 1/2 < |z| < 1
        target: the value to represent, |target| <= 2 (0 for a power series zero)
        digit_set: the digits H
        steps: N >= 1

    Returns: ExpansionCertificate, or ExpansionFailure with the failing step index
    """
    z, target = complex(z), complex(target)
    _check_point(z)
    if abs(target) > 2. + DISK_TOL:
        raise PreconditionError(f'expand needs |target| <= 2. Got {abs(target)}')
    if steps < 1:
        raise PreconditionError(f'expand needs at least one step. Got {steps}')
    indices, orbit, failed_step, d_min = _greedy_orbit(z, target, digit_set.digits, int(steps) + 1, STEP_SLACK)
    if failed_step >= 0:
        failure = StepFailure(step_index=int(failed_step), min_distance=float(d_min), bound=2. * abs(z))
        return ExpansionFailure(z, target, digit_set, indices, failure)
    return ExpansionCertificate(z, target, digit_set, indices, orbit)


def numerical_slack(z, digits):
    """ 8 N eps max_n |S_n|: forward error envelope of the re-evaluated partial sums. """
    terms = _terms(z, digits)
    max_partial = float(np.max(np.abs(np.cumsum(terms))))
    return 8. * max(len(terms) - 1, 1) * EPS * max_partial


def validate_certificate(cert: ExpansionCertificate, digit_set: DigitSet = None) -> ValidationReport:
    """
    Independent re-check of a certificate: every digit must belong to H, 1/2 < |z| < 1, and the
    compensated partial sum must be within tail_bound + numerical slack of the target.
    """
    digit_set = digit_set or cert.digit_set
    if not (0.5 < abs(cert.z) < 1.):
        raise MalformedCertificateError(f'Certificate point has |z| = {abs(cert.z)} outside (1/2, 1)')
    if len(cert.digit_indices) == 0:
        raise MalformedCertificateError('Certificate has no digits')
    indices = _indices_of(cert.digit_angles, digit_set)
    digits = digit_set.digits[indices]
    achieved = abs(partial_sum(cert.z, digits) - cert.target)
    tail_bound = 2. * abs(cert.z) ** len(digits)
    return ValidationReport(achieved_residual=achieved, tail_bound=tail_bound,
                            numerical_slack=numerical_slack(cert.z, digits))


def residual_trace(cert: ExpansionCertificate, ns=None) -> np.ndarray:
    """ |S_n - target| for each requested n (every n by default). """
    digits = cert.digit_set.digits[cert.digit_indices]
    if ns is None:
        ns = range(len(digits))
    return np.array([abs(partial_sum(cert.z, digits, n) - cert.target) for n in ns], dtype=np.float64)


def sample_annulus(r_inner, r_outer, count, seed=0) -> np.ndarray:
    """
    ``count`` points of A_[r_inner, r_outer]: half on a polar grid (both boundary circles
    included), half pseudorandom and uniform in area from ``seed``.
    """
    assert 0. < r_inner <= r_outer, f'Need 0 < r_inner <= r_outer. Got {r_inner}, {r_outer}'
    num_grid = count // 2
    num_rings = max(1, int(round(np.sqrt(num_grid / 4.)))) if num_grid > 0 else 0
    points = []
    if num_rings > 0:
        radii = np.linspace(r_inner, r_outer, num_rings)
        per_ring = [num_grid // num_rings + (1 if i < num_grid % num_rings else 0) for i in range(num_rings)]
        for i, (radius, m) in enumerate(zip(radii, per_ring)):
            # stagger rings so the arguments do not line up
            offset = np.pi * i / max(m, 1) / num_rings
            points.append(radius * np.exp(1j * (2 * np.pi * np.arange(m) / m + offset)))
    rng = Seeder(seed).generator()
    num_random = count - num_grid
    radii = np.sqrt(rng.uniform(r_inner ** 2, r_outer ** 2, size=num_random))
    arguments = rng.uniform(0., 2 * np.pi, size=num_random)
    points.append(radii * np.exp(1j * arguments))
    return np.concatenate(points).astype(np.complex128)


def _expand_task(z, target, digit_set, steps):
    return expand(z, target, digit_set, steps)


def expand_batch(points, target, digit_set: DigitSet, steps, num_workers=None, verbose=False) \
        -> List[Union[ExpansionCertificate, ExpansionFailure]]:
    """ ``expand`` at every point, in point order, over a worker pool. """
    fn = functools.partial(_expand_task, target=complex(target), digit_set=digit_set, steps=steps)
    points = [complex(p) for p in np.asarray(points, dtype=np.complex128).ravel()]
    with WorkerPool(num_workers) as pool:
        return pool.map(fn, points, total=len(points), desc='Expanding', verbose=verbose)


class RegionReport(object):
    """ Outcome of certifying a sample of A_[r_inner, r_outer]. """

    def __init__(self, digit_set, r_inner, r_outer, results, reports):
        self.digit_set = digit_set
        self.r_inner = r_inner
        self.r_outer = r_outer
        self.results = results
        self.reports = reports

    @property
    def num_passed(self):
        return sum(1 for r in self.reports if r is not None and r.passed)

    @property
    def num_failed(self):
        return len(self.results) - self.num_passed

    @property
    def max_remainder(self):
        return max([r.max_remainder for r in self.results if r.passed] or [0.])

    @property
    def min_slack(self):
        return min([r.slack for r in self.reports if r is not None] or [np.inf])

    def rows(self):
        """ One row per sample point, in sample order. """
        for result, report in zip(self.results, self.reports):
            yield dict(
                z_re=result.z.real,
                z_im=result.z.imag,
                modulus=abs(result.z),
                passed=int(report is not None and report.passed),
                achieved_residual=report.achieved_residual if report is not None else np.nan,
                tail_bound=report.tail_bound if report is not None else np.nan,
                max_remainder=result.max_remainder if result.passed else np.nan,
                failed_step=-1 if result.passed else result.step_index,
            )


def certify_region(digit_set: DigitSet, r_inner, r_outer, count, steps, seed=0, num_workers=None,
                   verbose=False) -> RegionReport:
    """ Expand 0 at ``count`` sample points of A_[r_inner, r_outer] and validate every certificate. """
    points = sample_annulus(r_inner, r_outer, count, seed=seed)
    results = expand_batch(points, 0., digit_set, steps, num_workers=num_workers, verbose=verbose)
    reports = [validate_certificate(r) if r.passed else None for r in results]
    return RegionReport(digit_set, r_inner, r_outer, results, reports)
