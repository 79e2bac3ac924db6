"""
Digit sets: finite sets of unit-modulus coefficients, stored as sorted angles.

A digit set H is called delta-dense when the largest angular gap between circularly consecutive
digits is at most delta, so that every open arc of width delta meets H. (Another reading measures
the distance from any point of the circle to H instead, which is half the gap; it is not used here.)
"""

from typing import Sequence

import numpy as np

from rootsets.exceptions import InvalidDigitSetError, PreconditionError

TWO_PI = 2 * np.pi
ANGLE_TOL = 1e-12
# 2 * arccos(1/4): above this gap the covered radius would be >= 1
MAX_USEFUL_GAP = 2 * np.arccos(0.25)


class DigitSet(object):
    """
    An immutable set of digits e^{i theta} with theta in [0, 2pi), strictly increasing.
    Build it with ``normalize_angles`` or ``DigitSet.from_spec``.
    """

    def __init__(self, angles: np.ndarray, label=None):
        angles = np.array(angles, dtype=np.float64)
        assert angles.ndim == 1 and angles.shape[0] > 0, 'A digit set needs at least one digit'
        assert np.all(angles >= 0.) and np.all(angles < TWO_PI), f'Angles must lie in [0, 2pi). Got {angles}'
        assert np.all(np.diff(angles) > ANGLE_TOL), 'Angles must be strictly increasing'
        angles.setflags(write=False)
        self._angles = angles
        digits = np.exp(1j * angles)
        # exact axis digits keep real coefficient sets real
        digits.real[np.abs(digits.real) < 1e-15] = 0.
        digits.imag[np.abs(digits.imag) < 1e-15] = 0.
        digits.setflags(write=False)
        self._digits = digits
        self.label = label

    @classmethod
    def from_spec(cls, spec: str):
        """
        Parse a digit set specification:

        - ``uniform:k``: the k-th roots of unity, k >= 1
        - ``angles:t1,t2,...``: explicit angles in radians
        - ``littlewood``: alias for ``uniform:2``, the digits {1, -1}
        """
        spec = spec.strip()
        kind, _, body = spec.partition(':')
        kind = kind.strip().lower()
        if kind == 'littlewood' and body == '':
            return uniform(2, label='littlewood')
        elif kind == 'uniform':
            try:
                k = int(body)
            except ValueError:
                raise InvalidDigitSetError(f'uniform:k needs an integer k. Got {spec!r}')
            return uniform(k)
        elif kind == 'angles':
            try:
                raw = [float(x) for x in body.split(',') if x.strip() != '']
            except ValueError:
                raise InvalidDigitSetError(f'angles: expects comma-separated radians. Got {spec!r}')
            return normalize_angles(raw, label=spec)
        raise InvalidDigitSetError(f'Unknown digit set specification {spec!r}. '
                                   f'Use uniform:k, angles:t1,t2,... or littlewood')

    @property
    def angles(self) -> np.ndarray:
        return self._angles

    @property
    def digits(self) -> np.ndarray:
        """ The digits as complex numbers of modulus one. """
        return self._digits

    @property
    def spec(self):
        if self.label is not None:
            return self.label
        return 'angles:' + ','.join(repr(float(a)) for a in self._angles)

    def __len__(self):
        return self._angles.shape[0]

    def __eq__(self, other):
        if not isinstance(other, DigitSet):
            return NotImplemented
        return len(self) == len(other) and bool(np.all(np.abs(self._angles - other._angles) <= ANGLE_TOL))

    def __hash__(self):
        return hash(len(self))

    def __repr__(self):
        return f'DigitSet({self.spec}, size={len(self)})'

    def index_of(self, angle, tol=ANGLE_TOL):
        """ Index of the digit at ``angle`` (up to tol under the circle metric), or None. """
        distances = angular_distance(self._angles, angle)
        idx = int(np.argmin(distances))
        return idx if distances[idx] <= tol else None

    def nearest_digit_distance(self, w) -> np.ndarray:
        """
        min over digits a of |w - a|, for an array of points w. The minimizer is a digit with
        the nearest angle to arg(w), so only the two circular neighbours of arg(w) are checked.
        """
        w = np.asarray(w, dtype=np.complex128)
        arg = np.mod(np.angle(w), TWO_PI)
        hi = np.searchsorted(self._angles, arg) % len(self)
        lo = (hi - 1) % len(self)
        return np.minimum(np.abs(w - self._digits[lo]), np.abs(w - self._digits[hi]))

    def rotation_order(self):
        """ Largest s such that multiplying every digit by e^{2 pi i / s} permutes H. """
        n = len(self)
        for s in range(n, 1, -1):
            if n % s == 0 and self.rotation_permutation(s) is not None:
                return s
        return 1

    def rotation_permutation(self, s):
        """
        Index map i -> j with digit_j = digit_i * e^{2 pi i / s}, or None when H is not closed
        under that rotation.
        """
        rotated = np.mod(self._angles + TWO_PI / s, TWO_PI)
        perm = np.empty(len(self), dtype=np.int64)
        for i, angle in enumerate(rotated):
            j = self.index_of(angle, tol=1e-9)
            if j is None:
                return None
            perm[i] = j
        return perm

    def covers_radius(self, r):
        """ Whether the density hypothesis holds at radius r, i.e. A_[r,1) is guaranteed covered. """
        return max_gap(self) <= density_threshold(r)


def uniform(k, label=None):
    """ The k-th roots of unity. """
    if k < 1:
        raise InvalidDigitSetError(f'uniform:k needs k >= 1. Got {k}')
    return DigitSet(TWO_PI * np.arange(k) / k, label=label or f'uniform:{k}')


def normalize_angles(raw: Sequence[float], label=None) -> DigitSet:
    """
    Reduce angles modulo 2pi into [0, 2pi), sort them and drop duplicates closer than 1e-12.

    Args:
        raw: angles in radians, any real values
        label: optional specification string kept for serialization

    Returns: DigitSet
    """
    raw = np.asarray(raw, dtype=np.float64).ravel()
    if raw.shape[0] == 0:
        raise InvalidDigitSetError('A digit set needs at least one angle')
    if not np.all(np.isfinite(raw)):
        raise InvalidDigitSetError(f'Angles must be finite. Got {raw}')
    angles = np.mod(raw, TWO_PI)
    # values within tolerance below 2pi are the digit 1
    angles[angles >= TWO_PI - ANGLE_TOL] = 0.
    angles = np.sort(angles)
    keep = np.concatenate([[True], np.diff(angles) > ANGLE_TOL])
    return DigitSet(angles[keep], label=label)


def angular_distance(theta, theta_prime):
    """ Interior angle between e^{i theta} and e^{i theta'}, in [0, pi]. Broadcasts over arrays. """
    delta = np.mod(np.asarray(theta, dtype=np.float64) - np.asarray(theta_prime, dtype=np.float64), TWO_PI)
    distance = np.minimum(delta, TWO_PI - delta)
    return float(distance) if np.ndim(distance) == 0 else distance


def max_gap(digit_set: DigitSet) -> float:
    """ Largest angular gap between circularly consecutive digits; 2pi for a single digit. """
    angles = digit_set.angles
    wrap = angles[0] + TWO_PI - angles[-1]
    if len(angles) == 1:
        return float(wrap)
    return float(max(np.max(np.diff(angles)), wrap))


def density_threshold(r) -> float:
    """
    The density 2 arccos((5 - 4r^2) / 4) under which every z with |z| in [r, 1) is a power
    series zero.
    """
    if not (0.5 < r < 1.):
        raise PreconditionError(f'density_threshold needs r in (1/2, 1). Got {r}')
    return float(2 * np.arccos((5. - 4. * r * r) / 4.))


def min_covered_radius(digit_set: DigitSet):
    """
    Smallest r with density_threshold(r) = max_gap(H), i.e. r = sqrt(5/4 - cos(max_gap / 2)).
    None when the gap is too large for any r < 1. Gaps so small that r rounds to 1/2 give the
    smallest float above 1/2.
    """
    gap = max_gap(digit_set)
    if gap >= MAX_USEFUL_GAP:
        return None
    r = float(np.sqrt(1.25 - np.cos(gap / 2)))
    if r >= 1.:
        return None
    return max(r, float(np.nextafter(0.5, 1.)))
