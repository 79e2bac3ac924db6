from typing import Sequence

import numpy as np

from rootsets.digitset import DigitSet
from rootsets.exceptions import PreconditionError


class UnimodularPolynomial(object):
    """
    P(z) = sum_n a_n z^n with every a_n a digit of H. ``digit_indices[n]`` is the index of a_n in
    the digit set, low degree first.
    """

    def __init__(self, digit_set: DigitSet, digit_indices: Sequence[int]):
        indices = np.array(digit_indices, dtype=np.int64).ravel()
        if indices.shape[0] < 2:
            raise PreconditionError(f'A polynomial needs degree >= 1 (at least two coefficients). Got {indices}')
        if np.any(indices < 0) or np.any(indices >= len(digit_set)):
            raise PreconditionError(f'Digit indices must lie in [0, {len(digit_set)}). Got {indices}')
        indices.setflags(write=False)
        self.digit_set = digit_set
        self.digit_indices = indices

    @classmethod
    def from_index(cls, digit_set: DigitSet, degree, index):
        """ The polynomial of the given degree whose lexicographic rank is ``index``. """
        base = len(digit_set)
        indices = []
        index = int(index)
        for _ in range(degree + 1):
            index, digit = divmod(index, base)
            indices.append(digit)
        assert index == 0, 'Index out of range for this degree'
        return cls(digit_set, indices[::-1])

    @property
    def degree(self):
        return self.digit_indices.shape[0] - 1

    @property
    def coefficients(self) -> np.ndarray:
        return self.digit_set.digits[self.digit_indices]

    @property
    def index(self):
        """ Lexicographic rank among polynomials of this degree (a_0 most significant). """
        base = len(self.digit_set)
        rank = 0
        for digit in self.digit_indices.tolist():
            rank = rank * base + digit
        return rank

    def reversed(self):
        """ z^k P(1/z): the coefficients read high degree first. """
        return UnimodularPolynomial(self.digit_set, self.digit_indices[::-1])

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, UnimodularPolynomial):
            return NotImplemented
        return self.digit_set == other.digit_set and np.array_equal(self.digit_indices, other.digit_indices)

    def __hash__(self):
        return hash(tuple(self.digit_indices.tolist()))

    def __repr__(self):
        return f'UnimodularPolynomial({self.digit_set.spec}, {self.digit_indices.tolist()})'


class RootRecord(object):
    """ A located root: position, scaled residual, multiplicity and the polynomial it annihilates. """

    def __init__(self, z, residual, multiplicity, source: UnimodularPolynomial, converged=True):
        self.z = complex(z)
        self.residual = float(residual)
        self.multiplicity = int(multiplicity)
        self.source = source
        self.converged = bool(converged)

    def __repr__(self):
        return (f'RootRecord(z={self.z:.12g}, multiplicity={self.multiplicity}, residual={self.residual:.2e}, '
                f'converged={self.converged}, source={self.source})')
