"""
Coefficient vectors of a fixed degree are ranked lexicographically by digit index, a_0 most
significant. The rank is the ``source_index`` stored with every root, so a chunk of the stream is a
range of ranks and all vectors sharing a prefix form one contiguous range.
"""

from typing import Iterator, List

import numpy as np

from rootsets.digitset import DigitSet
from rootsets.exceptions import PreconditionError, EnumerationOverflowError
from rootsets.rootsolver import UnimodularPolynomial

SYMMETRY_MODES = ('none', 'phase-orbit')
MAX_INDEX = np.iinfo(np.int64).max
DEFAULT_CHUNK_SIZE = 2 ** 14


def check_symmetry(symmetry):
    if symmetry not in SYMMETRY_MODES:
        raise PreconditionError(f'Unknown symmetry mode {symmetry!r}. Choose from {SYMMETRY_MODES}')


def count_for_degree(base, degree):
    """ base^(degree + 1), refusing counts whose ranks do not fit int64. """
    count = base ** (degree + 1)
    if count - 1 > MAX_INDEX:
        raise EnumerationOverflowError(f'{base}^{degree + 1} coefficient vectors do not fit a 64-bit index')
    return count


def orbit_permutations(digit_set: DigitSet) -> List[np.ndarray]:
    """
    Index maps of the nontrivial global rotations u^t, t = 1..s-1, with u = e^{2 pi i / s} and s the
    rotation order of H. Empty when H has no rotational symmetry.
    """
    s = digit_set.rotation_order()
    if s == 1:
        return []
    perm = digit_set.rotation_permutation(s)
    permutations = [perm]
    for _ in range(s - 2):
        permutations.append(perm[permutations[-1]])
    return permutations


def orbit_size(digit_set: DigitSet, symmetry):
    check_symmetry(symmetry)
    return digit_set.rotation_order() if symmetry == 'phase-orbit' else 1


def polynomial_count(digit_set: DigitSet, max_degree, symmetry='none', min_degree=1):
    """
    Number of polynomials streamed for degrees min_degree..max_degree. Every phase orbit has exactly
    s members (a nontrivial rotation moves every digit), so the reduced count is exact.
    """
    size = orbit_size(digit_set, symmetry)
    return sum(count_for_degree(len(digit_set), d) // size for d in range(min_degree, max_degree + 1))


def rank_weights(base, degree) -> np.ndarray:
    return base ** np.arange(degree, -1, -1, dtype=np.int64)


def decode_range(base, degree, start, stop) -> np.ndarray:
    """ Digit index vectors of ranks [start, stop), one per row. """
    ranks = np.arange(start, stop, dtype=np.int64)
    return (ranks[:, None] // rank_weights(base, degree)[None, :]) % base


def canonical_mask(indices: np.ndarray, ranks: np.ndarray, permutations, base) -> np.ndarray:
    """ True for rows whose rank is the smallest in their phase orbit. """
    keep = np.ones(len(ranks), dtype=np.bool_)
    if len(ranks) == 0:
        return keep
    weights = rank_weights(base, indices.shape[1] - 1)
    for perm in permutations:
        keep &= ranks <= perm[indices] @ weights
    return keep


def iterate_chunks(digit_set: DigitSet, degree, symmetry='none', chunk_size=DEFAULT_CHUNK_SIZE, start=0,
                   stop=None, permutations=None):
    """
    Stream (ranks, digit index matrix) chunks over ranks [start, stop) of the given degree, keeping
    only orbit representatives under phase-orbit symmetry.
    """
    check_symmetry(symmetry)
    base = len(digit_set)
    if stop is None:
        stop = count_for_degree(base, degree)
    if symmetry == 'phase-orbit' and permutations is None:
        permutations = orbit_permutations(digit_set)
    for chunk_start in range(start, stop, chunk_size):
        chunk_stop = min(chunk_start + chunk_size, stop)
        indices = decode_range(base, degree, chunk_start, chunk_stop)
        ranks = np.arange(chunk_start, chunk_stop, dtype=np.int64)
        if symmetry == 'phase-orbit' and permutations:
            keep = canonical_mask(indices, ranks, permutations, base)
            indices, ranks = indices[keep], ranks[keep]
        yield ranks, indices


def iterate_polynomials(digit_set: DigitSet, degree, symmetry='none') -> Iterator[UnimodularPolynomial]:
    """
    Every polynomial of exact degree ``degree`` with coefficients in H, lexicographic by digit index.
    With ``symmetry='phase-orbit'`` only the smallest vector of each orbit of global rotation is
    produced; the zero set of u P equals that of P.
    """
    if degree < 1:
        raise PreconditionError(f'Enumeration needs degree >= 1. Got {degree}')
    for _, indices in iterate_chunks(digit_set, degree, symmetry):
        for row in indices:
            yield UnimodularPolynomial(digit_set, row)


def plan_ranges(base, degree, num_workers, chunk_size=DEFAULT_CHUNK_SIZE):
    """
    Split the ranks of one degree into tasks: first by a prefix of length p, the smallest with
    base^p >= 8 * num_workers, then into pieces of at most chunk_size ranks.
    """
    total = count_for_degree(base, degree)
    prefix = 1
    while base ** prefix < 8 * num_workers and prefix < degree + 1:
        prefix += 1
    block = base ** (degree + 1 - prefix)
    tasks = []
    for block_start in range(0, total, block):
        block_stop = min(block_start + block, total)
        for start in range(block_start, block_stop, chunk_size):
            tasks.append((start, min(start + chunk_size, block_stop)))
    return tasks
