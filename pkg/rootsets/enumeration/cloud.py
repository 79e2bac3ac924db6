from typing import Iterator

import numpy as np
import pandas as pd

from rootsets.digitset import DigitSet
from rootsets.np.functional import group_close_points
from rootsets.rootsolver import RootRecord, UnimodularPolynomial, MERGE_TOL
from .stream import check_symmetry, orbit_size

CLOUD_COLUMNS = ('re', 'im', 'modulus', 'multiplicity', 'degree', 'source_index')

_FIELDS = ('z', 'residual', 'multiplicity', 'degree', 'source_index', 'converged')
_DTYPES = dict(z=np.complex128, residual=np.float64, multiplicity=np.int64, degree=np.int64,
               source_index=np.int64, converged=np.bool_)


class RootCloud(object):
    """
    A multiset of roots with provenance, stored column-wise. Entry i is a root ``z[i]`` of the
    polynomial of degree ``degree[i]`` with lexicographic rank ``source_index[i]``. Records are
    materialized on demand by ``records()``.
    """

    def __init__(self, digit_set: DigitSet, max_degree, symmetry='none', **columns):
        check_symmetry(symmetry)
        self.digit_set = digit_set
        self.max_degree = int(max_degree)
        self.symmetry = symmetry
        for name in _FIELDS:
            value = columns.get(name)
            value = np.zeros(shape=[0], dtype=_DTYPES[name]) if value is None else \
                np.asarray(value, dtype=_DTYPES[name]).ravel()
            setattr(self, name, value)
        assert len(set(len(getattr(self, name)) for name in _FIELDS)) == 1, 'Columns must have equal length'

    @property
    def orbit_size(self):
        """ Polynomials represented by each streamed one (1 without symmetry reduction). """
        if self.digit_set is None:
            return 1
        return orbit_size(self.digit_set, self.symmetry)

    @property
    def num_unconverged(self):
        return int(np.sum(np.logical_not(self.converged)))

    def __len__(self):
        return self.z.shape[0]

    def __repr__(self):
        spec = self.digit_set.spec if self.digit_set is not None else None
        return f'RootCloud({spec}, max_degree={self.max_degree}, symmetry={self.symmetry}, size={len(self)})'

    def take(self, index, **kwargs):
        params = dict(digit_set=self.digit_set, max_degree=self.max_degree, symmetry=self.symmetry)
        params.update(kwargs)
        return RootCloud(**params, **{name: getattr(self, name)[index] for name in _FIELDS})

    def merge(self, other: 'RootCloud') -> 'RootCloud':
        """ Concatenation of two clouds over the same digit set. """
        assert self.symmetry == other.symmetry, 'Cannot merge clouds with different symmetry modes'
        assert self.digit_set is None or other.digit_set is None or self.digit_set == other.digit_set, \
            'Cannot merge clouds over different digit sets'
        return RootCloud(digit_set=self.digit_set if self.digit_set is not None else other.digit_set,
                         max_degree=max(self.max_degree, other.max_degree), symmetry=self.symmetry,
                         **{name: np.concatenate([getattr(self, name), getattr(other, name)]) for name in _FIELDS})

    def sorted(self) -> 'RootCloud':
        """ Canonical order: degree, real part, imaginary part, source index. """
        order = np.lexsort((self.source_index, self.z.imag, self.z.real, self.degree))
        return self.take(order)

    def subcloud(self, degree=None, max_degree=None) -> 'RootCloud':
        mask = np.ones(len(self), dtype=np.bool_)
        if degree is not None:
            mask &= self.degree == degree
        if max_degree is not None:
            mask &= self.degree <= max_degree
        kwargs = {}
        if degree is not None or max_degree is not None:
            kwargs['max_degree'] = degree if degree is not None else min(max_degree, self.max_degree)
        return self.take(mask, **kwargs)

    def dedup(self, tol=MERGE_TOL) -> 'RootCloud':
        """ One entry per cluster of roots within ``tol`` (the first in the current order). """
        if len(self) == 0:
            return self
        _, labels = group_close_points(self.z, tol)
        _, first = np.unique(labels, return_index=True)
        return self.take(np.sort(first))

    def records(self) -> Iterator[RootRecord]:
        for i in range(len(self)):
            source = None
            if self.digit_set is not None:
                source = UnimodularPolynomial.from_index(self.digit_set, int(self.degree[i]),
                                                         int(self.source_index[i]))
            yield RootRecord(z=self.z[i], residual=self.residual[i], multiplicity=self.multiplicity[i],
                             source=source, converged=self.converged[i])

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame({
            're': self.z.real,
            'im': self.z.imag,
            'modulus': np.abs(self.z),
            'multiplicity': self.multiplicity,
            'degree': self.degree,
            'source_index': self.source_index,
        }, columns=list(CLOUD_COLUMNS))


def write_cloud_csv(cloud: RootCloud, path):
    """ Write ``re,im,modulus,multiplicity,degree,source_index`` rows with 17 significant digits. """
    cloud.to_dataframe().to_csv(path, index=False, float_format='%.17g')


def read_cloud_csv(path, digit_set: DigitSet = None, symmetry='none') -> RootCloud:
    """
    Read a cloud written by ``write_cloud_csv``. Residuals are not part of the file and come back
    as NaN; every entry is marked converged.
    """
    df = pd.read_csv(path, float_precision='round_trip',
                     dtype=dict(re=np.float64, im=np.float64, modulus=np.float64, multiplicity=np.int64,
                                degree=np.int64, source_index=np.int64))
    missing = set(CLOUD_COLUMNS) - set(df.columns)
    if missing:
        raise ValueError(f'{path} is not a root cloud file, missing columns {sorted(missing)}')
    z = np.empty(len(df), dtype=np.complex128)
    z.real = df['re'].to_numpy()
    z.imag = df['im'].to_numpy()
    degree = df['degree'].to_numpy()
    return RootCloud(digit_set=digit_set, max_degree=int(degree.max()) if len(degree) > 0 else 0,
                     symmetry=symmetry, z=z, residual=np.full(len(z), np.nan),
                     multiplicity=df['multiplicity'].to_numpy(), degree=degree,
                     source_index=df['source_index'].to_numpy(), converged=np.ones(len(z), dtype=np.bool_))
