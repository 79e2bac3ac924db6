import numpy as np

from rootsets.exceptions import PreconditionError


class AnnulusGrid(object):
    """
    Cartesian squares [i eps, (i+1) eps] x [j eps, (j+1) eps] whose center has modulus in
    [r_inner, r_outer]. Cells are ordered by row j, then column i.
    """

    def __init__(self, r_inner, r_outer, cell_size):
        if not (0. < r_inner < r_outer):
            raise PreconditionError(f'AnnulusGrid needs 0 < r_inner < r_outer. Got {r_inner}, {r_outer}')
        if not cell_size > 0.:
            raise PreconditionError(f'AnnulusGrid needs cell_size > 0. Got {cell_size}')
        self.r_inner = float(r_inner)
        self.r_outer = float(r_outer)
        self.cell_size = float(cell_size)

        bound = int(np.ceil(self.r_outer / self.cell_size)) + 1
        axis = np.arange(-bound, bound, dtype=np.int64)
        jj, ii = np.meshgrid(axis, axis, indexing='ij')
        ii, jj = ii.ravel(), jj.ravel()
        centers = (ii + 0.5) * self.cell_size + 1j * (jj + 0.5) * self.cell_size
        modulus = np.abs(centers)
        inside = np.logical_and(modulus >= self.r_inner, modulus <= self.r_outer)
        self.columns = ii[inside]
        self.rows = jj[inside]
        self.centers = centers[inside]
        self._bound = bound
        self._keys = self._key(self.columns, self.rows)
        assert np.all(np.diff(self._keys) > 0)

    def _key(self, i, j):
        width = 2 * self._bound
        return (j + self._bound) * width + (i + self._bound)

    def __len__(self):
        return self.centers.shape[0]

    def __repr__(self):
        return f'AnnulusGrid(r_inner={self.r_inner}, r_outer={self.r_outer}, cell_size={self.cell_size}, ' \
               f'cells={len(self)})'

    def hit_flags(self, points) -> np.ndarray:
        """
        True for every cell whose closed square contains at least one point. A point on a cell
        boundary hits all the cells sharing that boundary.
        """
        flags = np.zeros(len(self), dtype=np.bool_)
        points = np.asarray(points, dtype=np.complex128).ravel()
        if len(points) == 0 or len(self) == 0:
            return flags
        u = points.real / self.cell_size
        v = points.imag / self.cell_size
        i_lo, i_hi = np.ceil(u).astype(np.int64) - 1, np.floor(u).astype(np.int64)
        j_lo, j_hi = np.ceil(v).astype(np.int64) - 1, np.floor(v).astype(np.int64)
        for i in (i_lo, i_hi):
            for j in (j_lo, j_hi):
                valid = np.logical_and(np.abs(i) < self._bound, np.abs(j) < self._bound)
                keys = self._key(i[valid], j[valid])
                pos = np.searchsorted(self._keys, keys)
                pos = np.minimum(pos, len(self) - 1)
                found = self._keys[pos] == keys
                flags[pos[found]] = True
        return flags
