"""
Binary PGM rasters of root clouds.

The square [-2.2, 2.2]^2 maps affinely onto width x height pixels, the top row holding the largest
imaginary parts. A pixel with c roots gets 255 log(1 + c) / log(1 + c_max), rounded half up.
"""

import numpy as np

from rootsets.np.functional import round_half_up

EXTENT = 2.2


def root_counts(points, width, height, extent=EXTENT) -> np.ndarray:
    """ (height, width) histogram of the points, row 0 at imaginary part +extent. """
    assert width > 0 and height > 0, f'Raster needs a positive size. Got {width}x{height}'
    points = np.asarray(points, dtype=np.complex128).ravel()
    inside = np.logical_and(np.abs(points.real) <= extent, np.abs(points.imag) <= extent)
    points = points[inside]
    columns = np.floor((points.real + extent) / (2 * extent) * width).astype(np.int64)
    rows = np.floor((extent - points.imag) / (2 * extent) * height).astype(np.int64)
    # the closing edges belong to the last column and row
    columns = np.minimum(columns, width - 1)
    rows = np.minimum(rows, height - 1)
    counts = np.bincount(rows * width + columns, minlength=width * height)
    return counts.reshape(height, width)


def log_scale(counts) -> np.ndarray:
    counts = np.asarray(counts, dtype=np.float64)
    c_max = counts.max() if counts.size > 0 else 0.
    if c_max <= 0:
        return np.zeros(counts.shape, dtype=np.uint8)
    return round_half_up(255. * np.log1p(counts) / np.log1p(c_max)).astype(np.uint8)


def rasterize(points, width, height) -> np.ndarray:
    return log_scale(root_counts(points, width, height))


def write_pgm(path, image: np.ndarray):
    image = np.ascontiguousarray(image, dtype=np.uint8)
    height, width = image.shape
    with open(path, 'wb') as f:
        f.write(b'P5\n%d %d\n255\n' % (width, height))
        f.write(image.tobytes())


def read_pgm(path) -> np.ndarray:
    with open(path, 'rb') as f:
        data = f.read()
    # header lines as written by write_pgm
    magic, size, maxval, pixels = data.split(b'\n', 3)
    width, height = size.split()
    assert magic == b'P5' and int(maxval) == 255, f'{path} is not an 8-bit binary PGM'
    return np.frombuffer(pixels, dtype=np.uint8).reshape(int(height), int(width))
