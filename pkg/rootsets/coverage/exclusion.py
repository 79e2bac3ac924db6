"""
Exclusion certificates for points inside the unit disk.

For |z| < 1 and any power series with coefficients in H,

    |sum_n a_n z^n| >= |a_0 + a_1 z| - |z|^2 / (1 - |z|),

and the same bound holds for every polynomial. A positive margin

    min over (a_i, a_j) in H^2 of |a_i + a_j z| - |z|^2 / (1 - |z|)

therefore proves that z is neither a power series zero nor a polynomial root. The pair term is
1-Lipschitz in z, so the margin stays positive on a ball around z whose radius is found by a
one-dimensional root solve.
"""

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from rootsets.digitset import DigitSet
from rootsets.exceptions import PreconditionError

MODULUS_CAP = 0.99
DELTA_SHRINK = 1e-9
GOLDEN_MAXITER = 64


def tail_majorant(t):
    """ t^2 / (1 - t), the bound on |sum_{n >= 2} a_n z^n| at |z| = t. """
    t = np.asarray(t, dtype=np.float64)
    return t * t / (1. - t)


def _check_inside(points):
    if np.any(np.abs(points) >= 1.):
        raise PreconditionError(f'Exclusion needs |z| < 1. Got max |z| = {np.max(np.abs(points))}')


def min_pair_distance(points, digit_set: DigitSet) -> np.ndarray:
    """
    min over (a_i, a_j) of |a_i + a_j z| for every point. For fixed a_j this is the distance
    from -a_j z to its nearest digit, found by angle lookup.
    """
    points = np.asarray(points, dtype=np.complex128)
    shape = points.shape
    w = -points.reshape(-1, 1) * digit_set.digits[None, :]
    distances = digit_set.nearest_digit_distance(w.ravel()).reshape(w.shape)
    return np.min(distances, axis=1).reshape(shape)


def exclusion_margins(points, digit_set: DigitSet) -> np.ndarray:
    """ Exclusion margin at every point; all points need |z| < 1. """
    points = np.asarray(points, dtype=np.complex128)
    _check_inside(points)
    return min_pair_distance(points, digit_set) - tail_majorant(np.abs(points))


def exclusion_test(z, digit_set: DigitSet) -> float:
    """
    The exclusion margin at z. A positive value certifies that no power series or polynomial
    with coefficients in H vanishes at z.

    Args:
        z: a point with |z| < 1
        digit_set: the digits H

    Returns: min over digit pairs of |a_i + a_j z| minus |z|^2 / (1 - |z|)
    """
    return float(exclusion_margins(np.array([complex(z)]), digit_set)[0])


class ExclusionCertificate(object):
    """ Every z' with |z' - z| < delta has a positive exclusion margin. """

    def __init__(self, z, margin, delta, digit_set: DigitSet):
        assert margin > 0. and delta > 0. and abs(z) < 1.
        self.z = complex(z)
        self.margin = float(margin)
        self.delta = float(delta)
        self.digit_set = digit_set

    def __repr__(self):
        return f'ExclusionCertificate(z={self.z:.12g}, margin={self.margin:.6g}, delta={self.delta:.6g})'

    def to_record(self):
        return dict(
            z_re=self.z.real,
            z_im=self.z.imag,
            modulus=abs(self.z),
            digit_set=self.digit_set.spec,
            margin=self.margin,
            delta=self.delta,
        )


def exclusion_ball(z, digit_set: DigitSet):
    """
    Certificate of a ball of positive margin around z, or None when the margin at z is not
    positive.

    On B(z, delta) the pair term drops by at most delta and the tail majorant is at most
    g(|z| + delta), so delta solves min_pair(z) - delta - g(|z| + delta) = 0. The radius is capped
    so that |z| + delta <= 0.99 and shrunk by a relative 1e-9 to keep the margin strictly positive.
    """
    z = complex(z)
    margin = exclusion_test(z, digit_set)
    if margin <= 0.:
        return None
    pair = float(min_pair_distance(np.array([z]), digit_set)[0])
    modulus = abs(z)
    cap = MODULUS_CAP - modulus
    if cap <= 0.:
        return None

    def budget(delta):
        return pair - delta - float(tail_majorant(modulus + delta))

    if budget(cap) >= 0.:
        delta = cap
    else:
        delta = brentq(budget, 0., cap, xtol=1e-15, rtol=1e-15)
    delta *= 1. - DELTA_SHRINK
    if delta <= 0.:
        return None
    return ExclusionCertificate(z=z, margin=margin, delta=delta, digit_set=digit_set)


def scan_ball(cert: ExclusionCertificate, points_per_axis=100):
    """ Smallest margin on a polar grid of points_per_axis^2 points over the closed ball. """
    radii = np.linspace(0., cert.delta, points_per_axis)
    arguments = 2 * np.pi * np.arange(points_per_axis) / points_per_axis
    points = cert.z + (radii[:, None] * np.exp(1j * arguments)[None, :]).ravel()
    return float(np.min(exclusion_margins(points, cert.digit_set)))


def _check_circle(modulus, samples):
    if not (0. < modulus < 1.):
        raise PreconditionError(f'hole_search needs 0 < modulus < 1. Got {modulus}')
    if samples < 8:
        raise PreconditionError(f'hole_search needs at least 8 samples. Got {samples}')


def hole_profile(digit_set: DigitSet, modulus, samples):
    """
    Margins at ``samples`` equally spaced arguments on the circle |z| = modulus.

    Returns: (arguments, margins)
    """
    _check_circle(modulus, samples)
    arguments = 2 * np.pi * np.arange(samples) / samples
    margins = exclusion_margins(modulus * np.exp(1j * arguments), digit_set)
    return arguments, margins


def hole_search(digit_set: DigitSet, modulus, samples=360):
    """
    Best exclusion certificate on the circle |z| = modulus.

    The coarse sweep picks the sample with the largest margin, which golden-section search on the
    argument then refines within the neighbouring samples. Returns None when every sampled margin
    is <= 0.
    """
    arguments, margins = hole_profile(digit_set, modulus, samples)
    best = int(np.argmax(margins))
    if margins[best] <= 0.:
        return None
    step = 2 * np.pi / samples
    theta = arguments[best]

    def negative_margin(t):
        return -exclusion_test(modulus * np.exp(1j * t), digit_set)

    try:
        result = minimize_scalar(negative_margin, bracket=(theta - step, theta, theta + step), method='golden',
                                 options=dict(maxiter=GOLDEN_MAXITER))
        if -result.fun > margins[best]:
            theta = float(result.x)
    except (ValueError, RuntimeError):
        # flat neighbourhood, keep the coarse best
        pass
    return exclusion_ball(modulus * np.exp(1j * theta), digit_set)
