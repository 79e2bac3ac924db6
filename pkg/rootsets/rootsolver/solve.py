"""
Roots of unimodular-coefficient polynomials.

All roots of such a polynomial lie in the open annulus 1/2 < |z| < 2, so Aberth iteration starts
from guesses on the unit circle. Rows that fail to converge in the sweep budget, or stall short of
the residual tolerance, fall back to companion-matrix eigenvalues followed by guarded Newton
polishing. Approximations of a multiple root come out as a tight cluster; a cluster whose
centroid, refined on the derivative of matching order, passes the derivative test is merged into
a single root carrying the cluster size as multiplicity.
"""

from typing import List

import numpy as np

from rootsets.exceptions import PreconditionError
from rootsets.np.functional import group_close_points
from . import kernels
from .polynomial import UnimodularPolynomial, RootRecord

MAX_SWEEPS = 200
SWEEP_TOL = 1e-14
STALL_TOL = 1e-10
RESIDUAL_TOL = 1e-10
DERIVATIVE_TOL = 1e-8
MERGE_TOL = 1e-9
CLUSTER_RADIUS = 1e-4
POLISH_ITERATIONS = 3
REFINE_ITERATIONS = 8
# rotates the starting circle off the real axis so real polynomials can reach real roots
INITIAL_ANGLE_OFFSET = 0.4


def initial_guesses(degree) -> np.ndarray:
    return np.exp(1j * (2 * np.pi * np.arange(degree) / degree + INITIAL_ANGLE_OFFSET))


def scaled_derivative(coefficients, z, order):
    """ |P^(order)(z)| / sum_{n >= order} n!/(n-order)! |z|^(n-order). """
    coefficients = np.asarray(coefficients, dtype=np.complex128)
    if order >= len(coefficients):
        return 0.
    derivative = np.polynomial.polynomial.polyder(coefficients, m=order)
    majorant = np.polynomial.polynomial.polyder(np.ones(len(coefficients)), m=order)
    value = np.polynomial.polynomial.polyval(complex(z), derivative)
    return float(abs(value) / np.polynomial.polynomial.polyval(abs(z), majorant))


def vanishing_order(coefficients, z, max_order, tol=DERIVATIVE_TOL):
    """ Largest m <= max_order with P', ..., P^(m-1) all below tol at z (at least 1). """
    m = 1
    for order in range(1, max_order):
        if scaled_derivative(coefficients, z, order) > tol:
            break
        m = order + 1
    return m


def residual(polynomial: UnimodularPolynomial, z) -> float:
    """ |P(z)| / sum_n |z|^n, the residual relative to the worst case of a unimodular evaluation. """
    return scaled_derivative(polynomial.coefficients, z, 0)


def multiplicity_estimate(polynomial: UnimodularPolynomial, z, max_order) -> int:
    """
    Order of the root z: the largest m <= max_order such that P, P', ..., P^(m-1) all have scaled
    magnitude at most 1e-8 at z.

    Args:
        polynomial: P
        z: a root of P to residual 1e-10
        max_order: upper bound on the returned order

    Returns: the multiplicity estimate, at least 1
    """
    if residual(polynomial, z) > RESIDUAL_TOL:
        raise PreconditionError(f'{z} is not a root of {polynomial} (residual {residual(polynomial, z):.2e})')
    return vanishing_order(polynomial.coefficients, z, max(int(max_order), 1))


def _is_multiple_root(coefficients, z, m):
    return scaled_derivative(coefficients, z, 0) <= RESIDUAL_TOL and vanishing_order(coefficients, z, m) >= m


def refine_multiple_root(coefficients, z, order, iterations=REFINE_ITERATIONS) -> complex:
    """
    Newton iteration on P^(order-1), which has a simple root where P has a root of the given
    order. A step is kept only if |P^(order-1)| decreases.
    """
    z = complex(z)
    if order < 2:
        return z
    deflated = np.polynomial.polynomial.polyder(np.asarray(coefficients, dtype=np.complex128), m=order - 1)
    slope = np.polynomial.polynomial.polyder(deflated)
    value = np.polynomial.polynomial.polyval(z, deflated)
    for _ in range(iterations):
        d = np.polynomial.polynomial.polyval(z, slope)
        if value == 0 or d == 0:
            break
        candidate = z - value / d
        candidate_value = np.polynomial.polynomial.polyval(candidate, deflated)
        if abs(candidate_value) >= abs(value):
            break
        z, value = complex(candidate), candidate_value
    return z


def _merge_clusters(coefficients, approx):
    """
    Group the approximations of one polynomial into roots with multiplicities. The m
    approximations of a root of order m scatter around it by about eps^(1/m), so a cluster that
    fails the derivative test at its centroid is re-tested after refinement on P^(m-1).

    Returns: (roots, multiplicities)
    """
    num_groups, labels = group_close_points(approx, CLUSTER_RADIUS)
    if num_groups == len(approx):
        return approx, np.ones(len(approx), dtype=np.int64)
    roots, multiplicities = [], []
    # groups in order of their first member
    _, first = np.unique(labels, return_index=True)
    for label in labels[np.sort(first)]:
        members = approx[labels == label]
        m = len(members)
        if m == 1:
            roots.append(members[0])
            multiplicities.append(1)
            continue
        centroid = complex(np.mean(members))
        if not _is_multiple_root(coefficients, centroid, m):
            centroid = refine_multiple_root(coefficients, centroid, m)
        if _is_multiple_root(coefficients, centroid, m):
            roots.append(centroid)
            multiplicities.append(m)
        else:
            # not a verified multiple root: only coincident approximations are merged
            num_sub, sub_labels = group_close_points(members, MERGE_TOL)
            _, sub_first = np.unique(sub_labels, return_index=True)
            for sub in sub_labels[np.sort(sub_first)]:
                sub_members = members[sub_labels == sub]
                roots.append(complex(np.mean(sub_members)))
                multiplicities.append(len(sub_members))
    return np.asarray(roots, dtype=np.complex128), np.asarray(multiplicities, dtype=np.int64)


def _merge_row(coefficients, approx):
    roots, multiplicities = _merge_clusters(coefficients, approx)
    residuals = np.array([scaled_derivative(coefficients, z, 0) for z in roots], dtype=np.float64)
    return roots, multiplicities, residuals


def finalize_row(coefficients, approx, converged):
    """
    Turn the Aberth approximations of one polynomial into distinct roots. Rows that did not
    converge, or whose roots miss the residual tolerance, are solved again from companion-matrix
    eigenvalues; the fallback result is kept unless its worst residual is larger.

    Returns: (roots, multiplicities, scaled residuals)
    """
    coefficients = np.ascontiguousarray(coefficients, dtype=np.complex128)
    approx = np.array(approx, dtype=np.complex128)
    if converged:
        result = _merge_row(coefficients, approx)
        if np.all(result[2] <= RESIDUAL_TOL):
            return result
    fallback = np.roots(coefficients[::-1]).astype(np.complex128)
    kernels.newton_polish(coefficients, fallback, POLISH_ITERATIONS)
    fallback_result = _merge_row(coefficients, fallback)
    if converged and np.max(fallback_result[2]) > np.max(result[2]):
        return result
    return fallback_result


def solve_batch(coefficients: np.ndarray):
    """
    Roots of every row of a (num_polynomials, degree + 1) coefficient matrix.

    Returns: (row, roots, multiplicities, residuals) flat arrays with one entry per distinct root;
        ``row`` is the row each root belongs to.
    """
    coefficients = np.ascontiguousarray(coefficients, dtype=np.complex128)
    num_rows, width = coefficients.shape
    degree = width - 1
    assert degree >= 1, 'Polynomials need degree >= 1'
    approx, converged = kernels.solve_rows(coefficients, initial_guesses(degree), SWEEP_TOL, MAX_SWEEPS,
                                          STALL_TOL)
    separation = kernels.min_root_separation(approx)
    approx_residuals = kernels.scaled_residuals(coefficients, approx)
    # stalled rows can report convergence short of the residual tolerance
    simple = converged & (separation >= CLUSTER_RADIUS) & np.all(approx_residuals <= RESIDUAL_TOL, axis=1)

    simple_rows = np.nonzero(simple)[0]
    rows = [np.repeat(simple_rows, degree)]
    roots = [approx[simple_rows].ravel()]
    multiplicities = [np.ones(len(simple_rows) * degree, dtype=np.int64)]
    residuals = [approx_residuals[simple_rows].ravel()]

    for b in np.nonzero(np.logical_not(simple))[0]:
        r, m, res = finalize_row(coefficients[b], approx[b], converged[b])
        rows.append(np.full(len(r), b, dtype=np.int64))
        roots.append(r)
        multiplicities.append(m)
        residuals.append(res)

    rows = np.concatenate(rows).astype(np.int64)
    order = np.argsort(rows, kind='stable')
    return (rows[order], np.concatenate(roots)[order], np.concatenate(multiplicities)[order],
            np.concatenate(residuals)[order])


def roots(polynomial: UnimodularPolynomial) -> List[RootRecord]:
    """
    All roots of P, each once with its multiplicity (multiplicities sum to deg P), sorted by real
    then imaginary part. A record is flagged ``converged=False`` when its scaled residual exceeds
    1e-10 after the fallback solver.
    """
    _, z, multiplicity, res = solve_batch(polynomial.coefficients[None, :])
    order = np.lexsort((z.imag, z.real))
    return [RootRecord(z=z[i], residual=res[i], multiplicity=multiplicity[i], source=polynomial,
                       converged=res[i] <= RESIDUAL_TOL)
            for i in order]
