"""
Numba kernels for solving many polynomials of one degree at once. Coefficients are stored low
degree first, one polynomial per row. Rows are processed independently and in order, so results do
not depend on how a batch is split.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def eval_with_derivative(c, x):
    """ Horner evaluation of P(x) and P'(x), coefficients low degree first. """
    n = c.shape[0] - 1
    p = c[n]
    dp = 0j
    for k in range(n - 1, -1, -1):
        dp = dp * x + p
        p = p * x + c[k]
    return p, dp


@njit(cache=True)
def aberth(c, x, tol, max_sweeps, stall_tol):
    """
    Aberth-Ehrlich simultaneous iteration, updating the approximations ``x`` in place
    (Gauss-Seidel order). Converged when no root moves by tol or more in one sweep, or when the
    largest move is below stall_tol and no longer shrinks (the rounding floor of the evaluation).

    Returns: (sweeps used, converged)
    """
    n = x.shape[0]
    previous_move = np.inf
    for sweep in range(max_sweeps):
        max_move = 0.
        for i in range(n):
            p, dp = eval_with_derivative(c, x[i])
            if p == 0:
                continue
            s = 0j
            for j in range(n):
                if j != i:
                    diff = x[i] - x[j]
                    if diff != 0:
                        s += 1. / diff
            if dp == 0:
                # stationary point of P, nudge off it
                delta = 1e-7 * (1. + 1j)
            else:
                w = p / dp
                denom = 1. - w * s
                delta = w / denom if denom != 0 else w
            x[i] -= delta
            move = abs(delta)
            if move > max_move:
                max_move = move
        if max_move < tol or (max_move < stall_tol and max_move >= previous_move):
            return sweep + 1, True
        previous_move = max_move
    return max_sweeps, False


@njit(cache=True)
def newton_polish(c, x, iterations):
    """ Guarded Newton steps on each approximation: a step is kept only if |P| does not grow. """
    for i in range(x.shape[0]):
        for _ in range(iterations):
            p, dp = eval_with_derivative(c, x[i])
            if p == 0 or dp == 0:
                break
            candidate = x[i] - p / dp
            q, _ = eval_with_derivative(c, candidate)
            if abs(q) > abs(p):
                break
            x[i] = candidate


@njit(cache=True)
def solve_rows(coeffs, init, tol, max_sweeps, stall_tol):
    """ Aberth on every row of ``coeffs`` from the same initial guesses. """
    num_rows = coeffs.shape[0]
    n = coeffs.shape[1] - 1
    roots = np.empty((num_rows, n), dtype=np.complex128)
    converged = np.empty(num_rows, dtype=np.bool_)
    for b in range(num_rows):
        x = init.copy()
        _, ok = aberth(coeffs[b], x, tol, max_sweeps, stall_tol)
        roots[b] = x
        converged[b] = ok
    return roots, converged


@njit(cache=True)
def scaled_residuals(coeffs, roots):
    """ |P(z)| / sum_n |z|^n for every root of every row. """
    num_rows, n = roots.shape
    out = np.empty((num_rows, n), dtype=np.float64)
    for b in range(num_rows):
        for i in range(n):
            z = roots[b, i]
            p, _ = eval_with_derivative(coeffs[b], z)
            r = abs(z)
            scale = 0.
            power = 1.
            for k in range(n + 1):
                scale += power
                power *= r
            out[b, i] = abs(p) / scale
    return out


@njit(cache=True)
def min_root_separation(roots):
    """ Smallest distance between two roots of the same row (inf for degree one). """
    num_rows, n = roots.shape
    out = np.full(num_rows, np.inf)
    for b in range(num_rows):
        for i in range(n):
            for j in range(i + 1, n):
                d = abs(roots[b, i] - roots[b, j])
                if d < out[b]:
                    out[b] = d
    return out
