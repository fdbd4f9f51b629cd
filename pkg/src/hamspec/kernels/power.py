"""Dominant eigenpair of a small dense symmetric matrix.

power_dominant(M, shift, x0, tol, maxit) -> (value, residual, iterations, x)

Power iteration on ``B = M + shift*I``, where ``shift`` is large enough that
``B`` is positive semidefinite, so the dominant eigenvalue of ``B`` belongs to
the largest eigenvalue of ``M``.  Every ``SQUARE_EVERY`` steps the operator is
replaced by its normalised square, which doubles the effective exponent and
turns slow linear convergence into a few dozen matrix products even for tiny
spectral gaps.  The estimate is the Rayleigh quotient of ``M`` and the stop
test is ``|Mx - theta x| <= tol * max(1, |theta|)``.
"""
from __future__ import annotations

import numpy as np

from .._accel import njit, pick

SQUARE_EVERY = 8
MAX_SQUARINGS = 40


@njit(cache=True)
def _matvec(M, x):
    n = M.shape[0]
    y = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += M[i, j] * x[j]
        y[i] = acc
    return y


@njit(cache=True)
def _square_normalised(B):
    n = B.shape[0]
    C = np.zeros((n, n))
    for i in range(n):
        for k in range(n):
            b = B[i, k]
            if b != 0.0:
                for j in range(n):
                    C[i, j] += b * B[k, j]
    top = 0.0
    for i in range(n):
        for j in range(n):
            a = abs(C[i, j])
            if a > top:
                top = a
    if top > 0.0:
        for i in range(n):
            for j in range(n):
                C[i, j] /= top
    return C


@njit(cache=True)
def _power_dominant_numba(M, shift, x0, tol, maxit):
    n = M.shape[0]
    B = M.copy()
    for i in range(n):
        B[i, i] += shift
    top = 0.0
    for i in range(n):
        for j in range(n):
            if abs(B[i, j]) > top:
                top = abs(B[i, j])
    if top > 0.0:
        B /= top
    x = x0 / np.sqrt(np.sum(x0 * x0))
    theta = 0.0
    res = np.inf
    squarings = 0
    for it in range(1, maxit + 1):
        y = _matvec(B, x)
        nrm = np.sqrt(np.sum(y * y))
        if nrm == 0.0:
            # x lies in the kernel of B: it is an eigenvector of M for -shift
            y = x.copy()
            nrm = 1.0
        x = y / nrm
        mx = _matvec(M, x)
        theta = np.sum(x * mx)
        r = mx - theta * x
        res = np.sqrt(np.sum(r * r))
        if res <= tol * max(1.0, abs(theta)):
            return theta, res, it, x
        if it % SQUARE_EVERY == 0 and squarings < MAX_SQUARINGS:
            B = _square_normalised(B)
            squarings += 1
    return theta, res, -maxit, x


def _power_dominant_numpy(M, shift, x0, tol, maxit):
    M = np.asarray(M, dtype=np.float64)
    n = M.shape[0]
    B = M + shift * np.eye(n)
    top = np.abs(B).max() if n else 0.0
    if top > 0.0:
        B = B / top
    x = x0 / np.sqrt(np.sum(x0 * x0))
    theta = 0.0
    res = np.inf
    squarings = 0
    for it in range(1, maxit + 1):
        y = B @ x
        nrm = np.sqrt(np.sum(y * y))
        if nrm == 0.0:
            y = x.copy()
            nrm = 1.0
        x = y / nrm
        mx = M @ x
        theta = float(np.sum(x * mx))
        r = mx - theta * x
        res = float(np.sqrt(np.sum(r * r)))
        if res <= tol * max(1.0, abs(theta)):
            return theta, res, it, x
        if it % SQUARE_EVERY == 0 and squarings < MAX_SQUARINGS:
            B = B @ B
            top = np.abs(B).max()
            if top > 0.0:
                B = B / top
            squarings += 1
    return theta, res, -maxit, x


power_dominant = pick(_power_dominant_numba, _power_dominant_numpy)
