"""Eigenvalues of small dense symmetric matrices.

Closed forms for the 2x2 and 3x3 cases, cyclic Jacobi rotations for anything
larger and as the fallback when the 3x3 spectrum is nearly degenerate.
"""

from __future__ import annotations

import math

import numpy as np

JACOBI_SWEEPS = 50
# Below this distance of det(B)/2 from +-1 two eigenvalues nearly coincide and
# the trigonometric form loses about half the significant digits.
_NEAR_DOUBLE = 1e-6


def eigvals_sym2(a: float, b: float, c: float) -> tuple[float, float]:
    """Eigenvalues of [[a, b], [b, c]] in ascending order."""
    mean = 0.5 * (a + c)
    radius = math.hypot(0.5 * (a - c), b)
    big = mean + math.copysign(radius, mean)
    if big == 0.0:
        return (0.0, 0.0)
    small = (a * c - b * b) / big
    return (min(small, big), max(small, big))


def eigvals_sym3(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a symmetric 3x3 matrix in ascending order."""
    m = np.asarray(m, dtype=float)
    p1 = m[0, 1] ** 2 + m[0, 2] ** 2 + m[1, 2] ** 2
    if p1 == 0.0:
        return np.sort(np.diag(m).copy())

    q = np.trace(m) / 3.0
    p2 = (m[0, 0] - q) ** 2 + (m[1, 1] - q) ** 2 + (m[2, 2] - q) ** 2 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    b = (m - q * np.eye(3)) / p
    r = float(np.linalg.det(b)) / 2.0

    if 1.0 - abs(r) < _NEAR_DOUBLE:
        return jacobi_eigvals(m)

    phi = math.acos(r) / 3.0
    eig1 = q + 2.0 * p * math.cos(phi)
    eig3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    eig2 = 3.0 * q - eig1 - eig3
    return np.sort(np.array([eig1, eig2, eig3]))


def jacobi_eigvals(m: np.ndarray, sweeps: int = JACOBI_SWEEPS) -> np.ndarray:
    """Cyclic Jacobi eigenvalue iteration for a dense symmetric matrix."""
    a = np.array(m, dtype=float, copy=True)
    n = a.shape[0]
    if n == 1:
        return a.reshape(1)

    for _ in range(sweeps):
        off = float(np.sum(a**2) - np.sum(np.diag(a) ** 2))
        if off <= (np.finfo(float).eps * np.linalg.norm(a)) ** 2:
            break
        for i in range(n - 1):
            for j in range(i + 1, n):
                if a[i, j] == 0.0:
                    continue
                theta = (a[j, j] - a[i, i]) / (2.0 * a[i, j])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n)
                rot[i, i] = c
                rot[j, j] = c
                rot[i, j] = s
                rot[j, i] = -s
                a = rot.T @ a @ rot
                a[i, j] = 0.0
                a[j, i] = 0.0

    return np.sort(np.diag(a).copy())
