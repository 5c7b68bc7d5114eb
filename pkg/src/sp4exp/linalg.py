"""Fixed-size real matrix helpers for 2x2 and 4x4 phase-space work.

Matrices are plain ``numpy`` float arrays of shape (2, 2) or (4, 4), row-major,
with the phase-space ordering (q1, p1, q2, p2) used everywhere in the package.
"""

import numpy as np

Mat2 = np.ndarray
Mat4 = np.ndarray

_J = np.array([[0.0, 1.0], [-1.0, 0.0]])
_J.flags.writeable = False

_OMEGA = np.zeros((4, 4))
_OMEGA[:2, :2] = _J
_OMEGA[2:, 2:] = _J
_OMEGA.flags.writeable = False


def j2():
    """Single-mode symplectic form ``[[0, 1], [-1, 0]]``."""
    return _J.copy()


def omega4():
    """Two-mode symplectic form ``diag(J, J)``."""
    return _OMEGA.copy()


def as_mat(x, n):
    """Coerce ``x`` to a finite float array of shape (n, n).

    Raises
    ------
    ValueError
        If the shape is wrong or an entry is NaN/Inf.
    """
    arr = np.array(x, dtype=float)
    if arr.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def as_mat2(x):
    return as_mat(x, 2)


def as_mat4(x):
    return as_mat(x, 4)


def det2(m):
    """Determinant ``ad - bc`` of a 2x2 matrix."""
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def det4(m):
    """Determinant of a 4x4 matrix by cofactor expansion along the first row."""
    total = 0.0
    for j in range(4):
        minor = np.delete(np.delete(m, 0, axis=0), j, axis=1)
        total += (-1) ** j * m[0, j] * _det3(minor)
    return float(total)


def _det3(m):
    return (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def matmul(*ms):
    """Left-to-right product of one or more matrices."""
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


def add(x, y):
    return x + y


def scale(s, x):
    return s * x


def transpose(x):
    return x.T.copy()


def max_abs_diff(x, y):
    """Entrywise infinity norm of ``x - y``."""
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y))))


def inf_norm(x):
    """Induced infinity norm (maximum absolute row sum)."""
    return float(np.max(np.sum(np.abs(x), axis=1)))


def blocks(m):
    """Split a 4x4 matrix into its 2x2 blocks ``(A, B, C, D)``."""
    return m[:2, :2].copy(), m[:2, 2:].copy(), m[2:, :2].copy(), m[2:, 2:].copy()


def from_blocks(a, b, c, d):
    """Assemble ``[[A, B], [C, D]]`` from four 2x2 blocks."""
    return np.block([[a, b], [c, d]])


def symplectic_inverse(m):
    """Inverse of a symplectic matrix, ``-Omega M^T Omega``."""
    return -_OMEGA @ m.T @ _OMEGA
