"""Small dense complex linear algebra: eigenvalues, entropies, Kronecker and partial traces.

Matrices are plain ``numpy`` arrays of dtype complex128. Hermitian eigenvalues
come from a cyclic Jacobi solver written out in scalar Python, which is both
dependency-free and faster than vectorised calls for the 2x2 to 8x8 matrices
used throughout the package.
"""

from __future__ import annotations

import cmath
import math
from typing import Literal, Sequence

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    DimensionTooLargeError,
    InvalidSpectrumError,
    NonHermitianError,
)

MAX_DIM = 8
JACOBI_OFFDIAG_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100

#: eigenvalues in [-CLAMP_TOL, 0) are treated as exact zeros
CLAMP_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (X, Y, Z)


def as_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-d matrix, got shape {arr.shape}")
    return arr


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation ``|M_ij - conj(M_ji)|``."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return math.inf
    return float(np.max(np.abs(m - dagger(m)))) if m.size else 0.0


def hermitian_eigenvalues(m, tol: float = 1e-12) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, in descending order.

    Uses cyclic Jacobi rotations. Each rotation first removes the phase of the
    pivot entry and then applies a real Givens rotation, so the iteration runs
    on complex Hermitian input directly. Sweeps stop once the off-diagonal
    Frobenius norm drops below ``1e-13`` (relative to the matrix norm when that
    exceeds one).

    Raises
    ------
    NonHermitianError
        If the matrix is not square or its asymmetry exceeds ``tol``.
    DimensionTooLargeError
        For dimensions above 8.
    """
    m = as_matrix(m)
    n = m.shape[0]
    if m.shape[1] != n:
        raise NonHermitianError(f"matrix is not square: {m.shape}")
    if n > MAX_DIM:
        raise DimensionTooLargeError(f"dimension {n} exceeds {MAX_DIM}")
    if n == 0:
        return np.zeros(0)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NonHermitianError(f"asymmetry {defect:.3e} exceeds tolerance {tol:.1e}")

    # symmetrise so round-off in the lower triangle cannot leak in
    a = [[0.5 * (complex(m[i, j]) + complex(m[j, i]).conjugate()) for j in range(n)] for i in range(n)]
    scale = max(1.0, math.sqrt(sum(abs(v) ** 2 for row in a for v in row)))
    target = JACOBI_OFFDIAG_TOL * scale

    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j))
        if off < target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, n, p, q)
    else:
        off = math.sqrt(sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j))
        if off >= target:
            raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps (off={off:.3e})")

    return np.array(sorted((a[i][i].real for i in range(n)), reverse=True))


def _rotate(a: list[list[complex]], n: int, p: int, q: int) -> None:
    beta = a[p][q]
    mag = abs(beta)
    if mag == 0.0:
        return
    phase = cmath.exp(-1j * cmath.phase(beta))
    alpha, gamma = a[p][p].real, a[q][q].real
    theta = 0.5 * math.atan2(2.0 * mag, gamma - alpha)
    c, s = math.cos(theta), math.sin(theta)
    # U = diag(1, e^{-i phi}) @ [[c, s], [-s, c]] restricted to the (p, q) plane
    u_pp, u_pq = c, s
    u_qp, u_qq = -s * phase, c * phase
    for k in range(n):
        akp, akq = a[k][p], a[k][q]
        a[k][p] = akp * u_pp + akq * u_qp
        a[k][q] = akp * u_pq + akq * u_qq
    cu_pp, cu_pq = u_pp, u_pq
    cu_qp, cu_qq = u_qp.conjugate(), u_qq.conjugate()
    for k in range(n):
        apk, aqk = a[p][k], a[q][k]
        a[p][k] = cu_pp * apk + cu_qp * aqk
        a[q][k] = cu_pq * apk + cu_qq * aqk
    a[p][q] = a[q][p] = 0j
    a[p][p] = complex(a[p][p].real, 0.0)
    a[q][q] = complex(a[q][q].real, 0.0)


def _clean_spectrum(spectrum: Sequence[float], sum_tol: float, range_tol: float) -> np.ndarray:
    vals = np.asarray(spectrum, dtype=float).ravel()
    if vals.size == 0:
        raise InvalidSpectrumError("empty spectrum")
    if np.any(vals < -range_tol) or np.any(vals > 1 + range_tol):
        raise InvalidSpectrumError(f"eigenvalues outside [0, 1]: min={vals.min():.3e}, max={vals.max():.3e}")
    total = float(vals.sum())
    if abs(total - 1.0) > sum_tol:
        raise InvalidSpectrumError(f"eigenvalues sum to {total!r}, not 1")
    return np.clip(vals, 0.0, None)


def von_neumann_entropy(spectrum: Sequence[float], sum_tol: float = 1e-9, range_tol: float = 1e-10) -> float:
    """Shannon entropy in bits of an eigenvalue list, with ``0 log 0 = 0``.

    Small negative eigenvalues (round-off) are clamped to zero.
    """
    vals = _clean_spectrum(spectrum, sum_tol, range_tol)
    nz = vals[vals > 0.0]
    return float(max(0.0, -np.sum(nz * np.log2(nz))))


def entropy_real_part(spectrum: Sequence[float]) -> float:
    """``Re(-sum lambda log2 lambda)`` over a real spectrum that may have negative entries.

    Taking the principal complex logarithm, a negative eigenvalue contributes
    ``-lambda log2|lambda|``. Only used for indefinite matrices built from
    literal printed matrix entries; physical states go through
    :func:`von_neumann_entropy`.
    """
    vals = np.asarray(spectrum, dtype=float).ravel()
    nz = vals[np.abs(vals) > 0.0]
    return float(-np.sum(nz * np.log2(np.abs(nz))))


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def matrix_entropy(m, tol: float = 1e-10) -> float:
    """von Neumann entropy of a density matrix given as an array."""
    return von_neumann_entropy(hermitian_eigenvalues(m, tol=tol))


def tensor_product(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, dim_first: int, dim_second: int, keep: Literal["first", "second"]) -> np.ndarray:
    """Trace out one factor of a bipartite operator on ``C^dim_first (x) C^dim_second``."""
    m = as_matrix(m)
    d = dim_first * dim_second
    if m.shape != (d, d):
        raise DimensionMismatchError(f"matrix shape {m.shape} does not match {dim_first}x{dim_second} split")
    t = m.reshape(dim_first, dim_second, dim_first, dim_second)
    if keep == "first":
        return np.einsum("ikjk->ij", t)
    if keep == "second":
        return np.einsum("kikj->ij", t)
    raise ValueError(f"keep must be 'first' or 'second', got {keep!r}")
