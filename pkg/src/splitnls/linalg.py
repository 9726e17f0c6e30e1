"""Dense real linear algebra: matrix exponentials, iterated exponential
integrals, commutators, and the canonical symplectic structure matrix.

Everything here works on plain float64 ``numpy`` arrays.  Matrices are dense;
the cost of :func:`expm` and :func:`phi` is O(n^3) in the matrix dimension,
which is adequate for the grid sizes this package targets (a few thousand
rows at most).
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DimensionError, ParameterError, UnsupportedOrderError

__all__ = [
    "expm",
    "phi",
    "commutator",
    "block_skew",
    "block_skew_expm",
    "symplectic_j",
]


def _as_square(m, name: str = "matrix") -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ParameterError(f"{name} contains non-finite entries")
    return a


def expm(m, t: float = 1.0) -> np.ndarray:
    """Matrix exponential exp(t*M) of a square real matrix.

    Uses scaling-and-squaring with a Pade kernel (scipy's implementation);
    relative accuracy is near machine precision for the well-conditioned
    skew/Hamiltonian generators used throughout this package.
    """
    a = _as_square(m)
    if not np.isfinite(t):
        raise ParameterError("t must be finite")
    return scipy.linalg.expm(t * a)


def phi(m, t: float, k: int = 1) -> np.ndarray:
    """Iterated exponential integral phi_k(M t).

    phi_0(Mt) = exp(Mt) and phi_k(Mt) = integral_0^t phi_{k-1}(Ms) ds, so
    phi_k carries a factor t^k (phi_1(0) = t*I, phi_2(0) = t^2/2 * I, ...).

    Computed from the exponential of an augmented block matrix with identity
    blocks on the superdiagonal, which stays well defined when M is singular
    (the recursion phi_k = (phi_{k-1} - I t^{k-1}/(k-1)!) M^{-1} does not).
    Orders up to k = 4 are supported.
    """
    a = _as_square(m)
    if not np.isfinite(t):
        raise ParameterError("t must be finite")
    if not isinstance(k, (int, np.integer)) or k < 0:
        raise ParameterError(f"k must be a non-negative integer, got {k!r}")
    if k > 4:
        raise UnsupportedOrderError(f"phi order {k} not supported (max 4)")
    if k == 0:
        return expm(a, t)
    n = a.shape[0]
    aug = np.zeros(((k + 1) * n, (k + 1) * n))
    aug[:n, :n] = a
    for j in range(k):
        rows = slice(j * n, (j + 1) * n)
        cols = slice((j + 1) * n, (j + 2) * n)
        aug[rows, cols] = np.eye(n)
    return scipy.linalg.expm(t * aug)[:n, k * n:(k + 1) * n]


def commutator(a, b) -> np.ndarray:
    """Matrix commutator [A, B] = AB - BA."""
    a = _as_square(a, "A")
    b = _as_square(b, "B")
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def block_skew(a) -> np.ndarray:
    """Lift an MxM matrix A to the 2Mx2M block form ((0, A), (-A, 0)).

    For symmetric A the lift is skew-symmetric and Hamiltonian, so its
    exponential is orthogonal and symplectic.
    """
    a = _as_square(a, "A")
    n = a.shape[0]
    out = np.zeros((2 * n, 2 * n))
    out[:n, n:] = a
    out[n:, :n] = -a
    return out


def block_skew_expm(a, t: float) -> np.ndarray:
    """exp(t * block_skew(A)) for symmetric A, via eigendecomposition.

    Equivalent to ``expm(block_skew(a), t)`` but built from cos/sin of the
    spectrum of A, so the result is orthogonal to rounding accuracy
    independent of ||t*A||.
    """
    a = _as_square(a, "A")
    if not np.isfinite(t):
        raise ParameterError("t must be finite")
    scale = np.max(np.abs(a)) or 1.0
    if np.max(np.abs(a - a.T)) > 1e-10 * scale:
        raise ParameterError("block_skew_expm requires a symmetric block")
    w, v = np.linalg.eigh(a)
    c = (v * np.cos(t * w)) @ v.T
    s = (v * np.sin(t * w)) @ v.T
    n = a.shape[0]
    out = np.empty((2 * n, 2 * n))
    out[:n, :n] = c
    out[:n, n:] = s
    out[n:, :n] = -s
    out[n:, n:] = c
    return out


def symplectic_j(d: int) -> np.ndarray:
    """Canonical 2dx2d structure matrix J = ((0, -I_d), (I_d, 0))."""
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise DimensionError(f"d must be a positive integer, got {d!r}")
    out = np.zeros((2 * d, 2 * d))
    out[:d, d:] = -np.eye(d)
    out[d:, :d] = np.eye(d)
    return out
