"""Periodic spatial grids, finite-difference operator blocks, and the
real lift (eta, xi) of a complex field u = eta + i*xi.

All operator blocks are MxM real matrices acting on grid samples; the
2Mx2M skew lifts used by the integrators are built with
:func:`splitnls.linalg.block_skew`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionError, ParameterError

__all__ = [
    "SpatialGrid",
    "HamiltonianState",
    "periodic_laplacian",
    "potential_values",
    "potential_diagonal",
    "noise_diagonal",
    "lift",
    "modulus",
]


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform periodic grid on [x_left, x_right) with M points.

    Point x_M is identified with x_0, so dx = (x_right - x_left) / M and no
    duplicated endpoint appears in operator matrices.
    """

    x_left: float
    x_right: float
    m: int

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or self.m < 3:
            raise ParameterError(f"grid needs at least 3 points, got {self.m!r}")
        if not (np.isfinite(self.x_left) and np.isfinite(self.x_right)
                and self.x_right > self.x_left):
            raise ParameterError(
                f"invalid interval [{self.x_left!r}, {self.x_right!r}]")

    @property
    def dx(self) -> float:
        return (self.x_right - self.x_left) / self.m

    def points(self) -> np.ndarray:
        """Grid nodes x_i = x_left + i*dx, i = 0..M-1."""
        return self.x_left + self.dx * np.arange(self.m)


@dataclass(frozen=True, eq=False)
class HamiltonianState:
    """Real lift of a complex field: eta = Re(u), xi = Im(u) on the grid."""

    eta: np.ndarray = field(repr=False)
    xi: np.ndarray = field(repr=False)

    def __post_init__(self):
        eta = np.asarray(self.eta, dtype=float)
        xi = np.asarray(self.xi, dtype=float)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "xi", xi)
        if eta.ndim != 1 or xi.ndim != 1 or eta.size != xi.size:
            raise DimensionError(
                f"eta/xi must be equal-length vectors, got {eta.shape} and {xi.shape}")
        if not (np.all(np.isfinite(eta)) and np.all(np.isfinite(xi))):
            raise ParameterError("state contains non-finite entries")

    @property
    def m(self) -> int:
        return int(self.eta.size)

    def as_vector(self) -> np.ndarray:
        """Stacked (eta, xi) vector of length 2M."""
        return np.concatenate([self.eta, self.xi])

    @staticmethod
    def from_vector(z: np.ndarray) -> "HamiltonianState":
        z = np.asarray(z, dtype=float)
        if z.ndim != 1 or z.size % 2:
            raise DimensionError(f"expected even-length vector, got shape {z.shape}")
        m = z.size // 2
        return HamiltonianState(z[:m].copy(), z[m:].copy())


def lift(u_real, u_imag) -> HamiltonianState:
    """Package real and imaginary samples of u into a state."""
    u_real = np.asarray(u_real, dtype=float)
    u_imag = np.asarray(u_imag, dtype=float)
    if u_real.shape != u_imag.shape:
        raise DimensionError(
            f"length mismatch: {u_real.shape} vs {u_imag.shape}")
    return HamiltonianState(u_real.copy(), u_imag.copy())


def modulus(state: HamiltonianState) -> np.ndarray:
    """Pointwise |u| = sqrt(eta^2 + xi^2)."""
    return np.hypot(state.eta, state.xi)


def periodic_laplacian(grid: SpatialGrid, coeff: float) -> np.ndarray:
    """Circulant second-difference matrix coeff/dx^2 * [1, -2, 1] with
    periodic wrap-around corner entries.  Symmetric; rows sum to zero."""
    if not np.isfinite(coeff):
        raise ParameterError("coeff must be finite")
    m = grid.m
    scale = coeff / grid.dx**2
    a = np.zeros((m, m))
    idx = np.arange(m)
    a[idx, idx] = -2.0 * scale
    a[idx, (idx + 1) % m] = scale
    a[idx, (idx - 1) % m] = scale
    return a


def potential_values(grid: SpatialGrid, v: Callable[[np.ndarray], np.ndarray] | None,
                     nl_coeff: float, sigma: float,
                     state: HamiltonianState) -> np.ndarray:
    """Diagonal entries V(x_i) + nl_coeff * (eta_i^2 + xi_i^2)^sigma.

    The nonlinearity is evaluated at the supplied frozen state (previous time
    level or previous iterate); no nonlinear solve ever happens downstream.
    """
    if state.m != grid.m:
        raise DimensionError(
            f"state has {state.m} points, grid has {grid.m}")
    if sigma < 0:
        raise ParameterError(f"sigma must be >= 0, got {sigma!r}")
    x = grid.points()
    base = np.zeros(grid.m) if v is None else np.asarray(v(x), dtype=float) + np.zeros(grid.m)
    if base.shape != (grid.m,):
        raise DimensionError("potential function must return one value per grid point")
    density = state.eta**2 + state.xi**2
    if nl_coeff == 0.0:
        return base
    if sigma == 1.0:
        return base + nl_coeff * density
    return base + nl_coeff * density**sigma


def potential_diagonal(grid: SpatialGrid, v, nl_coeff: float, sigma: float,
                       state: HamiltonianState) -> np.ndarray:
    """Diagonal MxM matrix of :func:`potential_values`."""
    return np.diag(potential_values(grid, v, nl_coeff, sigma, state))


def noise_diagonal(m: int, eps: float) -> np.ndarray:
    """Noise amplitude block eps * I_M (the Wiener increment is applied by
    the integrator, never baked into this matrix)."""
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ParameterError(f"m must be a positive integer, got {m!r}")
    if not np.isfinite(eps):
        raise ParameterError("eps must be finite")
    return eps * np.eye(int(m))
