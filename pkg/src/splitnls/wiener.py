"""Scalar Wiener-process sampling and the midpoint matrix-exponential
stochastic integral.

A single scalar Brownian motion drives every grid point (space-correlated or
space-white noise is out of scope).  Paths are sampled with the counter-based
Philox generator, with independent streams split by ``(seed, path_index)``,
so ensembles are reproducible and can be generated in any order or in
parallel.  Increments over a step of length dt are Normal(0, dt), i.e.
sqrt(dt)-scaled standard normals.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ParameterError
from .linalg import _as_square, expm

__all__ = [
    "WienerPath",
    "sample_path",
    "coarsen",
    "stratonovich_expm_integral",
    "path_to_csv",
]


@dataclass(frozen=True, eq=False)
class WienerPath:
    """Increments of a scalar Wiener process on a uniform time grid.

    Attributes:
        dt: time step between consecutive increments (> 0).
        increments: array of n increments dW_j; the path spans n*dt.
        seed: RNG seed the path was drawn from (bookkeeping only).
        path_index: stream index within an ensemble (bookkeeping only).
    """

    dt: float
    increments: np.ndarray = field(repr=False)
    seed: int = 0
    path_index: int = 0

    def __post_init__(self):
        inc = np.asarray(self.increments, dtype=float)
        object.__setattr__(self, "increments", inc)
        if inc.ndim != 1 or inc.size < 1:
            raise ParameterError("increments must be a non-empty 1-D array")
        if not np.all(np.isfinite(inc)):
            raise ParameterError("increments contain non-finite values")
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise ParameterError(f"dt must be positive, got {self.dt!r}")

    @property
    def n_steps(self) -> int:
        return int(self.increments.size)

    @property
    def t_end(self) -> float:
        return self.n_steps * self.dt

    def times(self) -> np.ndarray:
        """Node times 0, dt, ..., n*dt (length n+1)."""
        return self.dt * np.arange(self.n_steps + 1)

    def values(self) -> np.ndarray:
        """Brownian values W at the nodes, W(0) = 0 (length n+1)."""
        w = np.empty(self.n_steps + 1)
        w[0] = 0.0
        np.cumsum(self.increments, out=w[1:])
        return w

    def segment(self, start: int, stop: int) -> "WienerPath":
        """Sub-path holding increments [start, stop)."""
        if not (0 <= start < stop <= self.n_steps):
            raise ParameterError(f"invalid segment [{start}, {stop})")
        return WienerPath(self.dt, self.increments[start:stop],
                          seed=self.seed, path_index=self.path_index)


def sample_path(n_steps: int, dt: float, seed: int, path_index: int = 0) -> WienerPath:
    """Draw a Wiener path of ``n_steps`` Normal(0, dt) increments.

    The same ``(seed, path_index, n_steps, dt)`` always reproduces the same
    increments bit for bit (Philox keyed by ``SeedSequence((seed, path_index))``).
    Distinct path indices give independent streams for ensemble runs.
    """
    if not isinstance(n_steps, (int, np.integer)) or n_steps < 1:
        raise ParameterError(f"n_steps must be a positive integer, got {n_steps!r}")
    if not (np.isfinite(dt) and dt > 0):
        raise ParameterError(f"dt must be positive, got {dt!r}")
    ss = np.random.SeedSequence((int(seed) & 0xFFFFFFFFFFFFFFFF, int(path_index)))
    rng = np.random.Generator(np.random.Philox(ss))
    inc = np.sqrt(dt) * rng.standard_normal(int(n_steps))
    return WienerPath(float(dt), inc, seed=int(seed), path_index=int(path_index))


def coarsen(path: WienerPath, factor: int) -> WienerPath:
    """Merge groups of ``factor`` increments so all resolutions share one
    Brownian motion (the strong-error coupling used in convergence sweeps).

    The Brownian values at the surviving nodes are unchanged; dt is
    multiplied by ``factor``, which must divide the number of increments.
    """
    if not isinstance(factor, (int, np.integer)) or factor < 1:
        raise ParameterError(f"factor must be a positive integer, got {factor!r}")
    if path.n_steps % factor:
        raise ParameterError(
            f"factor {factor} does not divide {path.n_steps} increments")
    if factor == 1:
        return path
    merged = path.increments.reshape(-1, int(factor)).sum(axis=1)
    return WienerPath(path.dt * factor, merged,
                      seed=path.seed, path_index=path.path_index)


def stratonovich_expm_integral(a, path: WienerPath, t: float) -> np.ndarray:
    """Midpoint-rule matrix integral C1(t) = sum_j exp(A*(t_j+t_{j+1})/2) dW_j.

    This is the Stratonovich discretization of integral_0^t exp(A s) dW_s on
    the path's grid; the result is a matrix of the same shape as A and is
    linear in the increments.  ``t`` must equal the path's span.
    """
    a = _as_square(a, "A")
    if abs(t - path.t_end) > 1e-9 * max(1.0, abs(t)):
        raise ParameterError(
            f"t = {t!r} inconsistent with path span {path.t_end!r}")
    # exp(A*(t_j + t_{j+1})/2) = exp(A dt/2) * exp(A dt)^j: one midpoint
    # factor advanced by a full-step factor (exact, same generator).
    e_half = expm(a, path.dt / 2.0)
    e_full = expm(a, path.dt)
    total = np.zeros_like(a)
    cur = e_half
    last = path.n_steps - 1
    for j, dw in enumerate(path.increments):
        total += cur * dw
        if j != last:
            cur = cur @ e_full
    return total


def path_to_csv(path: WienerPath) -> str:
    """Render a path as CSV text with columns index, t, dW, W."""
    w = path.values()
    buf = io.StringIO()
    buf.write("index,t,dW,W\n")
    for j in range(path.n_steps):
        buf.write(f"{j},{float((j + 1) * path.dt)!r},"
                  f"{float(path.increments[j])!r},{float(w[j + 1])!r}\n")
    return buf.getvalue()
