"""Error norms, mass, flow-map Jacobians, symplecticity defect, empirical
convergence order, contraction constants, and the admissible-step bound.

The central quantity is the symplectic defect ||Jac^T J Jac - J|| of a
one-step map's Jacobian: it vanishes for exact linear Hamiltonian flows and
shrinks like a power of the step size for the iterative stochastic scheme.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .discretization import HamiltonianState, modulus
from .errors import DimensionError, ParameterError
from .linalg import _as_square, symplectic_j
from .problems import SplitProblem, build_operators

__all__ = [
    "ErrorReport",
    "SymplecticBudget",
    "error_report",
    "l2_error",
    "mean_error",
    "flow_jacobian",
    "symplectic_defect",
    "convergence_order",
    "step_bound",
    "contraction_constant",
    "contraction_factor",
    "spectral_norm",
    "mass",
]


def l2_error(ref: HamiltonianState, approx: HamiltonianState, dx: float) -> float:
    """Discrete spatial L2 norm sqrt(dx * sum_i (|u_ref|_i - |u|_i)^2).

    Solutions are compared through their moduli at a fixed time; the square
    root makes this a genuine norm.
    """
    if ref.m != approx.m:
        raise DimensionError(f"length mismatch: {ref.m} vs {approx.m}")
    if not (np.isfinite(dx) and dx > 0):
        raise ParameterError(f"dx must be positive, got {dx!r}")
    diff = modulus(ref) - modulus(approx)
    return float(np.sqrt(dx * np.sum(diff * diff)))


def mean_error(per_path_errors) -> float:
    """Arithmetic mean of per-path errors (the Monte Carlo expectation)."""
    arr = np.asarray(per_path_errors, dtype=float)
    if arr.size == 0:
        raise ParameterError("need at least one error value")
    return float(np.mean(arr))


def flow_jacobian(step_map, problem: SplitProblem, state0: HamiltonianState,
                  dt: float, dw, h: float | None = None) -> np.ndarray:
    """Central finite-difference Jacobian of a one-step map at ``state0``.

    ``step_map(problem, state, dt, dw)`` must be deterministic given
    ``(dt, dw)``; the same ``dw`` (a scalar increment or a Wiener sub-path,
    whatever the map expects) is used for every perturbed evaluation.
    Column j is (Phi(y + h e_j) - Phi(y - h e_j)) / (2h) on the stacked
    (eta, xi) vector.  The default h is the cube root of machine epsilon
    scaled by (1 + max|y|).
    """
    z0 = state0.as_vector()
    if h is None:
        h = float(np.finfo(float).eps) ** (1.0 / 3.0) * (1.0 + np.max(np.abs(z0)))
    if not (np.isfinite(h) and h > 0):
        raise ParameterError(f"h must be positive, got {h!r}")
    n = z0.size
    jac = np.empty((n, n))
    for j in range(n):
        zp = z0.copy()
        zp[j] += h
        zm = z0.copy()
        zm[j] -= h
        fp = step_map(problem, HamiltonianState.from_vector(zp), dt, dw).as_vector()
        fm = step_map(problem, HamiltonianState.from_vector(zm), dt, dw).as_vector()
        jac[:, j] = (fp - fm) / (2.0 * h)
    return jac


def symplectic_defect(jac, norm: str = "fro") -> float:
    """Defect ||Jac^T J Jac - J|| of a 2Mx2M Jacobian.

    Frobenius norm by default; ``norm="spectral"`` uses the 2-norm.  Zero
    exactly when the map is symplectic.
    """
    a = _as_square(jac, "jacobian")
    n = a.shape[0]
    if n % 2:
        raise DimensionError(f"jacobian dimension must be even, got {n}")
    j = symplectic_j(n // 2)
    defect = a.T @ j @ a - j
    if norm == "fro":
        return float(np.linalg.norm(defect))
    if norm == "spectral":
        return float(np.linalg.norm(defect, 2))
    raise ParameterError(f"unknown norm {norm!r}")


def convergence_order(errors, dts) -> float:
    """Least-squares slope of log(error) against log(dt).

    Requires at least three strictly decreasing step sizes and positive
    errors.
    """
    err = np.asarray(errors, dtype=float)
    step = np.asarray(dts, dtype=float)
    if err.shape != step.shape or err.ndim != 1 or err.size < 3:
        raise ParameterError("need >= 3 matching (error, dt) levels")
    if np.any(np.diff(step) >= 0) or np.any(step <= 0):
        raise ParameterError("dts must be strictly decreasing and positive")
    if np.any(~np.isfinite(err)) or np.any(err <= 0):
        raise ParameterError("errors must be positive and finite")
    slope, _ = np.polyfit(np.log(step), np.log(err), 1)
    return float(slope)


def step_bound(delta: float, norm_b: float, m: int) -> float:
    """Admissible step bound tau = (delta / ||B||^(m+1))^2.

    Steps dt <= tau keep the m-sweep defect below the delta^(m+1) budget.
    """
    if not (np.isfinite(delta) and 0.0 < delta < 1.0):
        raise ParameterError(f"delta must lie in (0, 1), got {delta!r}")
    if not (np.isfinite(norm_b) and norm_b > 0):
        raise ParameterError(f"norm_b must be positive, got {norm_b!r}")
    if not isinstance(m, (int, np.integer)) or m < 0:
        raise ParameterError(f"m must be a non-negative integer, got {m!r}")
    k1 = norm_b ** (m + 1)
    return (delta / k1) ** 2


def spectral_norm(a, tol: float = 1e-8, max_iter: int = 100_000) -> float:
    """Largest singular value via power iteration on A^T A.

    Deterministic start vector; iterates until the Rayleigh quotient is
    stable to ``tol`` (relative).
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {a.shape}")
    g = a.T @ a
    n = g.shape[0]
    v = 1.0 + np.arange(n) / (10.0 * n)  # ramp breaks symmetric ties
    v /= np.linalg.norm(v)
    lam_old = 0.0
    for _ in range(max_iter):
        w = g @ v
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            return 0.0
        v = w / nw
        lam = float(v @ (g @ v))
        if abs(lam - lam_old) <= tol * max(lam, 1e-300):
            return float(np.sqrt(lam))
        lam_old = lam
    return float(np.sqrt(lam_old))


def contraction_factor(drift, noise, dt: float, dw: float) -> float:
    """dt*||drift||_2 + |dw|*||noise||_2 with power-iteration norms."""
    if not (np.isfinite(dt) and dt >= 0 and np.isfinite(dw)):
        raise ParameterError("dt must be >= 0 and dw finite")
    return dt * spectral_norm(drift) + abs(dw) * spectral_norm(noise)


def contraction_constant(problem: SplitProblem, state: HamiltonianState,
                         dt: float, dw: float) -> float:
    """Contraction factor dt*||A4~||_2 + |dw|*||A3~||_2 of the linearized
    sweep map at ``state``; values below 1 guarantee the successive
    approximation contracts."""
    ops = build_operators(problem, state)
    return contraction_factor(ops.a4, ops.a3, dt, dw)


def mass(state: HamiltonianState, dx: float) -> float:
    """Discrete L2 mass dx * sum_i (eta_i^2 + xi_i^2)."""
    if not (np.isfinite(dx) and dx > 0):
        raise ParameterError(f"dx must be positive, got {dx!r}")
    return float(dx * (np.sum(state.eta**2) + np.sum(state.xi**2)))


@dataclass(frozen=True, eq=False)
class ErrorReport:
    """Error metrics of one run at one comparison time."""

    l2_error: float
    mean_abs_error: float
    per_point_errors: np.ndarray = field(repr=False)
    dt: float = float("nan")
    dx: float = float("nan")
    scheme: str = ""

    CSV_HEADER = "l2_error,mean_abs_error,dt,dx,scheme"

    def __post_init__(self):
        if not (self.l2_error >= 0 and np.isfinite(self.l2_error)
                and self.mean_abs_error >= 0 and np.isfinite(self.mean_abs_error)):
            raise ParameterError("error metrics must be finite and >= 0")

    def csv_row(self) -> str:
        return (f"{self.l2_error!r},{self.mean_abs_error!r},"
                f"{self.dt!r},{self.dx!r},{self.scheme}")


def error_report(ref: HamiltonianState, approx: HamiltonianState, dx: float,
                 dt: float = float("nan"), scheme: str = "") -> ErrorReport:
    """Build an :class:`ErrorReport` comparing moduli of two states."""
    per_point = np.abs(modulus(ref) - modulus(approx))
    return ErrorReport(
        l2_error=l2_error(ref, approx, dx),
        mean_abs_error=float(np.mean(per_point)),
        per_point_errors=per_point,
        dt=dt, dx=dx, scheme=scheme)


@dataclass(frozen=True)
class SymplecticBudget:
    """Measured defect of an m-sweep step against its delta^(m+1) budget.

    ``tau_bound = (delta/K1)^2`` with K1 = ||B||^(m+1) is the admissible
    step; ``c_fit`` is the fitted prefactor of the observed scaling (never
    asserted, reported only).
    """

    delta: float
    m: int
    k1: float
    tau_bound: float
    measured_defect: float
    c_fit: float = float("nan")

    CSV_HEADER = "delta,m,k1,tau_bound,measured_defect,c_fit"

    def __post_init__(self):
        if not (0.0 < self.delta < 1.0):
            raise ParameterError(f"delta must lie in (0, 1), got {self.delta!r}")
        if self.measured_defect < 0:
            raise ParameterError("measured_defect must be >= 0")
        expected = (self.delta / self.k1) ** 2
        if not np.isclose(self.tau_bound, expected, rtol=1e-12, atol=0.0):
            raise ParameterError(
                f"tau_bound {self.tau_bound!r} != (delta/K1)^2 = {expected!r}")

    def csv_row(self) -> str:
        return (f"{self.delta!r},{self.m},{self.k1!r},{self.tau_bound!r},"
                f"{self.measured_defect!r},{self.c_fit!r}")
