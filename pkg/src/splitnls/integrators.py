"""One-step maps for the five splitting schemes and the trajectory driver.

All schemes advance the real lift (eta, xi) of the field by composing (or
correcting) exactly solved linear sub-flows:

* ``step_lie``      -- sequential product exp(dt*A1~) exp(dt*A2~) S_noise.
* ``step_strang``   -- palindromic product with half steps of the Laplacian
  lift and the noise factor in the central position.
* ``step_iterative_stochastic`` -- successive-approximation sweeps: sweep 1
  is the exponential of the frozen combined drift; each further sweep feeds
  the previous iterate into the noise integral via the Stratonovich midpoint
  rule on a fine sub-path, raising the strong order by 1/2 per sweep.
* ``step_weighted1`` -- relaxed splitting with drift A1~ + (1-w)A2~ and
  coupling w*A2~; correction orders 2 and 3 add the exact iterated
  variation-of-constants integrals (computed via augmented exponentials).
* ``step_weighted2`` -- relaxed sweep pairs alternating an A1~-driven and an
  A2~-driven stage; w = 0 reduces exactly to sequential splitting.

Nonlinear diagonals are always frozen at a known state (the incoming state,
or the newest iterate between sweeps); no nonlinear solves occur anywhere.
Every deterministic factor is the exponential of a skew generator, so it is
orthogonal and symplectic, and the discrete mass dx*sum(eta^2 + xi^2) is
invariant under it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .discretization import HamiltonianState
from .errors import BlowupError, DimensionError, ParameterError
from .linalg import _as_square, block_skew
from .problems import SplitProblem, initial_condition
from .wiener import WienerPath

__all__ = [
    "Scheme",
    "SchemeSpec",
    "Trajectory",
    "step_lie",
    "step_strang",
    "step_iterative_stochastic",
    "step_weighted1",
    "step_weighted2",
    "iterative_propagator",
    "integrate",
]


class Scheme(str, enum.Enum):
    LIE = "lie"
    STRANG = "strang"
    ITERATIVE_STOCHASTIC = "iterative"
    WEIGHTED_ITER_1 = "weighted1"
    WEIGHTED_ITER_2 = "weighted2"


@dataclass(frozen=True)
class SchemeSpec:
    """Scheme selection plus its parameters.

    ``sweeps`` is the iteration count m of the stochastic scheme (the step
    performs m + 1 stages: the drift exponential plus m noise-correction
    sweeps) and the number of stage pairs of weighted scheme 2.  ``omega``
    is the relaxation weight of the weighted schemes (None defers to the
    problem's default).  ``correction_order`` applies to weighted scheme 1
    only.
    """

    scheme: Scheme
    sweeps: int = 2
    omega: float | None = None
    correction_order: int = 2

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if not isinstance(self.sweeps, (int, np.integer)) or self.sweeps < 1:
            raise ParameterError(f"sweeps must be >= 1, got {self.sweeps!r}")
        if self.correction_order not in (1, 2, 3):
            raise ParameterError(
                f"correction_order must be 1, 2 or 3, got {self.correction_order!r}")
        if self.omega is not None and not (0.0 <= self.omega <= 1.0):
            raise ParameterError(f"omega must be in [0, 1], got {self.omega!r}")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded states of one integration run.

    With the default snapshot stride of 1, ``len(times) == len(states) ==
    n_steps + 1``; with stride k > 1 only every k-th step (plus the final
    one) is kept.
    """

    times: np.ndarray
    states: list
    path: WienerPath | None
    scheme: SchemeSpec

    @property
    def final(self) -> HamiltonianState:
        return self.states[-1]


# ---------------------------------------------------------------------------
# sub-flow machinery


class _SymFlow:
    """Flows of the skew lift of one symmetric block C, via eigh.

    Evaluates exp(t*block_skew(C)) and its first two iterated time integrals
    applied to (eta, xi) pairs.  For diagonal C the eigenvector transform is
    skipped.
    """

    def __init__(self, w: np.ndarray, v: np.ndarray | None):
        self.w = w
        self.v = v

    @classmethod
    def from_symmetric(cls, c: np.ndarray) -> "_SymFlow":
        w, v = np.linalg.eigh(c)
        return cls(w, v)

    @classmethod
    def from_diagonal(cls, p: np.ndarray) -> "_SymFlow":
        return cls(np.asarray(p, dtype=float), None)

    def _in(self, e, x):
        if self.v is None:
            return e, x
        return self.v.T @ e, self.v.T @ x

    def _out(self, e, x):
        if self.v is None:
            return e, x
        return self.v @ e, self.v @ x

    def _rotate(self, t, e, x, fc, fs):
        """Apply the block [[fc, fs], [-fs, fc]] of mode functions."""
        me, mx = self._in(e, x)
        c = fc(self.w * t, t)
        s = fs(self.w * t, t)
        return self._out(c * me + s * mx, -s * me + c * mx)

    def apply(self, t, e, x):
        return self._rotate(t, e, x,
                            lambda a, t: np.cos(a), lambda a, t: np.sin(a))

    def apply_phi1(self, t, e, x):
        return self._rotate(t, e, x, _int_cos, _int_sin)

    def apply_phi2(self, t, e, x):
        return self._rotate(t, e, x, _int2_cos, _int2_sin)


def _int_cos(a, t):
    """integral_0^t cos(lam s) ds = sin(a)/lam with a = lam*t, lam -> 0 safe."""
    small = np.abs(a) < 1e-5
    lam = np.where(small, 1.0, a / t) if t != 0 else np.ones_like(a)
    return np.where(small, t * (1.0 - a * a / 6.0), np.sin(a) / lam)


def _int_sin(a, t):
    """integral_0^t sin(lam s) ds = (1 - cos(a))/lam."""
    small = np.abs(a) < 1e-5
    lam = np.where(small, 1.0, a / t) if t != 0 else np.ones_like(a)
    return np.where(small, a * t / 2.0 * (1.0 - a * a / 12.0), (1.0 - np.cos(a)) / lam)


def _int2_cos(a, t):
    """Double integral of cos: (1 - cos(a))/lam^2."""
    small = np.abs(a) < 1e-5
    lam = np.where(small, 1.0, a / t) if t != 0 else np.ones_like(a)
    return np.where(small, t * t / 2.0 * (1.0 - a * a / 12.0),
                    (1.0 - np.cos(a)) / lam**2)


def _int2_sin(a, t):
    """Double integral of sin: (a - sin(a))/lam^2."""
    small = np.abs(a) < 1e-5
    lam = np.where(small, 1.0, a / t) if t != 0 else np.ones_like(a)
    return np.where(small, a * t * t / 6.0 * (1.0 - a * a / 20.0),
                    (a - np.sin(a)) / lam**2)


@lru_cache(maxsize=128)
def _lap_flow(problem: SplitProblem) -> _SymFlow:
    """Cached eigendecomposition of the problem's Laplacian block."""
    return _SymFlow.from_symmetric(problem.laplacian_block)


def _diag_rotation(p, t, e, x):
    """exp(t*block_skew(diag p)) applied to (e, x): pointwise rotation."""
    c = np.cos(p * t)
    s = np.sin(p * t)
    return c * e + s * x, -s * e + c * x


def _noise_factor(eps, dt, dw, e, x):
    """exp(-dt/2 * A3~^T A3~ + A3~ dw) with A3~ = block_skew(eps*I).

    A3~^T A3~ = eps^2 I, so the factor is the damping exp(-eps^2 dt/2) times
    a global rotation by the angle eps*dw.
    """
    theta = eps * dw
    damp = np.exp(-0.5 * eps * eps * dt)
    c = damp * np.cos(theta)
    s = damp * np.sin(theta)
    return c * e + s * x, -s * e + c * x


def _check_step_args(problem, state, dt):
    if state.m != problem.grid.m:
        raise DimensionError(
            f"state has {state.m} points, grid has {problem.grid.m}")
    if not (np.isfinite(dt) and dt != 0.0):
        raise ParameterError(f"dt must be finite and nonzero, got {dt!r}")


def _mk_state(e, x) -> HamiltonianState:
    """Build a state, converting non-finite output into a typed blowup."""
    if not (np.all(np.isfinite(e)) and np.all(np.isfinite(x))):
        raise BlowupError("one-step map produced non-finite entries", step=-1)
    return HamiltonianState(e, x)


# ---------------------------------------------------------------------------
# one-step maps


def step_lie(problem: SplitProblem, state: HamiltonianState, dt: float,
             dw: float = 0.0) -> HamiltonianState:
    """Sequential (Lie-Trotter) step exp(dt A1~) exp(dt A2~) S_noise, all
    operators frozen at the incoming state; the rightmost factor acts first.
    """
    _check_step_args(problem, state, dt)
    if not np.isfinite(dw):
        raise ParameterError("dw must be finite")
    p = problem.potential_vector(state)
    e, x = state.eta, state.xi
    if problem.eps != 0.0:
        e, x = _noise_factor(problem.eps, dt, dw, e, x)
    e, x = _diag_rotation(p, dt, e, x)
    e, x = _lap_flow(problem).apply(dt, e, x)
    return _mk_state(e, x)


def step_strang(problem: SplitProblem, state: HamiltonianState, dt: float,
                dw: float = 0.0) -> HamiltonianState:
    """Palindromic step: half Laplacian flow, half potential flow, noise
    factor, half potential flow, half Laplacian flow.

    The potential diagonal is frozen at the state entering the middle
    factor (after the first half step); since the modulus is constant along
    the potential sub-flow, that factor is then the exact sub-flow and the
    classical second order of the symmetric composition is retained.
    """
    _check_step_args(problem, state, dt)
    if not np.isfinite(dw):
        raise ParameterError("dw must be finite")
    flow = _lap_flow(problem)
    e, x = flow.apply(dt / 2.0, state.eta, state.xi)
    p = problem.potential_vector(_mk_state(e, x))
    e, x = _diag_rotation(p, dt / 2.0, e, x)
    if problem.eps != 0.0:
        e, x = _noise_factor(problem.eps, dt, dw, e, x)
    e, x = _diag_rotation(p, dt / 2.0, e, x)
    e, x = flow.apply(dt / 2.0, e, x)
    return _mk_state(e, x)


def step_iterative_stochastic(problem: SplitProblem, state: HamiltonianState,
                              dt: float, subpath: WienerPath | None,
                              sweeps: int) -> HamiltonianState:
    """One step of the successive-approximation scheme with m = ``sweeps``.

    Stage 1 propagates with exp(dt*A4~), A4~ = A1~ + A2~ frozen at the
    incoming state.  Each of the m correction sweeps solves the linear
    stage equation

        d y_i = A4~ y_i dt + A3~ y_{i-1} dW

    by variation of constants, with the stochastic integral discretized by
    the Stratonovich midpoint rule on ``subpath`` (the fine sub-path of the
    driving Wiener path inside this step) and the previous iterate evaluated
    as the average of its bracketing node values.  A2~ inside the correction
    kernel is refrozen at the newest iterate's endpoint between sweeps.

    With eps = 0 every correction vanishes and the step returns
    exp(dt*A4~) * state for any number of sweeps.
    """
    _check_step_args(problem, state, dt)
    if not isinstance(sweeps, (int, np.integer)) or sweeps < 1:
        raise ParameterError(f"sweeps must be >= 1, got {sweeps!r}")
    lap = problem.laplacian_block
    base_flow = _SymFlow.from_symmetric(lap + np.diag(problem.potential_vector(state)))
    if problem.eps == 0.0:
        return _mk_state(*base_flow.apply(dt, state.eta, state.xi))
    if subpath is None:
        raise ParameterError("a Wiener sub-path is required when eps > 0")
    if abs(subpath.t_end - dt) > 1e-9 * max(1.0, abs(dt)):
        raise ParameterError(
            f"sub-path spans {subpath.t_end!r}, step is {dt!r}")
    eps = problem.eps
    k_sub = subpath.n_steps
    h = subpath.dt
    dws = subpath.increments
    base = [(state.eta, state.xi)]
    for j in range(k_sub):
        base.append(base_flow.apply((j + 1) * h, state.eta, state.xi))
    prev = base
    for _ in range(sweeps):
        end = _mk_state(*prev[k_sub])
        kernel = _SymFlow.from_symmetric(lap + np.diag(problem.potential_vector(end)))
        acc_e = np.zeros(problem.grid.m)
        acc_x = np.zeros(problem.grid.m)
        cur = [base[0]]
        for k in range(k_sub):
            qe = 0.5 * (prev[k][0] + prev[k + 1][0])
            qx = 0.5 * (prev[k][1] + prev[k + 1][1])
            # A3~ q = eps * (q_xi, -q_eta), weighted by the increment
            fe = eps * dws[k] * qx
            fx = -eps * dws[k] * qe
            acc_e, acc_x = kernel.apply(h, acc_e, acc_x)
            ge, gx = kernel.apply(0.5 * h, fe, fx)
            acc_e = acc_e + ge
            acc_x = acc_x + gx
            cur.append((base[k + 1][0] + acc_e, base[k + 1][1] + acc_x))
        prev = cur
    return _mk_state(*prev[k_sub])


def iterative_propagator(drift, noise, subpath: WienerPath,
                         sweeps: int) -> np.ndarray:
    """One-step propagator matrix of the successive-approximation scheme for
    a frozen linear pair (drift, noise), on the given sub-path.

    Runs the same recursion as :func:`step_iterative_stochastic` (dense
    exponentials instead of eigendecompositions) applied to the identity, so
    for a linear problem it equals the Jacobian of the one-step map.  Used
    by the symplectic-defect studies.
    """
    a = _as_square(drift, "drift")
    b = _as_square(noise, "noise")
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    if not isinstance(sweeps, (int, np.integer)) or sweeps < 1:
        raise ParameterError(f"sweeps must be >= 1, got {sweeps!r}")
    h = subpath.dt
    dws = subpath.increments
    e_h = scipy.linalg.expm(h * a)
    e_half = scipy.linalg.expm(0.5 * h * a)
    base = [np.eye(a.shape[0])]
    for _ in range(subpath.n_steps):
        base.append(e_h @ base[-1])
    prev = base
    for _ in range(sweeps):
        acc = np.zeros_like(a)
        cur = [base[0]]
        for k in range(subpath.n_steps):
            q = 0.5 * (prev[k] + prev[k + 1])
            acc = e_h @ acc + dws[k] * (e_half @ (b @ q))
            cur.append(base[k + 1] + acc)
        prev = cur
    return prev[subpath.n_steps]


def step_weighted1(problem: SplitProblem, state: HamiltonianState, dt: float,
                   omega: float | None = None,
                   correction_order: int = 2) -> HamiltonianState:
    """Relaxed iterative splitting with drift A^1 = A1~ + (1-w)A2~ and
    coupling A^2 = w*A2~ (both frozen at the incoming state).

    Order 1 returns exp(dt A^1) * state.  Orders 2 and 3 add the exact
    first and second iterated variation-of-constants integrals

        u_k(dt) = [exp(dt A^1) + int e^{A^1(dt-s)} A^2 e^{A^1 s} ds + ...] u

    evaluated through the exponential of an augmented block-triangular
    matrix, raising the one-step accuracy by one power of dt per order.
    Deterministic only.  Cost is O((2M * order)^3) per step.
    """
    _check_step_args(problem, state, dt)
    omega = problem.omega if omega is None else omega
    if not (np.isfinite(omega) and 0.0 <= omega <= 1.0):
        raise ParameterError(f"omega must be in [0, 1], got {omega!r}")
    if correction_order not in (1, 2, 3):
        raise ParameterError(
            f"correction_order must be 1, 2 or 3, got {correction_order!r}")
    p = problem.potential_vector(state)
    c1 = problem.laplacian_block + (1.0 - omega) * np.diag(p)
    if correction_order == 1:
        flow = _SymFlow.from_symmetric(c1)
        return _mk_state(*flow.apply(dt, state.eta, state.xi))
    a_hat = block_skew(c1)
    y_hat = block_skew(np.diag(omega * p))
    n2 = a_hat.shape[0]
    k = correction_order
    aug = np.zeros((k * n2, k * n2))
    for j in range(k):
        aug[j * n2:(j + 1) * n2, j * n2:(j + 1) * n2] = a_hat
        if j + 1 < k:
            aug[j * n2:(j + 1) * n2, (j + 1) * n2:(j + 2) * n2] = y_hat
    full = scipy.linalg.expm(dt * aug)
    prop = full[:n2, :n2].copy()
    for j in range(1, k):
        prop += full[:n2, j * n2:(j + 1) * n2]
    z = prop @ state.as_vector()
    if not np.all(np.isfinite(z)):
        raise BlowupError("one-step map produced non-finite entries", step=-1)
    return HamiltonianState.from_vector(z)


def step_weighted2(problem: SplitProblem, state: HamiltonianState, dt: float,
                   omega: float | None = None, sweeps: int = 1) -> HamiltonianState:
    """Relaxed sweep pairs: an A1~-driven stage with coupling w*A2~ against
    the previous iterate, then an A2~-driven stage with coupling w*A1~ and
    initial value w*u^n + (1-w)*u_prev(t^{n+1});  m = ``sweeps`` pairs are
    executed and the last pair's second stage is returned.

    Each stage is solved by variation of constants with the inhomogeneous
    term held at the previous iterate's exact time average (evaluated with
    the first two iterated exponential integrals), which makes w = 0
    exactly the sequential splitting and keeps the collapse cases exact.
    Deterministic only.
    """
    _check_step_args(problem, state, dt)
    omega = problem.omega if omega is None else omega
    if not (np.isfinite(omega) and 0.0 <= omega <= 1.0):
        raise ParameterError(f"omega must be in [0, 1], got {omega!r}")
    if not isinstance(sweeps, (int, np.integer)) or sweeps < 1:
        raise ParameterError(f"sweeps must be >= 1, got {sweeps!r}")
    lap = problem.laplacian_block
    p = problem.potential_vector(state)
    aflow = _lap_flow(problem)
    bflow = _SymFlow.from_diagonal(p)
    e0, x0 = state.eta, state.xi

    def a1_apply(e, x):
        return lap @ x, -(lap @ e)

    def a2_apply(e, x):
        return p * x, -(p * e)

    prev_avg = (e0, x0)  # iterate 0 is the constant function u^n
    end_e, end_x = e0, x0
    for _ in range(sweeps):
        # drift-driven stage from u^n, forced by omega*A2~ * avg(prev)
        fe, fx = a2_apply(*prev_avg)
        fe, fx = omega * fe, omega * fx
        he, hx = aflow.apply(dt, e0, x0)
        ge, gx = aflow.apply_phi1(dt, fe, fx)
        a_end = (he + ge, hx + gx)
        pe, px = aflow.apply_phi1(dt, e0, x0)
        qe, qx = aflow.apply_phi2(dt, fe, fx)
        a_avg = ((pe + qe) / dt, (px + qx) / dt)
        # potential-driven stage, forced by omega*A1~ * avg(drift stage)
        ge, gx = a1_apply(*a_avg)
        ge, gx = omega * ge, omega * gx
        ic_e = omega * e0 + (1.0 - omega) * a_end[0]
        ic_x = omega * x0 + (1.0 - omega) * a_end[1]
        he, hx = bflow.apply(dt, ic_e, ic_x)
        ue, ux = bflow.apply_phi1(dt, ge, gx)
        end_e, end_x = he + ue, hx + ux
        pe, px = bflow.apply_phi1(dt, ic_e, ic_x)
        qe, qx = bflow.apply_phi2(dt, ge, gx)
        prev_avg = ((pe + qe) / dt, (px + qx) / dt)
    return _mk_state(end_e, end_x)


# ---------------------------------------------------------------------------
# trajectory driver


def integrate(problem: SplitProblem, scheme: SchemeSpec, t_end: float,
              n_steps: int, path: WienerPath | None = None,
              snapshot_stride: int = 1) -> Trajectory:
    """Apply the chosen one-step map ``n_steps`` times from the problem's
    initial condition, refreezing the nonlinear diagonal at the current
    state every step.

    ``path`` must carry an integer multiple of ``n_steps`` increments; the
    per-step Wiener increment is the sum over each step's sub-increments,
    and the iterative scheme consumes the fine sub-path directly for its
    midpoint quadrature.  Deterministic problems (eps = 0) may omit the
    path.  The weighted schemes are deterministic-only maps and reject
    problems with eps > 0.

    Raises :class:`BlowupError` if a step produces non-finite entries.
    """
    if not isinstance(n_steps, (int, np.integer)) or n_steps < 0:
        raise ParameterError(f"n_steps must be >= 0, got {n_steps!r}")
    if not isinstance(snapshot_stride, (int, np.integer)) or snapshot_stride < 1:
        raise ParameterError(f"snapshot_stride must be >= 1, got {snapshot_stride!r}")
    if not (np.isfinite(t_end) and t_end >= 0):
        raise ParameterError(f"t_end must be >= 0, got {t_end!r}")
    weighted = scheme.scheme in (Scheme.WEIGHTED_ITER_1, Scheme.WEIGHTED_ITER_2)
    if weighted and problem.eps != 0.0:
        raise ParameterError(
            f"{scheme.scheme.value} is a deterministic map; eps must be 0")
    state = initial_condition(problem)
    times = [0.0]
    states = [state]
    if n_steps == 0:
        return Trajectory(np.asarray(times), states, path, scheme)
    dt = t_end / n_steps
    refine = 1
    if path is not None:
        if path.n_steps % n_steps:
            raise ParameterError(
                f"path with {path.n_steps} increments cannot drive {n_steps} steps")
        refine = path.n_steps // n_steps
        if abs(path.t_end - t_end) > 1e-9 * max(1.0, t_end):
            raise ParameterError(
                f"path spans {path.t_end!r}, integration needs {t_end!r}")
    elif problem.eps != 0.0:
        raise ParameterError("a Wiener path is required when eps > 0")

    for k in range(n_steps):
        if path is not None:
            seg = path.segment(k * refine, (k + 1) * refine)
            dw = float(np.sum(seg.increments))
        else:
            seg = None
            dw = 0.0
        try:
            if scheme.scheme is Scheme.LIE:
                state = step_lie(problem, state, dt, dw)
            elif scheme.scheme is Scheme.STRANG:
                state = step_strang(problem, state, dt, dw)
            elif scheme.scheme is Scheme.ITERATIVE_STOCHASTIC:
                state = step_iterative_stochastic(problem, state, dt, seg,
                                                  scheme.sweeps)
            elif scheme.scheme is Scheme.WEIGHTED_ITER_1:
                state = step_weighted1(problem, state, dt, scheme.omega,
                                       scheme.correction_order)
            else:
                state = step_weighted2(problem, state, dt, scheme.omega,
                                       scheme.sweeps)
        except BlowupError:
            raise BlowupError(f"non-finite state after step {k + 1}",
                              step=k + 1) from None
        if (k + 1) % snapshot_stride == 0 or k + 1 == n_steps:
            times.append((k + 1) * dt)
            states.append(state)
    return Trajectory(np.asarray(times), states, path, scheme)
