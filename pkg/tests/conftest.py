"""Shared oracles and helpers for the test suite.

The Taylor-series exponential here is the independent reference for the
production ``expm``: a plain truncated series on a scaled matrix followed by
repeated squaring, sharing no code with the scaling-and-squaring Pade path.
"""

import numpy as np
import pytest

import splitnls as s


def expm_taylor(m, t=1.0, squarings=None, max_terms=300):
    """Reference exp(t*M) by truncated Taylor series with optional scaling.

    With ``squarings=0`` this is the raw series (adequate for ||tM|| <= ~10);
    by default the argument is halved until its norm is at most 1.
    """
    a = t * np.asarray(m, dtype=float)
    if squarings is None:
        norm = np.linalg.norm(a, 2)
        squarings = max(0, int(np.ceil(np.log2(norm)))) if norm > 1.0 else 0
    a = a / 2.0 ** squarings
    n = a.shape[0]
    total = np.eye(n)
    term = np.eye(n)
    for k in range(1, max_terms + 1):
        term = term @ a / k
        total = total + term
        if np.linalg.norm(term) <= 1e-20 * max(np.linalg.norm(total), 1.0):
            break
    for _ in range(squarings):
        total = total @ total
    return total


def random_matrix(rng, n, norm=1.0):
    """Random dense matrix rescaled to the requested spectral norm."""
    a = rng.standard_normal((n, n))
    return a * (norm / np.linalg.norm(a, 2))


def random_state(rng, m):
    return s.HamiltonianState(rng.standard_normal(m), rng.standard_normal(m))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def small_nls():
    """Small deterministic soliton problem (fast tests)."""
    return s.default_problem(s.ProblemKind.DETERMINISTIC_NLS,
                             s.SpatialGrid(0.0, 50.0, 24))


@pytest.fixture
def frozen_linear():
    """Linearized problem with psi = 0: state-independent operators."""
    return s.default_problem(s.ProblemKind.LINEARIZED_STOCHASTIC,
                             s.SpatialGrid(0.0, 1.0, 6), psi=0.0)
