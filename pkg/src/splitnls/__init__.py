"""splitnls: operator-splitting integrators for semi-discretized
(stochastic) nonlinear Schrodinger equations, with symplecticity and
strong-convergence diagnostics.

The core package is a plain numerical library; :mod:`splitnls.service`
wraps it in a small HTTP API and :mod:`splitnls.cli` is a thin client over
that API (in-process by default).
"""

from .diagnostics import (
    ErrorReport,
    SymplecticBudget,
    contraction_constant,
    contraction_factor,
    convergence_order,
    error_report,
    flow_jacobian,
    l2_error,
    mass,
    mean_error,
    spectral_norm,
    step_bound,
    symplectic_defect,
)
from .discretization import (
    HamiltonianState,
    SpatialGrid,
    lift,
    modulus,
    noise_diagonal,
    periodic_laplacian,
    potential_diagonal,
    potential_values,
)
from .errors import (
    BlowupError,
    ConfigError,
    DimensionError,
    Error,
    ParameterError,
    UnsupportedOrderError,
)
from .integrators import (
    Scheme,
    SchemeSpec,
    Trajectory,
    integrate,
    iterative_propagator,
    step_iterative_stochastic,
    step_lie,
    step_strang,
    step_weighted1,
    step_weighted2,
)
from .linalg import (
    block_skew,
    block_skew_expm,
    commutator,
    expm,
    phi,
    symplectic_j,
)
from .problems import (
    OperatorSet,
    ProblemKind,
    SplitProblem,
    build_operators,
    default_problem,
    exact_soliton,
    initial_condition,
    soliton_state,
)
from .wiener import (
    WienerPath,
    coarsen,
    path_to_csv,
    sample_path,
    stratonovich_expm_integral,
)

__version__ = "0.1.0"
