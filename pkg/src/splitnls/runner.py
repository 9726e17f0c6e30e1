"""Experiment configuration, orchestration, and output emission.

Experiments are driven by line-oriented ``key = value`` config text (see
``KEY_HELP`` for the full key set).  Four commands interpret a config:

* ``run``      -- integrate each step-count level once (or per ensemble
  member), compare against the configured reference, emit per-run rows.
* ``converge`` -- same, but requires at least three levels and fits the
  convergence order of the ensemble-mean error.
* ``defect``   -- one-step symplectic-defect scaling study of the iterative
  stochastic scheme on the problem frozen at its initial state.
* ``soliton``  -- ``run`` preset against the exact traveling-soliton
  reference.

Strong-error protocol: every resolution level and the fine reference are
driven by coarsenings of one master Wiener path per ensemble member, so all
levels see the same Brownian motion.  All randomness derives from
``(seed, path_index)``, output rows are emitted in deterministic order, and
floats are serialized with ``repr``, so equal configs and seeds produce
byte-identical CSV text.
"""

from __future__ import annotations

import dataclasses
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import svgplot
from .diagnostics import (
    SymplecticBudget,
    convergence_order,
    error_report,
    flow_jacobian,
    mass,
    mean_error,
    spectral_norm,
    symplectic_defect,
)
from .discretization import SpatialGrid, modulus
from .errors import BlowupError, ConfigError, ParameterError
from .integrators import (
    Scheme,
    SchemeSpec,
    integrate,
    iterative_propagator,
    step_iterative_stochastic,
    step_lie,
    step_strang,
    step_weighted1,
    step_weighted2,
)
from .problems import (
    ProblemKind,
    SplitProblem,
    build_operators,
    default_problem,
    initial_condition,
    soliton_state,
)
from .wiener import WienerPath, coarsen, sample_path

__all__ = [
    "RunConfig",
    "RunRow",
    "RunResult",
    "parse_config",
    "run_experiment",
    "write_outputs",
    "CSV_COLUMNS",
    "KEY_HELP",
    "COMMANDS",
]

CSV_COLUMNS = ["run_id", "scheme", "m", "omega", "dt", "dx", "seed", "path_id",
               "l2_error", "mean_error", "mass_drift", "defect", "order_fit"]

COMMANDS = ("run", "converge", "defect", "soliton")

_POTENTIALS = {
    "default": "default",
    "zero": "zero",
    "one": "one",
    "inv_one_plus_sin2": "inv_one_plus_sin2",
}

_SCHEME_ALIASES = {
    "lie": Scheme.LIE,
    "ab": Scheme.LIE,
    "strang": Scheme.STRANG,
    "iterative": Scheme.ITERATIVE_STOCHASTIC,
    "weighted1": Scheme.WEIGHTED_ITER_1,
    "weighted2": Scheme.WEIGHTED_ITER_2,
}


@dataclass(frozen=True)
class RunConfig:
    """Validated experiment configuration (see ``KEY_HELP`` for semantics)."""

    problem: ProblemKind = ProblemKind.DETERMINISTIC_NLS
    x_left: float = 0.0
    x_right: float = 50.0
    grid_points: int = 500
    t_end: float = 1.0
    n_steps: tuple = (250, 500, 1000)
    scheme: Scheme = Scheme.STRANG
    sweeps: int = 2
    omega: float | None = None
    correction_order: int = 2
    epsilon: float | None = None
    sigma: float = 1.0
    lam: float = 30.0
    psi: float = 2.0
    potential: str = "default"
    seed: int = 12345
    ensemble: int = 1
    reference: str = "auto"
    reference_scheme: Scheme = Scheme.ITERATIVE_STOCHASTIC
    reference_sweeps: int = 3
    reference_refinement: int = 8
    substeps: int = 8
    delta: float = 0.5
    measure_defect: bool = False
    workers: int = 1
    snapshot_stride: int = 1

    def build_problem(self) -> SplitProblem:
        grid = SpatialGrid(self.x_left, self.x_right, self.grid_points)
        overrides = dict(sigma=self.sigma, lam=self.lam, psi=self.psi)
        if self.epsilon is not None:
            overrides["eps"] = self.epsilon
        if self.omega is not None:
            overrides["omega"] = self.omega
        if self.potential == "zero":
            overrides["v"] = None
        elif self.potential == "one":
            overrides["v"] = lambda x: np.ones_like(x)
        elif self.potential == "inv_one_plus_sin2":
            overrides["v"] = lambda x: 1.0 / (1.0 + np.sin(x) ** 2)
        return default_problem(self.problem, grid, **overrides)

    def scheme_spec(self) -> SchemeSpec:
        return SchemeSpec(self.scheme, sweeps=self.sweeps, omega=self.omega,
                          correction_order=self.correction_order)

    def reference_spec(self) -> SchemeSpec:
        return SchemeSpec(self.reference_scheme, sweeps=self.reference_sweeps,
                          omega=self.omega, correction_order=self.correction_order)


KEY_HELP = {
    "problem": "problem kind: " + "|".join(k.value for k in ProblemKind),
    "x_left": "left end of the periodic domain (float)",
    "x_right": "right end of the periodic domain (float)",
    "grid_points": "number of grid points M (int >= 3)",
    "t_end": "final time T (float > 0)",
    "n_steps": "comma-separated strictly increasing step counts",
    "scheme": "integrator: " + "|".join(sorted(_SCHEME_ALIASES)),
    "sweeps": "iteration count m of the iterative schemes (int >= 1)",
    "omega": "relaxation weight in [0, 1] (default: problem-specific)",
    "correction_order": "weighted scheme 1 correction order (1|2|3)",
    "epsilon": "noise amplitude >= 0 (default: problem-specific)",
    "sigma": "nonlinearity exponent > 0",
    "lambda": "nonlinearity strength of the perturbed problem",
    "psi": "cubic coefficient of the other problems",
    "potential": "potential choice: " + "|".join(sorted(_POTENTIALS)),
    "seed": "base RNG seed (int)",
    "ensemble": "number of Wiener paths (int >= 1)",
    "reference": "error reference: exact|fine|auto (exact soliton when "
                 "available, fine otherwise)",
    "reference_scheme": "scheme of the fine reference run",
    "reference_sweeps": "sweeps of the fine reference run",
    "reference_refinement": "fine reference step multiplier (int >= 1)",
    "substeps": "Wiener sub-steps per step for the iterative scheme (int >= 1)",
    "delta": "defect budget parameter in (0, 1) for the defect command",
    "measure_defect": "also measure one-step symplectic defects (true|false)",
    "workers": "concurrent ensemble workers (int >= 1)",
    "snapshot_stride": "keep every k-th trajectory state (int >= 1)",
}


def _parse_bool(text: str) -> bool:
    low = text.lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_steps(text: str) -> tuple:
    vals = tuple(int(part.strip()) for part in text.split(",") if part.strip())
    if not vals:
        raise ValueError("empty step list")
    return vals


_PARSERS = {
    "problem": lambda v: ProblemKind(v.lower()),
    "x_left": float,
    "x_right": float,
    "grid_points": int,
    "t_end": float,
    "n_steps": _parse_steps,
    "scheme": lambda v: _SCHEME_ALIASES[v.lower()],
    "sweeps": int,
    "omega": float,
    "correction_order": int,
    "epsilon": float,
    "sigma": float,
    "lambda": float,
    "psi": float,
    "potential": lambda v: _POTENTIALS[v.lower()],
    "seed": int,
    "ensemble": int,
    "reference": lambda v: v.lower(),  # validated against exact|fine|auto
    "reference_scheme": lambda v: _SCHEME_ALIASES[v.lower()],
    "reference_sweeps": int,
    "reference_refinement": int,
    "substeps": int,
    "delta": float,
    "measure_defect": _parse_bool,
    "workers": int,
    "snapshot_stride": int,
}

_FIELD_OF_KEY = {"lambda": "lam"}

_COMMAND_PRESETS = {
    "run": {},
    "converge": {},
    "soliton": {"problem": ProblemKind.DETERMINISTIC_NLS, "reference": "exact"},
    "defect": {
        "problem": ProblemKind.LINEARIZED_STOCHASTIC,
        "x_left": 0.0, "x_right": 1.0, "grid_points": 8,
        "scheme": Scheme.ITERATIVE_STOCHASTIC,
        "t_end": 1.0, "n_steps": (16, 32, 64, 128, 256, 512),
        "sweeps": 1, "ensemble": 100,
    },
}


def parse_config(text: str, command: str = "run") -> RunConfig:
    """Parse ``key = value`` config text into a validated :class:`RunConfig`.

    Unknown keys, malformed values, and violated invariants raise
    :class:`ConfigError` carrying the offending line number.  Blank lines
    and ``#`` comments are ignored; the empty string yields the command's
    defaults (a deterministic soliton setup for ``run``).
    """
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    values: dict = dict(_COMMAND_PRESETS[command])
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, _, val = line.partition("=")
        key = key.strip().lower()
        val = val.strip()
        if key not in _PARSERS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        try:
            parsed = _PARSERS[key](val)
        except (ValueError, KeyError):
            raise ConfigError(f"malformed value for {key!r}: {val!r}", lineno) from None
        values[_FIELD_OF_KEY.get(key, key)] = parsed
    try:
        config = RunConfig(**values)
        config = _resolve_reference(config)
        _validate(config, command)
    except (ParameterError, ConfigError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None
    return config


def _resolve_reference(config: RunConfig) -> RunConfig:
    if config.reference != "auto":
        return config
    soliton = config.problem in (ProblemKind.DETERMINISTIC_NLS,
                                 ProblemKind.STOCHASTIC_NLS)
    ref = "exact" if soliton and _effective_eps(config) == 0.0 else "fine"
    return dataclasses.replace(config, reference=ref)


def _effective_eps(config: RunConfig) -> float:
    if config.epsilon is not None:
        return config.epsilon
    if config.problem is ProblemKind.STOCHASTIC_NLS:
        return 0.1
    if config.problem is ProblemKind.LINEARIZED_STOCHASTIC:
        return 1.0
    return 0.0


def _validate(config: RunConfig, command: str):
    if any(n < 1 for n in config.n_steps):
        raise ConfigError("n_steps entries must be positive")
    if any(b <= a for a, b in zip(config.n_steps, config.n_steps[1:])):
        raise ConfigError("n_steps must be strictly increasing")
    if command == "converge" and len(config.n_steps) < 3:
        raise ConfigError("converge needs at least 3 n_steps levels")
    if not (config.t_end > 0 and np.isfinite(config.t_end)):
        raise ConfigError(f"t_end must be > 0, got {config.t_end!r}")
    for name in ("ensemble", "workers", "substeps", "reference_refinement",
                 "snapshot_stride", "sweeps", "reference_sweeps"):
        if getattr(config, name) < 1:
            raise ConfigError(f"{name} must be >= 1")
    if config.epsilon is not None and config.epsilon < 0:
        raise ConfigError(f"epsilon must be >= 0, got {config.epsilon!r}")
    if config.sigma <= 0:
        raise ConfigError(f"sigma must be > 0, got {config.sigma!r}")
    if config.omega is not None and not 0.0 <= config.omega <= 1.0:
        raise ConfigError(f"omega must be in [0, 1], got {config.omega!r}")
    if config.correction_order not in (1, 2, 3):
        raise ConfigError("correction_order must be 1, 2 or 3")
    if config.reference not in ("exact", "fine", "auto"):
        raise ConfigError(
            f"reference must be exact|fine|auto, got {config.reference!r}")
    if not 0.0 < config.delta < 1.0:
        raise ConfigError(f"delta must lie in (0, 1), got {config.delta!r}")
    # construct once to surface grid/problem parameter errors now
    config.build_problem()
    config.scheme_spec()
    eps = _effective_eps(config)
    if command == "defect":
        if eps <= 0.0:
            raise ConfigError("defect study needs a stochastic problem "
                              "(epsilon > 0)")
        return
    if config.reference == "exact":
        if config.problem not in (ProblemKind.DETERMINISTIC_NLS,
                                  ProblemKind.STOCHASTIC_NLS):
            raise ConfigError(
                "reference = exact requires a soliton problem kind")
        if eps != 0.0:
            raise ConfigError(
                "reference = exact requires epsilon = 0; use reference = fine")
    if eps > 0.0 and config.scheme in (Scheme.WEIGHTED_ITER_1,
                                       Scheme.WEIGHTED_ITER_2):
        raise ConfigError(
            f"{config.scheme.value} is deterministic-only; set epsilon = 0")
    if eps > 0.0:
        n_ref = config.n_steps[-1] * config.reference_refinement
        for n in config.n_steps:
            if n_ref % n:
                raise ConfigError(
                    f"step count {n} does not divide the reference count {n_ref}; "
                    "adjust n_steps or reference_refinement")


@dataclass(frozen=True)
class RunRow:
    """One CSV row; None renders as an empty field."""

    run_id: str
    scheme: str
    m: int | None = None
    omega: float | None = None
    dt: float | None = None
    dx: float | None = None
    seed: int | None = None
    path_id: int | None = None
    l2_error: float | None = None
    mean_error: float | None = None
    mass_drift: float | None = None
    defect: float | None = None
    order_fit: float | None = None

    def render(self) -> str:
        cells = []
        for col in CSV_COLUMNS:
            val = getattr(self, col)
            if val is None:
                cells.append("")
            elif isinstance(val, float):
                cells.append(repr(float(val)))
            else:
                cells.append(str(val))
        return ",".join(cells)


@dataclass(frozen=True, eq=False)
class RunResult:
    """Everything one command produced: rows, summary, rendered outputs."""

    command: str
    rows: list
    summary: dict
    csv_text: str
    svgs: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)


def _render_csv(rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        buf.write(row.render() + "\n")
    return buf.getvalue()


def run_experiment(config: RunConfig, command: str = "run") -> RunResult:
    """Execute one command for a validated config and render its outputs.

    Numerical blowups (non-finite states) are reported as rows with empty
    error fields plus a warning; they do not abort the remaining runs.
    """
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    if command == "defect":
        return _defect_study(config, command)
    return _error_study(config, command)


# ---------------------------------------------------------------------------
# error / convergence studies


def _reference_state(config, problem, master_path):
    if config.reference == "exact":
        return soliton_state(problem.grid, config.t_end)
    n_ref = config.n_steps[-1] * config.reference_refinement
    traj = integrate(problem, config.reference_spec(), config.t_end, n_ref,
                     path=master_path, snapshot_stride=n_ref)
    return traj.final


def _one_member(config, problem, command, path_index):
    """All per-level results for one ensemble member (or the single
    deterministic run when eps = 0)."""
    eps = problem.eps
    t_end = config.t_end
    master = None
    if eps > 0.0:
        n_master = config.n_steps[-1] * config.reference_refinement * config.substeps
        master = sample_path(n_master, t_end / n_master, config.seed,
                             path_index=path_index)
    ref = _reference_state(config, problem, master)
    ic = initial_condition(problem)
    m0 = mass(ic, problem.grid.dx)
    spec = config.scheme_spec()
    out = []
    for n in config.n_steps:
        dt = t_end / n
        level_path = None
        if master is not None:
            level_path = coarsen(master, master.n_steps // (n * config.substeps))
        run_id = f"{command}-{config.scheme.value}-n{n}-p{path_index}"
        try:
            traj = integrate(problem, spec, t_end, n, path=level_path,
                             snapshot_stride=max(config.snapshot_stride, 1))
            rep = error_report(ref, traj.final, problem.grid.dx, dt=dt,
                               scheme=config.scheme.value)
            drift = abs(mass(traj.final, problem.grid.dx) - m0) / m0
            out.append((n, run_id, rep, drift, traj.final, None))
        except BlowupError as exc:
            out.append((n, run_id, None, None, None, str(exc)))
    return ref, out


def _error_study(config: RunConfig, command: str) -> RunResult:
    problem = config.build_problem()
    warnings = []
    members = list(range(config.ensemble))
    if problem.eps == 0.0 and config.ensemble > 1:
        warnings.append("deterministic problem: ensemble reduced to one member")
        members = [0]

    if config.workers > 1 and len(members) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(
                lambda p: _one_member(config, problem, command, p), members))
    else:
        results = [_one_member(config, problem, command, p) for p in members]
    ref0 = results[0][0]
    results = [member for _, member in results]

    rows = []
    finest_state = None
    per_level_l2: dict = {n: [] for n in config.n_steps}
    per_level_mean: dict = {n: [] for n in config.n_steps}
    defects = _level_defects(config, problem) if config.measure_defect else {}
    for path_index, member in zip(members, results):
        for n, run_id, rep, drift, final, blowup in member:
            if blowup is not None:
                warnings.append(f"{run_id}: {blowup}")
                rows.append(RunRow(
                    run_id=run_id, scheme=config.scheme.value, m=config.sweeps,
                    omega=config.omega, dt=config.t_end / n, dx=problem.grid.dx,
                    seed=config.seed, path_id=path_index))
                continue
            per_level_l2[n].append(rep.l2_error)
            per_level_mean[n].append(rep.mean_abs_error)
            if n == config.n_steps[-1]:
                finest_state = final
            rows.append(RunRow(
                run_id=run_id, scheme=config.scheme.value, m=config.sweeps,
                omega=config.omega, dt=rep.dt, dx=rep.dx, seed=config.seed,
                path_id=path_index, l2_error=rep.l2_error,
                mean_error=rep.mean_abs_error, mass_drift=drift,
                defect=defects.get(n)))

    dts = [config.t_end / n for n in config.n_steps]
    mean_l2 = [mean_error(per_level_l2[n]) if per_level_l2[n] else float("nan")
               for n in config.n_steps]
    mean_abs = [mean_error(per_level_mean[n]) if per_level_mean[n] else float("nan")
                for n in config.n_steps]
    order = None
    if len(config.n_steps) >= 3 and all(np.isfinite(mean_l2)) and all(
            v > 0 for v in mean_l2):
        try:
            order = convergence_order(mean_l2, dts)
        except ParameterError:
            order = None
    rows.append(RunRow(
        run_id="summary", scheme=config.scheme.value, m=config.sweeps,
        omega=config.omega, dx=problem.grid.dx, seed=config.seed,
        l2_error=mean_l2[-1] if mean_l2 else None,
        mean_error=mean_abs[-1] if mean_abs else None,
        order_fit=order))

    svgs = {}
    finite = [(d, v) for d, v in zip(dts, mean_l2) if np.isfinite(v) and v > 0]
    if finite:
        svgs["error_vs_dt"] = svgplot.line_plot(
            [(config.scheme.value, [d for d, _ in finite], [v for _, v in finite])],
            title=f"{command}: L2 error vs dt ({config.problem.value})",
            xlabel="dt", ylabel="L2 error", logx=True, logy=True)
    if finest_state is not None:
        x = problem.grid.points()
        svgs["modulus_snapshot"] = svgplot.line_plot(
            [("reference", x, modulus(ref0)),
             (config.scheme.value, x, modulus(finest_state))],
            title=f"|u| at t = {config.t_end!r}",
            xlabel="x", ylabel="|u|")

    summary = {
        "command": command,
        "problem": config.problem.value,
        "scheme": config.scheme.value,
        "sweeps": config.sweeps,
        "reference": config.reference,
        "n_steps": list(config.n_steps),
        "dt": dts,
        "mean_l2_error": mean_l2,
        "mean_abs_error": mean_abs,
        "order_fit": order,
        "ensemble": len(members),
        "seed": config.seed,
    }
    return RunResult(command=command, rows=rows, summary=summary,
                     csv_text=_render_csv(rows), svgs=svgs, warnings=warnings)


def _level_defects(config: RunConfig, problem) -> dict:
    """One-step symplectic defect per level via a finite-difference Jacobian
    of the configured scheme at the initial state (path-0 noise increments
    where stochastic).  Opt-in: costs 4M step evaluations per level."""
    ic = initial_condition(problem)
    spec = config.scheme_spec()

    def one_step(prob, state, dt, dw):
        if spec.scheme is Scheme.LIE:
            return step_lie(prob, state, dt, dw)
        if spec.scheme is Scheme.STRANG:
            return step_strang(prob, state, dt, dw)
        if spec.scheme is Scheme.ITERATIVE_STOCHASTIC:
            sub = dw if isinstance(dw, WienerPath) else None
            return step_iterative_stochastic(prob, state, dt, sub, spec.sweeps)
        if spec.scheme is Scheme.WEIGHTED_ITER_1:
            return step_weighted1(prob, state, dt, spec.omega,
                                  spec.correction_order)
        return step_weighted2(prob, state, dt, spec.omega, spec.sweeps)

    out = {}
    for n in config.n_steps:
        dt = config.t_end / n
        dw = 0.0
        if problem.eps > 0:
            sub = sample_path(config.substeps, dt / config.substeps,
                              config.seed, path_index=0)
            dw = sub if spec.scheme is Scheme.ITERATIVE_STOCHASTIC else float(
                np.sum(sub.increments))
        out[n] = symplectic_defect(flow_jacobian(one_step, problem, ic, dt, dw))
    return out


# ---------------------------------------------------------------------------
# symplectic defect scaling study


def _defect_study(config: RunConfig, command: str) -> RunResult:
    problem = config.build_problem()
    if problem.eps <= 0.0:
        raise ConfigError("defect study needs a stochastic problem (epsilon > 0)")
    ic = initial_condition(problem)
    ops = build_operators(problem, ic)
    a4, a3 = ops.a4, ops.a3
    dts = [config.t_end / n for n in config.n_steps]
    rows = []
    medians = []
    for n, dt in zip(config.n_steps, dts):
        defs = []
        for p in range(config.ensemble):
            sub = sample_path(config.substeps, dt / config.substeps,
                              config.seed, path_index=p)
            d = symplectic_defect(iterative_propagator(a4, a3, sub, config.sweeps))
            defs.append(d)
            rows.append(RunRow(
                run_id=f"defect-n{n}-p{p}", scheme=Scheme.ITERATIVE_STOCHASTIC.value,
                m=config.sweeps, omega=config.omega, dt=dt, dx=problem.grid.dx,
                seed=config.seed, path_id=p, defect=d))
        medians.append(float(np.median(defs)))
    slope = None
    c_fit = float("nan")
    if len(dts) >= 3 and all(v > 0 for v in medians):
        slope = convergence_order(medians, dts)
        logc = np.mean(np.log(medians) - slope * np.log(dts))
        c_fit = float(np.exp(logc))
    norm_b = spectral_norm(a3)
    k1 = norm_b ** (config.sweeps + 1)
    budget = SymplecticBudget(
        delta=config.delta, m=config.sweeps, k1=k1,
        tau_bound=(config.delta / k1) ** 2,
        measured_defect=medians[-1], c_fit=c_fit)
    rows.append(RunRow(
        run_id="summary", scheme=Scheme.ITERATIVE_STOCHASTIC.value,
        m=config.sweeps, omega=config.omega, dx=problem.grid.dx,
        seed=config.seed, defect=medians[-1], order_fit=slope))
    svgs = {
        "defect_vs_dt": svgplot.line_plot(
            [(f"m={config.sweeps}", dts, medians)],
            title="one-step symplectic defect vs dt (median)",
            xlabel="dt", ylabel="defect", logx=True, logy=True),
    }
    summary = {
        "command": command,
        "problem": config.problem.value,
        "sweeps": config.sweeps,
        "n_steps": list(config.n_steps),
        "dt": dts,
        "median_defect": medians,
        "slope_fit": slope,
        "c_fit": c_fit,
        "noise_norm": norm_b,
        "budget": {
            "delta": budget.delta, "m": budget.m, "k1": budget.k1,
            "tau_bound": budget.tau_bound,
            "measured_defect": budget.measured_defect,
        },
        "ensemble": config.ensemble,
        "seed": config.seed,
    }
    return RunResult(command=command, rows=rows, summary=summary,
                     csv_text=_render_csv(rows), svgs=svgs, warnings=[])


# ---------------------------------------------------------------------------
# file emission


def write_outputs(result: RunResult, out_dir) -> list:
    """Write the CSV (and any SVG plots) under ``out_dir``; returns paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    csv_path = out / f"{result.command}_runs.csv"
    csv_path.write_text(result.csv_text)
    paths.append(csv_path)
    for name, text in sorted(result.svgs.items()):
        svg_path = out / f"{name}.svg"
        svg_path.write_text(text)
        paths.append(svg_path)
    return paths
