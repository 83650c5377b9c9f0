"""Least-squares identification of Jeffreys-model parameters from FRF data.

The objective sums squared magnitude errors in dB and squared phase errors
in degrees with equal weight; phases are unwrapped continuously across the
sweep before differencing. Minimization uses a derivative-free simplex
search over a transformed parameter space (log for the positive gains and
time constants, a logit map onto (0, 2) for the shared fractional order)
with the lambda2 > lambda1 constraint enforced by penalty.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .model import FoJeffreysParams, freq_response, validate

__all__ = [
    "FitConfig",
    "FitNonConvergenceError",
    "FitResult",
    "FrfDataset",
    "ResidualReport",
    "fit",
    "objective",
    "residual_report",
]

_PENALTY_SCALE = 1.0e8
_BAD_OBJECTIVE = 1.0e30


class FitNonConvergenceError(RuntimeError):
    """Raised when no restart converges; carries the best incumbent."""

    def __init__(self, result: "FitResult"):
        self.result = result
        super().__init__(
            "no restart converged within the iteration budget "
            f"(best objective {result.objective:.6g})"
        )


@dataclass(frozen=True)
class FrfDataset:
    """Measured or synthetic frequency-response points.

    Attributes
    ----------
    frequencies_hz : np.ndarray
        Strictly increasing positive frequencies, at least four points.
    gains : np.ndarray
        Complex gains, finite and non-zero.
    """

    frequencies_hz: np.ndarray
    gains: np.ndarray

    def __post_init__(self) -> None:
        freqs = np.asarray(self.frequencies_hz, dtype=float)
        gains = np.asarray(self.gains, dtype=complex)
        if freqs.ndim != 1 or gains.shape != freqs.shape:
            raise ValueError("frequencies and gains must be matching 1-d arrays")
        if freqs.size < 4:
            raise ValueError(f"at least 4 FRF points are required, got {freqs.size}")
        if not np.all(np.isfinite(freqs)) or np.any(freqs <= 0.0):
            raise ValueError("frequencies must be finite and positive")
        if np.any(np.diff(freqs) <= 0.0):
            raise ValueError("frequencies must be strictly increasing")
        if not np.all(np.isfinite(gains)) or np.any(gains == 0.0):
            raise ValueError("gains must be finite and non-zero")
        freqs = freqs.copy()
        gains = gains.copy()
        freqs.flags.writeable = False
        gains.flags.writeable = False
        object.__setattr__(self, "frequencies_hz", freqs)
        object.__setattr__(self, "gains", gains)

    def __len__(self) -> int:
        return len(self.frequencies_hz)

    @property
    def omega(self) -> np.ndarray:
        """Angular frequencies in rad/s."""
        return 2.0 * math.pi * self.frequencies_hz

    @property
    def magnitude_db(self) -> np.ndarray:
        return 20.0 * np.log10(np.abs(self.gains))

    @property
    def phase_deg_unwrapped(self) -> np.ndarray:
        """Phase in degrees, unwrapped continuously across the sweep."""
        return np.degrees(np.unwrap(np.angle(self.gains)))


@dataclass(frozen=True)
class FitConfig:
    """Settings of one identification run.

    ``model_class`` selects the fractional-order fit ("FO": shared order
    alpha = beta estimated, gamma pinned to 1) or the integer-order
    comparison ("IO": alpha = beta = gamma = 1). ``multistart`` counts
    randomized restarts of the simplex search; restart 0 always starts from
    the supplied (or heuristic) initial guess.
    """

    model_class: str = "FO"
    initial_guess: FoJeffreysParams | None = None
    max_iterations: int = 5000
    tolerance: float = 1.0e-12
    multistart: int = 3
    seed: int = 0
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.model_class not in ("FO", "IO"):
            raise ValueError(f"model_class must be 'FO' or 'IO', got {self.model_class!r}")
        if int(self.max_iterations) < 1:
            raise ValueError("max_iterations must be >= 1")
        if not float(self.tolerance) > 0.0:
            raise ValueError("tolerance must be positive")
        if int(self.multistart) < 1:
            raise ValueError("multistart must be >= 1")
        if int(self.jobs) < 1:
            raise ValueError("jobs must be >= 1")


@dataclass(frozen=True)
class FitResult:
    """Identified parameters with convergence diagnostics.

    ``objective`` equals the sum of squared per-point residuals
    (dB^2 + deg^2). ``converged`` reports whether the winning restart met
    the improvement tolerance before exhausting its iteration budget.
    """

    params: FoJeffreysParams
    objective: float
    iterations: int
    converged: bool
    per_point_residuals: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        residuals = np.asarray(self.per_point_residuals, dtype=float)
        residuals.flags.writeable = False
        object.__setattr__(self, "per_point_residuals", residuals)


@dataclass(frozen=True)
class ResidualReport:
    """Per-frequency comparison of measured and modeled response."""

    frequency_hz: np.ndarray
    measured_db: np.ndarray
    measured_deg: np.ndarray
    model_db: np.ndarray
    model_deg: np.ndarray
    residual_db: np.ndarray
    residual_deg: np.ndarray

    @property
    def sum_squared(self) -> float:
        return float(np.sum(self.residual_db**2) + np.sum(self.residual_deg**2))


def _model_response_db_deg(
    params: FoJeffreysParams, data: FrfDataset
) -> tuple[np.ndarray, np.ndarray]:
    gains = freq_response(params, data.omega)
    db = 20.0 * np.log10(np.abs(gains))
    deg = np.degrees(np.unwrap(np.angle(gains)))
    return db, deg


def _aligned_phase(model_deg: np.ndarray, data_deg: np.ndarray) -> np.ndarray:
    # Both phases are already continuous; align the 360-degree branch at the
    # first point so the difference is branch-independent.
    return model_deg - 360.0 * round((model_deg[0] - data_deg[0]) / 360.0)


def _residual_arrays(
    params: FoJeffreysParams, data: FrfDataset
) -> tuple[np.ndarray, np.ndarray]:
    model_db, model_deg = _model_response_db_deg(params, data)
    data_db = data.magnitude_db
    data_deg = data.phase_deg_unwrapped
    model_deg = _aligned_phase(model_deg, data_deg)
    return model_db - data_db, model_deg - data_deg


def objective(params: FoJeffreysParams, data: FrfDataset) -> float:
    """Equal-weight dB/degree squared-error objective.

    Sums ``(model_dB - data_dB)^2 + (model_deg - data_deg)^2`` over all
    points, with both phase curves unwrapped across the sweep before
    differencing.
    """
    res_db, res_deg = _residual_arrays(params, data)
    return float(np.sum(res_db**2) + np.sum(res_deg**2))


def residual_report(result: FitResult, data: FrfDataset) -> ResidualReport:
    """Tabulate measured vs modeled response for every frequency.

    The sum of squared residuals reproduces ``result.objective`` to
    round-off.
    """
    model_db, model_deg = _model_response_db_deg(result.params, data)
    data_deg = data.phase_deg_unwrapped
    model_deg = _aligned_phase(model_deg, data_deg)
    data_db = data.magnitude_db
    return ResidualReport(
        frequency_hz=data.frequencies_hz.copy(),
        measured_db=data_db,
        measured_deg=data_deg,
        model_db=model_db,
        model_deg=model_deg,
        residual_db=model_db - data_db,
        residual_deg=model_deg - data_deg,
    )


def _default_initial_guess(data: FrfDataset, model_class: str) -> FoJeffreysParams:
    # Heuristic from the asymptote structure: the low-frequency magnitude is
    # dominated by the free integrator, and the lag corner sits mid-band.
    omega0 = data.omega[0]
    mu = 1.0 / (abs(data.gains[0]) * omega0)
    f_mid = math.sqrt(data.frequencies_hz[0] * data.frequencies_hz[-1])
    lambda2 = 1.0 / (2.0 * math.pi * f_mid)
    lambda1 = lambda2 / 3.0
    alpha = 1.5 if model_class == "FO" else 1.0
    return FoJeffreysParams(
        mu=mu, lambda1=lambda1, lambda2=lambda2, alpha=alpha, beta=alpha, gamma=1.0
    )


def _pack(params: FoJeffreysParams, model_class: str) -> np.ndarray:
    u = [math.log(params.mu), math.log(params.lambda1), math.log(params.lambda2)]
    if model_class == "FO":
        alpha = min(max(params.alpha, 1e-6), 2.0 - 1e-6)
        u.append(math.log(alpha / (2.0 - alpha)))
    return np.array(u)


def _unpack(u: np.ndarray, model_class: str) -> FoJeffreysParams | None:
    try:
        mu, lambda1, lambda2 = (math.exp(v) for v in u[:3])
        if model_class == "FO":
            alpha = 2.0 / (1.0 + math.exp(-u[3]))
        else:
            alpha = 1.0
        return FoJeffreysParams(
            mu=mu, lambda1=lambda1, lambda2=lambda2, alpha=alpha, beta=alpha, gamma=1.0
        )
    except (OverflowError, ValueError):
        return None


def _penalized_objective(u: np.ndarray, data: FrfDataset, model_class: str) -> float:
    params = _unpack(u, model_class)
    if params is None:
        return _BAD_OBJECTIVE
    violation = max(0.0, float(u[1] - u[2]))  # log(lambda1) - log(lambda2)
    penalty = _PENALTY_SCALE * violation * (1.0 + violation)
    try:
        value = objective(params, data)
    except (OverflowError, FloatingPointError):
        return _BAD_OBJECTIVE
    if not math.isfinite(value):
        return _BAD_OBJECTIVE
    return value + penalty


def _enforce_feasible(params: FoJeffreysParams) -> FoJeffreysParams:
    if params.lambda2 > params.lambda1:
        return params
    # On-boundary iterates can only arise at lambda1 ~ lambda2; open the gap
    # by a relative epsilon so constrained validation always passes.
    lambda2 = max(params.lambda1, params.lambda2) * (1.0 + 1.0e-9)
    lambda1 = min(params.lambda1, params.lambda2) * (1.0 - 1.0e-9)
    return FoJeffreysParams(
        mu=params.mu,
        lambda1=lambda1,
        lambda2=lambda2,
        alpha=params.alpha,
        beta=params.beta,
        gamma=params.gamma,
    )


@dataclass
class _RestartOutcome:
    index: int
    params: FoJeffreysParams
    objective: float
    iterations: int
    converged: bool
    incumbent_trace: list[float]


def _run_restart(
    index: int,
    u0: np.ndarray,
    data: FrfDataset,
    config: FitConfig,
) -> _RestartOutcome:
    trace: list[float] = []

    def fun(u: np.ndarray) -> float:
        value = _penalized_objective(u, data, config.model_class)
        trace.append(min(value, trace[-1]) if trace else value)
        return value

    res = minimize(
        fun,
        u0,
        method="Nelder-Mead",
        options={
            "maxiter": int(config.max_iterations),
            "maxfev": 50 * int(config.max_iterations),
            "xatol": 1.0e-10,
            "fatol": float(config.tolerance),
        },
    )
    params = _unpack(np.asarray(res.x, dtype=float), config.model_class)
    if params is None:
        params = _enforce_feasible(_default_initial_guess(data, config.model_class))
    params = _enforce_feasible(params)
    return _RestartOutcome(
        index=index,
        params=params,
        objective=objective(params, data),
        iterations=int(res.nit),
        converged=bool(res.success),
        incumbent_trace=trace,
    )


def fit(data: FrfDataset, config: FitConfig | None = None) -> FitResult:
    """Identify model parameters from an FRF dataset.

    Runs ``config.multistart`` simplex searches (the first from the supplied
    or heuristic initial guess, the rest from deterministic seeded
    perturbations of it) and returns the best feasible outcome. Returned
    parameters always satisfy the constrained-mode validation of the FO
    class.

    Raises
    ------
    FitNonConvergenceError
        If no restart converged; the exception carries the best incumbent
        ``FitResult``.
    """
    if config is None:
        config = FitConfig()
    guess = config.initial_guess or _default_initial_guess(data, config.model_class)
    u0 = _pack(guess, config.model_class)

    rng = np.random.default_rng(config.seed)
    starts = [u0]
    for _ in range(config.multistart - 1):
        starts.append(u0 + rng.uniform(-0.3, 0.3, size=u0.shape))

    if config.jobs > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            outcomes = list(
                pool.map(
                    lambda iu: _run_restart(iu[0], iu[1], data, config),
                    enumerate(starts),
                )
            )
    else:
        outcomes = [
            _run_restart(i, start, data, config) for i, start in enumerate(starts)
        ]

    best = min(outcomes, key=lambda o: (o.objective, o.index))
    res_db, res_deg = _residual_arrays(best.params, data)
    result = FitResult(
        params=best.params,
        objective=float(np.sum(res_db**2) + np.sum(res_deg**2)),
        iterations=best.iterations,
        converged=best.converged,
        per_point_residuals=np.column_stack([res_db, res_deg]),
    )
    assert not validate(result.params, "constrained")
    if not any(o.converged for o in outcomes):
        raise FitNonConvergenceError(result)
    return result
