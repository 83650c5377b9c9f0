"""Time-domain solution of the fractional-order Jeffreys dynamics.

The model is integrated once to isolate the displacement dynamics,

    mu*lambda2 * D^alpha x + mu * x = D^(-gamma) (lambda1 * D^beta tau + tau),

and discretized with Grunwald-Letnikov sums. Because the order-alpha weight
w_0 equals one, each step solves for x[k] in closed form; no iteration is
needed. Both x and tau carry zero history before t = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fractional import TimeSeries, gl_weights
from .model import FoJeffreysParams

__all__ = [
    "SignalSpec",
    "SimulationDivergedError",
    "SimulationResult",
    "classify_late_trend",
    "generate_signal",
    "impulse_final_value",
    "simulate",
    "steady_state_sine_gain",
]

_SIGNAL_KINDS = ("impulse", "step", "slope", "sine")


class SimulationDivergedError(RuntimeError):
    """Raised when the recursion produces a non-finite or runaway sample."""

    def __init__(self, sample_index: int, message: str | None = None):
        self.sample_index = int(sample_index)
        super().__init__(
            message or f"simulation diverged at sample index {sample_index}"
        )


@dataclass(frozen=True)
class SignalSpec:
    """Description of a sampled excitation signal.

    ``kind`` selects the shape:

    - ``impulse``: unit-area pulse of area ``area`` (first sample area/step)
    - ``step``: constant ``amplitude`` from t = 0
    - ``slope``: ramp ``rate * t``
    - ``sine``: ``amplitude * sin(2*pi*frequency*t)``

    ``duration`` and ``step`` fix the grid t = 0, h, ..., so the sample
    count is floor(duration/step) + 1. At least ten samples per record are
    recommended for simulation use.
    """

    kind: str
    duration: float
    step: float
    area: float | None = None
    amplitude: float | None = None
    rate: float | None = None
    frequency: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in _SIGNAL_KINDS:
            raise ValueError(
                f"signal kind must be one of {_SIGNAL_KINDS}, got {self.kind!r}"
            )
        for name in ("duration", "step"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be positive, got {value}")
            object.__setattr__(self, name, value)
        if self.step > self.duration:
            raise ValueError(
                f"step {self.step} exceeds duration {self.duration}"
            )
        required = {
            "impulse": ("area",),
            "step": ("amplitude",),
            "slope": ("rate",),
            "sine": ("amplitude", "frequency"),
        }[self.kind]
        for name in required:
            value = getattr(self, name)
            if value is None or not math.isfinite(float(value)):
                raise ValueError(f"signal kind {self.kind!r} requires finite {name}")
            object.__setattr__(self, name, float(value))
        if self.kind == "sine" and self.frequency <= 0.0:
            raise ValueError(f"sine frequency must be positive, got {self.frequency}")

    @property
    def n_samples(self) -> int:
        return int(math.floor(self.duration / self.step + 1e-9)) + 1


@dataclass(frozen=True)
class SimulationResult:
    """Input/output pair of one simulation run."""

    input: TimeSeries
    output: TimeSeries
    params: FoJeffreysParams

    def __post_init__(self) -> None:
        if len(self.input) != len(self.output) or self.input.step != self.output.step:
            raise ValueError("input and output must share step and length")


def _gl_apply(samples: np.ndarray, order: float, step: float) -> np.ndarray:
    """Array-level differintegral without container validation."""
    if order == 0.0:
        return samples
    weights = gl_weights(order, len(samples) - 1).weights
    return np.convolve(samples, weights)[: len(samples)] * step ** (-order)


def generate_signal(spec: SignalSpec) -> TimeSeries:
    """Sample the excitation described by ``spec`` on its grid."""
    n = spec.n_samples
    t = np.arange(n) * spec.step
    if spec.kind == "impulse":
        samples = np.zeros(n)
        samples[0] = spec.area / spec.step
    elif spec.kind == "step":
        samples = np.full(n, spec.amplitude)
    elif spec.kind == "slope":
        samples = spec.rate * t
    else:
        samples = spec.amplitude * np.sin(2.0 * math.pi * spec.frequency * t)
    return TimeSeries(step=spec.step, samples=samples)


def simulate(
    params: FoJeffreysParams,
    input_series: TimeSeries,
    divergence_limit: float | None = None,
) -> SimulationResult:
    """Integrate the model response to a sampled force input.

    Parameters
    ----------
    params : FoJeffreysParams
        Model parameters (constrained or unconstrained).
    input_series : TimeSeries
        Force samples tau(t).
    divergence_limit : float, optional
        Absolute bound on the output; exceeding it raises
        :class:`SimulationDivergedError` instead of overflowing. Non-finite
        intermediates always raise.

    Returns
    -------
    SimulationResult
        Input and output sharing the input grid.
    """
    if not isinstance(input_series, TimeSeries):
        raise TypeError("simulate expects a TimeSeries input")
    tau = input_series
    h = tau.step
    n = len(tau)

    # Intermediate stages may overflow for extreme inputs; non-finite values
    # surface as a divergence error with the first affected sample index.
    with np.errstate(over="ignore", invalid="ignore"):
        d_beta = _gl_apply(tau.samples, params.beta, h)
        forcing = params.lambda1 * d_beta + tau.samples
        y = _gl_apply(forcing, -params.gamma, h)
    bad = np.flatnonzero(~np.isfinite(y))
    if bad.size:
        raise SimulationDivergedError(int(bad[0]))

    weights = gl_weights(params.alpha, n - 1).weights
    weights_rev = np.ascontiguousarray(weights[::-1])
    a = params.mu * params.lambda2 * h ** (-params.alpha)
    denom = a + params.mu

    x = np.empty(n)
    for k in range(n):
        # sum_{i=1..k} w_i * x[k-i] as a contiguous dot product
        history = weights_rev[n - 1 - k : n - 1] @ x[:k] if k else 0.0
        value = (y[k] - a * history) / denom
        if not math.isfinite(value):
            raise SimulationDivergedError(k)
        if divergence_limit is not None and abs(value) > divergence_limit:
            raise SimulationDivergedError(
                k,
                f"output magnitude exceeded {divergence_limit:g} "
                f"at sample index {k}",
            )
        x[k] = value

    return SimulationResult(
        input=tau, output=TimeSeries(step=h, samples=x), params=params
    )


def impulse_final_value(params: FoJeffreysParams, area: float) -> float:
    """Late-time limit of the response to an impulse of the given area.

    The integrator order decides the outcome: exactly ``area/mu`` for
    gamma = 1, zero for 0 < gamma < 1, and unbounded growth (returned as
    ``math.inf``) for gamma > 1.
    """
    area = float(area)
    if not math.isfinite(area):
        raise ValueError(f"impulse area must be finite, got {area}")
    if params.gamma == 1.0:
        return area / params.mu
    if params.gamma < 1.0:
        return 0.0
    return math.inf


def steady_state_sine_gain(
    params: FoJeffreysParams,
    frequency: float,
    cycles: int,
    step: float,
) -> tuple[float, float]:
    """Amplitude ratio and phase shift of the simulated steady-state response.

    Simulates ``cycles`` periods of a unit sine input, discards at least the
    first half of the record, and correlates the remaining whole cycles of
    both input and output against sine/cosine references at the excitation
    frequency.

    Returns
    -------
    (magnitude, phase_deg)
        Fundamental amplitude ratio and phase shift in degrees.
    """
    frequency = float(frequency)
    if not math.isfinite(frequency) or frequency <= 0.0:
        raise ValueError(f"frequency must be positive, got {frequency}")
    cycles = int(cycles)
    if cycles < 4:
        raise ValueError(f"at least 4 excitation cycles are required, got {cycles}")
    step = float(step)
    samples_per_cycle = 1.0 / (frequency * step)
    if samples_per_cycle < 100.0 - 1e-9:
        raise ValueError(
            "step too coarse: need at least 100 samples per cycle, got "
            f"{samples_per_cycle:.1f}"
        )

    spec = SignalSpec(
        kind="sine",
        duration=cycles / frequency,
        step=step,
        amplitude=1.0,
        frequency=frequency,
    )
    result = simulate(params, generate_signal(spec))

    window_cycles = cycles // 2
    window = int(round(window_cycles * samples_per_cycle))
    t = result.output.times[-window:]
    ref_sin = np.sin(2.0 * math.pi * frequency * t)
    ref_cos = np.cos(2.0 * math.pi * frequency * t)

    def _fundamental(samples: np.ndarray) -> tuple[float, float]:
        tail = samples[-window:]
        in_phase = 2.0 / window * float(tail @ ref_sin)
        quadrature = 2.0 / window * float(tail @ ref_cos)
        return math.hypot(in_phase, quadrature), math.atan2(quadrature, in_phase)

    amp_in, phase_in = _fundamental(result.input.samples)
    amp_out, phase_out = _fundamental(result.output.samples)
    phase = math.degrees(phase_out - phase_in)
    # Wrap into (-270, 90]: the model's phase lives below zero and may pass -180.
    phase -= 360.0 * round((phase + 90.0) / 360.0)
    return amp_out / amp_in, phase


def classify_late_trend(
    series: TimeSeries,
    fraction: float = 0.2,
    rate_threshold: float = 0.01,
) -> str:
    """Classify the late-time behaviour of a response magnitude.

    Fits a straight line to |x| over the trailing ``fraction`` of the record
    and compares the slope, normalized by the window mean and expressed per
    second, against ``rate_threshold``. Returns one of ``"decaying"``,
    ``"constant"`` or ``"growing"``.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    n = len(series)
    start = max(0, n - max(2, int(round(fraction * n))))
    t = series.times[start:]
    magnitude = np.abs(series.samples[start:])
    scale = float(np.mean(magnitude))
    if scale == 0.0:
        return "constant"
    slope = float(np.polyfit(t, magnitude, 1)[0])
    rate = slope / scale
    if rate > rate_threshold:
        return "growing"
    if rate < -rate_threshold:
        return "decaying"
    return "constant"
