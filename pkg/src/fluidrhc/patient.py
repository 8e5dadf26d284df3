"""Virtual hemorrhage patient: lumped-parameter blood volume response.

The state is the normalized blood volume change y(t) = dV(t) / V_B0, which
responds to the net fluid input (infusion u minus hemorrhage v, both in
mL/min) through a first-order linear ODE:

    dy/dt + K * y = (u - v)/V_B0 + K*(u - v) / (V_B0 * (1 + alpha))

K is the rate of fluid shift between the intravascular and interstitial
compartments (1/min), alpha a dimensionless physiological constant, and
V_B0 the initial blood volume in mL. For piecewise-constant inputs the ODE
has a closed-form advance (step_exact); an RK4 integrator is included purely
for cross-validation.

Measurements return absolute volume V_B0 * (1 + y) plus bounded noise drawn
from a seeded numpy PCG64 generator. "Maximum amplitude" noise is uniform on
the closed interval [-amplitude, +amplitude] by default; a truncated-Gaussian
variant (sigma = amplitude/2, rejection-sampled to the same bounds) is
available behind config.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

#: Documented default parameter values; every experiment records the values used.
DEFAULT_V_B0_ML = 3940.0
DEFAULT_K_SHIFT_PER_MIN = 0.1
DEFAULT_ALPHA = 2.0
DEFAULT_WEIGHT_KG = 70.0


@dataclass(frozen=True)
class PatientParams:
    """Plant parameters. Units: mL, minutes, kg."""

    v_b0: float = DEFAULT_V_B0_ML
    k_shift: float = DEFAULT_K_SHIFT_PER_MIN
    alpha: float = DEFAULT_ALPHA
    weight_kg: float = DEFAULT_WEIGHT_KG

    def __post_init__(self):
        if not (np.isfinite(self.v_b0) and self.v_b0 > 0.0):
            raise ValueError(f"v_b0 must be > 0, got {self.v_b0}")
        if not (np.isfinite(self.k_shift) and self.k_shift > 0.0):
            raise ValueError(f"k_shift must be > 0, got {self.k_shift}")
        if not (np.isfinite(self.alpha) and self.alpha > -1.0):
            raise ValueError(f"alpha must be > -1, got {self.alpha}")
        if not (np.isfinite(self.weight_kg) and self.weight_kg > 0.0):
            raise ValueError(f"weight_kg must be > 0, got {self.weight_kg}")

    @property
    def input_gain(self) -> float:
        """Coefficient of the net input (u - v) in dy/dt, per mL."""
        return (1.0 + self.k_shift / (1.0 + self.alpha)) / self.v_b0


@dataclass(frozen=True)
class PatientState:
    """Normalized volume change and elapsed time."""

    v_tilde: float
    t: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.v_tilde) or self.v_tilde < -1.0:
            raise ValueError(f"v_tilde must be finite and >= -1, got {self.v_tilde}")
        if not np.isfinite(self.t) or self.t < 0.0:
            raise ValueError(f"t must be finite and >= 0, got {self.t}")


@dataclass(frozen=True)
class NoiseModel:
    """Bounded measurement noise. amplitude_ml = 0 disables noise."""

    amplitude_ml: float = 0.0
    seed: int = 0
    distribution: str = "uniform"  # or "truncated_gaussian"

    def __post_init__(self):
        if not np.isfinite(self.amplitude_ml) or self.amplitude_ml < 0.0:
            raise ValueError(f"amplitude_ml must be >= 0, got {self.amplitude_ml}")
        if self.distribution not in ("uniform", "truncated_gaussian"):
            raise ValueError(f"unknown noise distribution {self.distribution!r}")

    def make_rng(self) -> np.random.Generator:
        """Fresh PCG64 stream for this model's seed."""
        return np.random.default_rng(self.seed)


def rhs(params: PatientParams, v_tilde: float, u: float, v: float = 0.0) -> float:
    """Time derivative dy/dt for infusion u and hemorrhage v (both mL/min).

    Inputs must be nonnegative rates; the plant is linear time-invariant in
    the net input (u - v).
    """
    if u < 0.0 or v < 0.0:
        raise ValueError(f"rates must be nonnegative, got u={u}, v={v}")
    return params.input_gain * (u - v) - params.k_shift * v_tilde


def absolute_volume(params: PatientParams, v_tilde: float) -> float:
    """Absolute blood volume in mL for a normalized state."""
    return params.v_b0 * (1.0 + v_tilde)


def step_exact(
    params: PatientParams, state: PatientState, u: float, v: float, dt: float
) -> PatientState:
    """Advance one interval with constant inputs using the closed-form solution.

    y(t + dt) = c/K + (y(t) - c/K) * exp(-K dt), c = input_gain * (u - v).
    Exact for piecewise-constant inputs, any dt > 0.
    """
    if dt <= 0.0 or not np.isfinite(dt):
        raise ValueError(f"dt must be > 0, got {dt}")
    if u < 0.0 or v < 0.0:
        raise ValueError(f"rates must be nonnegative, got u={u}, v={v}")
    k = params.k_shift
    y_inf = params.input_gain * (u - v) / k
    y_next = y_inf + (state.v_tilde - y_inf) * np.exp(-k * dt)
    return PatientState(v_tilde=float(y_next), t=state.t + dt)


def _step_rk4(
    params: PatientParams, y: float, u: float, v: float, dt: float, substep: float
) -> float:
    n_sub = max(1, int(round(dt / substep)))
    h = dt / n_sub
    k_shift = params.k_shift
    gain = params.input_gain
    c = gain * (u - v)
    for _ in range(n_sub):
        k1 = c - k_shift * y
        k2 = c - k_shift * (y + 0.5 * h * k1)
        k3 = c - k_shift * (y + 0.5 * h * k2)
        k4 = c - k_shift * (y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


@dataclass(frozen=True)
class Schedule:
    """Piecewise-constant input schedule: values[i] holds on [times[i], times[i+1]).

    The first breakpoint must be 0 and the last value holds indefinitely, so
    a schedule always covers [0, inf). Times are minutes, values mL/min.
    """

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.atleast_1d(np.asarray(self.times, dtype=float))
        values = np.atleast_1d(np.asarray(self.values, dtype=float))
        if times.shape != values.shape or times.ndim != 1 or times.size == 0:
            raise ConfigError("schedule times and values must be matching 1-D arrays")
        if times[0] != 0.0:
            raise ConfigError(f"schedule gap: first breakpoint must be 0, got {times[0]}")
        if times.size > 1 and np.any(np.diff(times) <= 0.0):
            raise ConfigError("schedule breakpoints must be strictly increasing")
        if not np.all(np.isfinite(values)) or np.any(values < 0.0):
            raise ConfigError("schedule values must be finite and nonnegative")
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, value: float) -> "Schedule":
        return cls(times=np.zeros(1), values=np.array([float(value)]))

    def value_at(self, t: float) -> float:
        if t < self.times[0]:
            raise ConfigError(f"schedule gap: no value defined at t={t}")
        idx = int(np.searchsorted(self.times, t, side="right")) - 1
        return float(self.values[idx])


def simulate(
    params: PatientParams,
    y0: float,
    infusion: Schedule,
    hemorrhage: Schedule,
    dt: float,
    horizon: float,
    method: str = "exact",
    rk4_dt: float = 0.01,
) -> list[PatientState]:
    """Simulate the plant over [0, horizon] on a fixed dt grid.

    Inputs are sampled at each interval start (schedule breakpoints should
    align with the dt grid). Returns horizon/dt + 1 states including t = 0.
    method "exact" chains the closed-form step; "rk4" integrates each
    interval with classical RK4 substeps of size rk4_dt for cross-validation.
    """
    if dt <= 0.0 or horizon <= 0.0:
        raise ValueError("dt and horizon must be > 0")
    n_steps = int(round(horizon / dt))
    if abs(n_steps * dt - horizon) > 1e-9 * max(1.0, horizon):
        raise ValueError("horizon must be an integer multiple of dt")
    if method not in ("exact", "rk4"):
        raise ValueError(f"unknown integration method {method!r}")

    state = PatientState(v_tilde=y0, t=0.0)
    out = [state]
    for i in range(n_steps):
        t = i * dt
        u = infusion.value_at(t)
        v = hemorrhage.value_at(t)
        if method == "exact":
            state = step_exact(params, state, u, v, dt)
        else:
            y = _step_rk4(params, state.v_tilde, u, v, dt, rk4_dt)
            state = PatientState(v_tilde=float(y), t=state.t + dt)
        out.append(state)
    return out


def measure(
    state: PatientState,
    params: PatientParams,
    noise: NoiseModel,
    rng: np.random.Generator,
) -> float:
    """Measured absolute blood volume in mL, with bounded noise.

    Draws nothing when the amplitude is 0. The generator is the caller's
    cursor: identical seed and call sequence give identical measurements.
    """
    truth = absolute_volume(params, state.v_tilde)
    amp = noise.amplitude_ml
    if amp == 0.0:
        return truth
    if noise.distribution == "uniform":
        eta = rng.uniform(-amp, amp)
    else:
        sigma = 0.5 * amp
        eta = rng.normal(0.0, sigma)
        while abs(eta) > amp:
            eta = rng.normal(0.0, sigma)
    return truth + float(eta)
