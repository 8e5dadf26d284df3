"""Continuous-time optimal control problem container.

A problem is posed on the normalized time axis tau in [-1, 1]; the affine
map time_map carries tau to physical time t in [t0, tf]. Costs, dynamics,
and constraints are plain callables over per-point state/control vectors:

    objective   I(x(-1), t0, x(1), tf) + (tf - t0)/2 * integral of L(x, u)
    dynamics    dx/dtau = (tf - t0)/2 * f(x, u)   (f is stored unscaled)
    boundary    gamma(x(-1), t0, x(1), tf) = 0
    path        q(x, u) <= 0

The (tf - t0)/2 scaling is applied by the transcription, not stored here, so
one problem object can be reused across shrinking horizons. Final time is
fixed; it is never a decision variable.

Derivative callbacks (all optional) let the transcription assemble exact NLP
gradients; when absent, the solver falls back to finite differences:

    mayer_grad(x0, t0, xf, tf)  -> (dI/dx0, dI/dxf)           each (n,)
    lagrange_grad(x, u)         -> (dL/dx, dL/du)             (n,), (m,)
    dynamics_jac(x, u)          -> (df/dx, df/du)             (n,n), (n,m)
    boundary_jac(x0, t0, xf, tf)-> (dgamma/dx0, dgamma/dxf)   (g,n), (g,n)
    path_jac(x, u)              -> (dq/dx, dq/du)             (p,n), (p,m)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

_TAU_TOL = 1e-12


@dataclass(frozen=True)
class OcpProblem:
    n_states: int
    n_controls: int
    t0: float
    tf: float
    dynamics: Callable
    mayer: Optional[Callable] = None
    lagrange: Optional[Callable] = None
    boundary: Optional[Callable] = None
    path: Optional[Callable] = None
    control_bounds: Optional[tuple] = None  # (lower, upper), each length m, +-inf allowed
    state_bounds: Optional[tuple] = None  # (lower, upper), each length n
    mayer_grad: Optional[Callable] = None
    lagrange_grad: Optional[Callable] = None
    dynamics_jac: Optional[Callable] = None
    boundary_jac: Optional[Callable] = None
    path_jac: Optional[Callable] = None


def time_map(tau, t0: float, tf: float):
    """Map tau in [-1, 1] to t = (tf - t0)/2 * tau + (tf + t0)/2."""
    if not tf > t0:
        raise ValueError(f"need tf > t0, got t0={t0}, tf={tf}")
    tau_arr = np.asarray(tau, dtype=float)
    if np.any(np.abs(tau_arr) > 1.0 + _TAU_TOL):
        raise ValueError("tau must lie in [-1, 1]")
    t = 0.5 * (tf - t0) * tau_arr + 0.5 * (tf + t0)
    return float(t) if t.ndim == 0 else t


def time_map_inverse(t, t0: float, tf: float):
    """Inverse of time_map: t in [t0, tf] back to tau in [-1, 1]."""
    if not tf > t0:
        raise ValueError(f"need tf > t0, got t0={t0}, tf={tf}")
    t_arr = np.asarray(t, dtype=float)
    tau = (2.0 * t_arr - (tf + t0)) / (tf - t0)
    return float(tau) if tau.ndim == 0 else tau


def _probe(label: str, fn, args, expected_len: int, violations: list):
    try:
        out = np.atleast_1d(np.asarray(fn(*args), dtype=float))
    except Exception as exc:
        violations.append(f"{label} raised at probe point: {exc!r}")
        return None
    if out.ndim != 1 or out.size != expected_len:
        violations.append(
            f"{label} dimension mismatch: expected length {expected_len}, got shape {out.shape}"
        )
        return None
    return out


def _probe_scalar(label: str, fn, args, violations: list):
    try:
        out = float(fn(*args))
    except Exception as exc:
        violations.append(f"{label} raised at probe point: {exc!r}")
        return
    if not np.isfinite(out):
        violations.append(f"{label} returned non-finite value at probe point")


def _check_bounds(label: str, bounds, length: int, violations: list):
    try:
        lower = np.atleast_1d(np.asarray(bounds[0], dtype=float))
        upper = np.atleast_1d(np.asarray(bounds[1], dtype=float))
    except Exception as exc:
        violations.append(f"{label} malformed: {exc!r}")
        return
    if lower.shape != (length,) or upper.shape != (length,):
        violations.append(f"{label} must have lower/upper of length {length}")
        return
    if np.any(lower > upper):
        violations.append(f"{label} has lower > upper in some component")


def validate_problem(problem: OcpProblem) -> list[str]:
    """Check structural consistency; returns a list of violations (empty = valid).

    Probes the callbacks once at x = 0, u = 0 and confirms output dimensions.
    Violations are returned as data, never raised.
    """
    violations: list[str] = []
    n, m = problem.n_states, problem.n_controls
    if n < 1:
        violations.append("n_states must be >= 1")
    if m < 1:
        violations.append("n_controls must be >= 1")
    if not np.isfinite(problem.t0) or not np.isfinite(problem.tf):
        violations.append("t0 and tf must be finite")
    elif not problem.tf > problem.t0:
        violations.append("degenerate time window (need tf > t0)")
    if violations:
        return violations

    x = np.zeros(n)
    u = np.zeros(m)
    _probe("dynamics", problem.dynamics, (x, u), n, violations)
    if problem.lagrange is not None:
        _probe_scalar("lagrange", problem.lagrange, (x, u), violations)
    if problem.mayer is not None:
        _probe_scalar("mayer", problem.mayer, (x, problem.t0, x, problem.tf), violations)
    if problem.boundary is not None:
        try:
            g = np.atleast_1d(
                np.asarray(problem.boundary(x, problem.t0, x, problem.tf), dtype=float)
            )
            if g.ndim != 1 or g.size < 1:
                violations.append("boundary must return a nonempty vector")
        except Exception as exc:
            violations.append(f"boundary raised at probe point: {exc!r}")
    if problem.path is not None:
        try:
            q = np.atleast_1d(np.asarray(problem.path(x, u), dtype=float))
            if q.ndim != 1 or q.size < 1:
                violations.append("path must return a nonempty vector")
        except Exception as exc:
            violations.append(f"path raised at probe point: {exc!r}")
    if problem.control_bounds is not None:
        _check_bounds("control_bounds", problem.control_bounds, m, violations)
    if problem.state_bounds is not None:
        _check_bounds("state_bounds", problem.state_bounds, n, violations)

    if problem.dynamics_jac is not None:
        try:
            fx, fu = problem.dynamics_jac(x, u)
            fx = np.asarray(fx, dtype=float)
            fu = np.asarray(fu, dtype=float)
            if fx.shape != (n, n) or fu.shape != (n, m):
                violations.append(
                    f"dynamics_jac shapes must be ({n},{n}) and ({n},{m}),"
                    f" got {fx.shape} and {fu.shape}"
                )
        except Exception as exc:
            violations.append(f"dynamics_jac raised at probe point: {exc!r}")
    return violations
