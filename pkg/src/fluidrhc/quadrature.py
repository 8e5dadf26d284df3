"""Gauss-Legendre quadrature on [-1, 1].

One rule object serves both the running-cost integral and the Galerkin
projection integrals. Nodes are the roots of the Legendre polynomial P_n,
found by Newton iteration from Chebyshev initial guesses; an n-node rule
integrates polynomials of degree <= 2n - 1 exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

MAX_ORDER = 200


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a quadrature rule on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1 or nodes.size == 0:
            raise ValueError("nodes and weights must be matching nonempty 1-D arrays")
        if np.any(weights <= 0.0):
            raise ValueError("weights must be positive")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def order(self) -> int:
        """Node count n."""
        return self.nodes.size


def _legendre_and_derivative(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate P_n(x) and P_n'(x) by the three-term recurrence."""
    p_prev = np.ones_like(x)
    p = x.copy()
    if n == 0:
        return p_prev, np.zeros_like(x)
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def lg_rule(n: int) -> QuadratureRule:
    """Build the n-node Legendre-Gauss rule.

    Parameters
    ----------
    n : int
        Node count, 1 <= n <= 200.

    Returns
    -------
    QuadratureRule
        Nodes (roots of P_n, strictly inside (-1, 1)) and weights summing to 2.
    """
    if not isinstance(n, (int, np.integer)) or n < 1 or n > MAX_ORDER:
        raise ValueError(f"node count must be an integer in [1, {MAX_ORDER}], got {n}")
    if n == 1:
        return QuadratureRule(np.zeros(1), np.full(1, 2.0))

    # Solve for the positive-half roots and mirror them, so symmetry is exact.
    half = n // 2
    i = np.arange(1, half + 1, dtype=float)
    x = np.cos(np.pi * (4.0 * i - 1.0) / (4.0 * n + 2.0))
    for _ in range(100):
        p, dp = _legendre_and_derivative(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    _, dp = _legendre_and_derivative(n, x)
    w_half = 2.0 / ((1.0 - x * x) * dp * dp)

    if n % 2:
        center = np.zeros(1)
        _, dp0 = _legendre_and_derivative(n, center)
        w0 = 2.0 / (dp0 * dp0)
        nodes = np.concatenate([-x, center, x[::-1]])
        weights = np.concatenate([w_half, w0, w_half[::-1]])
    else:
        nodes = np.concatenate([-x, x[::-1]])
        weights = np.concatenate([w_half, w_half[::-1]])
    order = np.argsort(nodes)
    return QuadratureRule(nodes[order], weights[order])


def integrate(rule: QuadratureRule, f) -> float:
    """Approximate the integral of f over [-1, 1] as sum_j w_j f(tau_j).

    Raises NumericalError if f is non-finite at any node.
    """
    vals = np.array([float(f(t)) for t in rule.nodes])
    if not np.all(np.isfinite(vals)):
        bad = rule.nodes[~np.isfinite(vals)][0]
        raise NumericalError(f"integrand is non-finite at node {bad}")
    return float(rule.weights @ vals)
