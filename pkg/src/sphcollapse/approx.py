"""Polynomial approximations of the collapse solution.

With ``x = t / tau``:

* ``gamma <= -1``: ``(1 - x**2)**p``, ``0 < p < 1``
* ``gamma > -1``:  ``q (1 - |x|) - (q - 1)(1 - |x|)**(q/(q - 1))``, ``q > 1``

Shape choices: ``P1`` ``p = 2/(1 - gamma)`` (gamma < -1 only; correct
velocity asymptotics at collapse), ``P2`` ``p = tau**2/2`` (matches
``r''(0) = -1``), ``Q1`` ``q = eta B(eta, 1/2)`` (matches the collapse
velocity), ``Q2`` ``q = tau**2/(tau**2 - 1)`` (matches ``r''(0) = -1``).
Both families are exact at gamma = -3 and gamma = 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .collapse import Regime, collapse_time, evaluate_r, make_gamma, solution
from .errors import DomainError, ShapeError
from .specfun import beta_complete

__all__ = [
    "Branch",
    "Shape",
    "ApproxSpec",
    "ErrorReport",
    "resolve_shape",
    "evaluate_approx",
    "approx_rdot",
    "approx_error_report",
]


class Branch(enum.Enum):
    POWER_LAW = "power_law"
    TWO_TERM = "two_term"


class Shape(enum.Enum):
    P1 = "p1"
    P2 = "p2"
    Q1 = "q1"
    Q2 = "q2"

    @classmethod
    def parse(cls, s) -> "Shape":
        if isinstance(s, cls):
            return s
        try:
            return cls(str(s).lower())
        except ValueError:
            raise ShapeError(f"unknown shape {s!r}; expected one of p1, p2, q1, q2") from None


@dataclass(frozen=True)
class ApproxSpec:
    gamma: float
    branch: Branch
    shape: Shape
    value: float
    tau: float

    def __post_init__(self):
        if self.branch is Branch.POWER_LAW and not (0.0 < self.value < 1.0):
            raise ShapeError(f"power-law exponent must lie in (0, 1), got {self.value!r}")
        if self.branch is Branch.TWO_TERM and not (self.value > 1.0):
            raise ShapeError(f"two-term shape parameter must exceed 1, got {self.value!r}")


def resolve_shape(gamma: float, shape) -> ApproxSpec:
    """Resolve a named shape choice into its numeric ``p`` or ``q`` for ``gamma``."""
    shape = Shape.parse(shape)
    param = make_gamma(gamma)
    tau = collapse_time(param)
    g = param.gamma
    if param.regime is Regime.SUPERCRITICAL:
        if shape is Shape.Q1:
            value = param.eta * beta_complete(param.eta, 0.5)
        elif shape is Shape.Q2:
            value = tau * tau / (tau * tau - 1.0)
        else:
            raise ShapeError(f"shape {shape.value} applies to gamma <= -1; use q1 or q2 for gamma={g!r}")
        return ApproxSpec(g, Branch.TWO_TERM, shape, value, tau)
    if shape is Shape.P1:
        if param.regime is Regime.CRITICAL:
            raise ShapeError("p1 = 2/(1 - gamma) is defined only for gamma strictly below -1; use p2")
        value = 2.0 / (1.0 - g)
    elif shape is Shape.P2:
        value = 0.5 * tau * tau
    else:
        raise ShapeError(f"shape {shape.value} applies to gamma > -1; use p1 or p2 for gamma={g!r}")
    return ApproxSpec(g, Branch.POWER_LAW, shape, value, tau)


def _x(spec: ApproxSpec, t):
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    x = np.abs(t_arr) / spec.tau
    if np.any(x > 1.0):
        raise DomainError(f"|t| must not exceed tau={spec.tau!r}")
    return x


def _out(template, arr):
    return float(arr[0]) if np.ndim(template) == 0 else arr.reshape(np.shape(template))


def evaluate_approx(spec: ApproxSpec, t):
    """Approximate ``r(t)`` for ``|t| <= tau``."""
    x = _x(spec, t)
    if spec.branch is Branch.POWER_LAW:
        out = (1.0 - x * x) ** spec.value
    else:
        q = spec.value
        u = 1.0 - x
        out = q * u - (q - 1.0) * u ** (q / (q - 1.0))
    return _out(t, out)


def approx_rdot(spec: ApproxSpec, t):
    """Time derivative of :func:`evaluate_approx`; ``-inf`` at ``|t| = tau`` on the power-law branch."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    x = _x(spec, t_arr)
    sgn = np.sign(t_arr)
    if spec.branch is Branch.POWER_LAW:
        p = spec.value
        base = 1.0 - x * x
        with np.errstate(divide="ignore", invalid="ignore"):
            d = -2.0 * p * x * base ** (p - 1.0)
        d = np.where(base == 0.0, -np.inf, d)
    else:
        q = spec.value
        u = 1.0 - x
        d = -q + q * u ** (1.0 / (q - 1.0))
    out = sgn * d / spec.tau
    out = np.where(t_arr == 0.0, 0.0, out)
    return _out(t, out)


@dataclass(frozen=True)
class ErrorReport:
    gamma: float
    shape: Shape
    value: float
    n_grid: int
    max_abs_err: float
    rms_err: float


def approx_error_report(gamma: float, shape, n_grid: int = 1000) -> ErrorReport:
    """Max and RMS deviation from the explicit solution on a uniform grid over ``[0, tau]``."""
    if n_grid < 2:
        raise DomainError(f"n_grid must be >= 2, got {n_grid}")
    spec = resolve_shape(gamma, shape)
    sol = solution(gamma)
    t = np.linspace(0.0, sol.tau, int(n_grid))
    d = np.abs(evaluate_approx(spec, t) - evaluate_r(sol, t))
    return ErrorReport(spec.gamma, spec.shape, spec.value, int(n_grid), float(d.max()), float(math.sqrt(np.mean(d * d))))
