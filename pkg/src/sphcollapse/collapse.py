"""Dimensionless collapse solutions of ``r'' = -r**gamma`` with ``r(0) = 1``, ``r'(0) = 0``.

The explicit solution is a power of the beta-distribution quantile,

    r(t) = Q(1 - |t|/tau; alpha, 1/2) ** eta,

with ``eta = 1/|1 + gamma|`` and ``alpha = eta`` (gamma > -1) or
``alpha = eta + 1/2`` (gamma < -1). The critical exponent gamma = -1 is a
removable singularity handled by the error-function form
``r(t) = exp(-inv_erf(t/tau)**2)`` with ``tau = sqrt(pi/2)``.

Functions accept scalars or arrays for time/radius arguments; scalars give
Python floats back.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._accel import jit
from .errors import CollapseOverflowError, ConvergenceError, DomainError, UnsupportedGammaError
from .specfun import (
    DEFAULT_POLICY,
    AccuracyPolicy,
    _beta_quantile,
    _erf,
    _inv_erf,
    _jacobi_cn,
    _lbeta,
    _log1mexp,
    _log_ibeta,
    _cf_cap,
)

__all__ = [
    "Regime",
    "GammaParam",
    "CollapseSolution",
    "EnergyState",
    "DEFAULT_CRITICAL_BAND",
    "make_gamma",
    "collapse_time",
    "solution",
    "evaluate_r",
    "evaluate_t",
    "evaluate_rdot",
    "evaluate_state",
    "rdot_at_collapse",
    "potential",
    "energy_residual",
    "closed_form",
    "evaluate_extended",
]

DEFAULT_CRITICAL_BAND = 1e-6
_HALF = 0.5
SQRT_HALF_PI = math.sqrt(0.5 * math.pi)


class Regime(enum.Enum):
    SUBCRITICAL = "subcritical"  # gamma < -1: divergent collapse velocity
    CRITICAL = "critical"  # gamma == -1 (within the critical band)
    SUPERCRITICAL = "supercritical"  # gamma > -1: finite collapse velocity


@dataclass(frozen=True)
class GammaParam:
    """The exponent gamma with its derived constants.

    For the critical regime ``eta`` and ``alpha`` are their (infinite) limits
    and are never used by the solution formulas.
    """

    gamma: float
    eta: float
    alpha: float
    regime: Regime

    @property
    def critical(self) -> bool:
        return self.regime is Regime.CRITICAL


def make_gamma(gamma: float, critical_band: float = DEFAULT_CRITICAL_BAND) -> GammaParam:
    """Classify ``gamma`` and derive ``eta = 1/|1+gamma|`` and ``alpha``.

    ``alpha`` is computed by its case split (``eta`` above -1, ``eta + 1/2``
    below) rather than the unified ``1/4 + (3-gamma)/(4|1+gamma|)``, which
    cancels catastrophically for large ``|gamma|``.
    """
    gamma = float(gamma)
    if not math.isfinite(gamma):
        raise DomainError(f"gamma must be finite, got {gamma!r}")
    if not (critical_band >= 0.0):
        raise DomainError(f"critical_band must be >= 0, got {critical_band!r}")
    d = 1.0 + gamma
    if abs(d) < critical_band or d == 0.0:
        return GammaParam(gamma, math.inf, math.inf, Regime.CRITICAL)
    eta = 1.0 / abs(d)
    if d > 0.0:
        return GammaParam(gamma, eta, eta, Regime.SUPERCRITICAL)
    return GammaParam(gamma, eta, eta + _HALF, Regime.SUBCRITICAL)


def _as_param(gamma_or_param) -> GammaParam:
    if isinstance(gamma_or_param, GammaParam):
        return gamma_or_param
    return make_gamma(gamma_or_param)


def collapse_time(param) -> float:
    """Dimensionless collapse time ``tau = sqrt(eta/2) B(alpha, 1/2)``; ``sqrt(pi/2)`` at criticality.

    Accepts a :class:`GammaParam` or a bare exponent.
    """
    param = _as_param(param)
    if param.critical:
        return SQRT_HALF_PI
    if param.eta == 0.0:
        raise CollapseOverflowError(f"eta underflows to zero for gamma={param.gamma!r}")
    log_tau = 0.5 * math.log(0.5 * param.eta) + _lbeta(param.alpha, _HALF)
    if not (-745.0 < log_tau < 709.0):
        raise CollapseOverflowError(f"collapse time not representable for gamma={param.gamma!r} (ln tau={log_tau})")
    return math.exp(log_tau)


@dataclass(frozen=True)
class CollapseSolution:
    """A fully specified dimensionless problem: exponent plus its collapse time."""

    param: GammaParam
    tau: float
    policy: AccuracyPolicy = field(default=DEFAULT_POLICY, repr=False)

    @property
    def gamma(self) -> float:
        return self.param.gamma

    def r(self, t):
        return evaluate_r(self, t)

    def t(self, r):
        return evaluate_t(self, r)

    def rdot(self, t):
        return evaluate_rdot(self, t)


def solution(gamma, critical_band: float = DEFAULT_CRITICAL_BAND, policy: AccuracyPolicy = DEFAULT_POLICY) -> CollapseSolution:
    """Build the :class:`CollapseSolution` for exponent ``gamma``."""
    param = gamma if isinstance(gamma, GammaParam) else make_gamma(gamma, critical_band)
    return CollapseSolution(param, collapse_time(param), policy)


@dataclass(frozen=True)
class EnergyState:
    """Position, velocity, potential and Lagrangian ``rdot**2/2 - phi`` at one instant."""

    r: float
    rdot: float
    phi: float
    lagrangian: float


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


@jit
def _state_point(q, alpha, eta, gamma, critical, tol, maxit):
    """``(r, ln r, |rdot|, status)`` at normalized time ``q = |t|/tau`` in [0, 1].

    ``|rdot|`` comes from the integral of motion using ``ln r`` straight from
    the quantile, so it stays accurate as ``r -> 1``.
    """
    if q <= 0.0:
        return 1.0, 0.0, 0.0, 0
    if critical:
        if q >= 1.0:
            return 0.0, -math.inf, math.inf, 0
        z = _inv_erf(q)
        lr = -z * z
        return math.exp(lr), lr, math.sqrt(2.0) * abs(z), 0
    d = 1.0 + gamma
    if q >= 1.0:
        if d > 0.0:
            return 0.0, -math.inf, math.sqrt(2.0 / d), 0
        return 0.0, -math.inf, math.inf, 0
    lx, ly, status = _beta_quantile(1.0 - q, q, alpha, 0.5, tol, maxit)
    lr = eta * lx
    r = math.exp(lr)
    # rdot^2 = 2 (1 - r^(1+gamma)) / (1 + gamma)
    u = d * lr
    if u > 709.0:
        v2 = math.inf
    else:
        v2 = 2.0 * (-math.expm1(u)) / d
    return r, lr, math.sqrt(v2) if v2 > 0.0 else 0.0, status


@jit
def _state_array(q, alpha, eta, gamma, critical, tol, maxit):
    n = q.shape[0]
    r = np.empty(n)
    lr = np.empty(n)
    v = np.empty(n)
    worst = 0
    for i in range(n):
        ri, lri, vi, st = _state_point(q[i], alpha, eta, gamma, critical, tol, maxit)
        r[i] = ri
        lr[i] = lri
        v[i] = vi
        if st > worst:
            worst = st
    return r, lr, v, worst


@jit
def _time_point(lr, alpha, eta, critical, tol, maxit):
    # normalized time |t|/tau reached at ln r = lr
    if lr >= 0.0:
        return 0.0, True
    if lr == -math.inf:
        return 1.0, True
    if critical:
        return _erf(math.sqrt(-lr)), True
    ls = lr / eta  # ln of r^|1+gamma|
    lbeta = _lbeta(alpha, 0.5)
    li, lic, ok = _log_ibeta(ls, _log1mexp(ls), alpha, 0.5, lbeta, tol, _cf_cap(alpha, 0.5, maxit))
    return math.exp(lic), ok


@jit
def _time_array(lr, alpha, eta, critical, tol, maxit):
    n = lr.shape[0]
    out = np.empty(n)
    ok_all = True
    for i in range(n):
        v, ok = _time_point(lr[i], alpha, eta, critical, tol, maxit)
        out[i] = v
        if not ok:
            ok_all = False
    return out, ok_all


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _normalized_times(sol: CollapseSolution, t):
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(np.isnan(t_arr)):
        raise DomainError("time must not be NaN")
    a = np.abs(t_arr)
    over = a > sol.tau
    if np.any(over):
        bad = float(t_arr[over][0])
        raise DomainError(
            f"|t| = {abs(bad)!r} exceeds the collapse time tau = {sol.tau!r}; "
            "for odd positive integer gamma use evaluate_extended()"
        )
    q = a / sol.tau
    q[a == sol.tau] = 1.0
    return t_arr, q


def _state(sol: CollapseSolution, t):
    t_arr, q = _normalized_times(sol, t)
    p = sol.param
    # kernels are 1-d; restore the caller's shape afterwards
    r, lr, v, status = _state_array(q.ravel(), p.alpha, p.eta, p.gamma, p.critical, sol.policy.rel_tol, sol.policy.max_iter)
    if status != 0:
        raise ConvergenceError(f"quantile inversion failed for gamma={p.gamma!r}")
    shape = t_arr.shape
    return t_arr, r.reshape(shape), lr.reshape(shape), v.reshape(shape)


def _out(template, arr):
    if np.ndim(template) == 0:
        return float(arr[0])
    return arr.reshape(np.shape(template))


def evaluate_r(sol: CollapseSolution, t):
    """``r(t)`` on ``[-tau, tau]``; even in ``t``, ``r(0) = 1`` and ``r(+-tau) = 0`` exactly."""
    _, r, _, _ = _state(sol, t)
    return _out(t, r)


def evaluate_rdot(sol: CollapseSolution, t):
    """``rdot(t)`` from the integral of motion; ``-inf`` at ``t = tau`` when gamma <= -1."""
    t_arr, _, _, v = _state(sol, t)
    return _out(t, -np.sign(t_arr) * v)


def evaluate_t(sol: CollapseSolution, r):
    """Inverse solution ``t(r)`` on the collapse branch, ``t(1) = 0`` and ``t(0) = tau``."""
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(~((r_arr >= 0.0) & (r_arr <= 1.0))):
        raise DomainError(f"r must lie in [0, 1], got {r!r}")
    with np.errstate(divide="ignore"):
        lr = np.log(r_arr)
    p = sol.param
    q, ok = _time_array(lr.ravel(), p.alpha, p.eta, p.critical, sol.policy.rel_tol, sol.policy.max_iter)
    if not ok:
        raise ConvergenceError(f"incomplete beta evaluation failed for gamma={p.gamma!r}")
    t = sol.tau * q.reshape(r_arr.shape)
    t[r_arr == 0.0] = sol.tau
    return _out(r, t)


def rdot_at_collapse(param) -> float:
    """Collapse-point velocity: ``-sqrt(2/(1+gamma))`` above -1, ``-inf`` otherwise."""
    param = _as_param(param)
    if param.regime is Regime.SUPERCRITICAL:
        return -math.sqrt(2.0 / (1.0 + param.gamma))
    return -math.inf


def potential(param, r):
    """Potential ``phi(r)``: ``r**(1+gamma)/(1+gamma)``, or ``ln r`` at criticality."""
    param = _as_param(param)
    r_arr = np.asarray(r, dtype=float)
    if np.any(~(r_arr > 0.0)):
        raise DomainError(f"potential needs r > 0, got {r!r}")
    if param.critical:
        out = np.log(r_arr)
    else:
        d = 1.0 + param.gamma
        out = r_arr**d / d
    return float(out) if np.ndim(out) == 0 else out


def energy_residual(param, r, rdot):
    """Residual of the integral of motion; zero on exact trajectories.

    ``(1+gamma)/2 rdot**2 + r**(1+gamma) - 1``, or ``rdot**2 + 2 ln r`` at
    criticality.
    """
    param = _as_param(param)
    r_arr = np.asarray(r, dtype=float)
    v = np.asarray(rdot, dtype=float)
    if np.any(~((r_arr > 0.0) & (r_arr <= 1.0))):
        raise DomainError(f"energy_residual needs r in (0, 1], got {r!r}")
    if param.critical:
        out = v * v + 2.0 * np.log(r_arr)
    else:
        d = 1.0 + param.gamma
        out = 0.5 * d * v * v + np.expm1(d * np.log(r_arr))
    return float(out) if np.ndim(out) == 0 else out


def evaluate_state(sol: CollapseSolution, t: float) -> EnergyState:
    """Position, velocity, potential and Lagrangian at time ``t``.

    At ``|t| = tau`` the potential takes its limit value (0 above
    criticality, ``-inf`` at or below).
    """
    t_arr, r, lr, v = _state(sol, float(t))
    r0 = float(r[0])
    rd = float(-np.sign(t_arr[0]) * v[0])
    if r0 > 0.0:
        phi = potential(sol.param, r0)
    else:
        phi = 0.0 if sol.param.regime is Regime.SUPERCRITICAL else -math.inf
    return EnergyState(r0, rd, phi, 0.5 * rd * rd - phi)


_CLOSED_FORMS = (-3.0, 0.0, 1.0, 3.0)


def closed_form(gamma: float, t):
    """Elementary solutions for gamma in {-3, 0, 1, 3}.

    ``sqrt(1 - t**2)``, ``1 - t**2/2``, ``cos t`` and ``cn(t | 1/2)``. The
    first two are bounded to ``|t| <= tau``; the oscillators are valid for all t.
    """
    gamma = float(gamma)
    if gamma not in _CLOSED_FORMS:
        raise UnsupportedGammaError(f"no closed form for gamma={gamma!r}; supported: -3, 0, 1, 3")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if gamma in (-3.0, 0.0):
        tau = 1.0 if gamma == -3.0 else math.sqrt(2.0)
        if np.any(np.abs(t_arr) > tau):
            raise DomainError(f"|t| must not exceed tau={tau!r} for gamma={gamma!r}")
        if gamma == -3.0:
            out = np.sqrt(np.maximum(1.0 - t_arr * t_arr, 0.0))
        else:
            out = 1.0 - 0.5 * t_arr * t_arr
    elif gamma == 1.0:
        out = np.cos(t_arr)
    else:
        out = np.array([_jacobi_cn(float(u), 0.5) for u in t_arr])
    return _out(t, out)


def evaluate_extended(gamma: float, t, policy: AccuracyPolicy = DEFAULT_POLICY):
    """Periodic continuation past collapse for odd positive integer gamma.

    The arc on ``[0, tau]`` is reflected into a wave of period ``4 tau`` with
    ``r(tau) = 0``, ``r(2 tau) = -1``, ``r(3 tau) = 0``, ``r(4 tau) = 1``.
    """
    gamma = float(gamma)
    if not (gamma > 0.0 and gamma == math.floor(gamma) and int(gamma) % 2 == 1):
        raise UnsupportedGammaError(f"continuation past collapse needs odd positive integer gamma, got {gamma!r}")
    sol = solution(gamma, policy=policy)
    tau = sol.tau
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    period = 4.0 * tau
    u = np.mod(np.abs(t_arr), period)
    seg = np.minimum((u // tau).astype(int), 3)
    # argument folded back into [0, tau] and the sign of each quarter wave
    arg = np.choose(seg, [u, 2.0 * tau - u, u - 2.0 * tau, period - u])
    sign = np.choose(seg, [1.0, -1.0, -1.0, 1.0])
    arg = np.clip(arg, 0.0, tau)
    out = sign * np.asarray(evaluate_r(sol, arg), dtype=float).reshape(arg.shape)
    return _out(t, out)
