"""Reference solutions independent of the beta-quantile path.

* :func:`integrate_reference` integrates ``r'' = -r**gamma`` from rest at
  ``r = 1`` with an embedded Dormand-Prince 5(4) pair and PI step control.
  It touches no special-function kernel of this package; its safety time
  limit uses the standard library's ``math.lgamma``.
* :func:`parametric_tophat` is the cycloid-like solution for gamma = -2.
* :func:`validate_explicit` compares the explicit solution with the
  integrator and reports error norms.

Near collapse with gamma <= -1 the velocity diverges and any forward
comparison ``|r_explicit(t_i) - r_i|`` is dominated by the amplified timing
error of the integrator. Samples where ``|rdot| > 1`` are therefore compared
in inverse form, ``|t_explicit(r_i) - t_i|``, the better conditioned of the
two distances to the curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._accel import jit
from .collapse import Regime, evaluate_r, evaluate_rdot, evaluate_t, make_gamma, solution
from .errors import DomainError, IntegrationError
from .series import SampleSeries

__all__ = [
    "IntegratorConfig",
    "ParametricSample",
    "ValidationReport",
    "integrate_reference",
    "parametric_tophat",
    "parametric_r",
    "validate_explicit",
    "oracle_energy_drift",
]

_SQRT8 = math.sqrt(8.0)


@dataclass(frozen=True)
class IntegratorConfig:
    """Tolerances and stopping rules for :func:`integrate_reference`.

    ``t_max`` defaults to 1.2 times the collapse time.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    r_floor: float = 1e-6
    max_steps: int = 1_000_000
    t_max: float | None = None

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise DomainError("integrator tolerances must be positive")
        if not (0.0 < self.r_floor < 0.1):
            raise DomainError(f"r_floor must lie in (0, 0.1), got {self.r_floor!r}")
        if self.max_steps < 1:
            raise DomainError("max_steps must be >= 1")
        if self.t_max is not None and not (self.t_max > 0.0):
            raise DomainError("t_max must be positive")


DEFAULT_CONFIG = IntegratorConfig()


# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
_A21 = 1 / 5
_A31, _A32 = 3 / 40, 9 / 40
_A41, _A42, _A43 = 44 / 45, -56 / 15, 32 / 9
_A51, _A52, _A53, _A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
_A61, _A62, _A63, _A64, _A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
_B1, _B3, _B4, _B5, _B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
# 5th minus embedded 4th order weights
_E1, _E3, _E4, _E5, _E6, _E7 = 71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40


@jit
def _accel(r, gamma):
    # -r**gamma, real-valued only where the power is
    if r > 0.0:
        return -(r**gamma)
    if r == 0.0:
        return -0.0 if gamma > 0.0 else -math.inf
    if gamma == math.floor(gamma):
        mag = (-r) ** gamma
        if int(gamma) % 2 == 0:
            return -mag
        return mag
    return math.nan


@jit
def _dopri(gamma, rtol, atol, r_floor, t_max, max_steps, t_eval, record_steps):
    """Integrate from (t, r, v) = (0, 1, 0).

    Records every accepted step when ``record_steps`` is true, and lands
    exactly on each time in ``t_eval`` (sorted, may be empty). Time is
    accumulated with compensated summation: near collapse for strongly
    negative gamma the step size falls far below ulp(t).
    Returns ``(t, r, v, n, status)``; status 0 reached r_floor, 1 reached
    t_max, 2 too many steps, 3 step size underflow.
    """
    cap = max_steps + t_eval.shape[0] + 2
    ts = np.empty(cap)
    rs = np.empty(cap)
    vs = np.empty(cap)
    t = 0.0
    t_lo = 0.0
    r = 1.0
    v = 0.0
    ts[0] = 0.0
    rs[0] = 1.0
    vs[0] = 0.0
    n = 1
    j = 0
    while j < t_eval.shape[0] and t_eval[j] <= 0.0:
        j += 1
    h = 1e-3 * min(1.0, t_max)
    err_prev = 1e-4
    k1r = v
    k1v = _accel(r, gamma)
    steps = 0
    while True:
        if steps >= max_steps:
            return ts, rs, vs, n, 2
        if h < 1e-300:
            return ts, rs, vs, n, 3
        landing = False
        h_step = h
        if j < t_eval.shape[0]:
            gap = (t_eval[j] - t) - t_lo
            if h_step >= gap:
                h_step = gap
                landing = True
        k2r = v + h_step * (_A21 * k1v)
        r2 = r + h_step * (_A21 * k1r)
        k2v = _accel(r2, gamma)
        r3 = r + h_step * (_A31 * k1r + _A32 * k2r)
        k3r = v + h_step * (_A31 * k1v + _A32 * k2v)
        k3v = _accel(r3, gamma)
        r4 = r + h_step * (_A41 * k1r + _A42 * k2r + _A43 * k3r)
        k4r = v + h_step * (_A41 * k1v + _A42 * k2v + _A43 * k3v)
        k4v = _accel(r4, gamma)
        r5 = r + h_step * (_A51 * k1r + _A52 * k2r + _A53 * k3r + _A54 * k4r)
        k5r = v + h_step * (_A51 * k1v + _A52 * k2v + _A53 * k3v + _A54 * k4v)
        k5v = _accel(r5, gamma)
        r6 = r + h_step * (_A61 * k1r + _A62 * k2r + _A63 * k3r + _A64 * k4r + _A65 * k5r)
        k6r = v + h_step * (_A61 * k1v + _A62 * k2v + _A63 * k3v + _A64 * k4v + _A65 * k5v)
        k6v = _accel(r6, gamma)
        r_new = r + h_step * (_B1 * k1r + _B3 * k3r + _B4 * k4r + _B5 * k5r + _B6 * k6r)
        v_new = v + h_step * (_B1 * k1v + _B3 * k3v + _B4 * k4v + _B5 * k5v + _B6 * k6v)
        k7r = v_new
        k7v = _accel(r_new, gamma)
        er = h_step * (_E1 * k1r + _E3 * k3r + _E4 * k4r + _E5 * k5r + _E6 * k6r + _E7 * k7r)
        ev = h_step * (_E1 * k1v + _E3 * k3v + _E4 * k4v + _E5 * k5v + _E6 * k6v + _E7 * k7v)
        sr = atol + rtol * max(abs(r), abs(r_new))
        sv = atol + rtol * max(abs(v), abs(v_new))
        err = math.sqrt(0.5 * ((er / sr) ** 2 + (ev / sv) ** 2))
        steps += 1
        if not (err <= 1.0):
            # rejected, including NaN from stages that left the real domain
            if err != err or err == math.inf:
                h = 0.25 * h_step
            else:
                h = h_step * max(0.2, 0.9 * err ** (-0.2))
            continue
        # accept: compensated time update
        y = h_step - t_lo
        tn = t + y
        t_lo = (tn - t) - y
        t = tn
        r = r_new
        v = v_new
        k1r = k7r
        k1v = k7v
        if landing:
            j += 1
        if record_steps or landing:
            # a landing sample is reported at its requested time exactly
            ts[n] = t_eval[j - 1] if landing else t
            rs[n] = r
            vs[n] = v
            n += 1
        fac = 0.9 * max(err, 1e-10) ** (-0.7 / 5.0) * err_prev ** (0.4 / 5.0)
        fac = min(5.0, max(0.2, fac))
        err_prev = max(err, 1e-4)
        h_next = h_step * fac
        if landing and h > h_step:
            # a clipped landing step says nothing about the natural step size
            h_next = max(h_next, h)
        h = h_next
        if r <= r_floor:
            return ts, rs, vs, n, 0
        if t >= t_max:
            return ts, rs, vs, n, 1


def _tau_bound(gamma: float) -> float:
    # collapse time from the standard library only, keeping the oracle independent
    d = 1.0 + gamma
    if abs(d) < 1e-6:
        return math.sqrt(0.5 * math.pi)
    eta = 1.0 / abs(d)
    alpha = eta if d > 0 else eta + 0.5
    lb = math.lgamma(alpha) + math.lgamma(0.5) - math.lgamma(alpha + 0.5)
    return math.exp(0.5 * math.log(0.5 * eta) + lb)


def integrate_reference(gamma: float, config: IntegratorConfig = DEFAULT_CONFIG, t_eval=None, record_steps: bool = True) -> SampleSeries:
    """Numerically integrate ``r'' = -r**gamma`` from ``(r, rdot) = (1, 0)``.

    Stops once ``r <= config.r_floor`` (the last sample is the first one at
    or below the floor) or past ``t_max``. With ``t_eval`` the integrator
    also lands exactly on those times; ``record_steps=False`` keeps only them.
    """
    gamma = float(gamma)
    if not math.isfinite(gamma):
        raise DomainError(f"gamma must be finite, got {gamma!r}")
    t_max = config.t_max if config.t_max is not None else 1.2 * _tau_bound(gamma)
    if t_eval is None:
        te = np.empty(0)
    else:
        te = np.sort(np.asarray(t_eval, dtype=float).ravel())
        if np.any(te < 0.0):
            raise DomainError("t_eval must be non-negative")
    ts, rs, vs, n, status = _dopri(gamma, config.rel_tol, config.abs_tol, config.r_floor, t_max, config.max_steps, te, record_steps)
    if status >= 2:
        why = "step limit exceeded" if status == 2 else "step size underflow"
        raise IntegrationError(f"integration failed for gamma={gamma!r} at t={ts[n - 1]!r}, r={rs[n - 1]!r}: {why}")
    return SampleSeries(ts[:n].copy(), rs[:n].copy(), vs[:n].copy(), "oracle")


def oracle_energy_drift(gamma: float, r, rdot) -> np.ndarray:
    """Relative residual of the integral of motion along a numerical trajectory.

    The residual is scaled by the largest of its terms, since near collapse
    with gamma < -1 the kinetic and potential parts individually diverge.
    """
    r = np.asarray(r, dtype=float)
    v = np.asarray(rdot, dtype=float)
    d = 1.0 + gamma
    if abs(d) < 1e-6:
        lnr = np.log(r)
        return np.abs(v * v + 2.0 * lnr) / np.maximum(1.0, np.abs(2.0 * lnr))
    pot = r**d
    kin = 0.5 * d * v * v
    return np.abs(kin + pot - 1.0) / np.maximum(1.0, np.maximum(np.abs(kin), pot))


# ---------------------------------------------------------------------------
# parametric gamma = -2 solution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParametricSample:
    theta: float
    t: float
    r: float

    @property
    def rdot(self) -> float:
        if abs(self.theta) == math.pi:
            return -math.copysign(math.inf, self.theta)
        return -math.sqrt(2.0) * math.tan(0.5 * self.theta)


def parametric_tophat(theta: float) -> ParametricSample:
    """Point on the gamma = -2 solution: ``t = (theta + sin theta)/sqrt(8)``, ``r = (1 + cos theta)/2``."""
    theta = float(theta)
    if not (abs(theta) <= math.pi):
        raise DomainError(f"theta must lie in [-pi, pi], got {theta!r}")
    r = 0.0 if abs(theta) == math.pi else 0.5 * (1.0 + math.cos(theta))
    return ParametricSample(theta, (theta + math.sin(theta)) / _SQRT8, r)


@jit
def _theta_of_t(t):
    # solve (theta + sin theta)/sqrt(8) = t on [0, pi]; Newton with bisection guard
    target = t * math.sqrt(8.0)
    if target <= 0.0:
        return 0.0
    # within a few ulps of collapse theta is cube-root ill-conditioned; snap to pi
    if target >= math.pi * (1.0 - 8.0 * 2.220446049250313e-16):
        return math.pi
    lo = 0.0
    hi = math.pi
    th = 0.5 * math.pi
    for _ in range(200):
        f = th + math.sin(th) - target
        if f > 0.0:
            hi = th
        else:
            lo = th
        fp = 1.0 + math.cos(th)
        th_new = th - f / fp if fp > 0.0 else 0.5 * (lo + hi)
        if not (lo < th_new < hi):
            th_new = 0.5 * (lo + hi)
        if abs(th_new - th) <= 1e-16 * max(1.0, th) or hi - lo <= 4e-16:
            return th_new
        th = th_new
    return th


def parametric_theta(t: float) -> float:
    """Parameter angle reached at time ``t`` in ``[-pi/sqrt(8), pi/sqrt(8)]``."""
    t = float(t)
    if abs(t) > math.pi / _SQRT8:
        raise DomainError(f"|t| must not exceed pi/sqrt(8), got {t!r}")
    th = float(_theta_of_t(abs(t)))
    return th if t >= 0 else -th


def parametric_r(t) -> np.ndarray:
    """``(r, rdot)`` of the parametric gamma = -2 solution at times ``t``."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    r = np.empty_like(t_arr)
    v = np.empty_like(t_arr)
    for i, ti in enumerate(t_arr):
        s = parametric_tophat(parametric_theta(ti))
        r[i] = s.r
        v[i] = s.rdot
    return r, v


def _parametric_t_of_r(r: np.ndarray) -> np.ndarray:
    theta = 2.0 * np.arctan2(np.sqrt(1.0 - r), np.sqrt(r))
    return (theta + np.sin(theta)) / _SQRT8


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    """Error norms of the explicit solution against the integrator.

    ``max_abs_err``/``rms_err`` combine forward errors ``|dr|`` on gently
    sloped samples with inverse errors ``|dt|`` where ``|rdot| > 1`` (only
    for gamma <= -1). ``energy_max_resid`` is the integrator's relative energy
    drift over the compared samples; ``explicit_energy_max_resid`` the same
    measure on the explicit ``(r, rdot)``. ``cross_checks`` holds extra
    independent comparisons (parametric solution at gamma = -2, Jacobi cn at
    gamma = 3).
    """

    gamma: float
    grid_size: int
    max_abs_err: float
    rms_err: float
    energy_max_resid: float
    t_range_covered: tuple
    max_forward_err: float = 0.0
    max_inverse_err: float = 0.0
    n_inverse: int = 0
    explicit_energy_max_resid: float = 0.0
    cross_checks: dict = field(default_factory=dict)

    def passed(self, tol: float = 1e-6) -> bool:
        return self.max_abs_err <= tol

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "grid_size": self.grid_size,
            "max_abs_err": self.max_abs_err,
            "rms_err": self.rms_err,
            "energy_max_resid": self.energy_max_resid,
            "explicit_energy_max_resid": self.explicit_energy_max_resid,
            "t_range_covered": list(self.t_range_covered),
            "max_forward_err": self.max_forward_err,
            "max_inverse_err": self.max_inverse_err,
            "n_inverse": self.n_inverse,
            "cross_checks": dict(self.cross_checks),
        }


def _graph_errors(sol, t, r, v, use_inverse):
    """Per-sample distance of (t_i, r_i) to the explicit curve, and the inverse mask."""
    tc = np.minimum(t, sol.tau)
    fwd = np.abs(np.asarray(evaluate_r(sol, tc)) - r)
    inv_mask = np.zeros_like(fwd, dtype=bool)
    if use_inverse:
        inv_mask = np.abs(v) > 1.0
    err = fwd.copy()
    if np.any(inv_mask):
        err[inv_mask] = np.abs(np.asarray(evaluate_t(sol, np.clip(r[inv_mask], 0.0, 1.0))) - t[inv_mask])
    return err, inv_mask


def validate_explicit(gamma: float, n_grid: int = 200, config: IntegratorConfig = DEFAULT_CONFIG) -> ValidationReport:
    """Cross-check the explicit solution against direct integration.

    The integrator records its own accepted steps and also lands on
    ``n_grid`` uniform times over ``[0, tau]``; every sample with
    ``r >= r_floor`` is compared.
    """
    if n_grid < 10:
        raise DomainError(f"n_grid must be >= 10, got {n_grid}")
    sol = solution(gamma)
    ref = integrate_reference(gamma, config, t_eval=np.linspace(0.0, sol.tau, n_grid))
    keep = (ref.r >= config.r_floor) & (ref.t <= sol.tau)
    t, r, v = ref.t[keep], ref.r[keep], ref.rdot[keep]
    use_inverse = sol.param.regime is not Regime.SUPERCRITICAL
    err, inv_mask = _graph_errors(sol, t, r, v, use_inverse)

    drift = oracle_energy_drift(sol.gamma, r, v)
    v_exp = np.asarray(evaluate_rdot(sol, np.minimum(t, sol.tau)))
    r_exp = np.asarray(evaluate_r(sol, np.minimum(t, sol.tau)))
    pos = r_exp > 0.0
    exp_drift = oracle_energy_drift(sol.gamma, r_exp[pos], v_exp[pos]) if np.any(pos) else np.zeros(1)

    checks = {}
    if sol.gamma == -2.0:
        # oracle and explicit against the parametric curve, same metric
        flat = ~inv_mask
        r_par, _ = parametric_r(t[flat])
        t_par = _parametric_t_of_r(r[inv_mask])
        d_oracle = np.concatenate([np.abs(r_par - r[flat]), np.abs(t_par - t[inv_mask])])
        d_explicit = np.concatenate(
            [np.abs(r_par - r_exp[flat]), np.abs(t_par - np.asarray(evaluate_t(sol, r[inv_mask])))]
        )
        checks["parametric_vs_oracle"] = float(d_oracle.max())
        checks["parametric_vs_explicit"] = float(d_explicit.max())
    if sol.gamma == 3.0:
        from .specfun import jacobi_cn

        cn = np.array([jacobi_cn(ti, 0.5) for ti in t])
        checks["jacobi_cn_vs_oracle"] = float(np.max(np.abs(cn - r)))
        checks["jacobi_cn_vs_explicit"] = float(np.max(np.abs(cn - r_exp)))

    fwd = err[~inv_mask]
    inv = err[inv_mask]
    return ValidationReport(
        gamma=sol.gamma,
        grid_size=int(t.shape[0]),
        max_abs_err=float(err.max()),
        rms_err=float(np.sqrt(np.mean(err * err))),
        energy_max_resid=float(drift.max()),
        t_range_covered=(float(t[0]), float(t[-1])),
        max_forward_err=float(fwd.max()) if fwd.size else 0.0,
        max_inverse_err=float(inv.max()) if inv.size else 0.0,
        n_inverse=int(inv_mask.sum()),
        explicit_energy_max_resid=float(exp_drift.max()),
        cross_checks=checks,
    )
