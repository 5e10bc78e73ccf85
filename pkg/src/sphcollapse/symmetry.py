"""Symmetries of the solution family.

``tau_symmetry`` maps ``(gamma, tau)`` to ``(-2 - gamma, pi / (2 tau))``, a
consequence of ``B(a, b) B(a + b, 1 - b) = pi / (a sin(pi b))``.
``general_symmetry`` is the substitution ``r -> r**delta`` with
``delta = (1 - gamma)/2``, which carries a solution for ``gamma < 1`` onto the
solution for ``(gamma + 3)/(gamma - 1)`` with time rescaled by
``sqrt(delta)``. Both maps are involutions with the single fixed point
gamma = -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .collapse import collapse_time, make_gamma
from .errors import DomainError

__all__ = ["SymmetryImage", "tau_symmetry", "general_symmetry", "substitution_gamma"]


@dataclass(frozen=True)
class SymmetryImage:
    gamma: float
    gamma_prime: float
    tau_prime: float
    time_scale: float | None = None
    delta: float | None = None
    t_prime: float | np.ndarray | None = None
    r_prime: float | np.ndarray | None = None


def tau_symmetry(gamma: float) -> SymmetryImage:
    """Image of ``(gamma, tau(gamma))`` under the collapse-time point symmetry."""
    gamma = float(gamma)
    tau = collapse_time(make_gamma(gamma))
    if gamma == -1.0:
        gp = -1.0
    else:
        gp = -2.0 - gamma
    return SymmetryImage(gamma=gamma, gamma_prime=gp, tau_prime=0.5 * math.pi / tau)


def substitution_gamma(gamma: float) -> float:
    """``(gamma + 3)/(gamma - 1)``, the exponent reached by ``r -> r**((1 - gamma)/2)``."""
    gamma = float(gamma)
    if not gamma < 1.0:
        raise DomainError(f"the substitution symmetry needs gamma < 1, got {gamma!r}")
    if gamma == -1.0:
        return -1.0
    return (gamma + 3.0) / (gamma - 1.0) + 0.0


def general_symmetry(gamma: float, t=None, r=None) -> SymmetryImage:
    """Apply ``(gamma, t, r) -> ((gamma+3)/(gamma-1), t sqrt(delta), r**delta)``.

    ``t`` and ``r`` may be omitted (or arrays). ``tau_prime`` is the image of
    the collapse time, ``tau(gamma) * sqrt(delta)``, which equals
    ``tau(gamma_prime)``.
    """
    gamma = float(gamma)
    gp = substitution_gamma(gamma)
    delta = 0.5 * (1.0 - gamma)
    scale = math.sqrt(delta)
    t_prime = None if t is None else np.asarray(t, dtype=float) * scale
    r_prime = None
    if r is not None:
        r_arr = np.asarray(r, dtype=float)
        if np.any(~((r_arr >= 0.0) & (r_arr <= 1.0))):
            raise DomainError("r must lie in [0, 1]")
        r_prime = r_arr**delta
    if t_prime is not None and t_prime.ndim == 0:
        t_prime = float(t_prime)
    if r_prime is not None and r_prime.ndim == 0:
        r_prime = float(r_prime)
    tau = collapse_time(make_gamma(gamma))
    return SymmetryImage(
        gamma=gamma,
        gamma_prime=gp,
        tau_prime=tau * scale,
        time_scale=scale,
        delta=delta,
        t_prime=t_prime,
        r_prime=r_prime,
    )
