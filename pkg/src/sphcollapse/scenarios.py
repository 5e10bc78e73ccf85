"""Dimensional scenarios governed by ``d2R/dT2 = -k R**gamma``.

Each kind knows its exponent and natural scale ``T0``; ``k`` is back-solved
from ``T0 = sqrt(R0**(1 - gamma) / k)``. All parameters are SI. Physical
constants (``G``, ``c``, ``k_e``) have CODATA defaults and may be overridden.

For the polytrope, ``R`` stands for ``rho**(1/n)`` and ``T`` is a distance;
the scenario carries role labels so output can be captioned correctly.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .collapse import collapse_time, make_gamma
from .errors import ScenarioError
from .series import SampleSeries

__all__ = [
    "Kind",
    "PhysicalScenario",
    "DimensionalSeries",
    "build_scenario",
    "physical_collapse_time",
    "to_physical",
    "to_dimensionless",
    "transform_k",
    "G_NEWTON",
    "C_LIGHT",
    "K_COULOMB",
]

G_NEWTON = 6.67430e-11  # m^3 kg^-1 s^-2
C_LIGHT = 299792458.0  # m s^-1
K_COULOMB = 8.9875517923e9  # N m^2 C^-2


class Kind(enum.Enum):
    CAVITATION_BUBBLE = "cavitation"
    BUBBLE_N_DIM = "bubble-nd"
    TOP_HAT_COLLAPSE = "tophat"
    TWO_BODY_COLLISION = "two-body"
    POWER_LAW_POTENTIAL_FALL = "power-law"
    LOG_POTENTIAL_FALL = "log-potential"
    UNIFORM_FIELD_FALL = "uniform"
    DIPOLE_ACCELERATION = "dipole"
    RELATIVISTIC_ORBITAL_DECAY = "gw-decay"
    HARMONIC_OSCILLATOR = "harmonic"
    POLYTROPE = "polytrope"

    @classmethod
    def parse(cls, s) -> "Kind":
        if isinstance(s, cls):
            return s
        key = str(s).lower().replace("_", "-")
        for k in cls:
            if key in (k.value, k.name.lower().replace("_", "-")):
                return k
        raise ScenarioError(f"unknown scenario kind {s!r}; expected one of {', '.join(k.value for k in cls)}")


@dataclass(frozen=True)
class _Schema:
    required: tuple
    defaults: dict
    units: dict
    r_role: str = "length"
    t_role: str = "time"
    r_unit: str = "m"
    t_unit: str = "s"


_SCHEMAS = {
    Kind.CAVITATION_BUBBLE: _Schema(("R0", "dp", "rho"), {}, {"R0": "m", "dp": "Pa", "rho": "kg m^-3"}),
    Kind.BUBBLE_N_DIM: _Schema(("R0", "dp", "rho", "N"), {}, {"R0": "m", "dp": "Pa", "rho": "kg m^-3", "N": "1"}),
    Kind.TOP_HAT_COLLAPSE: _Schema(("rho0",), {"G": G_NEWTON, "R0": 1.0}, {"rho0": "kg m^-3", "G": "m^3 kg^-1 s^-2", "R0": "m"}),
    Kind.TWO_BODY_COLLISION: _Schema(("R0", "M1", "M2"), {"G": G_NEWTON}, {"R0": "m", "M1": "kg", "M2": "kg", "G": "m^3 kg^-1 s^-2"}),
    Kind.POWER_LAW_POTENTIAL_FALL: _Schema(("R0", "L", "V", "index"), {}, {"R0": "m", "L": "m", "V": "m s^-1", "index": "1"}),
    Kind.LOG_POTENTIAL_FALL: _Schema(("R0", "V"), {}, {"R0": "m", "V": "m s^-1"}),
    Kind.UNIFORM_FIELD_FALL: _Schema(("R0", "g"), {}, {"R0": "m", "g": "m s^-2"}),
    Kind.DIPOLE_ACCELERATION: _Schema(
        ("R0", "M", "eps", "Q", "q"), {"k_e": K_COULOMB}, {"R0": "m", "M": "kg", "eps": "m", "Q": "C", "q": "C", "k_e": "N m^2 C^-2"}
    ),
    Kind.RELATIVISTIC_ORBITAL_DECAY: _Schema(
        ("R0", "M1", "M2"), {"G": G_NEWTON, "c": C_LIGHT}, {"R0": "m", "M1": "kg", "M2": "kg", "G": "m^3 kg^-1 s^-2", "c": "m s^-1"}
    ),
    Kind.HARMONIC_OSCILLATOR: _Schema(("M", "K"), {"R0": 1.0}, {"M": "kg", "K": "N m^-1", "R0": "m"}),
    Kind.POLYTROPE: _Schema(
        ("n", "K", "R0"),
        {"G": G_NEWTON},
        {"n": "1", "K": "SI (p = K rho^(1+1/n))", "R0": "(kg m^-3)^(1/n)", "G": "m^3 kg^-1 s^-2"},
        r_role="rho^(1/n)",
        t_role="distance",
        r_unit="(kg m^-3)^(1/n)",
        t_unit="m",
    ),
}

# parameters allowed to be zero or negative
_SIGNED = {"index"}


@dataclass(frozen=True)
class PhysicalScenario:
    kind: Kind
    params: dict
    gamma: float
    R0: float
    T0: float
    k: float
    r_role: str = "length"
    t_role: str = "time"
    r_unit: str = "m"
    t_unit: str = "s"
    units: dict = field(default_factory=dict)

    @property
    def tau(self) -> float:
        return collapse_time(make_gamma(self.gamma))


@dataclass(frozen=True)
class DimensionalSeries:
    T: np.ndarray
    R: np.ndarray
    Rdot: np.ndarray
    source: str


def _scale(kind: Kind, p: dict) -> tuple:
    """``(gamma, T0)`` for a kind, from its natural-scale formula."""
    if kind is Kind.CAVITATION_BUBBLE:
        return -4.0, p["R0"] * math.sqrt(p["rho"] / p["dp"])
    if kind is Kind.BUBBLE_N_DIM:
        n = p["N"]
        return -n - 1.0, p["R0"] * math.sqrt(p["rho"] / p["dp"]) / math.sqrt(n - 2.0)
    if kind is Kind.TOP_HAT_COLLAPSE:
        return -2.0, math.sqrt(3.0 / (4.0 * math.pi * p["G"] * p["rho0"]))
    if kind is Kind.TWO_BODY_COLLISION:
        return -2.0, p["R0"] ** 1.5 / math.sqrt(p["G"] * (p["M1"] + p["M2"]))
    if kind is Kind.POWER_LAW_POTENTIAL_FALL:
        a = p["index"]
        # potential sgn(a) V^2 (R/L)^a gives force -|a| V^2 R^(a-1) / L^a
        return a - 1.0, math.sqrt((p["L"] / p["R0"]) ** a / abs(a)) * p["R0"] / p["V"]
    if kind is Kind.LOG_POTENTIAL_FALL:
        return -1.0, p["R0"] / p["V"]
    if kind is Kind.UNIFORM_FIELD_FALL:
        return 0.0, math.sqrt(p["R0"] / p["g"])
    if kind is Kind.DIPOLE_ACCELERATION:
        return -3.0, math.sqrt(p["M"] * p["R0"] ** 4 / (4.0 * p["eps"] * p["k_e"] * p["Q"] * p["q"]))
    if kind is Kind.RELATIVISTIC_ORBITAL_DECAY:
        m1, m2, G, c = p["M1"], p["M2"], p["G"], p["c"]
        return -7.0, 5.0 * c**5 * p["R0"] ** 4 / (64.0 * math.sqrt(3.0) * G**3 * m1 * m2 * (m1 + m2))
    if kind is Kind.HARMONIC_OSCILLATOR:
        return 1.0, math.sqrt(p["M"] / p["K"])
    if kind is Kind.POLYTROPE:
        n = p["n"]
        return n, math.sqrt((1.0 + n) * p["K"] * p["R0"] ** (1.0 - n) / (4.0 * math.pi * p["G"]))
    raise ScenarioError(f"unhandled kind {kind!r}")  # pragma: no cover


def build_scenario(kind, params: dict | None = None, **kwargs) -> PhysicalScenario:
    """Construct a scenario from its physical parameters.

    >>> sc = build_scenario("uniform", R0=1.0, g=9.81)
    >>> sc.gamma, round(sc.T0, 4)
    (0.0, 0.3193)
    """
    kind = Kind.parse(kind)
    schema = _SCHEMAS[kind]
    given = dict(params or {})
    given.update(kwargs)
    allowed = set(schema.required) | set(schema.defaults)
    unknown = sorted(set(given) - allowed)
    if unknown:
        raise ScenarioError(f"unknown parameter(s) {', '.join(unknown)} for {kind.value}; allowed: {', '.join(sorted(allowed))}")
    missing = [k for k in schema.required if k not in given]
    if missing:
        raise ScenarioError(f"missing parameter(s) {', '.join(missing)} for {kind.value}")
    p = dict(schema.defaults)
    for key, val in given.items():
        try:
            v = float(val)
        except (TypeError, ValueError):
            raise ScenarioError(f"parameter {key}={val!r} is not a number") from None
        if not math.isfinite(v):
            raise ScenarioError(f"parameter {key} must be finite, got {v!r}")
        if key not in _SIGNED and not v > 0.0:
            raise ScenarioError(f"parameter {key} must be positive, got {v!r}")
        p[key] = v
    if kind is Kind.BUBBLE_N_DIM and p["N"] < 3.0:
        raise ScenarioError(f"bubble-nd needs N >= 3 dimensions, got N={p['N']!r}")
    if kind is Kind.POWER_LAW_POTENTIAL_FALL and p["index"] == 0.0:
        raise ScenarioError("power-law potential index must be nonzero; use log-potential for the logarithmic case")
    if kind is Kind.DIPOLE_ACCELERATION and p["eps"] > 0.01 * p["R0"]:
        warnings.warn(
            f"dipole separation eps={p['eps']!r} is not small against R0={p['R0']!r}; the R^-3 force law is a far-field approximation",
            stacklevel=2,
        )
    gamma, T0 = _scale(kind, p)
    R0 = p["R0"]
    k = R0 ** (1.0 - gamma) / (T0 * T0)
    return PhysicalScenario(
        kind=kind,
        params=p,
        gamma=float(gamma),
        R0=R0,
        T0=T0,
        k=k,
        r_role=schema.r_role,
        t_role=schema.t_role,
        r_unit=schema.r_unit,
        t_unit=schema.t_unit,
        units=dict(schema.units),
    )


def physical_collapse_time(sc: PhysicalScenario) -> float:
    """``T_c = tau(gamma) * T0``."""
    return collapse_time(make_gamma(sc.gamma)) * sc.T0


def to_physical(sc: PhysicalScenario, series: SampleSeries) -> DimensionalSeries:
    """Rescale ``(t, r, rdot)`` to ``(T0 t, R0 r, R0/T0 rdot)``."""
    return DimensionalSeries(series.t * sc.T0, series.r * sc.R0, series.rdot * (sc.R0 / sc.T0), series.source)


def to_dimensionless(sc: PhysicalScenario, series: DimensionalSeries) -> SampleSeries:
    """Inverse of :func:`to_physical`."""
    return SampleSeries(series.T / sc.T0, series.R / sc.R0, series.Rdot * (sc.T0 / sc.R0), series.source)


def transform_k(sc: PhysicalScenario) -> float:
    """Constant of the substituted equation for ``Z = R**delta``: ``k delta R0**(1+gamma)``."""
    if not sc.gamma < 1.0:
        raise ScenarioError(f"the substitution symmetry needs gamma < 1, got {sc.gamma!r}")
    delta = 0.5 * (1.0 - sc.gamma)
    return sc.k * delta * sc.R0 ** (1.0 + sc.gamma)
