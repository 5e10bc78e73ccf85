"""Explicit solution of the spherical collapse equation r'' = -r^gamma."""

from ._accel import HAVE_NUMBA, backend
from .approx import approx_error_report, approx_rdot, evaluate_approx, resolve_shape
from .collapse import (
    CollapseSolution,
    GammaParam,
    Regime,
    closed_form,
    collapse_time,
    energy_residual,
    evaluate_extended,
    evaluate_r,
    evaluate_rdot,
    evaluate_state,
    evaluate_t,
    make_gamma,
    rdot_at_collapse,
    solution,
)
from .errors import (
    CollapseError,
    CollapseOverflowError,
    ConvergenceError,
    DomainError,
    IntegrationError,
    ScenarioError,
    ShapeError,
    UnsupportedCombinationError,
    UnsupportedGammaError,
)
from .refode import integrate_reference, parametric_tophat, validate_explicit
from .scenarios import build_scenario, physical_collapse_time, to_dimensionless, to_physical, transform_k
from .series import SampleSeries, explicit_series
from .specfun import AccuracyPolicy
from .symmetry import general_symmetry, tau_symmetry

__version__ = "0.1.0"
