import math
import warnings
import zlib

import numpy as np
import pytest

from oracle_values import TAU_MINUS_7
from sphcollapse.collapse import collapse_time, solution
from sphcollapse.errors import ScenarioError
from sphcollapse.refode import parametric_tophat
from sphcollapse.scenarios import (
    G_NEWTON,
    Kind,
    build_scenario,
    physical_collapse_time,
    to_dimensionless,
    to_physical,
    transform_k,
)
from sphcollapse.series import SampleSeries, explicit_series

GAMMA_BY_KIND = {
    "cavitation": -4.0,
    "tophat": -2.0,
    "two-body": -2.0,
    "log-potential": -1.0,
    "uniform": 0.0,
    "dipole": -3.0,
    "gw-decay": -7.0,
    "harmonic": 1.0,
}


def random_params(kind, rng):
    draw = lambda: float(10.0 ** rng.uniform(-3, 3))  # noqa: E731
    base = {
        "cavitation": ["R0", "dp", "rho"],
        "bubble-nd": ["R0", "dp", "rho"],
        "tophat": ["rho0", "R0"],
        "two-body": ["R0", "M1", "M2"],
        "power-law": ["R0", "L", "V"],
        "log-potential": ["R0", "V"],
        "uniform": ["R0", "g"],
        "dipole": ["R0", "M", "Q", "q"],
        "gw-decay": ["R0", "M1", "M2"],
        "harmonic": ["M", "K", "R0"],
        "polytrope": ["K", "R0"],
    }[kind]
    p = {k: draw() for k in base}
    if kind == "bubble-nd":
        p["N"] = float(rng.integers(3, 8))
    if kind == "power-law":
        p["index"] = float(rng.choice([-3.0, -1.5, 0.5, 2.0, 4.0]))
    if kind == "dipole":
        p["eps"] = 1e-3 * p["R0"]
    if kind == "polytrope":
        p["n"] = float(rng.uniform(0.5, 4.5))
    return p


class TestCatalog:
    @pytest.mark.parametrize("kind, gamma", sorted(GAMMA_BY_KIND.items()))
    def test_gamma_column(self, kind, gamma):
        rng = np.random.default_rng(1)
        assert build_scenario(kind, random_params(kind, rng)).gamma == gamma

    def test_variable_exponents(self):
        assert build_scenario("bubble-nd", R0=1, dp=1, rho=1, N=5).gamma == -6.0
        assert build_scenario("power-law", R0=1, L=1, V=1, index=-1.5).gamma == -2.5
        assert build_scenario("polytrope", n=1.5, K=1, R0=1).gamma == 1.5

    @pytest.mark.parametrize("kind", [k.value for k in Kind])
    def test_natural_time_relation(self, kind):
        rng = np.random.default_rng(zlib.crc32(kind.encode()))
        for _ in range(100):
            sc = build_scenario(kind, random_params(kind, rng))
            t0 = math.sqrt(sc.R0 ** (1.0 - sc.gamma) / sc.k)
            assert t0 == pytest.approx(sc.T0, rel=1e-12)

    def test_uniform_field(self):
        sc = build_scenario("uniform", R0=1.0, g=9.81)
        assert round(sc.T0, 4) == 0.3193
        assert physical_collapse_time(sc) == pytest.approx(math.sqrt(2.0) * math.sqrt(1.0 / 9.81), rel=1e-14)

    def test_cavitation(self):
        sc = build_scenario("cavitation", R0=1.0, dp=3.5e7, rho=1e3)
        assert sc.T0 == pytest.approx(5.345e-3, rel=1e-3)
        assert 4.8e-3 <= physical_collapse_time(sc) <= 5.0e-3
        assert sc.k == pytest.approx(1.0**3 * 3.5e7 / 1e3, rel=1e-14)

    def test_tophat_formula(self):
        sc = build_scenario("tophat", rho0=2e-21, G=6.674e-11)
        assert sc.gamma == -2.0
        assert sc.T0 == pytest.approx(math.sqrt(3.0 / (4.0 * math.pi * 6.674e-11 * 2e-21)), rel=1e-14)

    def test_mass_equivalence(self):
        sc = build_scenario("tophat", rho0=3.0, R0=2.0)
        mass = 4.0 / 3.0 * math.pi * 2.0**3 * 3.0
        assert sc.k == pytest.approx(G_NEWTON * mass, rel=1e-14)
        sc2 = build_scenario("two-body", R0=5.0, M1=2.0, M2=7.0)
        assert sc2.k == pytest.approx(G_NEWTON * 9.0, rel=1e-14)

    def test_gw_decay_uses_tau_minus_7(self):
        sc = build_scenario("gw-decay", R0=1e8, M1=2e30, M2=3e30)
        assert physical_collapse_time(sc) / sc.T0 == pytest.approx(TAU_MINUS_7, rel=1e-13)
        assert round(collapse_time(-7.0), 5) == 0.74683

    def test_harmonic(self):
        sc = build_scenario("harmonic", M=2.0, K=8.0)
        assert physical_collapse_time(sc) == pytest.approx(0.5 * math.pi * 0.5, rel=1e-14)

    def test_scale_invariance(self):
        a = physical_collapse_time(build_scenario("uniform", R0=1.0, g=9.81))
        b = physical_collapse_time(build_scenario("uniform", R0=2.0, g=9.81))
        assert b / a == pytest.approx(math.sqrt(2.0), rel=1e-15)

    def test_polytrope_roles(self):
        sc = build_scenario("polytrope", n=1.0, K=1.0, R0=1.0)
        assert sc.r_role.startswith("rho") and sc.t_role == "distance"


class TestErrors:
    def test_missing(self):
        with pytest.raises(ScenarioError, match="missing"):
            build_scenario("cavitation", R0=1.0, dp=1.0)

    def test_nonpositive(self):
        with pytest.raises(ScenarioError, match="positive"):
            build_scenario("uniform", R0=1.0, g=-9.81)

    def test_unknown_parameter(self):
        with pytest.raises(ScenarioError, match="unknown"):
            build_scenario("uniform", R0=1.0, g=9.81, mass=3.0)

    def test_unknown_kind(self):
        with pytest.raises(ScenarioError):
            build_scenario("wormhole", R0=1.0)

    def test_dimension_floor(self):
        with pytest.raises(ScenarioError, match="N >= 3"):
            build_scenario("bubble-nd", R0=1, dp=1, rho=1, N=2)

    def test_non_numeric(self):
        with pytest.raises(ScenarioError):
            build_scenario("uniform", R0="one", g=9.81)

    def test_dipole_warning(self):
        with pytest.warns(UserWarning, match="far-field"):
            build_scenario("dipole", R0=1.0, M=1.0, eps=0.1, Q=1.0, q=1.0)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            build_scenario("dipole", R0=1.0, M=1.0, eps=1e-3, Q=1.0, q=1.0)


class TestConversion:
    def test_origin(self):
        sc = build_scenario("cavitation", R0=2.0, dp=1e5, rho=1e3)
        out = to_physical(sc, SampleSeries(np.array([0.0]), np.array([1.0]), np.array([0.0]), "explicit"))
        assert out.T[0] == 0.0 and out.R[0] == 2.0

    def test_tophat_endpoint(self):
        sc = build_scenario("tophat", rho0=1e-20)
        p = parametric_tophat(math.pi)
        out = to_physical(sc, SampleSeries(np.array([p.t]), np.array([p.r]), np.array([0.0]), "parametric"))
        assert out.T[0] == pytest.approx(physical_collapse_time(sc), rel=1e-15)
        assert out.R[0] == pytest.approx(0.0, abs=1e-30)

    def test_roundtrip(self):
        sc = build_scenario("gw-decay", R0=3e8, M1=2e30, M2=2e30)
        s = explicit_series(solution(sc.gamma), 200)
        back = to_dimensionless(sc, to_physical(sc, s))
        for a, b in ((s.t, back.t), (s.r, back.r), (s.rdot, back.rdot)):
            fin = np.isfinite(a)
            assert np.max(np.abs(a[fin] - b[fin]) / np.maximum(1.0, np.abs(a[fin]))) <= 1e-14


class TestTransformK:
    def test_rayleigh_form(self):
        sc = build_scenario("cavitation", R0=0.3, dp=3.5e7, rho=1e3)
        assert transform_k(sc) == pytest.approx(5.0 * 3.5e7 / (2.0 * 1e3), rel=1e-14)

    def test_fixed_point(self):
        sc = build_scenario("log-potential", R0=3.0, V=2.0)
        assert transform_k(sc) == pytest.approx(sc.k, rel=1e-15)

    def test_tophat(self):
        sc = build_scenario("tophat", rho0=5.0, R0=2.0)
        mass = 4.0 / 3.0 * math.pi * 8.0 * 5.0
        assert transform_k(sc) == pytest.approx(1.5 * G_NEWTON * mass / 2.0, rel=1e-14)

    def test_domain(self):
        with pytest.raises(ScenarioError):
            transform_k(build_scenario("harmonic", M=1.0, K=1.0))
