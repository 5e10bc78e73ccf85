"""Command-line front end.

    sphcollapse tau --gamma -2
    sphcollapse solve --gamma -4 --n 1000 --include oracle,approx
    sphcollapse invert --gamma -3 --r 0.8
    sphcollapse approx --gamma -4 --shape p1
    sphcollapse validate --gamma 3
    sphcollapse scenario cavitation R0=1 dp=3.5e7 rho=1e3

Output is deterministic: floats are written as their shortest round-trip
decimal, divergent velocities as ``-INF``/``INF``. Exit codes: 0 success,
1 validation failed, 2 usage or domain error, 3 unsupported option
combination, 4 convergence failure.
"""

from __future__ import annotations

import json
import math
import sys

import click
import numpy as np

from . import approx as _approx
from .collapse import evaluate_t, make_gamma, rdot_at_collapse, solution
from .errors import CollapseError, ConvergenceError, DomainError, UnsupportedCombinationError
from .refode import IntegratorConfig, integrate_reference, parametric_r, validate_explicit
from .scenarios import Kind, build_scenario, physical_collapse_time, to_physical
from .series import SampleSeries, explicit_series

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_CONVERGENCE = 4

VALIDATION_TOL = 1e-6
_SOURCE_ORDER = {"explicit": 0, "oracle": 1, "approx": 2, "parametric": 3}
_OVERLAYS = ("oracle", "approx", "parametric")


def fmt(x) -> str:
    """Shortest round-trip decimal; ``INF``/``-INF`` for infinities."""
    x = float(x)
    if math.isinf(x):
        return "INF" if x > 0 else "-INF"
    if math.isnan(x):
        raise ValueError("refusing to format NaN")
    return repr(x + 0.0)  # + 0.0 folds -0.0 into 0.0


def _json_value(x):
    s = fmt(x)
    return s if s in ("INF", "-INF") else float(s)


def _rows(series_list):
    rows = []
    for s in series_list:
        for t, r, v in zip(s.t, s.r, s.rdot):
            rows.append((float(t), _SOURCE_ORDER[s.source], float(r), float(v), s.source))
    rows.sort(key=lambda row: (row[0], row[1]))
    return [(t, r, v, src) for t, _, r, v, src in rows]


def _emit_table(rows, fmt_name, header, meta=None, comments=()):
    out = click.get_text_stream("stdout")
    if fmt_name == "csv":
        for line in comments:
            out.write("# " + line + "\n")
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join([fmt(row[0]), fmt(row[1]), fmt(row[2]), row[3]]) + "\n")
    else:
        doc = dict(meta or {})
        doc["samples"] = [
            {header[0]: _json_value(row[0]), header[1]: _json_value(row[1]), header[2]: _json_value(row[2]), header[3]: row[3]}
            for row in rows
        ]
        out.write(json.dumps(doc, allow_nan=False) + "\n")


def _parse_include(values):
    items = []
    for v in values:
        items.extend(x.strip().lower() for x in v.split(",") if x.strip())
    for x in items:
        if x not in _OVERLAYS:
            raise click.BadParameter(f"unknown overlay {x!r}; choose from {', '.join(_OVERLAYS)}", param_hint="--include")
    return tuple(dict.fromkeys(items))


def _default_shape(gamma: float) -> str:
    param = make_gamma(gamma)
    if param.gamma > -1.0 and not param.critical:
        return "q1"
    return "p2" if param.critical else "p1"


class _Group(click.Group):
    """Maps library exceptions onto the exit-code contract."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except UnsupportedCombinationError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_UNSUPPORTED)
        except ConvergenceError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_CONVERGENCE)
        except (DomainError, CollapseError) as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_USAGE)


_gamma_opt = click.option("--gamma", type=float, required=True, help="Exponent gamma of r'' = -r^gamma.")
_format_opt = click.option("--format", "fmt_name", type=click.Choice(["csv", "json"]), default="csv", show_default=True)


@click.group(cls=_Group)
def main():
    """Explicit solution of the spherical collapse equation r'' = -r^gamma."""


@main.command()
@_gamma_opt
@_format_opt
def tau(gamma, fmt_name):
    """Collapse time, collapse velocity, eta and alpha."""
    param = make_gamma(gamma)
    sol = solution(param)
    values = {
        "gamma": param.gamma,
        "tau": sol.tau,
        "rdot_tau": rdot_at_collapse(param),
        "eta": param.eta,
        "alpha": param.alpha,
    }
    if fmt_name == "csv":
        click.echo(",".join(values))
        click.echo(",".join(fmt(v) for v in values.values()))
    else:
        click.echo(json.dumps({k: _json_value(v) for k, v in values.items()}))


@main.command()
@_gamma_opt
@click.option("--n", "n", type=click.IntRange(min=2), default=1000, show_default=True, help="Uniform samples on [0, tau].")
@_format_opt
@click.option("--include", "include", multiple=True, help="Overlays: oracle, approx, parametric (repeat or comma-separate).")
@click.option("--shape", type=click.Choice(["p1", "p2", "q1", "q2"]), default=None, help="Approximation shape for --include approx.")
def solve(gamma, n, fmt_name, include, shape):
    """Sample r(t) on a uniform grid over [0, tau]."""
    overlays = _parse_include(include)
    sol = solution(gamma)
    if "parametric" in overlays and sol.gamma != -2.0:
        raise UnsupportedCombinationError(f"the parametric overlay exists only for gamma = -2, not {sol.gamma!r}")
    if shape is not None and "approx" not in overlays:
        raise UnsupportedCombinationError("--shape only applies together with --include approx")
    base = explicit_series(sol, n)
    series = [base]
    if "oracle" in overlays:
        ref = integrate_reference(sol.gamma, IntegratorConfig(), t_eval=base.t, record_steps=False)
        keep = ref.r >= 0.0
        series.append(SampleSeries(ref.t[keep], ref.r[keep], ref.rdot[keep], "oracle"))
    if "approx" in overlays:
        spec = _approx.resolve_shape(sol.gamma, shape or _default_shape(sol.gamma))
        series.append(SampleSeries(base.t, _approx.evaluate_approx(spec, base.t), _approx.approx_rdot(spec, base.t), "approx"))
    if "parametric" in overlays:
        r_par, v_par = parametric_r(base.t)
        series.append(SampleSeries(base.t, r_par, v_par, "parametric"))
    meta = {"gamma": _json_value(sol.gamma), "tau": _json_value(sol.tau)}
    _emit_table(_rows(series), fmt_name, ("t", "r", "rdot", "source"), meta)


@main.command()
@_gamma_opt
@click.option("--r", "r", type=float, required=True, help="Radius in [0, 1].")
def invert(gamma, r):
    """Time t(r) at which the collapse passes radius r."""
    if not (0.0 <= r <= 1.0):
        raise DomainError(f"--r must lie in [0, 1], got {r!r}")
    click.echo(fmt(evaluate_t(solution(gamma), r)))


@main.command("approx")
@_gamma_opt
@click.option("--shape", type=click.Choice(["p1", "p2", "q1", "q2"]), default=None, help="Defaults to p1 / p2 / q1 by regime.")
@click.option("--n", "n", type=click.IntRange(min=2), default=1000, show_default=True)
def approx_cmd(gamma, shape, n):
    """Error of the polynomial approximation against the exact solution (JSON)."""
    rep = _approx.approx_error_report(gamma, shape or _default_shape(gamma), n)
    doc = {
        "gamma": _json_value(rep.gamma),
        "shape": rep.shape.value,
        "value": _json_value(rep.value),
        "n_grid": rep.n_grid,
        "max_abs_err": _json_value(rep.max_abs_err),
        "rms_err": _json_value(rep.rms_err),
    }
    click.echo(json.dumps(doc))


@main.command()
@_gamma_opt
@click.option("--n", "n", type=click.IntRange(min=10), default=200, show_default=True, help="Uniform landing times for the integrator.")
@click.pass_context
def validate(ctx, gamma, n):
    """Cross-check the explicit solution against numerical integration (JSON)."""
    rep = validate_explicit(gamma, n)
    doc = rep.to_dict()
    doc["tolerance"] = VALIDATION_TOL
    doc["passed"] = rep.passed(VALIDATION_TOL)
    doc["cross_checks_passed"] = {k: v <= VALIDATION_TOL for k, v in rep.cross_checks.items()}
    click.echo(json.dumps(doc, allow_nan=False))
    if not doc["passed"] or not all(doc["cross_checks_passed"].values()):
        ctx.exit(EXIT_VALIDATION)


def _parse_pairs(pairs):
    params = {}
    for item in pairs:
        if "=" not in item:
            raise DomainError(f"scenario parameters are key=value pairs, got {item!r}")
        key, _, val = item.partition("=")
        params[key.strip()] = val.strip()
    return params


@main.command(context_settings={"ignore_unknown_options": True})
@click.argument("kind", type=click.Choice([k.value for k in Kind]))
@click.argument("params", nargs=-1)
@click.option("--n", "n", type=click.IntRange(min=2), default=1000, show_default=True)
@_format_opt
def scenario(kind, params, n, fmt_name):
    """Dimensional collapse for a physical scenario, e.g. ``cavitation R0=1 dp=3.5e7 rho=1e3``."""
    sc = build_scenario(kind, _parse_pairs(params))
    sol = solution(sc.gamma)
    dim = to_physical(sc, explicit_series(sol, n))
    tc = physical_collapse_time(sc)
    k_unit = f"{sc.r_unit}^({fmt(1.0 - sc.gamma)}) {sc.t_unit}^-2"
    header = {
        "kind": sc.kind.value,
        "gamma": sc.gamma,
        "k": sc.k,
        "R0": sc.R0,
        "T0": sc.T0,
        "tau": sol.tau,
        "T_c": tc,
    }
    units = {"k": k_unit, "R0": sc.r_unit, "T0": sc.t_unit, "T_c": sc.t_unit}
    rows = [(float(T), float(R), float(V), "explicit") for T, R, V in zip(dim.T, dim.R, dim.Rdot)]
    if fmt_name == "csv":
        comments = [f"kind={sc.kind.value}", f"R means {sc.r_role} [{sc.r_unit}], T means {sc.t_role} [{sc.t_unit}]"]
        for key in ("gamma", "k", "R0", "T0", "tau", "T_c"):
            unit = f" [{units[key]}]" if key in units else ""
            comments.append(f"{key}={fmt(header[key])}{unit}")
        for key in sorted(sc.params):
            comments.append(f"param {key}={fmt(sc.params[key])} [{sc.units.get(key, '')}]")
        _emit_table(rows, "csv", ("T", "R", "Rdot", "source"), comments=comments)
    else:
        meta = {
            "scenario": {
                **{k: (v if isinstance(v, str) else _json_value(v)) for k, v in header.items()},
                "units": units,
                "r_role": sc.r_role,
                "t_role": sc.t_role,
                "params": {k: _json_value(v) for k, v in sorted(sc.params.items())},
            }
        }
        _emit_table(rows, "json", ("T", "R", "Rdot", "source"), meta)


def run(argv=None) -> int:
    """Invoke the CLI and return its exit code instead of exiting."""
    try:
        rv = main.main(args=argv, prog_name="sphcollapse", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        return EXIT_USAGE
    # without standalone mode, ctx.exit(code) surfaces as the return value
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
