"""Command-line interface.

Usage:
    quadprimes pi 122 --engine exact
    quadprimes table 5.3
    quadprimes figure 9.1 --max 330 --format json
    quadprimes goldbach 36
    quadprimes divisibility --sweep 500000
    quadprimes gapcheck 1000000

Check commands (``divisibility --sweep``, ``gapcheck``) exit with status 2
when they find a violation.
"""
from __future__ import annotations

import functools
import json
import sys
import time

import click

from . import __version__
from . import binomial_divisibility as bd
from . import distribution_models as dm
from . import exact_count as ec
from . import report as rp
from . import sieve_oracle as so
from .errors import InvariantViolation, NotApplicableError, QuadPrimesError

VIOLATION_EXIT = 2


def model_options(func):
    @click.option("--a-prime", type=float, default=dm.DEFAULT_A_PRIME, show_default=True, help="Density constant A'.")
    @click.option("--band", type=click.Choice(["printed", "squared"]), default="squared", show_default=True)
    @click.option("--mode", type=click.Choice(["unit", "fit"]), default="fit", show_default=True,
                  help="unit: A' = ln 3; fit: A' as given.")
    @click.option("--ceiling", type=int, default=None, help="Sieve range ceiling (default 2^40).")
    @click.option("--format", "fmt_name", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
    @functools.wraps(func)
    def wrapper(*args, a_prime, band, mode, ceiling, fmt_name, **kwargs):
        if ceiling is not None:
            so.set_default_ceiling(ceiling)
        try:
            params = dm.ModelParams(a_prime=a_prime, band_variant=band, a_doubleprime_mode=mode)
            return func(*args, params=params, fmt_name=fmt_name, **kwargs)
        except (NotApplicableError,) as exc:
            raise click.ClickException(str(exc)) from exc
        except InvariantViolation as exc:
            click.echo(f"invariant violation: {exc}", err=True)
            sys.exit(VIOLATION_EXIT)
        except QuadPrimesError as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


def _emit(fmt_name: str, params: dm.ModelParams, extra: dict, fields: dict) -> None:
    header = {**params.header(), **extra}
    if fmt_name == "json":
        click.echo(json.dumps({"header": {"version": __version__, **header}, **fields}, indent=2))
        return
    click.echo(f"# quadprimes {__version__} " + " ".join(f"{k}={rp.fmt(v)}" for k, v in header.items()))
    for k, v in fields.items():
        if isinstance(v, list):
            v = " ".join(map(str, v))
        click.echo(f"{k}={rp.fmt(v)}")


@click.group()
@click.version_option(__version__, prog_name="quadprimes")
def main() -> None:
    """Prime counting, quadratic-interval models and their sieve checks."""


@main.command("pi")
@click.argument("x", type=int)
@click.option("--engine", type=click.Choice(["oracle", "exact"]), default="oracle", show_default=True)
@model_options
def cmd_pi(x, engine, params, fmt_name):
    """Count primes (and non-primes) up to X."""
    if x < 1:
        raise click.BadParameter("x must be >= 1")
    start = time.perf_counter()
    if engine == "exact":
        sigma = ec.sigma_exact(x)
        pi = x - sigma
    else:
        pi = so.pi_oracle(x)
        sigma = x - pi
    elapsed = time.perf_counter() - start
    _emit(fmt_name, params, {"engine": engine}, {"x": x, "sigma": sigma, "pi": pi, "elapsed_s": round(elapsed, 6)})


@main.command("table")
@click.argument("table_id", type=click.Choice(sorted(rp.TABLES)))
@model_options
def cmd_table(table_id, params, fmt_name):
    """Recompute a reference table with observed and delta columns."""
    click.echo(rp.build_table(table_id, params).render(fmt_name), nl=False)


@main.command("figure")
@click.argument("fig_id", type=click.Choice(sorted(rp.FIGURES)))
@click.option("--min", "lo", type=int, default=None, help="First n (or 2m).")
@click.option("--max", "hi", type=int, default=None, help="Last n (or 2m).")
@model_options
def cmd_figure(fig_id, lo, hi, params, fmt_name):
    """Emit plot data: key, observed, model mean, lower, upper."""
    click.echo(rp.build_figure(fig_id, params, lo, hi).render(fmt_name), nl=False)


@main.command("goldbach")
@click.argument("two_m", type=int)
@model_options
def cmd_goldbach(two_m, params, fmt_name):
    """Count decompositions 2m = p + q into odd primes and compare with the model."""
    count, witnesses = so.goldbach_count_oracle(two_m)
    fields = {"two_m": two_m, "count": count, "witnesses": [f"{w.p}+{w.q}" for w in witnesses]}
    if two_m >= 8:
        pred = dm.goldbach_model(two_m, params)
        fields.update(n=pred.n, model_mean=pred.mean, model_lower=pred.lower, model_upper=pred.upper)
    _emit(fmt_name, params, {"engine": "oracle"}, fields)


@main.command("divisibility")
@click.argument("n", type=int, required=False)
@click.option("--sweep", type=int, default=None, help="Check every n up to this limit.")
@model_options
def cmd_divisibility(n, sweep, params, fmt_name):
    """Which of 2^n -+ 1 the prime 2n+1 divides; or sweep all n."""
    if sweep is not None:
        result = bd.satz27_sweep(sweep)
        _emit(
            fmt_name,
            params,
            {"engine": "modpow", "check": "divisibility-sweep"},
            {"limit": result.limit, "checked": result.checked, "out_of_scope": result.out_of_scope,
             "violations": len(result.violations)},
        )
        if result.violations:
            sys.exit(VIOLATION_EXIT)
        return
    if n is None:
        raise click.UsageError("give N or --sweep LIMIT")
    v = bd.satz27_verdict(n)
    _emit(fmt_name, params, {"engine": "modpow", "check": "divisibility"}, {
        "n": v.n, "p_prime": v.p_prime, "clause": v.clause,
        "divides_minus": v.divides_minus, "divides_plus": v.divides_plus, "absorbed_by": v.absorbed_by,
    })


@main.command("gapcheck")
@click.argument("x", type=int)
@model_options
def cmd_gapcheck(x, params, fmt_name):
    """Scan consecutive primes <= X for gaps >= 2*floor(sqrt(upper))."""
    violations = so.gap_bound_check(x)
    gap, lower, upper = so.max_gap_up_to(x)
    _emit(fmt_name, params, {"engine": "oracle", "check": "gap-bound"}, {
        "x": x, "violations": len(violations), "max_gap": gap, "lower": lower, "upper": upper,
        "model": dm.max_gap_model(x, params),
    })
    if violations:
        sys.exit(VIOLATION_EXIT)


@main.command("delta")
@click.argument("two_n", type=int)
@model_options
def cmd_delta(two_n, params, fmt_name):
    """Classify 2n+1 and 2n+3 from differences of the exact non-prime count."""
    v = ec.delta_classify(two_n)
    twin = "" if v.twin is None else f"{v.twin[0]},{v.twin[1]}"
    _emit(fmt_name, params, {"engine": "exact"}, {
        "two_n": two_n, "sigma_2n": v.sigma_2n, "sigma_2n1": v.sigma_2n1, "sigma_2n3": v.sigma_2n3,
        "delta": v.delta, "delta2": v.delta2, "twin": twin,
    })


@main.command("interval")
@click.argument("n", type=int)
@click.option("--kind", type=click.Choice(["quadratic", "biquadratic"]), default="quadratic", show_default=True)
@model_options
def cmd_interval(n, kind, params, fmt_name):
    """Observed primes, twins and quadruplets in one interval."""
    s = so.interval_stats(n, kind)
    _emit(fmt_name, params, {"engine": "oracle", "kind": kind}, {
        "n": s.n, "lo": s.lo, "hi": s.hi, "width": s.width,
        "primes": s.prime_count, "twins": s.twin_count, "quadruplets": s.quad_count,
    })


if __name__ == "__main__":
    main()
