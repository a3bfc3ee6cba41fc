"""Command-line entry point: ``arith-rr``."""
from __future__ import annotations

import sys
from typing import Callable, List

import click

from .checks import glaisher_check, invariance_checks, jacobi_checks, odd_vanishing_checks, theta3_check
from .constants import parse_constant
from .numerics import eval_constant, format_decimal
from .report import Report
from .theorems import g_formula, lemma23, prop31, r_integral, section4_assemble, theorem24
from .theta import chi, load_siegel_point, parse_characteristic, petersson_norm_chi, theta_with_bound

FORMAT = click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
DIGITS = click.option("--digits", type=click.IntRange(min=10), default=30, show_default=True)


def _emit(report: Report, fmt: str) -> None:
    click.echo(report.render(fmt))
    sys.exit(0 if report.passed else 1)


def _g_range(g_min: int, g_max: int) -> range:
    if g_max < g_min:
        raise click.BadParameter(f"--g-max ({g_max}) is below --g-min ({g_min})", param_hint="--g-max")
    return range(g_min, g_max + 1)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact and numerical checks of arithmetic Riemann-Roch identities."""


@main.group()
def verify():
    """Symbolic verification of the closed formulas."""


def _verify_over_g(name: str, fn: Callable, g_max_limit: int = 30):
    @verify.command(name)
    @click.option("--g-min", type=click.IntRange(2, g_max_limit), default=2, show_default=True)
    @click.option("--g-max", type=click.IntRange(2, g_max_limit), default=10, show_default=True)
    @FORMAT
    def cmd(g_min, g_max, fmt):
        results = [fn(g).to_record() for g in _g_range(g_min, g_max)]
        _emit(Report(f"verify {name}", {"g_min": g_min, "g_max": g_max}, results), fmt)

    cmd.__doc__ = (fn.__doc__ or name).strip().splitlines()[0]
    return cmd


_verify_over_g("lemma23", lemma23)
_verify_over_g("r-integral", r_integral)
_verify_over_g("theorem24", theorem24)
_verify_over_g("prop31", prop31, g_max_limit=12)


@verify.command("section4")
@FORMAT
def verify_section4(fmt):
    """Equivariant Lefschetz assembly for K3 surfaces with an involution."""
    _emit(Report("verify section4", {}, [r.to_record() for r in section4_assemble()]), fmt)


@verify.command("g-formula")
@click.option("--r-min", type=click.IntRange(0, 22), default=0, show_default=True)
@click.option("--r-max", type=click.IntRange(0, 22), default=22, show_default=True)
@FORMAT
def verify_g_formula(r_min, r_max, fmt):
    """G = 20 - 2 r_+ against the Lefschetz number of the involution."""
    if r_max < r_min:
        raise click.BadParameter("--r-max is below --r-min", param_hint="--r-max")
    results = [g_formula(r).to_record() for r in range(r_min, r_max + 1)]
    _emit(Report("verify g-formula", {"r_min": r_min, "r_max": r_max}, results), fmt)


@main.group()
def constants():
    """Exact constants."""


@constants.command("eval")
@click.option("--expr", required=True, help='Canonical text, e.g. "-4*zp(1) - 1*log(2)".')
@DIGITS
@FORMAT
def constants_eval(expr, digits, fmt):
    """Evaluate a constant numerically."""
    try:
        c = parse_constant(expr)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--expr")
    value = eval_constant(c, digits)
    rec = {"expr": str(c), "value": format_decimal(value, digits)}
    _emit(Report("constants eval", {"expr": expr, "digits": digits}, [rec]), fmt)


def _load(path, digits):
    try:
        return load_siegel_point(path, digits)
    except (OSError, ValueError) as exc:
        raise click.ClickException(f"cannot read period matrix: {exc}")


@main.group()
def theta():
    """Theta constants with half-integer characteristics."""


@theta.command("eval")
@click.option("--file", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--char", "char", required=True, help="Bit strings a,b (1 means 1/2), e.g. 10,00.")
@DIGITS
@FORMAT
def theta_eval(path, char, digits, fmt):
    """Evaluate theta[a;b](0, Omega)."""
    point = _load(path, digits)
    try:
        ch = parse_characteristic(char, point.g)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--char")
    value, bound = theta_with_bound(ch, point)
    rec = {"char": ch.label(), "parity": "even" if ch.is_even else "odd",
           "value": format_decimal(value, digits), "tail_bound": f"{bound:.3e}"}
    _emit(Report("theta eval", {"file": str(path), "char": char, "digits": digits}, [rec]), fmt)


@theta.command("invariance")
@click.option("--g", "g", type=click.IntRange(1, 2), default=1, show_default=True)
@click.option("--trials", type=click.IntRange(min=1), default=20, show_default=True)
@DIGITS
@click.option("--seed", type=int, default=0, show_default=True)
@FORMAT
def theta_invariance(g, trials, digits, seed, fmt):
    """Petersson norm of chi_g under random symplectic generators."""
    results = invariance_checks(g, trials, digits, seed)
    _emit(Report("theta invariance", {"g": g, "trials": trials, "digits": digits, "seed": seed}, results), fmt)


@main.group("chi")
def chi_group():
    """Igusa's product of even theta constants."""


@chi_group.command("eval")
@click.option("--file", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@DIGITS
@FORMAT
def chi_eval(path, digits, fmt):
    """Evaluate chi_g(Omega) and its Petersson norm."""
    point = _load(path, digits)
    rec = {"g": point.g, "chi": format_decimal(chi(point), digits),
           "petersson_norm": format_decimal(petersson_norm_chi(point), digits)}
    _emit(Report("chi eval", {"file": str(path), "digits": digits}, [rec]), fmt)


def full_suite(digits: int = 30, seed: int = 0) -> List[dict]:
    results = []
    for fn in (lemma23, r_integral, theorem24):
        results += [fn(g).to_record() for g in range(2, 11)]
    results += [prop31(g).to_record() for g in range(2, 9)]
    results += [r.to_record() for r in section4_assemble()]
    results += [g_formula(r).to_record() for r in range(23)]
    results.append(glaisher_check(digits, digits - 2))
    results.append(theta3_check(digits))
    results += odd_vanishing_checks(1, 3, digits, seed)
    results += jacobi_checks(5, digits, seed)
    results += invariance_checks(1, 5, digits, seed)
    results += invariance_checks(2, 2, digits, seed)
    return results


@main.command("report")
@FORMAT
@DIGITS
@click.option("--seed", type=int, default=0, show_default=True)
def report(fmt, digits, seed):
    """Run every symbolic verification plus a compact numeric suite."""
    _emit(Report("report", {"digits": digits, "seed": seed}, full_suite(digits, seed)), fmt)


if __name__ == "__main__":
    main()
