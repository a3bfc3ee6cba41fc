"""Numerical checks against independent oracles."""
from __future__ import annotations

from typing import Dict, List

import mpmath
import numpy as np

from .numerics import format_decimal, zeta_deriv_neg
from .theta import (
    SiegelPoint,
    chi,
    dedekind_eta,
    enumerate_characteristics,
    petersson_norm_chi,
    random_siegel_point,
    random_symplectic,
    sp_transform,
    theta_constant,
)
from .report import numeric_check

__all__ = [
    "glaisher_check",
    "theta3_check",
    "odd_vanishing_checks",
    "jacobi_checks",
    "invariance_checks",
]


def _err(x) -> float:
    return float(abs(x)) if x else 0.0


def glaisher_check(digits: int, matching_digits: int) -> Dict:
    """zeta'(-1) against 1/12 - log A, A the Glaisher-Kinkelin constant."""
    value = zeta_deriv_neg(1, digits)
    with mpmath.workdps(digits + 20):
        oracle = mpmath.mpf(1) / 12 - mpmath.log(mpmath.glaisher)
        err = abs(value - oracle)
    return numeric_check("zeta'(-1) vs Glaisher", format_decimal(value, digits), format_decimal(oracle, digits),
                         _err(err), 10.0 ** (-matching_digits), digits=digits)


def theta3_check(digits: int) -> Dict:
    """theta[0;0](0, i) against pi^(1/4) / Gamma(3/4)."""
    point = SiegelPoint([[1j]], digits)
    ch = enumerate_characteristics(1, "even")[0]
    value = theta_constant(ch, point)
    with mpmath.workdps(digits + 10):
        oracle = mpmath.pi ** mpmath.mpf(0.25) / mpmath.gamma(mpmath.mpf(3) / 4)
        err = abs(value - oracle)
    return numeric_check("theta3(0,i) vs pi^(1/4)/Gamma(3/4)", format_decimal(value.real, digits),
                         format_decimal(oracle, digits), _err(err), 10.0 ** (-(digits - 3)), digits=digits)


def odd_vanishing_checks(g: int, trials: int, digits: int, seed: int) -> List[Dict]:
    rng = np.random.default_rng(seed)
    out = []
    for t in range(trials):
        point = random_siegel_point(g, rng, digits)
        worst = max(abs(theta_constant(ch, point)) for ch in enumerate_characteristics(g, "odd"))
        out.append(numeric_check(f"odd theta vanishing g={g} trial={t}", mpmath.nstr(worst, 5), "0",
                                 _err(worst), 10.0 ** (-digits)))
    return out


def jacobi_checks(trials: int, digits: int, seed: int) -> List[Dict]:
    """chi_1 = theta2 theta3 theta4 against 2 eta^3 from the q-product."""
    rng = np.random.default_rng(seed)
    out = []
    for t in range(trials):
        point = random_siegel_point(1, rng, digits)
        value = chi(point)
        with mpmath.workdps(digits + 10):
            oracle = 2 * dedekind_eta(point.omega[0, 0], digits) ** 3
            err = abs(value - oracle)
        out.append(numeric_check(f"Jacobi chi_1 = 2 eta^3 trial={t}", format_decimal(value, 12),
                                 format_decimal(oracle, 12), _err(err), 10.0 ** (-(digits - 5))))
    return out


def invariance_checks(g: int, trials: int, digits: int, seed: int) -> List[Dict]:
    """||chi_g||(gamma Omega) = ||chi_g||(Omega) for random generators gamma."""
    rng = np.random.default_rng(seed)
    out = []
    for t in range(trials):
        point = random_siegel_point(g, rng, digits)
        gamma = random_symplectic(g, rng)
        moved = sp_transform(point, gamma)
        before = petersson_norm_chi(point)
        after = petersson_norm_chi(moved)
        with mpmath.workdps(digits + 10):
            err = abs(before - after)
        out.append(numeric_check(
            f"Petersson invariance g={g} trial={t}", format_decimal(after, 15), format_decimal(before, 15),
            _err(err), 10.0 ** (-(digits - 8)),
            gamma=[[int(v) for v in row] for row in gamma],
        ))
    return out
