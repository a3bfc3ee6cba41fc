"""Arbitrary-precision values for the transcendental symbols.

``zeta(s)`` and ``zeta'(s)`` for real ``s > 1`` use Euler-Maclaurin summation;
``zeta'(-m)`` for odd ``m`` follows from the logarithmic derivative of the
functional equation at ``s = -m``:

    zeta'(-m) = zeta(-m) * (log(2 pi) - psi(m + 1) - zeta'(m + 1) / zeta(m + 1))

where ``psi(m + 1) = H_m - gamma``.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath

from .constants import Constant, LogPi, LogPrime, ZetaPrime, bernoulli, harmonic, zeta_neg

__all__ = [
    "euler_gamma",
    "zeta_em",
    "zeta_deriv_em",
    "zeta_deriv_neg",
    "eval_constant",
    "format_decimal",
]

_lock = threading.Lock()


def _check_digits(digits: int) -> None:
    if digits < 10:
        raise ValueError("digits must be >= 10")


def _mpq(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _em_cutoff(digits: int) -> int:
    return digits + 10


@lru_cache(maxsize=64)
def _euler_gamma(dps: int):
    with mpmath.workdps(dps):
        n = _em_cutoff(dps)
        eps = mpmath.mpf(10) ** (-dps)
        # H_N = log N + gamma + 1/(2N) - sum_j B_2j / (2j N^2j)
        gamma = sum(mpmath.mpf(1) / k for k in range(1, n + 1)) - mpmath.log(n) - mpmath.mpf(1) / (2 * n)
        j = 1
        while True:
            term = _mpq(bernoulli(2 * j)) / (2 * j * mpmath.mpf(n) ** (2 * j))
            gamma += term
            if abs(term) < eps:
                return gamma
            j += 1


def euler_gamma(digits: int):
    """Euler-Mascheroni constant to ``digits`` decimals (cached per precision)."""
    _check_digits(digits)
    with _lock:
        return _euler_gamma(digits + 10)


def _zeta_pair(s: int, dps: int):
    """(zeta(s), zeta'(s)) for an integer s >= 2 by Euler-Maclaurin at cutoff N."""
    with mpmath.workdps(dps):
        s_ = mpmath.mpf(s)
        n = _em_cutoff(dps)
        N = mpmath.mpf(n)
        logN = mpmath.log(N)
        eps = mpmath.mpf(10) ** (-dps)
        z = mpmath.mpf(0)
        dz = mpmath.mpf(0)
        for k in range(1, n):
            t = mpmath.mpf(k) ** (-s_)
            z += t
            dz -= mpmath.log(k) * t
        head = N ** (1 - s_) / (s_ - 1)
        z += head + N ** (-s_) / 2
        dz += -head * logN - head / (s_ - 1) - logN * N ** (-s_) / 2
        # correction j: B_2j/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1)
        poch = s_
        dpoch = mpmath.mpf(1)
        j = 1
        while True:
            c = _mpq(bernoulli(2 * j)) / factorial(2 * j)
            p = N ** (-s_ - 2 * j + 1)
            term = c * poch * p
            dterm = c * p * (dpoch - poch * logN)
            z += term
            dz += dterm
            if abs(term) < eps and abs(dterm) < eps:
                return z, dz
            # extend the rising factorial by (s + 2j - 1)(s + 2j)
            for i in (2 * j - 1, 2 * j):
                dpoch = dpoch * (s_ + i) + poch
                poch = poch * (s_ + i)
            j += 1


def zeta_em(s: int, digits: int):
    """zeta(s) for integer s >= 2."""
    _check_digits(digits)
    if s < 2:
        raise ValueError("Euler-Maclaurin branch needs s >= 2")
    return _zeta_pair(s, digits + 10)[0]


def zeta_deriv_em(s: int, digits: int):
    """zeta'(s) for integer s >= 2."""
    _check_digits(digits)
    if s < 2:
        raise ValueError("Euler-Maclaurin branch needs s >= 2")
    return _zeta_pair(s, digits + 10)[1]


@lru_cache(maxsize=256)
def _zeta_deriv_neg(m: int, dps: int):
    with mpmath.workdps(dps):
        z, dz = _zeta_pair(m + 1, dps)
        psi = _mpq(harmonic(m)) - _euler_gamma(dps)
        return _mpq(zeta_neg(m)) * (mpmath.log(2 * mpmath.pi) - psi - dz / z)


def zeta_deriv_neg(m: int, digits: int):
    """zeta'(-m) for odd m >= 1, absolute error below 10^-digits."""
    _check_digits(digits)
    if m < 1 or m % 2 == 0:
        raise ValueError(f"zeta_deriv_neg needs an odd m >= 1, got {m}")
    with _lock:
        return _zeta_deriv_neg(m, digits + 10)


def _symbol_value(sym, digits: int):
    if isinstance(sym, LogPi):
        return mpmath.log(mpmath.pi)
    if isinstance(sym, LogPrime):
        return mpmath.log(sym.p)
    if isinstance(sym, ZetaPrime):
        return zeta_deriv_neg(sym.m, digits)
    raise TypeError(f"unknown symbol {sym!r}")


def eval_constant(c: Constant, digits: int):
    """Numerical value of an exact constant to ``digits`` decimals."""
    _check_digits(digits)
    with mpmath.workdps(digits + 10):
        total = _mpq(c.rational_part)
        for sym, coeff in c.symbolic_part.items():
            total += _mpq(coeff) * _symbol_value(sym, digits)
        return +total


def format_decimal(x, digits: int) -> str:
    """Fixed-point rendering with ``digits`` decimals."""
    with mpmath.workdps(digits + 10):
        if isinstance(x, mpmath.mpc):
            return f"{mpmath.nstr(x.real, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)}" \
                   f"{'+' if x.imag >= 0 else '-'}" \
                   f"{mpmath.nstr(abs(x.imag), digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)}i"
        return mpmath.nstr(x, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
