"""Exact constants: rationals extended by formal transcendental symbols.

A :class:`Constant` is ``q + sum(c_s * s)`` where ``q`` and every ``c_s`` are
exact rationals and each ``s`` is one of ``log(p)`` for a prime ``p``,
``log(pi)``, or ``zp(m)`` standing for the derivative of the Riemann zeta
function at ``-m`` (``m`` odd).  Nothing here is ever approximated; numerical
values live in :mod:`arith_rr.numerics`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Mapping, Tuple, Union

__all__ = [
    "LogPrime",
    "LogPi",
    "ZetaPrime",
    "Constant",
    "SymbolicProductError",
    "harmonic",
    "harmonic_sum",
    "bernoulli",
    "zeta_neg",
    "log_rational",
    "lambda_parity_constant",
    "parse_constant",
    "factorize",
]

Rational = Union[int, Fraction]


class SymbolicProductError(ArithmeticError):
    """Raised when two constants with transcendental parts are multiplied."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True, order=False)
class LogPi:
    """The symbol log(pi)."""

    def sort_key(self) -> Tuple[int, int]:
        return (0, 0)

    def __str__(self) -> str:
        return "log(pi)"


@dataclass(frozen=True)
class LogPrime:
    """log(p) for a prime p."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"LogPrime needs a prime argument, got {self.p}")

    def sort_key(self) -> Tuple[int, int]:
        return (1, self.p)

    def __str__(self) -> str:
        return f"log({self.p})"


@dataclass(frozen=True)
class ZetaPrime:
    """zeta'(-m) for odd m >= 1."""

    m: int

    def __post_init__(self):
        if self.m < 1 or self.m % 2 == 0:
            raise ValueError(f"ZetaPrime needs an odd positive argument, got {self.m}")

    def sort_key(self) -> Tuple[int, int]:
        return (2, self.m)

    def __str__(self) -> str:
        return f"zp({self.m})"


Symbol = Union[LogPi, LogPrime, ZetaPrime]


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Constant:
    """Immutable exact value ``rational + sum(coeff * symbol)``."""

    __slots__ = ("_rational", "_symbolic", "_hash")

    def __init__(self, rational: Rational = 0, symbolic: Mapping[Symbol, Rational] | None = None):
        self._rational = Fraction(rational)
        items = {}
        for sym, c in (symbolic or {}).items():
            c = Fraction(c)
            if c:
                items[sym] = c
        self._symbolic: Tuple[Tuple[Symbol, Fraction], ...] = tuple(
            sorted(items.items(), key=lambda kv: kv[0].sort_key())
        )
        self._hash = None

    @classmethod
    def symbol(cls, sym: Symbol, coeff: Rational = 1) -> "Constant":
        return cls(0, {sym: coeff})

    @classmethod
    def coerce(cls, value: Union["Constant", Rational]) -> "Constant":
        if isinstance(value, Constant):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Constant")

    @property
    def rational_part(self) -> Fraction:
        return self._rational

    @property
    def symbolic_part(self) -> Dict[Symbol, Fraction]:
        return dict(self._symbolic)

    def is_rational(self) -> bool:
        return not self._symbolic

    def is_zero(self) -> bool:
        return not self._rational and not self._symbolic

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _combine(self, other: "Constant", sign: int) -> "Constant":
        sym = dict(self._symbolic)
        for s, c in other._symbolic:
            sym[s] = sym.get(s, 0) + sign * c
        return Constant(self._rational + sign * other._rational, sym)

    def __add__(self, other):
        try:
            other = Constant.coerce(other)
        except TypeError:
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Constant.coerce(other)
        except TypeError:
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        try:
            other = Constant.coerce(other)
        except TypeError:
            return NotImplemented
        return other._combine(self, -1)

    def __neg__(self) -> "Constant":
        return Constant(-self._rational, {s: -c for s, c in self._symbolic})

    def _scale(self, q: Fraction) -> "Constant":
        return Constant(self._rational * q, {s: c * q for s, c in self._symbolic})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(Fraction(other))
        if not isinstance(other, Constant):
            return NotImplemented
        if self._symbolic and other._symbolic:
            raise SymbolicProductError(f"product of symbolic constants ({self}) * ({other})")
        if not other._symbolic:
            return self._scale(other._rational)
        return other._scale(self._rational)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Constant):
            if not other.is_rational():
                raise SymbolicProductError(f"division by symbolic constant {other}")
            other = other._rational
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self._scale(1 / Fraction(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return not self._symbolic and self._rational == other
        if not isinstance(other, Constant):
            return NotImplemented
        return self._rational == other._rational and self._symbolic == other._symbolic

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._rational, self._symbolic))
        return self._hash

    def coefficient(self, sym: Symbol) -> Fraction:
        for s, c in self._symbolic:
            if s == sym:
                return c
        return Fraction(0)

    def term_count(self) -> int:
        return (1 if self._rational else 0) + len(self._symbolic)

    def __str__(self) -> str:
        parts = []
        if self._rational:
            parts.append(_fmt_rational(self._rational))
        for s, c in self._symbolic:
            parts.append(f"{_fmt_rational(c)}*{s}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"Constant({str(self)!r})"


_BODY = re.compile(
    r"^(?:(?P<coef>\d+(?:/\d+)?)(?:\s*\*\s*(?P<sym1>\S+))?|(?P<sym2>\S+))$"
)
_SYM = re.compile(r"^(?:log\((?P<logarg>pi|\d+(?:/\d+)?)\)|zp\((?P<zp>\d+)\))$")


def _parse_symbol(text: str) -> Constant:
    m = _SYM.match(text)
    if not m:
        raise ValueError(f"unknown symbol {text!r}")
    if m.group("zp") is not None:
        return Constant.symbol(ZetaPrime(int(m.group("zp"))))
    if m.group("logarg") == "pi":
        return Constant.symbol(LogPi())
    return log_rational(Fraction(m.group("logarg")))


def parse_constant(text: str) -> Constant:
    """Parse the canonical rendering (e.g. ``"-1/6 - 4*zp(1) - 1*log(2)"``).

    ``log(q)`` accepts any positive rational and is normalized into prime logs.
    """
    compact = re.sub(r"\s*([-+*/()])\s*", r"\1", text.strip())
    if not compact:
        raise ValueError("empty constant expression")
    if re.search(r"\s", compact):
        raise ValueError(f"unexpected blank inside a term of {text!r}")
    if compact[0] not in "+-":
        compact = "+" + compact
    pieces = re.findall(r"([+-])([^+-]*)", compact)
    if "".join(s + b for s, b in pieces) != compact:
        raise ValueError(f"cannot parse constant {text!r}")
    total = Constant()
    for sign, body in pieces:
        m = _BODY.match(body)
        if not body or not m:
            raise ValueError(f"cannot parse term {body!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        sym = m.group("sym1") or m.group("sym2")
        term = _parse_symbol(sym) * coef if sym else Constant(coef)
        total = total + (-term if sign == "-" else term)
    return total


def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0."""
    if n < 0:
        raise ValueError("harmonic number index must be >= 0")
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def harmonic_sum(n: int) -> Fraction:
    """H_1 + H_2 + ... + H_n."""
    return sum((harmonic(l) for l in range(1, n + 1)), Fraction(0))


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> Tuple[Fraction, ...]:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1, B_1 = -1/2
    table = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(comb(m + 1, k) * table[k] for k in range(m))
        table.append(-s / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    if n > 1 and n % 2:
        return Fraction(0)
    return _bernoulli_table(n)[n]


def zeta_neg(m: int) -> Fraction:
    """zeta(-m) = -B_{m+1}/(m+1) for m >= 1."""
    if m < 1:
        raise ValueError("zeta_neg needs m >= 1")
    return -bernoulli(m + 1) / (m + 1)


def log_rational(q: Rational) -> Constant:
    """log(q) for a positive rational, as a combination of prime logs."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"log of non-positive rational {q}")
    sym: Dict[Symbol, int] = {}
    for p, e in factorize(q.numerator).items():
        sym[LogPrime(p)] = sym.get(LogPrime(p), 0) + e
    for p, e in factorize(q.denominator).items():
        sym[LogPrime(p)] = sym.get(LogPrime(p), 0) - e
    return Constant(0, sym)


def _descending_product(start: int) -> int:
    out = 1
    for k in range(start, 0, -2):
        out *= k
    return out


def lambda_parity_constant(g: int) -> Constant:
    """log of g(g-2)(g-4)... / ((g-1)(g-3)...), products running down to 1 or 2."""
    if g < 2:
        raise ValueError("lambda_parity_constant needs g >= 2")
    return log_rational(Fraction(_descending_product(g), _descending_product(g - 1)))


def constant_sum(values: Iterable[Constant]) -> Constant:
    total = Constant()
    for v in values:
        total = total + v
    return total
