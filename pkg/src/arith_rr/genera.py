"""Genus series (Todd, inverse Todd, Chern character, R-genus) and the
Bott-Chern classes of the universal sequence on P^(g-1)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Tuple

from .constants import Constant, ZetaPrime, bernoulli, harmonic, log_rational, zeta_neg
from .graded import GradedElement, GradedRing, invert_unit, series_substitute

__all__ = [
    "GenusSeries",
    "todd_series",
    "todd_inv_series",
    "ch_series",
    "r_genus_series",
    "ch_mu2_factor",
    "r_g_equivariant_linear_coeffs",
    "bott_chern_tilde",
    "todd_coefficient",
    "todd_tilde_universal",
]


@dataclass(frozen=True)
class GenusSeries:
    """Univariate power series truncated after ``max_order``."""

    coefficients: Tuple[Constant, ...]

    @property
    def max_order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Constant:
        if k < 0 or k > self.max_order:
            raise IndexError(f"coefficient {k} outside 0..{self.max_order}")
        return self.coefficients[k]

    def __mul__(self, other: "GenusSeries") -> "GenusSeries":
        n = min(self.max_order, other.max_order)
        return GenusSeries(tuple(
            sum((self[i] * other[k - i] for i in range(k + 1)), Constant()) for k in range(n + 1)
        ))

    def __call__(self, x: GradedElement) -> GradedElement:
        return series_substitute(self, x)


def _series(values) -> GenusSeries:
    return GenusSeries(tuple(Constant.coerce(v) for v in values))


def todd_series(max_order: int) -> GenusSeries:
    """x / (1 - e^(-x)) = 1 + x/2 + sum_{k>=2} B_k x^k / k!."""
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    coeffs = [Fraction(1)] + [
        Fraction(1, 2) if k == 1 else bernoulli(k) / factorial(k) for k in range(1, max_order + 1)
    ]
    return _series(coeffs)


def todd_inv_series(max_order: int) -> GenusSeries:
    """(1 - e^(-x)) / x, coefficient of x^k is (-1)^k / (k+1)!."""
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    return _series(Fraction((-1) ** k, factorial(k + 1)) for k in range(max_order + 1))


def ch_series(max_order: int) -> GenusSeries:
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    return _series(Fraction(1, factorial(k)) for k in range(max_order + 1))


def r_genus_series(max_order: int) -> GenusSeries:
    """Additive R-genus: (2 zeta'(-m) + H_m zeta(-m)) x^m / m! for odd m."""
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    coeffs = [Constant()]
    for m in range(1, max_order + 1):
        if m % 2 == 0:
            coeffs.append(Constant())
            continue
        c = Constant.symbol(ZetaPrime(m), 2) + harmonic(m) * zeta_neg(m)
        coeffs.append(c / factorial(m))
    return GenusSeries(tuple(coeffs))


def ch_mu2_factor(n: GradedElement, truncation: int = 2) -> GradedElement:
    """Inverse of ch_{mu_2}(1 - N) = 1 + e^{c1(N)} for a conormal line bundle on
    which the involution acts by -1, truncated to ``truncation``."""
    if truncation > 2:
        raise ValueError("equivariant Todd factor only supported up to degree 2")
    if truncation > n.ring.truncation:
        raise ValueError("truncation exceeds the ring's truncation degree")
    if n.constant_term():
        raise ValueError("conormal class must have zero constant term")
    lam = 1 + ch_series(n.ring.truncation)(n)
    inv = invert_unit(lam)
    ring = n.ring
    return GradedElement(ring, {m: c for m, c in inv.terms.items() if ring.degree(m) <= truncation})


def r_g_equivariant_linear_coeffs() -> Tuple[Constant, Constant]:
    """Coefficients of c1(N) and c1(omega_g) in the degree-1 part of Td_g R_g,
    with the Lerch values already reduced: 6 zeta'(-1) + (3 - log 16) zeta(-1)
    and 2 zeta'(-1) + zeta(-1)."""
    zp1 = Constant.symbol(ZetaPrime(1))
    z1 = zeta_neg(1)
    on_normal = 6 * zp1 + (Constant(3) - log_rational(16)) * z1
    on_omega = 2 * zp1 + z1
    return on_normal, on_omega


def bott_chern_tilde(k: int, ring: GradedRing, x: str = "x") -> GradedElement:
    """Secondary class of c_k on the universal sequence: 0 for k = 1,
    (-1)^(k-1) H_(k-1) x^(k-1) otherwise."""
    if k < 1:
        raise ValueError("Bott-Chern index must be >= 1")
    if k == 1:
        return ring.zero()
    return ring.term((-1) ** (k - 1) * harmonic(k - 1), **{x: k - 1})


def todd_coefficient(k: int) -> Fraction:
    """Coefficient of c_k in the degree-k Todd polynomial (1/2 for k = 1, B_k/k! otherwise)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Fraction(1, 2) if k == 1 else bernoulli(k) / factorial(k)


def todd_tilde_universal(g: int, ring: GradedRing, x: str = "x") -> GradedElement:
    """Td~ of the universal sequence: sum_{k=1..g} Td_k * c~_k."""
    if g < 2:
        raise ValueError("g must be >= 2")
    out = ring.zero()
    for k in range(1, g + 1):
        out = out + bott_chern_tilde(k, ring, x) * todd_coefficient(k)
    return out
