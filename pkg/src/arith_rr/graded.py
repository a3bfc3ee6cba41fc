"""Truncated commutative polynomial rings over :class:`Constant`.

Generators model first Chern classes (degree 1).  Degree-0 generators are
allowed for formal integer-valued symbols that multiply classes, such as the
fiberwise Euler number ``G`` of the fixed locus.  The generator named ``a``
(:data:`REAL_UNIT`) plays the role of ``a(1)``, the image of the real number 1
in degree-1 arithmetic Chow groups, so that real constants carry degree 1 and
are killed by any further degree-1 factor.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .constants import Constant, harmonic_sum

__all__ = [
    "Generator",
    "GradedRing",
    "GradedElement",
    "PushforwardRule",
    "PushforwardError",
    "REAL_UNIT",
    "gr_mul",
    "series_substitute",
    "invert_unit",
    "degree_part",
    "pushforward",
    "pushforward_projective",
    "projective_rule",
]

REAL_UNIT = "a"

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction, Constant]


class PushforwardError(ValueError):
    """A monomial falls outside the registered pushforward table."""


@dataclass(frozen=True)
class Generator:
    name: str
    locus: str = "base"
    degree: int = 1

    def __post_init__(self):
        if self.locus not in ("fiber", "base"):
            raise ValueError(f"locus must be 'fiber' or 'base', got {self.locus!r}")
        if self.degree not in (0, 1):
            raise ValueError("generators have degree 0 or 1")
        if not self.name.isidentifier():
            raise ValueError(f"generator name {self.name!r} is not an identifier")


class GradedRing:
    """Context fixing the generators and the truncation degree."""

    def __init__(self, generators: Iterable[Generator], truncation: int):
        gens = tuple(generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        if truncation < 0:
            raise ValueError("truncation degree must be >= 0")
        self.generators = gens
        self.truncation = truncation
        self._index = {n: i for i, n in enumerate(names)}

    @classmethod
    def build(cls, truncation: int, fiber: Sequence[str] = (), base: Sequence[str] = (),
              degree_zero: Sequence[str] = ()) -> "GradedRing":
        gens = [Generator(n, "fiber") for n in fiber]
        gens += [Generator(n, "base") for n in base]
        gens += [Generator(n, "base", 0) for n in degree_zero]
        return cls(gens, truncation)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedRing):
            return NotImplemented
        return self.generators == other.generators and self.truncation == other.truncation

    def __hash__(self) -> int:
        return hash((self.generators, self.truncation))

    def __repr__(self) -> str:
        return f"GradedRing({[g.name for g in self.generators]}, truncation={self.truncation})"

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def has(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no generator {name!r} in {self!r}") from None

    def degree(self, mono: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(mono, self.generators))

    def unit_monomial(self) -> Monomial:
        return (0,) * len(self.generators)

    def monomial(self, powers: Mapping[str, int]) -> Monomial:
        mono = [0] * len(self.generators)
        for name, e in powers.items():
            mono[self.index(name)] = e
        return tuple(mono)

    def element(self, terms: Mapping[Monomial, Scalar]) -> "GradedElement":
        return GradedElement(self, terms)

    def const(self, c: Scalar) -> "GradedElement":
        return GradedElement(self, {self.unit_monomial(): c})

    def one(self) -> "GradedElement":
        return self.const(1)

    def zero(self) -> "GradedElement":
        return GradedElement(self, {})

    def gen(self, name: str) -> "GradedElement":
        return GradedElement(self, {self.monomial({name: 1}): 1})

    def term(self, coeff: Scalar, **powers: int) -> "GradedElement":
        return GradedElement(self, {self.monomial(powers): coeff})

    def embed(self, elem: "GradedElement") -> "GradedElement":
        """Re-express ``elem`` (from a ring whose generators are a subset) here."""
        terms = {}
        for mono, c in elem.terms.items():
            powers = {elem.ring.generators[i].name: e for i, e in enumerate(mono) if e}
            terms[self.monomial(powers)] = c
        return GradedElement(self, terms)


class GradedElement:
    """Immutable element of a :class:`GradedRing`."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: GradedRing, terms: Mapping[Monomial, Scalar]):
        self.ring = ring
        clean: Dict[Monomial, Constant] = {}
        for mono, c in terms.items():
            if len(mono) != len(ring.generators):
                raise ValueError("monomial length does not match ring")
            if ring.degree(mono) > ring.truncation:
                continue
            c = Constant.coerce(c)
            if c:
                clean[mono] = clean.get(mono, Constant()) + c
        self._terms = {m: c for m, c in clean.items() if c}

    @property
    def terms(self) -> Dict[Monomial, Constant]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "GradedElement") -> None:
        if self.ring != other.ring:
            raise ValueError(f"mismatched ring contexts: {self.ring!r} vs {other.ring!r}")

    def _lift(self, other) -> "GradedElement":
        if isinstance(other, GradedElement):
            self._check(other)
            return other
        return self.ring.const(Constant.coerce(other))

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, Constant()) + c
        return GradedElement(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "GradedElement":
        return GradedElement(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Constant)):
            return GradedElement(self.ring, {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, GradedElement):
            return NotImplemented
        self._check(other)
        ring = self.ring
        out: Dict[Monomial, Constant] = {}
        for m1, c1 in self._terms.items():
            d1 = ring.degree(m1)
            for m2, c2 in other._terms.items():
                if d1 + ring.degree(m2) > ring.truncation:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Constant()) + c1 * c2
        return GradedElement(ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "GradedElement":
        if k < 0:
            raise ValueError("negative powers need invert_unit")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Constant)):
            other = self.ring.const(other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def coefficient(self, **powers: int) -> Constant:
        return self._terms.get(self.ring.monomial(powers), Constant())

    def constant_term(self) -> Constant:
        return self._terms.get(self.ring.unit_monomial(), Constant())

    def degree_part(self, k: int) -> "GradedElement":
        return degree_part(self, k)

    def substitute(self, name: str, value: "GradedElement") -> "GradedElement":
        """Replace generator ``name`` by ``value`` (an element of the same ring)."""
        self._check(value)
        i = self.ring.index(name)
        out = self.ring.zero()
        for mono, c in self._terms.items():
            rest = list(mono)
            e, rest[i] = rest[i], 0
            out = out + GradedElement(self.ring, {tuple(rest): c}) * value ** e
        return out

    def monomials(self) -> Iterable[Tuple[Dict[str, int], Constant]]:
        names = self.ring.names
        for mono, c in self._terms.items():
            yield {names[i]: e for i, e in enumerate(mono) if e}, c

    def _sort_key(self, mono: Monomial):
        names = self.ring.names
        pairs = sorted((names[i], e) for i, e in enumerate(mono) if e)
        return (self.ring.degree(mono), pairs)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = self.ring.names
        parts = []
        for mono in sorted(self._terms, key=self._sort_key):
            c = self._terms[mono]
            factors = [
                names[i] if e == 1 else f"{names[i]}^{e}"
                for i, e in sorted(enumerate(mono), key=lambda ie: names[ie[0]])
                if e
            ]
            if not factors:
                parts.append(str(c))
            elif c.term_count() == 1:
                parts.append("*".join([str(c)] + factors))
            else:
                parts.append("*".join([f"({c})"] + factors))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"GradedElement({str(self)!r})"


def gr_mul(a: GradedElement, b: GradedElement) -> GradedElement:
    """Truncated product; rejects elements from different rings."""
    a._check(b)
    return a * b


def degree_part(a: GradedElement, k: int) -> GradedElement:
    """Homogeneous component of degree ``k``."""
    if not 0 <= k <= a.ring.truncation:
        raise ValueError(f"degree {k} outside 0..{a.ring.truncation}")
    ring = a.ring
    return GradedElement(ring, {m: c for m, c in a.terms.items() if ring.degree(m) == k})


def series_substitute(series, x: GradedElement) -> GradedElement:
    """``sum_k s_k x^k`` for a :class:`~arith_rr.genera.GenusSeries` ``series``."""
    if x.constant_term():
        raise ValueError("series substitution needs an element with zero constant term")
    ring = x.ring
    out = ring.zero()
    power = ring.one()
    for k in range(ring.truncation + 1):
        if k > series.max_order:
            if not power.is_zero():
                raise ValueError(
                    f"series known to order {series.max_order}, ring needs order {ring.truncation}"
                )
            break
        out = out + power * series[k]
        power = power * x
        if power.is_zero():
            break
    return out


def invert_unit(a: GradedElement) -> GradedElement:
    """Inverse of an element whose constant term is a nonzero rational."""
    c0 = a.constant_term()
    if not c0 or not c0.is_rational():
        raise ValueError(f"constant term {c0} is not an invertible rational")
    inv0 = 1 / c0.rational_part
    u = (a - c0) * inv0
    out = a.ring.one()
    term = a.ring.one()
    # u is nilpotent: every factor raises degree unless degree-0 generators occur
    for _ in range(a.ring.truncation):
        term = term * (-u)
        if term.is_zero():
            break
        out = out + term
    out = out * inv0
    if out * a != a.ring.one():
        raise ValueError("element is not invertible in the truncated ring")
    return out


def _fiber_key(ring: GradedRing, mono: Monomial) -> Tuple[Tuple[str, int], ...]:
    return tuple(
        (g.name, e) for g, e in zip(ring.generators, mono) if e and g.locus == "fiber"
    )


class PushforwardRule:
    """Explicit table ``fiber monomial -> class on the base``.

    A term ``beta * m`` with ``beta`` a base monomial and ``m`` a fiber monomial
    is sent to ``beta * table[m]`` (projection formula).  Fiber monomials
    missing from the table raise :class:`PushforwardError`.
    """

    def __init__(self, source: GradedRing, target: GradedRing,
                 table: Mapping[Tuple[Tuple[str, int], ...], GradedElement], name: str = ""):
        for g in source.generators:
            if g.locus == "base" and not target.has(g.name):
                raise ValueError(f"base generator {g.name!r} missing from target ring")
        for key, val in table.items():
            if val.ring != target:
                raise ValueError(f"table value for {key} lives in the wrong ring")
        self.source = source
        self.target = target
        self.table = {tuple(sorted(k)): v for k, v in table.items()}
        self.name = name

    @staticmethod
    def key(**powers: int) -> Tuple[Tuple[str, int], ...]:
        return tuple(sorted((n, e) for n, e in powers.items() if e))

    def __call__(self, a: GradedElement) -> GradedElement:
        if a.ring != self.source:
            raise ValueError(f"element lives in {a.ring!r}, rule expects {self.source!r}")
        out = self.target.zero()
        for mono, c in a.terms.items():
            fkey = tuple(sorted(_fiber_key(a.ring, mono)))
            if fkey not in self.table:
                raise PushforwardError(f"{self.name or 'pushforward'}: no rule for fiber monomial {fkey}")
            base = {
                g.name: e for g, e in zip(a.ring.generators, mono) if e and g.locus == "base"
            }
            out = out + self.target.term(c, **base) * self.table[fkey]
        return out


def pushforward(a: GradedElement, rule: PushforwardRule) -> GradedElement:
    return rule(a)


def projective_rule(source: GradedRing, g: int, fiber: str = "x",
                    tangent: str = "c_TA0") -> PushforwardRule:
    """Pushforward along P = Gr(g-1, TA_0) -> B for x = c1(Q).

    x^(g-1) -> 1 and x^g -> (H_1 + ... + H_(g-1)) + c1(TA_0); lower powers vanish.
    The harmonic sum is a real constant and is attached to :data:`REAL_UNIT`
    when the ring carries it.
    """
    if g < 2:
        raise ValueError("projective pushforward needs g >= 2")
    fibers = [x for x in source.generators if x.locus == "fiber"]
    if [x.name for x in fibers] != [fiber]:
        raise ValueError(f"expected a single fiber generator {fiber!r}, got {[x.name for x in fibers]}")
    base_gens = [x for x in source.generators if x.locus == "base"]
    target = GradedRing(base_gens, min(1, source.truncation))
    if not target.has(tangent):
        raise ValueError(f"base ring needs the generator {tangent!r}")
    hsum = harmonic_sum(g - 1)
    real = target.gen(REAL_UNIT) if target.has(REAL_UNIT) else target.one()
    table = {PushforwardRule.key(**{fiber: k}): target.zero() for k in range(g - 1)}
    table[PushforwardRule.key(**{fiber: g - 1})] = target.one()
    table[PushforwardRule.key(**{fiber: g})] = real * hsum + target.gen(tangent)
    return PushforwardRule(source, target, table, name=f"P^{g - 1} pushforward")


def pushforward_projective(a: GradedElement, g: int, fiber: str = "x",
                           tangent: str = "c_TA0") -> GradedElement:
    """Apply :func:`projective_rule`; fiber powers above ``g`` are rejected."""
    return projective_rule(a.ring, g, fiber, tangent)(a)
