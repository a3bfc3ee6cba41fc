"""Riemann theta constants with half-integer characteristics, Igusa's chi_g
and its Petersson norm on the Siegel upper half-space."""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import mpmath
import numpy as np

__all__ = [
    "ThetaCharacteristic",
    "SiegelPoint",
    "enumerate_characteristics",
    "theta_constant",
    "theta_with_bound",
    "truncation_radius",
    "chi",
    "petersson_norm_chi",
    "chi_weight",
    "sp_transform",
    "is_symplectic",
    "random_siegel_point",
    "random_symplectic",
    "dedekind_eta",
    "load_siegel_point",
    "parse_characteristic",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ThetaCharacteristic:
    a: Tuple[Fraction, ...]
    b: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("characteristic vectors must have equal length")
        for v in self.a + self.b:
            if v not in (0, HALF):
                raise ValueError(f"characteristic entries must be 0 or 1/2, got {v}")

    @property
    def g(self) -> int:
        return len(self.a)

    @property
    def parity(self) -> int:
        return int(4 * sum(x * y for x, y in zip(self.a, self.b))) % 2

    @property
    def is_even(self) -> bool:
        return self.parity == 0

    def label(self) -> str:
        bits = lambda v: "".join("1" if x else "0" for x in v)
        return f"{bits(self.a)},{bits(self.b)}"


def enumerate_characteristics(g: int, parity_filter: Optional[str] = None) -> List[ThetaCharacteristic]:
    """All 4^g characteristics, optionally only the ``"even"`` or ``"odd"`` ones."""
    if g < 1:
        raise ValueError("g must be >= 1")
    if parity_filter not in (None, "all", "even", "odd"):
        raise ValueError(f"unknown parity filter {parity_filter!r}")
    vals = (Fraction(0), HALF)
    out = []
    for a in itertools.product(vals, repeat=g):
        for b in itertools.product(vals, repeat=g):
            ch = ThetaCharacteristic(a, b)
            if parity_filter == "even" and not ch.is_even:
                continue
            if parity_filter == "odd" and ch.is_even:
                continue
            out.append(ch)
    return out


def parse_characteristic(text: str, g: int) -> ThetaCharacteristic:
    """``"10,01"``: bit strings for a and b, 1 meaning 1/2."""
    try:
        sa, sb = (s.strip() for s in text.split(","))
    except ValueError:
        raise ValueError(f"characteristic must look like 'a,b', got {text!r}") from None
    if len(sa) != g or len(sb) != g or set(sa + sb) - {"0", "1"}:
        raise ValueError(f"characteristic {text!r} needs two {g}-bit strings")
    conv = lambda s: tuple(HALF if c == "1" else Fraction(0) for c in s)
    return ThetaCharacteristic(conv(sa), conv(sb))


class SiegelPoint:
    """Symmetric complex g x g matrix with positive definite imaginary part."""

    def __init__(self, omega, digits: int = 30):
        if digits < 10:
            raise ValueError("digits must be >= 10")
        with mpmath.workdps(digits + 10):
            m = mpmath.matrix(omega)
            if m.rows != m.cols:
                raise ValueError("period matrix must be square")
            g = m.rows
            tol = mpmath.mpf(10) ** (-digits)
            for i in range(g):
                for j in range(i + 1, g):
                    if abs(m[i, j] - m[j, i]) > tol * (1 + abs(m[i, j])):
                        raise ValueError("period matrix is not symmetric")
                    m[j, i] = m[i, j]
        self.omega = m
        self.digits = digits
        self.g = g
        self.lambda_min = float(min(np.linalg.eigvalsh(self.imag_float())))
        if not self.lambda_min > 0:
            raise ValueError(f"Im(Omega) is not positive definite (lambda_min = {self.lambda_min:g})")

    def imag_float(self) -> np.ndarray:
        return np.array([[float(self.omega[i, j].imag) for j in range(self.g)] for i in range(self.g)])

    def det_imag(self):
        with mpmath.workdps(self.digits + 10):
            y = mpmath.matrix(self.g, self.g)
            for i in range(self.g):
                for j in range(self.g):
                    y[i, j] = mpmath.im(self.omega[i, j])
            return mpmath.det(y)

    def __repr__(self) -> str:
        rows = [[mpmath.nstr(self.omega[i, j], 8) for j in range(self.g)] for i in range(self.g)]
        return f"SiegelPoint({rows}, digits={self.digits})"


def _tail_bound(g: int, lam: float, radius: int) -> float:
    # points with sup-norm in [k, k+1) number <= 2g (2k+2)^(g-1), each |term| <= exp(-pi lam k^2)
    total, k = 0.0, radius + 1
    while True:
        term = 2 * g * (2 * k + 2) ** (g - 1) * mpmath.exp(-mpmath.pi * lam * k * k)
        total += float(term)
        if term < 1e-300 or (k > radius + 3 and term < total * 1e-20):
            return total
        k += 1


def truncation_radius(point: SiegelPoint, digits: Optional[int] = None) -> Tuple[int, float]:
    """Smallest radius whose omitted lattice mass is below 10^-(digits+5)."""
    digits = point.digits if digits is None else digits
    target = 10.0 ** (-(digits + 5))
    lam = point.lambda_min
    radius = 1
    while mpmath.mpf(_tail_bound(point.g, lam, radius)) >= target:
        radius += 1
    return radius, _tail_bound(point.g, lam, radius)


def theta_with_bound(ch: ThetaCharacteristic, point: SiegelPoint, radius: Optional[int] = None):
    """Theta constant and the bound on the omitted tail of the lattice sum."""
    if ch.g != point.g:
        raise ValueError("characteristic and period matrix have different genus")
    if radius is None:
        radius, bound = truncation_radius(point)
    else:
        bound = _tail_bound(point.g, point.lambda_min, radius)
    g = point.g
    with mpmath.workdps(point.digits + 10):
        om = point.omega
        a = [mpmath.mpf(x.numerator) / x.denominator for x in ch.a]
        b = [mpmath.mpf(x.numerator) / x.denominator for x in ch.b]
        ipi = mpmath.mpc(0, mpmath.pi)
        # symmetric box in n + a so that n -> -n - 2a pairs terms exactly
        ranges = [range(-radius - (1 if x else 0), radius + 1) for x in ch.a]
        total = mpmath.mpc(0)
        for n in itertools.product(*ranges):
            m = [n[i] + a[i] for i in range(g)]
            q = mpmath.mpc(0)
            for i in range(g):
                q += om[i, i] * m[i] * m[i]
                for j in range(i + 1, g):
                    q += 2 * om[i, j] * m[i] * m[j]
            lin = sum(m[i] * b[i] for i in range(g))
            total += mpmath.exp(ipi * (q + 2 * lin))
    return total, bound


def theta_constant(ch: ThetaCharacteristic, point: SiegelPoint):
    """theta[a; b](0, Omega) = sum over n in Z^g of exp(i pi (n+a)^T Omega (n+a) + 2 pi i (n+a)^T b)."""
    return theta_with_bound(ch, point)[0]


def chi(point: SiegelPoint):
    """Product of the even theta constants (unsquared)."""
    radius, _ = truncation_radius(point)
    with mpmath.workdps(point.digits + 10):
        out = mpmath.mpc(1)
        for ch in enumerate_characteristics(point.g, "even"):
            out *= theta_with_bound(ch, point, radius)[0]
    return out


def chi_weight(g: int) -> Fraction:
    return Fraction(2 ** (2 * g - 2)) + Fraction(2 ** g, 4)


def petersson_norm_chi(point: SiegelPoint):
    """det(Im Omega)^(k/2) |chi_g(Omega)| with k = 2^(2g-2) + 2^(g-2)."""
    k = chi_weight(point.g)
    with mpmath.workdps(point.digits + 10):
        return point.det_imag() ** (mpmath.mpf(k.numerator) / (2 * k.denominator)) * abs(chi(point))


def _standard_j(g: int) -> np.ndarray:
    j = np.zeros((2 * g, 2 * g), dtype=object)
    for i in range(g):
        j[i, g + i] = 1
        j[g + i, i] = -1
    return j


def is_symplectic(gamma) -> bool:
    gm = np.array(gamma, dtype=object)
    if gm.ndim != 2 or gm.shape[0] != gm.shape[1] or gm.shape[0] % 2:
        return False
    if not all(isinstance(v, (int, np.integer)) for v in gm.flat):
        return False
    j = _standard_j(gm.shape[0] // 2)
    return bool((gm.T.dot(j).dot(gm) == j).all())


def sp_transform(point: SiegelPoint, gamma) -> SiegelPoint:
    """(A Omega + B)(C Omega + D)^-1 for gamma = [[A, B], [C, D]] in Sp(2g, Z)."""
    gm = np.array(gamma, dtype=object)
    g = point.g
    if gm.shape != (2 * g, 2 * g):
        raise ValueError(f"gamma must be {2 * g}x{2 * g}")
    if not is_symplectic(gm):
        raise ValueError("gamma is not an integral symplectic matrix")
    with mpmath.workdps(point.digits + 10):
        blk = lambda r, c: mpmath.matrix([[int(gm[r + i, c + j]) for j in range(g)] for i in range(g)])
        A, B, C, D = blk(0, 0), blk(0, g), blk(g, 0), blk(g, g)
        den = C * point.omega + D
        if abs(mpmath.det(den)) < mpmath.mpf(10) ** (-point.digits):
            raise ValueError("C Omega + D is singular")
        new = (A * point.omega + B) * mpmath.inverse(den)
        sym = (new + new.T) / 2
    return SiegelPoint(sym, point.digits)


def random_siegel_point(g: int, rng: np.random.Generator, digits: int = 30) -> SiegelPoint:
    """B + iQ with B symmetric in [-1, 1] and Q = M^T M + I/2."""
    b = rng.uniform(-1, 1, size=(g, g))
    b = (b + b.T) / 2
    m = rng.uniform(-1, 1, size=(g, g))
    q = m.T @ m + 0.5 * np.eye(g)
    omega = [[mpmath.mpc(b[i, j], q[i, j]) for j in range(g)] for i in range(g)]
    return SiegelPoint(omega, digits)


def random_symplectic(g: int, rng: np.random.Generator) -> np.ndarray:
    """One of the generators of Sp(2g, Z): translation, inversion, or a GL_g(Z) rotation."""
    kind = rng.integers(3)
    eye = np.eye(g, dtype=int)
    zero = np.zeros((g, g), dtype=int)
    if kind == 0:
        s = rng.integers(-2, 3, size=(g, g))
        s = np.triu(s) + np.triu(s, 1).T
        if not s.any():
            s[0, 0] = 1
        mat = np.block([[eye, s], [zero, eye]])
    elif kind == 1:
        mat = np.block([[zero, -eye], [eye, zero]])
    else:
        u = eye.copy()
        if g > 1:
            i, j = rng.choice(g, size=2, replace=False)
            u[i, j] = rng.choice([-1, 1])
        else:
            u = -u
        u_inv_t = np.round(np.linalg.inv(u).T).astype(int)
        mat = np.block([[u, zero], [zero, u_inv_t]])
    return np.array([[int(v) for v in row] for row in mat], dtype=object)


def dedekind_eta(tau, digits: int = 30):
    """eta(tau) = q^(1/24) prod (1 - q^n), q = exp(2 pi i tau)."""
    with mpmath.workdps(digits + 10):
        tau = mpmath.mpc(tau)
        q = mpmath.exp(2j * mpmath.pi * tau)
        eps = mpmath.mpf(10) ** (-(digits + 8))
        prod, qn = mpmath.mpc(1), q
        while abs(qn) > eps:
            prod *= 1 - qn
            qn *= q
        return mpmath.exp(2j * mpmath.pi * tau / 24) * prod


_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY = re.compile(
    rf"^(?:(?P<re>[+-]?{_NUM})(?=$|[+-]))?(?:(?P<im>[+-]?(?:{_NUM})?)i)?$"
)


def _parse_entry(tok: str):
    m = _ENTRY.match(tok)
    if not tok or not m:
        raise ValueError(f"malformed complex entry {tok!r}")
    re_part = mpmath.mpf(m.group("re")) if m.group("re") else mpmath.mpf(0)
    im = m.group("im")
    if im is None:
        im_part = mpmath.mpf(0)
    elif im in ("", "+"):
        im_part = mpmath.mpf(1)
    elif im == "-":
        im_part = mpmath.mpf(-1)
    else:
        im_part = mpmath.mpf(im)
    return mpmath.mpc(re_part, im_part)


def load_siegel_point(path, digits: Optional[int] = None) -> SiegelPoint:
    """Read a period matrix from a text or JSON file.

    Text: one row per line, entries like ``0.5+1.2i`` separated by commas or
    blanks.  JSON: ``{"g": 2, "omega": [[re, im], ...] (row-major), "digits": 30}``.
    """
    text = Path(path).read_text()
    stripped = text.strip()
    if not stripped:
        raise ValueError(f"{path}: empty period matrix file")
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
            g = int(doc["g"])
            flat = doc["omega"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ValueError(f"{path}: malformed period matrix document ({exc})") from None
        if len(flat) != g * g or any(len(p) != 2 for p in flat):
            raise ValueError(f"{path}: 'omega' needs {g * g} [re, im] pairs")
        with mpmath.workdps((digits or doc.get("digits", 30)) + 10):
            rows = [[mpmath.mpc(mpmath.mpf(str(flat[i * g + j][0])), mpmath.mpf(str(flat[i * g + j][1])))
                     for j in range(g)] for i in range(g)]
        return SiegelPoint(rows, digits or int(doc.get("digits", 30)))
    digits = digits or 30
    with mpmath.workdps(digits + 10):
        rows = []
        for line in stripped.splitlines():
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            rows.append([_parse_entry(tok) for tok in re.split(r"[,\s]+", line.strip()) if tok])
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ValueError(f"{path}: period matrix must be square")
    return SiegelPoint(rows, digits)
