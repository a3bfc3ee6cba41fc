from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arith_rr.constants import Constant, LogPrime, harmonic
from arith_rr.genera import ch_series, todd_inv_series, todd_series
from arith_rr.graded import (
    GradedRing,
    PushforwardError,
    degree_part,
    gr_mul,
    invert_unit,
    pushforward_projective,
    series_substitute,
)


@pytest.fixture
def r1():
    return GradedRing.build(1, fiber=["x"])


@pytest.fixture
def r2():
    return GradedRing.build(2, fiber=["x", "w"])


def test_mul_truncates(r1):
    x = r1.gen("x")
    assert gr_mul(1 + x, 1 - x) == r1.one()


def test_mul_binomial(r2):
    x = r2.gen("x")
    assert (1 + x) * (1 + x) == 1 + 2 * x + x * x


def test_section4_product_expansion(r2):
    x, w = r2.gen("x"), r2.gen("w")
    left = Fraction(1, 2) - x / 4
    right = 1 - w / 2 + w * w / 12
    expected = Fraction(1, 2) - w / 4 + w * w / 24 - x / 4 + x * w / 8
    assert left * right == expected
    assert degree_part(left * right, 2) == w * w / 24 + x * w / 8


def test_mismatched_rings_rejected(r1, r2):
    with pytest.raises(ValueError):
        gr_mul(r1.gen("x"), r2.gen("x"))


def test_series_substitution_examples():
    ring = GradedRing.build(2, fiber=["x"])
    x = ring.gen("x")
    assert series_substitute(ch_series(2), x) == 1 + x + x * x / 2
    assert series_substitute(todd_inv_series(2), x) == 1 - x / 2 + x * x / 6
    assert series_substitute(todd_series(4), ring.zero()) == ring.one()
    with pytest.raises(ValueError):
        series_substitute(ch_series(2), 1 + x)


def test_invert_unit_examples():
    ring = GradedRing.build(2, fiber=["x"])
    x = ring.gen("x")
    assert invert_unit(1 + x / 2 + x * x / 4) == 1 - x / 2
    assert invert_unit(ring.one()) == ring.one()
    ring1 = GradedRing.build(1, fiber=["x"])
    x1 = ring1.gen("x")
    assert invert_unit(2 + x1) == Fraction(1, 2) - x1 / 4


def test_invert_unit_rejects():
    ring = GradedRing.build(2, fiber=["x"])
    x = ring.gen("x")
    with pytest.raises(ValueError):
        invert_unit(x)
    with pytest.raises(ValueError):
        invert_unit(ring.const(Constant.symbol(LogPrime(2))) + x)


def test_degree_part_examples(r2):
    x = r2.gen("x")
    e = 1 + 2 * x + x * x
    assert degree_part(e, 1) == 2 * x
    assert degree_part(e, 0) == r2.one()
    with pytest.raises(ValueError):
        degree_part(e, 3)


def _proj_ring(g):
    return GradedRing.build(g, fiber=["x"], base=["c_TA0", "a"])


def test_pushforward_projective_examples():
    ring = _proj_ring(3)
    out = pushforward_projective(ring.gen("x") ** 2, 3)
    assert out == out.ring.one()
    assert pushforward_projective(ring.gen("x"), 3).is_zero()
    ring2 = _proj_ring(2)
    out2 = pushforward_projective(ring2.gen("x") ** 2, 2)
    assert out2 == out2.ring.gen("a") * harmonic(1) + out2.ring.gen("c_TA0")


def test_pushforward_without_real_unit_gives_plain_constant():
    ring = GradedRing.build(2, fiber=["x"], base=["c_TA0"])
    out = pushforward_projective(ring.gen("x") ** 2, 2)
    assert out == 1 + out.ring.gen("c_TA0")


def test_pushforward_rejects_high_fiber_power():
    ring = GradedRing.build(4, fiber=["x"], base=["c_TA0", "a"])
    with pytest.raises(PushforwardError):
        pushforward_projective(ring.gen("x") ** 4, 3)


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_projection_formula(g):
    ring = _proj_ring(g)
    x, c, a = ring.gen("x"), ring.gen("c_TA0"), ring.gen("a")
    for k in range(g + 1):
        for beta in (c, a, c * Fraction(3, 7) + a * Constant.symbol(LogPrime(2))):
            lhs = pushforward_projective(beta * x ** k, g)
            rhs = lhs.ring.embed(beta) * pushforward_projective(x ** k, g)
            assert lhs == rhs


def test_pushforward_is_linear():
    g = 3
    ring = _proj_ring(g)
    x, c = ring.gen("x"), ring.gen("c_TA0")
    e1 = x ** 2 + c * x
    e2 = x ** 3 * Fraction(5, 2) - 1
    k = Constant.symbol(LogPrime(3), 2)
    lhs = pushforward_projective(e1 * k + e2, g)
    assert lhs == pushforward_projective(e1, g) * k + pushforward_projective(e2, g)


def test_substitute_generator(r2):
    x, w = r2.gen("x"), r2.gen("w")
    e = x * w + x * 3
    assert e.substitute("x", w + 1) == w * w + w + 3 * w + 3


def test_render_is_lexicographic():
    ring = GradedRing.build(2, fiber=["w", "n"])
    n, w = ring.gen("n"), ring.gen("w")
    assert str(n * w / 8 + w * w / 24) == "1/8*n*w + 1/24*w^2"
    assert str(Fraction(1, 2) - n / 4) == "1/2 - 1/4*n"
    assert str(ring.zero()) == "0"


small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def elements(ring):
    monos = [(i, j) for i in range(ring.truncation + 1) for j in range(ring.truncation + 1 - i)]
    return st.dictionaries(st.sampled_from(monos), small, max_size=6).map(ring.element)


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_ring_axioms(t):
    ring = GradedRing.build(t, fiber=["x", "y"])

    @settings(max_examples=40, deadline=None)
    @given(elements(ring), elements(ring), elements(ring))
    def check(a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a

    check()


@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(bool),
       st.dictionaries(st.sampled_from([(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0)]), small, max_size=5))
def test_invert_unit_random(c0, rest):
    ring = GradedRing.build(3, fiber=["x", "y"])
    a = ring.element(rest) + c0
    assert invert_unit(a) * a == ring.one()


@pytest.mark.parametrize("t", range(1, 7))
def test_todd_times_inverse_todd(t):
    ring = GradedRing.build(t, fiber=["x"])
    x = ring.gen("x")
    assert series_substitute(todd_series(t), x) * series_substitute(todd_inv_series(t), x) == ring.one()
