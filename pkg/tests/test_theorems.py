from fractions import Fraction
from math import comb, factorial

import pytest

from arith_rr.constants import (
    Constant,
    LogPi,
    SymbolicProductError,
    ZetaPrime,
    harmonic,
    lambda_parity_constant,
    log_rational,
    parse_constant,
    zeta_neg,
)
from arith_rr.theorems import (
    LAMBDA_SIGN,
    euler_characteristic_G,
    g_formula,
    lemma23,
    lemma23_closed,
    prop31,
    pushforward_block,
    r_integral,
    r_integral_closed,
    section4_assemble,
    theorem24,
    theorem24_closed,
    torsion_pipeline,
)
from arith_rr.theta import enumerate_characteristics

G_RANGE = range(2, 13)


@pytest.mark.parametrize("g, expected", [
    (2, Fraction(-1, 12)), (3, Fraction(1, 24)), (4, Fraction(-49, 4320)), (5, Fraction(19, 8640)),
])
def test_lemma23_values(g, expected):
    res = lemma23(g)
    assert res.equal
    assert res.pipeline_value == expected


@pytest.mark.parametrize("g", G_RANGE)
def test_lemma23_binomial_form(g):
    # g! times the integral is a binomial sum over odd m < g
    total = sum(zeta_neg(m) * harmonic(m) * comb(g, m) for m in range(1, g, 2))
    assert lemma23_closed(g) * factorial(g) == Constant((-1) ** g * total)


@pytest.mark.parametrize("g", G_RANGE)
def test_r_integral(g):
    assert r_integral(g).equal


def test_r_integral_g2():
    assert r_integral(2).pipeline_value == parse_constant("-2*zp(1) + 1/12")


@pytest.mark.parametrize("g", G_RANGE)
def test_r_integral_only_odd_zeta_symbols(g):
    syms = r_integral_closed(g).symbolic_part
    assert {s.m for s in syms} == set(range(1, g, 2))


@pytest.mark.parametrize("g", G_RANGE)
def test_theorem24(g):
    res = theorem24(g)
    assert res.equal, res.residual


def test_theorem24_frozen_values():
    assert str(theorem24(2).pipeline_value) == "(-1*log(2) - 4*zp(1))*a + 5/6*omega"
    assert str(theorem24(3).pipeline_value) == "(1/8 + 1*log(2) - 1*log(3) + 6*zp(1))*a - 3/4*omega"


@pytest.mark.parametrize("g", G_RANGE)
def test_theorem24_omega_coefficient(g):
    value = torsion_pipeline(g)
    assert value.coefficient(omega=1) == Fraction((-1) ** g * (g + 3), 2 * g + 2)


@pytest.mark.parametrize("g", G_RANGE)
def test_theorem24_zeta_block(g):
    # coefficient of zeta'(-m) in the constant is -2 (-1)^g binom(g, m)
    const = torsion_pipeline(g).coefficient(a=1)
    for m in range(1, g, 2):
        assert const.coefficient(ZetaPrime(m)) == -2 * (-1) ** g * comb(g, m)


def test_lambda_sign_is_pinned():
    assert LAMBDA_SIGN == -1


@pytest.mark.parametrize("g", range(2, 9))
def test_literal_solve_flips_lambda(g):
    # the opposite sign of the double-factorial log is off by exactly 2 Lambda(g)
    flipped = torsion_pipeline(g, lambda_sign=+1) - theorem24_closed(g)
    a = flipped.ring.gen("a")
    assert flipped == a * (lambda_parity_constant(g) * 2)
    assert flipped != 0


def test_literal_solve_g2_residual():
    flipped = torsion_pipeline(2, lambda_sign=+1) - theorem24_closed(2)
    assert str(flipped) == "2*log(2)*a"


@pytest.mark.parametrize("g", G_RANGE)
def test_pushforward_block_degree_zero(g):
    assert pushforward_block(g).constant_term() == -(-1) ** g


@pytest.mark.parametrize("g", range(2, 9))
def test_prop31(g):
    assert prop31(g).equal


def test_prop31_values():
    v2 = prop31(2).pipeline_value
    assert str(v2) == "(5*log(pi) + 10*log(2))*a + 5*omega"
    v3 = prop31(3).pipeline_value
    assert v3.coefficient(omega=1) == 18
    assert v3.coefficient(a=1) == (log_rational(4) + Constant.symbol(LogPi())) * 27


@pytest.mark.parametrize("g", range(2, 7))
def test_prop31_even_count_brute_force(g):
    # even count N_e equals twice the omega coefficient
    assert len(enumerate_characteristics(g, "even")) == 2 * prop31(g).closed_form_value.coefficient(omega=1)


def test_section4_all_equal():
    results = section4_assemble()
    assert [r.statement_id for r in results] == [
        "section4.ss", "section4.theorem41", "section4.combined", "section4.constant_block"]
    assert all(r.equal for r in results)


def test_section4_values():
    ss, thm41, combined, block = section4_assemble()
    assert str(ss.pipeline_value) == "1/8*n*w + 1/24*w^2"
    assert str(block.pipeline_value) == "(1/4 - 2/3*log(2) - 6*zp(1))*G*a"


def test_section4_block_vanishes_without_fixed_curves():
    block = section4_assemble()[3].pipeline_value
    assert block.substitute("G", block.ring.zero()).is_zero()


def test_section4_combined_has_no_intermediate_symbols():
    combined = section4_assemble()[2].pipeline_value
    for powers, _ in combined.monomials():
        assert powers.get("push_w2", 0) == 0
        assert powers.get("c1_fw", 0) == 0


@pytest.mark.parametrize("r_plus", range(23))
def test_g_formula(r_plus):
    res = g_formula(r_plus)
    assert res.equal
    assert res.closed_form_value == 20 - 2 * r_plus


def test_g_formula_examples():
    assert euler_characteristic_G(10) == 0
    assert euler_characteristic_G(1) == 18
    with pytest.raises(ValueError):
        euler_characteristic_G(23)
    with pytest.raises(ValueError):
        g_formula(-1)


@pytest.mark.parametrize("fn", [lemma23, r_integral, theorem24, prop31])
def test_rejects_small_g(fn):
    with pytest.raises(ValueError):
        fn(1)


def test_pipelines_never_multiply_transcendentals():
    # SymbolicProductError would propagate out of any pipeline that did
    try:
        for g in range(2, 11):
            theorem24(g)
            r_integral(g)
        section4_assemble()
    except SymbolicProductError as exc:  # pragma: no cover
        pytest.fail(f"transcendental product: {exc}")


def test_to_record_shape():
    rec = theorem24(2).to_record()
    assert rec["statement_id"] == "theorem24"
    assert rec["g"] == 2
    assert rec["equal"] is True
    assert rec["residual"] == "0"
