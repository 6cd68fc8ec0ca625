"""Tests for the D2 algebra, scalar backends, jets and dual numbers."""
import math
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "tools"))

from errors import GalileanError, NonInvertible, ParseError
from pimenov_core import (
    HALF,
    I1,
    I1I2,
    I2,
    D2Element,
    DualNumber,
    Jet2,
    ScalarMode,
    coerce_scalar,
    d2_add,
    d2_apply,
    d2_conj_iota2,
    d2_div,
    d2_eval,
    d2_exp,
    d2_inverse,
    d2_mul,
    d2_pow,
    d2_scale,
    d2_sub,
    format_d2,
    jet_log,
    jet_power,
    parse_d2,
    parse_scalar,
    scalars_close,
    to_scalar,
)


def random_d2(rng, scale=5, denominator=12):
    return D2Element(*(Fraction(rng.randint(-scale * denominator, scale * denominator), denominator) for _ in range(4)))


# ──────────────────────────────────────────────
# Scalars
# ──────────────────────────────────────────────

class TestScalars:
    def test_integers_become_fractions(self):
        assert coerce_scalar(3) == Fraction(3)
        assert isinstance(coerce_scalar(3), Fraction)

    def test_floats_stay_floats(self):
        assert isinstance(coerce_scalar(1.5), float)

    def test_bool_rejected(self):
        with pytest.raises(TypeError):
            coerce_scalar(True)

    def test_parse_forms(self):
        assert parse_scalar("3") == Fraction(3)
        assert parse_scalar("2/3") == Fraction(2, 3)
        assert parse_scalar("-1.5") == -1.5
        assert isinstance(parse_scalar("-1.5"), float)

    def test_parse_with_mode(self):
        assert parse_scalar("0.25", ScalarMode.RATIONAL) == Fraction(1, 4)
        assert isinstance(parse_scalar("2/3", ScalarMode.FLOAT), float)

    def test_parse_rejects_garbage(self):
        with pytest.raises(ParseError):
            parse_scalar("abc")
        with pytest.raises(ParseError):
            parse_scalar("1/0")

    def test_to_scalar_modes(self):
        assert to_scalar(2, ScalarMode.FLOAT) == 2.0
        assert isinstance(to_scalar(2, ScalarMode.FLOAT), float)
        assert to_scalar(0.5, ScalarMode.RATIONAL) == HALF

    def test_close_is_exact_for_fractions(self):
        assert not scalars_close(Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10**20), 1e-9)
        assert scalars_close(1 / 3, Fraction(1, 3), 1e-12)


# ──────────────────────────────────────────────
# Multiplication and inverse
# ──────────────────────────────────────────────

class TestMultiplication:
    def test_generators_are_nilpotent(self):
        assert d2_mul(I1, I1) == D2Element.zero()
        assert d2_mul(I2, I2) == D2Element.zero()

    def test_generators_commute_to_i1i2(self):
        assert d2_mul(I1, I2) == I1I2
        assert d2_mul(I2, I1) == I1I2

    def test_results_keep_scalar_types(self):
        exact = d2_mul(D2Element(1, 2, 3, 4), d2_add(D2Element(5), D2Element(0, 1)))
        assert all(isinstance(c, Fraction) for c in exact.coefficients)
        mixed = d2_mul(D2Element(1, 2, 3, 4), D2Element(0.5))
        assert all(isinstance(c, float) for c in mixed.coefficients)
        assert exact == D2Element(*exact.coefficients)

    def test_product_formula(self):
        a = D2Element(1, 2, 3, 4)
        b = D2Element(5, 6, 7, 8)
        # c3 = a0 b3 + a3 b0 + a1 b2 + a2 b1
        assert d2_mul(a, b) == D2Element(5, 16, 22, 8 + 20 + 14 + 18)

    def test_axioms_exact(self, rng):
        for _ in range(200):
            a, b, c = random_d2(rng), random_d2(rng), random_d2(rng)
            assert d2_mul(a, b) == d2_mul(b, a)
            assert d2_mul(d2_mul(a, b), c) == d2_mul(a, d2_mul(b, c))
            assert d2_mul(a, d2_add(b, c)) == d2_add(d2_mul(a, b), d2_mul(a, c))

    def test_operators_match_functions(self):
        a = D2Element(1, 2, 3, 4)
        b = D2Element(2, 0, 1, 0)
        assert a * b == d2_mul(a, b)
        assert a + b == d2_add(a, b)
        assert a - b == d2_sub(a, b)
        assert 2 * a == d2_scale(a, 2)
        assert a + 1 == D2Element(2, 2, 3, 4)


class TestInverse:
    def test_worked_example(self):
        assert d2_inverse(D2Element(2, 1)) == D2Element(HALF, Fraction(-1, 4))

    def test_inverse_is_exact(self, rng):
        for _ in range(200):
            a = random_d2(rng)
            if a.a0 == 0:
                continue
            assert d2_mul(a, d2_inverse(a)) == D2Element.one()

    def test_zero_scalar_part_raises(self):
        with pytest.raises(NonInvertible):
            d2_inverse(I1)

    def test_float_threshold(self):
        with pytest.raises(NonInvertible):
            d2_inverse(D2Element(1e-13, 1.0))

    def test_division(self):
        a = D2Element(3, 1, 2, 0)
        b = D2Element(2, 1)
        assert d2_mul(d2_div(a, b), b) == a

    def test_negative_power(self):
        a = D2Element(2, 1, 1, 0)
        assert d2_mul(d2_pow(a, -2), d2_pow(a, 2)) == D2Element.one()

    def test_nilpotent_power(self):
        assert d2_pow(D2Element(0, 1, 1, 0), 2) == D2Element(0, 0, 0, 2)
        assert d2_pow(D2Element(0, 1, 1, 0), 3) == D2Element.zero()


class TestConjugation:
    def test_flips_i2_terms(self):
        assert d2_conj_iota2(D2Element(1, 2, 3, 4)) == D2Element(1, 2, -3, -4)

    def test_is_multiplicative(self, rng):
        for _ in range(50):
            a, b = random_d2(rng), random_d2(rng)
            assert d2_conj_iota2(d2_mul(a, b)) == d2_mul(d2_conj_iota2(a), d2_conj_iota2(b))


# ──────────────────────────────────────────────
# Jets
# ──────────────────────────────────────────────

class TestJets:
    def test_exp_of_nilpotent_is_exact(self):
        assert d2_exp(D2Element(0, 1, 1)) == D2Element(1, 1, 1, 1)

    def test_exp_adds_in_rational_mode(self, rng):
        for _ in range(50):
            a = random_d2(rng).imaginary_part
            b = random_d2(rng).imaginary_part
            assert d2_mul(d2_exp(a), d2_exp(b)) == d2_exp(d2_add(a, b))

    def test_exp_float(self):
        a = D2Element(1.0, 2.0, 3.0, 4.0)
        e = math.e
        assert d2_exp(a).close(D2Element(e, 2 * e, 3 * e, (4 + 6) * e), 1e-12)

    def test_sin_at_zero(self):
        assert d2_apply("sin", D2Element(0, 1, 1, 0)) == D2Element(0, 1, 1, 0)

    def test_sin_at_half_pi(self):
        result = d2_apply("sin", D2Element(math.pi / 2, 1, 1, 0))
        assert result.close(D2Element(1, 0, 0, -1), 1e-12)
        assert not result.is_exact()

    def test_cos_at_zero(self):
        assert d2_apply("cos", D2Element(0, 1, 1, 0)) == D2Element(1, 0, 0, -1)

    def test_log_needs_positive_scalar(self):
        with pytest.raises(GalileanError):
            jet_log(Fraction(0))

    def test_log_at_one(self):
        assert d2_apply("log", D2Element(1, 2, 3, 0)) == D2Element(0, 2, 3, -6)

    def test_integer_power_matches_pow(self):
        a = D2Element(2, 1, 3, 1)
        assert d2_eval(jet_power(a.a0, 3), a) == d2_pow(a, 3)

    def test_from_callables(self):
        jet = Jet2.from_callables(lambda x: x * x, lambda x: 2 * x, lambda x: 2, Fraction(3))
        assert jet == Jet2(9, 6, 2)

    def test_unknown_function(self):
        with pytest.raises(GalileanError):
            d2_apply("tanh", D2Element(1))


# ──────────────────────────────────────────────
# Dual numbers
# ──────────────────────────────────────────────

class TestDualNumbers:
    def test_product(self):
        assert DualNumber(1, 2) * DualNumber(3, 4) == DualNumber(3, 10)

    def test_inverse(self):
        x = DualNumber(2, 3)
        assert x * x.inverse() == DualNumber(1, 0)

    def test_zero_real_part_not_invertible(self):
        with pytest.raises(NonInvertible):
            DualNumber(0, 1).inverse()

    def test_exp_of_pure_dual(self):
        assert DualNumber(0, 5).exp() == DualNumber(1, 5)

    def test_embeddings(self):
        x = DualNumber(2, 3)
        assert x.to_d2() == D2Element(2, 3, 0, 0)
        assert x.to_d2(2) == D2Element(2, 0, 3, 0)
        assert DualNumber.from_d2(x.to_d2(2), 2) == x

    def test_from_d2_rejects_mixed(self):
        with pytest.raises(GalileanError):
            DualNumber.from_d2(D2Element(1, 1, 1, 0), 1)


# ──────────────────────────────────────────────
# Text form
# ──────────────────────────────────────────────

class TestTextForm:
    def test_format(self):
        assert format_d2(D2Element(2, 1)) == "2 + 1*i1"
        assert format_d2(D2Element(HALF, Fraction(-1, 4))) == "1/2 - 1/4*i1"
        assert format_d2(D2Element(0, Fraction(-1, 4))) == "-1/4*i1"
        assert format_d2(D2Element.zero()) == "0"

    def test_parse(self):
        assert parse_d2("2 + 1*i1") == D2Element(2, 1)
        assert parse_d2("1 - i1i2") == D2Element(1, 0, 0, -1)
        assert parse_d2("3/4*i2") == D2Element(0, 0, Fraction(3, 4))

    def test_parse_formatted(self):
        a = D2Element(Fraction(-3, 2), 0, 5, Fraction(7, 3))
        assert parse_d2(format_d2(a)) == a

    def test_parse_rejects_garbage(self):
        with pytest.raises(ParseError):
            parse_d2("2 + x")
        with pytest.raises(ParseError):
            parse_d2("")
