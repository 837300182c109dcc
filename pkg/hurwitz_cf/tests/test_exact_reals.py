"""
Tests for exact quadratic surds, interval reals and literal parsing
"""

from fractions import Fraction

import pytest

from hurwitz_cf.errors import (
    DivisionByZero, FieldMismatch, InvalidParameter, LiteralParseError, PrecisionExhausted,
    SquarefreeBoundExceeded
)
from hurwitz_cf.exact_reals import (
    IntervalReal, QuadSurd, compare, floor, format_exact, is_integral, log_enclosure,
    nearest_int, parse_literal, recip_shift, sign, squarefree_decompose
)
from hurwitz_cf.types import Enclosure, Ordering


class TestSquarefree:

    @pytest.mark.parametrize("n, expected", [
        (12, (2, 3)),
        (50, (5, 2)),
        (5, (1, 5)),
        (1, (1, 1)),
        (0, (1, 0)),
        (49, (7, 1)),
    ])
    def test_decompose(self, n, expected):
        assert squarefree_decompose(n) == expected

    def test_square_cofactor_above_bound(self):
        assert squarefree_decompose(101 ** 2 * 3, bound=100) == (101, 3)

    def test_bound_exceeded(self):
        with pytest.raises(SquarefreeBoundExceeded):
            squarefree_decompose(101 * 103 * 107, bound=100)


class TestQuadSurd:

    def test_canonical_form(self):
        assert QuadSurd.create(2, 2, 4, 5) == QuadSurd(1, 1, 2, 5)
        assert QuadSurd.create(1, 1, -2, 5) == QuadSurd(-1, -1, 2, 5)

    def test_square_radicand_collapses(self):
        assert QuadSurd.sqrt(4) == Fraction(2)
        assert QuadSurd.sqrt(8) == QuadSurd(0, 2, 1, 2)

    def test_rejects_non_canonical(self):
        with pytest.raises(InvalidParameter):
            QuadSurd(2, 2, 4, 5)
        with pytest.raises(InvalidParameter):
            QuadSurd(1, 0, 1, 5)

    def test_zero_denominator(self):
        with pytest.raises(DivisionByZero):
            QuadSurd.create(1, 1, 0, 2)

    def test_arithmetic_stays_in_field(self, phi):
        # phi**2 = phi + 1
        assert phi * phi == phi + 1
        assert 1 / phi == phi - 1
        assert (phi - phi) == Fraction(0)

    def test_field_mismatch(self, sqrt2):
        with pytest.raises(FieldMismatch):
            sqrt2 + QuadSurd.sqrt(3)

    def test_floor_and_sign(self, sqrt2):
        assert sqrt2.floor() == 1
        assert (-sqrt2).floor() == -2
        assert (sqrt2 - Fraction(3, 2)).sign() == -1


class TestDecisions:

    def test_nearest_int_ties_round_down(self):
        assert nearest_int(Fraction(5, 2)) == 2
        assert nearest_int(Fraction(-5, 2)) == -3
        assert nearest_int(Fraction(7, 3)) == 2

    def test_nearest_int_surd(self, phi, sqrt2):
        assert nearest_int(phi) == 2
        assert nearest_int(sqrt2) == 1
        assert nearest_int(-phi) == -2

    def test_floor_rational(self):
        assert floor(Fraction(-1, 3)) == -1
        assert floor(3) == 3

    def test_recip_shift(self, phi):
        assert recip_shift(Fraction(5, 2), 2) == 2
        assert recip_shift(phi, 1) == phi
        with pytest.raises(DivisionByZero):
            recip_shift(Fraction(3), 3)

    def test_compare_across_fields(self):
        assert compare(parse_literal("1+sqrt(2)"), QuadSurd.sqrt(6)) is Ordering.LESS
        assert compare(QuadSurd.sqrt(6), parse_literal("1+sqrt(2)")) is Ordering.GREATER

    def test_compare_equal(self, phi):
        assert compare(phi, parse_literal("(1+sqrt(5))/2")) is Ordering.EQUAL

    def test_sign(self, sqrt2):
        assert sign(sqrt2 - 1) == 1
        assert sign(Fraction(0)) == 0
        assert sign(1 - sqrt2) == -1


class TestIntervalReal:

    def test_undecidable_comparison_exhausts(self):
        x = parse_literal("dec:1.5@8", cap_bits=64)
        with pytest.raises(PrecisionExhausted):
            compare(x, Fraction(3, 2))

    def test_floor_of_decimal(self):
        assert floor(parse_literal("dec:2.5@16")) == 2

    def test_nearest_int_at_tie_exhausts(self):
        with pytest.raises(PrecisionExhausted):
            nearest_int(parse_literal("dec:2.5@8", cap_bits=64))

    def test_separated_comparison(self):
        assert compare(parse_literal("dec:3.14159@64"), Fraction(22, 7)) is Ordering.LESS

    def test_enclosures_never_widen(self):
        x = IntervalReal(lambda bits: Enclosure(Fraction(1), Fraction(2)), 8, 64)
        first = x.enclosure_at(8)
        assert x.enclosure_at(64).width <= first.width

    def test_refine_fails_at_cap(self):
        x = IntervalReal(lambda bits: Enclosure(Fraction(1), Fraction(2)), 8, 64)
        with pytest.raises(PrecisionExhausted):
            x.refine(Fraction(1, 4))

    def test_derived_arithmetic(self, sqrt2):
        x = parse_literal("dec:1.25@32")
        assert compare(x * 2, sqrt2 * 2) is Ordering.LESS
        assert not is_integral(x)

    def test_exhaustion_names_source_literal(self):
        # the shift contains zero at every precision
        x = recip_shift(parse_literal("dec:2.0@8", cap_bits=64), 2)
        with pytest.raises(PrecisionExhausted, match=r"interval:\[\?\] derived from dec:2\.0@8"):
            floor(x)

    def test_exhaustion_shows_last_enclosure(self):
        x = recip_shift(parse_literal("dec:2.4@8", cap_bits=64), 2)
        with pytest.raises(PrecisionExhausted, match=r"interval:\[.*\] derived from dec:2\.4@8"):
            nearest_int(x)
        assert x.origin == "dec:2.4@8"
        assert x.last_enclosure() is not None


class TestLogEnclosure:

    def test_log_two(self):
        enclosure = log_enclosure(2)
        assert enclosure.lo < Fraction("0.69314718055994530942")
        assert enclosure.hi > Fraction("0.69314718055994530941")
        assert enclosure.width <= Fraction(1, 2 ** 64)

    def test_log_surd(self, phi):
        enclosure = log_enclosure(phi)
        assert Fraction("0.4812") < enclosure.lo < enclosure.hi < Fraction("0.4813")

    def test_non_positive(self):
        with pytest.raises(InvalidParameter):
            log_enclosure(Fraction(-1))


class TestLiterals:

    @pytest.mark.parametrize("text, expected", [
        ("(1+sqrt(5))/2", QuadSurd(1, 1, 2, 5)),
        ("sqrt(8)", QuadSurd(0, 2, 1, 2)),
        ("sqrt(4)", Fraction(2)),
        ("17/12", Fraction(17, 12)),
        ("-3", Fraction(-3)),
        ("sqrt(2)-1", QuadSurd(-1, 1, 1, 2)),
    ])
    def test_parse(self, text, expected):
        assert parse_literal(text) == expected

    @pytest.mark.parametrize("text", ["", "1/", "sqrt(x)", "(1+2", "1/0", "sqrt(2)+sqrt(3)", "dec:abc"])
    def test_parse_errors(self, text):
        with pytest.raises(LiteralParseError):
            parse_literal(text)

    @pytest.mark.parametrize("value, expected", [
        (Fraction(2), "2/1"),
        (Fraction(-9, 23), "-9/23"),
        (QuadSurd(-1, 1, 1, 2), "-1+sqrt(2)"),
        (QuadSurd(1, 1, 2, 5), "(1+sqrt(5))/2"),
        (QuadSurd(0, -2, 3, 7), "-2*sqrt(7)/3"),
    ])
    def test_format(self, value, expected):
        assert format_exact(value) == expected

    def test_format_parses_back(self, phi):
        assert parse_literal(format_exact(phi)) == phi
        assert parse_literal(format_exact(QuadSurd(0, -2, 3, 7))) == QuadSurd(0, -2, 3, 7)

    def test_decimal_literal_round_trips(self):
        assert format_exact(parse_literal("dec:2.5@16")) == "dec:2.5@16"
