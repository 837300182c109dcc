"""
Tests for the verification property registry
"""

from fractions import Fraction

import pytest

from hurwitz_cf.errors import InvalidParameter, UnknownProperty
from hurwitz_cf.exact_reals import QuadSurd
from hurwitz_cf.types import PROPERTY_NAMES
from hurwitz_cf.verification_manager import VerificationManager, sample_surds


@pytest.fixture
def manager(settings):
    return VerificationManager(settings)


def names(report):
    return {row.check_name for row in report.rows}


class TestRegistry:

    def test_every_property_registered(self, manager):
        assert manager.available_properties() == list(PROPERTY_NAMES)
        assert set(manager.property_suites) == set(PROPERTY_NAMES)

    def test_unknown_property(self, manager):
        with pytest.raises(UnknownProperty):
            manager.run("prop9", x=Fraction(1, 2))

    def test_missing_input(self, manager):
        with pytest.raises(InvalidParameter):
            manager.run("prop3")

    def test_sample_surds_are_seeded(self):
        first = sample_surds(5, seed=11)
        assert first == sample_surds(5, seed=11)
        assert all(isinstance(x, QuadSurd) for x in first)
        assert first != sample_surds(5, seed=12)


class TestValidityProperty:

    def test_golden_ratio(self, manager, phi):
        report = manager.run("prop1", x=phi, n=12)
        assert report.passed
        assert names(report) == {"validity", "round-trip", "enclosure"}

    def test_sign_rule_violation(self, manager):
        report = manager.run("prop1", terms=[5, 2, -2])
        assert not report.passed
        row = report.rows[0]
        assert (row.check_name, row.n, row.lhs) == ("validity", 1, "sign-rule")

    def test_too_small_violation(self, manager):
        report = manager.run("prop1", terms=[3, 1, 4])
        assert (report.rows[0].n, report.rows[0].lhs) == (1, "too-small")

    def test_given_valid_terms(self, manager):
        report = manager.run("prop1", terms=[2, -3, 3, -3])
        assert report.passed
        assert report.subject == "2,-3,3,-3"


class TestEvaluationProperty:

    def test_componentwise_and_negative_form(self, manager, phi):
        report = manager.run("prop2", x=phi, n=10)
        assert report.passed
        assert names(report) == {"componentwise-hurwitz", "componentwise-classical", "negative-form"}

    def test_given_terms(self, manager):
        report = manager.run("prop2", terms=[2, -3, 3])
        assert report.passed
        assert [(row.n, row.rhs) for row in report.rows][-1] == (2, "(-13,-8)")


class TestInequalityProperties:

    @pytest.mark.parametrize("prop", ["prop3", "prop4", "prop5"])
    def test_surds_pass(self, manager, prop, phi, sqrt2, sqrt101):
        for x in (phi, sqrt2, sqrt101, QuadSurd.create(3, -2, 5, 7)):
            assert manager.run(prop, x=x, n=15).passed

    def test_error_sign_rows(self, manager, phi):
        report = manager.run("prop3", x=phi, n=10)
        assert [row.n for row in report.rows] == list(range(10))

    def test_growth_includes_classical_baseline(self, manager, sqrt2):
        report = manager.run("prop4", x=sqrt2, n=30)
        assert {"expanding", "classical-fibonacci-1", "classical-fibonacci-2"} <= names(report)
        assert sum(1 for row in report.rows if row.check_name == "expanding") == 30

    def test_lagrange_includes_classical_baseline(self, manager, phi):
        report = manager.run("prop5", x=phi, n=8)
        assert names(report) == {"lagrange-lower", "lagrange-upper", "classical-lagrange"}

    def test_finite_rational_limits_indices(self, manager):
        # 9/23 has four Hurwitz terms
        assert [row.n for row in manager.run("prop3", x=Fraction(9, 23), n=20).rows] == [0, 1, 2]
        rows = manager.run("prop5", x=Fraction(9, 23), n=20).rows
        assert [row.n for row in rows] == [1, 1, 2, 2, 3, 3]


class TestSubsequenceProperty:

    def test_golden_ratio(self, manager, phi):
        report = manager.run("theorem1", x=phi, n=10)
        assert report.passed
        omitted = next(row for row in report.rows if row.check_name == "omitted-set")
        assert omitted.rhs == "0,2,4,6,8,10,12,14,16,18"

    def test_coverage_against_oracle(self, manager, sqrt2):
        report = manager.run("theorem1", x=sqrt2, n=8, rho=300)
        assert report.passed
        assert {"transform-commutes", "subsequence", "oracle-agreement", "legendre"} <= names(report)


class TestSandwichProperty:

    def test_golden_ratio(self, manager, phi):
        report = manager.run("theorem2-sandwich", x=phi, n=10, rho=100)
        assert report.passed
        assert "log-sandwich@1/3" in names(report)
        assert "xrho-agreement@1/10" in names(report)

    def test_single_delta(self, manager, sqrt101):
        report = manager.run("theorem2-sandwich", x=sqrt101, n=6, deltas=[Fraction(1, 4)])
        assert report.passed
        assert all(row.check_name.endswith("@1/4") for row in report.rows)

    def test_finite_rational_limits_indices(self, manager):
        # 9/23 has four Hurwitz terms, so the sandwich stops at n = 2
        report = manager.run("theorem2-sandwich", x=Fraction(9, 23), n=5, deltas=[Fraction(1, 3)])
        assert report.passed
        assert [row.n for row in report.rows] == [1, 1, 2, 2, 2]

    def test_short_rational_keeps_count_rows(self, manager):
        report = manager.run("theorem2-sandwich", x=Fraction(5, 3), n=5, rho=10)
        assert report.passed
        assert names(report) == {f"{check}@{label}" for check in ("xrho-agreement", "step-structure")
                                 for label in ("1/10", "1/4", "1/3")}


class TestConstantProperty:

    def test_gap(self, manager):
        report = manager.run("constant")
        assert report.passed
        assert names(report) == {"log2-gap"}
