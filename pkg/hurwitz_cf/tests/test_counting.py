"""
Tests for approximation counting, the convergent sandwich and G(rho)
"""

from fractions import Fraction

import pytest

from hurwitz_cf.counting import (
    brute_force_approx, cd_quantities, check_delta, chunk_bounds, constant_check,
    convergent_records, form_value, g_linkage, g_rho, make_cd_params, qpq_direct, qpq_ratio,
    ratio_check, sandwich, sandwich_steps, x_rho
)
from hurwitz_cf.errors import DeltaOutOfRange, InvalidParameter
from hurwitz_cf.exact_reals import compare, format_exact, log_enclosure
from hurwitz_cf.types import CountMethod, GWitness, LinkageRow, Ordering


class TestBruteForce:

    def test_golden_ratio_half(self, phi):
        records = brute_force_approx(phi, Fraction(1, 2), 10)
        assert [(r.p, r.q) for r in records] == [(2, 1), (3, 2), (5, 3), (8, 5), (13, 8)]

    def test_chunking_is_invisible(self, sqrt2):
        whole = brute_force_approx(sqrt2, Fraction(1, 2), 200, chunk_size=1000)
        pieces = brute_force_approx(sqrt2, Fraction(1, 2), 200, chunk_size=7)
        assert whole == pieces

    def test_wide_delta_scans_neighbours(self, phi):
        narrow = {(r.p, r.q) for r in brute_force_approx(phi, Fraction(1, 2), 30)}
        wide = brute_force_approx(phi, Fraction(1), 30)
        assert narrow <= {(r.p, r.q) for r in wide}
        assert all(compare(r.quality, Fraction(1)) is not Ordering.GREATER for r in wide)
        assert (1, 1) in {(r.p, r.q) for r in wide}

    def test_rational_tie_keeps_both_neighbours(self):
        records = brute_force_approx(Fraction(1, 2), Fraction(1, 2), 2)
        assert [(r.p, r.q) for r in records] == [(0, 1), (1, 1), (1, 2)]

    def test_chunk_bounds(self):
        assert chunk_bounds(10, 4) == [(1, 5), (5, 9), (9, 11)]
        with pytest.raises(InvalidParameter):
            chunk_bounds(10, 0)

    def test_check_delta(self):
        assert check_delta("1/3") == Fraction(1, 3)
        with pytest.raises(DeltaOutOfRange):
            check_delta(Fraction(0))
        with pytest.raises(DeltaOutOfRange):
            check_delta(Fraction(1, 2), Fraction(1, 3))


class TestXRho:

    def test_sqrt101(self, sqrt101):
        result = x_rho(sqrt101, Fraction(1, 3), 20)
        assert result.count == 2
        assert [(r.p, r.q) for r in result.records] == [(10, 1), (201, 20)]
        assert result.value.contains(2 / log_enclosure(20).midpoint)

    def test_convergent_method_agrees(self, sqrt101):
        oracle = x_rho(sqrt101, Fraction(1, 3), 500)
        walked = x_rho(sqrt101, Fraction(1, 3), 500, CountMethod.CONVERGENT)
        assert [(r.p, r.q) for r in oracle.records] == [(r.p, r.q) for r in walked.records]
        assert all(r.source == "convergent" for r in walked.records)

    def test_golden_ratio_has_none(self, phi):
        assert x_rho(phi, Fraction(1, 3), 100).count == 0

    def test_sqrt2_has_none(self, sqrt2):
        assert x_rho(sqrt2, Fraction(1, 3), 300).count == 0

    def test_convergent_records_stop_at_rho(self, sqrt101):
        records = convergent_records(sqrt101, Fraction(1, 3), 20)
        assert [r.index for r in records] == [0, 1]

    def test_rho_at_least_two(self, phi):
        with pytest.raises(InvalidParameter):
            x_rho(phi, Fraction(1, 3), 1)

    def test_convergent_method_caps_delta(self, phi):
        with pytest.raises(DeltaOutOfRange):
            x_rho(phi, Fraction(1, 2), 10, CountMethod.CONVERGENT)


class TestSandwich:

    def test_golden_ratio(self, phi):
        report = sandwich(phi, Fraction(1, 3), 10)
        assert (report.count_lower, report.count_mid, report.count_upper) == (0, 0, 10)
        assert report.counts_ok
        assert report.log_ok
        assert report.passed

    def test_steps_are_monotone(self, sqrt101):
        steps = sandwich_steps(sqrt101, Fraction(1, 10), 8)
        assert [step.n for step in steps] == list(range(1, 9))
        assert all(step.counts_ok and step.product_ok for step in steps)
        assert [step.count_mid for step in steps] == sorted(step.count_mid for step in steps)

    def test_delta_above_third(self, phi):
        with pytest.raises(DeltaOutOfRange):
            sandwich(phi, Fraction(1, 2), 5)


class TestDensityProxies:

    def test_sqrt2(self, sqrt2):
        quantities = cd_quantities(sqrt2, Fraction(1, 4), 10)
        assert quantities.e_n == 0
        assert quantities.f_n == 0
        assert quantities.window == (5, 10)
        assert quantities.alpha_n.contains(log_enclosure(2).midpoint)

    def test_extra_threshold(self, sqrt2):
        quantities = cd_quantities(sqrt2, Fraction(1, 4), 10, thresholds=[2])
        assert quantities.densities["2/1"] == (1, 1)

    def test_delta_capped(self, sqrt2):
        with pytest.raises(DeltaOutOfRange):
            cd_quantities(sqrt2, Fraction(1, 3), 10)


class TestConstant:

    def test_gap(self):
        check = constant_check()
        assert check.passed
        assert check.lhs.lo > check.rhs.hi


class TestProductForm:

    @pytest.fixture
    def params(self, sqrt2):
        return make_cd_params(sqrt2, Fraction(1), sqrt2 - 1, Fraction(1),
                              Fraction(3, 10), Fraction(1, 10))

    def test_g_rho(self, params):
        result = g_rho(params, 100)
        assert result.count == 1
        assert [(w.p, w.q) for w in result.witnesses] == [(1, -1)]

    def test_chunked_enumeration(self, params):
        assert g_rho(params, 60, chunk_size=9) == g_rho(params, 60)

    def test_witness_sets_grow_with_rho(self, params):
        previous = set()
        for rho in (1, 5, 20, 60, 150):
            current = {(w.p, w.q) for w in g_rho(params, rho).witnesses}
            assert previous <= current
            previous = current
        assert previous == {(1, -1)}

    def test_ratio_check(self, params):
        ratios = ratio_check(params, g_rho(params, 100).witnesses)
        row = ratios.rows[0]
        assert (row.p, row.q) == (1, -1)
        assert format_exact(row.ratio) == "2-sqrt(2)"
        assert format_exact(row.deviation) == "-1+sqrt(2)"
        assert row.bound == Fraction(3, 10)
        assert not row.within_bound
        # |q| = 1 is below the default threshold
        assert (ratios.checked, ratios.max_deviation, ratios.passed) == (0, None, True)

    def test_ratio_tolerance_applies_from_min_q(self, params):
        ratios = ratio_check(params, g_rho(params, 100).witnesses, min_q=1)
        assert ratios.checked == 1
        assert format_exact(ratios.max_deviation) == "-1+sqrt(2)"
        assert not ratios.passed

    def test_ratio_bound_reported_not_asserted(self, params):
        witness = GWitness(-10, 7, form_value(params, -10, 7))
        ratios = ratio_check(params, [witness], min_q=5)
        row = ratios.rows[0]
        assert format_exact(row.deviation) == "(10-7*sqrt(2))/7"
        assert row.bound == Fraction(3, 490)
        assert not row.within_bound
        assert ratios.passed

    def test_linkage(self, params):
        assert g_linkage(params, (1000, 10, 100)) == (
            LinkageRow(10, 1, 0, 1), LinkageRow(100, 1, 0, 1), LinkageRow(1000, 1, 0, 1)
        )

    @pytest.mark.parametrize("p, q", [(1, -1), (3, 2), (-7, 5)])
    def test_ratio_identity(self, params, p, q):
        assert compare(qpq_ratio(params, p, q), qpq_direct(params, p, q)) is Ordering.EQUAL

    def test_determinant_must_be_one(self, sqrt2):
        with pytest.raises(InvalidParameter):
            make_cd_params(sqrt2, Fraction(1), sqrt2, Fraction(1), Fraction(1, 4), Fraction(1, 10))

    def test_rational_ratio_rejected(self):
        with pytest.raises(InvalidParameter):
            make_cd_params(Fraction(1), Fraction(1), Fraction(0), Fraction(1),
                           Fraction(1, 4), Fraction(1, 10))
