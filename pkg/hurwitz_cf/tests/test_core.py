"""
Tests for the async toolkit facade
"""

from fractions import Fraction

import pytest

import hurwitz_cf
from hurwitz_cf import create_toolkit, get_default_configuration
from hurwitz_cf.core import HurwitzToolkit
from hurwitz_cf.counting import brute_force_approx
from hurwitz_cf.config_manager import ToolkitSettings
from hurwitz_cf.types import CountMethod, OperationResult


class TestExpand:

    @pytest.mark.asyncio
    async def test_golden_ratio(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.expand("(1+sqrt(5))/2", n_terms=4)
        assert result.success
        assert result.data["terms"].terms == (2, -3, 3, -3)
        fields = result.data["report"].fields
        assert fields["terms"] == ["2", "-3", "3", "-3"]
        assert fields["convergents"] == [["2", "1"], ["-5", "-3"], ["-13", "-8"], ["34", "21"]]
        assert fields["kind"] == "hurwitz-positive"

    @pytest.mark.asyncio
    async def test_negative_form(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.expand("(1+sqrt(5))/2", n_terms=4, negative=True)
        fields = result.data["report"].fields
        assert fields["terms"] == ["2", "3", "3", "3"]
        assert fields["convergents"] == [["2", "1"], ["5", "3"], ["13", "8"], ["34", "21"]]

    @pytest.mark.asyncio
    async def test_classical_rational(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.expand("17/12", algo="classical", n_terms=10)
        fields = result.data["report"].fields
        assert fields["terms"] == ["1", "2", "2", "2"]
        assert fields["finite"] is True

    @pytest.mark.asyncio
    async def test_negative_classical_rejected(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.expand("sqrt(2)", algo="classical", negative=True)
        assert not result.success
        assert result.error_code == "INVALID_PARAMETER"

    @pytest.mark.asyncio
    async def test_parse_error(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.expand("sqrt(2")
        assert result.error_code == "PARSE_ERROR"

    @pytest.mark.asyncio
    async def test_precision_exhausted(self):
        async with HurwitzToolkit({"precision_bits": 64}) as toolkit:
            result = await toolkit.expand("dec:2.5@8")
        assert not result.success
        assert result.error_code == "PRECISION_EXHAUSTED"

    @pytest.mark.asyncio
    async def test_cache_reused(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            await toolkit.expand("sqrt(7)", n_terms=5)
            await toolkit.expand("sqrt(7)", n_terms=8)
            stats = toolkit.get_performance_summary()
        assert stats["cache"]["hits"] == 1
        assert stats["operations"]["expand"]["calls"] == 2


class TestTransform:

    @pytest.mark.asyncio
    async def test_raw_terms(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.transform(b_terms=[0, 2, 1, 1, 4])
        fields = result.data["report"].fields
        assert fields["S"] == ["2", "3"]
        assert fields["S_prime"] == ["2"]
        assert fields["terms"] == ["0", "3", "-2", "-4"]
        assert fields["omitted"] == ["1"]
        assert fields["finite"] is True

    @pytest.mark.asyncio
    async def test_from_literal(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.transform(x="(1+sqrt(5))/2", n_terms=10)
        fields = result.data["report"].fields
        assert fields["S_prime"] == ["1", "3", "5", "7", "9"]
        assert fields["terms"][:3] == ["2", "-3", "3"]

    @pytest.mark.asyncio
    async def test_needs_one_source(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.transform()
        assert result.error_code == "INVALID_PARAMETER"


class TestVerify:

    @pytest.mark.asyncio
    async def test_failed_check(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.verify("prop1", terms="5,2,-2")
        assert not result.success
        assert result.error_code == "CHECK_FAILED"
        assert result.data["report"].fields["failures"] == 1

    @pytest.mark.asyncio
    async def test_passing_property(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.verify("prop4", x="sqrt(2)", n=30)
        assert result.success
        assert result.data["report"].fields["passed"] is True

    @pytest.mark.asyncio
    async def test_delta_literal(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.verify("theorem2-sandwich", x="sqrt(101)", n=5, delta="1/4")
        assert result.success

    @pytest.mark.asyncio
    async def test_unknown_property(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.verify("prop9", x="sqrt(2)")
        assert result.error_code == "UNKNOWN_PROPERTY"

    @pytest.mark.asyncio
    async def test_sample_is_deterministic(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            first = await toolkit.verify_sample("prop3", 4, seed=3, n=8)
            second = await toolkit.verify_sample("prop3", 4, seed=3, n=8)
        assert first.success
        assert first.data["report"].fields == second.data["report"].fields
        assert len(first.data["report"].fields["subjects"]) == 4


class TestCounting:

    @pytest.mark.asyncio
    async def test_chunked_oracle_matches_serial(self, settings, sqrt2):
        async with HurwitzToolkit(settings) as toolkit:
            records = await toolkit.brute_force(sqrt2, Fraction(1, 2), 333)
        assert records == brute_force_approx(sqrt2, Fraction(1, 2), 333)

    @pytest.mark.asyncio
    async def test_xrho(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.count_xrho("sqrt(101)", "1/3", 20, witnesses=True)
        assert result.data["result"].count == 2
        fields = result.data["report"].fields
        assert fields["count"] == "2"
        assert [(w["p"], w["q"]) for w in fields["witnesses"]] == [("10", "1"), ("201", "20")]

    @pytest.mark.asyncio
    async def test_xrho_convergent_method(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.count_xrho("sqrt(101)", "1/3", 20, CountMethod.CONVERGENT)
        assert result.data["result"].count == 2

    @pytest.mark.asyncio
    async def test_xrho_delta_out_of_range(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.count_xrho("sqrt(2)", "1/2", 20, CountMethod.CONVERGENT)
        assert result.error_code == "DELTA_OUT_OF_RANGE"

    @pytest.mark.asyncio
    async def test_sandwich(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.count_sandwich("(1+sqrt(5))/2", "1/3", 10)
        assert result.success
        assert result.data["report"].fields["counts"] == ["0", "0", "10"]

    @pytest.mark.asyncio
    async def test_cd(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.count_cd("sqrt(2)", "1/4", 10, ["2"])
        fields = result.data["report"].fields
        assert (fields["e_n"], fields["f_n"]) == ("0/1", "0/1")
        assert fields["window"] == ["5", "10"]
        assert fields["densities"]["2/1"] == {"lower": "1/1", "upper": "1/1"}

    @pytest.mark.asyncio
    async def test_gform(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.count_gform("sqrt(2)", "1", "sqrt(2)-1", "1", "3/10", "1/10", 100,
                                               witnesses=True)
        assert result.data["result"].count == 1
        assert result.data["report"].fields["witnesses"][0]["q"] == "-1"
        assert result.data["report"].fields["witnesses"][0]["deviation"] == "-1+sqrt(2)"
        assert result.data["ratios"].passed
        assert "linkage" not in result.data["report"].fields

    @pytest.mark.asyncio
    async def test_gform_bad_determinant(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.count_gform("sqrt(2)", "1", "sqrt(2)", "1", "1/4", "1/10", 10)
        assert result.error_code == "INVALID_PARAMETER"

    @pytest.mark.asyncio
    async def test_constant(self, settings):
        async with HurwitzToolkit(settings) as toolkit:
            result = await toolkit.constant_check()
        assert result.success
        assert result.data["result"].passed


class TestConvenience:

    def test_public_names_resolve(self):
        assert [name for name in hurwitz_cf.__all__ if not hasattr(hurwitz_cf, name)] == []
        assert not hasattr(hurwitz_cf, "_validate_dependencies")

    def test_default_configuration_round_trips(self):
        config = get_default_configuration()
        assert config["output_format"] == "json"
        assert ToolkitSettings.model_validate(config) == ToolkitSettings()

    @pytest.mark.asyncio
    async def test_create_toolkit(self):
        toolkit = create_toolkit({"workers": 2})
        assert toolkit.settings.workers == 2
        async with toolkit:
            result = await toolkit.expand("5/2")
        assert isinstance(result, OperationResult)
        assert result.data["terms"].terms == (2, 2)
