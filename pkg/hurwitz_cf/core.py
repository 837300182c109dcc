"""
Hurwitz CF Toolkit - Core Implementation

This module implements the toolkit facade. It composes the configuration,
cache, verification and monitoring managers, dispatches chunked enumeration to
a thread pool, and wraps every outcome in an OperationResult.
"""

import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Awaitable, Callable, Dict, List, Optional, Sequence, Tuple

from .cf_engine import convergents, negative_convergents, to_negative
from .cf_transform import classical_to_hurwitz
from .config_manager import ToolkitSettings, parse_rational, parse_terms
from .cache_manager import CacheManager
from .counting import (
    cd_quantities, check_delta, chunk_bounds, constant_check, convergent_records,
    LINKAGE_RHOS, g_chunk_bounds, g_linkage, g_scan_chunk, make_cd_params, merge_chunks, ratio_check,
    sandwich, scan_chunk, x_rho
)
from .errors import HurwitzToolkitError, InvalidParameter, PrecisionExhausted
from .exact_reals import ExactValue, format_exact, parse_literal
from .interface import ToolkitInterface
from .monitoring import ToolkitMonitor
from .reporting import (
    Report, cd_report, constant_report, expansion_report, gcount_report, sandwich_report,
    transform_report, verification_report, xrho_report
)
from .types import (
    ApproxRecord, CountMethod, ExpansionKind, GCount, GWitness, HURWITZ_DELTA_MAX, OperationResult,
    VerificationReport
)
from .verification_manager import VerificationManager, sample_surds

logger = logging.getLogger(__name__)


class HurwitzToolkit(ToolkitInterface):
    """
    Exact continued fraction toolkit

    Expansion, classical-to-Hurwitz rewriting, verification properties and
    approximation counting behind one async facade. Results carry a rendered
    ``Report`` under ``data["report"]``.
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """Initialize toolkit with validated settings"""
        if isinstance(config, ToolkitSettings):
            self.settings = config
        else:
            self.settings = ToolkitSettings.model_validate(config or {})

        self.cache_manager = CacheManager(max_entries=self.settings.cache_size)
        self.verification_manager = VerificationManager(self.settings)
        self.monitor = ToolkitMonitor(metrics_enabled=self.settings.metrics_enabled)

        self._executor: Optional[ThreadPoolExecutor] = None

    async def __aenter__(self):
        """Async context manager entry"""
        self._executor = ThreadPoolExecutor(max_workers=self.settings.workers,
                                            thread_name_prefix="hurwitz-cf")
        return self

    async def __aexit__(self, exc_type, exc_val, exc_tb):
        """Async context manager exit"""
        if self._executor:
            self._executor.shutdown(wait=True)
            self._executor = None

    # Helpers

    def _parse(self, text: str) -> ExactValue:
        return parse_literal(text, self.settings.squarefree_bound, self.settings.initial_bits,
                             self.settings.precision_bits)

    @property
    def _log_args(self) -> Tuple[int, int]:
        return self.settings.log_width_bits, self.settings.precision_bits

    async def _in_executor(self, func: Callable, *args: Any) -> Any:
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(self._executor, func, *args)

    async def _gather_chunks(self, func: Callable, bounds: Sequence[Tuple[int, int]],
                             *args: Any) -> List[Any]:
        """Run one call per chunk and return the results in chunk order"""
        tasks = [self._in_executor(func, *args, start, stop) for start, stop in bounds]
        return list(await asyncio.gather(*tasks))

    async def _run(self, operation: str, body: Callable[[], Awaitable[OperationResult]]) -> OperationResult:
        """Time an operation and convert toolkit errors into results"""
        with self.monitor.track_operation(operation) as state:
            try:
                result = await body()
            except PrecisionExhausted as e:
                logger.warning("%s: %s", operation, e.message)
                result = OperationResult(success=False, message=e.message, error_code=e.error_code)
            except HurwitzToolkitError as e:
                result = OperationResult(success=False, message=e.message, error_code=e.error_code)
            except Exception as e:
                logger.exception("%s failed unexpectedly", operation)
                result = OperationResult(success=False, message=f"{operation} failed: {str(e)}",
                                         error_code="INTERNAL_ERROR")
            state['success'] = result.success
        return result

    @staticmethod
    def _checked(report: Report, passed: bool, message: str) -> OperationResult:
        if passed:
            return OperationResult(success=True, message=message, data={"report": report})
        return OperationResult(success=False, message=f"{message}: checks failed",
                               data={"report": report}, error_code="CHECK_FAILED")

    # Expansion Operations

    async def expand(self, x: str, algo: str = "hurwitz", n_terms: Optional[int] = None,
                     negative: bool = False) -> OperationResult:
        async def body() -> OperationResult:
            if algo not in ("classical", "hurwitz"):
                raise InvalidParameter(f"unknown algorithm {algo}")
            if negative and algo == "classical":
                raise InvalidParameter("--negative applies to the Hurwitz expansion only")
            value = self._parse(x)
            count = n_terms or self.settings.default_terms
            kind = ExpansionKind.CLASSICAL if algo == "classical" else ExpansionKind.HURWITZ_POSITIVE
            expansion = self.cache_manager.get_expansion(format_exact(value), kind, value)
            seq = await self._in_executor(expansion.prefix, count)
            if negative:
                seq = to_negative(seq)
                convs = negative_convergents(seq, len(seq) - 1)
            else:
                convs = convergents(seq, len(seq) - 1)
            return OperationResult(
                success=True,
                message=f"{len(seq)} {seq.kind.value} terms",
                data={"report": expansion_report(seq, convs), "terms": seq}
            )
        return await self._run("expand", body)

    async def transform(self, x: Optional[str] = None, b_terms: Optional[Sequence[int]] = None,
                        n_terms: Optional[int] = None) -> OperationResult:
        async def body() -> OperationResult:
            if (x is None) == (b_terms is None):
                raise InvalidParameter("give exactly one of x or b_terms")
            if x is not None:
                value = self._parse(x)
                expansion = self.cache_manager.get_expansion(format_exact(value),
                                                             ExpansionKind.CLASSICAL, value)
                source = await self._in_executor(expansion.prefix, n_terms or self.settings.default_terms)
                result = classical_to_hurwitz(source)
            else:
                result = classical_to_hurwitz(list(b_terms), finite=True)
            return OperationResult(
                success=True,
                message=f"{len(result.hurwitz)} Hurwitz terms, omitted {list(result.trace.omitted)}",
                data={"report": transform_report(result), "result": result}
            )
        return await self._run("transform", body)

    # Verification Operations

    async def verify(self, prop: str, **params: Any) -> OperationResult:
        """
        Run one verification property.

        Args:
            prop: Registered property name
            **params: x (literal), terms (comma list), n, rho, delta (literal)
        """
        async def body() -> OperationResult:
            value = self._parse(params["x"]) if params.get("x") else None
            terms = parse_terms(params["terms"]) if params.get("terms") else None
            deltas = [parse_rational(params["delta"])] if params.get("delta") else None
            report = await self._verify_one(prop, value, terms, params.get("n"),
                                            params.get("rho"), deltas)
            return self._checked(verification_report([report]), report.passed,
                                 f"{prop}: {len(report.rows)} checks")
        return await self._run("verify", body)

    async def verify_sample(self, prop: str, count: int, seed: int = 0, n: Optional[int] = None,
                            rho: Optional[int] = None, delta: Optional[str] = None) -> OperationResult:
        """Run a property over seeded random surds, merged in sample order"""
        async def body() -> OperationResult:
            if count < 1:
                raise InvalidParameter(f"sample count must be positive, got {count}")
            deltas = [parse_rational(delta)] if delta else None
            surds = sample_surds(count, seed)
            reports = await asyncio.gather(*(
                self._verify_one(prop, surd, None, n, rho, deltas) for surd in surds
            ))
            passed = all(report.passed for report in reports)
            return self._checked(verification_report(reports), passed,
                                 f"{prop}: {count} samples, seed {seed}")
        return await self._run("verify", body)

    async def _verify_one(self, prop: str, value: Optional[ExactValue], terms: Optional[List[int]],
                          n: Optional[int], rho: Optional[int],
                          deltas: Optional[List[Fraction]]) -> VerificationReport:
        loop = asyncio.get_running_loop()
        start = loop.time()
        report = await self._in_executor(
            lambda: self.verification_manager.run(prop, x=value, terms=terms, n=n, rho=rho, deltas=deltas)
        )
        self.monitor.record_checks(report, loop.time() - start)
        return report

    # Counting Operations

    async def brute_force(self, x: ExactValue, delta: Fraction, rho: int) -> List[ApproxRecord]:
        """Oracle enumeration over q-chunks, one executor task per chunk"""
        delta = check_delta(delta)
        if rho < 1:
            raise InvalidParameter(f"rho must be at least 1, got {rho}")
        chunks = await self._gather_chunks(scan_chunk, chunk_bounds(rho, self.settings.chunk_size),
                                           x, delta)
        return merge_chunks(chunks)

    async def count_xrho(self, x: str, delta: str, rho: int,
                         method: CountMethod = CountMethod.ORACLE,
                         witnesses: bool = False, decimal: bool = False) -> OperationResult:
        async def body() -> OperationResult:
            value = self._parse(x)
            bound = parse_rational(delta)
            if method is CountMethod.CONVERGENT:
                bound = check_delta(bound, HURWITZ_DELTA_MAX)
                expansion = self.cache_manager.get_expansion(format_exact(value),
                                                             ExpansionKind.HURWITZ_POSITIVE, value)
                records = await self._in_executor(convergent_records, value, bound, rho, expansion)
            else:
                records = await self.brute_force(value, bound, rho)
            result = x_rho(value, bound, rho, method, records, *self._log_args)
            return OperationResult(
                success=True,
                message=f"X_rho = {result.count}",
                data={"report": xrho_report(result, format_exact(value), witnesses, decimal),
                      "result": result}
            )
        return await self._run("count_xrho", body)

    async def count_sandwich(self, x: str, delta: str, n: int) -> OperationResult:
        async def body() -> OperationResult:
            value = self._parse(x)
            expansion = self.cache_manager.get_expansion(format_exact(value),
                                                         ExpansionKind.HURWITZ_POSITIVE, value)
            report = await self._in_executor(sandwich, value, parse_rational(delta), n, expansion,
                                             *self._log_args)
            counts = (report.count_lower, report.count_mid, report.count_upper)
            result = self._checked(sandwich_report(report, format_exact(value)), report.passed,
                                   f"sandwich counts {counts}")
            result.data["result"] = report
            return result
        return await self._run("count_sandwich", body)

    async def count_cd(self, x: str, delta: str, n: int,
                       thresholds: Optional[Sequence[str]] = None) -> OperationResult:
        async def body() -> OperationResult:
            value = self._parse(x)
            expansion = self.cache_manager.get_expansion(format_exact(value),
                                                         ExpansionKind.HURWITZ_POSITIVE, value)
            extra = [parse_rational(t) for t in thresholds or ()]
            quantities = await self._in_executor(cd_quantities, value, parse_rational(delta), n, extra,
                                                 expansion, *self._log_args)
            return OperationResult(
                success=True,
                message=f"finite-index proxies at n={n}",
                data={"report": cd_report(quantities, format_exact(value)), "result": quantities}
            )
        return await self._run("count_cd", body)

    async def count_gform(self, a: str, b: str, c: str, d: str, delta: str, kappa: str,
                          rho: int, witnesses: bool = False, linkage: bool = False) -> OperationResult:
        async def body() -> OperationResult:
            params = make_cd_params(self._parse(a), self._parse(b), self._parse(c), self._parse(d),
                                    parse_rational(delta), parse_rational(kappa))
            if rho < 1:
                raise InvalidParameter(f"rho must be at least 1, got {rho}")
            chunks = await self._gather_chunks(g_scan_chunk,
                                               g_chunk_bounds(rho, self.settings.chunk_size),
                                               params, rho)
            found: List[GWitness] = [w for chunk in chunks for w in chunk]
            result = GCount(rho, len(found), tuple(found))
            ratios = await self._in_executor(ratio_check, params, result.witnesses)
            rows: Sequence[Any] = ()
            if linkage:
                rows = await self._in_executor(g_linkage, params, LINKAGE_RHOS, self.settings.chunk_size)
            labels = {name: format_exact(getattr(params, name))
                      for name in ("a", "b", "c", "d", "delta", "kappa")}
            report = gcount_report(result, labels, ratios, witnesses, rows)
            outcome = self._checked(report, ratios.passed, f"G(rho) = {result.count}")
            outcome.data["result"] = result
            outcome.data["ratios"] = ratios
            return outcome
        return await self._run("count_gform", body)

    async def constant_check(self) -> OperationResult:
        async def body() -> OperationResult:
            check = await self._in_executor(constant_check, *self._log_args)
            result = self._checked(constant_report(check), check.passed, "log 2 - (2 - phi) gap")
            result.data["result"] = check
            return result
        return await self._run("constant_check", body)

    def get_performance_summary(self) -> Dict[str, Any]:
        summary = self.monitor.get_performance_summary()
        summary['cache'] = self.cache_manager.get_cache_stats()
        return summary
