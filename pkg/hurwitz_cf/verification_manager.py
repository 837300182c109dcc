"""
Hurwitz CF Toolkit - Verification Management

This module registers the verification properties that can be run from the
command line. Each property evaluates exact checks for one input and returns a
VerificationReport of CheckRows; a failed check is a row with ``passed=False``,
never an exception.
"""

import logging
import random
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .cf_engine import (
    LazyExpansion, evaluate_prefix, hurwitz_expand, iter_convergents, negative_convergents,
    reconstruct, to_negative, validate_hurwitz
)
from .cf_transform import classical_to_hurwitz, omitted_indices
from .config_manager import ToolkitSettings
from .counting import (
    brute_force_approx, constant_check, convergent_records, sandwich, sandwich_steps
)
from .diophantine import (
    classical_growth_check, classical_lagrange_bounds, error_sign, growth_bounds, lagrange_bounds
)
from .errors import InvalidParameter, UnknownProperty
from .exact_reals import (
    ExactValue, QuadSurd, absolute, compare, format_enclosure, format_exact, squarefree_decompose
)
from .interface import VerificationManagerInterface
from .types import (
    CheckRow, ExpansionKind, HURWITZ_DELTA_MAX, Ordering, PROPERTY_NAMES, VerificationReport
)

logger = logging.getLogger(__name__)

DEFAULT_DELTAS = (Fraction(1, 10), Fraction(1, 4), Fraction(1, 3))


def _pair(p: int, q: int) -> str:
    return f"({p},{q})"


def sample_surds(count: int, seed: int) -> List[QuadSurd]:
    """Seeded pseudorandom irrational surds (a + b*sqrt(d))/c"""
    rng = random.Random(seed)
    surds: List[QuadSurd] = []
    while len(surds) < count:
        d = rng.randint(2, 150)
        if squarefree_decompose(d)[1] == 1:
            continue
        b = rng.choice((-1, 1)) * rng.randint(1, 9)
        value = QuadSurd.create(rng.randint(-30, 30), b, rng.randint(1, 20), d)
        if isinstance(value, QuadSurd):
            surds.append(value)
    return surds


class VerificationManager(VerificationManagerInterface):
    """
    Registry of verification properties

    Maps property names to check suites and the inputs each suite needs.
    """

    def __init__(self, settings: Optional[ToolkitSettings] = None):
        """
        Initialize verification manager

        Args:
            settings: Toolkit settings (precision cap, log width, default terms)
        """
        self.settings = settings or ToolkitSettings()
        self.property_suites = self._initialize_property_suites()

    def _initialize_property_suites(self) -> Dict[str, Callable[..., List[CheckRow]]]:
        return {
            "theorem1": self._theorem1,
            "prop1": self._prop1,
            "prop2": self._prop2,
            "prop3": self._prop3,
            "prop4": self._prop4,
            "prop5": self._prop5,
            "theorem2-sandwich": self._theorem2_sandwich,
            "constant": self._constant,
        }

    def available_properties(self) -> List[str]:
        return list(PROPERTY_NAMES)

    def run(self, prop: str, x: Optional[ExactValue] = None, terms: Optional[Sequence[int]] = None,
            n: Optional[int] = None, rho: Optional[int] = None,
            deltas: Optional[Sequence[Fraction]] = None) -> VerificationReport:
        suite = self.property_suites.get(prop)
        if suite is None:
            raise UnknownProperty(f"unknown property {prop}; choose from {', '.join(PROPERTY_NAMES)}")
        if x is not None:
            subject = format_exact(x)
        elif terms is not None:
            subject = ",".join(str(t) for t in terms)
        else:
            subject = ""
        rows = suite(x=x, terms=list(terms) if terms is not None else None,
                     n=n if n is not None else self.settings.default_terms,
                     rho=rho, deltas=tuple(deltas) if deltas else DEFAULT_DELTAS)
        report = VerificationReport(prop, subject, rows)
        logger.debug("%s on %s: %d rows, passed=%s", prop, subject, len(rows), report.passed)
        return report

    @staticmethod
    def _require_x(x: Optional[ExactValue], prop: str) -> ExactValue:
        if x is None:
            raise InvalidParameter(f"{prop} needs --x")
        return x

    @staticmethod
    def _reachable(expansion: LazyExpansion, n: int, extra: int) -> int:
        """Largest index <= n with ``extra`` further terms available, -1 if none"""
        return min(n, expansion.extend_to(n + extra) - extra)

    @property
    def _log_args(self) -> Tuple[int, int]:
        return self.settings.log_width_bits, self.settings.precision_bits

    # Validity and reconstruction

    def _prop1(self, x, terms, n, **_: Any) -> List[CheckRow]:
        if terms is None:
            terms = list(hurwitz_expand(self._require_x(x, "prop1"), n).terms)
        report = validate_hurwitz(terms)
        rows = [CheckRow(
            "validity", report.valid, report.index,
            terms[report.index] if report.index is not None else None, None,
            report.reason.value if report.reason else "valid", ",".join(map(str, terms))
        )]
        if not report.valid:
            return rows
        width = Fraction(1, 4 ** (len(terms) - 1))
        enclosure = reconstruct(terms, width)
        expected = terms + [-3 if terms[-1] < 0 else 3]
        replay = list(hurwitz_expand(enclosure.witness, len(expected)).terms)
        rows.append(CheckRow("round-trip", replay == expected, len(terms) - 1, terms[-1], None,
                             ",".join(map(str, replay)), ",".join(map(str, expected))))
        if x is not None:
            inside = (compare(enclosure.lo, x) is not Ordering.GREATER
                      and compare(x, enclosure.hi) is not Ordering.GREATER)
            rows.append(CheckRow("enclosure", inside, 0, terms[0], None, format_exact(x),
                                 f"[{format_exact(enclosure.lo)},{format_exact(enclosure.hi)}]"))
        return rows

    # Componentwise evaluation

    def _prop2(self, x, terms, n, **_: Any) -> List[CheckRow]:
        rows: List[CheckRow] = []
        if terms is not None:
            sequences = [("given", terms)]
        else:
            x = self._require_x(x, "prop2")
            sequences = [
                ("hurwitz", list(hurwitz_expand(x, n).terms)),
                ("classical", list(LazyExpansion(x, ExpansionKind.CLASSICAL).prefix(n).terms)),
            ]
        for name, seq in sequences:
            for convergent in iter_convergents(seq):
                folded = evaluate_prefix(seq, convergent.index + 1)
                same = (folded.p, folded.q) == (convergent.p, convergent.q)
                rows.append(CheckRow(f"componentwise-{name}", same, convergent.index,
                                     seq[convergent.index], convergent.q,
                                     _pair(folded.p, folded.q), _pair(convergent.p, convergent.q)))
        if terms is None:
            positive = hurwitz_expand(x, n)
            negative = to_negative(positive)
            for plus, minus in zip(iter_convergents(positive.terms),
                                   negative_convergents(negative, len(negative) - 1)):
                rows.append(CheckRow("negative-form", plus.value == minus.value, plus.index,
                                     negative.terms[plus.index], minus.q,
                                     format_exact(minus.value), format_exact(plus.value)))
        return rows

    # Inequalities

    def _prop3(self, x, n, **_: Any) -> List[CheckRow]:
        x = self._require_x(x, "prop3")
        expansion = LazyExpansion(x)
        rows = []
        for index in range(self._reachable(expansion, n - 1, 2) + 1):
            check = error_sign(x, index, expansion)
            rows.append(CheckRow("error-sign", check.passed, index, expansion.term(index + 1), None,
                                 str(check.sign), str(check.predicted)))
        return rows

    def _prop4(self, x, n, **_: Any) -> List[CheckRow]:
        x = self._require_x(x, "prop4")
        expansion = LazyExpansion(x)
        last = self._reachable(expansion, n, 1)
        rows = []
        if last >= 1:
            rows = [row for witness in growth_bounds(x, last, expansion) for row in witness.rows]
        if isinstance(x, QuadSurd):
            rows.extend(CheckRow(f"classical-{row.check_name}", row.passed, row.n, row.a_n,
                                 row.q_n, row.lhs, row.rhs)
                        for row in classical_growth_check(x, n))
        return rows

    def _prop5(self, x, n, **_: Any) -> List[CheckRow]:
        x = self._require_x(x, "prop5")
        hurwitz = LazyExpansion(x)
        classical = LazyExpansion(x, ExpansionKind.CLASSICAL)
        rows = []
        for index in range(1, self._reachable(hurwitz, n, 1) + 1):
            bounds = lagrange_bounds(x, index, hurwitz)
            rows.append(CheckRow("lagrange-lower", compare(bounds.lower, bounds.actual) is Ordering.LESS,
                                 index, bounds.a_n, bounds.q,
                                 format_exact(bounds.lower), format_exact(bounds.actual)))
            rows.append(CheckRow("lagrange-upper", compare(bounds.actual, bounds.upper) is Ordering.LESS,
                                 index, bounds.a_n, bounds.q,
                                 format_exact(bounds.actual), format_exact(bounds.upper)))
        if isinstance(x, QuadSurd):
            for index in range(1, n + 1):
                bounds = classical_lagrange_bounds(x, index, classical)
                rows.append(CheckRow("classical-lagrange", bounds.passed, index, bounds.a_n, bounds.q,
                                     format_exact(bounds.actual),
                                     f"({format_exact(bounds.lower)},{format_exact(bounds.upper)})"))
        return rows

    # Convergent subsequence, omitted convergents and coverage

    def _theorem1(self, x, n, rho, **_: Any) -> List[CheckRow]:
        x = self._require_x(x, "theorem1")
        hurwitz_terms = hurwitz_expand(x, n)
        classical = LazyExpansion(x, ExpansionKind.CLASSICAL).prefix(4 * n)
        rows: List[CheckRow] = []

        result = classical_to_hurwitz(classical)
        transformed = result.hurwitz.terms
        span = min(len(transformed), len(hurwitz_terms))
        rows.append(CheckRow("transform-commutes", transformed[:span] == hurwitz_terms.terms[:span]
                             and (span == len(hurwitz_terms) or classical.finite),
                             span - 1, None, None,
                             ",".join(map(str, transformed[:span])),
                             ",".join(map(str, hurwitz_terms.terms[:span]))))

        classical_convs = list(iter_convergents(classical.terms))
        classical_values = [c.value for c in classical_convs]
        position = 0
        matched: List[int] = []
        for convergent in iter_convergents(hurwitz_terms.terms):
            value = convergent.value
            while position < len(classical_values) and classical_values[position] != value:
                position += 1
            found = position < len(classical_values)
            rows.append(CheckRow("subsequence", found, convergent.index, hurwitz_terms[convergent.index],
                                 convergent.q, format_exact(value),
                                 str(position) if found else "missing"))
            if found:
                matched.append(position)
                position += 1
        if not matched:
            return rows

        last = matched[-1]
        omitted = sorted(set(range(last)) - set(matched))
        consecutive = [m for m in omitted if m + 1 in omitted]
        rows.append(CheckRow("omitted-gaps", not consecutive, last, None, None,
                             ",".join(map(str, omitted)), "no two consecutive"))
        trace_omitted = sorted(m for m in omitted_indices(result.trace) if m < last)
        rows.append(CheckRow("omitted-set", trace_omitted == omitted, last, None, None,
                             ",".join(map(str, trace_omitted)), ",".join(map(str, omitted))))
        for m in omitted:
            conv, following = classical_convs[m], classical_convs[m + 1]
            error = absolute(x - conv.value)
            third = Fraction(1, 3 * conv.q * conv.q)
            sharp = Fraction(1, conv.q * (following.q + conv.q))
            rows.append(CheckRow("omitted-quality", compare(error, third) is Ordering.GREATER, m,
                                 classical.terms[m], conv.q, format_exact(error), format_exact(third)))
            rows.append(CheckRow("omitted-sharp", compare(error, sharp) is Ordering.GREATER, m,
                                 classical.terms[m], conv.q, format_exact(error), format_exact(sharp)))

        if rho is not None:
            rows.extend(self._coverage_rows(x, rho))
        return rows

    def _coverage_rows(self, x: ExactValue, rho: int) -> List[CheckRow]:
        rows: List[CheckRow] = []
        oracle = brute_force_approx(x, HURWITZ_DELTA_MAX, rho, self.settings.chunk_size)
        walked = convergent_records(x, HURWITZ_DELTA_MAX, rho)
        denominators = set()
        for convergent in iter_convergents(LazyExpansion(x)):
            p, q = convergent.normalized()
            if q > rho:
                break
            denominators.add((p, q))
        for record in oracle:
            rows.append(CheckRow("coverage", (record.p, record.q) in denominators, None, None,
                                 record.q, _pair(record.p, record.q), format_exact(record.quality)))
        rows.append(CheckRow("oracle-agreement",
                             [(r.p, r.q) for r in oracle] == [(r.p, r.q) for r in walked],
                             None, None, None, str(len(oracle)), str(len(walked))))

        classical_pairs = set()
        for convergent in iter_convergents(LazyExpansion(x, ExpansionKind.CLASSICAL)):
            if convergent.q > rho:
                break
            classical_pairs.add((convergent.p, convergent.q))
        for record in brute_force_approx(x, Fraction(1, 2), rho, self.settings.chunk_size):
            if compare(record.quality, Fraction(1, 2)) is Ordering.LESS:
                rows.append(CheckRow("legendre", (record.p, record.q) in classical_pairs, None, None,
                                     record.q, _pair(record.p, record.q), format_exact(record.quality)))
        return rows

    # Counting sandwich

    def _theorem2_sandwich(self, x, n, rho, deltas, **_: Any) -> List[CheckRow]:
        x = self._require_x(x, "theorem2-sandwich")
        expansion = LazyExpansion(x)
        n = self._reachable(expansion, n, 2)
        rows: List[CheckRow] = []
        for delta in deltas:
            label = format_exact(delta)
            if n >= 1:
                rows.extend(self._sandwich_rows(x, delta, n, expansion, label))
            if rho is not None:
                oracle = brute_force_approx(x, delta, rho, self.settings.chunk_size)
                walked = convergent_records(x, delta, rho, expansion)
                rows.append(CheckRow(f"xrho-agreement@{label}", len(oracle) == len(walked), None, None,
                                     None, str(len(oracle)), str(len(walked))))
                qs = [record.q for record in oracle]
                rows.append(CheckRow(f"step-structure@{label}", len(qs) == len(set(qs)), None, None,
                                     None, str(len(qs)), str(len(set(qs)))))
        return rows

    def _sandwich_rows(self, x: ExactValue, delta: Fraction, n: int, expansion: LazyExpansion,
                       label: str) -> List[CheckRow]:
        rows: List[CheckRow] = []
        for step in sandwich_steps(x, delta, n, expansion):
            rows.append(CheckRow(f"counts@{label}", step.counts_ok, step.n, None, None,
                                 f"{step.count_lower}<={step.count_mid}",
                                 f"{step.count_mid}<={step.count_upper}"))
            rows.append(CheckRow(f"products@{label}", step.product_ok, step.n, None, None,
                                 "lower<=|q_n|", "|q_n|<=upper"))
        report = sandwich(x, delta, n, expansion, *self._log_args)
        rows.append(CheckRow(f"log-sandwich@{label}", report.log_ok, n, None, report.q_n,
                             format_enclosure(report.logsum_lower),
                             format_enclosure(report.logsum_upper)))
        return rows

    def _constant(self, **_: Any) -> List[CheckRow]:
        check = constant_check(*self._log_args)
        return [CheckRow("log2-gap", check.passed, None, None, None,
                         format_enclosure(check.lhs), format_enclosure(check.rhs))]
