"""
Hurwitz CF Toolkit - Approximation Counting

This module counts good rational approximations:

- the brute-force oracle over denominators 1..rho
- X_rho, the number of primitive (p, q) with 0 < q <= rho and |q(qx - p)| <= delta,
  by the oracle or by walking Hurwitz convergents
- the finite-index sandwich that bounds that count by partial quotient sizes
- finite-index proxies of the large-quotient densities and averages
- G(rho) for the product form Q(p, q) = (aq + bp)(cq + dp)

Counts and sandwich decisions are exact; logarithms are certified enclosures.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cf_engine import LazyExpansion, iter_convergents
from .diophantine import (
    FIVE_HALVES_MINUS_PHI, PHI_MINUS_HALF, PHI_MINUS_ONE, TWO_MINUS_PHI, hurwitz_data
)
from .errors import DeltaOutOfRange, DivisionByZero, InvalidParameter
from .exact_reals import (
    DEFAULT_LOG_WIDTH_BITS, DEFAULT_PRECISION_CAP, ExactValue, QuadSurd, absolute,
    common_field, compare, floor, format_exact, log_enclosure, nearest_int, sign, surd_enclosure
)
from .types import (
    ApproxRecord, CDParams, CDQuantities, ConstantCheck, CountMethod, DELTA_CAP, Enclosure,
    ExpansionKind, GCount, GRatio, GWitness, HURWITZ_DELTA_MAX, LinkageRow, Ordering, RatioCheck,
    SandwichReport, SandwichStep, XRhoResult
)

logger = logging.getLogger(__name__)

# M_n uses max(log(9/5)/4, alpha/8)
NINE_FIFTHS = Fraction(9, 5)


def _at_most(a, b) -> bool:
    return compare(a, b) is not Ordering.GREATER


def _at_least(a, b) -> bool:
    return compare(a, b) is not Ordering.LESS


def quality(x: ExactValue, p: int, q: int) -> ExactValue:
    """|q(qx - p)|"""
    return absolute(q * (q * x - p))


def check_delta(delta, upper: Optional[Fraction] = None) -> Fraction:
    delta = Fraction(delta)
    if delta <= 0:
        raise DeltaOutOfRange(f"delta must be positive, got {format_exact(delta)}")
    if upper is not None and delta > upper:
        raise DeltaOutOfRange(f"delta {format_exact(delta)} exceeds {format_exact(upper)}")
    return delta


def scan_chunk(x: ExactValue, delta: Fraction, q_start: int, q_stop: int) -> List[ApproxRecord]:
    """Oracle records for q_start <= q < q_stop"""
    records: List[ApproxRecord] = []
    for q in range(q_start, q_stop):
        qx = q * x
        if delta <= Fraction(1, 2):
            candidate = nearest_int(qx)
            candidates = [candidate]
            if isinstance(qx, Fraction) and qx - candidate == Fraction(1, 2):
                candidates.append(candidate + 1)
        else:
            radius = delta / q
            candidates = range(-floor(radius - qx), floor(qx + radius) + 1)
        for p in candidates:
            if math.gcd(p, q) != 1:
                continue
            value = quality(x, p, q)
            if _at_most(value, delta):
                records.append(ApproxRecord(p, q, value))
    return records


def chunk_bounds(rho: int, chunk_size: int) -> List[Tuple[int, int]]:
    """Deterministic partition of 1..rho into half-open q ranges"""
    if chunk_size < 1:
        raise InvalidParameter(f"chunk size must be positive, got {chunk_size}")
    return [(start, min(start + chunk_size, rho + 1)) for start in range(1, rho + 1, chunk_size)]


def merge_chunks(chunks: Iterable[Sequence[ApproxRecord]]) -> List[ApproxRecord]:
    merged = [record for chunk in chunks for record in chunk]
    merged.sort(key=lambda record: (record.q, record.p))
    return merged


def brute_force_approx(x: ExactValue, delta, rho: int, chunk_size: int = 1000) -> List[ApproxRecord]:
    """
    Every primitive (p, q) with 0 < q <= rho and |q(qx - p)| <= delta, sorted by q.

    For delta <= 1/2 only the nearest integer to qx can qualify (both neighbours
    on an exact tie); otherwise every p with |qx - p| <= delta/q is tested.
    """
    delta = check_delta(delta)
    if rho < 1:
        raise InvalidParameter(f"rho must be at least 1, got {rho}")
    return merge_chunks(scan_chunk(x, delta, start, stop) for start, stop in chunk_bounds(rho, chunk_size))


def convergent_records(x: ExactValue, delta, rho: int,
                       expansion: Optional[LazyExpansion] = None) -> List[ApproxRecord]:
    """Hurwitz convergents with |q_n| <= rho whose quality is at most delta"""
    delta = check_delta(delta, HURWITZ_DELTA_MAX)
    if expansion is None:
        expansion = LazyExpansion(x, ExpansionKind.HURWITZ_POSITIVE)
    records: List[ApproxRecord] = []
    for convergent in iter_convergents(expansion):
        p, q = convergent.normalized()
        if q > rho:
            break
        value = quality(x, p, q)
        if _at_most(value, delta):
            records.append(ApproxRecord(p, q, value, "convergent", convergent.index))
    return records


def x_rho(x: ExactValue, delta, rho: int, method: CountMethod = CountMethod.ORACLE,
          records: Optional[List[ApproxRecord]] = None,
          width_bits: int = DEFAULT_LOG_WIDTH_BITS, cap_bits: int = DEFAULT_PRECISION_CAP) -> XRhoResult:
    """Count of good approximants up to rho and the ratio count / log(rho)"""
    if method is CountMethod.CONVERGENT:
        delta = check_delta(delta, HURWITZ_DELTA_MAX)
    else:
        delta = check_delta(delta)
    if rho < 2:
        raise InvalidParameter(f"rho must be at least 2, got {rho}")
    if records is None:
        if method is CountMethod.CONVERGENT:
            records = convergent_records(x, delta, rho)
        else:
            records = brute_force_approx(x, delta, rho)
    log_rho = log_enclosure(Fraction(rho), width_bits, cap_bits)
    count = len(records)
    value = Enclosure(count / log_rho.hi, count / log_rho.lo)
    return XRhoResult(delta, rho, method, count, tuple(records), log_rho, value)


def _sum_enclosures(enclosures: Iterable[Enclosure]) -> Enclosure:
    total = Enclosure.point(0)
    for enclosure in enclosures:
        total = total + enclosure
    return total


def _product(values: Iterable[ExactValue]) -> ExactValue:
    result: ExactValue = Fraction(1)
    for value in values:
        result = result * value
    return result


def sandwich_steps(x: ExactValue, delta, n: int,
                   expansion: Optional[LazyExpansion] = None) -> List[SandwichStep]:
    """
    Running sandwich counts for every index 1..n.

    For j = 1..m, |a_(j+1)| >= 1/delta + (5/2 - phi) forces quality_j <= delta,
    which in turn forces |a_(j+1)| >= 1/delta - (phi - 1/2). Each step also
    decides prod (|a_j| - (2 - phi)) <= |q_m| <= prod (|a_j| + (phi - 1))
    exactly in Q(sqrt 5).
    """
    delta = check_delta(delta, HURWITZ_DELTA_MAX)
    if n < 1:
        raise InvalidParameter(f"n must be at least 1, got {n}")
    expansion = hurwitz_data(x, n + 2, expansion)
    convs = list(iter_convergents(expansion.prefix(n + 1).terms))
    strong = 1 / delta + FIVE_HALVES_MINUS_PHI
    weak = 1 / delta - PHI_MINUS_HALF
    count_lower = count_mid = count_upper = 0
    product_lower: ExactValue = Fraction(1)
    product_upper: ExactValue = Fraction(1)
    steps: List[SandwichStep] = []
    for j in range(1, n + 1):
        a_next = abs(expansion.term(j + 1))
        p, q = convs[j].normalized()
        count_lower += _at_least(a_next, strong)
        count_mid += _at_most(quality(x, p, q), delta)
        count_upper += _at_least(a_next, weak)
        size = abs(expansion.term(j))
        product_lower = product_lower * (size - TWO_MINUS_PHI)
        product_upper = product_upper * (size + PHI_MINUS_ONE)
        q_j = abs(convs[j].q)
        product_ok = _at_most(product_lower, q_j) and _at_most(q_j, product_upper)
        steps.append(SandwichStep(j, count_lower, count_mid, count_upper, product_ok))
    return steps


def sandwich(x: ExactValue, delta, n: int, expansion: Optional[LazyExpansion] = None,
             width_bits: int = DEFAULT_LOG_WIDTH_BITS,
             cap_bits: int = DEFAULT_PRECISION_CAP) -> SandwichReport:
    """
    Sandwich of the convergent count at index n.

    The count inequalities and the product bounds on |q_n| are exact; the
    logarithms of both products and of |q_n| are reported as certified
    enclosures, and the log check fails only on a certain violation.
    """
    delta = check_delta(delta, HURWITZ_DELTA_MAX)
    expansion = hurwitz_data(x, n + 2, expansion)
    final = sandwich_steps(x, delta, n, expansion)[-1]
    sizes = [abs(expansion.term(j)) for j in range(1, n + 1)]
    low_factors = [size - TWO_MINUS_PHI for size in sizes]
    high_factors = [size + PHI_MINUS_ONE for size in sizes]
    q_n = abs(list(iter_convergents(expansion.prefix(n + 1).terms))[n].q)
    logsum_lower = _sum_enclosures(log_enclosure(f, width_bits, cap_bits) for f in low_factors)
    logsum_upper = _sum_enclosures(log_enclosure(f, width_bits, cap_bits) for f in high_factors)
    log_qn = log_enclosure(Fraction(q_n), width_bits, cap_bits)
    certainly_violated = logsum_lower.lo > log_qn.hi or log_qn.lo > logsum_upper.hi
    log_ok = final.product_ok and not certainly_violated
    if not (final.counts_ok and log_ok):
        logger.warning("sandwich fails for %s at n=%d", format_exact(x), n)
    return SandwichReport(n, delta, final.count_lower, final.count_mid, final.count_upper,
                          final.counts_ok, q_n, _product(low_factors), _product(high_factors),
                          logsum_lower, logsum_upper, log_qn, log_ok)


def _enclosure_min(enclosures: Sequence[Enclosure]) -> Enclosure:
    return Enclosure(min(e.lo for e in enclosures), min(e.hi for e in enclosures))


def _enclosure_max(enclosures: Sequence[Enclosure]) -> Enclosure:
    return Enclosure(max(e.lo for e in enclosures), max(e.hi for e in enclosures))


def cd_quantities(x: ExactValue, delta, n: int, thresholds: Optional[Sequence] = None,
                  expansion: Optional[LazyExpansion] = None,
                  width_bits: int = DEFAULT_LOG_WIDTH_BITS,
                  cap_bits: int = DEFAULT_PRECISION_CAP) -> CDQuantities:
    """
    Finite-index proxies for the averages and densities.

    alpha_m = (1/m) sum_{j<=m} log|a_j| and D_m(A) = (1/m) #{j <= m : |a_(j+1)| >= A}.
    The lower and upper proxies at n are the minimum and maximum over the window
    ceil(n/2) <= m <= n; no limits are extrapolated. The upper average carries the
    1/n factor like the lower one.
    """
    delta = check_delta(delta, DELTA_CAP)
    if n < 1:
        raise InvalidParameter(f"n must be at least 1, got {n}")
    expansion = hurwitz_data(x, n + 2, expansion)
    sizes = [abs(expansion.term(j)) for j in range(1, n + 2)]
    logs = [log_enclosure(Fraction(size), width_bits, cap_bits) for size in sizes[:n]]
    window = range((n + 1) // 2, n + 1)

    running, alphas = Enclosure.point(0), {}
    for m in range(1, n + 1):
        running = running + logs[m - 1]
        alphas[m] = running * Fraction(1, m)
    alpha_minus = _enclosure_min([alphas[m] for m in window])
    alpha_plus = _enclosure_max([alphas[m] for m in window])

    e_threshold = 1 / delta + 1
    f_threshold = 1 / delta - Fraction(3, 2)
    wanted = [e_threshold, f_threshold] + [Fraction(t) for t in (thresholds or ())]

    def density(threshold: Fraction, m: int) -> Fraction:
        return Fraction(sum(1 for size in sizes[1:m + 1] if size >= threshold), m)

    densities: Dict[str, Tuple[Fraction, Fraction]] = {}
    for threshold in wanted:
        values = [density(threshold, m) for m in window]
        densities[format_exact(threshold)] = (min(values), max(values))
    e_n = densities[format_exact(e_threshold)][0]
    f_n = densities[format_exact(f_threshold)][1]

    rate_lower = Enclosure.point(e_n) / (alpha_plus + 3)
    quarter_log = log_enclosure(NINE_FIFTHS, width_bits, cap_bits) * Fraction(1, 4)
    eighth_alpha = alpha_minus * Fraction(1, 8)
    m_n = Enclosure(max(quarter_log.lo, eighth_alpha.lo), max(quarter_log.hi, eighth_alpha.hi))
    rate_upper = Enclosure.point(f_n) / m_n
    return CDQuantities(n, delta, alphas[n], alpha_minus, alpha_plus, densities, e_n, f_n,
                        rate_lower, rate_upper, (window.start, window.stop - 1))


def constant_check(width_bits: int = DEFAULT_LOG_WIDTH_BITS,
                   cap_bits: int = DEFAULT_PRECISION_CAP) -> ConstantCheck:
    """log 2 - (2 - phi) > max(log(9/5)/4, log(2)/8), decided on enclosures"""
    log_two = log_enclosure(Fraction(2), width_bits, cap_bits)
    lhs = log_two - surd_enclosure(TWO_MINUS_PHI, width_bits)
    quarter = log_enclosure(NINE_FIFTHS, width_bits, cap_bits) * Fraction(1, 4)
    eighth = log_two * Fraction(1, 8)
    rhs = Enclosure(max(quarter.lo, eighth.lo), max(quarter.hi, eighth.hi))
    return ConstantCheck(lhs, rhs, lhs.lo > rhs.hi)


# G(rho) for Q(p, q) = (aq + bp)(cq + dp)

def make_cd_params(a: ExactValue, b: ExactValue, c: ExactValue, d: ExactValue,
                   delta, kappa) -> CDParams:
    """Validated product-form parameters"""
    common_field(a, b, c, d)
    if compare(a * d - b * c, Fraction(1)) is not Ordering.EQUAL:
        raise InvalidParameter("ad - bc must equal 1")
    if sign(b) == 0:
        raise InvalidParameter("b must be non-zero")
    if not isinstance(-a / b, QuadSurd):
        raise InvalidParameter("a/b must be irrational")
    delta = check_delta(delta, DELTA_CAP)
    kappa = Fraction(kappa)
    if kappa <= 0:
        raise InvalidParameter(f"kappa must be positive, got {format_exact(kappa)}")
    return CDParams(a, b, c, d, delta, kappa)


def form_value(params: CDParams, p: int, q: int) -> ExactValue:
    return (params.a * q + params.b * p) * (params.c * q + params.d * p)


def g_scan_chunk(params: CDParams, rho: int, q_start: int, q_stop: int) -> List[GWitness]:
    """G(rho) witnesses with q_start <= q < q_stop, using the max-norm box"""
    x = -params.a / params.b
    radius = params.delta / (params.kappa * absolute(params.b))
    witnesses: List[GWitness] = []
    for q in range(q_start, q_stop):
        centre = q * x
        low = max(-rho, floor(centre - radius))
        high = min(rho, floor(centre + radius) + 1)
        for p in range(low, high + 1):
            if math.gcd(p, q) != 1:
                continue
            second = params.c * q + params.d * p
            if compare(second, params.kappa) is not Ordering.GREATER:
                continue
            value = (params.a * q + params.b * p) * second
            if sign(value) != 0 and compare(absolute(value), params.delta) is Ordering.LESS:
                witnesses.append(GWitness(p, q, value))
    return witnesses


def g_chunk_bounds(rho: int, chunk_size: int) -> List[Tuple[int, int]]:
    return [(start, min(start + chunk_size, rho + 1)) for start in range(-rho, rho + 1, chunk_size)]


def g_rho(params: CDParams, rho: int, chunk_size: int = 1000) -> GCount:
    """
    Exact enumeration of G(rho) in the box max(|p|, |q|) <= rho.

    Since cq + dp > kappa and |Q| < delta imply |aq + bp| < delta/kappa, only p
    with |p - qx| < delta/(kappa |b|), x = -a/b, can qualify for each q.
    """
    if rho < 1:
        raise InvalidParameter(f"rho must be at least 1, got {rho}")
    if chunk_size < 1:
        raise InvalidParameter(f"chunk size must be positive, got {chunk_size}")
    witnesses: List[GWitness] = []
    for start, stop in g_chunk_bounds(rho, chunk_size):
        witnesses.extend(g_scan_chunk(params, rho, start, stop))
    return GCount(rho, len(witnesses), tuple(witnesses))


def qpq_ratio(params: CDParams, p: int, q: int) -> ExactValue:
    """|Q(p, q)| / |q(qx - p)| = |q + y(qx - p)| / |q| with x = -a/b, y = bd"""
    x = -params.a / params.b
    y = params.b * params.d
    error = q * x - p
    if q == 0 or sign(error) == 0:
        raise DivisionByZero(f"q(qx - p) vanishes at ({p}, {q})")
    return absolute(q + y * error) / abs(q)


def qpq_direct(params: CDParams, p: int, q: int) -> ExactValue:
    """|Q(p, q)| / |q(qx - p)| from the product form"""
    x = -params.a / params.b
    denominator = quality(x, p, q)
    if sign(denominator) == 0:
        raise DivisionByZero(f"q(qx - p) vanishes at ({p}, {q})")
    return absolute(form_value(params, p, q)) / denominator


# |Q|/|q(qx - p)| tends to 1 along G(rho); checked once |q| reaches RATIO_MIN_Q
RATIO_MIN_Q = 10
RATIO_TOLERANCE = Fraction(1, 10)


def ratio_check(params: CDParams, witnesses: Sequence[GWitness], min_q: int = RATIO_MIN_Q,
                tolerance: Fraction = RATIO_TOLERANCE) -> RatioCheck:
    """
    The ratio at every witness with |ratio - 1| against |y| delta / q^2.

    The bound column is reported only. The check passes when every witness
    with |q| >= min_q has |ratio - 1| < tolerance.
    """
    y = absolute(params.b * params.d)
    rows: List[GRatio] = []
    worst: Optional[ExactValue] = None
    checked, passed = 0, True
    for witness in witnesses:
        ratio = qpq_ratio(params, witness.p, witness.q)
        deviation = absolute(ratio - 1)
        bound = y * Fraction(params.delta, witness.q * witness.q)
        rows.append(GRatio(witness.p, witness.q, ratio, deviation, bound, _at_most(deviation, bound)))
        if abs(witness.q) < min_q:
            continue
        checked += 1
        if worst is None or compare(deviation, worst) is Ordering.GREATER:
            worst = deviation
        passed = passed and compare(deviation, tolerance) is Ordering.LESS
    if not passed:
        logger.warning("|Q|/|q(qx - p)| strays beyond %s for |q| >= %d", format_exact(tolerance), min_q)
    return RatioCheck(tuple(rows), min_q, tolerance, checked, worst, passed)


LINKAGE_RHOS = (100, 1000, 10000)


def g_linkage(params: CDParams, rhos: Sequence[int] = LINKAGE_RHOS,
              chunk_size: int = 1000) -> Tuple[LinkageRow, ...]:
    """#G(rho) and the oracle count of X_rho at x = -a/b, same delta, for each rho"""
    x = -params.a / params.b
    rows = []
    for rho in sorted(rhos):
        g_count = g_rho(params, rho, chunk_size).count
        x_count = len(brute_force_approx(x, params.delta, rho, chunk_size))
        rows.append(LinkageRow(rho, g_count, x_count, g_count - x_count))
    return tuple(rows)
