"""
Hurwitz CF Toolkit - Diophantine Verifiers

This module checks, in exact quadratic-field arithmetic, the inequalities that
govern Hurwitz convergents: the sign of the approximation error, the growth of
denominators, and two-sided bounds on |x - p/q|. Classical counterparts are
provided as a comparison baseline.
"""

import logging
from fractions import Fraction
from typing import List, Optional

from .cf_engine import LazyExpansion, iter_convergents
from .errors import InsufficientTerms, InvalidParameter
from .exact_reals import (
    ExactValue, QuadSurd, absolute, compare, format_exact, sign
)
from .types import (
    CheckRow, Convergent, ErrorSignCheck, ExpansionKind, GrowthWitness, LagrangeBounds, Ordering
)

logger = logging.getLogger(__name__)

PHI = QuadSurd(1, 1, 2, 5)
TWO_MINUS_PHI = 2 - PHI
PHI_MINUS_ONE = PHI - 1
PHI_MINUS_HALF = PHI - Fraction(1, 2)
FIVE_HALVES_MINUS_PHI = Fraction(5, 2) - PHI


def _less(a, b) -> bool:
    return compare(a, b) is Ordering.LESS


def hurwitz_data(x: ExactValue, terms_needed: int,
                 expansion: Optional[LazyExpansion] = None) -> LazyExpansion:
    """Hurwitz expansion of x with at least ``terms_needed`` terms available"""
    if expansion is None:
        expansion = LazyExpansion(x, ExpansionKind.HURWITZ_POSITIVE)
    available = expansion.extend_to(terms_needed)
    if available < terms_needed:
        raise InsufficientTerms(
            f"{format_exact(x)} has {available} Hurwitz terms, {terms_needed} needed"
        )
    return expansion


def _convergents(expansion: LazyExpansion, last_index: int) -> List[Convergent]:
    return list(iter_convergents(expansion.prefix(last_index + 1).terms))


def error_sign(x: ExactValue, n: int, expansion: Optional[LazyExpansion] = None) -> ErrorSignCheck:
    """sign(p_n/q_n - x) against (-1)**(n+1) * sign(a_(n+1))"""
    if n < 0:
        raise InvalidParameter(f"index must be non-negative, got {n}")
    expansion = hurwitz_data(x, n + 2, expansion)
    convergent = _convergents(expansion, n)[-1]
    observed = sign(convergent.value - x)
    a_next = expansion.term(n + 1)
    predicted = (-1) ** (n + 1) * ((a_next > 0) - (a_next < 0))
    if observed != predicted:
        logger.warning("error sign law fails for %s at n=%d", format_exact(x), n)
    return ErrorSignCheck(n, observed, predicted)


def growth_bounds(x: ExactValue, n_max: int,
                  expansion: Optional[LazyExpansion] = None) -> List[GrowthWitness]:
    """
    Denominator growth for 1 <= n <= n_max.

    Each witness carries rows for
    (|a_n| - (2 - phi))|q_(n-1)| < |q_n| < (|a_n| + (phi - 1))|q_(n-1)|,
    |q_n| > phi |q_(n-1)|, the window -(2 - phi) < y_(n-1) sgn(a_n) < phi - 1
    and the facts |y_n| < 1, sgn(y_n) = sgn(a_n) for y_n = q_(n-1)/q_n.
    """
    if n_max < 1:
        raise InvalidParameter(f"n_max must be at least 1, got {n_max}")
    expansion = hurwitz_data(x, n_max + 1, expansion)
    convs = _convergents(expansion, n_max)
    witnesses: List[GrowthWitness] = []
    y_prev = Fraction(0)
    for n in range(1, n_max + 1):
        a_n = expansion.term(n)
        q_prev, q_cur = convs[n - 1].q, convs[n].q
        size_prev, size_cur = abs(q_prev), abs(q_cur)
        a_sign = (a_n > 0) - (a_n < 0)
        y_n = Fraction(q_prev, q_cur)
        lower = (abs(a_n) - TWO_MINUS_PHI) * size_prev
        upper = (abs(a_n) + PHI_MINUS_ONE) * size_prev
        expanding = PHI * size_prev
        window = y_prev * a_sign

        def row(name: str, passed: bool, lhs, rhs) -> CheckRow:
            return CheckRow(name, passed, n, a_n, q_cur, format_exact(lhs), format_exact(rhs))

        rows = (
            row("qn-lower", _less(lower, size_cur), lower, size_cur),
            row("qn-upper", _less(size_cur, upper), size_cur, upper),
            row("expanding", _less(expanding, size_cur), expanding, size_cur),
            row("window-lower", _less(-TWO_MINUS_PHI, window), -TWO_MINUS_PHI, window),
            row("window-upper", _less(window, PHI_MINUS_ONE), window, PHI_MINUS_ONE),
            row("y-bounded", abs(y_n) < 1, abs(y_n), Fraction(1)),
            row("y-sign", (y_n > 0) - (y_n < 0) == a_sign, y_n, Fraction(a_sign)),
        )
        witness = GrowthWitness(n, q_prev, q_cur, a_n, y_prev, y_n, rows)
        if not witness.passed:
            logger.warning("growth bounds fail for %s at n=%d", format_exact(x), n)
        witnesses.append(witness)
        y_prev = y_n
    return witnesses


def lagrange_bounds(x: ExactValue, n: int,
                    expansion: Optional[LazyExpansion] = None) -> LagrangeBounds:
    """
    1/((|a_n| + phi - 1/2) q^2) < |x - p/q| < 1/((|a_n| - (5/2 - phi)) q^2)

    for the convergent p/q of index n - 1.
    """
    if n < 1:
        raise InvalidParameter("Lagrange bounds are indexed from n = 1")
    expansion = hurwitz_data(x, n + 1, expansion)
    convergent = _convergents(expansion, n - 1)[-1]
    a_n = expansion.term(n)
    q_squared = convergent.q * convergent.q
    actual = absolute(x - convergent.value)
    lower = 1 / ((abs(a_n) + PHI_MINUS_HALF) * q_squared)
    upper = 1 / ((abs(a_n) - FIVE_HALVES_MINUS_PHI) * q_squared)
    passed = _less(lower, actual) and _less(actual, upper)
    return LagrangeBounds(n, a_n, convergent.p, convergent.q, lower, upper, actual, passed)


def classical_lagrange_bounds(x: ExactValue, n: int,
                              expansion: Optional[LazyExpansion] = None) -> LagrangeBounds:
    """1/((b_n + 2) q^2) < |x - p/q| < 1/(b_n q^2) for the classical convergent of index n - 1"""
    if n < 1:
        raise InvalidParameter("Lagrange bounds are indexed from n = 1")
    if expansion is None:
        expansion = LazyExpansion(x, ExpansionKind.CLASSICAL)
    if expansion.extend_to(n + 1) < n + 1:
        raise InsufficientTerms(f"classical expansion of {format_exact(x)} ends before index {n}")
    convergent = list(iter_convergents(expansion.prefix(n).terms))[-1]
    b_n = expansion.term(n)
    q_squared = convergent.q * convergent.q
    actual = absolute(x - convergent.value)
    lower = Fraction(1, (b_n + 2) * q_squared)
    upper = Fraction(1, b_n * q_squared)
    passed = _less(lower, actual) and _less(actual, upper)
    return LagrangeBounds(n, b_n, convergent.p, convergent.q, lower, upper, actual, passed)


def fibonacci(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def classical_growth_check(x: ExactValue, n_max: int, span: int = 2,
                           expansion: Optional[LazyExpansion] = None) -> List[CheckRow]:
    """q_(n+k) >= F_(k+1) q_n for classical denominators, 1 <= k <= span"""
    if expansion is None:
        expansion = LazyExpansion(x, ExpansionKind.CLASSICAL)
    available = expansion.extend_to(n_max + span + 1)
    qs = [c.q for c in iter_convergents(expansion.prefix(available).terms)]
    rows = []
    for n in range(min(n_max, len(qs) - 1) + 1):
        for k in range(1, span + 1):
            if n + k >= len(qs):
                break
            bound = fibonacci(k + 1) * qs[n]
            rows.append(CheckRow(f"fibonacci-{k}", qs[n + k] >= bound, n + k,
                                 expansion.term(n + k), qs[n + k],
                                 str(qs[n + k]), str(bound)))
    return rows
