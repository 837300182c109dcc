"""
Hurwitz CF Toolkit - Continued Fraction Engine

This module generates classical and Hurwitz (nearest-integer) expansions,
validates Hurwitz partial quotient sequences, evaluates convergents both by the
forward recursion and by folding a prefix from the bottom, and rebuilds
certified enclosures of a real from its partial quotients.
"""

import logging
import threading
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Union

from .errors import (
    InsufficientTerms, InvalidParameter, InvalidQuotientSequence, KindMismatch, ZeroDenominator
)
from .exact_reals import ExactValue, floor, is_integral, nearest_int, recip_shift
from .types import (
    Convergent, ExpansionKind, PartialQuotientSeq, ReconstructionEnclosure, ValidityReport,
    ViolationReason
)

logger = logging.getLogger(__name__)

Terms = Union[PartialQuotientSeq, Sequence[int]]


class LazyExpansion:
    """
    Pull-based expansion of a real.

    Terms are produced on demand and every prefix handed out is a prefix of every
    later one. Extension is serialized by an internal lock.
    """

    def __init__(self, x: ExactValue, kind: ExpansionKind = ExpansionKind.HURWITZ_POSITIVE):
        if kind is ExpansionKind.HURWITZ_NEGATIVE:
            raise KindMismatch("negative expansions are derived with to_negative")
        self.x = x
        self.kind = kind
        self._terms: List[int] = []
        self._remainders: List[ExactValue] = [x]
        self._finished = False
        self._lock = threading.Lock()

    @property
    def finite(self) -> bool:
        return self._finished

    def __len__(self) -> int:
        return len(self._terms)

    def _step(self) -> None:
        x_n = self._remainders[-1]
        if self.kind is ExpansionKind.CLASSICAL:
            a_n = floor(x_n)
        else:
            a_n = nearest_int(x_n)
        self._terms.append(a_n)
        if is_integral(x_n):
            self._finished = True
            return
        self._remainders.append(recip_shift(x_n, a_n))

    def extend_to(self, count: int) -> int:
        """Produce terms until ``count`` exist or the expansion ends; returns the count available"""
        with self._lock:
            while len(self._terms) < count and not self._finished:
                self._step()
            return len(self._terms)

    def prefix(self, count: int) -> PartialQuotientSeq:
        if count < 1:
            raise InvalidParameter(f"need at least one term, got {count}")
        available = self.extend_to(count)
        terms = tuple(self._terms[:count])
        return PartialQuotientSeq(self.kind, terms, self._finished and count >= available)

    def term(self, index: int) -> int:
        if self.extend_to(index + 1) <= index:
            raise InsufficientTerms(f"expansion ends before index {index}")
        return self._terms[index]

    def remainder(self, index: int) -> ExactValue:
        """Complete quotient x_index"""
        self.extend_to(index + 1)
        if index >= len(self._remainders):
            raise InsufficientTerms(f"expansion ends before index {index}")
        return self._remainders[index]

    def convergents(self, last_index: int) -> List[Convergent]:
        return convergents(self.prefix(last_index + 1), last_index)

    def __iter__(self) -> Iterator[int]:
        index = 0
        while True:
            if self.extend_to(index + 1) <= index:
                return
            yield self._terms[index]
            index += 1


def classical_expand(x: ExactValue, n_terms: int) -> PartialQuotientSeq:
    """First ``n_terms`` classical partial quotients of x (fewer if x is rational)"""
    return LazyExpansion(x, ExpansionKind.CLASSICAL).prefix(n_terms)


def hurwitz_expand(x: ExactValue, n_terms: int, negative: bool = False) -> PartialQuotientSeq:
    """First ``n_terms`` Hurwitz partial quotients of x, ties rounded down"""
    seq = LazyExpansion(x, ExpansionKind.HURWITZ_POSITIVE).prefix(n_terms)
    return to_negative(seq) if negative else seq


def to_negative(seq: PartialQuotientSeq) -> PartialQuotientSeq:
    if seq.kind is not ExpansionKind.HURWITZ_POSITIVE:
        raise KindMismatch(f"to_negative expects a hurwitz-positive sequence, got {seq.kind.value}")
    terms = tuple(a if n % 2 == 0 else -a for n, a in enumerate(seq.terms))
    return PartialQuotientSeq(ExpansionKind.HURWITZ_NEGATIVE, terms, seq.finite)


def from_negative(seq: PartialQuotientSeq) -> PartialQuotientSeq:
    if seq.kind is not ExpansionKind.HURWITZ_NEGATIVE:
        raise KindMismatch(f"from_negative expects a hurwitz-negative sequence, got {seq.kind.value}")
    terms = tuple(a if n % 2 == 0 else -a for n, a in enumerate(seq.terms))
    return PartialQuotientSeq(ExpansionKind.HURWITZ_POSITIVE, terms, seq.finite)


def _terms_of(seq: Terms) -> Sequence[int]:
    return seq.terms if isinstance(seq, PartialQuotientSeq) else tuple(seq)


def validate_hurwitz(seq: Terms, kind: Optional[ExpansionKind] = None) -> ValidityReport:
    """
    Check the Hurwitz conditions on a finite sequence.

    For n >= 1 every term has |a_n| >= 2, and whenever |a_n| = 2 and a next term
    exists, a_n * a_(n+1) > 0 (positive form) or < 0 (negative form). The first
    violation found scanning upward is reported.
    """
    if kind is None:
        kind = seq.kind if isinstance(seq, PartialQuotientSeq) else ExpansionKind.HURWITZ_POSITIVE
    if kind is ExpansionKind.CLASSICAL:
        raise KindMismatch("classical sequences have no Hurwitz validity conditions")
    terms = _terms_of(seq)
    negative = kind is ExpansionKind.HURWITZ_NEGATIVE
    for n in range(1, len(terms)):
        if abs(terms[n]) < 2:
            return ValidityReport(False, n, ViolationReason.TOO_SMALL)
        if abs(terms[n]) == 2 and n + 1 < len(terms):
            product = terms[n] * terms[n + 1]
            if (product >= 0) if negative else (product <= 0):
                return ValidityReport(False, n, ViolationReason.SIGN_RULE)
    return ValidityReport(True)


def iter_convergents(terms: Iterable[int], negative: bool = False) -> Iterator[Convergent]:
    """
    Forward recursion p_n = a_n p_(n-1) + p_(n-2), same for q.

    With ``negative`` the recursion uses - p_(n-2), which evaluates the
    negative form a_0 - 1/(a_1 - 1/(...)).
    """
    step = -1 if negative else 1
    p_prev, p_prev2 = 1, 0
    q_prev, q_prev2 = 0, step
    for index, a in enumerate(terms):
        p = a * p_prev + step * p_prev2
        q = a * q_prev + step * q_prev2
        yield Convergent(p, q, index)
        p_prev2, p_prev = p_prev, p
        q_prev2, q_prev = q_prev, q


def convergents(seq: PartialQuotientSeq, n: int) -> List[Convergent]:
    """Convergents with indices 0..n"""
    if seq.kind is ExpansionKind.HURWITZ_NEGATIVE:
        raise KindMismatch("use negative_convergents for hurwitz-negative sequences")
    if n < 0 or len(seq) < n + 1:
        raise InsufficientTerms(f"need {n + 1} terms, have {len(seq)}")
    return list(iter_convergents(seq.terms[:n + 1]))


def negative_convergents(seq: PartialQuotientSeq, n: int) -> List[Convergent]:
    if seq.kind is not ExpansionKind.HURWITZ_NEGATIVE:
        raise KindMismatch("negative_convergents expects a hurwitz-negative sequence")
    if n < 0 or len(seq) < n + 1:
        raise InsufficientTerms(f"need {n + 1} terms, have {len(seq)}")
    return list(iter_convergents(seq.terms[:n + 1], negative=True))


def determinant(previous: Convergent, current: Convergent) -> int:
    """p_n q_(n-1) - p_(n-1) q_n"""
    return current.p * previous.q - previous.p * current.q


def evaluate_prefix(seq: Terms, n: int) -> Convergent:
    """
    Fold the first n terms from the bottom without reducing.

    Starting at a_(n-1)/1, each step maps (p, q) to (a_k p + q, p); the result
    agrees componentwise with the forward recursion.
    """
    terms = _terms_of(seq)
    if n < 1 or len(terms) < n:
        raise InsufficientTerms(f"need {n} terms, have {len(terms)}")
    p, q = terms[n - 1], 1
    for k in range(n - 2, -1, -1):
        if p == 0:
            raise ZeroDenominator(f"tail from index {k + 1} evaluates to zero")
        p, q = terms[k] * p + q, p
    if q == 0:
        raise ZeroDenominator("prefix has zero denominator")
    return Convergent(p, q, n - 1)


def _depth_for(width: Fraction, available: int) -> int:
    depth, bound = 0, Fraction(1)
    while bound > width:
        depth += 1
        bound /= 4
        if depth > available - 1:
            raise InsufficientTerms(f"width {width} needs more than {available} terms")
    return depth


def reconstruct(seq: Terms, target_width: Fraction, n: int = 0) -> ReconstructionEnclosure:
    """
    Certified enclosure of x_n from Hurwitz partial quotients.

    Using N further terms the truncation x_(n, n+N) lies within (1/2)(1/4)**N of
    x_n, so the enclosure has width (1/4)**N. The witness appends a term of
    absolute value 3 with the sign of the last used term; it stays inside the
    enclosure and its Hurwitz expansion reproduces every used term.
    """
    terms = list(_terms_of(seq))
    report = validate_hurwitz(terms)
    if not report.valid:
        raise InvalidQuotientSequence(
            f"not a Hurwitz sequence at index {report.index} ({report.reason.value})",
            report.index, report.reason.value
        )
    target_width = Fraction(target_width)
    if target_width <= 0:
        raise InvalidParameter(f"target width must be positive, got {target_width}")
    if n < 0 or n >= len(terms):
        raise InsufficientTerms(f"no term at index {n}")
    tail = terms[n:]
    depth = _depth_for(target_width, len(tail))
    used = tail[:depth + 1]
    centre = evaluate_prefix(used, len(used)).value
    radius = Fraction(1, 2 * 4 ** depth)
    padded = used + [-3 if used[-1] < 0 else 3]
    witness = evaluate_prefix(padded, len(padded)).value
    logger.debug("reconstructed x_%d from %d terms", n, len(used))
    return ReconstructionEnclosure(n, depth, centre - radius, centre + radius, witness)
