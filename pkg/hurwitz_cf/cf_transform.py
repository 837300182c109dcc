"""
Hurwitz CF Toolkit - Classical to Hurwitz Transform

This module rewrites a classical expansion into the Hurwitz expansion of the
same real. Runs of partial quotients equal to one are split into blocks; every
other index of each block (starting with the first) is selected, and each
selected index n removes the classical entry at n - 1 by the identity

    1 / (1 + 1/(n + y)) = 1 - 1/(n + 1 + y)

The result is returned together with the intermediate "funny" form (entries
c_k + epsilon_k / ...) and a trace recording which classical index produced
which Hurwitz partial quotient.
"""

import logging
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from .errors import InvalidParameter, KindMismatch, ZeroDenominator
from .types import (
    BlockSelection, ExpansionKind, FunnyForm, FunnyTerm, PartialQuotientSeq, TraceOutput,
    TraceStep, TransformResult, TransformTrace
)

logger = logging.getLogger(__name__)


def _runs(indices: Iterable[int]) -> Tuple[Tuple[int, ...], ...]:
    runs: List[List[int]] = []
    for index in sorted(indices):
        if runs and runs[-1][-1] == index - 1:
            runs[-1].append(index)
        else:
            runs.append([index])
    return tuple(tuple(run) for run in runs)


def select_from_indices(indices: Iterable[int], last_index: Optional[int] = None,
                        finite: bool = True) -> BlockSelection:
    """
    Blocks and selected indices for an index set S of positive integers.

    S' takes the first, third, fifth ... element of each maximal run. When the
    expansion may continue and the last run touches ``last_index``, that run is
    reported as provisional.
    """
    index_set = frozenset(indices)
    if any(index < 1 for index in index_set):
        raise InvalidParameter("block indices start at 1")
    blocks = _runs(index_set)
    selected = frozenset(index for block in blocks for index in block[0::2])
    provisional = None
    if not finite and blocks and last_index is not None and blocks[-1][-1] == last_index:
        provisional = blocks[-1]
    return BlockSelection(index_set, selected, blocks, provisional)


def block_select(b_terms: Union[PartialQuotientSeq, Sequence[int]],
                 finite: Optional[bool] = None) -> BlockSelection:
    """Selection for a classical prefix: S is the set of n >= 1 with b_n = 1"""
    terms, finite = _classical_terms(b_terms, finite)
    ones = [n for n in range(1, len(terms)) if terms[n] == 1]
    return select_from_indices(ones, len(terms) - 1, finite)


def key_identity_check(n: int, y: Fraction) -> Tuple[Fraction, Fraction]:
    """Both sides of 1/(1 + 1/(n + y)) = 1 - 1/(n + 1 + y)"""
    y = Fraction(y)
    if n + y == 0 or n + 1 + y == 0:
        raise ZeroDenominator(f"identity undefined at n={n}, y={y}")
    lhs = 1 / (1 + 1 / (n + y))
    rhs = 1 - 1 / (n + 1 + y)
    return lhs, rhs


def _classical_terms(b_terms, finite: Optional[bool]) -> Tuple[List[int], bool]:
    if isinstance(b_terms, PartialQuotientSeq):
        if b_terms.kind is not ExpansionKind.CLASSICAL:
            raise KindMismatch(f"expected a classical sequence, got {b_terms.kind.value}")
        terms = list(b_terms.terms)
        finite = b_terms.finite if finite is None else finite
    else:
        terms = list(b_terms)
        finite = bool(finite)
    if not terms:
        raise InvalidParameter("empty classical sequence")
    if any(b < 1 for b in terms[1:]):
        raise InvalidParameter("classical partial quotients after the first must be positive")
    return terms, finite


def _canonical_finite(terms: List[int]) -> List[int]:
    if len(terms) > 1 and terms[-1] == 1:
        terms = terms[:-2] + [terms[-2] + 1]
    return terms


def classical_to_hurwitz(b_terms: Union[PartialQuotientSeq, Sequence[int]],
                         finite: Optional[bool] = None) -> TransformResult:
    """
    Rewrite a classical prefix into Hurwitz partial quotients.

    Kept indices are those k not in S'. With c_k = b_k + [k-1 in S'] and
    epsilon_k = [k+1 in S'], the Hurwitz term is t_k (c_k + epsilon_k) where the
    sign t flips after each epsilon_k = 1. Output for a kept index k is settled
    when b_(k+1) is known (k + 1 <= N) or the expansion is finite; unsettled
    output is withheld so the result is always a prefix of the true expansion.
    """
    terms, finite = _classical_terms(b_terms, finite)
    if finite:
        terms = _canonical_finite(terms)
    last = len(terms) - 1
    selection = block_select(terms, finite)
    selected: Set[int] = set(selection.selected)

    steps: List[TraceStep] = []
    funny: List[FunnyTerm] = []
    outputs: List[TraceOutput] = []
    sign = 1
    for k, b in enumerate(terms):
        kept = k not in selected
        settled = finite or k + 1 <= last
        steps.append(TraceStep(k, b, k in selection.indices, k in selected, kept, settled))
        if not (kept and settled):
            continue
        c = b + (1 if k - 1 in selected else 0)
        epsilon = 1 if k + 1 in selected else 0
        funny.append(FunnyTerm(c, epsilon))
        outputs.append(TraceOutput(len(outputs), k, c, epsilon, sign, sign * (c + epsilon)))
        if epsilon:
            sign = -sign

    hurwitz = [out.quotient for out in outputs]
    tie_adjusted = False
    if finite and len(hurwitz) > 1 and hurwitz[-1] == -2:
        # a tie at the end resolves downward under nearest-integer rounding
        hurwitz[-2:] = [hurwitz[-2] - 1, 2]
        tie_adjusted = True
        logger.debug("final tie rewritten to %s", hurwitz[-2:])

    omitted = tuple(sorted(index - 1 for index in selected))
    trace = TransformTrace(tuple(steps), tuple(outputs), omitted, finite, tie_adjusted)
    seq = PartialQuotientSeq(ExpansionKind.HURWITZ_POSITIVE, tuple(hurwitz), finite)
    return TransformResult(FunnyForm(tuple(funny)), seq, trace)


def omitted_indices(trace: TransformTrace) -> FrozenSet[int]:
    """Classical convergent indices the Hurwitz expansion skips; never two consecutive"""
    return frozenset(step.index - 1 for step in trace.steps if step.selected)
