"""
Shared fixtures for the Hurwitz CF Toolkit tests
"""

import random
from typing import List, Tuple

import pytest

from hurwitz_cf.config_manager import ToolkitSettings
from hurwitz_cf.exact_reals import QuadSurd


@pytest.fixture
def phi() -> QuadSurd:
    return QuadSurd(1, 1, 2, 5)


@pytest.fixture
def sqrt2() -> QuadSurd:
    return QuadSurd.sqrt(2)


@pytest.fixture
def sqrt101() -> QuadSurd:
    return QuadSurd.sqrt(101)


@pytest.fixture
def settings() -> ToolkitSettings:
    return ToolkitSettings(chunk_size=50, workers=2)


def random_hurwitz_terms(rng: random.Random, length: int) -> List[int]:
    """A sequence satisfying |a_n| >= 2 for n >= 1 and the sign rule after each +-2"""
    terms = [rng.randint(-20, 20)]
    while len(terms) < length:
        previous = terms[-1] if len(terms) > 1 else None
        magnitude = rng.choice((2, 2, 3, 4, 5, 7, 11))
        if previous is not None and abs(previous) == 2:
            sign = 1 if previous > 0 else -1
        else:
            sign = rng.choice((-1, 1))
        terms.append(sign * magnitude)
    return terms


def random_invalid_terms(rng: random.Random, length: int) -> Tuple[List[int], int, str]:
    """A sequence whose first violation sits at a known index, with its reason"""
    index = rng.randint(1, length - 2)
    terms = random_hurwitz_terms(rng, index)
    previous = terms[-1] if index > 1 else None
    forced = None
    if previous is not None and abs(previous) == 2:
        forced = 1 if previous > 0 else -1
    if rng.random() < 0.5:
        small = forced if forced is not None else rng.choice((-1, 0, 1))
        terms.append(small)
        reason = "too-small"
    else:
        sign = forced if forced is not None else rng.choice((-1, 1))
        terms.extend([2 * sign, -sign * rng.randint(2, 9)])
        reason = "sign-rule"
    terms.extend(random_hurwitz_terms(rng, length - len(terms) + 1)[1:])
    return terms[:length], index, reason
