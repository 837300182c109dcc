"""
Hurwitz CF Toolkit - Exact Real Arithmetic

This module provides the three value kinds every other module computes with:

- ``Fraction`` for rationals (always reduced, positive denominator)
- ``QuadSurd`` for (a + b*sqrt(d)) / c with d squarefree
- ``IntervalReal`` for reals known only through shrinking rational enclosures

together with the decision primitives ``floor``, ``nearest_int``, ``recip_shift``
and ``compare``. Floor and comparison on rationals and surds are exact. On
interval reals they escalate precision and raise ``PrecisionExhausted`` when the
cap is reached before the answer is certain.
"""

import logging
import math
import operator
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple, TypeVar, Union

from mpmath.ctx_iv import MPIntervalContext

from .errors import (
    DivisionByZero, FieldMismatch, InvalidParameter, LiteralParseError,
    PrecisionExhausted, SquarefreeBoundExceeded
)
from .types import Enclosure, Ordering

logger = logging.getLogger(__name__)

DEFAULT_SQUAREFREE_BOUND = 10 ** 6
DEFAULT_INITIAL_BITS = 64
DEFAULT_PRECISION_CAP = 4096
DEFAULT_LOG_WIDTH_BITS = 64

HALF = Fraction(1, 2)

T = TypeVar("T")


def _sgn(value) -> int:
    return (value > 0) - (value < 0)


@lru_cache(maxsize=4096)
def squarefree_decompose(n: int, bound: int = DEFAULT_SQUAREFREE_BOUND) -> Tuple[int, int]:
    """
    Split n >= 0 as k**2 * m with m squarefree.

    Trial division runs up to ``bound``. A cofactor with no prime factor below the
    bound and at most ``bound**3`` has at most two prime factors, so it is
    squarefree unless it is a perfect square. Larger cofactors cannot be certified.

    Returns:
        (k, m)
    """
    if n < 0:
        raise InvalidParameter(f"negative radicand {n}")
    if n < 2:
        return 1, n
    square, free, m = 1, 1, n
    p = 2
    while p <= bound and p * p <= m:
        if m % p == 0:
            exponent = 0
            while m % p == 0:
                m //= p
                exponent += 1
            square *= p ** (exponent // 2)
            if exponent % 2:
                free *= p
        p += 1 if p == 2 else 2
    if m > 1:
        if p * p > m:
            free *= m
        elif m <= bound ** 3:
            root = math.isqrt(m)
            if root * root == m:
                square *= root
            else:
                free *= m
        else:
            raise SquarefreeBoundExceeded(
                f"cofactor {m} of {n} has no factor up to {bound} and exceeds {bound}**3"
            )
    return square, free


def _sign_linear(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for non-square d"""
    sa, sb = _sgn(a), _sgn(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    return sa if a * a > b * b * d else sb


def _floor_b_sqrt(b: int, d: int) -> int:
    """floor(b*sqrt(d)) for non-square d"""
    n = b * b * d
    s = math.isqrt(n)
    if not s * s <= n < (s + 1) * (s + 1):
        raise ArithmeticError(f"isqrt bracket failed for {n}")
    return s if b >= 0 else -s - 1


def _make_surd(a: int, b: int, c: int, d: int) -> Union[Fraction, "QuadSurd"]:
    """Canonicalize (a + b*sqrt(d))/c for squarefree d"""
    if c == 0:
        raise DivisionByZero("zero denominator")
    if d == 0:
        b = 0
    elif d == 1:
        a, b = a + b, 0
    if b == 0:
        return Fraction(a, c)
    if c < 0:
        a, b, c = -a, -b, -c
    g = math.gcd(math.gcd(a, b), c)
    if g > 1:
        a, b, c = a // g, b // g, c // g
    return QuadSurd(a, b, c, d)


@dataclass(frozen=True)
class QuadSurd:
    """
    Irrational quadratic surd (a + b*sqrt(d)) / c in canonical form.

    c > 0, gcd(a, b, c) = 1, b != 0 and d >= 2 squarefree. Values with b = 0 are
    never QuadSurds: every operation returns a ``Fraction`` for them.
    """
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.c <= 0 or self.b == 0 or self.d < 2:
            raise InvalidParameter(f"non-canonical surd ({self.a}, {self.b}, {self.c}, {self.d})")
        if math.gcd(math.gcd(self.a, self.b), self.c) != 1:
            raise InvalidParameter(f"surd ({self.a}, {self.b}, {self.c}, {self.d}) is not reduced")

    @classmethod
    def create(cls, a: int, b: int, c: int, d: int,
               squarefree_bound: int = DEFAULT_SQUAREFREE_BOUND) -> Union[Fraction, "QuadSurd"]:
        """Build (a + b*sqrt(d))/c from any integers, extracting square factors of d"""
        if c == 0:
            raise DivisionByZero("zero denominator")
        if d < 0:
            raise InvalidParameter(f"negative radicand {d}")
        k, free = squarefree_decompose(d, squarefree_bound)
        return _make_surd(a, b * k, c, free)

    @classmethod
    def sqrt(cls, d: int, squarefree_bound: int = DEFAULT_SQUAREFREE_BOUND):
        return cls.create(0, 1, 1, d, squarefree_bound)

    def _coerce(self, other) -> Optional[Tuple[int, int, int]]:
        if isinstance(other, QuadSurd):
            if other.d != self.d:
                raise FieldMismatch(f"sqrt({self.d}) and sqrt({other.d}) live in different fields")
            return other.a, other.b, other.c
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return other.numerator, 0, other.denominator
        return None

    def sign(self) -> int:
        return _sign_linear(self.a, self.b, self.d)

    def floor(self) -> int:
        return (self.a + _floor_b_sqrt(self.b, self.d)) // self.c

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.c, self.d)

    def reciprocal(self) -> Union[Fraction, "QuadSurd"]:
        norm = self.a * self.a - self.b * self.b * self.d
        return _make_surd(self.c * self.a, -self.c * self.b, norm, self.d)

    def __add__(self, other):
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        a2, b2, c2 = coerced
        return _make_surd(self.a * c2 + a2 * self.c, self.b * c2 + b2 * self.c, self.c * c2, self.d)

    __radd__ = __add__

    def __neg__(self) -> "QuadSurd":
        return QuadSurd(-self.a, -self.b, self.c, self.d)

    def __pos__(self) -> "QuadSurd":
        return self

    def __sub__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        a2, b2, c2 = coerced
        return _make_surd(self.a * a2 + self.b * b2 * self.d, self.a * b2 + a2 * self.b,
                          self.c * c2, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QuadSurd):
            self._coerce(other)
            return self * other.reciprocal()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division of a surd by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.reciprocal() * other
        return NotImplemented

    def __abs__(self) -> "QuadSurd":
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        return compare(self, other) is Ordering.LESS

    def __le__(self, other):
        return compare(self, other) is not Ordering.GREATER

    def __gt__(self, other):
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other):
        return compare(self, other) is not Ordering.LESS

    def __float__(self) -> float:
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    def __str__(self) -> str:
        return format_exact(self)


def _round_out(enclosure: Enclosure, bits: int) -> Enclosure:
    """Widen to the dyadic grid 2**-bits"""
    scale = 1 << bits
    return Enclosure(Fraction(math.floor(enclosure.lo * scale), scale),
                     Fraction(math.ceil(enclosure.hi * scale), scale))


def surd_enclosure(x: QuadSurd, bits: int) -> Enclosure:
    """Rational enclosure of a surd of width at most 2**-bits / c"""
    scale = 1 << bits
    s = math.isqrt(x.b * x.b * x.d * scale * scale)
    lo, hi = (s, s + 1) if x.b > 0 else (-s - 1, -s)
    return Enclosure(Fraction(x.a * scale + lo, x.c * scale), Fraction(x.a * scale + hi, x.c * scale))


EnclosureSource = Callable[[int], Optional[Enclosure]]


class IntervalReal:
    """
    Real number given by a refinable enclosure source.

    ``source(bits)`` returns an enclosure (or None when too coarse to be useful)
    whose width shrinks as ``bits`` grows. Precision runs from ``initial_bits``
    doubling up to ``cap_bits``; each refinement is intersected with the previous
    one, so enclosures never widen. Refinements are memoized per instance.
    """

    def __init__(self, source: EnclosureSource, initial_bits: int = DEFAULT_INITIAL_BITS,
                 cap_bits: int = DEFAULT_PRECISION_CAP, literal: Optional[str] = None,
                 origin: Optional[str] = None):
        if initial_bits < 1 or cap_bits < initial_bits:
            raise InvalidParameter(f"bad precision range {initial_bits}..{cap_bits}")
        self._source = source
        self.initial_bits = initial_bits
        self.cap_bits = cap_bits
        self.literal = literal
        self.origin = literal or origin
        self._refined: Dict[int, Optional[Enclosure]] = {}
        self._lock = threading.Lock()

    def precision_schedule(self) -> List[int]:
        schedule, bits = [], self.initial_bits
        while bits < self.cap_bits:
            schedule.append(bits)
            bits *= 2
        schedule.append(self.cap_bits)
        return schedule

    def enclosure_at(self, bits: int) -> Optional[Enclosure]:
        """Enclosure at the first scheduled precision >= bits (capped)"""
        previous: Optional[Enclosure] = None
        for step in self.precision_schedule():
            with self._lock:
                known = step in self._refined
                current = self._refined.get(step)
            if not known:
                current = self._source(step)
                if current is not None and previous is not None:
                    current = current.intersect(previous)
                with self._lock:
                    self._refined.setdefault(step, current)
                    current = self._refined[step]
            if current is not None:
                previous = current
            if step >= bits:
                return current
        return previous

    def decide(self, judge: Callable[[Enclosure], Optional[T]], what: str) -> T:
        """Refine until ``judge`` returns a non-None answer"""
        for bits in self.precision_schedule():
            enclosure = self.enclosure_at(bits)
            if enclosure is None:
                continue
            answer = judge(enclosure)
            if answer is not None:
                if bits > self.initial_bits:
                    logger.debug("decided %s at %d bits", what, bits)
                return answer
        logger.warning("precision exhausted deciding %s", what)
        raise PrecisionExhausted(f"cannot decide {what} for {self.describe()}", self.cap_bits)

    def last_enclosure(self) -> Optional[Enclosure]:
        """Tightest enclosure computed so far"""
        with self._lock:
            known = [self._refined[bits] for bits in sorted(self._refined) if self._refined[bits] is not None]
        return known[-1] if known else None

    def describe(self) -> str:
        """The literal, or the best known enclosure and the literal it was derived from"""
        if self.literal:
            return self.literal
        text = format_exact(self)
        return f"{text} derived from {self.origin}" if self.origin else text

    @property
    def lo(self) -> Fraction:
        return self._current().lo

    @property
    def hi(self) -> Fraction:
        return self._current().hi

    def _current(self) -> Enclosure:
        return self.decide(lambda enclosure: enclosure, "an enclosure")

    def refine(self, width: Fraction) -> Enclosure:
        """Enclosure of width <= ``width``"""
        return self.decide(lambda enclosure: enclosure if enclosure.width <= width else None,
                           f"width {width}")

    def _binary(self, other, op, swap: bool = False):
        if not isinstance(other, (int, Fraction, QuadSurd, IntervalReal)):
            return NotImplemented
        left, right = (other, self) if swap else (self, other)
        return _derived_interval(op, left, right)

    def __add__(self, other):
        return self._binary(other, operator.add)

    def __radd__(self, other):
        return self._binary(other, operator.add, swap=True)

    def __sub__(self, other):
        return self._binary(other, operator.sub)

    def __rsub__(self, other):
        return self._binary(other, operator.sub, swap=True)

    def __mul__(self, other):
        return self._binary(other, operator.mul)

    def __rmul__(self, other):
        return self._binary(other, operator.mul, swap=True)

    def __truediv__(self, other):
        return self._binary(other, operator.truediv)

    def __rtruediv__(self, other):
        return self._binary(other, operator.truediv, swap=True)

    def __neg__(self) -> "IntervalReal":
        return _derived_interval(operator.sub, Fraction(0), self)

    def __abs__(self) -> "IntervalReal":
        return _unary_interval(abs, self)

    def __lt__(self, other):
        return compare(self, other) is Ordering.LESS

    def __le__(self, other):
        return compare(self, other) is not Ordering.GREATER

    def __gt__(self, other):
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other):
        return compare(self, other) is not Ordering.LESS

    def __repr__(self) -> str:
        return f"IntervalReal({self.literal or 'derived'})"


ExactValue = Union[int, Fraction, QuadSurd, IntervalReal]


def _precision_of(*values) -> Tuple[int, int]:
    intervals = [v for v in values if isinstance(v, IntervalReal)]
    return (min(v.initial_bits for v in intervals), max(v.cap_bits for v in intervals))


def _derived_interval(op, left, right) -> IntervalReal:
    def source(bits: int) -> Optional[Enclosure]:
        lhs, rhs = enclose(left, bits), enclose(right, bits)
        if lhs is None or rhs is None:
            return None
        try:
            return _round_out(op(lhs, rhs), bits)
        except ZeroDivisionError:
            return None

    initial, cap = _precision_of(left, right)
    return IntervalReal(source, initial, cap, origin=_origin_of(left, right))


def _origin_of(*values) -> Optional[str]:
    return next((v.origin for v in values if isinstance(v, IntervalReal) and v.origin), None)


def _unary_interval(op, value: IntervalReal) -> IntervalReal:
    def source(bits: int) -> Optional[Enclosure]:
        inner = value.enclosure_at(bits)
        return None if inner is None else _round_out(op(inner), bits)

    return IntervalReal(source, value.initial_bits, value.cap_bits, origin=value.origin)


def enclose(x: ExactValue, bits: int) -> Optional[Enclosure]:
    """Rational enclosure of any supported value at ``bits`` of precision"""
    if isinstance(x, (int, Fraction)):
        return Enclosure.point(x)
    if isinstance(x, QuadSurd):
        return surd_enclosure(x, bits)
    if isinstance(x, IntervalReal):
        return x.enclosure_at(bits)
    raise TypeError(f"unsupported value {x!r}")


def decimal_interval(digits: str, initial_bits: int = DEFAULT_INITIAL_BITS,
                     cap_bits: int = DEFAULT_PRECISION_CAP) -> IntervalReal:
    """Interval real within half a unit of the last given digit"""
    match = _DECIMAL.fullmatch(digits)
    if match is None:
        raise LiteralParseError("malformed decimal digits", digits, 0)
    sign, whole, frac = match.group(1) or "", match.group(2), match.group(3) or ""
    scale = 10 ** len(frac)
    value = Fraction(int(f"{sign}{whole}{frac}"), scale)
    half_ulp = Fraction(1, 2 * scale)
    base = Enclosure(value - half_ulp, value + half_ulp)
    return IntervalReal(lambda bits: _round_out(base, bits), initial_bits, max(cap_bits, initial_bits),
                        literal=f"dec:{digits}@{initial_bits}")


def _exact(x):
    return Fraction(x) if isinstance(x, int) else x


def field_of(x: ExactValue) -> Optional[int]:
    """Radicand of the quadratic field holding x, None for rationals"""
    return x.d if isinstance(x, QuadSurd) else None


def common_field(*values: ExactValue) -> Optional[int]:
    fields = {field_of(v) for v in values} - {None}
    if len(fields) > 1:
        raise FieldMismatch(f"values span several quadratic fields: {sorted(fields)}")
    return fields.pop() if fields else None


def is_integral(x: ExactValue) -> bool:
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    if isinstance(x, IntervalReal):
        enclosure = x.enclosure_at(x.initial_bits)
        return enclosure is not None and enclosure.lo == enclosure.hi and enclosure.lo.denominator == 1
    return False


def floor(x: ExactValue) -> int:
    x = _exact(x)
    if isinstance(x, Fraction):
        return math.floor(x)
    if isinstance(x, QuadSurd):
        return x.floor()

    def judge(enclosure: Enclosure) -> Optional[int]:
        low = math.floor(enclosure.lo)
        return low if low == math.floor(enclosure.hi) else None

    return x.decide(judge, "floor")


def nearest_int(x: ExactValue) -> int:
    """Nearest integer, ties resolved downward"""
    x = _exact(x)
    if isinstance(x, Fraction):
        return math.ceil(x - HALF)
    if isinstance(x, QuadSurd):
        return -(HALF - x).floor()

    def judge(enclosure: Enclosure) -> Optional[int]:
        low = math.ceil(enclosure.lo - HALF)
        return low if low == math.ceil(enclosure.hi - HALF) else None

    return x.decide(judge, "nearest integer")


def recip_shift(x: ExactValue, a: int) -> ExactValue:
    """1 / (x - a)"""
    x = _exact(x)
    if isinstance(x, Fraction):
        if x == a:
            raise DivisionByZero(f"recip_shift of {x} by itself")
        return 1 / (x - a)
    if isinstance(x, QuadSurd):
        return (x - a).reciprocal()

    def source(bits: int) -> Optional[Enclosure]:
        parent = x.enclosure_at(bits)
        if parent is None:
            return None
        shifted = parent - a
        if shifted.contains_zero():
            return None
        return _round_out(shifted.reciprocal(), bits)

    return IntervalReal(source, x.initial_bits, x.cap_bits, origin=x.origin)


def sign(x: ExactValue) -> int:
    x = _exact(x)
    if isinstance(x, Fraction):
        return _sgn(x)
    if isinstance(x, QuadSurd):
        return x.sign()
    return int(compare(x, Fraction(0)))


def _sign_of_difference(x, y) -> int:
    x, y = _exact(x), _exact(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return _sgn(x - y)
    dx, dy = field_of(x), field_of(y)
    if dx is None or dy is None or dx == dy:
        return sign(x - y)
    # c_x c_y (x - y) = A + B sqrt(dx) + C sqrt(dy) = u + v
    big_a = x.a * y.c - y.a * x.c
    big_b = x.b * y.c
    big_c = -y.b * x.c
    u_sign, v_sign = _sign_linear(big_a, big_b, dx), _sgn(big_c)
    if v_sign == 0 or u_sign == v_sign:
        return u_sign
    if u_sign == 0:
        return v_sign
    square_gap = _sign_linear(big_a * big_a + big_b * big_b * dx - big_c * big_c * dy,
                              2 * big_a * big_b, dx)
    if square_gap == 0:
        return 0
    return u_sign if square_gap > 0 else v_sign


def compare(x: ExactValue, y: ExactValue) -> Ordering:
    """Exact comparison; interval reals are refined until their enclosures separate"""
    if not (isinstance(x, IntervalReal) or isinstance(y, IntervalReal)):
        return Ordering(_sign_of_difference(x, y))

    def separate(bits: int) -> Optional[Ordering]:
        left, right = enclose(x, bits), enclose(y, bits)
        if left is None or right is None:
            return None
        if left.hi < right.lo:
            return Ordering.LESS
        if left.lo > right.hi:
            return Ordering.GREATER
        if left.lo == left.hi == right.lo == right.hi:
            return Ordering.EQUAL
        return None

    initial, cap = _precision_of(x, y)
    bits = initial
    while True:
        answer = separate(bits)
        if answer is not None:
            return answer
        if bits >= cap:
            break
        bits = min(bits * 2, cap)
    logger.warning("precision exhausted comparing values")
    raise PrecisionExhausted(f"cannot compare {format_exact(x)} with {format_exact(y)}", cap)


def absolute(x: ExactValue) -> ExactValue:
    x = _exact(x)
    if isinstance(x, IntervalReal):
        return abs(x)
    return -x if sign(x) < 0 else x


def exact_max(*values: ExactValue) -> ExactValue:
    best = values[0]
    for value in values[1:]:
        if compare(value, best) is Ordering.GREATER:
            best = value
    return best


def exact_min(*values: ExactValue) -> ExactValue:
    best = values[0]
    for value in values[1:]:
        if compare(value, best) is Ordering.LESS:
            best = value
    return best


# Certified logarithms

_IV_CONTEXTS = threading.local()


def _interval_context(prec: int) -> MPIntervalContext:
    ctx = getattr(_IV_CONTEXTS, "ctx", None)
    if ctx is None:
        ctx = MPIntervalContext()
        _IV_CONTEXTS.ctx = ctx
    ctx.prec = prec
    return ctx


def _raw_to_fraction(raw) -> Fraction:
    negative, mantissa, exponent, _bitcount = raw
    if not mantissa:
        if exponent:
            raise PrecisionExhausted("interval logarithm returned a non-finite endpoint")
        return Fraction(0)
    value = Fraction(mantissa << exponent) if exponent >= 0 else Fraction(mantissa, 1 << -exponent)
    return -value if negative else value


@lru_cache(maxsize=4096)
def _log_rational(value: Fraction, prec: int) -> Enclosure:
    ctx = _interval_context(prec)
    result = ctx.log(ctx.mpf(value.numerator) / ctx.mpf(value.denominator))
    low, high = result._mpi_
    return Enclosure(_raw_to_fraction(low), _raw_to_fraction(high))


def log_enclosure(x: ExactValue, width_bits: int = DEFAULT_LOG_WIDTH_BITS,
                  cap_bits: int = DEFAULT_PRECISION_CAP) -> Enclosure:
    """Certified enclosure of log(x), x > 0, of width <= 2**-width_bits"""
    if not isinstance(x, IntervalReal) and sign(x) <= 0:
        raise InvalidParameter(f"logarithm of non-positive value {format_exact(x)}")
    target = Fraction(1, 1 << width_bits)
    prec = width_bits + 32
    while True:
        argument = enclose(_exact(x), prec)
        if argument is not None and argument.lo > 0:
            lower = _log_rational(argument.lo, prec).lo
            upper = _log_rational(argument.hi, prec).hi
            if upper - lower <= target:
                return Enclosure(lower, upper)
        if prec >= cap_bits:
            raise PrecisionExhausted(f"logarithm of {format_exact(x)} too wide", cap_bits)
        prec = min(prec * 2, cap_bits)


# Literals

_DECIMAL = re.compile(r"([+-]?)(\d+)(?:\.(\d+))?")
_DEC_LITERAL = re.compile(r"dec:([^@]+)(?:@(\d+))?")
_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|([-+*/()]))")


class _LiteralParser:
    """Recursive descent over + - * / sqrt(int) and parentheses, evaluated exactly"""

    def __init__(self, text: str, squarefree_bound: int):
        self.text = text
        self.squarefree_bound = squarefree_bound
        self.tokens: List[Tuple[str, str, int]] = []
        position = 0
        stripped = text.rstrip()
        while position < len(stripped):
            match = _TOKEN.match(stripped, position)
            if match is None:
                raise LiteralParseError("unexpected character", text, position)
            start = match.start(match.lastindex)
            if match.group(1):
                self.tokens.append(("int", match.group(1), start))
            elif match.group(2):
                self.tokens.append(("sqrt", "sqrt", start))
            else:
                self.tokens.append(("op", match.group(3), start))
            position = match.end()
        self.index = 0

    def _peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _take(self, value: Optional[str] = None, kind: Optional[str] = None) -> Tuple[str, str, int]:
        token = self._peek()
        if token is None:
            raise LiteralParseError("unexpected end of literal", self.text, len(self.text))
        if (value is not None and token[1] != value) or (kind is not None and token[0] != kind):
            raise LiteralParseError(f"expected {value or kind}", self.text, token[2])
        self.index += 1
        return token

    def parse(self):
        if not self.tokens:
            raise LiteralParseError("empty literal", self.text, 0)
        value = self._expression()
        token = self._peek()
        if token is not None:
            raise LiteralParseError("trailing input", self.text, token[2])
        return value

    def _expression(self):
        value = self._term()
        while (token := self._peek()) is not None and token[1] in "+-":
            self.index += 1
            rhs = self._term()
            value = value + rhs if token[1] == "+" else value - rhs
        return value

    def _term(self):
        value = self._unary()
        while (token := self._peek()) is not None and token[1] in "*/":
            self.index += 1
            rhs = self._unary()
            if token[1] == "*":
                value = value * rhs
            elif rhs == 0:
                raise LiteralParseError("division by zero", self.text, token[2])
            else:
                value = value / rhs
        return value

    def _unary(self):
        token = self._peek()
        if token is not None and token[1] in "+-":
            self.index += 1
            value = self._unary()
            return -value if token[1] == "-" else value
        return self._atom()

    def _atom(self):
        token = self._take()
        kind, text, position = token
        if kind == "int":
            return Fraction(int(text))
        if kind == "sqrt":
            self._take("(")
            radicand = int(self._take(kind="int")[1])
            self._take(")")
            return QuadSurd.sqrt(radicand, self.squarefree_bound)
        if text == "(":
            value = self._expression()
            self._take(")")
            return value
        raise LiteralParseError("unexpected operator", self.text, position)


def parse_literal(text: str, squarefree_bound: int = DEFAULT_SQUAREFREE_BOUND,
                  initial_bits: int = DEFAULT_INITIAL_BITS,
                  cap_bits: int = DEFAULT_PRECISION_CAP) -> ExactValue:
    """
    Parse an exact literal.

    Accepted forms: ``p/q`` and integers, surd expressions such as
    ``(a+b*sqrt(d))/c``, ``sqrt(2)-1`` or ``(1+sqrt(5))/2``, and
    ``dec:<digits>@<bits>`` for interval reals.
    """
    stripped = text.strip()
    dec = _DEC_LITERAL.fullmatch(stripped)
    if dec is not None:
        bits = int(dec.group(2)) if dec.group(2) else initial_bits
        if bits < 1:
            raise LiteralParseError("precision must be positive", text, stripped.index("@") + 1)
        return decimal_interval(dec.group(1), bits, max(cap_bits, bits))
    if stripped.startswith("dec:"):
        raise LiteralParseError("malformed decimal literal", text, 0)
    try:
        return _LiteralParser(text, squarefree_bound).parse()
    except FieldMismatch as exc:
        raise LiteralParseError(str(exc), text, 0) from exc


def format_exact(x: ExactValue) -> str:
    """Canonical serialization, readable back by ``parse_literal``"""
    x = _exact(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, QuadSurd):
        radical = f"sqrt({x.d})" if abs(x.b) == 1 else f"{abs(x.b)}*sqrt({x.d})"
        if x.a == 0:
            body = radical if x.b > 0 else f"-{radical}"
            return body if x.c == 1 else f"{body}/{x.c}"
        body = f"{x.a}{'+' if x.b > 0 else '-'}{radical}"
        return body if x.c == 1 else f"({body})/{x.c}"
    if isinstance(x, IntervalReal):
        if x.literal:
            return x.literal
        enclosure = x.enclosure_at(x.initial_bits) or x.last_enclosure()
        if enclosure is None:
            return "interval:[?]"
        return f"interval:[{format_exact(enclosure.lo)},{format_exact(enclosure.hi)}]"
    raise TypeError(f"unsupported value {x!r}")


def format_decimal(value: Fraction, digits: int, rounding: str = "floor") -> str:
    """Decimal rendering of a rational, rounded toward -inf ("floor") or +inf ("ceil")"""
    scale = 10 ** digits
    scaled = math.floor(value * scale) if rounding == "floor" else math.ceil(value * scale)
    negative = scaled < 0
    whole, frac = divmod(abs(scaled), scale)
    text = f"{whole}.{frac:0{digits}d}" if digits else str(whole)
    return f"-{text}" if negative else text


def format_enclosure(enclosure: Enclosure, digits: int = 20) -> str:
    low, high = format_decimal(enclosure.lo, digits, 'floor'), format_decimal(enclosure.hi, digits, 'ceil')
    return f"[{low}, {high}]"
