"""
Hurwitz CF Toolkit - Data Types and Structures

This module defines the data types, enums, and result structures shared by the
exact arithmetic, continued fraction, Diophantine and counting modules.
"""

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum, IntEnum
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Tuple


class ExpansionKind(Enum):
    """Continued fraction expansion kinds"""
    CLASSICAL = "classical"
    HURWITZ_POSITIVE = "hurwitz-positive"
    HURWITZ_NEGATIVE = "hurwitz-negative"


class ViolationReason(Enum):
    """Why a sequence fails the Hurwitz validity conditions"""
    TOO_SMALL = "too-small"
    SIGN_RULE = "sign-rule"


class Ordering(IntEnum):
    """Result of an exact comparison"""
    LESS = -1
    EQUAL = 0
    GREATER = 1


class CountMethod(Enum):
    """How X_rho is enumerated"""
    ORACLE = "oracle"
    CONVERGENT = "convergent"


class OutputFormat(Enum):
    """Report output formats"""
    JSON = "json"
    CSV = "csv"
    PLAIN = "plain"


@dataclass(frozen=True)
class Enclosure:
    """Closed rational interval [lo, hi]"""
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value) -> "Enclosure":
        value = Fraction(value)
        return cls(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def intersect(self, other: "Enclosure") -> "Enclosure":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("disjoint enclosures of the same value")
        return Enclosure(lo, hi)

    def __add__(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return Enclosure(self.lo + other.lo, self.hi + other.hi)
        return Enclosure(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return Enclosure(self.lo - other.hi, self.hi - other.lo)
        return Enclosure(self.lo - other, self.hi - other)

    def __rsub__(self, other) -> "Enclosure":
        return (-self) + other

    def __mul__(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            products = (self.lo * other.lo, self.lo * other.hi,
                        self.hi * other.lo, self.hi * other.hi)
            return Enclosure(min(products), max(products))
        other = Fraction(other)
        if other >= 0:
            return Enclosure(self.lo * other, self.hi * other)
        return Enclosure(self.hi * other, self.lo * other)

    __rmul__ = __mul__

    def reciprocal(self) -> "Enclosure":
        if self.contains_zero():
            raise ZeroDivisionError("enclosure contains zero")
        return Enclosure(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return self * other.reciprocal()
        return self * (1 / Fraction(other))

    def __abs__(self) -> "Enclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(Fraction(0), max(-self.lo, self.hi))


@dataclass(frozen=True)
class PartialQuotientSeq:
    """Prefix of a continued fraction expansion"""
    kind: ExpansionKind
    terms: Tuple[int, ...]
    finite: bool = False  # True when the expansion terminated at the last term

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, index):
        return self.terms[index]

    def __iter__(self) -> Iterator[int]:
        return iter(self.terms)


@dataclass(frozen=True)
class Convergent:
    """Convergent p/q at a given index, kept unreduced"""
    p: int
    q: int
    index: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def normalized(self) -> Tuple[int, int]:
        """(p, q) with q > 0"""
        return (-self.p, -self.q) if self.q < 0 else (self.p, self.q)


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of validating a Hurwitz partial quotient sequence"""
    valid: bool
    index: Optional[int] = None
    reason: Optional[ViolationReason] = None


@dataclass(frozen=True)
class ReconstructionEnclosure:
    """Certified enclosure of x_n rebuilt from partial quotients"""
    n: int
    depth: int
    lo: Fraction
    hi: Fraction
    witness: Fraction  # rational inside [lo, hi] that re-expands to every supplied term

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class BlockSelection:
    """Runs of classical partial quotients equal to one, and the chosen indices"""
    indices: FrozenSet[int]
    selected: FrozenSet[int]
    blocks: Tuple[Tuple[int, ...], ...]
    provisional: Optional[Tuple[int, ...]] = None  # trailing run that may still grow


@dataclass(frozen=True)
class FunnyTerm:
    c: int
    epsilon: int


@dataclass(frozen=True)
class FunnyForm:
    """Intermediate expansion with entries c_k + epsilon_k / (...)"""
    terms: Tuple[FunnyTerm, ...]

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class TraceStep:
    """One classical index seen by the transform"""
    index: int
    b: int
    in_ones: bool
    selected: bool
    kept: bool
    settled: bool


@dataclass(frozen=True)
class TraceOutput:
    """One emitted Hurwitz partial quotient and where it came from"""
    index: int
    source_index: int
    c: int
    epsilon: int
    sign: int
    quotient: int


@dataclass(frozen=True)
class TransformTrace:
    steps: Tuple[TraceStep, ...]
    outputs: Tuple[TraceOutput, ...]
    omitted: Tuple[int, ...]
    finite: bool
    tie_adjusted: bool = False


class TransformResult(NamedTuple):
    funny: FunnyForm
    hurwitz: PartialQuotientSeq
    trace: TransformTrace


@dataclass(frozen=True)
class CheckRow:
    """One line of a verification report"""
    check_name: str
    passed: bool
    n: Optional[int] = None
    a_n: Optional[int] = None
    q_n: Optional[int] = None
    lhs: str = ""
    rhs: str = ""


@dataclass(frozen=True)
class ErrorSignCheck:
    n: int
    sign: int
    predicted: int

    @property
    def passed(self) -> bool:
        return self.sign == self.predicted


@dataclass(frozen=True)
class GrowthWitness:
    """Denominator growth data at index n"""
    n: int
    q_prev: int
    q_cur: int
    a_n: int
    y_prev: Fraction
    y_n: Fraction
    rows: Tuple[CheckRow, ...] = ()

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)


@dataclass(frozen=True)
class LagrangeBounds:
    """lower < |x - p/q| < upper around the convergent of index n-1"""
    n: int
    a_n: int
    p: int
    q: int
    lower: Any
    upper: Any
    actual: Any
    passed: bool


@dataclass(frozen=True)
class ApproxRecord:
    """Primitive approximant (p, q), q > 0, with quality |q(qx - p)|"""
    p: int
    q: int
    quality: Any
    source: str = "brute-force"  # or "convergent"
    index: Optional[int] = None  # convergent index when source is "convergent"


@dataclass(frozen=True)
class XRhoResult:
    delta: Fraction
    rho: int
    method: CountMethod
    count: int
    records: Tuple[ApproxRecord, ...]
    log_rho: Enclosure
    value: Enclosure  # count / log(rho)


@dataclass(frozen=True)
class SandwichStep:
    """Sandwich counts and the exact product check at one index"""
    n: int
    count_lower: int
    count_mid: int
    count_upper: int
    product_ok: bool

    @property
    def counts_ok(self) -> bool:
        return self.count_lower <= self.count_mid <= self.count_upper


@dataclass(frozen=True)
class SandwichReport:
    n: int
    delta: Fraction
    count_lower: int
    count_mid: int
    count_upper: int
    counts_ok: bool
    q_n: int
    product_lower: Any
    product_upper: Any
    logsum_lower: Enclosure
    logsum_upper: Enclosure
    log_qn: Enclosure
    log_ok: bool

    @property
    def passed(self) -> bool:
        return self.counts_ok and self.log_ok


@dataclass(frozen=True)
class CDQuantities:
    """Finite-index proxies for the averages, densities and rates"""
    n: int
    delta: Fraction
    alpha_n: Enclosure
    alpha_minus: Enclosure
    alpha_plus: Enclosure
    densities: Dict[str, Tuple[Fraction, Fraction]]  # threshold -> (D-, D+)
    e_n: Fraction
    f_n: Fraction
    rate_lower: Enclosure
    rate_upper: Enclosure
    window: Tuple[int, int]


@dataclass(frozen=True)
class CDParams:
    """Coefficients of Q(p, q) = (aq + bp)(cq + dp) with thresholds delta, kappa"""
    a: Any
    b: Any
    c: Any
    d: Any
    delta: Fraction
    kappa: Fraction


@dataclass(frozen=True)
class GWitness:
    p: int
    q: int
    value: Any


@dataclass(frozen=True)
class GCount:
    rho: int
    count: int
    witnesses: Tuple[GWitness, ...]


@dataclass(frozen=True)
class GRatio:
    """|Q(p, q)| / |q(qx - p)| at one witness, its distance from 1 and |y| delta / q^2"""
    p: int
    q: int
    ratio: Any
    deviation: Any
    bound: Any
    within_bound: bool


@dataclass(frozen=True)
class RatioCheck:
    rows: Tuple[GRatio, ...]
    min_q: int
    tolerance: Fraction
    checked: int
    max_deviation: Any
    passed: bool


@dataclass(frozen=True)
class LinkageRow:
    """#G(rho) beside the X_rho numerator at x = -a/b with the same delta"""
    rho: int
    g_count: int
    x_count: int
    gap: int


@dataclass(frozen=True)
class ConstantCheck:
    lhs: Enclosure
    rhs: Enclosure
    passed: bool


@dataclass
class VerificationReport:
    """Rows produced by one verification property"""
    prop: str
    subject: str
    rows: List[CheckRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def failures(self) -> List[CheckRow]:
        return [row for row in self.rows if not row.passed]


@dataclass
class OperationResult:
    """Standard operation result structure"""
    success: bool
    message: str
    data: Optional[Dict[str, Any]] = None
    error_code: Optional[str] = None
    timestamp: datetime = field(default_factory=datetime.now)


# Constants
SCHEMA_VERSION = 1
DEFAULT_TERMS = 20
DELTA_CAP = Fraction(113, 355)  # any delta up to here is below 1/pi
HURWITZ_DELTA_MAX = Fraction(1, 3)

PROPERTY_NAMES = (
    "theorem1",
    "prop1",
    "prop2",
    "prop3",
    "prop4",
    "prop5",
    "theorem2-sandwich",
    "constant",
)
