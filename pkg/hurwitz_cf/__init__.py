"""
Hurwitz CF Toolkit - Public Interface Exports

This module exports the public interface of the exact-arithmetic toolkit for
Hurwitz (nearest-integer) and classical continued fractions.
"""

from .core import HurwitzToolkit
from .interface import (
    ToolkitInterface,
    ConfigurationManagerInterface,
    CacheManagerInterface,
    VerificationManagerInterface
)
from .types import (
    # Core data structures
    OperationResult,
    Enclosure,
    PartialQuotientSeq,
    Convergent,

    # Enums
    ExpansionKind,
    ViolationReason,
    Ordering,
    CountMethod,
    OutputFormat,

    # Expansion and transform types
    ValidityReport,
    ReconstructionEnclosure,
    BlockSelection,
    FunnyTerm,
    FunnyForm,
    TraceStep,
    TraceOutput,
    TransformTrace,
    TransformResult,

    # Verification types
    CheckRow,
    ErrorSignCheck,
    GrowthWitness,
    LagrangeBounds,
    VerificationReport,

    # Counting types
    ApproxRecord,
    XRhoResult,
    SandwichStep,
    SandwichReport,
    CDQuantities,
    CDParams,
    GWitness,
    GCount,
    GRatio,
    RatioCheck,
    LinkageRow,
    ConstantCheck,

    # Constants
    SCHEMA_VERSION,
    DEFAULT_TERMS,
    DELTA_CAP,
    HURWITZ_DELTA_MAX,
    PROPERTY_NAMES
)
from .errors import (
    HurwitzToolkitError,
    PrecisionExhausted,
    DivisionByZero,
    ZeroDenominator,
    KindMismatch,
    InsufficientTerms,
    DeltaOutOfRange,
    InvalidParameter,
    LiteralParseError,
    FieldMismatch,
    SquarefreeBoundExceeded,
    InvalidQuotientSequence,
    UnknownProperty
)
from .exact_reals import (
    QuadSurd,
    IntervalReal,
    parse_literal,
    format_exact,
    floor,
    nearest_int,
    recip_shift,
    sign,
    compare,
    log_enclosure
)
from .cf_engine import (
    LazyExpansion,
    classical_expand,
    hurwitz_expand,
    to_negative,
    from_negative,
    validate_hurwitz,
    convergents,
    negative_convergents,
    evaluate_prefix,
    reconstruct
)
from .cf_transform import block_select, key_identity_check, classical_to_hurwitz, omitted_indices
from .diophantine import (
    error_sign,
    growth_bounds,
    lagrange_bounds,
    classical_lagrange_bounds,
    classical_growth_check
)
from .counting import (
    brute_force_approx,
    convergent_records,
    x_rho,
    sandwich,
    sandwich_steps,
    cd_quantities,
    constant_check,
    make_cd_params,
    g_rho,
    qpq_ratio,
    qpq_direct,
    ratio_check,
    g_linkage
)
from .config_manager import ConfigurationManager, ToolkitSettings, RunConfig
from .cache_manager import CacheManager
from .verification_manager import VerificationManager
from .monitoring import ToolkitMonitor

# Version information
__version__ = "1.0.0"
__author__ = "Hurwitz CF Toolkit Team"
__description__ = "Exact Hurwitz and classical continued fractions with verifiable approximation bounds"

# Public API exports
__all__ = [
    # Main implementation class
    "HurwitzToolkit",

    # Interface contracts
    "ToolkitInterface",
    "ConfigurationManagerInterface",
    "CacheManagerInterface",
    "VerificationManagerInterface",

    # Supporting manager classes
    "ConfigurationManager",
    "CacheManager",
    "VerificationManager",
    "ToolkitMonitor",
    "ToolkitSettings",
    "RunConfig",

    # Core data structures
    "OperationResult",
    "Enclosure",
    "PartialQuotientSeq",
    "Convergent",
    "QuadSurd",
    "IntervalReal",
    "LazyExpansion",

    # Enums
    "ExpansionKind",
    "ViolationReason",
    "Ordering",
    "CountMethod",
    "OutputFormat",

    # Expansion and transform types
    "ValidityReport",
    "ReconstructionEnclosure",
    "BlockSelection",
    "FunnyTerm",
    "FunnyForm",
    "TraceStep",
    "TraceOutput",
    "TransformTrace",
    "TransformResult",

    # Verification types
    "CheckRow",
    "ErrorSignCheck",
    "GrowthWitness",
    "LagrangeBounds",
    "VerificationReport",

    # Counting types
    "ApproxRecord",
    "XRhoResult",
    "SandwichStep",
    "SandwichReport",
    "CDQuantities",
    "CDParams",
    "GWitness",
    "GCount",
    "GRatio",
    "RatioCheck",
    "LinkageRow",
    "ConstantCheck",

    # Errors
    "HurwitzToolkitError",
    "PrecisionExhausted",
    "DivisionByZero",
    "ZeroDenominator",
    "KindMismatch",
    "InsufficientTerms",
    "DeltaOutOfRange",
    "InvalidParameter",
    "LiteralParseError",
    "FieldMismatch",
    "SquarefreeBoundExceeded",
    "InvalidQuotientSequence",
    "UnknownProperty",

    # Exact arithmetic
    "parse_literal",
    "format_exact",
    "floor",
    "nearest_int",
    "recip_shift",
    "sign",
    "compare",
    "log_enclosure",

    # Expansion
    "classical_expand",
    "hurwitz_expand",
    "to_negative",
    "from_negative",
    "validate_hurwitz",
    "convergents",
    "negative_convergents",
    "evaluate_prefix",
    "reconstruct",

    # Transform
    "block_select",
    "key_identity_check",
    "classical_to_hurwitz",
    "omitted_indices",

    # Diophantine checks
    "error_sign",
    "growth_bounds",
    "lagrange_bounds",
    "classical_lagrange_bounds",
    "classical_growth_check",

    # Counting
    "brute_force_approx",
    "convergent_records",
    "x_rho",
    "sandwich",
    "sandwich_steps",
    "cd_quantities",
    "constant_check",
    "make_cd_params",
    "g_rho",
    "qpq_ratio",
    "qpq_direct",
    "ratio_check",
    "g_linkage",

    # Convenience functions
    "create_toolkit",
    "get_default_configuration",

    # Constants
    "SCHEMA_VERSION",
    "DEFAULT_TERMS",
    "DELTA_CAP",
    "HURWITZ_DELTA_MAX",
    "PROPERTY_NAMES",

    # Module metadata
    "__version__",
    "__author__",
    "__description__"
]


# Module-level convenience functions
def create_toolkit(config: dict = None) -> HurwitzToolkit:
    """
    Convenience function to create a configured toolkit instance

    Args:
        config: Settings dictionary (see get_default_configuration)

    Returns:
        Configured HurwitzToolkit instance

    Example:
        >>> toolkit = create_toolkit({'workers': 4})
        >>> async with toolkit:
        ...     result = await toolkit.expand('(1+sqrt(5))/2', n_terms=4)
    """
    return HurwitzToolkit(config or {})


def get_default_configuration() -> dict:
    """
    Get default configuration for the toolkit

    Returns:
        Dictionary of default settings, accepted by create_toolkit

    Example:
        >>> config = get_default_configuration()
        >>> config['precision_bits'] = 8192
        >>> toolkit = create_toolkit(config)
    """
    return ToolkitSettings().model_dump(mode="json")

