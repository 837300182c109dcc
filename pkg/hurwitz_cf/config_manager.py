"""
Hurwitz CF Toolkit - Configuration Management

This module provides layered configuration for the toolkit: built-in defaults,
an optional JSON file, ``HURWITZ_CF_*`` environment variables and explicit
overrides, validated with pydantic. Run requests from the command line are
captured as ``RunConfig`` objects whose literals stay exact strings.
"""

import json
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import InvalidParameter, LiteralParseError
from .exact_reals import DEFAULT_SQUAREFREE_BOUND, parse_literal
from .interface import ConfigurationManagerInterface
from .types import CountMethod, DEFAULT_TERMS, OutputFormat, PROPERTY_NAMES

logger = logging.getLogger(__name__)

ENV_PREFIX = "HURWITZ_CF_"
CONFIG_PATH_VARIABLE = f"{ENV_PREFIX}CONFIG"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ToolkitSettings(BaseModel):
    """Global toolkit settings"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    precision_bits: int = Field(4096, ge=64, description="Refinement cap for interval reals")
    initial_bits: int = Field(64, ge=8, description="Starting precision for interval reals")
    squarefree_bound: int = Field(DEFAULT_SQUAREFREE_BOUND, ge=100,
                                  description="Trial division bound for radicands")
    log_width_bits: int = Field(64, ge=16, description="Certified logarithm width 2**-bits")
    chunk_size: int = Field(1000, ge=1, description="Denominators per enumeration chunk")
    workers: int = Field(1, ge=1, le=256, description="Executor threads for enumeration")
    output_format: OutputFormat = Field(OutputFormat.JSON, description="Report format")
    log_level: str = Field("WARNING", description="Logging level for the CLI")
    metrics_enabled: bool = Field(False, description="Export Prometheus metrics when available")
    cache_size: int = Field(256, ge=1, description="Cached expansions")
    default_terms: int = Field(DEFAULT_TERMS, ge=1, description="Terms when none are requested")

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in LOG_LEVELS:
            raise ValueError(f"unknown log level {value}")
        return value

    @model_validator(mode="after")
    def _precision_order(self) -> "ToolkitSettings":
        if self.initial_bits > self.precision_bits:
            raise ValueError("initial_bits exceeds precision_bits")
        return self


def parse_terms(text: str) -> List[int]:
    """Comma separated integers, e.g. ``5,2,-2``"""
    items = [item.strip() for item in text.split(",")]
    if not items or any(not item for item in items):
        raise LiteralParseError("empty term in list", text, text.find(",,") if ",," in text else 0)
    try:
        return [int(item) for item in items]
    except ValueError as exc:
        raise LiteralParseError("terms must be integers", text, 0) from exc


def parse_rational(text: str) -> Fraction:
    """Exact rational literal ``p/q`` or integer"""
    value = parse_literal(text)
    if not isinstance(value, Fraction):
        raise LiteralParseError("expected a rational p/q", text, 0)
    return value


class RunConfig(BaseModel):
    """
    One CLI request.

    Literals are kept as the strings the user typed and validated by the exact
    parser, so a RunConfig serializes and reloads without loss.
    """
    model_config = ConfigDict(extra="forbid")

    subcommand: str
    action: Optional[str] = None
    x: Optional[str] = None
    terms: Optional[str] = None
    b_terms: Optional[str] = None
    algo: str = "hurwitz"
    negative: bool = False
    n_terms: Optional[int] = Field(None, ge=1)
    n: Optional[int] = Field(None, ge=0)
    prop: Optional[str] = None
    delta: Optional[str] = None
    kappa: Optional[str] = None
    rho: Optional[int] = Field(None, ge=1)
    a: Optional[str] = None
    b: Optional[str] = None
    c: Optional[str] = None
    d: Optional[str] = None
    thresholds: Optional[str] = None
    method: CountMethod = CountMethod.ORACLE
    witnesses: bool = False
    linkage: bool = False
    out: Optional[str] = None
    settings: ToolkitSettings = Field(default_factory=ToolkitSettings)

    @field_validator("subcommand")
    @classmethod
    def _known_subcommand(cls, value: str) -> str:
        if value not in ("expand", "transform", "verify", "count"):
            raise ValueError(f"unknown subcommand {value}")
        return value

    @field_validator("algo")
    @classmethod
    def _known_algo(cls, value: str) -> str:
        if value not in ("classical", "hurwitz"):
            raise ValueError(f"unknown algorithm {value}")
        return value

    @field_validator("x", "a", "b", "c", "d")
    @classmethod
    def _exact_literal(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            parse_literal(value)
        return value

    @field_validator("delta", "kappa")
    @classmethod
    def _rational_literal(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            parse_rational(value)
        return value

    @field_validator("terms", "b_terms")
    @classmethod
    def _term_list(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            parse_terms(value)
        return value

    @field_validator("prop")
    @classmethod
    def _property_name(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in PROPERTY_NAMES:
            raise ValueError(f"unknown property {value}; choose from {', '.join(PROPERTY_NAMES)}")
        return value


class ConfigurationManager(ConfigurationManagerInterface):
    """
    Layered settings: defaults <- JSON file <- environment <- overrides
    """

    def __init__(self, config_path: Optional[str] = None,
                 environ: Optional[Mapping[str, str]] = None):
        """
        Initialize configuration manager

        Args:
            config_path: JSON settings file; falls back to $HURWITZ_CF_CONFIG
            environ: Environment mapping (os.environ when omitted)
        """
        self.environ = os.environ if environ is None else environ
        self.config_path = config_path or self.environ.get(CONFIG_PATH_VARIABLE)

    def _from_file(self) -> Dict[str, Any]:
        if not self.config_path:
            return {}
        path = Path(self.config_path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidParameter(f"cannot read settings file {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidParameter(f"settings file {path} must hold a JSON object")
        logger.debug("loaded settings from %s", path)
        return data

    def _from_environment(self) -> Dict[str, Any]:
        values = {}
        for name in ToolkitSettings.model_fields:
            key = f"{ENV_PREFIX}{name.upper()}"
            if key in self.environ:
                values[name] = self.environ[key]
        return values

    def load(self, overrides: Optional[Dict[str, Any]] = None) -> ToolkitSettings:
        data: Dict[str, Any] = {}
        data.update(self._from_file())
        data.update(self._from_environment())
        data.update({key: value for key, value in (overrides or {}).items() if value is not None})
        return ToolkitSettings.model_validate(data)

    def dump(self, settings: ToolkitSettings) -> str:
        return settings.model_dump_json(indent=2)

    def loads(self, text: str) -> ToolkitSettings:
        return ToolkitSettings.model_validate_json(text)

    @staticmethod
    def dump_run(run: RunConfig) -> str:
        return run.model_dump_json(indent=2)

    @staticmethod
    def load_run(text: str) -> RunConfig:
        return RunConfig.model_validate_json(text)
