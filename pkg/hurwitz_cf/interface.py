"""
Hurwitz CF Toolkit - Interface Contracts

This module defines the interface contracts for the toolkit facade and its
supporting managers.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence

from .types import CountMethod, OperationResult, VerificationReport


class ToolkitInterface(ABC):
    """
    Complete interface contract for the Hurwitz continued fraction toolkit.

    Every operation returns an OperationResult; numeric failures are reported
    through ``error_code`` rather than raised.
    """

    # Expansion Operations
    @abstractmethod
    async def expand(self, x: str, algo: str = "hurwitz", n_terms: Optional[int] = None,
                     negative: bool = False) -> OperationResult:
        """
        Expand an exact literal.

        Args:
            x: Exact literal (rational, surd expression or dec: interval)
            algo: "classical" or "hurwitz"
            n_terms: Number of partial quotients (configured default when omitted)
            negative: Emit the negative Hurwitz form

        Returns:
            OperationResult with terms, finiteness flag and convergents
        """
        pass

    @abstractmethod
    async def transform(self, x: Optional[str] = None, b_terms: Optional[Sequence[int]] = None,
                        n_terms: Optional[int] = None) -> OperationResult:
        """
        Rewrite a classical expansion into the Hurwitz expansion.

        Args:
            x: Exact literal to expand classically first
            b_terms: Raw classical partial quotients (treated as a finite expansion)
            n_terms: Number of classical terms taken from x

        Returns:
            OperationResult with S, S', funny form, Hurwitz terms and omitted indices
        """
        pass

    # Verification Operations
    @abstractmethod
    async def verify(self, prop: str, **params: Any) -> OperationResult:
        """
        Run one verification property.

        Args:
            prop: Registered property name
            **params: Property inputs (x, terms, n, rho, delta)

        Returns:
            OperationResult whose data holds the report rows; success only if all pass
        """
        pass

    # Counting Operations
    @abstractmethod
    async def count_xrho(self, x: str, delta: str, rho: int,
                         method: CountMethod = CountMethod.ORACLE) -> OperationResult:
        """
        Count primitive approximants of quality <= delta with 0 < q <= rho.

        Returns:
            OperationResult with count, log(rho) enclosure, X_rho enclosure and records
        """
        pass

    @abstractmethod
    async def count_sandwich(self, x: str, delta: str, n: int) -> OperationResult:
        """Finite-index sandwich of the convergent count at n"""
        pass

    @abstractmethod
    async def count_cd(self, x: str, delta: str, n: int,
                       thresholds: Optional[Sequence[str]] = None) -> OperationResult:
        """Finite-index density and average proxies"""
        pass

    @abstractmethod
    async def count_gform(self, a: str, b: str, c: str, d: str, delta: str, kappa: str,
                          rho: int, witnesses: bool = False,
                          linkage: bool = False) -> OperationResult:
        """Enumerate G(rho) for the product form and check |Q|/|q(qx - p)| at its witnesses"""
        pass

    @abstractmethod
    async def constant_check(self) -> OperationResult:
        """Check log 2 - (2 - phi) > max(log(9/5)/4, log(2)/8)"""
        pass


class ConfigurationManagerInterface(ABC):
    """Interface for layered toolkit configuration"""

    @abstractmethod
    def load(self, overrides: Optional[Dict[str, Any]] = None) -> Any:
        """Merge defaults, file, environment and overrides into validated settings"""
        pass

    @abstractmethod
    def dump(self, settings: Any) -> str:
        """Serialize settings so that ``load`` of the result reproduces them"""
        pass


class CacheManagerInterface(ABC):
    """Interface for expansion caching"""

    @abstractmethod
    def get_expansion(self, literal: str, kind: Any, value: Any = None) -> Any:
        """Return the cached lazy expansion for (literal, kind), creating it on a miss"""
        pass

    @abstractmethod
    def get_cache_stats(self) -> Dict[str, Any]:
        """Hit and miss counters"""
        pass

    @abstractmethod
    def clear(self) -> None:
        pass


class VerificationManagerInterface(ABC):
    """Interface for the verification property registry"""

    @abstractmethod
    def available_properties(self) -> List[str]:
        pass

    @abstractmethod
    def run(self, prop: str, **params: Any) -> VerificationReport:
        """
        Run a registered property.

        Raises:
            UnknownProperty: When ``prop`` is not registered
        """
        pass
