"""
Hurwitz CF Toolkit - Cache Management

This module keeps lazily extended expansions in memory so that repeated
requests for the same real reuse the terms already computed.
"""

import logging
import threading
from collections import OrderedDict
from typing import Any, Dict, Optional, Tuple

from .cf_engine import LazyExpansion
from .exact_reals import ExactValue, parse_literal
from .interface import CacheManagerInterface
from .types import ExpansionKind

logger = logging.getLogger(__name__)


class CacheManager(CacheManagerInterface):
    """
    Bounded LRU cache of expansions keyed by (canonical literal, kind)

    Expansions only ever grow, so a cached entry stays valid; the least recently
    used entry is evicted once ``max_entries`` is exceeded.
    """

    def __init__(self, max_entries: int = 256):
        self.max_entries = max_entries
        self._memory_cache: "OrderedDict[Tuple[str, str], LazyExpansion]" = OrderedDict()
        self._lock = threading.Lock()
        self._cache_stats = {
            'hits': 0,
            'misses': 0,
            'evictions': 0
        }

    def get_expansion(self, literal: str, kind: ExpansionKind,
                      value: Optional[ExactValue] = None) -> LazyExpansion:
        key = (literal, kind.value)
        with self._lock:
            cached = self._memory_cache.get(key)
            if cached is not None:
                self._memory_cache.move_to_end(key)
                self._cache_stats['hits'] += 1
                return cached
            self._cache_stats['misses'] += 1
            expansion = LazyExpansion(parse_literal(literal) if value is None else value, kind)
            self._memory_cache[key] = expansion
            if len(self._memory_cache) > self.max_entries:
                evicted, _ = self._memory_cache.popitem(last=False)
                self._cache_stats['evictions'] += 1
                logger.debug("evicted expansion %s", evicted)
            return expansion

    def get_cache_stats(self) -> Dict[str, Any]:
        with self._lock:
            stats: Dict[str, Any] = dict(self._cache_stats)
            stats['entries'] = len(self._memory_cache)
        lookups = stats['hits'] + stats['misses']
        stats['hit_rate'] = stats['hits'] / lookups if lookups else 0.0
        return stats

    def clear(self) -> None:
        with self._lock:
            self._memory_cache.clear()
