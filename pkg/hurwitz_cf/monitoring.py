"""
Hurwitz CF Toolkit - Performance Monitoring

This module records operation durations and verification outcomes. Metrics
are kept in memory and mirrored to Prometheus when ``prometheus_client`` is
installed and metrics are enabled. Nothing here affects report output.
"""

import logging
import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, Iterator, List, Optional

from .types import VerificationReport

logger = logging.getLogger(__name__)


@dataclass
class PerformanceMetric:
    """Performance metric data structure"""
    metric_name: str
    value: float
    timestamp: datetime = field(default_factory=datetime.now)
    tags: Optional[Dict[str, str]] = None
    unit: str = ""


@dataclass
class CheckMetrics:
    """Outcome of one verification run"""
    prop: str
    total: int
    failed: int
    duration_seconds: float
    timestamp: datetime = field(default_factory=datetime.now)


class ToolkitMonitor:
    """
    Operation timing and verification outcome tracking
    """

    def __init__(self, metrics_enabled: bool = False):
        self.metrics_enabled = metrics_enabled
        self._performance_metrics: List[PerformanceMetric] = []
        self._check_metrics: List[CheckMetrics] = []
        self._lock = threading.Lock()
        if metrics_enabled:
            self._init_prometheus_metrics()

    def _init_prometheus_metrics(self):
        """Initialize Prometheus metrics on a private registry"""
        try:
            from prometheus_client import CollectorRegistry, Counter, Histogram

            self.registry = CollectorRegistry()
            self.operation_duration_histogram = Histogram(
                'hurwitz_cf_operation_duration_seconds',
                'Duration of toolkit operations',
                ['operation', 'success'],
                registry=self.registry
            )
            self.checks_counter = Counter(
                'hurwitz_cf_checks_total',
                'Verification checks by outcome',
                ['prop', 'outcome'],
                registry=self.registry
            )
            logger.debug("Prometheus metrics initialized")
        except ImportError:
            logger.info("prometheus_client not available - using in-memory metrics only")

    def record_operation(self, operation: str, duration: float, success: bool) -> None:
        with self._lock:
            self._performance_metrics.append(PerformanceMetric(
                metric_name='operation_duration',
                value=duration,
                tags={'operation': operation, 'success': str(success).lower()},
                unit='seconds'
            ))
        if hasattr(self, 'operation_duration_histogram'):
            self.operation_duration_histogram.labels(
                operation=operation, success=str(success).lower()
            ).observe(duration)

    @contextmanager
    def track_operation(self, operation: str) -> Iterator[Dict[str, Any]]:
        """Time a block; set ``state['success'] = False`` inside to record a failure"""
        state: Dict[str, Any] = {'success': True}
        start = time.perf_counter()
        try:
            yield state
        except Exception:
            state['success'] = False
            raise
        finally:
            self.record_operation(operation, time.perf_counter() - start, state['success'])

    def record_checks(self, report: VerificationReport, duration: float) -> None:
        failed = len(report.failures)
        with self._lock:
            self._check_metrics.append(CheckMetrics(report.prop, len(report.rows), failed, duration))
        if hasattr(self, 'checks_counter'):
            self.checks_counter.labels(prop=report.prop, outcome='pass').inc(len(report.rows) - failed)
            self.checks_counter.labels(prop=report.prop, outcome='fail').inc(failed)
        if failed:
            logger.warning("%s: %d of %d checks failed", report.prop, failed, len(report.rows))

    def get_performance_summary(self) -> Dict[str, Any]:
        """Get summary of performance metrics"""
        with self._lock:
            metrics = list(self._performance_metrics)
            checks = list(self._check_metrics)
        if not metrics and not checks:
            return {}

        operations: Dict[str, List[float]] = {}
        for metric in metrics:
            operations.setdefault(metric.tags['operation'], []).append(metric.value)

        return {
            'total_metrics_collected': len(metrics),
            'operations': {
                name: {
                    'calls': len(values),
                    'average_duration': sum(values) / len(values),
                    'max_duration': max(values)
                }
                for name, values in sorted(operations.items())
            },
            'checks': {
                'runs': len(checks),
                'total': sum(c.total for c in checks),
                'failed': sum(c.failed for c in checks)
            }
        }
