"""Context managers for computation bookkeeping.

Provides reusable context managers that log the start, failure and
duration of long-running symbolic and numeric computations.
"""

import logging
import time
from contextlib import contextmanager
from typing import Any, Dict, Generator

logger = logging.getLogger(__name__)


@contextmanager
def computation_context(
    subject: str, operation_name: str = "computation"
) -> Generator[None, None, None]:
    """Context manager for engine computations with timing and error logging.

    Args:
        subject: What is being computed on (algebra name, chart, Hamiltonian).
        operation_name: Name of the operation for logging purposes.

    Yields:
        None

    Example:
        >>> with computation_context("so3", "structure extraction"):
        ...     algebra = make_so3()
    """
    start_time = time.perf_counter()
    logger.info(f"Starting {operation_name} for: {subject}")

    try:
        yield
    except Exception as e:
        logger.error(f"{operation_name} failed for {subject}: {e}", exc_info=True)
        raise
    finally:
        duration = time.perf_counter() - start_time
        logger.info(f"Completed {operation_name} for {subject} in {duration:.2f}s")


@contextmanager
def performance_monitor(operation_name: str) -> Generator[Dict[str, Any], None, None]:
    """Context manager for monitoring performance metrics.

    Args:
        operation_name: Name of the operation being monitored.

    Yields:
        Dictionary to store performance metrics.

    Example:
        >>> with performance_monitor("rk4") as metrics:
        ...     trajectory = integrate(state, inertia, 1e-3, 10000)
        ...     metrics["steps"] = 10000
    """
    metrics: Dict[str, Any] = {
        "operation": operation_name,
        "start_time": time.perf_counter(),
        "end_time": None,
        "duration": None,
    }

    try:
        yield metrics
    finally:
        metrics["end_time"] = time.perf_counter()
        metrics["duration"] = metrics["end_time"] - metrics["start_time"]
        logger.debug(f"Performance: {operation_name} took {metrics['duration']:.2f}s")
