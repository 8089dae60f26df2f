"""Utility modules for the superanalysis engine."""

from .context_managers import computation_context, performance_monitor

__all__ = ["computation_context", "performance_monitor"]
