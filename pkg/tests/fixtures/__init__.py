"""Test fixtures for the superanalysis engine."""

from .engine_fixtures import (
    euclidean3,
    exact_backend,
    float_backend,
    fresh_settings,
    oscillator_file,
    oscillator_spec,
    phase_space,
    sphere_file,
)

__all__ = [
    "euclidean3",
    "exact_backend",
    "float_backend",
    "fresh_settings",
    "oscillator_file",
    "oscillator_spec",
    "phase_space",
    "sphere_file",
]
