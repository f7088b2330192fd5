"""Python bindings for the saliency guided hierarchical tracker."""

from ._sht import (
    Tracker,
    center_error,
    connected_regions,
    default_config,
    overlap_rate,
    refine,
    render_synthetic,
    success_curve,
    track_directory,
    validate_config,
)

__all__ = [
    "Tracker",
    "center_error",
    "connected_regions",
    "default_config",
    "overlap_rate",
    "refine",
    "render_synthetic",
    "success_curve",
    "track_directory",
    "validate_config",
]
