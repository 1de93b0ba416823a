"""Sharp-constant laboratory for L^p entropy and Nash inequalities."""

from ._lpentropy import (
    __version__,
    a0_constant,
    b_lower_trace,
    b_search,
    bubble_fit,
    curvature_reference,
    deficit_report,
    deficit_samples,
    extremal_deficit,
    extremal_spec,
    limit_trace,
    minimize_j,
    moments,
    nash_constant,
    nash_scan,
    sphere_volume,
    surface_area,
    theta,
)

__all__ = [
    "__version__",
    "a0_constant",
    "b_lower_trace",
    "b_search",
    "bubble_fit",
    "curvature_reference",
    "deficit_report",
    "deficit_samples",
    "extremal_deficit",
    "extremal_spec",
    "limit_trace",
    "minimize_j",
    "moments",
    "nash_constant",
    "nash_scan",
    "sphere_volume",
    "surface_area",
    "theta",
]
