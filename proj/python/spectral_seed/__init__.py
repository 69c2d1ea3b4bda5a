"""Cluster count and centroid estimation by Fourier-domain density smoothing."""

from ._core import (
    ClusterSpec,
    ConvergenceError,
    Error,
    __version__,
    analyze,
    build_grid,
    choose_window_widths,
    critical_width,
    detect,
    estimate_spacing,
    find_peaks,
    generate,
    kmeans,
    pearson_correlation,
    rasterize,
    seed_and_cluster,
    select_bandwidth,
    smooth,
    smooth_direct_oracle,
    table1_centroids,
    table1_clusters,
    threshold_field,
)

__all__ = [
    "ClusterSpec",
    "ConvergenceError",
    "Error",
    "__version__",
    "analyze",
    "build_grid",
    "choose_window_widths",
    "critical_width",
    "detect",
    "estimate_spacing",
    "find_peaks",
    "generate",
    "kmeans",
    "pearson_correlation",
    "rasterize",
    "seed_and_cluster",
    "select_bandwidth",
    "smooth",
    "smooth_direct_oracle",
    "table1_centroids",
    "table1_clusters",
    "threshold_field",
]
