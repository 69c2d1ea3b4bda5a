#pragma once

#include <cstddef>
#include <cstdint>

#include "spectral_seed/bandwidth.hpp"
#include "spectral_seed/grid.hpp"
#include "spectral_seed/peaks.hpp"

namespace spectral_seed {

inline constexpr double kDefaultGapFraction = 0.05;

/// Effective parameters of a run; embedded in every CLI output.
struct RunConfig {
    double epsilon = kDefaultEpsilon;
    double peak_threshold = kDefaultPeakThreshold;
    double gap_fraction = kDefaultGapFraction;
    int max_iter_bandwidth = kDefaultBandwidthMaxIter;
    std::size_t grid_cap = kDefaultGridCap;
    double dx = 0.0;  // mesh spacing; 0 estimates it from the gaps
    std::uint64_t seed = 1;
};

/// Everything produced between raw points and the detected peaks.
struct PipelineResult {
    double estimated_dx = 0.0;  // before the grid cap
    GridSpec grid;              // grid.dx is the effective spacing
    DensityField density;
    Detection detection;
};

/// estimate_spacing -> build_grid -> rasterize -> detect.
PipelineResult run_pipeline(const PointSet& points, const RunConfig& config);

}  // namespace spectral_seed
